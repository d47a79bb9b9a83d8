#include "sulph/lamperti.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sulph/error.hpp"

namespace sulph {

namespace {

void require_open_interval(double y) {
    if (!(y > 0.0 && y < std::numbers::pi)) {
        std::ostringstream os;
        os << "y = " << y << " outside (0, pi)";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
}

double drift_unchecked(const LampertiDrift& d, double y) noexcept {
    const double s = std::sin(0.5 * y);
    const double c = std::cos(0.5 * y);
    return d.a1 * c / s - d.a2 * s / c;
}

double derivative_unchecked(const LampertiDrift& d, double y) noexcept {
    const double s = std::sin(0.5 * y);
    const double c = std::cos(0.5 * y);
    return -0.5 * d.a1 / (s * s) - 0.5 * d.a2 / (c * c);
}

}  // namespace

LampertiDrift lamperti_coefficients(const PearsonParams& p) {
    const double alpha = p.alpha();
    const double gamma = p.gamma();
    const double eta = p.eta();
    const double s2 = p.sigma() * p.sigma();

    LampertiDrift d{};
    d.sigma = p.sigma();
    d.a1 = (4.0 * alpha * gamma - s2 * eta) / (4.0 * eta);
    d.a2 = (4.0 * alpha * (eta - gamma) - s2 * eta) / (4.0 * eta);
    d.c0_const = (2.0 * alpha - s2) / 4.0;

    double y = 2.0 * std::atan(std::sqrt(d.a1 / d.a2));
    y -= drift_unchecked(d, y) / derivative_unchecked(d, y);
    d.y_star = y;
    return d;
}

double lamperti_forward(const PearsonParams& p, double psi) {
    if (!(psi >= 0.0 && psi <= p.eta())) {
        std::ostringstream os;
        os << "psi = " << psi << " outside [0, " << p.eta() << "]";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    return 2.0 * std::asin(std::sqrt(psi / p.eta()));
}

double lamperti_inverse(double eta, double y) noexcept {
    const double s = std::sin(0.5 * y);
    return eta * s * s;
}

double lamperti_inverse(const PearsonParams& p, double y) noexcept { return lamperti_inverse(p.eta(), y); }

double lamperti_drift(const LampertiDrift& d, double y) {
    require_open_interval(y);
    return drift_unchecked(d, y);
}

double lamperti_drift_derivative(const LampertiDrift& d, double y) {
    require_open_interval(y);
    return derivative_unchecked(d, y);
}

}  // namespace sulph
