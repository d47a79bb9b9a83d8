#include "sulph/pearson.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "sulph/error.hpp"

namespace sulph {

namespace {

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        std::ostringstream os;
        os << name << " must be finite and > 0 (got " << v << ")";
        throw Error(ErrorCode::NonPositiveCoefficient, os.str());
    }
}

void require_interior(const PearsonParams& p, double x, const char* name) {
    if (!(x > 0.0 && x < p.eta())) {
        std::ostringstream os;
        os << name << " = " << x << " outside (0, " << p.eta() << ")";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
}

void require_diffusive(const PearsonParams& p) {
    if (p.deterministic())
        throw Error(ErrorCode::DomainViolation, "scale/speed densities need sigma > 0");
}

double log_scale(const PearsonParams& p, double x, double x0) {
    const double eta = p.eta();
    return p.nu1() * (std::log(x0) - std::log(x)) + p.nu2() * (std::log(eta - x0) - std::log(eta - x));
}

}  // namespace

BetaExponents beta_exponents(const PearsonCoefficients& c) {
    const double s2eta = c.sigma * c.sigma * c.eta;
    return {2.0 * c.alpha * c.gamma / s2eta, 2.0 * c.alpha * (c.eta - c.gamma) / s2eta};
}

PearsonParams PearsonParams::validate(const PearsonCoefficients& raw) {
    require_positive(raw.alpha, "alpha");
    require_positive(raw.gamma, "gamma");
    require_positive(raw.eta, "eta");
    if (!std::isfinite(raw.sigma) || raw.sigma < 0.0) {
        std::ostringstream os;
        os << "sigma must be finite and >= 0 (got " << raw.sigma << ")";
        throw Error(ErrorCode::NonPositiveCoefficient, os.str());
    }
    if (!(raw.gamma < raw.eta)) {
        std::ostringstream os;
        os << "gamma = " << raw.gamma << " must be below eta = " << raw.eta;
        throw Error(ErrorCode::GammaNotBelowEta, os.str());
    }
    if (raw.sigma == 0.0) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return PearsonParams(raw, {inf, inf});
    }
    const BetaExponents nu = beta_exponents(raw);
    if (!(nu.nu() > 1.0)) {
        std::ostringstream os;
        os << "min(nu1, nu2) must exceed 1 (nu1 = " << nu.nu1 << ", nu2 = " << nu.nu2 << ")";
        throw Error(ErrorCode::NuConditionViolated, os.str());
    }
    return PearsonParams(raw, nu);
}

std::optional<BoundaryClassification> classify_boundaries(const PearsonCoefficients& c) {
    if (c.sigma == 0.0) return std::nullopt;
    const BetaExponents nu = beta_exponents(c);
    // Near 0: s ~ x^{-ν₁} is non-integrable and m ~ x^{ν₁-1} integrable iff ν₁ > 1.
    const auto kind = [](double v) { return v > 1.0 ? BoundaryKind::Entrance : BoundaryKind::NotEntrance; };
    return BoundaryClassification{kind(nu.nu1), kind(nu.nu2), nu.nu()};
}

std::optional<BoundaryClassification> classify_boundaries(const PearsonParams& p) {
    return classify_boundaries(p.coefficients());
}

double scale_density(const PearsonParams& p, double x) { return scale_density(p, x, 0.5 * p.eta()); }

double scale_density(const PearsonParams& p, double x, double x0) {
    require_diffusive(p);
    require_interior(p, x, "x");
    require_interior(p, x0, "x0");
    return std::exp(log_scale(p, x, x0));
}

double speed_density(const PearsonParams& p, double x) { return speed_density(p, x, 0.5 * p.eta()); }

double speed_density(const PearsonParams& p, double x, double x0) {
    require_diffusive(p);
    require_interior(p, x, "x");
    require_interior(p, x0, "x0");
    // m = 1 / (b² s) with b² = σ² x (η − x).
    const double log_b2 = 2.0 * std::log(p.sigma()) + std::log(x) + std::log(p.eta() - x);
    return std::exp(-log_b2 - log_scale(p, x, x0));
}

double invariant_density(const PearsonParams& p, double x) {
    require_diffusive(p);
    const double eta = p.eta();
    if (!(x >= 0.0 && x <= eta)) {
        std::ostringstream os;
        os << "x = " << x << " outside [0, " << eta << "]";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    if (x == 0.0 || x == eta) return 0.0;  // ν₁, ν₂ > 1
    const double a = p.nu1();
    const double b = p.nu2();
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) - (a + b - 1.0) * std::log(eta);
    return std::exp(log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log(eta - x));
}

double invariant_cdf(const PearsonParams& p, double x) {
    require_diffusive(p);
    if (x <= 0.0) return 0.0;
    if (x >= p.eta()) return 1.0;
    return boost::math::ibeta(p.nu1(), p.nu2(), x / p.eta());
}

}  // namespace sulph
