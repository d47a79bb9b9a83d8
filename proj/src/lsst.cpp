#include "sulph/lsst.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sulph/error.hpp"
#include "sulph/rng.hpp"

namespace sulph {

using std::numbers::pi;

double delta_star(double k, double y_star) {
    const double m = std::min({y_star, pi - y_star, 1.0});
    return std::pow(m, 1.0 / k);
}

TruncationSpec make_truncation(const LampertiDrift& d, double k, double delta) {
    if (!(k > 0.0 && k < 1.0)) {
        std::ostringstream os;
        os << "truncation exponent k = " << k << " outside (0, 1)";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        std::ostringstream os;
        os << "step size " << delta << " must be finite and > 0";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    TruncationSpec s{};
    s.k = k;
    s.delta = delta;
    s.delta_star = delta_star(k, d.y_star);
    if (!(delta < s.delta_star)) {
        std::ostringstream os;
        os << "step size " << delta << " must be below Delta* = " << s.delta_star;
        throw Error(ErrorCode::StepTooLarge, os.str());
    }
    s.thr = std::pow(delta, k);
    s.f_left = lamperti_drift(d, s.thr);
    s.df_left = lamperti_drift_derivative(d, s.thr);
    s.f_right = lamperti_drift(d, pi - s.thr);
    s.df_right = lamperti_drift_derivative(d, pi - s.thr);
    s.c0_const = d.c0_const;
    return s;
}

double truncated_drift(const TruncationSpec& s, const LampertiDrift& d, double y) {
    const double h = s.thr;
    const double c0 = s.c0_const;
    if (y < 0.0) {  // P1
        return s.f_left - 0.5 * h * s.df_left - c0 * (y - 0.5 * h);
    }
    if (y < h) {  // P2
        const double z = y - h;
        return s.f_left + s.df_left * z + (s.df_left + c0) * z * z / (2.0 * h);
    }
    if (y <= pi - h) {  // P3
        const double sh = std::sin(0.5 * y);
        const double ch = std::cos(0.5 * y);
        return d.a1 * ch / sh - d.a2 * sh / ch;
    }
    if (y <= pi) {  // P4
        const double z = y - pi + h;
        return s.f_right + s.df_right * z - (s.df_right + c0) * z * z / (2.0 * h);
    }
    // P5
    return s.f_right + 0.5 * h * s.df_right - c0 * (y - pi + 0.5 * h);
}

SdePath path_from_increments(const PearsonParams& p, const LampertiDrift& d, const TruncationSpec& spec,
                             double psi0, std::span<const double> dW) {
    const std::size_t n = dW.size();
    SdePath path;
    path.delta = spec.delta;
    path.times.resize(n + 1);
    path.y.resize(n + 1);
    path.psi.resize(n + 1);

    double y = lamperti_forward(p, psi0);
    path.times[0] = 0.0;
    path.y[0] = y;
    path.psi[0] = lamperti_inverse(p.eta(), y);
    for (std::size_t i = 0; i < n; ++i) {
        y = em_step(spec, d, y, dW[i]);
        path.times[i + 1] = static_cast<double>(i + 1) * spec.delta;
        path.y[i + 1] = y;
        path.psi[i + 1] = lamperti_inverse(p.eta(), y);
    }
    return path;
}

SdePath sample_path(const PearsonParams& p, const TruncationSpec& spec, double psi0, std::size_t n_steps,
                    std::uint64_t seed, std::uint64_t stream) {
    const LampertiDrift d = lamperti_coefficients(p);
    std::vector<double> dW(n_steps, 0.0);
    if (!p.deterministic()) {
        NormalStream normal(seed, stream);
        const double sd = std::sqrt(spec.delta);
        for (double& w : dW) w = sd * normal();
    }
    SdePath path = path_from_increments(p, d, spec, psi0, dW);
    path.seed = seed;
    path.stream = stream;
    return path;
}

double deterministic_boundary(const PearsonParams& p, double t) {
    return p.gamma() * (1.0 - std::exp(-p.alpha() * t));
}

SdePath deterministic_path(const PearsonParams& p, double delta, std::size_t n_steps) {
    SdePath path;
    path.delta = delta;
    path.times.resize(n_steps + 1);
    path.y.resize(n_steps + 1);
    path.psi.resize(n_steps + 1);
    for (std::size_t n = 0; n <= n_steps; ++n) {
        const double t = static_cast<double>(n) * delta;
        path.times[n] = t;
        path.psi[n] = deterministic_boundary(p, t);
        path.y[n] = lamperti_forward(p, path.psi[n]);
    }
    return path;
}

}  // namespace sulph
