#pragma once

#include "sulph/pearson.hpp"

namespace sulph {

/// Drift of the additive-noise SDE obtained by Y = 2 arcsin(√(Ψ/η)):
///
///   dY = f(Y) dt + σ dW,   f(y) = a₁ cot(y/2) − a₂ tan(y/2)
///
/// f is strictly decreasing on (0, π) with f′ ≤ −C₀, C₀ = (2α − σ²)/4.
struct LampertiDrift {
    double a1;
    double a2;
    double c0_const;
    double y_star;
    double sigma;
};

/// Closed-form coefficients; y* is polished by one Newton step on f.
LampertiDrift lamperti_coefficients(const PearsonParams& p);

/// y = 2 arcsin(√(ψ/η)); throws DomainViolation outside [0, η].
double lamperti_forward(const PearsonParams& p, double psi);

/// ψ = η sin²(y/2); defined on all of ℝ, lands in [0, η].
double lamperti_inverse(const PearsonParams& p, double y) noexcept;
double lamperti_inverse(double eta, double y) noexcept;

/// f(y) on the open interval (0, π); throws DomainViolation otherwise.
double lamperti_drift(const LampertiDrift& d, double y);

/// f′(y) = −a₁/(2 sin²(y/2)) − a₂/(2 cos²(y/2)) on (0, π).
double lamperti_drift_derivative(const LampertiDrift& d, double y);

}  // namespace sulph
