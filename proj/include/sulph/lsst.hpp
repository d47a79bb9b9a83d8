#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sulph/lamperti.hpp"
#include "sulph/pearson.hpp"

namespace sulph {

/// Sloping smooth truncation of the Lamperti drift for a step size Δ.
///
/// The real line is split into
///   P₁ = (−∞, 0), P₂ = [0, Δᵏ), P₃ = [Δᵏ, π − Δᵏ], P₄ = (π − Δᵏ, π], P₅ = (π, ∞).
/// On P₃ the exact drift is used, on P₂/P₄ a quadratic that matches f and f′ at
/// the inner junction and has slope −C₀ at the outer one, and on P₁/P₅ a line
/// of slope −C₀. The result is C¹ and satisfies f_Δ′ ≤ −C₀ on all of ℝ.
struct TruncationSpec {
    double k;
    double delta;
    double delta_star;
    double thr;          // Δᵏ
    double f_left;       // f(Δᵏ)
    double df_left;      // f′(Δᵏ)
    double f_right;      // f(π − Δᵏ)
    double df_right;     // f′(π − Δᵏ)
    double c0_const;
};

/// Δ* = (y* ∧ (π − y*) ∧ 1)^{1/k}.
double delta_star(double k, double y_star);

/// Throws DomainViolation unless 0 < k < 1 and Δ > 0, StepTooLarge if Δ ≥ Δ*.
TruncationSpec make_truncation(const LampertiDrift& d, double k, double delta);

double truncated_drift(const TruncationSpec& spec, const LampertiDrift& d, double y);

/// One explicit Euler–Maruyama step y + f_Δ(y)Δ + σ dW, dW ~ N(0, Δ).
inline double em_step(const TruncationSpec& spec, const LampertiDrift& d, double y_prev, double dW) {
    return y_prev + truncated_drift(spec, d, y_prev) * spec.delta + d.sigma * dW;
}

/// A sampled boundary path on the mesh tₙ = nΔ; psi[n] = η sin²(y[n]/2).
struct SdePath {
    std::vector<double> times;
    std::vector<double> y;
    std::vector<double> psi;
    double delta{0.0};
    std::uint64_t seed{0};
    std::uint64_t stream{0};

    std::size_t steps() const noexcept { return y.empty() ? 0 : y.size() - 1; }
};

/// LSST path driven by the given Brownian increments (one per step).
SdePath path_from_increments(const PearsonParams& p, const LampertiDrift& d, const TruncationSpec& spec,
                             double psi0, std::span<const double> dW);

/// LSST path with increments from NormalStream(seed, stream).
SdePath sample_path(const PearsonParams& p, const TruncationSpec& spec, double psi0, std::size_t n_steps,
                    std::uint64_t seed, std::uint64_t stream = 0);

/// Ψ₀(t) = γ(1 − e^{−αt}), the boundary used in the deterministic mode.
double deterministic_boundary(const PearsonParams& p, double t);

/// Deterministic boundary sampled on tₙ = nΔ, n = 0..n_steps.
SdePath deterministic_path(const PearsonParams& p, double delta, std::size_t n_steps);

}  // namespace sulph
