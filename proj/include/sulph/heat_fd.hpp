#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sulph/field.hpp"

namespace sulph {

/// Uniform space-time mesh on [0, x̄] × [0, T] with M intervals in space and
/// N steps in time. dbar = Δt/Δx².
struct Grid1D {
    double x_bar;
    double t_end;
    std::size_t m_intervals;
    std::size_t n_steps;
    double dx;
    double dt;
    double dbar;

    static Grid1D from_counts(double x_bar, double t_end, std::size_t m_intervals, std::size_t n_steps);

    /// M = x̄/Δx must be an integer (to 1e-9 relative); N is the smallest count
    /// with T/N ≤ Δt, and Δt is reset to T/N so that N·Δt = T.
    static Grid1D from_steps(double x_bar, double t_end, double dx, double dt);

    std::size_t nodes() const noexcept { return m_intervals + 1; }
    double x(std::size_t m) const noexcept { return static_cast<double>(m) * dx; }
    double t(std::size_t n) const noexcept { return static_cast<double>(n) * dt; }
};

/// FTCS stencil at an interior node and at the reflecting right node.
inline double heat_interior(double dbar, double left, double mid, double right) noexcept {
    return dbar * right + (1.0 - 2.0 * dbar) * mid + dbar * left;
}
inline double heat_right(double dbar, double left, double mid) noexcept {
    return (1.0 - 2.0 * dbar) * mid + 2.0 * dbar * left;
}

/// Throws StabilityViolated when Δ̄ > 1/2.
void require_heat_stability(const Grid1D& grid);

/// One FTCS step of u_t = u_xx: Dirichlet value psi_next at x = 0, reflecting
/// ghost node u_{M+1} = u_{M-1} at x̄. `next` must not alias `row`.
void step_heat(const Grid1D& grid, std::span<const double> row, double psi_next, std::span<double> next);

struct HeatField {
    Field2D u;                    // (N+1) × (M+1)
    std::vector<double> boundary; // ψ̃ⁿ
};

/// Full FTCS solve from zero initial data with u(tₙ, 0) = boundary[n].
HeatField solve_heat(const Grid1D& grid, std::span<const double> boundary);

struct SpectralReport {
    double dbar;
    std::size_t m;
    double max_abs_eigenvalue;
    bool bounded;  // max |λ| ≤ 1 (up to 1e-12)
};

/// Dense eigen-analysis of the symmetrised iteration matrix Ã = S⁻¹AS,
/// S = diag(1, …, 1, √2), for M ≤ 256 interior unknowns.
SpectralReport spectral_bound_check(double dbar, std::size_t m);
SpectralReport spectral_bound_check(const Grid1D& grid);

}  // namespace sulph
