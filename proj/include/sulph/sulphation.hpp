#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sulph/field.hpp"
#include "sulph/heat_fd.hpp"
#include "sulph/lsst.hpp"

namespace sulph {

struct MaterialCoefficients {
    double phi1{0.2};
    double phi2{-0.01};
    double lambda{1.0};
    double s0_bar{0.0};
    double c0_bar{10.0};
};

/// Validated material constants with porosity φ(c) = φ₁ + φ₂c and the a priori
/// bound η̃ = η/φ(c̄₀) on the porous concentration.
struct MaterialParams {
    double phi1;
    double phi2;
    double lambda;
    double s0_bar;
    double c0_bar;
    double eta;
    double eta_tilde;

    /// Throws NonPositiveCoefficient for sign violations, InitialCalciteTooLarge
    /// unless c̄₀ < (4/5)φ₁/|φ₂|, ValidationError if s̄₀ > η̃.
    static MaterialParams validate(const MaterialCoefficients& raw, double eta);

    double porosity(double c) const noexcept { return phi1 + phi2 * c; }
    double calcite_bound() const noexcept { return 4.0 * phi1 / (5.0 * -phi2); }
    /// Δx²/(2 + λc̄₀Δx²(1 − φ₂η̃)).
    double time_step_bound(double dx) const noexcept;
};

struct ConditionReport {
    double dbar;
    double dt;
    double dt_bound;
    double calcite_bound;
};

/// Positivity and stability conditions of the explicit s–c scheme: Δ̄ ≤ 1/2
/// (StabilityViolated) and Δt ≤ the bound above (TimeStepTooLarge).
ConditionReport check_conditions(const Grid1D& grid, const MaterialParams& mat);

/// Stochastic boundary pair at x = 0 on the SDE mesh:
///   c(tₙ, 0) = c̄₀ exp(−λ Qₙ),  s(tₙ, 0) = ψⁿ / φ(c(tₙ, 0)),
/// with Qₙ = Δ Σ_{j<n} ψʲ the left-endpoint quadrature of ∫Ψ.
struct BoundaryPair {
    double dt{0.0};
    std::vector<double> psi;
    std::vector<double> integral;
    std::vector<double> c_left;
    std::vector<double> s_left;

    std::size_t steps() const noexcept { return psi.empty() ? 0 : psi.size() - 1; }
};

BoundaryPair boundary_pair(std::span<const double> psi, double dt, const MaterialParams& mat);
BoundaryPair boundary_pair(const SdePath& path, const MaterialParams& mat);

/// Keeps every `stride`-th value. The quadrature stays the one computed on the
/// finer mesh.
BoundaryPair subsample(const BoundaryPair& b, std::size_t stride);

/// One step of the nonlinear v–c scheme. Left node: v = 0 and the coupling
/// −Δ̄b₁ψ̃ⁿ enters through u₀ⁿ = psi_tilde_n. Right node uses b_M = 0.
/// Throws NonFiniteState on NaN/Inf.
void step_vc(const Grid1D& grid, const MaterialParams& mat, std::span<const double> u, std::span<const double> v,
             std::span<const double> c, double psi_tilde_n, std::span<double> v_next, std::span<double> c_next);

/// One step of the direct s–c scheme with boundary values at the new level.
void step_sc(const Grid1D& grid, const MaterialParams& mat, std::span<const double> s, std::span<const double> c,
             double s_left_next, double c_left_next, std::span<double> s_next, std::span<double> c_next);

/// c(t, x) = φ₁c̄₀ / (φ(c̄₀) e^{λφ₁∫s} − φ₂c̄₀), with ∫₀^{tₙ} s by the left
/// rule over s_history[0..n], n = size − 1.
double calcite_closed_form(const MaterialParams& mat, std::span<const double> s_history, double dt);

/// Pointwise checks of 0 ≤ s < η̃, 0 ≤ c ≤ c̄₀ and c non-increasing in time.
struct BoundsMonitor {
    std::size_t pairs_checked{0};
    std::size_t nodes_checked{0};
    std::size_t s_violations{0};
    std::size_t c_violations{0};
    std::size_t monotone_violations{0};
    std::string first_violation;

    std::size_t violations() const noexcept { return s_violations + c_violations + monotone_violations; }
    void merge(const BoundsMonitor& o);
};

/// Split solver s = u + v marching the heat and v–c schemes together.
class CoupledSolver {
public:
    /// Validates the conditions; `boundary` must hold N + 1 values.
    CoupledSolver(const Grid1D& grid, const MaterialParams& mat, const BoundaryPair& boundary);

    void step();
    std::size_t step_index() const noexcept { return n_; }
    double time() const noexcept { return grid_.t(n_); }

    std::span<const double> u() const noexcept { return u_; }
    std::span<const double> v() const noexcept { return v_; }
    std::span<const double> c() const noexcept { return c_; }
    double s(std::size_t m) const noexcept { return u_[m] + v_[m]; }
    double rho(std::size_t m) const noexcept { return (u_[m] + v_[m]) * mat_.porosity(c_[m]); }

    void set_monitoring(bool on) noexcept { monitor_on_ = on; }
    const BoundsMonitor& bounds() const noexcept { return monitor_; }

    const Grid1D& grid() const noexcept { return grid_; }
    const MaterialParams& material() const noexcept { return mat_; }

private:
    void check_row();

    Grid1D grid_;
    MaterialParams mat_;
    const BoundaryPair* boundary_;
    std::size_t n_{0};
    std::vector<double> u_, v_, c_;
    std::vector<double> u_next_, v_next_, c_next_;
    bool monitor_on_{false};
    BoundsMonitor monitor_;
};

enum class Quantity : std::size_t { U = 0, V, S, C, Rho };
inline constexpr std::array<Quantity, 5> all_quantities{Quantity::U, Quantity::V, Quantity::S, Quantity::C, Quantity::Rho};
std::string_view quantity_name(Quantity q) noexcept;

/// Which nodes are retained: every time_stride-th step (the final one is always
/// kept) and every space_stride-th node with x ≤ x_view.
struct OutputSpec {
    std::size_t time_stride{1};
    std::size_t space_stride{1};
    double x_view{std::numeric_limits<double>::infinity()};
    std::array<bool, 5> keep{true, true, true, true, true};
    bool monitor{true};

    std::vector<std::size_t> time_indices(const Grid1D& grid) const;
    std::vector<std::size_t> space_indices(const Grid1D& grid) const;
};

struct SolutionFields {
    std::vector<double> t;
    std::vector<double> x;
    std::array<Field2D, 5> fields;  // indexed by Quantity; empty when not kept
    BoundsMonitor bounds;

    const Field2D& operator[](Quantity q) const noexcept { return fields[static_cast<std::size_t>(q)]; }
    Field2D& operator[](Quantity q) noexcept { return fields[static_cast<std::size_t>(q)]; }
};

SolutionFields solve_system(const Grid1D& grid, const MaterialParams& mat, const BoundaryPair& boundary,
                            const OutputSpec& out = {});

}  // namespace sulph
