#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sulph/field.hpp"
#include "sulph/heat_fd.hpp"
#include "sulph/pearson.hpp"
#include "sulph/sulphation.hpp"

namespace sulph {

/// log e = log C + q log Δ by unweighted least squares.
struct PowerLawFit {
    double q;
    double log_c;
    double c() const;
};

PowerLawFit fit_power_law(std::span<const double> deltas, std::span<const double> errors);

struct ConvergenceConfig {
    PearsonParams params;
    double k{0.22};
    double psi0{0.0};
    double t_end{1.0};
    int fine_exponent{15};                       // δ = 2^{-fine_exponent}
    std::vector<std::size_t> ratios{16, 32, 64, 128, 256};
    std::size_t n_paths{2000};
    std::uint64_t seed{1};
    unsigned threads{0};
};

struct ConvergenceStudy {
    double delta_ref;
    std::vector<std::size_t> ratios;
    std::vector<double> deltas;
    std::size_t n_paths;
    std::vector<double> errors_final;    // ê at t = T
    std::vector<double> errors_uniform;  // ε̂, sup over the coarse mesh
    PowerLawFit fit_final;
    PowerLawFit fit_uniform;
};

/// Strong L² errors of the LSST scheme in the Lamperti variable against the
/// same scheme at step δ. Every coarse path is driven by partial sums of the
/// fine increments of its reference path. Throws InsufficientPaths (< 100),
/// DomainViolation if T/δ or the ratios do not divide evenly.
ConvergenceStudy strong_errors(const ConvergenceConfig& cfg);

/// Everything needed to run one sulphation trajectory.
struct SimulationSetup {
    PearsonParams sde;
    double k{0.22};
    double psi0{0.0};
    MaterialParams material;
    Grid1D grid;
    std::size_t sde_substeps{1};  // SDE step = Δt / sde_substeps
};

/// Boundary pair on the PDE time mesh for path `stream`. In the deterministic
/// mode the closed form γ(1 − e^{−αt}) is used and no draws are made.
BoundaryPair sample_boundary(const SimulationSetup& setup, std::uint64_t seed, std::uint64_t stream);

SolutionFields simulate_path(const SimulationSetup& setup, std::uint64_t seed, std::uint64_t stream,
                             const OutputSpec& out);

/// Paths 0..n_paths−1, each on its own stream; result order is path order.
std::vector<SolutionFields> run_ensemble(const SimulationSetup& setup, std::size_t n_paths, std::uint64_t seed,
                                         const OutputSpec& out, unsigned threads = 0);

struct FieldStatistics {
    Field2D mean;
    Field2D std;
    Field2D p25;
    Field2D p50;
    Field2D p75;
    std::size_t n_paths{0};
};

/// Nearest-rank percentile of an ascending sample: element ⌈pN⌉ (1-based).
double nearest_rank(std::span<const double> sorted, double p);

/// Per-node mean, unbiased std and nearest-rank quartiles. Needs ≥ 2 samples of
/// equal shape (InsufficientPaths / GridMismatch).
FieldStatistics field_statistics(std::span<const Field2D* const> samples);
FieldStatistics field_statistics(const std::vector<SolutionFields>& runs, Quantity q);

/// √(mean over samples of |g − g_ref|²) per node; GridMismatch on shape errors.
Field2D rmsd(std::span<const Field2D* const> samples, const Field2D& reference);
Field2D rmsd(const std::vector<SolutionFields>& runs, const SolutionFields& reference, Quantity q);

/// p = log₂(‖g₁ − g₂‖ / ‖g₂ − g₄‖) for profiles on M, 2M and 4M intervals.
/// Norms are √(Δx Σ …²) over the nodes of the coarsest grid. Throws
/// GridsNotNested if the sizes are not 2M+1 and 4M+1.
double accuracy_order(std::span<const double> coarse, std::span<const double> mid, std::span<const double> fine,
                      double dx_coarse);

struct AccuracyConfig {
    PearsonParams sde;
    double k{0.22};
    double psi0{0.0};
    MaterialParams material;
    double x_bar{1.5};
    double t_end{1.0};
    double dt{1.0 / 524288.0};
    double dx{0.125};
    std::size_t levels{2};  // orders computed from dx, dx/2, …, dx/2^{levels+1}
    std::size_t n_paths{3};
    std::uint64_t seed{1};
    unsigned threads{0};
};

struct AccuracyResult {
    std::vector<double> dx;                 // coarse Δx of each level
    std::vector<std::vector<double>> p_rho; // [path][level]
    std::vector<std::vector<double>> p_c;
};

/// Spatial orders of ρ and c at t = T, one boundary path per trajectory shared
/// by all grids.
AccuracyResult spatial_accuracy(const AccuracyConfig& cfg);

/// sup |F_n(x) − F(x)| for the empirical CDF of `sample`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

struct MarginalConfig {
    PearsonParams params;
    double k{0.22};
    double psi0{0.0};
    double delta{1.0 / 4096.0};
    double t_end{5.0};
    double t_from{3.0};
    std::size_t sample_stride{1};  // keep every stride-th step with t ≥ t_from
    std::size_t n_paths{500};
    std::uint64_t seed{1};
    unsigned threads{0};
};

/// ψ values pooled over paths and the late-time window, in path order.
std::vector<double> pooled_marginal(const MarginalConfig& cfg);

}  // namespace sulph
