#include "sulph/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sulph/error.hpp"
#include "sulph/lamperti.hpp"
#include "sulph/lsst.hpp"
#include "sulph/parallel.hpp"
#include "sulph/rng.hpp"

namespace sulph {

namespace {

constexpr std::size_t kPathsPerChunk = 50;

std::size_t exact_count(double total, double step, const char* what) {
    const double ratio = total / step;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        std::ostringstream os;
        os << what << " = " << ratio << " is not a positive integer";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<const Field2D*> select(const std::vector<SolutionFields>& runs, Quantity q) {
    std::vector<const Field2D*> out;
    out.reserve(runs.size());
    for (const auto& r : runs) out.push_back(&r[q]);
    return out;
}

void require_same_shape(std::span<const Field2D* const> samples, const Field2D& shape) {
    if (shape.rows() == 0 || shape.cols() == 0)
        throw Error(ErrorCode::GridMismatch, "field is empty (quantity not retained?)");
    for (const Field2D* f : samples)
        if (!f->same_shape(shape)) throw Error(ErrorCode::GridMismatch, "fields differ in shape");
}

}  // namespace

double PowerLawFit::c() const { return std::exp(log_c); }

PowerLawFit fit_power_law(std::span<const double> deltas, std::span<const double> errors) {
    if (deltas.size() != errors.size() || deltas.size() < 2)
        throw Error(ErrorCode::DomainViolation, "power-law fit needs at least two (delta, error) pairs");
    const double n = static_cast<double>(deltas.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0) || !(errors[i] > 0.0))
            throw Error(ErrorCode::DomainViolation, "power-law fit needs positive deltas and errors");
        sx += std::log(deltas[i]);
        sy += std::log(errors[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double dx = std::log(deltas[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errors[i]) - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::DomainViolation, "power-law fit needs distinct deltas");
    const double q = sxy / sxx;
    return {q, my - q * mx};
}

ConvergenceStudy strong_errors(const ConvergenceConfig& cfg) {
    if (cfg.n_paths < 100) {
        std::ostringstream os;
        os << "strong error estimate needs at least 100 paths (got " << cfg.n_paths << ")";
        throw Error(ErrorCode::InsufficientPaths, os.str());
    }
    if (cfg.ratios.empty()) throw Error(ErrorCode::DomainViolation, "no coarse step ratios given");

    const double delta_ref = std::ldexp(1.0, -cfg.fine_exponent);
    const std::size_t n_fine = exact_count(cfg.t_end, delta_ref, "T / delta_ref");
    const LampertiDrift drift = lamperti_coefficients(cfg.params);
    const TruncationSpec fine_spec = make_truncation(drift, cfg.k, delta_ref);

    std::vector<TruncationSpec> coarse_specs;
    std::vector<std::size_t> coarse_steps;
    for (std::size_t r : cfg.ratios) {
        if (r < 2 || n_fine % r != 0) {
            std::ostringstream os;
            os << "ratio " << r << " does not divide T / delta_ref = " << n_fine;
            throw Error(ErrorCode::DomainViolation, os.str());
        }
        coarse_specs.push_back(make_truncation(drift, cfg.k, delta_ref * static_cast<double>(r)));
        coarse_steps.push_back(n_fine / r);
    }

    const double y0 = lamperti_forward(cfg.params, cfg.psi0);
    const double sd = std::sqrt(delta_ref);
    const std::size_t n_chunks = (cfg.n_paths + kPathsPerChunk - 1) / kPathsPerChunk;

    // sums[chunk][ratio][n] = Σ over the chunk's paths of |Y_{tₙ} − yⁿ|².
    std::vector<std::vector<std::vector<double>>> sums(n_chunks);
    parallel_for(n_chunks, cfg.threads, [&](std::size_t chunk) {
        auto& acc = sums[chunk];
        acc.resize(cfg.ratios.size());
        for (std::size_t i = 0; i < cfg.ratios.size(); ++i) acc[i].assign(coarse_steps[i] + 1, 0.0);

        std::vector<double> dW(n_fine);
        std::vector<double> y_fine(n_fine + 1);
        const std::size_t first = chunk * kPathsPerChunk;
        const std::size_t last = std::min(cfg.n_paths, first + kPathsPerChunk);
        for (std::size_t j = first; j < last; ++j) {
            NormalStream normal(cfg.seed, j);
            for (double& w : dW) w = sd * normal();
            y_fine[0] = y0;
            for (std::size_t i = 0; i < n_fine; ++i) y_fine[i + 1] = em_step(fine_spec, drift, y_fine[i], dW[i]);

            for (std::size_t i = 0; i < cfg.ratios.size(); ++i) {
                const std::size_t r = cfg.ratios[i];
                double y = y0;
                for (std::size_t n = 1; n <= coarse_steps[i]; ++n) {
                    double w = 0.0;
                    for (std::size_t f = (n - 1) * r; f < n * r; ++f) w += dW[f];
                    y = em_step(coarse_specs[i], drift, y, w);
                    const double e = y_fine[n * r] - y;
                    acc[i][n] += e * e;
                }
            }
        }
    });

    ConvergenceStudy study;
    study.delta_ref = delta_ref;
    study.ratios = cfg.ratios;
    study.n_paths = cfg.n_paths;
    const double inv_n = 1.0 / static_cast<double>(cfg.n_paths);
    for (std::size_t i = 0; i < cfg.ratios.size(); ++i) {
        std::vector<double> total(coarse_steps[i] + 1, 0.0);
        for (const auto& chunk : sums)
            for (std::size_t n = 0; n < total.size(); ++n) total[n] += chunk[i][n];
        study.deltas.push_back(delta_ref * static_cast<double>(cfg.ratios[i]));
        study.errors_final.push_back(std::sqrt(total.back() * inv_n));
        study.errors_uniform.push_back(std::sqrt(*std::max_element(total.begin(), total.end()) * inv_n));
    }
    study.fit_final = fit_power_law(study.deltas, study.errors_final);
    study.fit_uniform = fit_power_law(study.deltas, study.errors_uniform);
    return study;
}

BoundaryPair sample_boundary(const SimulationSetup& setup, std::uint64_t seed, std::uint64_t stream) {
    const std::size_t sub = std::max<std::size_t>(1, setup.sde_substeps);
    const double delta = setup.grid.dt / static_cast<double>(sub);
    const std::size_t n_steps = setup.grid.n_steps * sub;
    SdePath path;
    if (setup.sde.deterministic()) {
        path = deterministic_path(setup.sde, delta, n_steps);
    } else {
        const TruncationSpec spec = make_truncation(lamperti_coefficients(setup.sde), setup.k, delta);
        path = sample_path(setup.sde, spec, setup.psi0, n_steps, seed, stream);
    }
    return subsample(boundary_pair(path, setup.material), sub);
}

SolutionFields simulate_path(const SimulationSetup& setup, std::uint64_t seed, std::uint64_t stream,
                             const OutputSpec& out) {
    const BoundaryPair b = sample_boundary(setup, seed, stream);
    return solve_system(setup.grid, setup.material, b, out);
}

std::vector<SolutionFields> run_ensemble(const SimulationSetup& setup, std::size_t n_paths, std::uint64_t seed,
                                         const OutputSpec& out, unsigned threads) {
    check_conditions(setup.grid, setup.material);
    std::vector<SolutionFields> runs(n_paths);
    parallel_for(n_paths, threads, [&](std::size_t j) { runs[j] = simulate_path(setup, seed, j, out); });
    return runs;
}

double nearest_rank(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw Error(ErrorCode::InsufficientPaths, "percentile of an empty sample");
    const double n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-12 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

FieldStatistics field_statistics(std::span<const Field2D* const> samples) {
    if (samples.size() < 2) {
        std::ostringstream os;
        os << "field statistics need at least 2 paths (got " << samples.size() << ")";
        throw Error(ErrorCode::InsufficientPaths, os.str());
    }
    const Field2D& shape = *samples.front();
    require_same_shape(samples, shape);

    const std::size_t rows = shape.rows(), cols = shape.cols();
    FieldStatistics st{Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols),
                       Field2D(rows, cols), samples.size()};
    const double n = static_cast<double>(samples.size());
    std::vector<double> buf(samples.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            // Shifted by the first sample so identical samples give exact zeros.
            const double x0 = (*samples[0])(r, c);
            double sum = 0.0;
            for (std::size_t j = 0; j < samples.size(); ++j) {
                buf[j] = (*samples[j])(r, c);
                sum += buf[j] - x0;
            }
            const double shift = sum / n;
            const double mean = x0 + shift;
            double m2 = 0.0;
            for (double x : buf) m2 += (x - x0 - shift) * (x - x0 - shift);
            std::sort(buf.begin(), buf.end());
            st.mean(r, c) = mean;
            st.std(r, c) = std::sqrt(m2 / (n - 1.0));
            st.p25(r, c) = nearest_rank(buf, 0.25);
            st.p50(r, c) = nearest_rank(buf, 0.50);
            st.p75(r, c) = nearest_rank(buf, 0.75);
        }
    }
    return st;
}

FieldStatistics field_statistics(const std::vector<SolutionFields>& runs, Quantity q) {
    const auto fields = select(runs, q);
    return field_statistics(fields);
}

Field2D rmsd(std::span<const Field2D* const> samples, const Field2D& reference) {
    if (samples.empty()) throw Error(ErrorCode::InsufficientPaths, "RMSD of an empty ensemble");
    require_same_shape(samples, reference);
    Field2D out(reference.rows(), reference.cols());
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        double sum = 0.0;
        for (const Field2D* f : samples) {
            const double d = f->data()[i] - reference.data()[i];
            sum += d * d;
        }
        out.data()[i] = std::sqrt(sum * inv_n);
    }
    return out;
}

Field2D rmsd(const std::vector<SolutionFields>& runs, const SolutionFields& reference, Quantity q) {
    for (const auto& r : runs)
        if (r.t != reference.t || r.x != reference.x)
            throw Error(ErrorCode::GridMismatch, "ensemble and reference use different output meshes");
    const auto fields = select(runs, q);
    return rmsd(fields, reference[q]);
}

double accuracy_order(std::span<const double> coarse, std::span<const double> mid, std::span<const double> fine,
                      double dx_coarse) {
    const std::size_t m = coarse.size() - 1;
    if (coarse.size() < 2 || mid.size() != 2 * m + 1 || fine.size() != 4 * m + 1) {
        std::ostringstream os;
        os << "profiles with " << coarse.size() << ", " << mid.size() << ", " << fine.size()
           << " nodes are not nested by factors of 2";
        throw Error(ErrorCode::GridsNotNested, os.str());
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        const double a = coarse[i] - mid[2 * i];
        const double b = mid[2 * i] - fine[4 * i];
        num += a * a;
        den += b * b;
    }
    return std::log2(std::sqrt(dx_coarse * num) / std::sqrt(dx_coarse * den));
}

AccuracyResult spatial_accuracy(const AccuracyConfig& cfg) {
    if (cfg.levels == 0 || cfg.n_paths == 0) throw Error(ErrorCode::DomainViolation, "accuracy study needs levels, paths >= 1");
    std::vector<Grid1D> grids;
    for (std::size_t l = 0; l < cfg.levels + 2; ++l)
        grids.push_back(Grid1D::from_steps(cfg.x_bar, cfg.t_end, cfg.dx / std::ldexp(1.0, static_cast<int>(l)), cfg.dt));
    for (const auto& g : grids) check_conditions(g, cfg.material);

    const SimulationSetup setup{cfg.sde, cfg.k, cfg.psi0, cfg.material, grids.front(), 1};
    AccuracyResult res;
    for (std::size_t l = 0; l < cfg.levels; ++l) res.dx.push_back(grids[l].dx);
    res.p_rho.assign(cfg.n_paths, {});
    res.p_c.assign(cfg.n_paths, {});

    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t j) {
        const BoundaryPair b = sample_boundary(setup, cfg.seed, j);
        std::vector<std::vector<double>> rho(grids.size()), c(grids.size());
        for (std::size_t l = 0; l < grids.size(); ++l) {
            CoupledSolver solver(grids[l], cfg.material, b);
            for (std::size_t n = 0; n < grids[l].n_steps; ++n) solver.step();
            for (std::size_t m = 0; m < grids[l].nodes(); ++m) {
                rho[l].push_back(solver.rho(m));
                c[l].push_back(solver.c()[m]);
            }
        }
        for (std::size_t l = 0; l < cfg.levels; ++l) {
            res.p_rho[j].push_back(accuracy_order(rho[l], rho[l + 1], rho[l + 2], grids[l].dx));
            res.p_c[j].push_back(accuracy_order(c[l], c[l + 1], c[l + 2], grids[l].dx));
        }
    });
    return res;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw Error(ErrorCode::InsufficientPaths, "KS statistic of an empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

std::vector<double> pooled_marginal(const MarginalConfig& cfg) {
    const std::size_t n_steps = exact_count(cfg.t_end, cfg.delta, "T / delta");
    const auto first = static_cast<std::size_t>(std::ceil(cfg.t_from / cfg.delta - 1e-9));
    const std::size_t stride = std::max<std::size_t>(1, cfg.sample_stride);
    const TruncationSpec spec = make_truncation(lamperti_coefficients(cfg.params), cfg.k, cfg.delta);

    std::vector<std::vector<double>> per_path(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t j) {
        const SdePath path = sample_path(cfg.params, spec, cfg.psi0, n_steps, cfg.seed, j);
        for (std::size_t n = first; n <= n_steps; n += stride) per_path[j].push_back(path.psi[n]);
    });
    std::vector<double> pooled;
    for (const auto& v : per_path) pooled.insert(pooled.end(), v.begin(), v.end());
    return pooled;
}

}  // namespace sulph
