#include "sulph/sulphation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

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

void require_finite(double value, std::size_t m, const char* what) {
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << what << " became non-finite at node " << m;
        throw Error(ErrorCode::NonFiniteState, os.str());
    }
}

}  // namespace

MaterialParams MaterialParams::validate(const MaterialCoefficients& raw, double eta) {
    require_positive(raw.phi1, "phi1");
    require_positive(-raw.phi2, "-phi2");
    require_positive(raw.lambda, "lambda");
    require_positive(raw.c0_bar, "c0_bar");
    require_positive(eta, "eta");
    if (!std::isfinite(raw.s0_bar) || raw.s0_bar < 0.0)
        throw Error(ErrorCode::NonPositiveCoefficient, "s0_bar must be finite and >= 0");

    MaterialParams mat{raw.phi1, raw.phi2, raw.lambda, raw.s0_bar, raw.c0_bar, eta, 0.0};
    if (!(raw.c0_bar < mat.calcite_bound())) {
        std::ostringstream os;
        os << "c0_bar = " << raw.c0_bar << " must be below (4/5) phi1/|phi2| = " << mat.calcite_bound();
        throw Error(ErrorCode::InitialCalciteTooLarge, os.str());
    }
    // c̄₀ below the bound also gives φ(c̄₀) > φ₁/5 > 0.
    mat.eta_tilde = eta / mat.porosity(raw.c0_bar);
    if (raw.s0_bar > mat.eta_tilde) {
        std::ostringstream os;
        os << "s0_bar = " << raw.s0_bar << " exceeds eta_tilde = " << mat.eta_tilde;
        throw Error(ErrorCode::ValidationError, os.str());
    }
    return mat;
}

double MaterialParams::time_step_bound(double dx) const noexcept {
    const double dx2 = dx * dx;
    return dx2 / (2.0 + lambda * c0_bar * dx2 * (1.0 - phi2 * eta_tilde));
}

ConditionReport check_conditions(const Grid1D& grid, const MaterialParams& mat) {
    require_heat_stability(grid);
    const ConditionReport report{grid.dbar, grid.dt, mat.time_step_bound(grid.dx), mat.calcite_bound()};
    if (grid.dt > report.dt_bound) {
        std::ostringstream os;
        os.precision(17);
        os << "dt = " << grid.dt << " exceeds the admissible bound " << report.dt_bound;
        throw Error(ErrorCode::TimeStepTooLarge, os.str());
    }
    return report;
}

BoundaryPair boundary_pair(std::span<const double> psi, double dt, const MaterialParams& mat) {
    BoundaryPair b;
    b.dt = dt;
    b.psi.assign(psi.begin(), psi.end());
    const std::size_t n = psi.size();
    b.integral.resize(n);
    b.c_left.resize(n);
    b.s_left.resize(n);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) q += psi[i - 1] * dt;
        b.integral[i] = q;
        b.c_left[i] = mat.c0_bar * std::exp(-mat.lambda * q);
        b.s_left[i] = psi[i] / mat.porosity(b.c_left[i]);
    }
    return b;
}

BoundaryPair boundary_pair(const SdePath& path, const MaterialParams& mat) {
    return boundary_pair(path.psi, path.delta, mat);
}

BoundaryPair subsample(const BoundaryPair& b, std::size_t stride) {
    if (stride == 0 || b.psi.empty() || (b.psi.size() - 1) % stride != 0)
        throw Error(ErrorCode::GridMismatch, "boundary length is not a multiple of the subsampling stride");
    if (stride == 1) return b;
    BoundaryPair out;
    out.dt = b.dt * static_cast<double>(stride);
    for (std::size_t i = 0; i < b.psi.size(); i += stride) {
        out.psi.push_back(b.psi[i]);
        out.integral.push_back(b.integral[i]);
        out.c_left.push_back(b.c_left[i]);
        out.s_left.push_back(b.s_left[i]);
    }
    return out;
}

void step_vc(const Grid1D& grid, const MaterialParams& mat, std::span<const double> u, std::span<const double> v,
             std::span<const double> c, double psi_tilde_n, std::span<double> v_next, std::span<double> c_next) {
    const std::size_t last = grid.m_intervals;
    const double r = grid.dbar;
    const double ldt = mat.lambda * grid.dt;

    v_next[0] = 0.0;
    c_next[0] = c[0] * std::exp(-ldt * psi_tilde_n * mat.porosity(c[0]));

    // v' = Δ̄(1+b)v₊ + Δ̄(1−b)v₋ + (1−2Δ̄+h)v + Δ̄b(u₊ − u₋) + hu, evaluated as
    // the combined s-stencil minus the heat stencil. The sum u' + v' then
    // reproduces the combined stencil to rounding, which keeps s ≥ 0 exact.
    for (std::size_t m = 1; m < last; ++m) {
        const double phi_m = mat.porosity(c[m]);
        const double b = (mat.porosity(c[m + 1]) - mat.porosity(c[m - 1])) / (4.0 * phi_m);
        const double u_left = (m == 1) ? psi_tilde_n : u[m - 1];
        const double v_left = (m == 1) ? 0.0 : v[m - 1];
        const double s_left = u_left + v_left;
        const double s_mid = u[m] + v[m];
        const double s_right = u[m + 1] + v[m + 1];
        const double h = ldt * c[m] * (mat.phi2 * s_mid - 1.0);
        const double s_new = r * (1.0 + b) * s_right + r * (1.0 - b) * s_left + (1.0 - 2.0 * r + h) * s_mid;
        v_next[m] = s_new - heat_interior(r, u_left, u[m], u[m + 1]);
        c_next[m] = c[m] * std::exp(-ldt * s_mid * phi_m);
        require_finite(v_next[m], m, "v");
        require_finite(c_next[m], m, "c");
    }

    const double u_prev = (last == 1) ? psi_tilde_n : u[last - 1];
    const double v_prev = (last == 1) ? 0.0 : v[last - 1];
    const double s_last = u[last] + v[last];
    const double h_last = ldt * c[last] * (mat.phi2 * s_last - 1.0);
    const double s_new = 2.0 * r * (u_prev + v_prev) + (1.0 - 2.0 * r + h_last) * s_last;
    v_next[last] = s_new - heat_right(r, u_prev, u[last]);
    c_next[last] = c[last] * std::exp(-ldt * s_last * mat.porosity(c[last]));
    require_finite(v_next[last], last, "v");
    require_finite(c_next[last], last, "c");
}

void step_sc(const Grid1D& grid, const MaterialParams& mat, std::span<const double> s, std::span<const double> c,
             double s_left_next, double c_left_next, std::span<double> s_next, std::span<double> c_next) {
    const std::size_t last = grid.m_intervals;
    const double r = grid.dbar;
    const double ldt = mat.lambda * grid.dt;

    s_next[0] = s_left_next;
    c_next[0] = c_left_next;
    for (std::size_t m = 1; m < last; ++m) {
        const double phi_m = mat.porosity(c[m]);
        const double b = (mat.porosity(c[m + 1]) - mat.porosity(c[m - 1])) / (4.0 * phi_m);
        s_next[m] = r * (1.0 + b) * s[m + 1] + r * (1.0 - b) * s[m - 1]
                    + (1.0 - 2.0 * r - ldt * c[m] * (1.0 - mat.phi2 * s[m])) * s[m];
        c_next[m] = c[m] * std::exp(-ldt * s[m] * phi_m);
        require_finite(s_next[m], m, "s");
        require_finite(c_next[m], m, "c");
    }
    s_next[last] = 2.0 * r * s[last - 1] + (1.0 - 2.0 * r - ldt * c[last] * (1.0 - mat.phi2 * s[last])) * s[last];
    c_next[last] = c[last] * std::exp(-ldt * s[last] * mat.porosity(c[last]));
    require_finite(s_next[last], last, "s");
    require_finite(c_next[last], last, "c");
}

double calcite_closed_form(const MaterialParams& mat, std::span<const double> s_history, double dt) {
    double integral = 0.0;
    for (std::size_t j = 0; j + 1 < s_history.size(); ++j) integral += s_history[j] * dt;
    const double c0 = mat.c0_bar;
    return mat.phi1 * c0 / (mat.porosity(c0) * std::exp(mat.lambda * mat.phi1 * integral) - mat.phi2 * c0);
}

void BoundsMonitor::merge(const BoundsMonitor& o) {
    pairs_checked += o.pairs_checked;
    nodes_checked += o.nodes_checked;
    s_violations += o.s_violations;
    c_violations += o.c_violations;
    monotone_violations += o.monotone_violations;
    if (first_violation.empty()) first_violation = o.first_violation;
}

CoupledSolver::CoupledSolver(const Grid1D& grid, const MaterialParams& mat, const BoundaryPair& boundary)
    : grid_(grid), mat_(mat), boundary_(&boundary) {
    check_conditions(grid_, mat_);
    if (boundary.psi.size() != grid.n_steps + 1) {
        std::ostringstream os;
        os << "boundary has " << boundary.psi.size() << " values, grid needs " << grid.n_steps + 1;
        throw Error(ErrorCode::GridMismatch, os.str());
    }
    if (std::abs(boundary.dt - grid.dt) > 1e-12 * grid.dt) {
        std::ostringstream os;
        os << "boundary step " << boundary.dt << " differs from grid step " << grid.dt;
        throw Error(ErrorCode::GridMismatch, os.str());
    }
    const std::size_t nodes = grid.nodes();
    u_.assign(nodes, 0.0);
    v_.assign(nodes, mat.s0_bar);
    c_.assign(nodes, mat.c0_bar);
    u_[0] = boundary.s_left[0];
    v_[0] = 0.0;
    c_[0] = boundary.c_left[0];
    u_next_.resize(nodes);
    v_next_.resize(nodes);
    c_next_.resize(nodes);
}

void CoupledSolver::step() {
    if (n_ >= grid_.n_steps) throw Error(ErrorCode::DomainViolation, "solver already reached the final time");
    const BoundaryPair& b = *boundary_;
    step_heat(grid_, u_, b.s_left[n_ + 1], u_next_);
    step_vc(grid_, mat_, u_, v_, c_, b.s_left[n_], v_next_, c_next_);
    c_next_[0] = b.c_left[n_ + 1];
    if (monitor_on_) check_row();
    u_.swap(u_next_);
    v_.swap(v_next_);
    c_.swap(c_next_);
    ++n_;
}

void CoupledSolver::check_row() {
    ++monitor_.pairs_checked;
    const std::size_t nodes = grid_.nodes();
    monitor_.nodes_checked += nodes;
    for (std::size_t m = 0; m < nodes; ++m) {
        const double s = u_next_[m] + v_next_[m];
        const double c = c_next_[m];
        const auto note = [&](const char* what) {
            if (!monitor_.first_violation.empty()) return;
            std::ostringstream os;
            os.precision(17);
            os << what << " at step " << n_ + 1 << ", node " << m << " (s = " << s << ", c = " << c << ")";
            monitor_.first_violation = os.str();
        };
        if (!(s >= 0.0 && s < mat_.eta_tilde)) {
            ++monitor_.s_violations;
            note("s outside [0, eta_tilde)");
        }
        if (!(c >= 0.0 && c <= mat_.c0_bar)) {
            ++monitor_.c_violations;
            note("c outside [0, c0_bar]");
        }
        if (c > c_[m]) {
            ++monitor_.monotone_violations;
            note("c increased");
        }
    }
}

std::string_view quantity_name(Quantity q) noexcept {
    switch (q) {
        case Quantity::U: return "u";
        case Quantity::V: return "v";
        case Quantity::S: return "s";
        case Quantity::C: return "c";
        case Quantity::Rho: return "rho";
    }
    return "?";
}

std::vector<std::size_t> OutputSpec::time_indices(const Grid1D& grid) const {
    const std::size_t stride = std::max<std::size_t>(1, time_stride);
    std::vector<std::size_t> idx;
    for (std::size_t n = 0; n <= grid.n_steps; n += stride) idx.push_back(n);
    if (idx.back() != grid.n_steps) idx.push_back(grid.n_steps);
    return idx;
}

std::vector<std::size_t> OutputSpec::space_indices(const Grid1D& grid) const {
    const std::size_t stride = std::max<std::size_t>(1, space_stride);
    std::vector<std::size_t> idx;
    for (std::size_t m = 0; m <= grid.m_intervals; m += stride) {
        if (grid.x(m) > x_view + 1e-12 * grid.x_bar) break;
        idx.push_back(m);
    }
    return idx;
}

SolutionFields solve_system(const Grid1D& grid, const MaterialParams& mat, const BoundaryPair& boundary,
                            const OutputSpec& out) {
    CoupledSolver solver(grid, mat, boundary);
    solver.set_monitoring(out.monitor);

    const std::vector<std::size_t> t_idx = out.time_indices(grid);
    const std::vector<std::size_t> x_idx = out.space_indices(grid);

    SolutionFields result;
    for (std::size_t n : t_idx) result.t.push_back(grid.t(n));
    for (std::size_t m : x_idx) result.x.push_back(grid.x(m));
    for (Quantity q : all_quantities)
        if (out.keep[static_cast<std::size_t>(q)]) result[q] = Field2D(t_idx.size(), x_idx.size());

    const auto record = [&](std::size_t row) {
        for (std::size_t j = 0; j < x_idx.size(); ++j) {
            const std::size_t m = x_idx[j];
            const double values[5] = {solver.u()[m], solver.v()[m], solver.s(m), solver.c()[m], solver.rho(m)};
            for (Quantity q : all_quantities) {
                Field2D& f = result[q];
                if (f.rows() != 0) f(row, j) = values[static_cast<std::size_t>(q)];
            }
        }
    };

    std::size_t next_row = 0;
    for (std::size_t n = 0;; ++n) {
        if (next_row < t_idx.size() && t_idx[next_row] == n) record(next_row++);
        if (n == grid.n_steps) break;
        solver.step();
    }
    result.bounds = solver.bounds();
    return result;
}

}  // namespace sulph
