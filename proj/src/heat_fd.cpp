#include "sulph/heat_fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "sulph/error.hpp"

namespace sulph {

Grid1D Grid1D::from_counts(double x_bar, double t_end, std::size_t m_intervals, std::size_t n_steps) {
    if (!(x_bar > 0.0) || !(t_end > 0.0) || m_intervals == 0 || n_steps == 0)
        throw Error(ErrorCode::DomainViolation, "grid needs x_bar > 0, T > 0, M >= 1, N >= 1");
    Grid1D g{};
    g.x_bar = x_bar;
    g.t_end = t_end;
    g.m_intervals = m_intervals;
    g.n_steps = n_steps;
    g.dx = x_bar / static_cast<double>(m_intervals);
    g.dt = t_end / static_cast<double>(n_steps);
    g.dbar = g.dt / (g.dx * g.dx);
    return g;
}

Grid1D Grid1D::from_steps(double x_bar, double t_end, double dx, double dt) {
    if (!(dx > 0.0) || !(dt > 0.0))
        throw Error(ErrorCode::DomainViolation, "grid steps must be > 0");
    const double m_real = x_bar / dx;
    const double m_round = std::round(m_real);
    if (m_round < 1.0 || std::abs(m_real - m_round) > 1e-9 * m_round) {
        std::ostringstream os;
        os << "x_bar / dx = " << m_real << " is not an integer";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    const double n_real = t_end / dt;
    const double n_ceil = std::ceil(n_real - 1e-9 * n_real);
    return from_counts(x_bar, t_end, static_cast<std::size_t>(m_round), static_cast<std::size_t>(std::max(1.0, n_ceil)));
}

void require_heat_stability(const Grid1D& grid) {
    if (grid.dbar > 0.5) {
        std::ostringstream os;
        os << "dt/dx^2 = " << grid.dbar << " exceeds 1/2";
        throw Error(ErrorCode::StabilityViolated, os.str());
    }
}

void step_heat(const Grid1D& grid, std::span<const double> row, double psi_next, std::span<double> next) {
    require_heat_stability(grid);
    const std::size_t m_last = grid.m_intervals;
    const double r = grid.dbar;
    next[0] = psi_next;
    for (std::size_t m = 1; m < m_last; ++m) next[m] = heat_interior(r, row[m - 1], row[m], row[m + 1]);
    next[m_last] = heat_right(r, row[m_last - 1], row[m_last]);
}

HeatField solve_heat(const Grid1D& grid, std::span<const double> boundary) {
    if (boundary.size() != grid.n_steps + 1) {
        std::ostringstream os;
        os << "boundary series has " << boundary.size() << " values, grid needs " << grid.n_steps + 1;
        throw Error(ErrorCode::GridMismatch, os.str());
    }
    require_heat_stability(grid);
    HeatField field{Field2D(grid.n_steps + 1, grid.nodes(), 0.0), {boundary.begin(), boundary.end()}};
    field.u(0, 0) = boundary[0];
    for (std::size_t n = 0; n < grid.n_steps; ++n) step_heat(grid, field.u.row(n), boundary[n + 1], field.u.row(n + 1));
    return field;
}

SpectralReport spectral_bound_check(double dbar, std::size_t m) {
    if (m < 2 || m > 256) {
        std::ostringstream os;
        os << "spectral check needs 2 <= M <= 256 (got " << m << ")";
        throw Error(ErrorCode::DomainViolation, os.str());
    }
    const auto n = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = 1.0 - 2.0 * dbar;
        if (i + 1 < n) {
            const double off = (i + 1 == n - 1) ? std::sqrt(2.0) * dbar : dbar;
            a(i, i + 1) = off;
            a(i + 1, i) = off;
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const double rho = solver.eigenvalues().cwiseAbs().maxCoeff();
    return {dbar, m, rho, rho <= 1.0 + 1e-12};
}

SpectralReport spectral_bound_check(const Grid1D& grid) { return spectral_bound_check(grid.dbar, grid.m_intervals); }

}  // namespace sulph
