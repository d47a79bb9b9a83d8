#pragma once

// Dense matrix forms of the explicit schemes, used only as test oracles.
// Unknowns are the nodes m = 1..M; node 0 enters through boundary vectors.

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "sulph/heat_fd.hpp"
#include "sulph/sulphation.hpp"

namespace oracle {

inline Eigen::MatrixXd heat_matrix(double dbar, std::size_t m) {
    const auto n = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = 1.0 - 2.0 * dbar;
        if (i > 0) a(i, i - 1) = dbar;
        if (i + 1 < n) a(i, i + 1) = dbar;
    }
    a(n - 1, n - 2) = 2.0 * dbar;
    return a;
}

inline Eigen::VectorXd interior(std::span<const double> row) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(row.size() - 1));
    for (std::size_t i = 1; i < row.size(); ++i) v(static_cast<Eigen::Index>(i - 1)) = row[i];
    return v;
}

struct VcMatrices {
    Eigen::MatrixXd g;
    Eigen::MatrixXd p;
    double b1;
};

/// G and P of Vⁿ⁺¹ = GVⁿ + PUⁿ + Δ̄Ṽⁿ, Ṽⁿ = (−b₁ψ̃ⁿ, 0, …, 0).
inline VcMatrices vc_matrices(const sulph::Grid1D& grid, const sulph::MaterialParams& mat, std::span<const double> u,
                              std::span<const double> v, std::span<const double> c) {
    const std::size_t m_last = grid.m_intervals;
    const auto n = static_cast<Eigen::Index>(m_last);
    const double r = grid.dbar;
    VcMatrices out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), 0.0};
    for (std::size_t m = 1; m <= m_last; ++m) {
        const auto i = static_cast<Eigen::Index>(m - 1);
        const double h = mat.lambda * grid.dt * c[m] * (mat.phi2 * (u[m] + v[m]) - 1.0);
        if (m == m_last) {
            out.g(i, i) = 1.0 - 2.0 * r + h;
            out.g(i, i - 1) = 2.0 * r;
            out.p(i, i) = h;
            continue;
        }
        const double b = (mat.porosity(c[m + 1]) - mat.porosity(c[m - 1])) / (4.0 * mat.porosity(c[m]));
        if (m == 1) out.b1 = b;
        out.g(i, i) = 1.0 - 2.0 * r + h;
        out.g(i, i + 1) = r * (1.0 + b);
        if (i > 0) out.g(i, i - 1) = r * (1.0 - b);
        out.p(i, i) = h;
        out.p(i, i + 1) = r * b;
        if (i > 0) out.p(i, i - 1) = -r * b;
    }
    return out;
}

}  // namespace oracle
