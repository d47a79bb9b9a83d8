#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sulph/error.hpp"
#include "sulph/lsst.hpp"
#include "sulph/sulphation.hpp"

using namespace sulph;

namespace {

MaterialParams material(double lambda = 1.0, double s0 = 0.0) {
    return MaterialParams::validate({0.2, -0.01, lambda, s0, 10.0}, 1.5);
}

ErrorCode material_error(const MaterialCoefficients& c) {
    try {
        MaterialParams::validate(c, 1.5);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::IoError;
}

BoundaryPair random_boundary(std::size_t n_steps, double dt, const MaterialParams& mat, std::uint64_t seed) {
    const auto p = PearsonParams::validate({7.0, 1.0, 1.0, 1.5});
    const auto spec = make_truncation(lamperti_coefficients(p), 0.22, dt);
    return boundary_pair(sample_path(p, spec, 0.0, n_steps, seed, 0), mat);
}

}  // namespace

TEST_SUITE("sulphation") {

TEST_CASE("material validation and derived bounds") {
    const auto m = material();
    CHECK(m.eta_tilde == doctest::Approx(15.0).epsilon(1e-15));
    CHECK(m.calcite_bound() == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(m.time_step_bound(0.01) == doctest::Approx(4.997126652174999e-5).epsilon(1e-13));
    CHECK(material(100.0).time_step_bound(0.01) == doctest::Approx(4.728132387706856e-5).epsilon(1e-13));

    CHECK(material_error({0.2, -0.01, 1.0, 0.0, 16.0}) == ErrorCode::InitialCalciteTooLarge);
    CHECK(material_error({0.2, -0.01, 1.0, 0.0, 20.0}) == ErrorCode::InitialCalciteTooLarge);
    CHECK(material_error({0.2, 0.01, 1.0, 0.0, 10.0}) == ErrorCode::NonPositiveCoefficient);
    CHECK(material_error({0.0, -0.01, 1.0, 0.0, 10.0}) == ErrorCode::NonPositiveCoefficient);
    CHECK(material_error({0.2, -0.01, 0.0, 0.0, 10.0}) == ErrorCode::NonPositiveCoefficient);
    CHECK(material_error({0.2, -0.01, 1.0, -1.0, 10.0}) == ErrorCode::NonPositiveCoefficient);
    CHECK(material_error({0.2, -0.01, 1.0, 16.0, 10.0}) == ErrorCode::ValidationError);
    CHECK_NOTHROW(MaterialParams::validate({0.2, -0.01, 1.0, 0.0, 15.99}, 1.5));
}

TEST_CASE("time-step condition") {
    const auto m = material();
    CHECK_NOTHROW(check_conditions(Grid1D::from_steps(1.5, 1.5, 0.01, 1.99e-5), m));
    try {
        check_conditions(Grid1D::from_counts(1.5, 1.0, 150, 20000), m);  // Δt = 5e-5, Δ̄ = 0.5
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TimeStepTooLarge);
    }
    try {
        check_conditions(Grid1D::from_counts(1.5, 1.0, 150, 10000), m);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StabilityViolated);
    }
}

TEST_CASE("boundary pair") {
    const auto m = material();
    const std::vector<double> psi{0.0, 0.5, 1.0, 1.5};
    const auto b = boundary_pair(psi, 0.1, m);
    CHECK(b.integral == std::vector<double>{0.0, 0.0, 0.05, 0.15000000000000002});
    CHECK(b.c_left[0] == 10.0);
    CHECK(b.c_left[3] == doctest::Approx(10.0 * std::exp(-0.15)).epsilon(1e-15));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(b.s_left[i] == doctest::Approx(psi[i] / (0.2 - 0.01 * b.c_left[i])).epsilon(1e-15));
        CHECK(b.s_left[i] * m.porosity(b.c_left[i]) == doctest::Approx(psi[i]).epsilon(1e-15));
    }
    const auto sub = subsample(boundary_pair(std::vector<double>(9, 1.0), 0.1, m), 4);
    CHECK(sub.psi.size() == 3);
    CHECK(sub.dt == doctest::Approx(0.4));
    CHECK(sub.integral[2] == doctest::Approx(0.8));
    CHECK_THROWS_AS(subsample(b, 2), Error);
}

TEST_CASE("calcite closed form against iterated updates") {
    const auto m = material(10.0);
    const double s = 2.0, t_end = 1.0;
    double prev_err = 0.0;
    for (int n : {100, 200, 400, 800}) {
        const double dt = t_end / n;
        double c = m.c0_bar;
        for (int i = 0; i < n; ++i) c *= std::exp(-m.lambda * dt * s * m.porosity(c));
        const std::vector<double> history(static_cast<std::size_t>(n) + 1, s);
        const double exact = calcite_closed_form(m, history, dt);
        const double err = std::abs(c - exact);
        if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(2.0).epsilon(0.05));
        prev_err = err;
    }
    const std::vector<double> zero(1, s);
    CHECK(calcite_closed_form(m, zero, 0.1) == doctest::Approx(m.c0_bar).epsilon(1e-15));
}

TEST_CASE("v-c step equals the matrix form") {
    const auto g = Grid1D::from_counts(1.0, 0.001, 10, 10);
    const auto m = material(10.0, 0.5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> u(11), v(11), c(11), v_next(11), c_next(11);
    for (std::size_t i = 0; i < 11; ++i) {
        u[i] = 2.0 * uni(rng);
        v[i] = 3.0 * uni(rng);
        c[i] = 10.0 * uni(rng);
    }
    const double psi_tilde = u[0];
    v[0] = 0.0;
    step_vc(g, m, u, v, c, psi_tilde, v_next, c_next);

    const auto mats = oracle::vc_matrices(g, m, u, v, c);
    Eigen::VectorXd expected = mats.g * oracle::interior(v) + mats.p * oracle::interior(u);
    expected(0) += g.dbar * (-mats.b1 * psi_tilde);
    CHECK(v_next[0] == 0.0);
    for (int i = 0; i < 10; ++i) CHECK(std::abs(v_next[i + 1] - expected(i)) <= 1e-13);
    for (std::size_t i = 1; i < 11; ++i)
        CHECK(c_next[i] == doctest::Approx(c[i] * std::exp(-10.0 * g.dt * (u[i] + v[i]) * m.porosity(c[i]))));
}

TEST_CASE("split and direct schemes agree") {
    const auto g = Grid1D::from_counts(1.0, 0.005, 50, 50);
    const auto m = material(10.0);
    const auto b = random_boundary(50, g.dt, m, 8);
    CoupledSolver split(g, m, b);
    std::vector<double> s(51, 0.0), c(51, m.c0_bar), s_next(51), c_next(51);
    s[0] = b.s_left[0];
    double worst = 0.0;
    for (std::size_t n = 0; n < 50; ++n) {
        split.step();
        step_sc(g, m, s, c, b.s_left[n + 1], b.c_left[n + 1], s_next, c_next);
        s.swap(s_next);
        c.swap(c_next);
        for (std::size_t i = 0; i <= 50; ++i) {
            worst = std::max(worst, std::abs(split.s(i) - s[i]));
            CHECK(split.c()[i] == doctest::Approx(c[i]).epsilon(1e-13));
        }
    }
    CHECK(worst <= 1e-10 * m.eta_tilde);
}

TEST_CASE("coupled solver respects the a priori bounds") {
    const auto g = Grid1D::from_steps(1.5, 0.3, 0.02, 1.5e-4);
    for (double lambda : {1.0, 100.0}) {
        const auto m = material(lambda);
        const auto b = random_boundary(g.n_steps, g.dt, m, 21);
        CoupledSolver solver(g, m, b);
        solver.set_monitoring(true);
        while (solver.step_index() < g.n_steps) solver.step();
        CHECK(solver.bounds().pairs_checked == g.n_steps);
        CHECK(solver.bounds().violations() == 0);
        CHECK(solver.time() == doctest::Approx(0.3));
        CHECK(solver.rho(0) == doctest::Approx(b.psi.back()).epsilon(1e-14));
        CHECK_THROWS_AS(solver.step(), Error);
    }
}

TEST_CASE("monitor reports violations") {
    const auto g = Grid1D::from_counts(1.0, 0.001, 10, 10);
    const auto m = material();
    auto b = boundary_pair(std::vector<double>(11, 0.5), g.dt, m);
    b.s_left[3] = 20.0;  // beyond η̃
    CoupledSolver solver(g, m, b);
    solver.set_monitoring(true);
    for (int i = 0; i < 10; ++i) solver.step();
    CHECK(solver.bounds().s_violations >= 1);
    CHECK_FALSE(solver.bounds().first_violation.empty());
}

TEST_CASE("non-finite state is detected") {
    const auto g = Grid1D::from_counts(1.0, 0.001, 10, 10);
    const auto m = material();
    auto b = boundary_pair(std::vector<double>(11, 0.5), g.dt, m);
    b.s_left[2] = std::numeric_limits<double>::quiet_NaN();
    CoupledSolver solver(g, m, b);
    try {
        for (int i = 0; i < 10; ++i) solver.step();
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFiniteState);
    }
}

TEST_CASE("solver rejects mismatched boundaries") {
    const auto g = Grid1D::from_counts(1.0, 0.001, 10, 10);
    const auto m = material();
    const auto short_b = boundary_pair(std::vector<double>(5, 0.5), g.dt, m);
    CHECK_THROWS_AS(CoupledSolver(g, m, short_b), Error);
    const auto wrong_dt = boundary_pair(std::vector<double>(11, 0.5), 2 * g.dt, m);
    CHECK_THROWS_AS(CoupledSolver(g, m, wrong_dt), Error);
}

TEST_CASE("output decimation") {
    const auto g = Grid1D::from_counts(1.5, 0.01, 15, 100);
    OutputSpec out;
    out.time_stride = 30;
    out.space_stride = 2;
    out.x_view = 1.0;
    CHECK(out.time_indices(g) == std::vector<std::size_t>{0, 30, 60, 90, 100});
    CHECK(out.space_indices(g) == std::vector<std::size_t>{0, 2, 4, 6, 8, 10});

    const auto m = material();
    const auto b = random_boundary(100, g.dt, m, 2);
    out.keep = {false, false, true, true, false};
    const auto sol = solve_system(g, m, b, out);
    CHECK(sol.t.size() == 5);
    CHECK(sol.x.size() == 6);
    CHECK(sol[Quantity::U].rows() == 0);
    CHECK(sol[Quantity::S].rows() == 5);
    CHECK(sol[Quantity::C](0, 3) == m.c0_bar);
    CHECK(sol[Quantity::S](4, 0) == doctest::Approx(b.s_left.back()));
    CHECK(sol.bounds.violations() == 0);
}

TEST_CASE("quantity names") {
    CHECK(quantity_name(Quantity::U) == "u");
    CHECK(quantity_name(Quantity::Rho) == "rho");
}

}  // TEST_SUITE
