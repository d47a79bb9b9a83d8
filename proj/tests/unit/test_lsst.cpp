#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sulph/error.hpp"
#include "sulph/lsst.hpp"

using namespace sulph;
using std::numbers::pi;

namespace {

PearsonParams make(double sigma) { return PearsonParams::validate({7.0, 1.0, sigma, 1.5}); }

double slope(const TruncationSpec& s, const LampertiDrift& d, double y, double h = 1e-7) {
    return (truncated_drift(s, d, y + h) - truncated_drift(s, d, y - h)) / (2 * h);
}

ErrorCode code_of(const LampertiDrift& d, double k, double delta) {
    try {
        make_truncation(d, k, delta);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("lsst") {

TEST_CASE("critical step size") {
    CHECK(delta_star(0.22, 1.9379651031832765) == doctest::Approx(1.0));
    CHECK(delta_star(0.25, 0.5) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(delta_star(0.5, 3.0) == doctest::Approx((pi - 3.0) * (pi - 3.0)).epsilon(1e-14));
}

TEST_CASE("truncation validation") {
    const auto d = lamperti_coefficients(make(1.0));
    CHECK(code_of(d, 0.0, 1e-3) == ErrorCode::DomainViolation);
    CHECK(code_of(d, 1.0, 1e-3) == ErrorCode::DomainViolation);
    CHECK(code_of(d, 0.22, 0.0) == ErrorCode::DomainViolation);
    CHECK(code_of(d, 0.22, 1.0) == ErrorCode::StepTooLarge);
    CHECK_NOTHROW(make_truncation(d, 0.22, 0.5));
}

TEST_CASE("interior branch is the exact drift") {
    const auto d = lamperti_coefficients(make(1.0));
    const auto s = make_truncation(d, 0.22, 1.0 / 1024);
    for (double y = s.thr; y <= pi - s.thr; y += 0.01) CHECK(truncated_drift(s, d, y) == lamperti_drift(d, y));
}

TEST_CASE("property: truncated drift is C1 at the junctions") {
    for (double sigma : {0.25, 1.0}) {
        const auto d = lamperti_coefficients(make(sigma));
        for (double delta : {1.0 / 16, 1.0 / 2048, 1.0 / 32768}) {
            const auto s = make_truncation(d, 0.22, delta);
            const double h = s.thr;
            const double c0 = d.c0_const;
            const double fl = lamperti_drift(d, h), dfl = lamperti_drift_derivative(d, h);
            const double fr = lamperti_drift(d, pi - h), dfr = lamperti_drift_derivative(d, pi - h);

            // Slopes of the five pieces written out independently.
            const auto slope_p2 = [&](double y) { return dfl + (dfl + c0) * (y - h) / h; };
            const auto slope_p4 = [&](double y) { return dfr - (dfr + c0) * (y - pi + h) / h; };

            const double junctions[4] = {0.0, h, pi - h, pi};
            const double slope_left[4] = {-c0, slope_p2(h), lamperti_drift_derivative(d, pi - h), slope_p4(pi)};
            const double slope_right[4] = {slope_p2(0.0), lamperti_drift_derivative(d, h), slope_p4(pi - h), -c0};
            for (int j = 0; j < 4; ++j) {
                const double y = junctions[j];
                const double below = truncated_drift(s, d, std::nextafter(y, -10.0));
                const double above = truncated_drift(s, d, std::nextafter(y, 10.0));
                CHECK(std::abs(below - above) <= 1e-8 * std::max(1.0, std::abs(below)));
                CHECK(std::abs(slope_left[j] - slope_right[j]) <= 1e-8 * std::max(1.0, std::abs(slope_left[j])));
            }
            // The written-out slopes match the implementation inside each piece.
            for (double y : {-0.5, 0.5 * h, 1.5, pi - 0.5 * h, pi + 0.5}) {
                double expected = -c0;
                if (y > 0.0 && y < h) expected = slope_p2(y);
                else if (y >= h && y <= pi - h) expected = lamperti_drift_derivative(d, y);
                else if (y > pi - h && y < pi) expected = slope_p4(y);
                const double g = 1e-6 * h;
                const double fd = (truncated_drift(s, d, y + g) - truncated_drift(s, d, y - g)) / (2 * g);
                CHECK(fd == doctest::Approx(expected).epsilon(1e-5));
            }
            CHECK(fl == s.f_left);
            CHECK(fr == s.f_right);
        }
    }
}

TEST_CASE("property: truncated drift slope is at most -C0") {
    for (double sigma : {0.25, 1.0}) {
        const auto d = lamperti_coefficients(make(sigma));
        const auto s = make_truncation(d, 0.22, 1.0 / 256);
        for (double y = -2.0; y <= pi + 2.0; y += 1e-3) CHECK(slope(s, d, y) <= -s.c0_const + 1e-5 * std::abs(slope(s, d, y)));
    }
}

TEST_CASE("property: one-sided Lipschitz on random pairs") {
    const auto d = lamperti_coefficients(make(1.0));
    const auto s = make_truncation(d, 0.22, 1.0 / 512);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, pi + 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double x = u(rng), y = u(rng);
        const double lhs = (x - y) * (truncated_drift(s, d, x) - truncated_drift(s, d, y));
        CHECK(lhs <= -s.c0_const * (x - y) * (x - y) + 1e-9);
    }
}

TEST_CASE("Euler-Maruyama step") {
    const auto d = lamperti_coefficients(make(1.0));
    const auto s = make_truncation(d, 0.22, 0.01);
    const double y = 1.2, dw = 0.05;
    CHECK(em_step(s, d, y, dw) == doctest::Approx(y + lamperti_drift(d, y) * 0.01 + dw).epsilon(1e-15));
}

TEST_CASE("zero noise from y* stays at y*") {
    const auto p = make(1.0);
    const auto d = lamperti_coefficients(p);
    const auto s = make_truncation(d, 0.22, 1.0 / 64);
    const double psi_star = lamperti_inverse(p, d.y_star);
    const std::vector<double> dW(64, 0.0);
    const auto path = path_from_increments(p, d, s, psi_star, dW);
    for (double y : path.y) CHECK(y == doctest::Approx(d.y_star).epsilon(1e-12));
}

TEST_CASE("sampled paths stay in [0, eta] and are reproducible") {
    const auto p = make(1.0);
    const auto s = make_truncation(lamperti_coefficients(p), 0.22, 1.0 / 1024);
    const auto a = sample_path(p, s, 0.0, 4096, 42, 3);
    const auto b = sample_path(p, s, 0.0, 4096, 42, 3);
    const auto c = sample_path(p, s, 0.0, 4096, 42, 4);
    CHECK(a.psi == b.psi);
    CHECK(a.psi != c.psi);
    CHECK(a.steps() == 4096);
    CHECK(a.times.back() == doctest::Approx(4.0));
    for (std::size_t n = 0; n <= a.steps(); ++n) {
        CHECK(a.psi[n] >= 0.0);
        CHECK(a.psi[n] <= 1.5);
        CHECK(a.psi[n] == doctest::Approx(1.5 * std::pow(std::sin(a.y[n] / 2), 2)).epsilon(1e-15));
    }
}

TEST_CASE("deterministic boundary") {
    const auto p = make(0.0);
    const auto path = deterministic_path(p, 1e-3, 1000);
    for (std::size_t n = 0; n <= 1000; ++n)
        CHECK(std::abs(path.psi[n] - (1.0 - std::exp(-7.0 * n * 1e-3))) <= 1e-12);
    const auto s = make_truncation(lamperti_coefficients(p), 0.22, 1e-3);
    const auto sampled = sample_path(p, s, 0.0, 10, 1, 0);
    CHECK(sampled.psi.size() == 11);
}

}  // TEST_SUITE
