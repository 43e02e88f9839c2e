#include <doctest.h>

#include <cmath>
#include <random>

#include "fput/fft.hpp"
#include "fput/solitary.hpp"
#include "fput/spectral_ops.hpp"
#include "helpers.hpp"

using namespace fput;
using namespace testing_helpers;

TEST_CASE("cancellation-free symbols") {
    for (double y : {1e-8, 1e-4, 0.01, 0.3, 0.99, 1.0, 1.5, 3.0}) {
        // Taylor series in long double: y^3/3! - y^5/5! + ...
        long double ly = y, term = ly * ly * ly / 6.0L, ref = 0.0L;
        for (int n = 3; std::abs(term) > 1e-40L; n += 2) {
            ref += term;
            term *= -ly * ly / ((n + 1.0L) * (n + 2.0L));
        }
        double r = static_cast<double>(ref);
        CHECK(std::abs(y_minus_sin_y(y) - r) <= 2e-15 * r);
    }
    for (double k : {1e-6, 0.1, 1.0, 3.0})
        CHECK(two_minus_2cos(k) == doctest::Approx(4 * std::pow(std::sin(k / 2), 2)).epsilon(1e-15));
    // c^2 k^2 - (2 - 2cos k) at tiny k is (c^2 - 1)k^2 + k^4/12 to leading order
    double c2m1 = 1e-4, k = 1e-3;
    double lead = c2m1 * k * k + std::pow(k, 4) / 12.0;
    CHECK(sonic_gap_symbol(c2m1, k) == doctest::Approx(lead).epsilon(1e-6));
}

TEST_CASE("shift operators on grid cosines") {
    auto grid = make_grid(16.0, 128);
    const Grid& g = *grid;
    double kap = 2 * std::numbers::pi * 5 / (2 * g.L);
    Vec f(g.N), fs(g.N);
    for (int j = 0; j < g.N; ++j) f[j] = std::cos(kap * g.x[j]);
    Vec A = raw::shift_sum(g, f), D = raw::shift_diff(g, f);
    for (int j = 0; j < g.N; ++j) {
        // A f(x) = f(x+1) + f(x-1), delta f(x) = f(x+1) - f(x-1)
        CHECK(std::abs(A[j] - 2 * std::cos(kap) * f[j]) < 1e-12);
        CHECK(std::abs(D[j] - (-2 * std::sin(kap) * std::sin(kap * g.x[j]))) < 1e-12);
    }
}

TEST_CASE("D_mu at mu = 0 reduces to (2 - A, 2 + A) / ... blocks") {
    auto grid = make_grid(32.0, 256);
    const Grid& g = *grid;
    Vec f1 = gaussian_even(g, 3.0), f2 = gaussian_odd(g, 4.0);
    auto [a, b] = raw::Dmu(g, 0.0, f1, f2);
    Vec A1 = raw::shift_sum(g, f1), A2 = raw::shift_sum(g, f2);
    for (int j = 0; j < g.N; ++j) {
        CHECK(std::abs(a[j] - (2 * f1[j] - A1[j])) < 1e-13);
        CHECK(std::abs(b[j] - (2 * f2[j] + A2[j])) < 1e-13);
    }
}

TEST_CASE("D_mu is symmetric in the L2 pairing") {
    auto grid = make_grid(32.0, 256);
    const Grid& g = *grid;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Vec a1 = random_bumps(g, rng), a2 = random_bumps(g, rng), b1 = random_bumps(g, rng), b2 = random_bumps(g, rng);
        // zero means so the dropped k = 0 mode of the first component is immaterial
        double m1 = 0, m2 = 0;
        for (int j = 0; j < g.N; ++j) m1 += a1[j], m2 += b1[j];
        for (int j = 0; j < g.N; ++j) a1[j] -= m1 / g.N, b1[j] -= m2 / g.N;
        auto Da = raw::Dmu(g, 0.3, a1, a2), Db = raw::Dmu(g, 0.3, b1, b2);
        double lhs = l2_dot(g, Da.first, b1) + l2_dot(g, Da.second, b2);
        double rhs = l2_dot(g, a1, Db.first) + l2_dot(g, a2, Db.second);
        CHECK(std::abs(lhs - rhs) < 1e-11);
    }
}

TEST_CASE("L_c^* is the adjoint of L_c") {
    auto p = WaveParameters::from_epsilon(0.4);
    auto grid = default_grid_for_epsilon(0.4);
    const Grid& g = *grid;
    SolitaryWave s = solve_monatomic(p, grid);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 5; ++t) {
        Vec f = random_bumps(g, rng, 30.0), h = random_bumps(g, rng, 30.0);
        double lhs = l2_dot(g, raw::apply_L(g, p.c2(), s.profile.values, f), h);
        double rhs = l2_dot(g, f, raw::apply_L_star(g, p.c2(), s.profile.values, h));
        CHECK(std::abs(lhs - rhs) < 1e-11);
    }
}

TEST_CASE("solve_Hc inverts apply_Hc on decaying even functions") {
    for (double eps : {0.4, 0.2}) {
        auto p = WaveParameters::from_epsilon(eps);
        auto grid = default_grid_for_epsilon(eps);
        SolitaryWave s = solve_monatomic(p, grid);
        GridFunction f(grid, gaussian_even(*grid, 6.0, 0.4), Parity::even);
        GridFunction h = apply_Hc(p, s.profile, f);
        HcReport rep;
        GridFunction back = solve_Hc(p, s.profile, h, &rep);
        CHECK(rep.converged);
        CHECK(sup_diff(back.values, f.values) < 1e-9);
        CHECK(parity_defect(*grid, back.values, Parity::even) < 1e-13);
    }
}

TEST_CASE("zero in, zero out") {
    auto grid = make_grid(16.0, 128);
    ProfilePair z{GridFunction::zeros(grid, Parity::even), GridFunction::zeros(grid, Parity::odd)};
    CHECK(sup_norm(apply_Dmu(0.1, z)) == 0.0);
    CHECK(sup_norm(bilinear_Q(z, z)) == 0.0);
    CHECK(sup_norm(residual_G(WaveParameters::from_speed(1.1, 0.1), z)) == 0.0);
}
