#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fput/dispersion.hpp"
#include "fput/solitary.hpp"
#include "fput/spectral_ops.hpp"

using namespace fput;

TEST_CASE("kdv_seed amplitudes") {
    auto grid = make_grid(16.0, 128);
    CHECK(kdv_seed(1.0, grid).values[64] == doctest::Approx(0.25));
    CHECK(kdv_seed(0.5, grid).values[64] == doctest::Approx(0.0625));
}

TEST_CASE("Petviashvili solution is a positive even wave") {
    for (double eps : {0.4, 0.2}) {
        auto p = WaveParameters::from_epsilon(eps);
        auto grid = default_grid_for_epsilon(eps);
        SolitaryWave s = solve_monatomic(p, grid);
        CHECK(s.converged);
        CHECK(s.residual <= 1e-12);
        CHECK(std::abs(s.stabilizer - 1.0) < 1e-12);
        CHECK(*std::min_element(s.profile.values.begin(), s.profile.values.end()) >= 0.0);
        CHECK(parity_defect(*grid, s.profile.values, Parity::even) < 1e-15);
        // independent residual of c^2 s'' + (2 - A)(s + s^2)
        Vec u(grid->N);
        for (int j = 0; j < grid->N; ++j) u[j] = s.profile.values[j] * (1 + s.profile.values[j]);
        Vec r = raw::d2(*grid, s.profile.values), Au = raw::shift_sum(*grid, u);
        double res = 0;
        for (int j = 0; j < grid->N; ++j) res = std::max(res, std::abs(p.c2() * r[j] + 2 * u[j] - Au[j]));
        CHECK(res < 1e-13);
    }
}

TEST_CASE("tail decay rate matches the linear spatial eigenvalue") {
    // exponential tail e^{-kappa|x|} with c^2 kappa^2 = 2 cosh kappa - 2
    auto p = WaveParameters::from_epsilon(0.4);
    SolitaryWave s = solve_monatomic(p, default_grid_for_epsilon(0.4));
    double c2 = p.c2();
    double kappa = brent_root([&](double k) { return c2 * k * k - 2 * std::cosh(k) + 2; }, 0.01, 2.0, 1e-15).root;
    CHECK(s.tail_rate == doctest::Approx(kappa).epsilon(1e-3));
}

TEST_CASE("long-wave limit") {
    // eps^-2 varsigma(x/eps) approaches sech^2(x/(2 sqrt 2))/16 at rate eps^2
    double prev = 0.0;
    for (double eps : {0.4, 0.2}) {
        auto p = WaveParameters::from_epsilon(eps);
        auto grid = default_grid_for_epsilon(eps);
        SolitaryWave s = solve_monatomic(p, grid);
        double err = 0.0;
        for (int j = 0; j < grid->N; ++j) {
            double y = eps * grid->x[j];
            err = std::max(err, std::abs(s.profile.values[j] / (eps * eps) -
                                         1.0 / 16 / std::pow(std::cosh(y / (2 * std::sqrt(2.0))), 2)));
        }
        if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
        prev = err;
    }
}
