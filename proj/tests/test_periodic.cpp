#include <doctest.h>

#include <cmath>

#include "fput/periodic.hpp"

using namespace fput;

TEST_CASE("bifurcation denominator matches a finite difference of <Gamma(w) nu, nu>") {
    for (double mu : {0.0, 0.01, 0.05}) {
        auto p = WaveParameters::from_speed(std::sqrt(2.0), mu);
        PeriodicFamily fam(p);
        ModePair nu = fam.nu();
        double w = fam.omega0(), h = 1e-5;
        double fp = fam.inner(fam.apply_Gamma(w + h, nu), nu), fm = fam.inner(fam.apply_Gamma(w - h, nu), nu);
        double fd = (fp - fm) / (2 * h);
        CHECK(bifurcation_denominator(p) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(bifurcation_denominator(WaveParameters::from_speed(1.2)) ==
          doctest::Approx(-(1.44 * critical_frequency(WaveParameters::from_speed(1.2)).omega +
                            std::sin(critical_frequency(WaveParameters::from_speed(1.2)).omega))));
}

TEST_CASE("nu spans the kernel of Gamma at omega0") {
    auto p = WaveParameters::from_speed(std::sqrt(2.0), 0.01);
    PeriodicFamily fam(p);
    ModePair g = fam.apply_Gamma(fam.omega0(), fam.nu());
    double m = 0;
    for (int j = 0; j < fam.np(); ++j) m = std::max({m, std::abs(g.first[j]), std::abs(g.second[j])});
    CHECK(m < 1e-11);
}

TEST_CASE("gamma_solve inverts Gamma off the kernel") {
    auto p = WaveParameters::from_speed(std::sqrt(2.0), 0.01);
    PeriodicFamily fam(p);
    const Vec& y = fam.y();
    ModePair f{Vec(fam.np()), Vec(fam.np())};
    for (int j = 0; j < fam.np(); ++j) {
        f.first[j] = 0.3 * std::cos(2 * y[j]) - 0.1 * std::cos(3 * y[j]) + 0.2 * std::cos(y[j]);
        f.second[j] = 0.5 * std::sin(2 * y[j]) + 0.05 * std::sin(5 * y[j]) - 0.2 * fam.upsilon() * std::sin(y[j]);
    }
    // remove any nu component so f is in the range complement
    ModePair nu = fam.nu();
    double cn = fam.inner(f, nu) / fam.inner(nu, nu);
    for (int j = 0; j < fam.np(); ++j) f.first[j] -= cn * nu.first[j], f.second[j] -= cn * nu.second[j];
    ModePair g = fam.apply_Gamma(fam.omega0(), f);
    ModePair back = fam.gamma_solve(g);
    double err = 0;
    for (int j = 0; j < fam.np(); ++j)
        err = std::max({err, std::abs(back.first[j] - f.first[j]), std::abs(back.second[j] - f.second[j])});
    CHECK(err < 1e-12);
}

TEST_CASE("amplitude zero recovers the linear wave") {
    auto p = WaveParameters::from_speed(std::sqrt(2.0), 0.01);
    PeriodicWave w = solve_periodic(p, 0.0);
    CHECK(w.omega == w.omega0);
    CHECK(sup_norm(w.psi1) == 0.0);
    CHECK(sup_norm(w.psi2) == 0.0);
}

TEST_CASE("small-amplitude family") {
    auto p = WaveParameters::from_speed(std::sqrt(2.0), 0.01);
    PeriodicWave w1 = solve_periodic(p, 1e-3), w2 = solve_periodic(p, 2e-3);
    CHECK(w1.residual < 1e-12);
    CHECK(w2.residual < 1e-12);
    // frequency shift is even in a: doubling a multiplies it by about 4
    double r = (w2.omega - w2.omega0) / (w1.omega - w1.omega0);
    CHECK(r == doctest::Approx(4.0).epsilon(0.01));
    // psi is first order in a
    double s = (sup_norm(w2.psi1) + sup_norm(w2.psi2)) / (sup_norm(w1.psi1) + sup_norm(w1.psi2));
    CHECK(s == doctest::Approx(2.0).epsilon(0.01));
}
