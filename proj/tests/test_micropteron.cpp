#include <doctest.h>

#include <cmath>
#include <random>

#include "fput/micropteron.hpp"
#include "fput/spectral_ops.hpp"
#include "helpers.hpp"

using namespace fput;
using namespace testing_helpers;

namespace {

struct Fixture {
    WaveParameters p = WaveParameters::from_epsilon(0.2);
    GridPtr grid = default_grid_for_epsilon(0.2);
    SolitaryWave sol = solve_monatomic(p, grid);
    JostSolution jost = neumann_jost(p, sol);
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("mu = 0 gives the trivial solution in one step") {
    const auto& F = fixture();
    MicropteronSolution m = beale_iterate(F.p, F.sol, F.jost);
    CHECK(m.converged);
    CHECK(m.iterations == 1);
    CHECK(m.a == 0.0);
    CHECK(sup_norm(m.eta1) == 0.0);
    CHECK(sup_norm(m.eta2) == 0.0);
}

TEST_CASE("subsonic speeds are rejected") {
    const auto& F = fixture();
    MicropteronSolution m = beale_iterate(F.p.with_mu(4e-3), F.sol, F.jost);
    CHECK_FALSE(m.converged);
    CHECK(m.status == "subsonic");
    CHECK_FALSE(is_supersonic(F.p.with_mu(4e-3)));
    CHECK(is_supersonic(F.p.with_mu(2e-3)));
}

TEST_CASE("projected L solve recovers an odd localized function") {
    const auto& F = fixture();
    const Grid& g = *F.grid;
    Vec f(g.N);
    for (int j = 0; j < g.N; ++j) f[j] = 0.01 * std::tanh(0.2 * g.x[j]) * std::exp(-std::pow(0.1 * g.x[j], 2));
    GridFunction rhs = apply_Lc(F.p, F.sol.profile, GridFunction(F.grid, f, Parity::odd));
    ProjectedSolve s = solve_Lc_projected(F.p, F.jost, F.sol, rhs);
    CHECK(std::abs(s.lambda) < 1e-12);
    CHECK(std::abs(s.bordering_multiplier) < 1e-8);
    CHECK(sup_diff(s.eta.values, f) < 1e-12);
}

TEST_CASE("projection removes the chi_c direction") {
    const auto& F = fixture();
    GridFunction chi = chi_c(F.p, F.sol.profile, F.jost.omega);
    ProjectedSolve s = solve_Lc_projected(F.p, F.jost, F.sol, chi);
    CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_norm(s.eta) < 1e-12);
}

TEST_CASE("Beale fixed point at eps = 0.2, mu = 1e-3") {
    const auto& F = fixture();
    const Grid& g = *F.grid;
    MicropteronSolution m = beale_iterate(F.p.with_mu(1e-3), F.sol, F.jost);
    REQUIRE(m.converged);
    CHECK(m.residual < 1e-12);
    CHECK(m.tail_eta1 < 1e-12);
    CHECK(m.tail_eta2 < 1e-12);
    CHECK(m.max_parity_defect < 1e-14);
    CHECK(m.norm_ratio() < 1.0);
    // fixed-point identities of the corrector equations
    BealeTerms t = assemble_terms(F.p.with_mu(1e-3), m.eta1, m.eta2, m.a, F.sol,
                                  evaluate_periodic([&] { auto w = m.ripple; w.a = 1.0; return w; }(), F.grid), F.jost);
    Vec He = raw::apply_H(g, F.p.c2(), F.sol.profile.values, m.eta1.values);
    CHECK(sup_diff(He, t.h_sum().values) < 1e-13);
    Vec Le = raw::apply_L(g, F.p.c2(), F.sol.profile.values, m.eta2.values);
    double lam = functional_iota(F.jost, t.l_sum().values) /
                 functional_iota(F.jost, chi_c(F.p, F.sol.profile, F.jost.omega).values);
    Vec chi = chi_c(F.p, F.sol.profile, F.jost.omega).values;
    double err = 0;
    for (int j = 0; j < g.N; ++j)
        if (std::abs(g.x[j]) < 0.8 * g.L) err = std::max(err, std::abs(Le[j] - (t.l_sum().values[j] - lam * chi[j])));
    CHECK(err < 1e-13);
}

TEST_CASE("assembled profiles combine core, ripple and corrector") {
    const auto& F = fixture();
    MicropteronSolution m = beale_iterate(F.p.with_mu(1e-3), F.sol, F.jost);
    AssembledProfiles a = assemble_profiles(m, F.sol, m.ripple);
    for (int j = 0; j < F.grid->N; j += 97) {
        CHECK(a.p1.values[j] == doctest::Approx(a.rho.rho1.values[j] + a.rho.rho2.values[j]));
        CHECK(a.p2.values[j] == doctest::Approx(a.rho.rho1.values[j] - a.rho.rho2.values[j]));
    }
}
