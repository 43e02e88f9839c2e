#include "fput/micropteron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fput/spectral_ops.hpp"

namespace fput {
namespace {

Vec scaled(double a, const Vec& v) {
    Vec out(v.size());
    for (size_t j = 0; j < v.size(); ++j) out[j] = a * v[j];
    return out;
}

void add_to(Vec& y, double a, const Vec& x) {
    for (size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

double interior_sup(const Grid& g, const Vec& v, double frac) {
    double m = 0.0;
    for (int j = 0; j < g.N; ++j)
        if (std::abs(g.x[j]) <= frac * g.L) m = std::max(m, std::abs(v[j]));
    return m;
}

double tail_sup(const Grid& g, const Vec& v) {
    double m = 0.0;
    for (int j = 0; j < g.N; ++j)
        if (std::abs(g.x[j]) > 0.9 * g.L) m = std::max(m, std::abs(v[j]));
    return m;
}

ProfilePair unit_ripple(const PeriodicWave& w, const GridPtr& grid) {
    PeriodicWave u = w;
    u.a = 1.0;
    return evaluate_periodic(u, grid);
}

// Stitched Neumann solve of L eta = g for g already in the range (iota[g] = 0).
Vec neumann_L(const WaveParameters& p, const JostSolution& jost, const Vec& s, const Vec& g, int* iters) {
    const Grid& gr = *jost.gamma.grid;
    const int N = gr.N;
    Vec eta(N, 0.0);
    double prev = INFINITY;
    int stalled = 0;
    for (int it = 1; it <= 200; ++it) {
        Vec se(N);
        for (int j = 0; j < N; ++j) se[j] = s[j] * eta[j];
        Vec Ase = raw::shift_sum(gr, se);
        Vec r(N);
        for (int j = 0; j < N; ++j) r[j] = g[j] - 2.0 * (2.0 * se[j] + Ase[j]);
        Vec en = invert_B_stitched_real(p, gr, jost.omega, jost.q, r);
        double dd = sup_diff(en, eta);
        eta = std::move(en);
        if (iters) *iters = it;
        if (dd < 1e-17) break;
        stalled = dd >= 0.9 * prev ? stalled + 1 : 0;
        if (stalled >= 5) break;  // rounding floor
        prev = dd;
    }
    return odd_part(gr, eta);
}

}  // namespace

GridFunction BealeTerms::h_sum() const {
    Vec v(h[0].values.size(), 0.0);
    for (const auto& t : h) add_to(v, 1.0, t.values);
    return GridFunction(h[0].grid, std::move(v), Parity::even, true);
}

GridFunction BealeTerms::l_sum() const {
    Vec v = ltilde3.values;
    for (int i = 0; i < 5; ++i)
        if (i != 2) add_to(v, 1.0, l[i].values);
    return GridFunction(ltilde3.grid, std::move(v), Parity::odd);
}

double MicropteronSolution::norm_ratio() const {
    double n = sup_norm(eta1) + sup_norm(eta2) + std::abs(a);
    return mu != 0.0 ? n / std::abs(mu) : 0.0;
}

bool is_supersonic(const WaveParameters& p) { return p.c2() > sound_speed_squared(p.mu); }

BealeTerms assemble_terms(const WaveParameters& p, const GridFunction& eta1, const GridFunction& eta2, double a,
                          const SolitaryWave& sol, const ProfilePair& phi_unit, const JostSolution& jost) {
    const GridPtr& grid = sol.profile.grid;
    const Grid& g = *grid;
    const int N = g.N;
    const double mu = p.mu;
    const Vec& s = sol.profile.values;
    const Vec& e1 = eta1.values;
    const Vec& e2 = eta2.values;
    const Vec& f1 = phi_unit.rho1.values;
    const Vec& f2 = phi_unit.rho2.values;
    const Vec zero(N, 0.0);

    std::array<std::pair<Vec, Vec>, 5> t;
    {
        Vec u(N);
        for (int j = 0; j < N; ++j) u[j] = -mu * (s[j] + s[j] * s[j]);
        t[0] = raw::Dring(g, u, zero);
    }
    {
        auto q = raw::Q(s, zero, e1, e2);
        Vec u1(N), u2(N);
        for (int j = 0; j < N; ++j) {
            u1[j] = -mu * (e1[j] + 2.0 * q.first[j]);
            u2[j] = -mu * (e2[j] + 2.0 * q.second[j]);
        }
        t[1] = raw::Dring(g, u1, u2);
    }
    {
        auto q = raw::Q(s, zero, f1, f2);
        auto d = raw::Dmu(g, mu, q.first, q.second);
        t[2] = {scaled(-2.0 * a, d.first), scaled(-2.0 * a, d.second)};
    }
    {
        auto q = raw::Q(f1, f2, e1, e2);
        auto d = raw::Dmu(g, mu, q.first, q.second);
        t[3] = {scaled(-2.0 * a, d.first), scaled(-2.0 * a, d.second)};
    }
    {
        auto q = raw::Q(e1, e2, e1, e2);
        auto d = raw::Dmu(g, mu, q.first, q.second);
        t[4] = {scaled(-1.0, d.first), scaled(-1.0, d.second)};
    }

    BealeTerms out;
    for (int i = 0; i < 5; ++i) {
        out.h[i] = GridFunction(grid, std::move(t[i].first), Parity::even, true);
        out.l[i] = GridFunction(grid, std::move(t[i].second), Parity::odd);
    }
    GridFunction chi = chi_c(p, sol.profile, jost.omega);
    Vec lt = out.l[2].values;
    add_to(lt, 2.0 * a, chi.values);
    out.ltilde3 = GridFunction(grid, std::move(lt), Parity::odd);
    return out;
}

ProjectedSolve solve_Lc_projected(const WaveParameters& p, const JostSolution& jost, const SolitaryWave& sol,
                                  const GridFunction& rhs) {
    const Grid& g = *rhs.grid;
    GridFunction chi = chi_c(p, sol.profile, jost.omega);
    ProjectedSolve out;
    out.lambda = functional_iota(jost, rhs.values) / functional_iota(jost, chi.values);
    Vec pr = rhs.values;
    add_to(pr, -out.lambda, chi.values);
    Vec eta = neumann_L(p, jost, sol.profile.values, pr, &out.iterations);

    Vec Le = raw::apply_L(g, p.c2(), sol.profile.values, eta);
    Vec d(g.N);
    for (int j = 0; j < g.N; ++j) d[j] = pr[j] - Le[j];
    out.bordering_multiplier = functional_iota(jost, d) / functional_iota(jost, chi.values);
    out.eta = GridFunction(rhs.grid, std::move(eta), Parity::odd);
    return out;
}

MicropteronSolution beale_iterate(const WaveParameters& p, const SolitaryWave& sol, const JostSolution& jost,
                                  const BealeOptions& opt) {
    const GridPtr& grid = sol.profile.grid;
    const Grid& g = *grid;
    const int N = g.N;
    const double mu = p.mu;
    const Vec& s = sol.profile.values;

    MicropteronSolution out;
    out.mu = mu;
    out.c = p.c;
    out.eta1 = GridFunction::zeros(grid, Parity::even);
    out.eta2 = GridFunction::zeros(grid, Parity::odd);
    if (!is_supersonic(p)) {
        out.status = "subsonic";
        return out;
    }

    PeriodicFamily family(p);
    double phi_a = NAN;
    ProfilePair phi;
    auto ripple_at = [&](double a) -> const ProfilePair& {
        if (!(std::abs(a - phi_a) <= opt.periodic_refresh)) {
            out.ripple = family.solve(a);
            phi = unit_ripple(out.ripple, grid);
            phi_a = a;
        }
        return phi;
    };

    GridFunction chibar = chi_c(p, sol.profile, jost.omega);
    chibar.values = scaled(2.0, chibar.values);
    const double iota_chibar = functional_iota(jost, chibar.values);

    // The mu part of D_mu acting on eta1 is folded into an effective speed so that
    // the Newton linearization keeps the unperturbed H structure.
    const double one_plus = 1.0 + 0.5 * mu;
    const double c2m1_eff = (p.c2_minus_1() - 0.5 * mu) / one_plus;

    auto eta1_residual = [&](const Vec& e1, const Vec& e2, double a) {
        GridFunction E1(grid, e1, Parity::even), E2(grid, e2, Parity::odd);
        BealeTerms t = assemble_terms(p, E1, E2, a, sol, ripple_at(a), jost);
        Vec F = raw::apply_H(g, p.c2(), s, e1);
        add_to(F, -1.0, t.h_sum().values);
        return F;
    };

    Vec e1(N, 0.0), e2(N, 0.0);
    double a = 0.0;
    for (int it = 1; it <= opt.max_outer; ++it) {
        BealeTerms t = assemble_terms(p, GridFunction(grid, e1, Parity::even), GridFunction(grid, e2, Parity::odd),
                                      a, sol, ripple_at(a), jost);
        GridFunction lt = t.l_sum();
        double an = functional_iota(jost, lt.values) / iota_chibar;
        ProjectedSolve ps = solve_Lc_projected(p, jost, sol, lt);
        Vec e2n = ps.eta.values;
        out.bordering_multiplier = ps.bordering_multiplier;

        // damped Newton on the eta1 equation; undamped steps fall onto eta1 = -varsigma
        Vec e1n = e1;
        for (int nit = 0; nit < opt.max_newton; ++nit) {
            Vec F = eta1_residual(e1n, e2n, an);
            double f0 = sup_norm(F);
            if (f0 < 1e-16) break;
            Vec rho(N), rhs(N);
            for (int j = 0; j < N; ++j) {
                rho[j] = s[j] + e1n[j];
                rhs[j] = -F[j] / one_plus;
            }
            HcReport rep;
            Vec step = solve_H_general(g, c2m1_eff, rho, rhs, &rep);
            double tstep = 1.0;
            Vec trial(N);
            while (true) {
                for (int j = 0; j < N; ++j) trial[j] = e1n[j] + tstep * step[j];
                if (sup_norm(eta1_residual(trial, e2n, an)) < (1.0 - 0.25 * tstep) * f0) break;
                tstep *= 0.5;
                if (tstep < 1e-3) break;
            }
            if (tstep < 1e-3) break;  // no descent left: rounding floor
            double ds = tstep * sup_norm(step);
            e1n = trial;
            if (ds < 1e-14) break;
        }
        e1n = even_part(g, e1n);

        double dd = std::max({std::abs(an - a), sup_diff(e1n, e1), sup_diff(e2n, e2)});
        out.increments.push_back(dd);
        out.max_parity_defect = std::max({out.max_parity_defect, parity_defect(g, e1n, Parity::even),
                                          parity_defect(g, e2n, Parity::odd)});
        a = an;
        e1 = std::move(e1n);
        e2 = std::move(e2n);
        out.iterations = it;
        out.last_increment = dd;
        if (!std::isfinite(dd)) break;
        if (dd < opt.tol) {
            out.converged = true;
            break;
        }
        size_t n = out.increments.size();
        if (n >= 4 && out.increments[n - 1] > out.increments[n - 2] && out.increments[n - 2] > out.increments[n - 3])
            break;
    }

    out.a = a;
    ripple_at(a);
    out.eta1 = GridFunction(grid, e1, Parity::even);
    out.eta2 = GridFunction(grid, e2, Parity::odd);
    out.tail_eta1 = tail_sup(g, e1);
    out.tail_eta2 = tail_sup(g, e2);

    const Vec& W = jost.window.values;
    Vec r1(N), r2(N);
    for (int j = 0; j < N; ++j) {
        r1[j] = W[j] * (s[j] + a * phi.rho1.values[j] + e1[j]);
        r2[j] = W[j] * (a * phi.rho2.values[j] + e2[j]);
    }
    auto G = raw::residual_G(g, p.c, mu, r1, r2);
    out.residual = std::max(interior_sup(g, G.first, 0.9), interior_sup(g, G.second, 0.9));
    out.status = out.converged ? "converged" : "non-contraction";
    return out;
}

MicropteronSolution beale_iterate_adaptive(const WaveParameters& p, const SolitaryWave& sol,
                                           const JostSolution& jost, int max_halvings, const BealeOptions& opt) {
    WaveParameters q = p;
    MicropteronSolution best;
    for (int h = 0; h <= max_halvings; ++h) {
        best = beale_iterate(q, sol, jost, opt);
        if (best.converged) return best;
        q = q.with_mu(0.5 * q.mu);
    }
    return best;
}

AssembledProfiles assemble_profiles(const MicropteronSolution& sol, const SolitaryWave& solitary,
                                    const PeriodicWave& periodic) {
    const GridPtr& grid = solitary.profile.grid;
    const int N = grid->N;
    ProfilePair phi = unit_ripple(periodic, grid);
    Vec r1(N), r2(N), p1(N), p2(N);
    for (int j = 0; j < N; ++j) {
        r1[j] = solitary.profile.values[j] + sol.a * phi.rho1.values[j] + sol.eta1.values[j];
        r2[j] = sol.a * phi.rho2.values[j] + sol.eta2.values[j];
        p1[j] = r1[j] + r2[j];
        p2[j] = r1[j] - r2[j];
    }
    AssembledProfiles out;
    out.rho = {GridFunction(grid, std::move(r1), Parity::even), GridFunction(grid, std::move(r2), Parity::odd)};
    out.p1 = GridFunction(grid, std::move(p1));
    out.p2 = GridFunction(grid, std::move(p2));
    return out;
}

}  // namespace fput
