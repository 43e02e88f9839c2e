#include "fput/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "fput/fft.hpp"
#include "fput/krylov.hpp"

namespace fput {

double y_minus_sin_y(double y) {
    if (std::abs(y) >= 1.0) return y - std::sin(y);
    // y^3/3! - y^5/5! + ...
    double t = y * y * y / 6.0, s = t;
    int n = 3;
    for (int j = 0; j < 12; ++j) {
        t = -t * y * y / ((n + 1) * (n + 2));
        n += 2;
        s += t;
    }
    return s;
}

double two_minus_2cos(double k) {
    double s = std::sin(0.5 * k);
    return 4.0 * s * s;
}

double sonic_gap_symbol(double c2m1, double k) {
    double y = 0.5 * k;
    return c2m1 * k * k + 4.0 * y_minus_sin_y(y) * (y + std::sin(y));
}

namespace raw {

Vec shift_sum(const Grid& g, const Vec& f) {
    return apply_symbol(g, f, [](double k) { return cplx(2.0 * std::cos(k), 0.0); });
}

Vec shift_diff(const Grid& g, const Vec& f) {
    return apply_symbol(g, f, [](double k) { return cplx(0.0, 2.0 * std::sin(k)); });
}

Vec d2(const Grid& g, const Vec& f) {
    return apply_symbol(g, f, [](double k) { return cplx(-k * k, 0.0); });
}

std::pair<Vec, Vec> Dmu(const Grid& g, double mu, const Vec& f1, const Vec& f2) {
    CVec F1 = fft(f1), F2 = fft(f2);
    CVec G1(g.N), G2(g.N);
    for (int j = 0; j < g.N; ++j) {
        double k = g.k[j];
        double omc = two_minus_2cos(k);
        double opc = 2.0 + 2.0 * std::cos(k);
        cplx dl(0.0, 2.0 * std::sin(k));
        G1[j] = 0.5 * ((2.0 + mu) * omc * F1[j] + mu * dl * F2[j]);
        G2[j] = 0.5 * (-mu * dl * F1[j] + (2.0 + mu) * opc * F2[j]);
    }
    G1[0] = 0.0;  // first component is mean-zero by construction
    return {ifft_real(G1), ifft_real(G2)};
}

std::pair<Vec, Vec> Dring(const Grid& g, const Vec& f1, const Vec& f2) {
    CVec F1 = fft(f1), F2 = fft(f2);
    CVec G1(g.N), G2(g.N);
    for (int j = 0; j < g.N; ++j) {
        double k = g.k[j];
        cplx dl(0.0, 2.0 * std::sin(k));
        G1[j] = 0.5 * (two_minus_2cos(k) * F1[j] + dl * F2[j]);
        G2[j] = 0.5 * (-dl * F1[j] + (2.0 + 2.0 * std::cos(k)) * F2[j]);
    }
    G1[0] = 0.0;
    return {ifft_real(G1), ifft_real(G2)};
}

std::pair<Vec, Vec> Q(const Vec& a1, const Vec& a2, const Vec& b1, const Vec& b2) {
    size_t n = a1.size();
    Vec q1(n), q2(n);
    for (size_t j = 0; j < n; ++j) {
        q1[j] = a1[j] * b1[j] + a2[j] * b2[j];
        q2[j] = a1[j] * b2[j] + b1[j] * a2[j];
    }
    return {q1, q2};
}

std::pair<Vec, Vec> residual_G(const Grid& g, double c, double mu, const Vec& r1, const Vec& r2) {
    auto [q1, q2] = Q(r1, r2, r1, r2);
    Vec s1(g.N), s2(g.N);
    for (int j = 0; j < g.N; ++j) {
        s1[j] = r1[j] + q1[j];
        s2[j] = r2[j] + q2[j];
    }
    auto [D1, D2] = Dmu(g, mu, s1, s2);
    Vec a = d2(g, r1), b = d2(g, r2);
    for (int j = 0; j < g.N; ++j) {
        D1[j] += c * c * a[j];
        D2[j] += c * c * b[j];
    }
    return {D1, D2};
}

Vec apply_H(const Grid& g, double c2, const Vec& rho, const Vec& f) {
    Vec u(g.N);
    for (int j = 0; j < g.N; ++j) u[j] = (1.0 + 2.0 * rho[j]) * f[j];
    CVec F = fft(f), U = fft(u);
    for (int j = 0; j < g.N; ++j) F[j] = -c2 * g.k[j] * g.k[j] * F[j] + two_minus_2cos(g.k[j]) * U[j];
    return ifft_real(F);
}

Vec apply_L(const Grid& g, double c2, const Vec& s, const Vec& f) {
    Vec sf(g.N);
    for (int j = 0; j < g.N; ++j) sf[j] = s[j] * f[j];
    CVec F = fft(f), S = fft(sf);
    for (int j = 0; j < g.N; ++j) {
        double k = g.k[j];
        double opc = 2.0 + 2.0 * std::cos(k);
        F[j] = (-c2 * k * k + opc) * F[j] + 2.0 * opc * S[j];
    }
    return ifft_real(F);
}

Vec apply_L_star(const Grid& g, double c2, const Vec& s, const Vec& f) {
    Vec Af = shift_sum(g, f);
    Vec dd = d2(g, f);
    Vec out(g.N);
    for (int j = 0; j < g.N; ++j) {
        double m = 2.0 * f[j] + Af[j];
        out[j] = c2 * dd[j] + m + 2.0 * s[j] * m;
    }
    return out;
}

}  // namespace raw

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid != b.grid && (a.grid->N != b.grid->N || a.grid->L != b.grid->L))
        throw std::invalid_argument("grid mismatch");
}

Parity flip(Parity p) {
    if (p == Parity::even) return Parity::odd;
    if (p == Parity::odd) return Parity::even;
    return Parity::none;
}

Parity product(Parity a, Parity b) {
    if (a == Parity::none || b == Parity::none) return Parity::none;
    return a == b ? Parity::even : Parity::odd;
}

}  // namespace

GridFunction apply_shift_sum(const GridFunction& f) {
    return GridFunction(f.grid, raw::shift_sum(*f.grid, f.values), f.parity, f.mean_zero);
}

GridFunction apply_shift_diff(const GridFunction& f) {
    return GridFunction(f.grid, raw::shift_diff(*f.grid, f.values), flip(f.parity), true);
}

ProfilePair apply_Dmu(double mu, const ProfilePair& rho) {
    require_same_grid(rho.rho1, rho.rho2);
    auto [a, b] = raw::Dmu(*rho.rho1.grid, mu, rho.rho1.values, rho.rho2.values);
    return {GridFunction(rho.rho1.grid, std::move(a), Parity::even, true),
            GridFunction(rho.rho1.grid, std::move(b), Parity::odd)};
}

ProfilePair apply_Dring(const ProfilePair& rho) {
    auto [a, b] = raw::Dring(*rho.rho1.grid, rho.rho1.values, rho.rho2.values);
    return {GridFunction(rho.rho1.grid, std::move(a), Parity::even, true),
            GridFunction(rho.rho1.grid, std::move(b), Parity::odd)};
}

ProfilePair bilinear_Q(const ProfilePair& a, const ProfilePair& b) {
    require_same_grid(a.rho1, b.rho1);
    auto [q1, q2] = raw::Q(a.rho1.values, a.rho2.values, b.rho1.values, b.rho2.values);
    Parity p1 = product(a.rho1.parity, b.rho1.parity);
    Parity p2 = product(a.rho1.parity, b.rho2.parity);
    return {GridFunction(a.rho1.grid, std::move(q1), p1), GridFunction(a.rho1.grid, std::move(q2), p2)};
}

ProfilePair residual_G(const WaveParameters& p, const ProfilePair& rho) {
    require_same_grid(rho.rho1, rho.rho2);
    auto [a, b] = raw::residual_G(*rho.rho1.grid, p.c, p.mu, rho.rho1.values, rho.rho2.values);
    return {GridFunction(rho.rho1.grid, std::move(a), Parity::even, true),
            GridFunction(rho.rho1.grid, std::move(b), Parity::odd)};
}

double sup_norm(const ProfilePair& r) { return std::max(sup_norm(r.rho1), sup_norm(r.rho2)); }

// H = P (I - R (2 rho .)) with P = -c^2 k^2 + 2 - 2cos k and R = (2-2cos k)/(c^2k^2 - 2 + 2cos k).
// P^{-1} g is taken with its k=0 mode dropped; the remaining one-dimensional
// freedom (the even kernel element T^{-1} 1) is fixed by decay at x = -L.
Vec solve_H_general(const Grid& g, double c2m1, const Vec& rho, const Vec& rhs, HcReport* report) {
    const int N = g.N;
    Vec R(N), P(N);
    for (int j = 0; j < N; ++j) {
        double k = g.k[j];
        double gap = sonic_gap_symbol(c2m1, k);
        P[j] = -gap;
        R[j] = j == 0 ? 1.0 / c2m1 : two_minus_2cos(k) / gap;
    }
    auto T = [&](const Vec& v_in) {
        Vec v = even_part(g, v_in);
        Vec w(N);
        for (int j = 0; j < N; ++j) w[j] = 2.0 * rho[j] * v[j];
        CVec W = fft(w);
        for (int j = 0; j < N; ++j) W[j] *= R[j];
        Vec rw = ifft_real(W);
        for (int j = 0; j < N; ++j) v[j] -= rw[j];
        return even_part(g, v);
    };
    CVec G = fft(rhs);
    G[0] = 0.0;
    for (int j = 1; j < N; ++j) G[j] /= P[j];
    Vec g0 = even_part(g, ifft_real(G));

    auto r0 = gmres(T, g0, 1e-14, 60, 20);
    auto r1 = gmres(T, Vec(N, 1.0), 1e-14, 60, 20);
    double C = -r0.x[0] / r1.x[0];
    Vec f(N);
    for (int j = 0; j < N; ++j) f[j] = r0.x[j] + C * r1.x[j];
    if (report) {
        report->iterations = r0.iterations + r1.iterations;
        report->rel_residual = std::max(r0.rel_residual, r1.rel_residual);
        report->converged = r0.converged && r1.converged;
    }
    return f;
}

GridFunction apply_Hc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& f) {
    require_same_grid(varsigma, f);
    return GridFunction(f.grid, raw::apply_H(*f.grid, p.c2(), varsigma.values, f.values), Parity::even, true);
}

GridFunction solve_Hc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& g, HcReport* report) {
    require_same_grid(varsigma, g);
    HcReport rep;
    Vec f = solve_H_general(*g.grid, p.c2_minus_1(), varsigma.values, g.values, &rep);
    if (report) *report = rep;
    if (!rep.converged && rep.rel_residual > 1e-10)
        throw std::runtime_error("solve_Hc: Krylov non-convergence, ill-conditioned (L, N)");
    return GridFunction(g.grid, std::move(f), Parity::even);
}

GridFunction apply_Lc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& f) {
    require_same_grid(varsigma, f);
    return GridFunction(f.grid, raw::apply_L(*f.grid, p.c2(), varsigma.values, f.values), Parity::odd);
}

GridFunction apply_Lc_star(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& g) {
    require_same_grid(varsigma, g);
    return GridFunction(g.grid, raw::apply_L_star(*g.grid, p.c2(), varsigma.values, g.values), Parity::odd);
}

}  // namespace fput
