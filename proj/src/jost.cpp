#include "fput/jost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fput/fft.hpp"
#include "fput/spectral_ops.hpp"

namespace fput {

double JostSolution::sin_omega_theta() const { return std::sin(omega * theta); }

CVec invert_B_weighted(const WaveParameters& p, const Grid& g, double q, const CVec& rhs) {
    const int N = g.N;
    CVec w(N);
    for (int j = 0; j < N; ++j) w[j] = std::exp(-q * g.x[j]) * rhs[j];
    CVec F = fft(w);
    for (int j = 0; j < N; ++j) {
        cplx s = eval_symbol_B(p.c, cplx(g.k[j], -q));
        if (std::abs(s) < 1e-10) throw std::runtime_error("invert_B_weighted: symbol zero in the strip");
        F[j] /= s;
    }
    CVec f = ifft(F);
    for (int j = 0; j < N; ++j) f[j] *= std::exp(q * g.x[j]);
    return f;
}

GridFunction invert_B_weighted(const WaveParameters& p, double q, const GridFunction& rhs) {
    CVec r(rhs.values.begin(), rhs.values.end());
    CVec f = invert_B_weighted(p, *rhs.grid, q, r);
    Vec out(f.size());
    for (size_t j = 0; j < f.size(); ++j) out[j] = f[j].real();
    return GridFunction(rhs.grid, std::move(out), rhs.parity);
}

StitchedInverse invert_B_stitched(const WaveParameters& p, const Grid& g, double omega, double q, const CVec& rhs) {
    const int N = g.N;
    CVec um = invert_B_weighted(p, g, -q, rhs);
    CVec up = invert_B_weighted(p, g, q, rhs);
    cplx hp = 0.0, hm = 0.0;
    for (int j = 0; j < N; ++j) {
        cplx e = std::polar(1.0, -omega * g.x[j]);
        hp += rhs[j] * e;
        hm += rhs[j] * std::conj(e);
    }
    hp *= g.dx;
    hm *= g.dx;
    double Bp = symbol_B_prime(p.c, omega);
    const cplx I(0.0, 1.0);
    StitchedInverse out;
    out.alpha = -I * hp / Bp;
    out.beta = -I * hm / (-Bp);
    out.f.resize(N);
    for (int j = 0; j < N; ++j) {
        cplx e = std::polar(1.0, omega * g.x[j]);
        cplx left = up[j] + out.alpha * e + out.beta * std::conj(e);
        if (std::abs(g.x[j]) < 20.0) out.jump = std::max(out.jump, std::abs(um[j] - left));
        out.f[j] = g.x[j] >= 0.0 ? um[j] : left;
    }
    return out;
}

Vec invert_B_stitched_real(const WaveParameters& p, const Grid& g, double omega, double q, const Vec& rhs) {
    StitchedInverse s = invert_B_stitched(p, g, omega, q, CVec(rhs.begin(), rhs.end()));
    Vec out(g.N);
    for (int j = 0; j < g.N; ++j) out[j] = s.f[j].real();
    return out;
}

Vec smooth_window(const Grid& g) {
    const double a = 0.9 * g.L + 1.0, b = g.L - 2.0;
    Vec W(g.N);
    for (int j = 0; j < g.N; ++j) {
        double t = (std::abs(g.x[j]) - a) / (b - a);
        if (t <= 0.0) {
            W[j] = 1.0;
        } else if (t >= 1.0) {
            W[j] = 0.0;
        } else {
            double e1 = std::exp(-1.0 / t), e2 = std::exp(-1.0 / (1.0 - t));
            W[j] = e2 / (e1 + e2);
        }
    }
    return W;
}

JostSolution neumann_jost(const WaveParameters& p, const SolitaryWave& sol, const JostOptions& opt) {
    const GridPtr& grid = sol.profile.grid;
    const Grid& g = *grid;
    const int N = g.N;
    const Vec& s = sol.profile.values;

    JostSolution out;
    out.c = p.c;
    out.omega = critical_frequency(p).omega;
    double rate = sol.tail_rate > 0 ? sol.tail_rate : fitted_decay_rate(sol.profile);
    // qL <= 24 keeps the e^{q|x|} amplification of spectral rounding noise below ~1e10
    out.q = opt.q > 0 ? opt.q : std::min({0.5 * rate, 0.25, 24.0 / g.L});
    if (!(out.q > 0)) throw std::runtime_error("neumann_jost: no usable decay rate for the weight");
    Vec W = smooth_window(g);

    CVec e(N);
    for (int j = 0; j < N; ++j) e[j] = std::polar(1.0, out.omega * g.x[j]);

    // Sigma^* f = -2 varsigma (2 f + A f); f is non-decaying, so A acts on W f.
    auto sigma_star = [&](const CVec& f) {
        CVec wf(N);
        for (int j = 0; j < N; ++j) wf[j] = W[j] * f[j];
        CVec F = fft(wf);
        for (int j = 0; j < N; ++j) F[j] *= 2.0 * std::cos(g.k[j]);
        CVec Af = ifft(F);
        CVec h(N);
        for (int j = 0; j < N; ++j) h[j] = -2.0 * s[j] * (2.0 * f[j] + Af[j]);
        return h;
    };

    CVec gj(N, 0.0);
    double d_prev = 0.0;
    int growth = 0;
    StitchedInverse st;
    for (int it = 1; it <= opt.max_iter; ++it) {
        CVec f(N);
        for (int j = 0; j < N; ++j) f[j] = e[j] + gj[j];
        st = invert_B_stitched(p, g, out.omega, out.q, sigma_star(f));
        double d = 0.0;
        for (int j = 0; j < N; ++j) d = std::max(d, std::abs(st.f[j] - gj[j]));
        gj = st.f;
        out.iterations = it;
        if (d_prev > 0) out.contraction = d / d_prev;
        growth = (d_prev > 0 && d > d_prev) ? growth + 1 : 0;
        if (growth >= 3 || !std::isfinite(d))
            throw std::runtime_error("neumann_jost: Neumann divergence, Hypothesis 3 unverified");
        d_prev = d;
        if (d < opt.tol) break;
    }
    out.alpha = st.alpha;
    out.beta = st.beta;
    out.stitch_jump = st.jump;

    Vec im(N), re(N);
    for (int j = 0; j < N; ++j) {
        cplx ft = e[j] + gj[j] - (e[g.mirror(j)] + gj[g.mirror(j)]);
        im[j] = ft.imag();
        re[j] = ft.real();
    }
    for (int j = 0; j < N; ++j) {
        if (g.x[j] < g.L / 2) continue;
        out.im_tail_amplitude = std::max(out.im_tail_amplitude, std::abs(im[j]));
        out.re_tail_amplitude = std::max(out.re_tail_amplitude, std::abs(re[j]));
    }
    if (out.re_tail_amplitude > out.im_tail_amplitude)
        throw std::runtime_error("neumann_jost: imaginary branch vanishes, real branch not implemented");

    double Ar = 2.0 + out.alpha.real() - out.beta.real();
    double Bi = -(out.alpha.imag() + out.beta.imag());
    out.theta = std::atan(Bi / Ar) / out.omega;
    double scale = (Ar > 0 ? 1.0 : -1.0) / std::hypot(Ar, Bi);
    Vec gam(N);
    for (int j = 0; j < N; ++j) gam[j] = scale * im[j];
    gam = odd_part(g, gam);

    Vec gw(N);
    for (int j = 0; j < N; ++j) gw[j] = W[j] * gam[j];
    Vec Ls = raw::apply_L_star(g, p.c2(), s, gw);
    for (int j = 0; j < N; ++j) {
        if (std::abs(g.x[j]) <= 0.9 * g.L) out.lstar_residual = std::max(out.lstar_residual, std::abs(Ls[j]));
        if (g.x[j] >= g.L / 2)
            out.tail_misfit =
                std::max(out.tail_misfit, std::abs(gam[j] - std::sin(out.omega * (g.x[j] + out.theta))));
    }
    out.gamma = GridFunction(grid, std::move(gam), Parity::odd);
    out.window = GridFunction(grid, std::move(W), Parity::even);
    return out;
}

std::pair<cplx, cplx> residue_coefficients(const WaveParameters& p, const GridFunction& varsigma, double omega,
                                           const CVec& h) {
    const Grid& g = *varsigma.grid;
    cplx hp = 0.0, hm = 0.0;
    for (int j = 0; j < g.N; ++j) {
        cplx e = std::polar(1.0, -omega * g.x[j]);
        hp += varsigma.values[j] * h[j] * e;
        hm += varsigma.values[j] * h[j] * std::conj(e);
    }
    const cplx I(0.0, 1.0);
    double Bp = symbol_B_prime(p.c, omega);
    return {-I * hp * g.dx / Bp, -I * hm * g.dx / (-Bp)};
}

double functional_iota(const JostSolution& jost, const Vec& g) {
    const Grid& gr = *jost.gamma.grid;
    double s = 0.0;
    for (int j = 0; j < gr.N; ++j) s += g[j] * jost.gamma.values[j];
    return s * gr.dx;
}

double functional_iota(const JostSolution& jost, const GridFunction& g) {
    const Grid& gr = *g.grid;
    double tail = 0.0;
    for (int j = 0; j < gr.N; ++j)
        if (std::abs(gr.x[j]) > 0.9 * gr.L) tail = std::max(tail, std::abs(g.values[j]));
    if (tail > 1e-10) throw std::runtime_error("functional_iota: argument does not decay, quadrature not convergent");
    return functional_iota(jost, g.values);
}

GridFunction chi_c(const WaveParameters& p, const GridFunction& varsigma, double omega) {
    (void)p;
    const Grid& g = *varsigma.grid;
    Vec u(g.N);
    for (int j = 0; j < g.N; ++j) u[j] = varsigma.values[j] * std::sin(omega * g.x[j]);
    Vec Au = raw::shift_sum(g, u);
    for (int j = 0; j < g.N; ++j) Au[j] += 2.0 * u[j];
    return GridFunction(varsigma.grid, odd_part(g, Au), Parity::odd);
}

}  // namespace fput
