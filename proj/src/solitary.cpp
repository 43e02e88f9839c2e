#include "fput/solitary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fput/fft.hpp"
#include "fput/spectral_ops.hpp"

namespace fput {

GridFunction kdv_seed(double eps, const GridPtr& grid) {
    Vec v(grid->N);
    for (int j = 0; j < grid->N; ++j) {
        double s = 1.0 / std::cosh(0.5 * eps * grid->x[j]);
        v[j] = 0.25 * eps * eps * s * s;
    }
    return GridFunction(grid, std::move(v), Parity::even);
}

GridFunction kdv_profile(double eps, const GridPtr& grid) {
    Vec v(grid->N);
    double w = eps / (2.0 * std::sqrt(2.0));
    for (int j = 0; j < grid->N; ++j) {
        double s = 1.0 / std::cosh(w * grid->x[j]);
        v[j] = eps * eps / 16.0 * s * s;
    }
    return GridFunction(grid, std::move(v), Parity::even);
}

double fitted_decay_rate(const GridFunction& f) {
    const Grid& g = *f.grid;
    double peak = sup_norm(f);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int j = 0; j < g.N; ++j) {
        double a = std::abs(f.values[j]);
        if (g.x[j] <= 0 || a <= 1e-13 || a >= 1e-3 * peak) continue;
        double y = std::log(a);
        sx += g.x[j];
        sy += y;
        sxx += g.x[j] * g.x[j];
        sxy += g.x[j] * y;
        ++n;
    }
    if (n < 2) return 0.0;
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

SolitaryWave solve_monatomic(const WaveParameters& p, const GridPtr& grid, const SolitaryOptions& opt) {
    const Grid& g = *grid;
    const int N = g.N;
    double c2m1 = p.c2_minus_1();
    double eps = p.epsilon ? *p.epsilon : std::sqrt(24.0 * c2m1);

    Vec R(N);
    for (int j = 0; j < N; ++j)
        R[j] = j == 0 ? 1.0 / c2m1 : two_minus_2cos(g.k[j]) / sonic_gap_symbol(c2m1, g.k[j]);

    SolitaryWave out;
    out.c = p.c;
    out.hypothesis_mode = std::abs(p.c) > std::sqrt(2.0);

    Vec u = kdv_profile(eps, grid).values;
    Vec sq(N);
    double M = 1.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        for (int j = 0; j < N; ++j) sq[j] = u[j] * u[j];
        CVec U = fft(u), S = fft(sq);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < N; ++j) {
            if (R[j] <= 1e-14) continue;
            num += std::norm(U[j]) / R[j];
            den += (S[j] * std::conj(U[j])).real();
        }
        M = num / den;
        for (int j = 0; j < N; ++j) S[j] *= M * M * R[j];
        Vec un = ifft_real(S);
        double d = sup_diff(un, u);
        u = std::move(un);
        out.iterations = it;
        if (!std::isfinite(d)) throw std::runtime_error("solve_monatomic: Petviashvili diverged");
        if (d < opt.tol) {
            out.converged = true;
            break;
        }
    }
    // Roundoff floor: samples below 1e-14 of the peak carry no information.
    u = even_part(g, u);
    double peak = sup_norm(u);
    for (double& v : u)
        if (std::abs(v) < 1e-14 * peak) v = 0.0;

    out.stabilizer = M;
    out.profile = GridFunction(grid, std::move(u), Parity::even);
    auto [r1, r2] = raw::residual_G(g, p.c, 0.0, out.profile.values, Vec(N, 0.0));
    out.residual = std::max(sup_norm(r1), sup_norm(r2));
    out.tail_rate = fitted_decay_rate(out.profile);
    return out;
}

}  // namespace fput
