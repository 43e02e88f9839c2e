#include "fput/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fput {

const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        default: return "none";
    }
}

Grid::Grid(double half_length, int n_points) : L(half_length), N(n_points) {
    if (!(L > 0.0)) throw std::invalid_argument("grid half length must be positive");
    if (N < 4 || (N & (N - 1)) != 0) throw std::invalid_argument("grid size must be a power of two >= 4");
    dx = 2.0 * L / N;
    x.resize(N);
    k.resize(N);
    for (int j = 0; j < N; ++j) {
        x[j] = -L + dx * j;
        int m = j <= N / 2 ? j : j - N;
        k[j] = std::numbers::pi * m / L;
    }
    // Nyquist mode carries no sign; treat it as positive so symbols stay real-even.
    k[N / 2] = std::numbers::pi * (N / 2) / L;
}

GridPtr make_grid(double half_length, int n_points) {
    return std::make_shared<const Grid>(half_length, n_points);
}

GridPtr default_grid_for_epsilon(double eps) {
    double want = std::max(128.0, eps > 0 ? 100.0 / eps : 128.0);
    double L = std::exp2(std::ceil(std::log2(want)));
    return make_grid(L, static_cast<int>(16 * L));
}

GridFunction GridFunction::zeros(GridPtr g, Parity p) {
    Vec v(g->N, 0.0);
    return GridFunction(std::move(g), std::move(v), p, true);
}

double sup_norm(const Vec& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

double sup_norm(const GridFunction& f) { return sup_norm(f.values); }

double sup_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double parity_defect(const Grid& g, const Vec& v, Parity p) {
    if (p == Parity::none) return 0.0;
    double sgn = p == Parity::even ? -1.0 : 1.0;
    double m = 0.0;
    for (int j = 0; j < g.N; ++j) m = std::max(m, std::abs(v[j] + sgn * v[g.mirror(j)]));
    return m;
}

Vec even_part(const Grid& g, const Vec& v) {
    Vec out(g.N);
    for (int j = 0; j < g.N; ++j) out[j] = 0.5 * (v[j] + v[g.mirror(j)]);
    return out;
}

Vec odd_part(const Grid& g, const Vec& v) {
    Vec out(g.N);
    for (int j = 0; j < g.N; ++j) out[j] = 0.5 * (v[j] - v[g.mirror(j)]);
    return out;
}

}  // namespace fput
