#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace fput {

using cplx = std::complex<double>;
using Vec = std::vector<double>;
using CVec = std::vector<cplx>;

enum class Parity { none, even, odd };

const char* to_string(Parity p);

// Uniform periodic grid on [-L, L): x_j = -L + 2Lj/N, wavenumbers pi*m/L in FFT order.
struct Grid {
    double L = 0.0;
    int N = 0;
    double dx = 0.0;
    Vec x;
    Vec k;

    Grid(double half_length, int n_points);

    int mirror(int j) const { return (N - j) % N; }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double half_length, int n_points);

// Default resolution for a near-sonic parameter eps: power-of-two half length
// large enough for the solitary tail to fall below 1e-12, 8 points per unit.
GridPtr default_grid_for_epsilon(double eps);

struct GridFunction {
    GridPtr grid;
    Vec values;
    Parity parity = Parity::none;
    bool mean_zero = false;

    GridFunction() = default;
    GridFunction(GridPtr g, Vec v, Parity p = Parity::none, bool mz = false)
        : grid(std::move(g)), values(std::move(v)), parity(p), mean_zero(mz) {}

    static GridFunction zeros(GridPtr g, Parity p = Parity::none);

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int j) const { return values[j]; }
};

struct ProfilePair {
    GridFunction rho1;  // even
    GridFunction rho2;  // odd
};

double sup_norm(const Vec& v);
double sup_norm(const GridFunction& f);
double sup_diff(const Vec& a, const Vec& b);

// max_j |f(x_j) -/+ f(-x_j)| for the even / odd check
double parity_defect(const Grid& g, const Vec& v, Parity p);

Vec even_part(const Grid& g, const Vec& v);
Vec odd_part(const Grid& g, const Vec& v);

}  // namespace fput
