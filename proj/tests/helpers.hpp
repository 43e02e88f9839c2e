#pragma once

#include <cmath>
#include <random>

#include "fput/grid.hpp"

namespace testing_helpers {

using fput::Vec;

inline Vec gaussian_even(const fput::Grid& g, double width, double freq = 0.0) {
    Vec v(g.N);
    for (int j = 0; j < g.N; ++j) v[j] = std::exp(-std::pow(g.x[j] / width, 2)) * std::cos(freq * g.x[j]);
    return v;
}

inline Vec gaussian_odd(const fput::Grid& g, double width) {
    Vec v(g.N);
    for (int j = 0; j < g.N; ++j) v[j] = g.x[j] / width * std::exp(-std::pow(g.x[j] / width, 2));
    return v;
}

// Sum of three random Gaussian bumps; localized and smooth.
inline Vec random_bumps(const fput::Grid& g, std::mt19937_64& rng, double max_shift = 10.0) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec v(g.N, 0.0);
    for (int m = 0; m < 3; ++m) {
        double a = U(rng), w = 2.0 + 3.0 * (U(rng) + 1.0), s = max_shift * U(rng);
        for (int j = 0; j < g.N; ++j) v[j] += a * std::exp(-std::pow((g.x[j] - s) / w, 2));
    }
    return v;
}

inline double l2_dot(const fput::Grid& g, const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int j = 0; j < g.N; ++j) s += a[j] * b[j];
    return s * g.dx;
}

}  // namespace testing_helpers
