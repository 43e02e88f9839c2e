#pragma once

#include "fput/dispersion.hpp"
#include "fput/grid.hpp"

namespace fput {

struct SolitaryWave {
    GridFunction profile;
    double c = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double stabilizer = 0.0;  // Petviashvili factor at the last step
    double tail_rate = 0.0;   // fitted decay rate of log|varsigma|
    bool converged = false;
    bool hypothesis_mode = false;  // |c| > sqrt 2
};

// eps^2/4 sech^2(eps x / 2)
GridFunction kdv_seed(double eps, const GridPtr& grid);

// Long-wave limit for F(r) = r + r^2 and c^2 = 1 + eps^2/24:
// eps^2/16 sech^2(eps x / (2 sqrt 2)). Used as the iteration seed.
GridFunction kdv_profile(double eps, const GridPtr& grid);

struct SolitaryOptions {
    double tol = 1e-13;
    int max_iter = 2000;
};

SolitaryWave solve_monatomic(const WaveParameters& p, const GridPtr& grid, const SolitaryOptions& opt = {});

// Least-squares slope of log|f| on the tail window where it lies above 1e-13.
double fitted_decay_rate(const GridFunction& f);

}  // namespace fput
