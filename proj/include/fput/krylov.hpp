#pragma once

#include <functional>

#include "fput/grid.hpp"

namespace fput {

struct GmresResult {
    Vec x;
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

using LinearMap = std::function<Vec(const Vec&)>;

// Restarted GMRES(m) with modified Gram-Schmidt and Givens rotations.
// Stops when ||b - A x|| <= rtol ||b|| or after max_restarts cycles.
GmresResult gmres(const LinearMap& A, const Vec& b, double rtol, int restart, int max_restarts);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

}  // namespace fput
