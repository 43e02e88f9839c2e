#pragma once

#include <utility>

#include "fput/dispersion.hpp"
#include "fput/grid.hpp"

namespace fput {

// Symbols evaluated without cancellation near k = 0.
double y_minus_sin_y(double y);
double two_minus_2cos(double k);  // 4 sin^2(k/2)
// c^2 k^2 - (2 - 2cos k) given c^2 - 1
double sonic_gap_symbol(double c2m1, double k);

// Vector-level operators on a grid; the GridFunction API below wraps these.
namespace raw {
Vec shift_sum(const Grid& g, const Vec& f);   // A
Vec shift_diff(const Grid& g, const Vec& f);  // delta
Vec d2(const Grid& g, const Vec& f);
std::pair<Vec, Vec> Dmu(const Grid& g, double mu, const Vec& f1, const Vec& f2);
// mu-derivative of D_mu: (1/2)[[2-A, delta], [-delta, 2+A]]
std::pair<Vec, Vec> Dring(const Grid& g, const Vec& f1, const Vec& f2);
std::pair<Vec, Vec> Q(const Vec& a1, const Vec& a2, const Vec& b1, const Vec& b2);
std::pair<Vec, Vec> residual_G(const Grid& g, double c, double mu, const Vec& r1, const Vec& r2);

Vec apply_H(const Grid& g, double c2, const Vec& rho, const Vec& f);
Vec apply_L(const Grid& g, double c2, const Vec& s, const Vec& f);
Vec apply_L_star(const Grid& g, double c2, const Vec& s, const Vec& f);
}  // namespace raw

GridFunction apply_shift_sum(const GridFunction& f);
GridFunction apply_shift_diff(const GridFunction& f);
ProfilePair apply_Dmu(double mu, const ProfilePair& rho);
ProfilePair apply_Dring(const ProfilePair& rho);
ProfilePair bilinear_Q(const ProfilePair& a, const ProfilePair& b);
ProfilePair residual_G(const WaveParameters& p, const ProfilePair& rho);
double sup_norm(const ProfilePair& r);

struct HcReport {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

// Even solution of c^2 f'' + (2-A)((1+2 rho) f) = g that vanishes at the
// domain end. g must be even with zero mean.
Vec solve_H_general(const Grid& g, double c2m1, const Vec& rho, const Vec& rhs, HcReport* report = nullptr);

GridFunction apply_Hc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& f);
GridFunction solve_Hc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& g,
                      HcReport* report = nullptr);

GridFunction apply_Lc(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& f);
GridFunction apply_Lc_star(const WaveParameters& p, const GridFunction& varsigma, const GridFunction& g);

}  // namespace fput
