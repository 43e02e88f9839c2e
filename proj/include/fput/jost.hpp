#pragma once

#include <complex>
#include <utility>

#include "fput/dispersion.hpp"
#include "fput/grid.hpp"
#include "fput/solitary.hpp"

namespace fput {

struct JostSolution {
    GridFunction gamma;   // odd, asymptotically sin(omega (x + theta))
    GridFunction window;  // C-infinity cutoff used before spectral multipliers
    double c = 0.0;
    double theta = 0.0;
    double omega = 0.0;
    cplx alpha;
    cplx beta;
    double q = 0.0;
    double tail_misfit = 0.0;
    double lstar_residual = 0.0;  // interior sup of L_c^* gamma
    double stitch_jump = 0.0;     // mismatch of the two one-sided inverses near x = 0
    double contraction = 0.0;     // ratio of the last two Neumann increments
    double im_tail_amplitude = 0.0;
    double re_tail_amplitude = 0.0;
    int iterations = 0;

    double sin_omega_theta() const;
};

// f = e^{qx} F^{-1}[ F[e^{-qx} g] / B(k - iq) ]; q < 0 selects decay at +inf, q > 0 at -inf.
CVec invert_B_weighted(const WaveParameters& p, const Grid& g, double q, const CVec& rhs);
GridFunction invert_B_weighted(const WaveParameters& p, double q, const GridFunction& rhs);

// Bounded solution of B f = r that decays as x -> +inf: the q<0 inverse on x >= 0,
// the q>0 inverse plus the residue sinusoids on x < 0.
struct StitchedInverse {
    CVec f;
    cplx alpha;
    cplx beta;
    double jump = 0.0;
};
StitchedInverse invert_B_stitched(const WaveParameters& p, const Grid& g, double omega, double q, const CVec& rhs);
Vec invert_B_stitched_real(const WaveParameters& p, const Grid& g, double omega, double q, const Vec& rhs);

// Smooth cutoff: 1 on |x| <= 0.9L + 1, 0 from |x| >= L - 2.
Vec smooth_window(const Grid& g);

struct JostOptions {
    double q = 0.0;  // 0: min(0.5 * fitted decay rate, 0.25, 24 / L)
    double tol = 1e-15;
    int max_iter = 200;
};

JostSolution neumann_jost(const WaveParameters& p, const SolitaryWave& sol, const JostOptions& opt = {});

// alpha[h] = -i Int varsigma h e^{-i w x} dx / B'(w), beta at -w.
std::pair<cplx, cplx> residue_coefficients(const WaveParameters& p, const GridFunction& varsigma, double omega,
                                           const CVec& h);

double functional_iota(const JostSolution& jost, const GridFunction& g);
double functional_iota(const JostSolution& jost, const Vec& g);

GridFunction chi_c(const WaveParameters& p, const GridFunction& varsigma, double omega);

}  // namespace fput
