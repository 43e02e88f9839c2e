#pragma once

#include <utility>

#include "fput/dispersion.hpp"
#include "fput/grid.hpp"

namespace fput {

struct PeriodicWave {
    double a = 0.0;
    double omega = 0.0;   // omega_c^mu[a]
    double omega0 = 0.0;  // omega_c^mu
    double upsilon = 0.0;
    double c = 0.0;
    double mu = 0.0;
    Vec psi1;  // cosine coefficients, modes 0..K
    Vec psi2;  // sine coefficients, modes 0..K (index 0 unused)
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct KernelVector {
    double upsilon = 0.0;  // nu = (upsilon cos, sin)
};

// Pairs of samples on the 2pi-periodic grid y_j = 2 pi j / Np.
using ModePair = std::pair<Vec, Vec>;

class PeriodicFamily {
public:
    explicit PeriodicFamily(const WaveParameters& p, int kmax = 64, int np = 256);

    const WaveParameters& params() const { return p_; }
    double omega0() const { return omega0_; }
    double upsilon() const { return upsilon_; }
    int kmax() const { return K_; }
    int np() const { return Np_; }
    const Vec& y() const { return y_; }
    ModePair nu() const;

    // c^2 w^2 f'' + D_mu[w] f on the y-grid
    ModePair apply_Gamma(double w, const ModePair& f) const;
    ModePair apply_Phi(double w, const ModePair& rho) const;
    // Inverse of Gamma at omega0 on the complement of the kernel; output orthogonal to nu.
    ModePair gamma_solve(const ModePair& g) const;
    double inner(const ModePair& f, const ModePair& g) const;

    PeriodicWave solve(double a, double tol = 1e-15, int max_iter = 200) const;

private:
    ModePair apply_D(double w, const ModePair& f) const;
    ModePair d2(const ModePair& f) const;

    WaveParameters p_;
    int K_;
    int Np_;
    Vec y_;
    Vec kk_;
    double omega0_;
    double upsilon_;
};

ModePair gamma_solve(const WaveParameters& p, const ModePair& g);
double bifurcation_denominator(const WaveParameters& p);
PeriodicWave solve_periodic(const WaveParameters& p, double a);
ProfilePair evaluate_periodic(const PeriodicWave& wave, const GridPtr& grid);

}  // namespace fput
