#pragma once

#include <array>
#include <vector>

#include "fput/dispersion.hpp"
#include "fput/grid.hpp"

namespace fput {

// Periodic diatomic chain in relative displacements r_j = u_{j+1} - u_j.
// Site j sits at lattice coordinate n = j - M/2; the light mass 1/(1+mu) is on odd n.
struct LatticeState {
    Vec r;
    Vec v;
    Vec inv_mass;
    double t = 0.0;

    int size() const { return static_cast<int>(r.size()); }
    int coordinate(int j) const { return j - size() / 2; }
};

LatticeState zero_state(int M, double mu);

// M = 0 picks 2L. r_j = p1(n) on even n, p2(n) on odd n; v_j = -c p'(n) from the
// spectral derivative of the same profile.
LatticeState init_from_profiles(const GridFunction& p1, const GridFunction& p2, const WaveParameters& p, int M = 0);

void step_inplace(LatticeState& s, double dt);
LatticeState step(LatticeState s, double dt);

double energy(const LatticeState& s);

// Profile value at x - shift for every grid point, by a spectral phase shift.
Vec spectral_shift(const GridFunction& f, double shift);
Vec spectral_derivative(const GridFunction& f);

struct SimulationSample {
    double t;
    double shift_error;
    double energy;
};

struct SimulationDiagnostics {
    double T = 0.0;
    double dt = 0.0;
    int steps = 0;
    double shift_error = 0.0;   // sup over the core band at time T
    double energy0 = 0.0;
    double energy_drift = 0.0;  // max |H(t) - H(0)|
    double ripple_before = 0.0;
    double ripple_after = 0.0;
    double radiated_energy = 0.0;
    bool blow_up = false;
    std::vector<SimulationSample> series;
    LatticeState final_state;
};

struct CompareOptions {
    double sample_every = 1.0;
    double band = 0.5;  // core band half-width as a fraction of M/2
};

// Integrates to T and compares r(T) with the profile translated by cT.
SimulationDiagnostics run_and_compare(LatticeState state, const GridFunction& p1, const GridFunction& p2,
                                      const WaveParameters& p, double T, double dt, const CompareOptions& opt = {});

}  // namespace fput
