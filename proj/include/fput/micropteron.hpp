#pragma once

#include <array>
#include <string>
#include <vector>

#include "fput/grid.hpp"
#include "fput/jost.hpp"
#include "fput/periodic.hpp"
#include "fput/solitary.hpp"

namespace fput {

struct BealeTerms {
    std::array<GridFunction, 5> h;  // even components
    std::array<GridFunction, 5> l;  // odd components
    GridFunction ltilde3;           // l3 + a * chibar
    GridFunction h_sum() const;
    GridFunction l_sum() const;     // with l3 replaced by ltilde3
};

struct MicropteronSolution {
    GridFunction eta1;  // even, decaying
    GridFunction eta2;  // odd, decaying
    double a = 0.0;
    double mu = 0.0;
    double c = 0.0;
    int iterations = 0;
    double residual = 0.0;  // interior sup of G_c at the assembled profile
    double last_increment = 0.0;
    double tail_eta1 = 0.0;
    double tail_eta2 = 0.0;
    double max_parity_defect = 0.0;
    double bordering_multiplier = 0.0;
    std::vector<double> increments;
    PeriodicWave ripple;  // phi_c^mu[a] at the final a
    bool converged = false;
    std::string status;   // "converged", "subsonic", "non-contraction"

    double norm_ratio() const;  // (|eta1| + |eta2| + |a|) / |mu|
};

struct BealeOptions {
    double tol = 1e-12;
    int max_outer = 60;
    int max_newton = 30;
    double periodic_refresh = 1e-9;
};

// chibar = 2 chi_c enters ltilde3 and the a-equation; see README.
BealeTerms assemble_terms(const WaveParameters& p, const GridFunction& eta1, const GridFunction& eta2, double a,
                          const SolitaryWave& sol, const ProfilePair& phi_unit, const JostSolution& jost);

struct ProjectedSolve {
    GridFunction eta;
    double lambda = 0.0;                // iota[rhs] / iota[chi_c]
    double bordering_multiplier = 0.0;  // iota[P rhs - L eta] / iota[chi_c]
    int iterations = 0;
};

ProjectedSolve solve_Lc_projected(const WaveParameters& p, const JostSolution& jost, const SolitaryWave& sol,
                                  const GridFunction& rhs);

MicropteronSolution beale_iterate(const WaveParameters& p, const SolitaryWave& sol, const JostSolution& jost,
                                  const BealeOptions& opt = {});

// Halves mu until beale_iterate converges; the achieved mu is in the result.
MicropteronSolution beale_iterate_adaptive(const WaveParameters& p, const SolitaryWave& sol,
                                           const JostSolution& jost, int max_halvings = 6,
                                           const BealeOptions& opt = {});

struct AssembledProfiles {
    ProfilePair rho;
    GridFunction p1;  // rho1 + rho2
    GridFunction p2;  // rho1 - rho2
};

AssembledProfiles assemble_profiles(const MicropteronSolution& sol, const SolitaryWave& solitary,
                                    const PeriodicWave& periodic);

// Subsonic check against the dimer sound speed.
bool is_supersonic(const WaveParameters& p);

}  // namespace fput
