#include "fput/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fput/fft.hpp"

namespace fput {
namespace {

bool odd_site(int n) { return (n % 2 + 2) % 2 == 1; }

// index of integer coordinate n on the profile grid; the grid must contain all integers in [-L, L)
int grid_index(const Grid& g, int n) {
    double pos = (n + g.L) / g.dx;
    int idx = static_cast<int>(std::lround(pos));
    if (std::abs(pos - idx) > 1e-9 || idx < 0 || idx >= g.N)
        throw std::invalid_argument("lattice site not on the profile grid");
    return idx;
}

double force(double r) { return r + r * r; }

void accelerations(const LatticeState& s, Vec& acc) {
    const int M = s.size();
    Vec F(M);
    for (int j = 0; j < M; ++j) F[j] = force(s.r[j]);
    for (int j = 0; j < M; ++j) {
        int jp = (j + 1) % M, jm = (j + M - 1) % M;
        acc[j] = s.inv_mass[jp] * (F[jp] - F[j]) - s.inv_mass[j] * (F[j] - F[jm]);
    }
}

// wrapped distance between lattice coordinate n and position X on a ring of length M
double ring_distance(double n, double X, int M) {
    double d = std::fmod(n - X, static_cast<double>(M));
    if (d < -0.5 * M) d += M;
    if (d >= 0.5 * M) d -= M;
    return std::abs(d);
}

Vec site_velocities(const LatticeState& s) {
    // u'_{j+1} = u'_j + v_j with the mean of v removed, then zero total momentum
    const int M = s.size();
    long double vbar = 0.0L;
    for (double x : s.v) vbar += x;
    vbar /= M;
    std::vector<long double> acc(M, 0.0L);
    for (int j = 1; j < M; ++j) acc[j] = acc[j - 1] + (s.v[j - 1] - vbar);
    long double P = 0.0L, msum = 0.0L;
    for (int j = 0; j < M; ++j) {
        P += acc[j] / s.inv_mass[j];
        msum += 1.0L / s.inv_mass[j];
    }
    Vec ud(M);
    for (int j = 0; j < M; ++j) ud[j] = static_cast<double>(acc[j] - P / msum);
    return ud;
}

Vec local_energy(const LatticeState& s) {
    Vec ud = site_velocities(s);
    Vec e(s.size());
    for (int j = 0; j < s.size(); ++j) {
        double r = s.r[j];
        e[j] = 0.5 * ud[j] * ud[j] / s.inv_mass[j] + r * r / 2.0 + r * r * r / 3.0;
    }
    return e;
}

}  // namespace

LatticeState zero_state(int M, double mu) {
    if (M <= 0 || M % 2 != 0) throw std::invalid_argument("lattice size must be even and positive");
    LatticeState s;
    s.r.assign(M, 0.0);
    s.v.assign(M, 0.0);
    s.inv_mass.resize(M);
    for (int j = 0; j < M; ++j) s.inv_mass[j] = odd_site(s.coordinate(j)) ? 1.0 + mu : 1.0;
    return s;
}

Vec spectral_shift(const GridFunction& f, double shift) {
    const Grid& g = *f.grid;
    return apply_symbol(g, f.values, [&](double k) { return std::polar(1.0, -k * shift); });
}

Vec spectral_derivative(const GridFunction& f) {
    const Grid& g = *f.grid;
    return apply_symbol(g, f.values, [&](double k) {
        // drop the unpaired Nyquist mode so the derivative stays real
        return std::abs(std::abs(k) - std::numbers::pi / g.dx) < 1e-12 ? cplx(0.0) : cplx(0.0, k);
    });
}

LatticeState init_from_profiles(const GridFunction& p1, const GridFunction& p2, const WaveParameters& p, int M) {
    const Grid& g = *p1.grid;
    if (M == 0) M = 2 * static_cast<int>(std::floor(g.L));
    if (M > 2 * g.L) throw std::invalid_argument("init_from_profiles: M exceeds the profile domain 2L");
    LatticeState s = zero_state(M, p.mu);
    Vec d1 = spectral_derivative(p1), d2 = spectral_derivative(p2);
    for (int j = 0; j < M; ++j) {
        int n = s.coordinate(j);
        int idx = grid_index(g, n);
        bool odd = odd_site(n);
        s.r[j] = odd ? p2.values[idx] : p1.values[idx];
        s.v[j] = -p.c * (odd ? d2[idx] : d1[idx]);
    }
    return s;
}

void step_inplace(LatticeState& s, double dt) {
    const int M = s.size();
    Vec acc(M);
    accelerations(s, acc);
    for (int j = 0; j < M; ++j) {
        s.v[j] += 0.5 * dt * acc[j];
        s.r[j] += dt * s.v[j];
    }
    accelerations(s, acc);
    for (int j = 0; j < M; ++j) s.v[j] += 0.5 * dt * acc[j];
    s.t += dt;
}

LatticeState step(LatticeState s, double dt) {
    step_inplace(s, dt);
    return s;
}

double energy(const LatticeState& s) {
    Vec e = local_energy(s);
    long double H = 0.0L;
    for (double x : e) H += x;
    return static_cast<double>(H);
}

SimulationDiagnostics run_and_compare(LatticeState state, const GridFunction& p1, const GridFunction& p2,
                                      const WaveParameters& p, double T, double dt, const CompareOptions& opt) {
    if (!(dt > 0) || !(T >= 0)) throw std::invalid_argument("run_and_compare: need dt > 0 and T >= 0");
    const Grid& g = *p1.grid;
    const int M = state.size();
    const double half = 0.5 * M;
    if (std::abs(p.c) * T > opt.band * half)
        throw std::invalid_argument("run_and_compare: T |c| exceeds the chain band, core would wrap");

    SimulationDiagnostics out;
    out.T = T;
    out.dt = dt;
    out.energy0 = energy(state);
    const double t0 = state.t;

    auto shift_error = [&](const LatticeState& s) {
        double shift = p.c * (s.t - t0);
        Vec q1 = spectral_shift(p1, shift), q2 = spectral_shift(p2, shift);
        double err = 0.0;
        for (int j = 0; j < M; ++j) {
            int n = s.coordinate(j);
            if (ring_distance(n, shift, M) > opt.band * half) continue;
            int idx = grid_index(g, n);
            double ref = odd_site(n) ? q2[idx] : q1[idx];
            err = std::max(err, std::abs(s.r[j] - ref));
        }
        return err;
    };
    // ripple band: between half and all of the core band, measured from the moving core
    auto ripple = [&](const LatticeState& s) {
        double X = p.c * (s.t - t0), m = 0.0;
        for (int j = 0; j < M; ++j) {
            double d = ring_distance(s.coordinate(j), X, M);
            if (d >= 0.5 * opt.band * half && d <= opt.band * half) m = std::max(m, std::abs(s.r[j]));
        }
        return m;
    };
    auto outside_energy = [&](const LatticeState& s) {
        double X = p.c * (s.t - t0), E = 0.0;
        Vec e = local_energy(s);
        for (int j = 0; j < M; ++j)
            if (ring_distance(s.coordinate(j), X, M) > opt.band * half) E += e[j];
        return E;
    };

    out.ripple_before = ripple(state);
    double outside0 = outside_energy(state);
    out.series.push_back({state.t, shift_error(state), out.energy0});

    const int steps = static_cast<int>(std::lround(T / dt));
    const int every = std::max(1, static_cast<int>(std::lround(opt.sample_every / dt)));
    for (int n = 1; n <= steps; ++n) {
        step_inplace(state, dt);
        bool sample = n % every == 0 || n == steps;
        double H = energy(state);
        if (!std::isfinite(H)) {
            out.blow_up = true;
            break;
        }
        out.energy_drift = std::max(out.energy_drift, std::abs(H - out.energy0));
        if (sample) out.series.push_back({state.t, shift_error(state), H});
        out.steps = n;
    }
    out.shift_error = out.blow_up ? INFINITY : shift_error(state);
    out.ripple_after = ripple(state);
    out.radiated_energy = outside_energy(state) - outside0;
    out.final_state = std::move(state);
    return out;
}

}  // namespace fput
