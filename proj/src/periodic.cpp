#include "fput/periodic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fput/fft.hpp"

namespace fput {
namespace {

using Mat2 = std::array<std::array<cplx, 2>, 2>;

Mat2 D_symbol(double mu, double K) {
    const cplx I(0.0, 1.0);
    return {{{(2.0 + mu) * (1.0 - std::cos(K)), I * mu * std::sin(K)},
             {-I * mu * std::sin(K), (2.0 + mu) * (1.0 + std::cos(K))}}};
}

ModePair axpy(double a, const ModePair& x, const ModePair& y) {
    ModePair out = y;
    for (size_t j = 0; j < y.first.size(); ++j) {
        out.first[j] += a * x.first[j];
        out.second[j] += a * x.second[j];
    }
    return out;
}

ModePair Qpair(const ModePair& f, const ModePair& g) {
    size_t n = f.first.size();
    ModePair out{Vec(n), Vec(n)};
    for (size_t j = 0; j < n; ++j) {
        out.first[j] = f.first[j] * g.first[j] + f.second[j] * g.second[j];
        out.second[j] = f.first[j] * g.second[j] + g.first[j] * f.second[j];
    }
    return out;
}

double sup_pair(const ModePair& f) { return std::max(sup_norm(f.first), sup_norm(f.second)); }

}  // namespace

PeriodicFamily::PeriodicFamily(const WaveParameters& p, int kmax, int np) : p_(p), K_(kmax), Np_(np) {
    if (np < 2 * kmax + 2) throw std::invalid_argument("periodic grid too coarse for kmax");
    y_.resize(Np_);
    kk_.resize(Np_);
    for (int j = 0; j < Np_; ++j) {
        y_[j] = 2.0 * std::numbers::pi * j / Np_;
        kk_[j] = j <= Np_ / 2 ? j : j - Np_;
    }
    omega0_ = critical_frequency_mu(p_).omega;
    upsilon_ = kernel_coefficient(p_, omega0_);
}

ModePair PeriodicFamily::nu() const {
    ModePair v{Vec(Np_), Vec(Np_)};
    for (int j = 0; j < Np_; ++j) {
        v.first[j] = upsilon_ * std::cos(y_[j]);
        v.second[j] = std::sin(y_[j]);
    }
    return v;
}

double PeriodicFamily::inner(const ModePair& f, const ModePair& g) const {
    double s = 0.0;
    for (int j = 0; j < Np_; ++j) s += f.first[j] * g.first[j] + f.second[j] * g.second[j];
    return s / Np_;
}

ModePair PeriodicFamily::apply_D(double w, const ModePair& f) const {
    CVec F1 = fft(f.first), F2 = fft(f.second);
    for (int j = 0; j < Np_; ++j) {
        if (std::abs(kk_[j]) > K_) {
            F1[j] = F2[j] = 0.0;
            continue;
        }
        Mat2 D = D_symbol(p_.mu, w * kk_[j]);
        cplx a = D[0][0] * F1[j] + D[0][1] * F2[j];
        cplx b = D[1][0] * F1[j] + D[1][1] * F2[j];
        F1[j] = a;
        F2[j] = b;
    }
    return {ifft_real(F1), ifft_real(F2)};
}

ModePair PeriodicFamily::d2(const ModePair& f) const {
    CVec F1 = fft(f.first), F2 = fft(f.second);
    for (int j = 0; j < Np_; ++j) {
        double m = std::abs(kk_[j]) > K_ ? 0.0 : -kk_[j] * kk_[j];
        F1[j] *= m;
        F2[j] *= m;
    }
    return {ifft_real(F1), ifft_real(F2)};
}

ModePair PeriodicFamily::apply_Gamma(double w, const ModePair& f) const {
    return axpy(p_.c2() * w * w, d2(f), apply_D(w, f));
}

ModePair PeriodicFamily::apply_Phi(double w, const ModePair& rho) const {
    ModePair s = axpy(1.0, Qpair(rho, rho), rho);
    return axpy(p_.c2() * w * w, d2(rho), apply_D(w, s));
}

ModePair PeriodicFamily::gamma_solve(const ModePair& g) const {
    CVec F1 = fft(g.first), F2 = fft(g.second);
    CVec O1(Np_, 0.0), O2(Np_, 0.0);
    const double w = omega0_;
    const cplx I(0.0, 1.0);
    for (int j = 0; j < Np_; ++j) {
        double k = kk_[j];
        if (std::abs(k) > K_) continue;
        Mat2 M = D_symbol(p_.mu, w * k);
        double diag = p_.c2() * w * w * k * k;
        M[0][0] -= diag;
        M[1][1] -= diag;
        if (k == 0) {
            // first component has no k=0 mode in the range
            O2[j] = F2[j] / M[1][1];
        } else if (std::abs(k) == 1) {
            // restrict to the eigenvector orthogonal to the kernel
            double sg = k > 0 ? 1.0 : -1.0;
            double nrm = std::sqrt(1.0 + upsilon_ * upsilon_);
            cplx e1 = 1.0 / nrm, e2 = I * upsilon_ * sg / nrm;
            cplx Me1 = M[0][0] * e1 + M[0][1] * e2;
            cplx Me2 = M[1][0] * e1 + M[1][1] * e2;
            double lam = (std::conj(e1) * Me1 + std::conj(e2) * Me2).real();
            cplx proj = std::conj(e1) * F1[j] + std::conj(e2) * F2[j];
            O1[j] = proj / lam * e1;
            O2[j] = proj / lam * e2;
        } else {
            cplx det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
            if (std::abs(det) < 1e-12)
                throw std::runtime_error("gamma_solve: near-singular block, mu outside the Neumann regime");
            O1[j] = (M[1][1] * F1[j] - M[0][1] * F2[j]) / det;
            O2[j] = (-M[1][0] * F1[j] + M[0][0] * F2[j]) / det;
        }
    }
    return {ifft_real(O1), ifft_real(O2)};
}

PeriodicWave PeriodicFamily::solve(double a, double tol, int max_iter) const {
    const ModePair v = nu();
    const double nn = inner(v, v);
    ModePair psi{Vec(Np_, 0.0), Vec(Np_, 0.0)};
    double xi = 0.0;

    auto forcing = [&](double x, const ModePair& phi) {
        double w = omega0_ + x;
        ModePair dG = axpy(-1.0, apply_Gamma(omega0_, phi), apply_Gamma(w, phi));
        ModePair nl = apply_D(w, Qpair(phi, phi));
        ModePair out{Vec(Np_), Vec(Np_)};
        for (int j = 0; j < Np_; ++j) {
            out.first[j] = -dG.first[j] - a * nl.first[j];
            out.second[j] = -dG.second[j] - a * nl.second[j];
        }
        return out;
    };

    PeriodicWave out;
    out.a = a;
    out.omega0 = omega0_;
    out.upsilon = upsilon_;
    out.c = p_.c;
    out.mu = p_.mu;

    for (int it = 1; it <= max_iter; ++it) {
        ModePair phi = axpy(1.0, psi, v);
        // scalar equation <N(xi), nu> = 0 by secant
        auto f = [&](double x) { return inner(forcing(x, phi), v); };
        double x0 = xi, f0 = f(x0), x1 = xi + 1e-7;
        for (int s = 0; s < 40; ++s) {
            double f1 = f(x1);
            if (f1 == f0) break;
            double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            x0 = x1;
            f0 = f1;
            x1 = x2;
            if (std::abs(x1 - x0) < 1e-17) break;
        }
        double xin = x1;
        ModePair N = forcing(xin, phi);
        double cN = inner(N, v) / nn;
        for (int j = 0; j < Np_; ++j) {
            N.first[j] -= cN * v.first[j];
            N.second[j] -= cN * v.second[j];
        }
        ModePair psin = gamma_solve(N);
        double d = std::max(sup_pair(axpy(-1.0, psi, psin)), std::abs(xin - xi));
        psi = std::move(psin);
        xi = xin;
        out.iterations = it;
        if (!std::isfinite(d)) break;
        if (d < tol || (d < 1e-13 && it > 20)) {
            out.converged = true;
            break;
        }
    }

    out.omega = omega0_ + xi;
    ModePair rho = axpy(1.0, psi, v);
    for (int j = 0; j < Np_; ++j) {
        rho.first[j] *= a;
        rho.second[j] *= a;
    }
    out.residual = sup_pair(apply_Phi(out.omega, rho));

    CVec F1 = fft(psi.first), F2 = fft(psi.second);
    out.psi1.assign(K_ + 1, 0.0);
    out.psi2.assign(K_ + 1, 0.0);
    out.psi1[0] = F1[0].real() / Np_;
    for (int k = 1; k <= K_; ++k) {
        out.psi1[k] = 2.0 * F1[k].real() / Np_;
        out.psi2[k] = -2.0 * F2[k].imag() / Np_;
    }
    return out;
}

ModePair gamma_solve(const WaveParameters& p, const ModePair& g) {
    int np = static_cast<int>(g.first.size());
    PeriodicFamily fam(p, std::min(64, np / 2 - 1), np);
    return fam.gamma_solve(g);
}

double bifurcation_denominator(const WaveParameters& p) {
    double w = critical_frequency_mu(p).omega;
    double u = kernel_coefficient(p, w);
    double val = -p.c2() * w * (1.0 + u * u) + 0.5 * (2.0 + p.mu) * (u * u - 1.0) * std::sin(w) + p.mu * u * std::cos(w);
    if (std::abs(val) < 1e-8) throw std::runtime_error("bifurcation_denominator: degenerate");
    return val;
}

PeriodicWave solve_periodic(const WaveParameters& p, double a) {
    PeriodicFamily fam(p);
    bifurcation_denominator(p);
    PeriodicWave w = fam.solve(a);
    if (!w.converged) throw std::runtime_error("solve_periodic: non-contraction, a or mu too large");
    return w;
}

ProfilePair evaluate_periodic(const PeriodicWave& wave, const GridPtr& grid) {
    const Grid& g = *grid;
    Vec r1(g.N), r2(g.N);
    const int K = static_cast<int>(wave.psi1.size()) - 1;
    for (int j = 0; j < g.N; ++j) {
        double th = wave.omega * g.x[j];
        double s1 = wave.upsilon * std::cos(th) + wave.psi1[0];
        double s2 = std::sin(th);
        for (int k = 1; k <= K; ++k) {
            s1 += wave.psi1[k] * std::cos(k * th);
            s2 += wave.psi2[k] * std::sin(k * th);
        }
        r1[j] = wave.a * s1;
        r2[j] = wave.a * s2;
    }
    return {GridFunction(grid, std::move(r1), Parity::even), GridFunction(grid, std::move(r2), Parity::odd)};
}

}  // namespace fput
