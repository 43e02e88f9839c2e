#include "fput/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fput {

WaveParameters WaveParameters::from_speed(double c, double mu, double q) {
    if (!(std::abs(c) > 1.0)) throw std::invalid_argument("requires |c| > 1");
    if (!(std::abs(mu) < 1.0)) throw std::invalid_argument("requires |mu| < 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("requires 0 < q < 1");
    WaveParameters p;
    p.c = c;
    p.mu = mu;
    p.q = q;
    return p;
}

WaveParameters WaveParameters::from_epsilon(double eps, double mu, double q) {
    if (!(eps > 0.0)) throw std::invalid_argument("requires epsilon > 0");
    WaveParameters p = from_speed(std::sqrt(1.0 + eps * eps / 24.0), mu, q);
    p.epsilon = eps;
    return p;
}

double WaveParameters::c2_minus_1() const {
    if (epsilon) return *epsilon * *epsilon / 24.0;
    return (c - 1.0) * (c + 1.0);
}

WaveParameters WaveParameters::with_mu(double m) const {
    WaveParameters p = *this;
    if (!(std::abs(m) < 1.0)) throw std::invalid_argument("requires |mu| < 1");
    p.mu = m;
    return p;
}

double eval_symbol_B(const WaveParameters& p, double k) { return -p.c2() * k * k + 2.0 + 2.0 * std::cos(k); }

std::complex<double> eval_symbol_B(double c, std::complex<double> z) { return -c * c * z * z + 2.0 + 2.0 * std::cos(z); }

double symbol_B_prime(double c, double k) { return -2.0 * c * c * k - 2.0 * std::sin(k); }

BrentResult brent_root(const std::function<double(double)>& f, double a, double b, double tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0) == (fb > 0)) throw std::runtime_error("brent: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return {b, it};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pp, qq;
            if (a == c) {
                pp = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                double r = fb / fc;
                qq = fa / fc;
                pp = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                qq = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pp > 0) qq = -qq;
            pp = std::abs(pp);
            if (2.0 * pp < std::min(3.0 * xm * qq - std::abs(tol1 * qq), std::abs(e * qq))) {
                e = d;
                d = pp / qq;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, max_iter};
}

CriticalFrequency critical_frequency(const WaveParameters& p) {
    double lo = std::sqrt(2.0) / std::abs(p.c) + 1e-9;
    double hi = std::numbers::pi / 2 - 1e-9;
    auto f = [&](double w) { return eval_symbol_B(p, w); };
    if ((f(lo) > 0) == (f(hi) > 0)) throw std::runtime_error("critical_frequency: bracket failure, invalid c");
    CriticalFrequency out;
    out.omega = brent_root(f, lo, hi, 1e-15).root;
    out.residual = std::abs(f(out.omega));
    out.bracket = {lo, hi};
    out.derivative = 2.0 * std::abs(p.c2() * out.omega + std::sin(out.omega));
    return out;
}

std::pair<double, double> eigencurves(double mu, double K) {
    double ck = std::cos(K);
    double r = std::sqrt(mu * mu + 4.0 * (1.0 + mu) * ck * ck);
    return {2.0 + mu - r, 2.0 + mu + r};
}

double mu_threshold(double c) {
    double a = 0.1, b = (c * c - 1.0) / 4.0, d = (2.0 * std::cos(1.0) - 1.0) / 8.0;
    return std::min({a, b, d});
}

CriticalFrequency critical_frequency_mu(const WaveParameters& p) {
    double lo = std::sqrt(2.0) / std::abs(p.c) + 1e-9;
    double hi = std::numbers::pi / 2 - 1e-9;
    auto f = [&](double w) { return p.c2() * w * w - eigencurves(p.mu, w).second; };
    if ((f(lo) > 0) == (f(hi) > 0))
        throw std::runtime_error("critical_frequency_mu: bracket failure, mu outside the validity regime");
    CriticalFrequency out;
    out.omega = brent_root(f, lo, hi, 1e-15).root;
    out.residual = std::abs(f(out.omega));
    out.bracket = {lo, hi};
    double h = 1e-6;
    out.derivative = std::abs(f(out.omega + h) - f(out.omega - h)) / (2 * h);
    out.small_mu_regime = std::abs(p.mu) <= mu_threshold(p.c);
    return out;
}

double kernel_coefficient(const WaveParameters& p, double w) {
    double den = eigencurves(p.mu, w).second - (2.0 + p.mu) * (1.0 - std::cos(w));
    if (std::abs(den) < 1e-8) throw std::runtime_error("kernel_coefficient: near-zero denominator");
    return p.mu * std::sin(w) / den;
}

double kernel_coefficient(const WaveParameters& p) { return kernel_coefficient(p, critical_frequency_mu(p).omega); }

double sound_speed_squared(double mu) { return 2.0 * (1.0 + mu) / (2.0 + mu); }

}  // namespace fput
