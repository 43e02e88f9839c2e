#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>

namespace fput {

struct WaveParameters {
    double c = 0.0;
    double mu = 0.0;
    std::optional<double> epsilon;
    double q = 0.1;

    // Rejects |c| <= 1, |mu| >= 1, q outside (0,1).
    static WaveParameters from_speed(double c, double mu = 0.0, double q = 0.1);
    // c = (1 + eps^2/24)^{1/2}
    static WaveParameters from_epsilon(double eps, double mu = 0.0, double q = 0.1);

    double c2() const { return c * c; }
    // c^2 - 1 without cancellation when eps is known
    double c2_minus_1() const;
    WaveParameters with_mu(double m) const;
};

struct CriticalFrequency {
    double omega = 0.0;
    double residual = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    double derivative = 0.0;           // |d/dk of the relevant symbol| at the root
    bool small_mu_regime = true;   // only meaningful for the mu-dependent root
};

double eval_symbol_B(const WaveParameters& p, double k);
std::complex<double> eval_symbol_B(double c, std::complex<double> z);
double symbol_B_prime(double c, double k);

struct BrentResult {
    double root;
    int iterations;
};
BrentResult brent_root(const std::function<double(double)>& f, double a, double b, double tol, int max_iter = 200);

CriticalFrequency critical_frequency(const WaveParameters& p);

// lambda_mu^-(K) <= lambda_mu^+(K)
std::pair<double, double> eigencurves(double mu, double K);

double mu_threshold(double c);

CriticalFrequency critical_frequency_mu(const WaveParameters& p);

double kernel_coefficient(const WaveParameters& p);
double kernel_coefficient(const WaveParameters& p, double omega_mu);

// Long-wave sound speed squared of the dimer, 2(1+mu)/(2+mu).
double sound_speed_squared(double mu);

}  // namespace fput
