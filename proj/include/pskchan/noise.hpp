#pragma once

#include <cstdint>
#include <vector>

#include "pskchan/fock.hpp"

namespace pskchan {

enum class NoiseKind { Static, PowerLaw };

/// Dephasing environment. Static noise is the Markovian case with a fixed
/// dephasing parameter tau; the power-law process is a Gaussian stochastic
/// field with kernel K(u) = (a-1)/2 * gamma*Gamma / (1 + gamma*u)^a, where
/// gamma = 1/t_E is the inverse correlation time of the environment.
struct NoiseModel {
    NoiseKind kind = NoiseKind::Static;
    double tau = 0.0;            // static dephasing parameter, sigma == tau
    double gamma_rate = 1.0;     // phase diffusion rate Gamma
    double inv_corr_time = 1.0;  // gamma = 1/t_E
    double exponent_a = 3.0;     // kernel exponent, > 1
    double omega = 0.0;          // environment central frequency

    static NoiseModel static_noise(double tau) {
        NoiseModel m;
        m.kind = NoiseKind::Static;
        m.tau = tau;
        return m;
    }
    static NoiseModel power_law(double gamma_rate, double inv_corr_time,
                                double exponent_a, double omega = 0.0) {
        NoiseModel m;
        m.kind = NoiseKind::PowerLaw;
        m.gamma_rate = gamma_rate;
        m.inv_corr_time = inv_corr_time;
        m.exponent_a = exponent_a;
        m.omega = omega;
        return m;
    }
    double corr_time() const { return 1.0 / inv_corr_time; }
};

/// Off-diagonal decay factors e^{-d^2 sigma / 2} for d = 0 .. dim-1.
struct DephasingFactorTable {
    double sigma = 0.0;
    std::vector<double> factors;
};

/// Static (Markovian) dephasing strength: sigma = tau.
double sigma_static(double tau);

/// Closed-form sigma(t) of the power-law process at zero central frequency.
/// Uses the analytic a -> 2 limit inside |a - 2| < 1e-6.
double sigma_power_law(double t, const NoiseModel& model);

/// sigma(t) by adaptive quadrature of the kernel double integral, reduced
/// to 2 * int_0^t (t-u) cos(omega u) K(u) du. Independent oracle for
/// sigma_power_law; the only route supporting omega != 0.
double sigma_quadrature(double t, const NoiseModel& model);

/// Dephasing strength of a model at interaction time t (Static ignores t).
double sigma_at(const NoiseModel& model, double t);

DephasingFactorTable dephasing_factors(double sigma, int dim);

/// Multiply element (n,m) by e^{-(n-m)^2 sigma / 2}. Diagonal preserved.
DensityMatrix apply_dephasing(const DensityMatrix& rho, double sigma);

/// Monte-Carlo average of phase-rotated copies with phi ~ Normal(0, sigma).
/// Converges to apply_dephasing at rate O(1/sqrt(samples)); oracle only.
DensityMatrix dephase_monte_carlo(const DensityMatrix& rho, double sigma,
                                  std::int64_t samples, std::uint64_t rng_seed);

}  // namespace pskchan
