#include "pskchan/noise.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pskchan {

namespace {

constexpr double kAExponentSwitch = 1e-6;   // window around a = 2
constexpr double kQuadratureRelTarget = 1e-8;

void check_power_law(const NoiseModel& model) {
    if (model.kind != NoiseKind::PowerLaw)
        throw std::invalid_argument("noise model is not a power-law process");
    if (!(model.exponent_a > 1.0))
        throw std::domain_error("power-law exponent a must be > 1, got " +
                                std::to_string(model.exponent_a));
    if (!(model.inv_corr_time > 0.0))
        throw std::domain_error("inverse correlation time must be > 0");
    if (!(model.gamma_rate > 0.0))
        throw std::domain_error("phase diffusion rate must be > 0");
}

}  // namespace

double sigma_static(double tau) {
    if (!(tau >= 0.0)) throw std::domain_error("tau must be >= 0");
    return tau;
}

double sigma_power_law(double t, const NoiseModel& model) {
    check_power_law(model);
    if (!(t >= 0.0)) throw std::domain_error("time must be >= 0");
    if (model.omega != 0.0)
        throw std::invalid_argument(
            "closed-form sigma holds only at omega = 0; use sigma_quadrature");

    const double a = model.exponent_a;
    const double gamma = model.inv_corr_time;
    const double rate = model.gamma_rate;
    const double x = gamma * t;

    if (std::abs(a - 2.0) < kAExponentSwitch)
        return rate / gamma * (x - std::log1p(x));

    // [(1+x)^{2-a} - 1 + x(a-2)] / (a-2), with the power via expm1/log1p to
    // keep the small-x cancellation at full precision.
    const double c = 2.0 - a;
    const double num = std::expm1(c * std::log1p(x)) - c * x;
    return rate / gamma * (num / (a - 2.0));
}

double sigma_quadrature(double t, const NoiseModel& model) {
    check_power_law(model);
    if (!(t >= 0.0)) throw std::domain_error("time must be >= 0");
    if (!(model.omega >= 0.0)) throw std::domain_error("omega must be >= 0");
    if (t == 0.0) return 0.0;

    const double a = model.exponent_a;
    const double gamma = model.inv_corr_time;
    const double rate = model.gamma_rate;
    const double omega = model.omega;

    // Stationarity of K collapses the double integral over [0,t]^2 to a
    // single integral over the lag u.
    const auto integrand = [=](double u) {
        const double kernel =
            0.5 * (a - 1.0) * gamma * rate * std::pow(1.0 + gamma * u, -a);
        return 2.0 * (t - u) * std::cos(omega * u) * kernel;
    };

    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, t, 20, kQuadratureRelTarget * 0.1, &error);

    const double scale = std::max(std::abs(value), 1e-300);
    if (error > 1e-6 * scale)
        throw quadrature_error("sigma quadrature failed to converge: estimated error " +
                                   std::to_string(error) + " on value " +
                                   std::to_string(value),
                               error);
    return value;
}

double sigma_at(const NoiseModel& model, double t) {
    if (model.kind == NoiseKind::Static) return sigma_static(model.tau);
    return model.omega == 0.0 ? sigma_power_law(t, model) : sigma_quadrature(t, model);
}

DephasingFactorTable dephasing_factors(double sigma, int dim) {
    if (!(sigma >= 0.0)) throw std::domain_error("sigma must be >= 0");
    if (dim < 1) throw std::domain_error("dim must be >= 1");
    DephasingFactorTable table;
    table.sigma = sigma;
    table.factors.resize(dim);
    for (int d = 0; d < dim; ++d)
        table.factors[d] = std::exp(-0.5 * double(d) * double(d) * sigma);
    return table;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, double sigma) {
    const DephasingFactorTable table = dephasing_factors(sigma, rho.dim);
    DensityMatrix out = rho;
    for (int n = 0; n < rho.dim; ++n)
        for (int m = 0; m < rho.dim; ++m)
            out.elements(n, m) *= table.factors[std::abs(n - m)];
    return out;
}

DensityMatrix dephase_monte_carlo(const DensityMatrix& rho, double sigma,
                                  std::int64_t samples, std::uint64_t rng_seed) {
    constexpr double kTwoPiSq = 4.0 * M_PI * M_PI;
    if (!(sigma >= 0.0)) throw std::domain_error("sigma must be >= 0");
    if (sigma >= kTwoPiSq)
        throw std::domain_error(
            "Gaussian phase mixture is valid only for sigma < (2 pi)^2; got " +
            std::to_string(sigma));
    if (samples < 1) throw std::domain_error("samples must be >= 1");

    if (sigma == 0.0) return rho;  // point mass at phi = 0

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> phase_dist(0.0, std::sqrt(sigma));

    // Sample mean of e^{i phi d} for each coherence distance d.
    std::vector<std::complex<double>> acc(rho.dim, 0.0);
    for (std::int64_t k = 0; k < samples; ++k) {
        const double phi = phase_dist(rng);
        const std::complex<double> z = std::polar(1.0, phi);
        std::complex<double> p = 1.0;
        for (int d = 0; d < rho.dim; ++d) {
            acc[d] += p;
            p *= z;
        }
    }
    for (auto& v : acc) v /= double(samples);

    DensityMatrix out = rho;
    for (int n = 0; n < rho.dim; ++n)
        for (int m = 0; m < rho.dim; ++m) {
            const int d = n - m;
            const auto f = d >= 0 ? acc[d] : std::conj(acc[-d]);
            out.elements(n, m) *= f;
        }
    return out;
}

}  // namespace pskchan
