#include "pskchan/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pskchan {

namespace {

void check_seed(const SeedSpec& seed) {
    if (!(seed.nbar >= 0.0))
        throw std::domain_error("seed nbar must be >= 0, got " + std::to_string(seed.nbar));
    if (!(seed.gain >= 1.0))
        throw std::domain_error("seed gain must be >= 1, got " + std::to_string(seed.gain));
    if (!(seed.phase >= 0.0) || seed.phase >= 2.0 * M_PI)
        throw std::domain_error("seed phase must lie in [0, 2pi)");
}

// Poisson weight p_n = e^{-nbar} nbar^n / n! in log space; nbar > 0.
double log_poisson(double nbar, int n) {
    return -nbar + n * std::log(nbar) - std::lgamma(n + 1.0);
}

// Diagonal weight of the amplified state before renormalization by A.
double amplified_weight(const SeedSpec& seed, int n) {
    if (seed.nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    const double f = 1.0 + (seed.gain - 1.0) * n;
    return std::exp(log_poisson(seed.nbar, n)) * f * f;
}

}  // namespace

double DensityMatrix::mean_photons() const {
    double e = 0.0;
    for (int n = 0; n < dim; ++n) e += n * elements(n, n).real();
    return e;
}

double DensityMatrix::max_hermiticity_defect() const {
    return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
}

double nla_normalization(double gain, double nbar) {
    if (!(gain >= 1.0)) throw std::domain_error("gain must be >= 1");
    if (!(nbar >= 0.0)) throw std::domain_error("nbar must be >= 0");
    return 1.0 + (gain * gain - 1.0) * nbar + (gain - 1.0) * (gain - 1.0) * nbar * nbar;
}

DensityMatrix amplified_coherent_density(const SeedSpec& seed, int dim,
                                         double tail_tolerance) {
    check_seed(seed);
    if (dim < 1) throw std::domain_error("dim must be >= 1");

    DensityMatrix rho;
    rho.dim = dim;
    rho.elements = Eigen::MatrixXcd::Zero(dim, dim);

    if (seed.nbar == 0.0) {
        // Vacuum is a fixed point of the amplifier.
        rho.elements(0, 0) = 1.0;
        rho.tail_mass = 0.0;
        return rho;
    }

    const double a_norm = nla_normalization(seed.gain, seed.nbar);
    const double log_nbar = std::log(seed.nbar);

    std::vector<double> half_log(dim);   // 0.5 * (n log nbar - log n!)
    std::vector<double> weight(dim);     // 1 + (g-1) n
    for (int n = 0; n < dim; ++n) {
        half_log[n] = 0.5 * (n * log_nbar - std::lgamma(n + 1.0));
        weight[n] = 1.0 + (seed.gain - 1.0) * n;
    }

    for (int n = 0; n < dim; ++n) {
        for (int m = n; m < dim; ++m) {
            const double mag = std::exp(-seed.nbar + half_log[n] + half_log[m]) *
                               weight[n] * weight[m] / a_norm;
            const std::complex<double> val =
                mag * std::exp(std::complex<double>(0.0, seed.phase * (n - m)));
            rho.elements(n, m) = val;
            rho.elements(m, n) = std::conj(val);
        }
    }

    const double trace = rho.trace_real();
    if (trace < 1.0 - tail_tolerance)
        throw truncation_error("Fock truncation at dim " + std::to_string(dim) +
                               " keeps trace " + std::to_string(trace) +
                               "; increase dim (nbar=" + std::to_string(seed.nbar) +
                               ", gain=" + std::to_string(seed.gain) + ")");
    rho.tail_mass = std::max(0.0, 1.0 - trace);
    rho.elements /= trace;
    return rho;
}

DensityMatrix coherent_density(double nbar, int dim, double tail_tolerance) {
    return amplified_coherent_density(SeedSpec{nbar, 1.0, 0.0}, dim, tail_tolerance);
}

double effective_gain(const SeedSpec& seed, int dim) {
    check_seed(seed);
    if (seed.nbar == 0.0)
        throw std::domain_error("effective gain is undefined for nbar = 0");
    const DensityMatrix rho = amplified_coherent_density(seed, dim);
    std::complex<double> amp = 0.0;  // tr[a rho] = sum_n sqrt(n+1) rho_{n+1,n}
    for (int n = 0; n + 1 < dim; ++n)
        amp += std::sqrt(n + 1.0) * rho.elements(n + 1, n);
    // The amplified amplitude carries the seed phase, so g_eff is real.
    const std::complex<double> alpha =
        std::polar(std::sqrt(seed.nbar), seed.phase);
    return (amp / alpha).real();
}

double fidelity_to_ideal(const SeedSpec& seed, int dim) {
    check_seed(seed);
    const double target_nbar = seed.gain * seed.gain * seed.nbar;

    // Amplitude vector of |g alpha>; the target carries the seed phase.
    std::vector<std::complex<double>> target(dim);
    double norm2 = 0.0;
    for (int n = 0; n < dim; ++n) {
        const double mag = target_nbar == 0.0
                               ? (n == 0 ? 1.0 : 0.0)
                               : std::exp(0.5 * log_poisson(target_nbar, n));
        target[n] = std::polar(mag, seed.phase * n);
        norm2 += mag * mag;
    }
    if (norm2 < 1.0 - kTailTolerance)
        throw truncation_error("ideal target state of energy " +
                               std::to_string(target_nbar) +
                               " does not fit in dim " + std::to_string(dim));

    const DensityMatrix rho = amplified_coherent_density(seed, dim);
    std::complex<double> overlap = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m)
            overlap += std::conj(target[n]) * rho.elements(n, m) * target[m];
    return overlap.real();
}

double amplified_mean_photons(const SeedSpec& seed) {
    check_seed(seed);
    const double n1 = seed.nbar;
    const double n2 = n1 + n1 * n1;                      // E[n^2], Poisson
    const double n3 = n1 + 3.0 * n1 * n1 + n1 * n1 * n1; // E[n^3], Poisson
    const double c = seed.gain - 1.0;
    return (n1 + 2.0 * c * n2 + c * c * n3) / nla_normalization(seed.gain, seed.nbar);
}

int auto_dim(const SeedSpec& seed, double tail_target) {
    check_seed(seed);
    const double a_norm = nla_normalization(seed.gain, seed.nbar);
    double kept = 0.0;
    for (int n = 0; n < kMaxAutoDim; ++n) {
        kept += amplified_weight(seed, n) / a_norm;
        if (kept >= 1.0 - tail_target) return std::max(n + 1, 8);
    }
    throw truncation_error("no dimension below " + std::to_string(kMaxAutoDim) +
                           " reaches tail target for nbar=" + std::to_string(seed.nbar));
}

int coherent_auto_dim(double nbar, double tail_target) {
    return auto_dim(SeedSpec{nbar, 1.0, 0.0}, tail_target);
}

}  // namespace pskchan
