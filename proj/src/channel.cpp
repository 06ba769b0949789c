#include "pskchan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pskchan {

namespace {

constexpr double kEntropyFloor = 1e-15;  // q below this is excluded from the sum

}

void validate_config(const ChannelConfig& config) {
    if (!(config.seed.nbar >= 0.0))
        throw std::domain_error("nbar must be >= 0, got " + std::to_string(config.seed.nbar));
    if (!(config.seed.gain >= 1.0))
        throw std::domain_error("gain must be >= 1, got " + std::to_string(config.seed.gain));
    if (!(config.seed.phase >= 0.0) || config.seed.phase >= 2.0 * M_PI)
        throw std::domain_error("phase must lie in [0, 2pi)");
    if (config.m_symbols < 2)
        throw std::domain_error("m_symbols must be >= 2, got " + std::to_string(config.m_symbols));
    if (config.dim < 0)
        throw std::domain_error("dim must be positive or 0 for auto");
    if (!(config.time >= 0.0))
        throw std::domain_error("time must be >= 0, got " + std::to_string(config.time));
    if (config.noise.kind == NoiseKind::Static) {
        if (!(config.noise.tau >= 0.0))
            throw std::domain_error("tau must be >= 0, got " + std::to_string(config.noise.tau));
    } else {
        if (!(config.noise.exponent_a > 1.0))
            throw std::domain_error("power-law exponent a must be > 1, got " +
                                    std::to_string(config.noise.exponent_a));
        if (!(config.noise.inv_corr_time > 0.0))
            throw std::domain_error("correlation time must be > 0");
        if (!(config.noise.gamma_rate > 0.0))
            throw std::domain_error("gamma rate must be > 0");
        if (!(config.noise.omega >= 0.0))
            throw std::domain_error("omega must be >= 0");
    }
}

double mi_bits_from_q(const std::vector<double>& q) {
    double entropy_sum = 0.0;
    for (double v : q)
        if (v >= kEntropyFloor) entropy_sum += v * std::log2(v);
    const double bits = std::log2(double(q.size())) + entropy_sum;
    return std::max(bits, 0.0);
}

ChannelResult mutual_information(const ChannelConfig& config) {
    validate_config(config);

    ChannelResult result;
    result.config = config;
    result.dim_used = config.dim > 0 ? config.dim : auto_dim(config.seed);

    const DensityMatrix seed_state =
        amplified_coherent_density(config.seed, result.dim_used);
    result.tail_mass = seed_state.tail_mass;

    result.sigma_used = sigma_at(config.noise, config.time);
    const DensityMatrix received = apply_dephasing(seed_state, result.sigma_used);

    const PhasePovm povm = povm_matrix(config.povm_kind, result.dim_used);
    result.q = q_distribution(received, povm, AlphabetSpec{config.m_symbols});
    result.mutual_information_bits = mi_bits_from_q(result.q);
    return result;
}

double amplitude_capacity(double eta, double nbar) {
    if (!(eta >= 0.0) || eta > 1.0)
        throw std::domain_error("eta must lie in [0, 1], got " + std::to_string(eta));
    if (!(nbar >= 0.0)) throw std::domain_error("nbar must be >= 0");
    return std::log2(1.0 + eta * nbar);
}

double receiver_ratio(const ChannelConfig& config_base) {
    ChannelConfig cfg = config_base;
    cfg.povm_kind = PovmKind::HusimiQ;
    const double i_q = mutual_information(cfg).mutual_information_bits;
    cfg.povm_kind = PovmKind::Canonical;
    const double i_id = mutual_information(cfg).mutual_information_bits;
    if (i_id == 0.0)
        throw std::domain_error("receiver ratio undefined: canonical MI is 0");
    return i_q / i_id;
}

double amplification_ratio(const ChannelConfig& config, double gain) {
    if (!(gain >= 1.0)) throw std::domain_error("gain must be >= 1");
    ChannelConfig cfg = config;
    cfg.seed.gain = 1.0;
    const double i_coherent = mutual_information(cfg).mutual_information_bits;
    cfg.seed.gain = gain;
    const double i_amplified = mutual_information(cfg).mutual_information_bits;
    if (i_amplified == 0.0)
        throw std::domain_error("amplification ratio undefined: amplified MI is 0");
    return i_coherent / i_amplified;
}

double phase_vs_amplitude_ratio(const ChannelConfig& config, double eta) {
    if (!(eta > 0.0) || eta > 1.0)
        throw std::domain_error("eta must lie in (0, 1], got " + std::to_string(eta));
    if (!(config.seed.nbar > 0.0))
        throw std::domain_error("phase/amplitude comparison undefined for nbar = 0");
    const double i_phase = mutual_information(config).mutual_information_bits;
    // Equal-energy comparison: the amplitude channel gets the energy of the
    // transmitted seed, amplification included.
    const double nbar_eff = amplified_mean_photons(config.seed);
    return i_phase / amplitude_capacity(eta, nbar_eff);
}

}  // namespace pskchan
