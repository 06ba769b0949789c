#pragma once

#include <vector>

#include "pskchan/fock.hpp"
#include "pskchan/noise.hpp"
#include "pskchan/povm.hpp"

namespace pskchan {

/// One end-to-end channel instance: seed preparation, dephasing along the
/// line, and the phase measurement at the receiver.
struct ChannelConfig {
    SeedSpec seed;
    NoiseModel noise;
    double time = 0.0;  // interaction time; used by PowerLaw, ignored by Static
    PovmKind povm_kind = PovmKind::Canonical;
    int m_symbols = 2;
    int dim = 0;        // Fock truncation, 0 = auto
};

struct ChannelResult {
    std::vector<double> q;
    double mutual_information_bits = 0.0;
    double sigma_used = 0.0;
    double tail_mass = 0.0;
    int dim_used = 0;
    ChannelConfig config;
};

/// Throws std::domain_error with an actionable message on any out-of-range
/// parameter. Does not resolve dim.
void validate_config(const ChannelConfig& config);

/// I(M, nbar) = log2 M + sum_s q(s) log2 q(s), in bits, with 0 log 0 = 0.
ChannelResult mutual_information(const ChannelConfig& config);

/// Heterodyne capacity of the lossy amplitude channel, log2(1 + eta nbar).
double amplitude_capacity(double eta, double nbar);

/// I_Q / I_ID of the two receivers, all else equal.
double receiver_ratio(const ChannelConfig& config_base);

/// I with plain coherent seed over I with the gain-g amplified seed, at the
/// same pre-amplification energy and receiver.
double amplification_ratio(const ChannelConfig& config, double gain);

/// I(config) / C_amp(eta, nbar_eff), where the amplitude channel is granted
/// the mean photon number of the transmitted (possibly amplified) seed.
double phase_vs_amplitude_ratio(const ChannelConfig& config, double eta);

/// Entropy assembly shared by the MI routines; exposed for reuse.
double mi_bits_from_q(const std::vector<double>& q);

}  // namespace pskchan
