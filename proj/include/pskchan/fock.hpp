#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pskchan/errors.hpp"

namespace pskchan {

/// Trace weight that may be lost to truncation before construction fails.
inline constexpr double kTailTolerance = 1e-6;
/// Tail target used when the truncation dimension is selected automatically.
inline constexpr double kAutoTailTarget = 1e-12;
inline constexpr int kMaxAutoDim = 4096;

/// Coherent input plus the nominal gain of the first-order noiseless
/// linear amplifier acting on it. gain == 1 is the plain coherent state.
struct SeedSpec {
    double nbar = 0.0;   // mean photon number of the input coherent state
    double gain = 1.0;   // nominal amplifier gain, >= 1
    double phase = 0.0;  // coherent phase in [0, 2pi)
};

/// Density matrix in the truncated Fock basis |0>..|dim-1>.
///
/// Construction renormalizes to unit trace over the truncated space and
/// records the cut trace weight in tail_mass. Invariants: Hermitian,
/// trace == 1 within 1e-12, diagonal >= -1e-14.
struct DensityMatrix {
    int dim = 0;
    Eigen::MatrixXcd elements;
    double tail_mass = 0.0;

    double trace_real() const { return elements.trace().real(); }
    double mean_photons() const;
    double max_hermiticity_defect() const;
};

/// Poissonian coherent-state matrix with mean photon number nbar.
DensityMatrix coherent_density(double nbar, int dim,
                               double tail_tolerance = kTailTolerance);

/// Normalization A = 1 + (g^2 - 1) nbar + (g - 1)^2 nbar^2 of the
/// first-order amplified coherent state. Always >= 1.
double nla_normalization(double gain, double nbar);

/// State produced by M(g) = 1 + (g - 1) a^dag a acting on |alpha><alpha|,
/// element (n,m) weighted by [1 + (g-1)n][1 + (g-1)m] / A.
DensityMatrix amplified_coherent_density(const SeedSpec& seed, int dim,
                                         double tail_tolerance = kTailTolerance);

/// Measured amplitude ratio g_eff = (1/alpha) tr[a rho]; below the nominal
/// gain at finite energy and -> g as nbar -> 0. Requires nbar > 0.
double effective_gain(const SeedSpec& seed, int dim);

/// Overlap <g alpha| rho |g alpha> with the ideally amplified coherent state.
double fidelity_to_ideal(const SeedSpec& seed, int dim);

/// Mean photon number of the amplified seed, from Poisson moments (exact,
/// no truncation).
double amplified_mean_photons(const SeedSpec& seed);

/// Smallest dimension whose pre-renormalization trace of the amplified
/// seed state reaches 1 - tail_target.
int auto_dim(const SeedSpec& seed, double tail_target = kAutoTailTarget);

/// Smallest dimension holding a plain coherent state of energy nbar to
/// tail_target; used to size overlap targets.
int coherent_auto_dim(double nbar, double tail_target = kAutoTailTarget);

}  // namespace pskchan
