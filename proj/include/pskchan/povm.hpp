#pragma once

#include <complex>
#include <vector>

#include "pskchan/fock.hpp"

namespace pskchan {

enum class PovmKind { Canonical, HusimiQ };

/// Covariant phase measurement pi(theta) = (1/2pi) sum A_{n,m}
/// e^{-i(n-m)theta} |n><m|, identified by its coefficient matrix.
/// Canonical: A = 1 everywhere. HusimiQ (heterodyne):
/// A_{n,m} = Gamma[1 + (n+m)/2] / sqrt(n! m!).
struct PhasePovm {
    PovmKind kind = PovmKind::Canonical;
    int dim = 0;
    Eigen::MatrixXd a_matrix;
};

/// M uniformly spaced symbol phases phi_l = 2 pi l / M with half-open
/// decoding bins of width 2 pi / M partitioning [0, 2pi).
struct AlphabetSpec {
    int m_symbols = 2;

    double symbol_phase(int l) const { return 2.0 * M_PI * l / m_symbols; }
    double bin_width() const { return 2.0 * M_PI / m_symbols; }
};

PhasePovm povm_matrix(PovmKind kind, int dim);

/// Bin Fourier coefficient f_d(l) = (1/2pi) int_{Sigma_l} e^{-id theta}
/// dtheta = e^{-2 pi i l d / M} sin(pi d / M) / (pi d), 1/M at d = 0.
std::complex<double> resolution_function(int d, int l, int m_symbols);

/// p(l|k) = tr[rho_k Pi_l] via covariance: depends on (l - k) mod M only.
/// rho is the dephased seed; the symbol phase shift is folded into the bin
/// offset. Clamped to [0, 1].
double conditional_probability(const DensityMatrix& rho, const PhasePovm& povm,
                               const AlphabetSpec& alphabet, int l, int k);

/// Probability q(s) of decoding a phase-bin offset s, independent of the
/// transmitted symbol. Requires a real-valued rho (zero seed phase).
std::vector<double> q_distribution(const DensityMatrix& rho, const PhasePovm& povm,
                                   const AlphabetSpec& alphabet);

}  // namespace pskchan
