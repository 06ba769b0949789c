#include "pskchan/povm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pskchan {

namespace {

constexpr double kCoherenceDrop = 1e-16;  // per-diagonal term cutoff in q(s)
constexpr double kNegativeQFloor = -1e-8;

void check_alphabet(const AlphabetSpec& alphabet) {
    if (alphabet.m_symbols < 2)
        throw std::domain_error("alphabet needs at least 2 symbols, got " +
                                std::to_string(alphabet.m_symbols));
}

void check_dims(const DensityMatrix& rho, const PhasePovm& povm) {
    if (rho.dim != povm.dim)
        throw std::invalid_argument("state dim " + std::to_string(rho.dim) +
                                    " does not match POVM dim " +
                                    std::to_string(povm.dim));
}

int mod_symbols(int x, int m) {
    const int r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

PhasePovm povm_matrix(PovmKind kind, int dim) {
    if (dim < 1) throw std::domain_error("dim must be >= 1");
    PhasePovm povm;
    povm.kind = kind;
    povm.dim = dim;
    povm.a_matrix.resize(dim, dim);
    if (kind == PovmKind::Canonical) {
        povm.a_matrix.setOnes();
        return povm;
    }
    for (int n = 0; n < dim; ++n)
        for (int m = n; m < dim; ++m) {
            const double log_a = std::lgamma(1.0 + 0.5 * (n + m)) -
                                 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0));
            povm.a_matrix(n, m) = std::exp(log_a);
            povm.a_matrix(m, n) = povm.a_matrix(n, m);
        }
    return povm;
}

std::complex<double> resolution_function(int d, int l, int m_symbols) {
    if (m_symbols < 2) throw std::domain_error("m_symbols must be >= 2");
    if (d == 0) return 1.0 / m_symbols;
    const double arg = -2.0 * M_PI * double(l) * double(d) / m_symbols;
    const double mag = std::sin(M_PI * d / m_symbols) / (M_PI * d);
    return std::polar(mag, arg);
}

double conditional_probability(const DensityMatrix& rho, const PhasePovm& povm,
                               const AlphabetSpec& alphabet, int l, int k) {
    check_alphabet(alphabet);
    check_dims(rho, povm);
    const int m_sym = alphabet.m_symbols;
    const int s = mod_symbols(l - k, m_sym);
    const int dim = rho.dim;

    std::vector<std::complex<double>> f(2 * dim - 1);
    for (int d = -(dim - 1); d <= dim - 1; ++d)
        f[d + dim - 1] = resolution_function(d, s, m_sym);

    std::complex<double> sum = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m)
            sum += povm.a_matrix(n, m) * f[n - m + dim - 1] * rho.elements(n, m);

    if (std::abs(sum.imag()) > 1e-12)
        throw probability_error("conditional probability has imaginary part " +
                                std::to_string(sum.imag()) +
                                "; state is not Hermitian");
    return std::clamp(sum.real(), 0.0, 1.0);
}

std::vector<double> q_distribution(const DensityMatrix& rho, const PhasePovm& povm,
                                   const AlphabetSpec& alphabet) {
    check_alphabet(alphabet);
    check_dims(rho, povm);
    const int dim = rho.dim;
    const int m_sym = alphabet.m_symbols;

    const double max_imag = rho.elements.imag().cwiseAbs().maxCoeff();
    if (max_imag > 1e-12)
        throw std::invalid_argument(
            "q(s) assumes a real density matrix (zero seed phase); max imag " +
            std::to_string(max_imag));

    // Coherence sums c_d = sum_n A_{n,n+d} rho_{n+d,n}; superexponentially
    // small diagonals are dropped.
    std::vector<double> coherence(dim, 0.0);
    std::vector<bool> keep(dim, false);
    for (int d = 1; d < dim; ++d) {
        double c = 0.0, peak = 0.0;
        for (int n = 0; n + d < dim; ++n) {
            const double term = povm.a_matrix(n, n + d) * rho.elements(n + d, n).real();
            c += term;
            peak = std::max(peak, std::abs(term));
        }
        if (peak < kCoherenceDrop) continue;
        coherence[d] = c;
        keep[d] = true;
    }

    std::vector<double> q(m_sym);
    for (int s = 0; s < m_sym; ++s) {
        double acc = 0.0;
        for (int d = 1; d < dim; ++d) {
            if (!keep[d]) continue;
            acc += coherence[d] * std::cos(2.0 * M_PI * d * s / m_sym) *
                   std::sin(M_PI * d / m_sym) / (M_PI * d);
        }
        const double val = 1.0 / m_sym + 2.0 * acc;
        if (val < kNegativeQFloor)
            throw probability_error("q(" + std::to_string(s) + ") = " +
                                    std::to_string(val) +
                                    " is negative beyond tolerance");
        q[s] = std::max(val, 0.0);
    }
    return q;
}

}  // namespace pskchan
