// Test-only reference implementations, kept independent of the library's
// computation paths: plain-factorial state construction, numerically
// integrated POVM bins, and the full conditional-probability-table mutual
// information.
#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "pskchan/channel.hpp"

namespace oracles {

// Coherent / amplified matrix elements by direct factorial products.
inline Eigen::MatrixXcd naive_amplified(double nbar, double gain, int dim) {
    std::vector<double> factorial(dim);
    factorial[0] = 1.0;
    for (int n = 1; n < dim; ++n) factorial[n] = factorial[n - 1] * n;

    Eigen::MatrixXcd rho(dim, dim);
    double trace = 0.0;
    const double a_norm =
        1.0 + (gain * gain - 1.0) * nbar + (gain - 1.0) * (gain - 1.0) * nbar * nbar;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const double val = std::exp(-nbar) * std::pow(nbar, 0.5 * (n + m)) /
                               std::sqrt(factorial[n] * factorial[m]) *
                               (1.0 + (gain - 1.0) * n) * (1.0 + (gain - 1.0) * m) /
                               a_norm;
            rho(n, m) = val;
            if (n == m) trace += val;
        }
    return rho / trace;
}

// Composite Gauss-Legendre integral of f over [a, b] split into panels,
// enough for the oscillation of e^{-i d theta} across a decoding bin.
template <typename F>
double composite_gauss(F f, double a, double b, int panels = 8) {
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        total += boost::math::quadrature::gauss<double, 32>::integrate(
            f, a + p * h, a + (p + 1) * h);
    return total;
}

// (1/2pi) int_{Sigma_l} e^{-i d theta} dtheta with Sigma_l centered on the
// symbol phase 2 pi l / M.
inline std::complex<double> bin_fourier(int d, int l, int m_symbols) {
    const double center = 2.0 * M_PI * l / m_symbols;
    const double half = M_PI / m_symbols;
    const double re = composite_gauss(
        [d](double th) { return std::cos(d * th); }, center - half, center + half);
    const double im = composite_gauss(
        [d](double th) { return -std::sin(d * th); }, center - half, center + half);
    return std::complex<double>(re, im) / (2.0 * M_PI);
}

// p(l|k) by explicitly rotating the seed by the symbol phase and tracing
// against the numerically integrated bin operator. The encoding rotation
// U(phi) = e^{-i phi n} is the one satisfying the covariance property
// Pi_l = U(phi_l) Pi_0 U(phi_l)^dag for a POVM oriented as e^{-i(n-m)theta}.
inline double rotated_bin_probability(const pskchan::DensityMatrix& rho,
                                      const pskchan::PhasePovm& povm, int m_symbols,
                                      int l, int k) {
    const int dim = rho.dim;
    const double phi_k = 2.0 * M_PI * k / m_symbols;

    std::vector<std::complex<double>> fourier(2 * dim - 1);
    for (int d = -(dim - 1); d <= dim - 1; ++d)
        fourier[d + dim - 1] = bin_fourier(d, l, m_symbols);

    std::complex<double> p = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const std::complex<double> rotated =
                rho.elements(n, m) *
                std::exp(std::complex<double>(0.0, -phi_k * (n - m)));
            // tr[rho_k Pi_l] picks up the (m, n) element of Pi_l.
            p += rotated * povm.a_matrix(m, n) * fourier[m - n + dim - 1];
        }
    return p.real();
}

// Mutual information from the full p(l|k) table with uniform prior.
inline double table_mutual_information_bits(const std::vector<std::vector<double>>& p) {
    const int m_symbols = int(p.size());
    std::vector<double> marginal(m_symbols, 0.0);
    for (int l = 0; l < m_symbols; ++l)
        for (int k = 0; k < m_symbols; ++k) marginal[l] += p[l][k] / m_symbols;

    double bits = 0.0;
    for (int l = 0; l < m_symbols; ++l)
        for (int k = 0; k < m_symbols; ++k) {
            const double joint = p[l][k] / m_symbols;
            if (joint < 1e-15 || marginal[l] < 1e-15) continue;
            bits += joint * std::log2(p[l][k] / marginal[l]);
        }
    return bits;
}

}  // namespace oracles
