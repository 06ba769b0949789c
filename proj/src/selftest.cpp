#include "pskchan/selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "pskchan/channel.hpp"

namespace pskchan {

namespace {

std::string scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

SelftestCheck check_sigma_oracle() {
    double max_rel = 0.0;
    for (double a : {1.5, 2.0, 2.5, 3.0})
        for (double gamma : {0.2, 1.0, 5.0})
            for (double t : {0.1, 1.0, 5.0}) {
                const NoiseModel model = NoiseModel::power_law(1.0, gamma, a);
                const double closed = sigma_power_law(t, model);
                const double quad = sigma_quadrature(t, model);
                max_rel = std::max(max_rel, std::abs(closed - quad) / quad);
            }
    return {"sigma closed form vs quadrature", max_rel <= 1e-6,
            "max rel err " + scientific(max_rel) + " (tol 1e-6)"};
}

SelftestCheck check_markovian_limit() {
    const NoiseModel model = NoiseModel::power_law(1.0, 1000.0, 3.0);
    const double sigma = sigma_power_law(1.0, model);
    const double rel = std::abs(sigma - 1.0);
    return {"markovian limit gamma=1e3", rel <= 2e-3,
            "|sigma - Gamma t|/Gamma t = " + scientific(rel) + " (tol 2e-3)"};
}

SelftestCheck check_monte_carlo(std::uint64_t rng_seed, std::int64_t samples) {
    const double sigma = 0.5;
    const int dim = 16;
    const DensityMatrix rho = amplified_coherent_density(SeedSpec{1.0, 2.0, 0.0}, dim);
    const DensityMatrix exact = apply_dephasing(rho, sigma);
    const DensityMatrix sampled = dephase_monte_carlo(rho, sigma, samples, rng_seed);

    double max_dev = 0.0, worst_pull = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const int d = n - m;
            const double dev = std::abs(sampled.elements(n, m) - exact.elements(n, m));
            max_dev = std::max(max_dev, dev);
            if (d == 0) continue;
            // Gaussian moments give the exact sampling variance of the
            // phase factor: Var[cos] + Var[sin] = 1 - e^{-d^2 sigma}.
            const double var = 1.0 - std::exp(-double(d) * double(d) * sigma);
            const double se = std::abs(rho.elements(n, m)) * std::sqrt(var / double(samples));
            if (se > 0.0) worst_pull = std::max(worst_pull, dev / se);
        }
    const bool pass = max_dev <= 5e-3 && worst_pull <= 4.0;
    return {"monte carlo vs analytic dephasing", pass,
            "max dev " + scientific(max_dev) + " (tol 5e-3), worst dev/se " +
                scientific(worst_pull) + " (tol 4)"};
}

SelftestCheck check_povm_completeness() {
    const int dim = 30;
    double max_defect = 0.0;
    for (PovmKind kind : {PovmKind::Canonical, PovmKind::HusimiQ}) {
        const PhasePovm povm = povm_matrix(kind, dim);
        for (int m_sym : {2, 10, 20}) {
            Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
            for (int l = 0; l < m_sym; ++l)
                for (int n = 0; n < dim; ++n)
                    for (int m = 0; m < dim; ++m)
                        total(n, m) +=
                            povm.a_matrix(n, m) * resolution_function(n - m, l, m_sym);
            const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
            max_defect = std::max(max_defect, (total - identity).cwiseAbs().maxCoeff());
        }
    }
    return {"povm completeness", max_defect <= 1e-10,
            "max |sum_l Pi_l - 1| = " + scientific(max_defect) + " (tol 1e-10)"};
}

SelftestCheck check_covariance() {
    const SeedSpec seed{1.0, 2.0, 0.0};
    const int dim = auto_dim(seed);
    const DensityMatrix rho =
        apply_dephasing(amplified_coherent_density(seed, dim), 0.5);
    const AlphabetSpec alphabet{10};
    double max_dev = 0.0;
    for (PovmKind kind : {PovmKind::Canonical, PovmKind::HusimiQ}) {
        const PhasePovm povm = povm_matrix(kind, dim);
        for (int l = 0; l < alphabet.m_symbols; ++l)
            for (int k = 0; k < alphabet.m_symbols; ++k) {
                const int s = ((l - k) % alphabet.m_symbols + alphabet.m_symbols) %
                              alphabet.m_symbols;
                const double direct = conditional_probability(rho, povm, alphabet, l, k);
                const double shifted = conditional_probability(rho, povm, alphabet, s, 0);
                max_dev = std::max(max_dev, std::abs(direct - shifted));
            }
    }
    return {"measurement covariance", max_dev <= 1e-12,
            "max |p(l|k) - p(l-k|0)| = " + scientific(max_dev) + " (tol 1e-12)"};
}

SelftestCheck check_effective_gain() {
    // Brute-force series (e^{-1}/A) sum (n+1)(n+2)/n! against the module.
    const double a_norm = nla_normalization(2.0, 1.0);
    double series = 0.0;
    double inv_fact = 1.0;
    for (int n = 0; n < 40; ++n) {
        series += (n + 1.0) * (n + 2.0) * inv_fact;
        inv_fact /= (n + 1.0);
    }
    const double oracle = std::exp(-1.0) / a_norm * series;
    const double computed = effective_gain(SeedSpec{1.0, 2.0, 0.0}, 40);
    const double dev = std::max(std::abs(computed - 1.4), std::abs(oracle - 1.4));
    return {"effective gain series", dev <= 1e-9,
            "|g_eff - 1.4| = " + scientific(dev) + " (tol 1e-9)"};
}

}  // namespace

bool SelftestReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const SelftestCheck* SelftestReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

SelftestReport run_selftest(std::uint64_t rng_seed, std::int64_t mc_samples) {
    SelftestReport report;
    report.checks.push_back(check_sigma_oracle());
    report.checks.push_back(check_markovian_limit());
    report.checks.push_back(check_monte_carlo(rng_seed, mc_samples));
    report.checks.push_back(check_povm_completeness());
    report.checks.push_back(check_covariance());
    report.checks.push_back(check_effective_gain());
    return report;
}

}  // namespace pskchan
