// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pskchan/channel.hpp"
#include "pskchan/selftest.hpp"
#include "pskchan/sweep.hpp"

using namespace pskchan;

namespace {

struct Criterion {
    std::string name;
    std::function<void(bool&, std::string&)> run;
};

void expect(bool& ok, std::string& why, bool condition, const std::string& label) {
    if (!condition) {
        ok = false;
        if (why.empty()) why = label;
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

ChannelConfig make_static(double nbar, double gain, double tau, int m_symbols,
                          PovmKind kind) {
    ChannelConfig cfg;
    cfg.seed = SeedSpec{nbar, gain, 0.0};
    cfg.noise = NoiseModel::static_noise(tau);
    cfg.m_symbols = m_symbols;
    cfg.povm_kind = kind;
    return cfg;
}

double mi_bits(const ChannelConfig& cfg) {
    return mutual_information(cfg).mutual_information_bits;
}

// 1. NLA analytics: normalization, effective gain, vanishing-energy limit.
void criterion_nla(bool& ok, std::string& why) {
    expect(ok, why, nla_normalization(2.0, 1.0) == 5.0, "A(2,1) != 5");

    double series = 0.0, inv_fact = 1.0;
    for (int n = 0; n < 40; ++n) {
        series += (n + 1.0) * (n + 2.0) * inv_fact;
        inv_fact /= (n + 1.0);
    }
    const double oracle = std::exp(-1.0) / 5.0 * series;
    const double computed = effective_gain(SeedSpec{1.0, 2.0, 0.0}, 40);
    expect(ok, why, std::abs(oracle - computed) <= 1e-9,
           "series oracle disagrees with effective_gain: " + num(oracle) + " vs " +
               num(computed));
    expect(ok, why, std::abs(computed - 1.4) <= 1e-9,
           "g_eff(2,1) = " + num(computed) + " not 1.4 within 1e-9");

    for (double gain : {1.2, 1.6, 2.0}) {
        const double g_eff = effective_gain(SeedSpec{1e-6, gain, 0.0}, 12);
        expect(ok, why, std::abs(g_eff - gain) <= 1e-4,
               "g_eff at nbar=1e-6, g=" + num(gain) + " off by " +
                   num(std::abs(g_eff - gain)));
    }
}

// 2. sigma oracle: closed form vs quadrature grid, a=2 limit, gamma=1e3.
void criterion_sigma(bool& ok, std::string& why) {
    double max_rel = 0.0;
    for (double a : {1.5, 2.0, 2.5, 3.0})
        for (double gamma : {0.2, 1.0, 5.0})
            for (double t : {0.1, 1.0, 5.0}) {
                const NoiseModel model = NoiseModel::power_law(1.0, gamma, a);
                const double closed = sigma_power_law(t, model);
                const double quad = sigma_quadrature(t, model);
                max_rel = std::max(max_rel, std::abs(closed - quad) / quad);
            }
    expect(ok, why, max_rel <= 1e-6,
           "closed form vs quadrature max rel err " + num(max_rel));

    const double sigma_fast =
        sigma_power_law(1.0, NoiseModel::power_law(1.0, 1000.0, 3.0));
    expect(ok, why, std::abs(sigma_fast - 1.0) <= 0.002,
           "gamma=1e3 point off Gamma t by " + num(std::abs(sigma_fast - 1.0)));
}

// 3. POVM suite: completeness, covariance, q normalization on random configs.
void criterion_povm(bool& ok, std::string& why) {
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
            max_defect = std::max(
                max_defect,
                (total - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff());
        }
    }
    expect(ok, why, max_defect <= 1e-10, "completeness defect " + num(max_defect));

    const SeedSpec seed{1.0, 2.0, 0.0};
    const int sdim = auto_dim(seed);
    const DensityMatrix rho =
        apply_dephasing(amplified_coherent_density(seed, sdim), 0.5);
    const AlphabetSpec alphabet{10};
    double max_cov = 0.0;
    for (PovmKind kind : {PovmKind::Canonical, PovmKind::HusimiQ}) {
        const PhasePovm povm = povm_matrix(kind, sdim);
        for (int l = 0; l < 10; ++l)
            for (int k = 0; k < 10; ++k) {
                const int s = ((l - k) % 10 + 10) % 10;
                max_cov = std::max(
                    max_cov,
                    std::abs(conditional_probability(rho, povm, alphabet, l, k) -
                             conditional_probability(rho, povm, alphabet, s, 0)));
            }
    }
    expect(ok, why, max_cov <= 1e-12, "covariance defect " + num(max_cov));

    // 50 randomized configurations: q normalized and nonnegative.
    std::uint64_t state = 0x2545F4914F6CDD1DULL;
    auto next_uniform = [&state]() {  // xorshift, deterministic across platforms
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return double(state % 1000000ULL) / 1000000.0;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const double nbar = 3.0 * next_uniform();
        const double gain = 1.0 + next_uniform();
        const double sigma = 3.0 * next_uniform();
        const int m_sym = 2 + int(next_uniform() * 22);
        const PovmKind kind = trial % 2 ? PovmKind::Canonical : PovmKind::HusimiQ;
        const SeedSpec s{nbar, gain, 0.0};
        const int d = auto_dim(s);
        const auto q = q_distribution(apply_dephasing(amplified_coherent_density(s, d), sigma),
                                      povm_matrix(kind, d), AlphabetSpec{m_sym});
        double total = 0.0;
        for (double v : q) {
            expect(ok, why, v >= 0.0, "negative q in random suite");
            total += v;
        }
        expect(ok, why, std::abs(total - 1.0) <= 1e-10,
               "q normalization off by " + num(std::abs(total - 1.0)));
    }
}

// 4. Dephasing oracles: Monte-Carlo mixture vs analytic factors; additivity.
void criterion_dephasing(bool& ok, std::string& why) {
    const int dim = 16;
    const std::int64_t samples = 1000000;
    const double sigma = 0.5;
    const DensityMatrix rho = amplified_coherent_density(SeedSpec{1.0, 2.0, 0.0}, dim);
    const DensityMatrix exact = apply_dephasing(rho, sigma);
    const DensityMatrix sampled = dephase_monte_carlo(rho, sigma, samples, 20240901);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const int d = n - m;
            if (d == 0) continue;
            const double dev = std::abs(sampled.elements(n, m) - exact.elements(n, m));
            const double var = 1.0 - std::exp(-double(d) * double(d) * sigma);
            const double se =
                std::abs(rho.elements(n, m)) * std::sqrt(var / double(samples));
            expect(ok, why, dev <= 4.0 * se,
                   "MC element (" + std::to_string(n) + "," + std::to_string(m) +
                       ") off by " + num(dev) + " > 4se " + num(4.0 * se));
        }

    const DensityMatrix two_step = apply_dephasing(apply_dephasing(rho, 0.3), 0.9);
    const DensityMatrix one_step = apply_dephasing(rho, 1.2);
    const double defect = (two_step.elements - one_step.elements).cwiseAbs().maxCoeff();
    expect(ok, why, defect <= 1e-12, "composition defect " + num(defect));
}

// 5. Static-noise figure content: gain ordering, receiver ratio, NLA benefit.
void criterion_fig1(bool& ok, std::string& why) {
    for (double tau : {0.2, 0.5, 1.0})
        for (PovmKind kind : {PovmKind::Canonical, PovmKind::HusimiQ}) {
            double previous = -1.0;
            for (double gain : {1.0, 1.2, 1.6, 2.0}) {
                const double bits = mi_bits(make_static(1.0, gain, tau, 20, kind));
                expect(ok, why, bits > previous,
                       "gain ordering broken at tau=" + num(tau) + ", g=" + num(gain));
                previous = bits;
            }
        }

    double prev_ratio = 0.0;
    for (double nbar : {0.5, 1.0, 2.0}) {
        const double ratio =
            receiver_ratio(make_static(nbar, 1.0, 1.0, 20, PovmKind::Canonical));
        expect(ok, why, ratio > 0.0 && ratio <= 1.0,
               "receiver ratio " + num(ratio) + " outside (0,1]");
        expect(ok, why, ratio > prev_ratio, "receiver ratio not increasing in nbar");
        prev_ratio = ratio;
    }
    for (double tau : {0.2, 0.5, 1.0})
        for (double nbar : {0.5, 1.0, 2.0}) {
            const double ratio = receiver_ratio(make_static(nbar, 1.0, tau, 20, PovmKind::Canonical));
            expect(ok, why, ratio > 0.0 && ratio <= 1.0,
                   "receiver ratio outside (0,1] at tau=" + num(tau));
        }

    double prev_amp = 0.0;
    for (double nbar : {0.5, 1.0, 2.0}) {
        const double ratio =
            amplification_ratio(make_static(nbar, 2.0, 0.5, 20, PovmKind::HusimiQ), 2.0);
        expect(ok, why, ratio < 1.0, "NLA does not help at nbar=" + num(nbar));
        expect(ok, why, ratio >= prev_amp, "amplification ratio not increasing in nbar");
        prev_amp = ratio;
    }
    for (double tau : {0.2, 0.5, 1.0}) {
        const double ratio =
            amplification_ratio(make_static(1.0, 2.0, tau, 20, PovmKind::HusimiQ), 2.0);
        expect(ok, why, ratio < 1.0, "I_c/I_AC >= 1 at tau=" + num(tau));
    }
}

// 6. Amplitude comparison: weak-energy agreement; threshold region shrinks
//    with energy on a (tau, eta) grid.
void criterion_fig2(bool& ok, std::string& why) {
    const double i_q = mi_bits(make_static(0.05, 1.0, 0.0, 20, PovmKind::HusimiQ));
    const double c_amp = amplitude_capacity(1.0, 0.05);
    expect(ok, why, std::abs(i_q - c_amp) <= 0.02,
           "weak-energy gap |I_Q - C_amp| = " + num(std::abs(i_q - c_amp)));

    const std::vector<double> taus = make_grid(0.0, 2.0, 20, false);
    const std::vector<double> etas = make_grid(0.05, 1.0, 20, false);
    int weak_wins = 0, strong_wins = 0;
    bool weak_contains_strong = true;
    for (double tau : taus)
        for (double eta : etas) {
            const bool weak =
                phase_vs_amplitude_ratio(make_static(0.2, 2.0, tau, 20, PovmKind::HusimiQ),
                                         eta) > 1.0;
            const bool strong =
                phase_vs_amplitude_ratio(make_static(2.0, 2.0, tau, 20, PovmKind::HusimiQ),
                                         eta) > 1.0;
            weak_wins += weak;
            strong_wins += strong;
            if (strong && !weak) weak_contains_strong = false;
        }
    expect(ok, why, weak_wins > 0, "phase channel never beats amplitude at nbar=0.2");
    expect(ok, why, weak_contains_strong,
           "nbar=2 winning region not contained in nbar=0.2 region");
    expect(ok, why, weak_wins > strong_wins,
           "winning region does not shrink with energy (" + std::to_string(weak_wins) +
               " vs " + std::to_string(strong_wins) + " cells)");
}

// 7. Dynamical noise: memory-effect ordering and receiver-ratio trend.
void criterion_fig3(bool& ok, std::string& why) {
    ChannelConfig cfg = make_static(2.0, 1.0, 0.0, 20, PovmKind::Canonical);
    for (double t : {0.5, 1.0, 2.0}) {
        cfg.time = t;
        cfg.noise = NoiseModel::power_law(1.0, 1.0 / 5.0, 3.0);
        const double slow_env = mi_bits(cfg);
        cfg.noise = NoiseModel::power_law(1.0, 1.0, 3.0);
        const double mid_env = mi_bits(cfg);
        cfg.noise = NoiseModel::static_noise(t);
        const double static_env = mi_bits(cfg);
        const bool strict = t == 1.0;
        expect(ok, why, strict ? slow_env > mid_env : slow_env >= mid_env,
               "I(t_E=5) !>= I(t_E=1) at t=" + num(t));
        expect(ok, why, strict ? mid_env > static_env : mid_env >= static_env,
               "I(t_E=1) !>= I_static at t=" + num(t));
    }

    cfg.time = 1.0;
    double previous = HUGE_VAL;
    for (double t_corr : {0.5, 1.0, 5.0}) {
        cfg.noise = NoiseModel::power_law(1.0, 1.0 / t_corr, 3.0);
        const double ratio = receiver_ratio(cfg);
        expect(ok, why, ratio < previous,
               "R_Q/ID not decreasing in t_corr at t_corr=" + num(t_corr));
        previous = ratio;
    }
}

// 8. MI bounds and limits.
void criterion_bounds(bool& ok, std::string& why) {
    for (double nbar : {0.0, 0.5, 2.0})
        for (double gain : {1.0, 2.0})
            for (double tau : {0.0, 1.0})
                for (int m_sym : {2, 8, 20})
                    for (PovmKind kind : {PovmKind::Canonical, PovmKind::HusimiQ}) {
                        const double bits =
                            mi_bits(make_static(nbar, gain, tau, m_sym, kind));
                        expect(ok, why,
                               bits >= 0.0 && bits <= std::log2(double(m_sym)) + 1e-10,
                               "MI " + num(bits) + " outside [0, log2 M]");
                    }

    expect(ok, why, mi_bits(make_static(0.0, 1.0, 0.3, 8, PovmKind::Canonical)) == 0.0,
           "vacuum MI nonzero");
    expect(ok, why, mi_bits(make_static(2.0, 1.0, 1e3, 8, PovmKind::Canonical)) <= 1e-9,
           "fully dephased MI above 1e-9");
    const double saturated = mi_bits(make_static(10.0, 1.0, 0.0, 4, PovmKind::Canonical));
    expect(ok, why, saturated >= 1.9, "I(nbar=10, M=4) = " + num(saturated) + " < 1.9");
}

// 9. Determinism: rerun and thread count cannot change a byte.
void criterion_determinism(bool& ok, std::string& why) {
    const std::string serial = run_preset("fig1", 1).to_string();
    const std::string parallel = run_preset("fig1", 4).to_string();
    const std::string rerun = run_preset("fig1", 4).to_string();
    expect(ok, why, serial == parallel, "serial vs parallel CSV differ");
    expect(ok, why, parallel == rerun, "rerun CSV differs");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. NLA analytics (A, g_eff, vanishing-energy limit)", criterion_nla},
        {"2. sigma oracle (closed form vs quadrature, Markovian limit)", criterion_sigma},
        {"3. POVM suite (completeness, covariance, q normalization)", criterion_povm},
        {"4. dephasing oracles (Monte Carlo, additivity)", criterion_dephasing},
        {"5. static-noise orderings (gain, receiver ratio, NLA benefit)", criterion_fig1},
        {"6. amplitude comparison (weak-energy match, threshold region)", criterion_fig2},
        {"7. dynamical noise (memory ordering, receiver-ratio trend)", criterion_fig3},
        {"8. MI bounds and limits", criterion_bounds},
        {"9. CSV determinism (rerun, serial vs parallel)", criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        bool ok = true;
        std::string why;
        try {
            criterion.run(ok, why);
        } catch (const std::exception& e) {
            ok = false;
            why = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    why.empty() ? "" : " -- ", why.c_str());
        failures += !ok;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}
