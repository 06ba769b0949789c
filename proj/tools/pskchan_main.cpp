// Command-line front end: single-point evaluation, parameter sweeps,
// figure presets, oracle selftest, and configuration validation.
//
// Exit codes: 0 success, 1 selftest/runtime failure, 2 invalid input.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pskchan/channel.hpp"
#include "pskchan/selftest.hpp"
#include "pskchan/sweep.hpp"
#include "pskchan/version.hpp"

namespace {

using namespace pskchan;

struct CliOptions {
    double nbar = 1.0;
    double gain = 1.0;
    double phase = 0.0;
    std::optional<double> tau;
    std::optional<double> time;
    double gamma_rate = 1.0;
    std::optional<double> t_corr;
    double exponent_a = 3.0;
    double omega = 0.0;
    double eta = 1.0;
    int m_symbols = 20;
    std::string povm = "canonical";
    std::string dim = "auto";
    unsigned threads = 0;
    std::uint64_t rng_seed = 20240901;
    std::string out;
};

void add_config_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--nbar", opts.nbar, "Mean photon number of the input coherent state");
    cmd->add_option("--gain", opts.gain, "Nominal amplifier gain g >= 1");
    cmd->add_option("--phase", opts.phase, "Seed phase in [0, 2pi); keep 0 for PSK runs");
    auto* tau = cmd->add_option("--tau", opts.tau, "Static dephasing parameter (Markovian noise)");
    auto* time = cmd->add_option("--time", opts.time,
                                 "Interaction time; selects the power-law noise model");
    tau->excludes(time);
    cmd->add_option("--gamma-rate", opts.gamma_rate, "Phase diffusion rate Gamma");
    cmd->add_option("--t-corr,--gamma-inv", opts.t_corr,
                    "Environment correlation time t_E = 1/gamma");
    cmd->add_option("--exponent-a", opts.exponent_a, "Power-law kernel exponent a > 1");
    cmd->add_option("--omega", opts.omega, "Environment central frequency");
    cmd->add_option("--eta", opts.eta, "Amplitude-channel loss in (0, 1]");
    cmd->add_option("--m-symbols", opts.m_symbols, "Alphabet size M >= 2");
    cmd->add_option("--povm", opts.povm, "Receiver: canonical | husimi-q")
        ->check(CLI::IsMember({"canonical", "husimi-q"}));
    cmd->add_option("--dim", opts.dim, "Fock truncation: auto or a positive integer");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--seed", opts.rng_seed, "RNG seed for the Monte-Carlo oracle");
    cmd->add_option("--out", opts.out, "Write CSV output to this path");
}

ChannelConfig build_config(const CliOptions& opts) {
    ChannelConfig cfg;
    cfg.seed = SeedSpec{opts.nbar, opts.gain, opts.phase};
    if (opts.time) {
        cfg.noise = NoiseModel::power_law(opts.gamma_rate,
                                          opts.t_corr ? 1.0 / *opts.t_corr : 1.0,
                                          opts.exponent_a, opts.omega);
        cfg.time = *opts.time;
    } else {
        cfg.noise = NoiseModel::static_noise(opts.tau.value_or(0.0));
    }
    cfg.povm_kind = opts.povm == "husimi-q" ? PovmKind::HusimiQ : PovmKind::Canonical;
    cfg.m_symbols = opts.m_symbols;
    if (opts.dim != "auto") {
        std::size_t used = 0;
        int dim = 0;
        try {
            dim = std::stoi(opts.dim, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != opts.dim.size() || dim < 1)
            throw std::domain_error("--dim must be 'auto' or a positive integer, got '" +
                                    opts.dim + "'");
        cfg.dim = dim;
    }
    if (opts.t_corr && !(*opts.t_corr > 0.0))
        throw std::domain_error("--t-corr must be > 0");
    validate_config(cfg);
    if (!(opts.eta >= 0.0) || opts.eta > 1.0)
        throw std::domain_error("--eta must lie in [0, 1]");
    return cfg;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << text;
}

std::string describe_config(const ChannelConfig& cfg, const CliOptions& opts) {
    std::string text;
    text += "nbar = " + format_cell(cfg.seed.nbar) + "\n";
    text += "gain = " + format_cell(cfg.seed.gain) + "\n";
    text += "phase = " + format_cell(cfg.seed.phase) + "\n";
    if (cfg.noise.kind == NoiseKind::Static) {
        text += "noise = static\n";
        text += "tau = " + format_cell(cfg.noise.tau) + "\n";
    } else {
        text += "noise = power-law\n";
        text += "gamma_rate = " + format_cell(cfg.noise.gamma_rate) + "\n";
        text += "t_corr = " + format_cell(cfg.noise.corr_time()) + "\n";
        text += "exponent_a = " + format_cell(cfg.noise.exponent_a) + "\n";
        text += "omega = " + format_cell(cfg.noise.omega) + "\n";
        text += "time = " + format_cell(cfg.time) + "\n";
    }
    text += "povm = " + opts.povm + "\n";
    text += "m_symbols = " + std::to_string(cfg.m_symbols) + "\n";
    const int dim = cfg.dim > 0 ? cfg.dim : auto_dim(cfg.seed);
    text += "dim = " + std::to_string(dim) + (cfg.dim > 0 ? "" : " (auto)") + "\n";
    text += "eta = " + format_cell(opts.eta) + "\n";
    return text;
}

int run_mi(const CliOptions& opts) {
    const ChannelConfig cfg = build_config(opts);
    const ChannelResult result = mutual_information(cfg);
    std::printf("I_bits = %s\n", format_cell(result.mutual_information_bits).c_str());
    std::printf("sigma = %s\n", format_cell(result.sigma_used).c_str());
    std::printf("dim = %d\n", result.dim_used);
    std::printf("tail_mass = %s\n", format_cell(result.tail_mass).c_str());
    std::printf("nbar_eff = %s\n", format_cell(amplified_mean_photons(cfg.seed)).c_str());
    if (!opts.out.empty()) {
        CsvTable table;
        table.preamble = {std::string(kToolName) + " " + kToolVersion,
                          "q distribution, I_bits=" +
                              format_cell(result.mutual_information_bits)};
        table.header = {"s", "q"};
        for (std::size_t s = 0; s < result.q.size(); ++s)
            table.rows.push_back({std::to_string(s), format_cell(result.q[s])});
        write_output(opts.out, table.to_string());
    }
    return 0;
}

int run_sweep_cmd(const CliOptions& opts, const std::string& var_name,
                  const std::vector<double>& values, double from, double to, int points,
                  const std::string& scale, const std::string& outputs_csv) {
    SweepSpec spec;
    spec.variable = sweep_variable_from_string(var_name);
    if (!values.empty()) {
        spec.grid = values;
    } else {
        spec.grid = make_grid(from, to, points, scale == "log");
    }
    spec.fixed = build_config(opts);
    spec.eta = opts.eta;

    spec.outputs.clear();
    std::string token;
    for (char c : outputs_csv + ",") {
        if (c == ',') {
            if (!token.empty()) spec.outputs.push_back(output_quantity_from_string(token));
            token.clear();
        } else {
            token += c;
        }
    }

    write_output(opts.out, run_sweep(spec, opts.threads).to_string());
    return 0;
}

int run_selftest_cmd(const CliOptions& opts, std::int64_t samples) {
    const SelftestReport report = run_selftest(opts.rng_seed, samples);
    std::printf("%-38s %-6s %s\n", "check", "status", "detail");
    for (const auto& check : report.checks)
        std::printf("%-38s %-6s %s\n", check.name.c_str(),
                    check.pass ? "PASS" : "FAIL", check.detail.c_str());
    if (const SelftestCheck* failed = report.first_failure()) {
        std::printf("FIRST FAILURE: %s\n", failed->name.c_str());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 " - mutual information of noisy PSK quantum phase channels"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.require_subcommand(1);

    CliOptions opts;

    auto* mi_cmd = app.add_subcommand("mi", "Mutual information of one configuration");
    add_config_flags(mi_cmd, opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one variable, emit CSV");
    add_config_flags(sweep_cmd, opts);
    std::string var_name = "tau", scale = "linear";
    std::string outputs_csv = "I_ID,I_Q";
    std::vector<double> values;
    double from = 0.0, to = 1.0;
    int points = 11;
    sweep_cmd->add_option("--var", var_name,
                          "Swept variable: tau|nbar|gain|time|eta|m_symbols|t_corr");
    auto* values_opt =
        sweep_cmd->add_option("--values", values, "Explicit comma-separated grid")
            ->delimiter(',');
    sweep_cmd->add_option("--from", from, "Grid start")->excludes(values_opt);
    sweep_cmd->add_option("--to", to, "Grid stop")->excludes(values_opt);
    sweep_cmd->add_option("--points", points, "Grid size")->excludes(values_opt);
    sweep_cmd->add_option("--scale", scale, "linear | log")
        ->check(CLI::IsMember({"linear", "log"}));
    sweep_cmd->add_option("--outputs", outputs_csv,
                          "Comma-separated: I_ID,I_Q,R_Q_ID,R_amp,R_Q_amp,sigma");

    auto* preset_cmd = app.add_subcommand("preset", "Run a canned figure reproduction");
    std::string preset_name;
    preset_cmd->add_option("name", preset_name, "fig1 | fig2-left | fig2-right | fig3")
        ->required();
    preset_cmd->add_option("--out", opts.out, "Write CSV output to this path");
    preset_cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the numerical oracle suite");
    std::int64_t samples = 1000000;
    selftest_cmd->add_option("--samples", samples, "Monte-Carlo sample count");
    selftest_cmd->add_option("--seed", opts.rng_seed, "RNG seed for the Monte-Carlo oracle");

    auto* validate_cmd =
        app.add_subcommand("validate", "Check a configuration and echo its normal form");
    add_config_flags(validate_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (mi_cmd->parsed()) return run_mi(opts);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(opts, var_name, values, from, to, points, scale,
                                 outputs_csv);
        if (preset_cmd->parsed()) {
            write_output(opts.out, run_preset(preset_name, opts.threads).to_string());
            return 0;
        }
        if (selftest_cmd->parsed()) return run_selftest_cmd(opts, samples);
        if (validate_cmd->parsed()) {
            const ChannelConfig cfg = build_config(opts);
            std::fputs(describe_config(cfg, opts).c_str(), stdout);
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
