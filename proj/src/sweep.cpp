#include "pskchan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <thread>

#include "pskchan/version.hpp"

namespace pskchan {

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::Tau: return "tau";
        case SweepVariable::Nbar: return "nbar";
        case SweepVariable::Gain: return "gain";
        case SweepVariable::Time: return "time";
        case SweepVariable::Eta: return "eta";
        case SweepVariable::MSymbols: return "m_symbols";
        case SweepVariable::TCorr: return "t_corr";
    }
    return "?";
}

const char* to_string(OutputQuantity q) {
    switch (q) {
        case OutputQuantity::IId: return "I_ID";
        case OutputQuantity::IQ: return "I_Q";
        case OutputQuantity::RQId: return "R_Q_ID";
        case OutputQuantity::RAmp: return "R_amp";
        case OutputQuantity::RQAmp: return "R_Q_amp";
        case OutputQuantity::Sigma: return "sigma";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    for (auto v : {SweepVariable::Tau, SweepVariable::Nbar, SweepVariable::Gain,
                   SweepVariable::Time, SweepVariable::Eta, SweepVariable::MSymbols,
                   SweepVariable::TCorr})
        if (name == to_string(v)) return v;
    throw std::invalid_argument("unknown sweep variable '" + name +
                                "' (expected tau|nbar|gain|time|eta|m_symbols|t_corr)");
}

OutputQuantity output_quantity_from_string(const std::string& name) {
    for (auto q : {OutputQuantity::IId, OutputQuantity::IQ, OutputQuantity::RQId,
                   OutputQuantity::RAmp, OutputQuantity::RQAmp, OutputQuantity::Sigma})
        if (name == to_string(q)) return q;
    throw std::invalid_argument("unknown output '" + name +
                                "' (expected I_ID|I_Q|R_Q_ID|R_amp|R_Q_amp|sigma)");
}

std::string format_cell(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::vector<double> make_grid(double start, double stop, int count, bool log_scale) {
    if (count < 1) throw std::invalid_argument("grid needs at least one point");
    if (count == 1) return {start};
    if (log_scale && !(start > 0.0 && stop > 0.0))
        throw std::invalid_argument("log grid requires positive endpoints");
    std::vector<double> grid(count);
    if (log_scale) {
        const double la = std::log(start), lb = std::log(stop);
        for (int i = 0; i < count; ++i)
            grid[i] = std::exp(la + (lb - la) * i / (count - 1));
        grid.front() = start;
        grid.back() = stop;
    } else {
        for (int i = 0; i < count; ++i)
            grid[i] = start + (stop - start) * i / (count - 1);
        grid.back() = stop;
    }
    return grid;
}

namespace {

struct RowJob {
    ChannelConfig cfg;
    double eta = 1.0;
    std::vector<std::string> lead;
    std::vector<OutputQuantity> outputs;
    std::string apply_error;  // set when building the point already failed
};

std::string sanitize_message(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

void append_error(std::string& error, const std::string& msg) {
    if (!error.empty()) error += "; ";
    error += sanitize_message(msg);
}

std::vector<std::string> evaluate_row(const RowJob& job) {
    std::vector<std::string> cells = job.lead;
    std::string error = job.apply_error;

    std::optional<ChannelResult> cached[2];
    auto mi = [&](PovmKind kind) -> const ChannelResult& {
        auto& slot = cached[kind == PovmKind::Canonical ? 0 : 1];
        if (!slot) {
            ChannelConfig cfg = job.cfg;
            cfg.povm_kind = kind;
            slot = mutual_information(cfg);
        }
        return *slot;
    };

    for (OutputQuantity out : job.outputs) {
        if (!job.apply_error.empty()) {
            cells.emplace_back();
            continue;
        }
        try {
            double value = 0.0;
            switch (out) {
                case OutputQuantity::IId:
                    value = mi(PovmKind::Canonical).mutual_information_bits;
                    break;
                case OutputQuantity::IQ:
                    value = mi(PovmKind::HusimiQ).mutual_information_bits;
                    break;
                case OutputQuantity::RQId: {
                    const double i_q = mi(PovmKind::HusimiQ).mutual_information_bits;
                    const double i_id = mi(PovmKind::Canonical).mutual_information_bits;
                    if (i_id == 0.0)
                        throw std::domain_error("undefined: canonical MI is 0");
                    value = i_q / i_id;
                    break;
                }
                case OutputQuantity::RAmp:
                    value = amplification_ratio(job.cfg, job.cfg.seed.gain);
                    break;
                case OutputQuantity::RQAmp: {
                    ChannelConfig cfg = job.cfg;
                    cfg.povm_kind = PovmKind::HusimiQ;
                    value = phase_vs_amplitude_ratio(cfg, job.eta);
                    break;
                }
                case OutputQuantity::Sigma:
                    value = sigma_at(job.cfg.noise, job.cfg.time);
                    break;
            }
            cells.push_back(format_cell(value));
        } catch (const std::exception& e) {
            cells.emplace_back();
            append_error(error, std::string(to_string(out)) + ": " + e.what());
        }
    }

    // tail_mass and dim columns
    if (job.apply_error.empty()) {
        try {
            if (!cached[0] && !cached[1]) {
                const int dim = job.cfg.dim > 0 ? job.cfg.dim : auto_dim(job.cfg.seed);
                const auto rho = amplified_coherent_density(job.cfg.seed, dim);
                cells.push_back(format_cell(rho.tail_mass));
                cells.push_back(std::to_string(dim));
            } else {
                const ChannelResult& r = cached[0] ? *cached[0] : *cached[1];
                cells.push_back(format_cell(r.tail_mass));
                cells.push_back(std::to_string(r.dim_used));
            }
        } catch (const std::exception& e) {
            cells.emplace_back();
            cells.emplace_back();
            append_error(error, e.what());
        }
    } else {
        cells.emplace_back();
        cells.emplace_back();
    }

    cells.push_back(error);
    return cells;
}

std::vector<std::vector<std::string>> evaluate_jobs(const std::vector<RowJob>& jobs,
                                                    unsigned threads) {
    const std::size_t n = jobs.size();
    std::vector<std::vector<std::string>> rows(n);
    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<std::size_t>(nthreads, n);

    auto run_range = [&](std::atomic<std::size_t>& next) {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                rows[i] = evaluate_row(jobs[i]);
            } catch (const std::exception& e) {
                rows[i] = jobs[i].lead;
                rows[i].resize(jobs[i].lead.size() + jobs[i].outputs.size() + 2);
                rows[i].push_back(sanitize_message(e.what()));
            }
        }
    };

    if (nthreads <= 1) {
        std::atomic<std::size_t> next{0};
        run_range(next);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned i = 0; i + 1 < nthreads; ++i)
        pool.emplace_back([&] { run_range(next); });
    run_range(next);
    for (auto& th : pool) th.join();
    return rows;
}

std::string join_cells(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

std::string tool_stamp() {
    return std::string(kToolName) + " " + kToolVersion;
}

std::string noise_echo(const NoiseModel& noise, double time) {
    if (noise.kind == NoiseKind::Static)
        return "noise=static tau=" + format_cell(noise.tau);
    return "noise=power-law gamma_rate=" + format_cell(noise.gamma_rate) +
           " t_corr=" + format_cell(noise.corr_time()) +
           " exponent_a=" + format_cell(noise.exponent_a) +
           " omega=" + format_cell(noise.omega) + " time=" + format_cell(time);
}

std::string config_echo(const ChannelConfig& cfg, double eta) {
    std::string echo = "nbar=" + format_cell(cfg.seed.nbar) +
                       " gain=" + format_cell(cfg.seed.gain) +
                       " phase=" + format_cell(cfg.seed.phase) + " " +
                       noise_echo(cfg.noise, cfg.time) +
                       " m_symbols=" + std::to_string(cfg.m_symbols) +
                       " povm=" +
                       (cfg.povm_kind == PovmKind::Canonical ? "canonical" : "husimi-q") +
                       " dim=" + (cfg.dim > 0 ? std::to_string(cfg.dim) : "auto") +
                       " eta=" + format_cell(eta);
    return echo;
}

std::vector<std::string> standard_header(const std::string& lead,
                                         const std::vector<OutputQuantity>& outputs) {
    std::vector<std::string> header{lead};
    for (auto q : outputs) header.push_back(to_string(q));
    header.push_back("tail_mass");
    header.push_back("dim");
    header.push_back("error");
    return header;
}

CsvTable preset_fig1(unsigned threads) {
    const std::vector<double> taus = make_grid(0.0, 3.0, 61, false);
    const std::vector<double> gains{1.0, 1.2, 1.6, 2.0};
    const std::vector<OutputQuantity> outputs{OutputQuantity::IId, OutputQuantity::IQ,
                                              OutputQuantity::RQId};

    ChannelConfig base;
    base.seed = SeedSpec{1.0, 1.0, 0.0};
    base.noise = NoiseModel::static_noise(0.0);
    base.m_symbols = 20;

    std::vector<RowJob> jobs;
    for (double gain : gains)
        for (double tau : taus) {
            RowJob job;
            job.cfg = base;
            job.cfg.seed.gain = gain;
            job.cfg.noise.tau = tau;
            job.lead = {format_cell(tau), format_cell(gain)};
            job.outputs = outputs;
            jobs.push_back(std::move(job));
        }

    CsvTable table;
    table.preamble = {tool_stamp(),
                      "preset=fig1 gains=1;1.2;1.6;2 tau=[0;3]x61 " + config_echo(base, 1.0)};
    table.header = {"tau", "gain", "I_ID", "I_Q", "R_Q_ID", "tail_mass", "dim", "error"};
    table.rows = evaluate_jobs(jobs, threads);
    return table;
}

CsvTable preset_fig2_left(unsigned threads) {
    const std::vector<double> nbars = make_grid(0.05, 4.0, 80, false);
    const std::vector<OutputQuantity> outputs{OutputQuantity::IId, OutputQuantity::IQ,
                                              OutputQuantity::RQAmp};

    ChannelConfig base;
    base.seed = SeedSpec{1.0, 1.0, 0.0};
    base.noise = NoiseModel::static_noise(0.0);
    base.m_symbols = 30;

    std::vector<RowJob> jobs;
    for (double nbar : nbars) {
        RowJob job;
        job.cfg = base;
        job.cfg.seed.nbar = nbar;
        job.eta = 1.0;
        job.lead = {format_cell(nbar)};
        job.outputs = outputs;
        jobs.push_back(std::move(job));
    }

    CsvTable table;
    table.preamble = {tool_stamp(),
                      "preset=fig2-left nbar=[0.05;4]x80 " + config_echo(base, 1.0)};
    table.header = standard_header("nbar", outputs);
    table.rows = evaluate_jobs(jobs, threads);
    return table;
}

CsvTable preset_fig2_right(unsigned threads) {
    const std::vector<double> nbars{0.2, 1.0, 2.0};
    const std::vector<double> taus = make_grid(0.0, 2.0, 21, false);
    const std::vector<double> etas = make_grid(0.05, 1.0, 20, false);
    const std::vector<OutputQuantity> outputs{OutputQuantity::RQAmp};

    ChannelConfig base;
    base.seed = SeedSpec{0.2, 2.0, 0.0};
    base.noise = NoiseModel::static_noise(0.0);
    base.m_symbols = 20;
    base.povm_kind = PovmKind::HusimiQ;

    std::vector<RowJob> jobs;
    for (double nbar : nbars)
        for (double tau : taus)
            for (double eta : etas) {
                RowJob job;
                job.cfg = base;
                job.cfg.seed.nbar = nbar;
                job.cfg.noise.tau = tau;
                job.eta = eta;
                job.lead = {format_cell(nbar), format_cell(tau), format_cell(eta)};
                job.outputs = outputs;
                jobs.push_back(std::move(job));
            }

    CsvTable table;
    table.preamble = {tool_stamp(),
                      "preset=fig2-right nbar=0.2;1;2 tau=[0;2]x21 eta=[0.05;1]x20 " +
                          config_echo(base, 1.0)};
    table.header = {"nbar", "tau", "eta", "R_Q_amp", "tail_mass", "dim", "error"};
    table.rows = evaluate_jobs(jobs, threads);
    return table;
}

CsvTable preset_fig3(unsigned threads) {
    const std::vector<double> times = make_grid(0.05, 3.0, 60, false);
    const std::vector<double> corr_times{0.5, 1.0, 5.0};
    const std::vector<OutputQuantity> outputs{OutputQuantity::IId, OutputQuantity::IQ,
                                              OutputQuantity::RQId, OutputQuantity::Sigma};

    ChannelConfig base;
    base.seed = SeedSpec{2.0, 2.0, 0.0};
    base.m_symbols = 20;
    const double gamma_rate = 1.0;
    const double exponent_a = 3.0;

    std::vector<RowJob> jobs;
    for (double t : times) {  // static baseline, tau = Gamma t
        RowJob job;
        job.cfg = base;
        job.cfg.noise = NoiseModel::static_noise(gamma_rate * t);
        job.lead = {format_cell(t), "static", ""};
        job.outputs = outputs;
        jobs.push_back(std::move(job));
    }
    for (double t_corr : corr_times)
        for (double t : times) {
            RowJob job;
            job.cfg = base;
            job.cfg.noise = NoiseModel::power_law(gamma_rate, 1.0 / t_corr, exponent_a);
            job.cfg.time = t;
            job.lead = {format_cell(t), "power-law", format_cell(t_corr)};
            job.outputs = outputs;
            jobs.push_back(std::move(job));
        }

    CsvTable table;
    table.preamble = {tool_stamp(),
                      "preset=fig3 t=[0.05;3]x60 t_corr=static;0.5;1;5 gamma_rate=1 "
                      "exponent_a=3 nbar=2 gain=2 m_symbols=20 dim=auto"};
    table.header = {"t",         "noise", "t_corr", "I_ID", "I_Q",
                    "R_Q_ID",    "sigma", "tail_mass", "dim",  "error"};
    table.rows = evaluate_jobs(jobs, threads);
    return table;
}

}  // namespace

std::string CsvTable::to_string() const {
    std::string out;
    for (const auto& line : preamble) {
        out += "# ";
        out += line;
        out += '\n';
    }
    out += join_cells(header);
    out += '\n';
    for (const auto& row : rows) {
        out += join_cells(row);
        out += '\n';
    }
    return out;
}

CsvTable run_sweep(const SweepSpec& spec, unsigned threads) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep grid is empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
        const bool increasing = spec.grid[1] > spec.grid[0];
        if ((increasing && !(spec.grid[i] > spec.grid[i - 1])) ||
            (!increasing && !(spec.grid[i] < spec.grid[i - 1])))
            throw std::invalid_argument("sweep grid must be strictly monotone");
    }
    if (spec.outputs.empty()) throw std::invalid_argument("sweep requests no outputs");

    std::vector<RowJob> jobs;
    jobs.reserve(spec.grid.size());
    for (double value : spec.grid) {
        RowJob job;
        job.cfg = spec.fixed;
        job.eta = spec.eta;
        job.outputs = spec.outputs;
        job.lead = {format_cell(value)};
        try {
            switch (spec.variable) {
                case SweepVariable::Tau:
                    job.cfg.noise.kind = NoiseKind::Static;
                    job.cfg.noise.tau = value;
                    break;
                case SweepVariable::Nbar:
                    job.cfg.seed.nbar = value;
                    break;
                case SweepVariable::Gain:
                    job.cfg.seed.gain = value;
                    break;
                case SweepVariable::Time:
                    job.cfg.noise.kind = NoiseKind::PowerLaw;
                    job.cfg.time = value;
                    break;
                case SweepVariable::Eta:
                    job.eta = value;
                    break;
                case SweepVariable::MSymbols: {
                    const double rounded = std::round(value);
                    if (std::abs(value - rounded) > 1e-9 || rounded < 2.0)
                        throw std::domain_error("m_symbols grid point must be an integer >= 2");
                    job.cfg.m_symbols = int(rounded);
                    break;
                }
                case SweepVariable::TCorr:
                    if (!(value > 0.0))
                        throw std::domain_error("t_corr grid point must be > 0");
                    job.cfg.noise.kind = NoiseKind::PowerLaw;
                    job.cfg.noise.inv_corr_time = 1.0 / value;
                    break;
            }
        } catch (const std::exception& e) {
            job.apply_error = sanitize_message(e.what());
        }
        jobs.push_back(std::move(job));
    }

    CsvTable table;
    table.preamble = {tool_stamp(),
                      "sweep variable=" + std::string(to_string(spec.variable)) +
                          " points=" + std::to_string(spec.grid.size()) + " " +
                          config_echo(spec.fixed, spec.eta)};
    table.header = standard_header(to_string(spec.variable), spec.outputs);
    table.rows = evaluate_jobs(jobs, threads);
    return table;
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2-left", "fig2-right", "fig3"};
}

CsvTable run_preset(const std::string& name, unsigned threads) {
    if (name == "fig1") return preset_fig1(threads);
    if (name == "fig2-left") return preset_fig2_left(threads);
    if (name == "fig2-right") return preset_fig2_right(threads);
    if (name == "fig3") return preset_fig3(threads);
    throw std::invalid_argument("unknown preset '" + name +
                                "' (available: fig1, fig2-left, fig2-right, fig3)");
}

}  // namespace pskchan
