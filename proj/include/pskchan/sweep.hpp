#pragma once

#include <string>
#include <vector>

#include "pskchan/channel.hpp"

namespace pskchan {

enum class SweepVariable { Tau, Nbar, Gain, Time, Eta, MSymbols, TCorr };
enum class OutputQuantity { IId, IQ, RQId, RAmp, RQAmp, Sigma };

const char* to_string(SweepVariable v);
const char* to_string(OutputQuantity q);
SweepVariable sweep_variable_from_string(const std::string& name);
OutputQuantity output_quantity_from_string(const std::string& name);

/// Evenly spaced grid; log = true spaces the points geometrically.
std::vector<double> make_grid(double start, double stop, int count, bool log_scale);

/// One-dimensional parameter sweep around a fixed channel configuration.
struct SweepSpec {
    SweepVariable variable = SweepVariable::Tau;
    std::vector<double> grid;            // nonempty, strictly monotone
    ChannelConfig fixed;
    std::vector<OutputQuantity> outputs{OutputQuantity::IId, OutputQuantity::IQ};
    double eta = 1.0;                    // amplitude-channel loss for R_Q_amp
};

/// CSV artifact: '#'-prefixed metadata preamble, one header line, data rows.
/// Cells are preformatted (12 significant digits) so reruns and thread
/// counts cannot change a byte.
struct CsvTable {
    std::vector<std::string> preamble;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

/// Evaluate the sweep, one row per grid point in grid order. Per-point
/// failures land in the `error` column and the sweep continues.
/// threads = 0 picks the hardware concurrency.
CsvTable run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Canned parameter studies: fig1, fig2-left, fig2-right, fig3.
CsvTable run_preset(const std::string& name, unsigned threads = 0);
std::vector<std::string> preset_names();

/// Fixed-format float for CSV cells: 12 significant digits, C locale.
std::string format_cell(double value);

}  // namespace pskchan
