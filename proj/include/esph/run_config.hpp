// run_config.hpp — JSON run configurations for the CLI.
#pragma once

#include "esph/input_signal.hpp"
#include "esph/models.hpp"
#include "esph/sim_config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace esph {

// input: {"kind": "zero"} | {"kind": "constant", "amplitude": a} |
//        {"kind": "sine", "amplitude": a, "frequency": w} |
//        {"kind": "sampled", "path": "u.csv"}
// amplitude may be a number or an array (broadcast to the port count).
struct InputConfig {
    std::string kind = "zero";
    std::vector<double> amplitude;
    double frequency = 1.0;
    std::string path;
};

struct MorConfig {
    int snapshot_stride = 1;
    std::optional<Index> target_dim;       // exactly one of the two targets
    std::optional<double> target_energy;
};

struct OutputConfig {
    std::string trace_path;
    std::string report_path;
    std::string basis_path;          // cmd_reduce only
    std::string reduced_trace_path;  // derived from trace_path when empty
};

struct RunConfig {
    std::string model;
    Params model_params;
    Vec x0;
    InputConfig input;
    SimConfig sim;
    std::optional<MorConfig> mor;
    OutputConfig outputs;
    std::uint64_t seed = 42;
    double compare_threshold = 1e-3;
};

// Parses and validates a config file; throws ConfigError on schema/value
// problems and IoError when the file cannot be read.
RunConfig load_run_config(const std::string& path);

// Realizes the configured signal for a system with io_dim ports; "sine" maps
// to a callable u_i(t) = A_i·sin(w·t), "sampled" reads a CSV of t,u_0,...
// rows evaluated by the nearest-sample rule.
InputSignal make_input_signal(const InputConfig& cfg, Index io_dim);

}  // namespace esph
