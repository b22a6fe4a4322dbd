// commands.hpp — CLI command implementations (esph simulate/reduce/verify/compare).
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace esph {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;      // verification failed / threshold exceeded
inline constexpr int config = 2;            // config or parameter error
inline constexpr int solver = 3;            // time-stepping failure
inline constexpr int io = 4;                // file I/O failure
inline constexpr int reduced_structure = 5; // reduced system failed validation
}  // namespace exit_code

struct CommandOptions {
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
};

// simulate: run the configured model/scheme, write the trace CSV and a JSON
// report (balance + structure + metadata). Exit 0 iff the run completed and,
// for the discrete-gradient scheme, passed_pbe ∧ passed_di.
int cmd_simulate(const std::string& config_path, const CommandOptions& opts = {});

// reduce: simulate, collect snapshots, build the POD basis, reduce,
// re-simulate, write both traces + basis + comparison report. Exit 0 iff the
// reduced system passes structure and balance checks (5 on a structure
// failure, which indicates an implementation bug).
int cmd_reduce(const std::string& config_path, const CommandOptions& opts = {});

// verify: assemble the model's Dirac form, check the Dirac axioms and the
// eliminated system's block structure, write a JSON certificate. Exit 0 iff
// all checks pass.
int cmd_verify(const std::string& config_path, const CommandOptions& opts = {});

// compare: run the matched es-pH, iso-pH and Dirac-DAE variants plus the
// reference oracle on the same input/grid; write per-variant traces and a
// pairwise deviation report. Exit 1 when a deviation exceeds the configured
// threshold.
int cmd_compare(const std::string& config_path, const CommandOptions& opts = {});

}  // namespace esph
