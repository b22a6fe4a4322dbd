#include "esph/trace_io.hpp"

#include "esph/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace esph {

namespace {

// 17 significant digits round-trip doubles exactly.
std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw IoError("malformed number '" + s + "' in trace file: " + path);
    return v;
}

}  // namespace

void write_trace_csv(const std::string& path, const Trajectory& traj) {
    traj.check_consistent();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open trace file for writing: " + path);

    const Index n_state = traj.states.front().size();
    const Index n_out = traj.outputs.empty() ? 0 : traj.outputs.front().size();

    out << "t";
    for (Index i = 0; i < n_state; ++i) out << ",x_" << i;
    for (Index i = 0; i < n_out; ++i) out << ",y_" << i;
    out << ",H,supply_rate,dissipation_rate,pbe_residual\n";

    const std::size_t n_rows = traj.states.size();
    for (std::size_t k = 0; k < n_rows; ++k) {
        out << format_double(traj.times[k]);
        for (Index i = 0; i < n_state; ++i) out << ',' << format_double(traj.states[k](i));
        const bool has_step = k < traj.n_steps();
        for (Index i = 0; i < n_out; ++i) {
            out << ',';
            if (has_step) out << format_double(traj.outputs[k](i));
        }
        out << ',' << format_double(traj.energies[k]);
        out << ',';
        if (has_step) out << format_double(traj.supply_rates[k]);
        out << ',';
        if (has_step) out << format_double(traj.dissipation_rates[k]);
        out << ',';
        if (has_step) out << format_double(traj.pbe_residuals[k]);
        out << '\n';
    }
    if (!out) throw IoError("failed writing trace file: " + path);
}

Trajectory read_trace_csv(const std::string& path, Scheme assumed_scheme) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError("empty trace file: " + path);
    const std::vector<std::string> header = split_csv_line(line);

    Index n_state = 0, n_out = 0;
    for (const std::string& name : header) {
        if (name.rfind("x_", 0) == 0) ++n_state;
        if (name.rfind("y_", 0) == 0) ++n_out;
    }
    const std::size_t expected = 1 + static_cast<std::size_t>(n_state + n_out) + 4;
    if (header.size() != expected || header.front() != "t")
        throw IoError("unexpected trace header in: " + path);

    Trajectory traj;
    traj.scheme = assumed_scheme;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != expected) throw IoError("ragged trace row in: " + path);

        std::size_t col = 0;
        traj.times.push_back(parse_double(f[col++], path));
        Vec x(n_state);
        for (Index i = 0; i < n_state; ++i) x(i) = parse_double(f[col++], path);
        traj.states.push_back(std::move(x));

        const bool has_step = !f[static_cast<std::size_t>(1 + n_state + n_out) + 1].empty();
        if (has_step) {
            Vec y(n_out);
            for (Index i = 0; i < n_out; ++i) y(i) = parse_double(f[col++], path);
            traj.outputs.push_back(std::move(y));
            traj.energies.push_back(parse_double(f[col++], path));
            traj.supply_rates.push_back(parse_double(f[col++], path));
            traj.dissipation_rates.push_back(parse_double(f[col++], path));
            traj.pbe_residuals.push_back(parse_double(f[col++], path));
        } else {
            col += static_cast<std::size_t>(n_out);
            traj.energies.push_back(parse_double(f[col++], path));
        }
    }
    if (traj.states.empty()) throw IoError("trace file holds no rows: " + path);
    traj.check_consistent();
    return traj;
}

}  // namespace esph
