#include "esph/run_config.hpp"

#include "esph/errors.hpp"
#include "esph/trace_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace esph {

namespace {

using nlohmann::json;

std::vector<double> parse_amplitude(const json& j) {
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> a;
        for (const auto& v : j) {
            if (!v.is_number()) throw ConfigError("input.amplitude array must hold numbers");
            a.push_back(v.get<double>());
        }
        return a;
    }
    throw ConfigError("input.amplitude must be a number or an array of numbers");
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON (" + std::string(e.what()) + "): " + path);
    }

    RunConfig cfg;
    try {
        if (!j.contains("model") || !j["model"].is_string())
            throw ConfigError("config requires a string field 'model'");
        cfg.model = j["model"].get<std::string>();

        if (j.contains("model_params")) {
            for (const auto& [key, value] : j["model_params"].items()) {
                if (!value.is_number())
                    throw ConfigError("model_params." + key + " must be a number");
                cfg.model_params[key] = value.get<double>();
            }
        }

        if (!j.contains("x0") || !j["x0"].is_array())
            throw ConfigError("config requires an array field 'x0'");
        cfg.x0.resize(static_cast<Index>(j["x0"].size()));
        for (Index i = 0; i < cfg.x0.size(); ++i) {
            const auto& v = j["x0"][static_cast<std::size_t>(i)];
            if (!v.is_number()) throw ConfigError("x0 must hold numbers");
            cfg.x0(i) = v.get<double>();
        }

        if (j.contains("input")) {
            const json& ji = j["input"];
            cfg.input.kind = ji.value("kind", std::string("zero"));
            if (ji.contains("amplitude")) cfg.input.amplitude = parse_amplitude(ji["amplitude"]);
            cfg.input.frequency = ji.value("frequency", 1.0);
            cfg.input.path = ji.value("path", std::string());
        }

        if (!j.contains("sim")) throw ConfigError("config requires an object field 'sim'");
        const json& js = j["sim"];
        cfg.sim.t0 = js.value("t0", 0.0);
        if (!js.contains("t_end")) throw ConfigError("sim.t_end is required");
        cfg.sim.t_end = js["t_end"].get<double>();
        if (!js.contains("dt")) throw ConfigError("sim.dt is required");
        cfg.sim.dt = js["dt"].get<double>();
        if (js.contains("scheme")) {
            try {
                cfg.sim.scheme = scheme_from_string(js["scheme"].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        cfg.sim.newton_tol = js.value("newton_tol", 1e-11);
        cfg.sim.newton_max_iter = js.value("newton_max_iter", 50);
        cfg.sim.fd_step = js.value("fd_step", 1e-7);
        if (js.contains("jacobian")) {
            const auto mode = js["jacobian"].get<std::string>();
            if (mode != "finite_difference")
                throw ConfigError("sim.jacobian: only 'finite_difference' is available from "
                                  "config files");
        }

        if (j.contains("mor")) {
            MorConfig mc;
            const json& jm = j["mor"];
            mc.snapshot_stride = jm.value("snapshot_stride", 1);
            if (mc.snapshot_stride < 1) throw ConfigError("mor.snapshot_stride must be >= 1");
            if (jm.contains("target_dim")) mc.target_dim = jm["target_dim"].get<Index>();
            if (jm.contains("target_energy")) mc.target_energy = jm["target_energy"].get<double>();
            if (mc.target_dim.has_value() == mc.target_energy.has_value())
                throw ConfigError("mor requires exactly one of target_dim / target_energy");
            cfg.mor = mc;
        }

        if (j.contains("outputs")) {
            const json& jo = j["outputs"];
            cfg.outputs.trace_path = jo.value("trace_path", std::string());
            cfg.outputs.report_path = jo.value("report_path", std::string());
            cfg.outputs.basis_path = jo.value("basis_path", std::string());
            cfg.outputs.reduced_trace_path = jo.value("reduced_trace_path", std::string());
        }

        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.compare_threshold = j.value("compare_threshold", 1e-3);
    } catch (const json::exception& e) {
        throw ConfigError("config field has the wrong type (" + std::string(e.what()) + ")");
    }

    try {
        cfg.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

InputSignal make_input_signal(const InputConfig& cfg, Index io_dim) {
    const auto broadcast = [&](const std::vector<double>& a) -> Vec {
        if (a.empty()) throw ConfigError("input kind '" + cfg.kind + "' requires an amplitude");
        Vec v(io_dim);
        if (a.size() == 1) {
            v.setConstant(a[0]);
        } else if (static_cast<Index>(a.size()) == io_dim) {
            for (Index i = 0; i < io_dim; ++i) v(i) = a[static_cast<std::size_t>(i)];
        } else {
            throw ConfigError("input.amplitude length does not match the port count");
        }
        return v;
    };

    if (cfg.kind == "zero") return InputSignal::zero(io_dim);
    if (cfg.kind == "constant") return InputSignal::constant(broadcast(cfg.amplitude));
    if (cfg.kind == "sine") {
        const Vec amp = broadcast(cfg.amplitude);
        const double w = cfg.frequency;
        return InputSignal::callable(
            io_dim, [amp, w](double t) -> Vec { return amp * std::sin(w * t); });
    }
    if (cfg.kind == "sampled") {
        if (cfg.path.empty()) throw ConfigError("input kind 'sampled' requires a path");
        std::ifstream in(cfg.path);
        if (!in) throw ConfigError("cannot open input sample file: " + cfg.path);
        std::vector<double> times;
        std::vector<Vec> values;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 't') continue;  // optional header
            std::vector<double> row;
            std::size_t pos = 0;
            while (pos <= line.size()) {
                const std::size_t comma = line.find(',', pos);
                const std::string tok =
                    line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try {
                    row.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw ConfigError("malformed sample row in " + cfg.path);
                }
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (row.size() != static_cast<std::size_t>(io_dim) + 1)
                throw ConfigError("sample rows must be t,u_0..u_{n_y-1} in " + cfg.path);
            times.push_back(row[0]);
            Vec u(io_dim);
            for (Index i = 0; i < io_dim; ++i) u(i) = row[static_cast<std::size_t>(i) + 1];
            values.push_back(std::move(u));
        }
        try {
            return InputSignal::sampled(std::move(times), std::move(values));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("unknown input kind '" + cfg.kind +
                      "' (expected zero, constant, sine or sampled)");
}

}  // namespace esph
