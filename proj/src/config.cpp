#include "bzsolve/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <system_error>
#include <unordered_set>
#include <vector>

namespace bzsolve {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw config_error("config: key '" + std::string(key) + "' expects a number, got '" +
                           std::string(value) + "'");
    }
    return out;
}

long to_long(std::string_view key, std::string_view value) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw config_error("config: key '" + std::string(key) + "' expects an integer, got '" +
                           std::string(value) + "'");
    }
    return out;
}

unsigned long long to_seed(std::string_view key, std::string_view value) {
    unsigned long long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw config_error("config: key '" + std::string(key) +
                           "' expects a non-negative integer seed, got '" + std::string(value) +
                           "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error("config: key '" + std::string(key) + "' expects true or false, got '" +
                       std::string(value) + "'");
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string_view mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::ode_de: return "ode_de";
        case RunMode::ode_picard: return "ode_picard";
        case RunMode::pde_split: return "pde_split";
        case RunMode::analyze: return "analyze";
    }
    return "unknown";
}

RunMode mode_from_name(std::string_view name) {
    if (name == "ode_de") return RunMode::ode_de;
    if (name == "ode_picard") return RunMode::ode_picard;
    if (name == "pde_split") return RunMode::pde_split;
    if (name == "analyze") return RunMode::analyze;
    throw config_error("config: unknown mode '" + std::string(name) +
                       "' (expected ode_de, ode_picard, pde_split, or analyze)");
}

InitialSpec parse_initial_spec(std::string_view text) {
    text = trim(text);
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw config_error("config: initial spec '" + std::string(text) +
                           "' must look like kind:args");
    }
    const std::string_view kind = trim(text.substr(0, colon));
    const std::string_view args = trim(text.substr(colon + 1));

    InitialSpec spec;
    if (kind == "constant") {
        auto parts = split_list(args);
        if (parts.size() != 2) {
            throw config_error("config: initial constant spec expects constant:U,V");
        }
        spec.kind = InitialSpec::Kind::constant;
        spec.const_u = to_double("initial", parts[0]);
        spec.const_v = to_double("initial", parts[1]);
    } else if (kind == "bump") {
        auto parts = split_list(args);
        if (parts.size() != 3) {
            throw config_error("config: initial bump spec expects bump:CENTER,WIDTH,AMPLITUDE");
        }
        spec.kind = InitialSpec::Kind::bump;
        spec.center = to_double("initial", parts[0]);
        spec.width = to_double("initial", parts[1]);
        spec.amplitude = to_double("initial", parts[2]);
        if (spec.width <= 0.0) {
            throw config_error("config: initial bump width must be positive");
        }
    } else if (kind == "random") {
        spec.kind = InitialSpec::Kind::random_uniform;
        spec.seed = to_seed("initial", args);
    } else if (kind == "csv") {
        if (args.empty()) throw config_error("config: initial csv spec expects csv:PATH");
        spec.kind = InitialSpec::Kind::csv;
        spec.path = std::string(args);
    } else {
        throw config_error("config: unknown initial kind '" + std::string(kind) +
                           "' (expected constant, bump, random, or csv)");
    }
    return spec;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key.empty()) throw config_error("config: empty key");

    if (key == "mode") {
        cfg.mode = mode_from_name(value);
    } else if (key == "epsilon") {
        cfg.epsilon = to_double(key, value);
    } else if (key == "q") {
        cfg.q = to_double(key, value);
    } else if (key == "d") {
        cfg.d = to_double(key, value);
    } else if (key == "rho") {
        cfg.rho = to_double(key, value);
    } else if (key == "length") {
        cfg.length = to_double(key, value);
    } else if (key == "cells") {
        cfg.cells = static_cast<int>(to_long(key, value));
    } else if (key == "bc") {
        if (value == "neumann") {
            cfg.bc = BoundaryKind::neumann_homogeneous;
        } else if (value == "periodic") {
            cfg.bc = BoundaryKind::periodic;
        } else {
            throw config_error("config: key 'bc' expects neumann or periodic, got '" +
                               std::string(value) + "'");
        }
    } else if (key == "dt") {
        cfg.dt = to_double(key, value);
    } else if (key == "n_steps") {
        cfg.n_steps = to_long(key, value);
    } else if (key == "snapshot_every") {
        cfg.snapshot_every = to_long(key, value);
    } else if (key == "horizon") {
        cfg.horizon = to_double(key, value);
    } else if (key == "dt_fine") {
        cfg.dt_fine = to_double(key, value);
    } else if (key == "tol") {
        cfg.tol = to_double(key, value);
    } else if (key == "max_iter") {
        cfg.max_iter = to_long(key, value);
    } else if (key == "unsafe_horizon") {
        cfg.unsafe_horizon = to_bool(key, value);
    } else if (key == "initial") {
        cfg.initial = parse_initial_spec(value);
    } else if (key == "margin") {
        cfg.margin = to_double(key, value);
    } else if (key == "output") {
        cfg.output = std::string(value);
    } else if (key == "kernel") {
        cfg.kernel = std::string(value);
    } else {
        throw config_error("config: unknown key '" + std::string(key) + "'");
    }
}

void apply_preset(RunConfig& cfg, std::string_view name) {
    if (name == "bz_reference") {
        cfg.epsilon = 0.032;
        cfg.q = 2.0e-4;
        cfg.d = 0.0192;
        cfg.rho = 0.5;
        return;
    }
    throw config_error("config: unknown preset '" + std::string(name) + "'");
}

void merge_config_text(RunConfig& cfg, std::string_view text) {
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw config_error("config: malformed section header on line " +
                                   std::to_string(line_no));
            }
            continue;  // sections are purely cosmetic
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw config_error("config: line " + std::to_string(line_no) +
                               " is not of the form key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw config_error("config: duplicate key '" + key + "' on line " +
                               std::to_string(line_no));
        }
        apply_setting(cfg, key, value);
    }
}

void validate_config(const RunConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw config_error("config: epsilon must be positive");
    if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw config_error("config: q must lie in (0, 1)");
    if (!(cfg.d >= 0.0)) throw config_error("config: d must be non-negative");
    if (!(cfg.rho > 0.0)) throw config_error("config: rho must be positive");
    if (!(cfg.length > 0.0)) throw config_error("config: length must be positive");
    if (cfg.cells < 3) throw config_error("config: cells must be at least 3");
    if (!(cfg.dt >= 0.0)) throw config_error("config: dt must be non-negative (0 = automatic)");
    if (cfg.n_steps < 0) throw config_error("config: n_steps must be non-negative");
    if (cfg.snapshot_every < 1) throw config_error("config: snapshot_every must be at least 1");
    if (!(cfg.horizon >= 0.0)) throw config_error("config: horizon must be non-negative");
    if (!(cfg.dt_fine >= 0.0)) throw config_error("config: dt_fine must be non-negative");
    if (!(cfg.tol > 0.0)) throw config_error("config: tol must be positive");
    if (cfg.max_iter < 1) throw config_error("config: max_iter must be at least 1");
    if (!(cfg.margin > 0.0)) throw config_error("config: margin must be positive");
    if (cfg.kernel != "auto" && cfg.kernel != "scalar" && cfg.kernel != "avx2") {
        throw config_error("config: kernel must be auto, scalar, or avx2, got '" + cfg.kernel +
                           "'");
    }

    const bool field_initial = cfg.initial.kind == InitialSpec::Kind::bump ||
                               cfg.initial.kind == InitialSpec::Kind::random_uniform;
    if (field_initial && !(cfg.q + cfg.margin < 1.0 - cfg.margin)) {
        throw config_error("config: margin leaves no room inside (q, 1)");
    }

    if (cfg.mode == RunMode::ode_de || cfg.mode == RunMode::ode_picard ||
        cfg.mode == RunMode::analyze) {
        if (cfg.initial.kind != InitialSpec::Kind::constant) {
            throw config_error("config: mode '" + std::string(mode_name(cfg.mode)) +
                               "' needs a constant:U,V initial state");
        }
    }
    if (cfg.mode == RunMode::ode_de) {
        if (!(cfg.initial.const_u >= 0.0 && cfg.initial.const_v >= 0.0)) {
            throw config_error("config: ode_de needs a non-negative initial state");
        }
    }
    if (cfg.mode == RunMode::pde_split && cfg.dt > 0.0) {
        const double dx = cfg.length / static_cast<double>(cfg.cells);
        const double bound = stability_limit(std::max(1.0, cfg.d), dx);
        if (cfg.dt > bound) {
            throw config_error(
                "config: dt = " + std::to_string(cfg.dt) +
                " violates the explicit-diffusion stability bound dt <= dx^2/max{2, 2d} = " +
                std::to_string(bound));
        }
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    merge_config_text(cfg, text);
    validate_config(cfg);
    return cfg;
}

}  // namespace bzsolve
