#include "dephase/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dephase::cli {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::string join_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(values[i]);
    }
    return out;
}

struct KeyHandler {
    std::string name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const json&)> set_json;
};

Command command_from(const std::string& v) {
    if (v == "spectrum") return Command::Spectrum;
    if (v == "decay") return Command::Decay;
    if (v == "sweep") return Command::Sweep;
    if (v == "oracle-check") return Command::OracleCheck;
    if (v == "asymptote") return Command::Asymptote;
    throw ConfigError("config key 'command': unknown command '" + v +
                      "' (expected spectrum|decay|sweep|oracle-check|asymptote)");
}

ModelKind model_from(const std::string& v) {
    if (v == "exponential") return ModelKind::Exponential;
    if (v == "quadratic") return ModelKind::Quadratic;
    if (v == "linear") return ModelKind::Linear;
    throw ConfigError("config key 'model': unknown model '" + v +
                      "' (expected exponential|quadratic|linear)");
}

OutputFormat format_from(const std::string& v) {
    if (v == "csv") return OutputFormat::Csv;
    if (v == "json") return OutputFormat::Json;
    throw ConfigError("config key 'format': expected csv|json, got '" + v + "'");
}

const std::vector<KeyHandler>& schema() {
    static const std::vector<KeyHandler> handlers = [] {
        std::vector<KeyHandler> h;
        auto add_str = [&h](const char* name, auto setter, auto getter) {
            h.push_back({name,
                         [name, setter](RunConfig& c, const std::string& v) { setter(c, v); },
                         getter,
                         [name, setter](RunConfig& c, const json& j) {
                             if (!j.is_string())
                                 throw ConfigError(std::string("config key '") + name + "': expected a string");
                             setter(c, j.get<std::string>());
                         }});
        };
        auto add_double = [&h](const char* name, double RunConfig::* field) {
            h.push_back({name,
                         [name, field](RunConfig& c, const std::string& v) { c.*field = parse_double(name, v); },
                         [field](const RunConfig& c) { return fmt_double(c.*field); },
                         [name, field](RunConfig& c, const json& j) {
                             if (!j.is_number())
                                 throw ConfigError(std::string("config key '") + name + "': expected a number");
                             c.*field = j.get<double>();
                         }});
        };
        auto add_int = [&h](const char* name, int RunConfig::* field) {
            h.push_back({name,
                         [name, field](RunConfig& c, const std::string& v) {
                             c.*field = static_cast<int>(parse_long(name, v));
                         },
                         [field](const RunConfig& c) { return std::to_string(c.*field); },
                         [name, field](RunConfig& c, const json& j) {
                             if (!j.is_number_integer())
                                 throw ConfigError(std::string("config key '") + name + "': expected an integer");
                             c.*field = j.get<int>();
                         }});
        };
        auto add_list = [&h](const char* name, std::vector<double> RunConfig::* field) {
            h.push_back({name,
                         [name, field](RunConfig& c, const std::string& v) { c.*field = parse_list(name, v); },
                         [field](const RunConfig& c) { return join_list(c.*field); },
                         [name, field](RunConfig& c, const json& j) {
                             if (!j.is_array())
                                 throw ConfigError(std::string("config key '") + name + "': expected an array");
                             (c.*field).clear();
                             for (const auto& e : j) {
                                 if (!e.is_number())
                                     throw ConfigError(std::string("config key '") + name +
                                                       "': expected numeric array elements");
                                 (c.*field).push_back(e.get<double>());
                             }
                         }});
        };

        add_str("command", [](RunConfig& c, const std::string& v) { c.command = command_from(v); },
                [](const RunConfig& c) { return to_string(c.command); });
        add_str("model", [](RunConfig& c, const std::string& v) { c.model = model_from(v); },
                [](const RunConfig& c) { return to_string(c.model); });
        add_str("units",
                [](RunConfig& c, const std::string& v) {
                    if (v != "t2" && v != "omega_p")
                        throw ConfigError("config key 'units': expected t2|omega_p, got '" + v + "'");
                    c.units = v;
                },
                [](const RunConfig& c) { return c.units; });
        add_double("delta", &RunConfig::delta);
        add_double("tau_c", &RunConfig::tau_c);
        add_double("s_q", &RunConfig::s_q);
        add_double("omega_p", &RunConfig::omega_p);
        add_double("gamma_p", &RunConfig::gamma_p);
        add_double("beta_p", &RunConfig::beta_p);
        add_double("alpha", &RunConfig::alpha);
        add_int("ohmicity", &RunConfig::ohmicity);
        add_double("omega_c", &RunConfig::omega_c);
        add_int("n_pulses", &RunConfig::n_pulses);
        add_double("tau_s", &RunConfig::tau_s);
        add_list("pulse_times", &RunConfig::pulse_times);
        add_double("t_max", &RunConfig::t_max);
        add_double("t_step", &RunConfig::t_step);
        add_double("omega_min", &RunConfig::omega_min);
        add_double("omega_max", &RunConfig::omega_max);
        add_double("omega_step", &RunConfig::omega_step);
        add_double("tau_s_min", &RunConfig::tau_s_min);
        add_double("tau_s_max", &RunConfig::tau_s_max);
        add_double("tau_s_step", &RunConfig::tau_s_step);
        add_double("window_start", &RunConfig::window_start);
        add_double("window_end", &RunConfig::window_end);
        add_int("oracle_pairs", &RunConfig::oracle_pairs);
        add_int("oracle_n_max", &RunConfig::oracle_n_max);
        h.push_back({"seed",
                     [](RunConfig& c, const std::string& v) {
                         c.seed = static_cast<unsigned>(parse_long("seed", v));
                     },
                     [](const RunConfig& c) { return std::to_string(c.seed); },
                     [](RunConfig& c, const json& j) {
                         if (!j.is_number_integer()) throw ConfigError("config key 'seed': expected an integer");
                         c.seed = j.get<unsigned>();
                     }});
        add_list("t_checkpoints", &RunConfig::t_checkpoints);
        add_int("quad_panels", &RunConfig::quad_panels);
        add_int("quad_levels", &RunConfig::quad_levels);
        add_double("quad_rel_tol", &RunConfig::quad_rel_tol);
        add_double("quad_freq_cutoff", &RunConfig::quad_freq_cutoff);
        add_str("out", [](RunConfig& c, const std::string& v) { c.out = v; },
                [](const RunConfig& c) { return c.out; });
        add_str("format", [](RunConfig& c, const std::string& v) { c.format = format_from(v); },
                [](const RunConfig& c) { return to_string(c.format); });
        add_int("threads", &RunConfig::threads);
        return h;
    }();
    return handlers;
}

const KeyHandler* find_key(const std::string& name) {
    for (const auto& h : schema())
        if (h.name == name) return &h;
    return nullptr;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Resolve unit-dependent defaults after raw key assignment.
void resolve(RunConfig& config, const std::set<std::string>& seen) {
    if (config.units.empty())
        config.units = (config.model == ModelKind::Exponential) ? "t2" : "omega_p";
    if (config.units == "t2") {
        if (config.model != ModelKind::Exponential)
            throw ConfigError("config key 'units': t2 normalization applies to the exponential model only");
        const double product = config.delta * config.delta * config.tau_c;
        if (std::abs(product - 1.0) > 1e-6) {
            if (seen.count("delta"))
                throw ConfigError(
                    "config key 'delta': t2 units require delta^2 * tau_c = 1 "
                    "(drop 'delta' to derive it from tau_c)");
            if (!(config.tau_c > 0.0)) throw ConfigError("config key 'tau_c': must be > 0");
            config.delta = 1.0 / std::sqrt(config.tau_c);
        }
    } else if (config.model == ModelKind::Exponential) {
        throw ConfigError("config key 'units': omega_p normalization applies to the boson models only");
    }
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::Decay: return "decay";
        case Command::Sweep: return "sweep";
        case Command::OracleCheck: return "oracle-check";
        case Command::Asymptote: return "asymptote";
    }
    return "decay";
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::Exponential: return "exponential";
        case ModelKind::Quadratic: return "quadratic";
        case ModelKind::Linear: return "linear";
    }
    return "exponential";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

void RunConfig::validate() const {
    if (delta < 0.0) throw ConfigError("config key 'delta': must be >= 0");
    if (!(tau_c > 0.0)) throw ConfigError("config key 'tau_c': must be > 0");
    if (s_q < 0.0) throw ConfigError("config key 's_q': must be >= 0");
    if (!(omega_p > 0.0)) throw ConfigError("config key 'omega_p': must be > 0");
    if (!(gamma_p > 0.0)) throw ConfigError("config key 'gamma_p': must be > 0");
    if (!(beta_p > 0.0)) throw ConfigError("config key 'beta_p': must be > 0");
    if (alpha < 0.0) throw ConfigError("config key 'alpha': must be >= 0");
    if (ohmicity < 1) throw ConfigError("config key 'ohmicity': must be >= 1");
    if (!(omega_c > 0.0)) throw ConfigError("config key 'omega_c': must be > 0");
    if (n_pulses < 0) throw ConfigError("config key 'n_pulses': must be >= 0");
    if (n_pulses > 0 && !(tau_s > 0.0))
        throw ConfigError("config key 'tau_s': must be > 0 when n_pulses > 0");
    if (tau_s < 0.0) throw ConfigError("config key 'tau_s': must be >= 0");
    if (!pulse_times.empty()) {
        if (n_pulses > 0)
            throw ConfigError("config key 'pulse_times': mutually exclusive with n_pulses/tau_s");
        double prev = 0.0;
        for (double p : pulse_times) {
            if (!(p > prev))
                throw ConfigError("config key 'pulse_times': must be strictly increasing and > 0");
            prev = p;
        }
    }
    if (quad_panels < 8) throw ConfigError("config key 'quad_panels': must be >= 8");
    if (quad_levels < 0) throw ConfigError("config key 'quad_levels': must be >= 0");
    if (!(quad_rel_tol > 0.0) || quad_rel_tol > 1e-2)
        throw ConfigError("config key 'quad_rel_tol': must be in (0, 1e-2]");
    if (quad_freq_cutoff < 0.0) throw ConfigError("config key 'quad_freq_cutoff': must be >= 0");
    if (threads < 1) throw ConfigError("config key 'threads': must be >= 1");
    if (out.empty()) throw ConfigError("config key 'out': must not be empty");
    if (units != "t2" && units != "omega_p")
        throw ConfigError("config key 'units': expected t2|omega_p");

    switch (command) {
        case Command::Spectrum: {
            if (!(omega_max > omega_min)) throw ConfigError("config key 'omega_max': must exceed omega_min");
            if (!(omega_step > 0.0)) throw ConfigError("config key 'omega_step': must be > 0");
            if ((omega_max - omega_min) / omega_step > 2e6)
                throw ConfigError("config key 'omega_step': grid too large");
            if (model == ModelKind::Exponential && units == "omega_p")
                throw ConfigError("config key 'units': exponential spectra use t2 normalization");
            break;
        }
        case Command::Decay: {
            if (!(t_max > 0.0)) throw ConfigError("config key 't_max': must be > 0");
            if (!(t_step > 0.0)) throw ConfigError("config key 't_step': must be > 0");
            if (t_max / t_step > 2e6) throw ConfigError("config key 't_step': grid too large");
            if (!pulse_times.empty() && pulse_times.back() >= t_max)
                throw ConfigError("config key 'pulse_times': must all lie below t_max");
            break;
        }
        case Command::Sweep: {
            if (!(tau_s_min > 0.0)) throw ConfigError("config key 'tau_s_min': must be > 0");
            if (!(tau_s_max > tau_s_min)) throw ConfigError("config key 'tau_s_max': must exceed tau_s_min");
            if (!(tau_s_step > 0.0)) throw ConfigError("config key 'tau_s_step': must be > 0");
            const double wend = (window_end > 0.0) ? window_end : t_max;
            if (!(wend > 0.0)) throw ConfigError("config key 'window_end': must be > 0");
            const double wstart = (window_start > 0.0) ? window_start : 0.8 * wend;
            if (!(wstart < wend)) throw ConfigError("config key 'window_start': must be below window_end");
            break;
        }
        case Command::OracleCheck: {
            if (model != ModelKind::Exponential)
                throw ConfigError("config key 'model': oracle-check supports the exponential model only");
            if (oracle_pairs < 1) throw ConfigError("config key 'oracle_pairs': must be >= 1");
            if (oracle_n_max < 0) throw ConfigError("config key 'oracle_n_max': must be >= 0");
            break;
        }
        case Command::Asymptote: {
            for (double t : t_checkpoints)
                if (!(t > 0.0)) throw ConfigError("config key 't_checkpoints': values must be > 0");
            break;
        }
    }
}

std::string RunConfig::to_key_values() const {
    std::ostringstream out_text;
    for (const auto& h : schema()) out_text << h.name << " = " << h.get(*this) << "\n";
    return out_text.str();
}

std::string RunConfig::to_json() const {
    json j;
    for (const auto& h : schema()) {
        if (h.name == "pulse_times") {
            j[h.name] = pulse_times;
        } else if (h.name == "t_checkpoints") {
            j[h.name] = t_checkpoints;
        } else if (h.name == "delta" || h.name == "tau_c" || h.name == "s_q" || h.name == "omega_p" ||
                   h.name == "gamma_p" || h.name == "beta_p" || h.name == "alpha" ||
                   h.name == "omega_c" || h.name == "tau_s" || h.name == "t_max" ||
                   h.name == "t_step" || h.name == "omega_min" || h.name == "omega_max" ||
                   h.name == "omega_step" || h.name == "tau_s_min" || h.name == "tau_s_max" ||
                   h.name == "tau_s_step" || h.name == "window_start" || h.name == "window_end" ||
                   h.name == "quad_rel_tol" || h.name == "quad_freq_cutoff") {
            j[h.name] = parse_double(h.name, h.get(*this));
        } else if (h.name == "n_pulses" || h.name == "ohmicity" || h.name == "oracle_pairs" ||
                   h.name == "oracle_n_max" || h.name == "quad_panels" || h.name == "quad_levels" ||
                   h.name == "threads") {
            j[h.name] = parse_long(h.name, h.get(*this));
        } else if (h.name == "seed") {
            j[h.name] = seed;
        } else {
            j[h.name] = h.get(*this);
        }
    }
    return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;

    const auto first = text.find_first_not_of(" \t\r\n");
    const bool is_json = (first != std::string::npos && text[first] == '{');

    if (is_json) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& ex) {
            throw ConfigError(std::string("config JSON parse error: ") + ex.what());
        }
        if (!doc.is_object()) throw ConfigError("config JSON must be an object");
        for (const auto& [key, value] : doc.items()) {
            const KeyHandler* h = find_key(key);
            if (!h) throw ConfigError("unknown config key '" + key + "'");
            h->set_json(config, value);
            seen.insert(key);
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value, got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const KeyHandler* h = find_key(key);
            if (!h) throw ConfigError("unknown config key '" + key + "'");
            h->set(config, value);
            seen.insert(key);
        }
    }

    if (!seen.count("command"))
        throw ConfigError("missing required config key: 'command' "
                          "(spectrum|decay|sweep|oracle-check|asymptote)");
    resolve(config, seen);
    config.validate();
    return config;
}

RunConfig apply_env_overrides(RunConfig config) {
    std::set<std::string> seen;
    for (const auto& h : schema()) {
        std::string env_name = "DEPHASE_";
        for (char ch : h.name) env_name += static_cast<char>(ch == '-' ? '_' : std::toupper(ch));
        if (const char* value = std::getenv(env_name.c_str())) {
            h.set(config, value);
            seen.insert(h.name);
        }
    }
    if (!seen.empty()) {
        resolve(config, seen);
        config.validate();
    }
    return config;
}

}  // namespace dephase::cli
