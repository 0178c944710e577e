// config.hpp — run configuration: strict flat key=value or JSON documents

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dephase::cli {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

enum class Command { Spectrum, Decay, Sweep, OracleCheck, Asymptote };
enum class ModelKind { Exponential, Quadratic, Linear };
enum class OutputFormat { Csv, Json };

struct RunConfig {
    Command command = Command::Decay;
    ModelKind model = ModelKind::Exponential;
    std::string units;  // "t2" or "omega_p"; defaulted from the model kind

    // exponential model
    double delta = 1.0;
    double tau_c = 1.0;
    // quadratic model (s derived from s_q)
    double s_q = 0.025;
    double omega_p = 1.0;
    double gamma_p = 0.4;
    double beta_p = 1.0;
    // linear model
    double alpha = 1.0;
    int ohmicity = 1;
    double omega_c = 1.0;

    // pulse train
    int n_pulses = 0;
    double tau_s = 0.0;
    std::vector<double> pulse_times;  // irregular train (decay command only)

    // grids
    double t_max = 10.0;
    double t_step = 0.1;
    double omega_min = -4.0;
    double omega_max = 4.0;
    double omega_step = 0.02;
    double tau_s_min = 0.0;
    double tau_s_max = 0.0;
    double tau_s_step = 0.0;
    double window_start = 0.0;  // 0 = default 0.8 * window_end
    double window_end = 0.0;    // 0 = default t_max

    // oracle-check
    int oracle_pairs = 20;
    int oracle_n_max = 4;
    unsigned seed = 12345;

    // asymptote checkpoints
    std::vector<double> t_checkpoints;

    // quadrature
    int quad_panels = 64;
    int quad_levels = 5;
    double quad_rel_tol = 1e-9;
    double quad_freq_cutoff = 0.0;

    // output
    std::string out = "out.csv";
    OutputFormat format = OutputFormat::Csv;
    int threads = 1;

    bool operator==(const RunConfig&) const = default;

    // Full validation of cross-field invariants; throws ConfigError.
    void validate() const;

    // Canonical flat key=value serialization (round-trips through parse_config).
    std::string to_key_values() const;
    std::string to_json() const;
};

// Strict parse of a flat key=value document (one pair per line, '#' comments)
// or a JSON object (detected by a leading '{'). Unknown keys, malformed values
// and missing required keys are ConfigErrors naming the key.
RunConfig parse_config(const std::string& text);

// Apply DEPHASE_<KEY>=value environment overrides on top of a parsed config.
RunConfig apply_env_overrides(RunConfig config);

std::string to_string(Command c);
std::string to_string(ModelKind m);
std::string to_string(OutputFormat f);

}  // namespace dephase::cli
