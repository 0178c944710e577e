// analysis.hpp — decay-time extraction, pulse-interval sweeps, spectral peaks,
// asymptotic-law verification

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dephase/cumulant.hpp"
#include "dephase/pulsecontrol.hpp"

namespace dephase::analysis {

class FitError : public std::runtime_error {
  public:
    explicit FitError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

struct FitResult {
    double decay_time = 0.0;    // tau_I = -1/slope of ln I vs t
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    int points = 0;
};

// Least-squares line through (t, ln I) samples inside [window_start, window_end].
// Throws FitError when fewer than 2 samples fall in the window or when the
// fitted slope is non-negative (no decay).
FitResult fit_decay_time(const pulse::DecayCurve& curve, double window_start, double window_end);

// Effective dephasing time T2e = T2 / (1 + (1/N - 2) tau_c/tau_s), the
// large-tau_s analytic approximation. Domain error when the denominator is
// not positive (outside the validity regime).
double effective_t2_formula(int n_pulses, double tau_s, const models::ExponentialCorrelation& model);

struct SweepRow {
    double tau_s = 0.0;
    double tau_i = 0.0;         // fitted intensity decay time (NaN on row error)
    double t2e_formula = 0.0;   // analytic T2e when an exponential model is attached, else NaN
    double residual = 0.0;      // fit residual rms (NaN on row error)
    int n_pulses = 0;
    bool ok = false;
    std::string message;        // row-level diagnostic when !ok
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepSpec {
    std::vector<double> tau_s_grid;          // strictly increasing
    double window_start = 0.0;
    double window_end = 0.0;
    const cumulant::CumulantEngine* engine = nullptr;
    // When set, the analytic T2e column is filled from this model.
    const models::ExponentialCorrelation* exp_model = nullptr;
    int threads = 1;
};

// For each tau_s: N = ceil(window_end/tau_s) pulses, ln I sampled at the
// pulse-applied times inside the fit window, then a decay-time fit.
// Rows are computed independently (optionally in parallel) and returned in
// grid order regardless of scheduling.
SweepResult sweep_tau_s(const SweepSpec& spec);

// Local maxima of a sampled spectrum by 3-point comparison, refined with the
// parabolic vertex through the three samples.
std::vector<double> find_peaks(const models::SpectrumGrid& grid);

struct AsymptoteRow {
    double t = 0.0;
    double s_over_t = 0.0;
    double rel_dev = 0.0;  // |S/t - J(0)/2| / (J(0)/2); NaN when J(0) = 0
};

struct AsymptoteReport {
    double rate = 0.0;  // J(0)/2
    double t2 = 0.0;    // 2/J(0), +inf when J(0)=0
    std::vector<AsymptoteRow> rows;
    bool passed = false;  // deviation (or S/t itself when J(0)=0) shrinks with t
};

AsymptoteReport verify_asymptote(const cumulant::CumulantEngine& engine,
                                 const cumulant::SpectrumFn& spectrum,
                                 std::span<const double> t_checkpoints);

}  // namespace dephase::analysis
