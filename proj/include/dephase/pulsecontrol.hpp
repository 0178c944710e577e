// pulsecontrol.hpp — pi-pulse train control of pure dephasing:
// coefficient series of the multipulse decay exponent, signal intensity,
// and an independent sign-function (filter) oracle.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dephase/cumulant.hpp"

namespace dephase::pulse {

using cumulant::CorrelationFn;
using cumulant::CumulantEngine;
using quad::QuadratureConfig;

// Regular train: N pi pulses at times tau_s, 2 tau_s, ..., N tau_s after the
// initial pi/2 pulse at t = 0.
struct PulseTrain {
    int n_pulses = 0;
    double tau_s = 0.0;

    void validate() const {
        if (n_pulses < 0) throw std::invalid_argument("PulseTrain: n_pulses must be >= 0");
        if (n_pulses > 0 && !(tau_s > 0.0))
            throw std::invalid_argument("PulseTrain: tau_s must be > 0 when pulses are present");
    }
    double last_pulse_time() const { return n_pulses * tau_s; }
};

// Arbitrary pi-pulse application times; handled only by the filter oracle.
struct IrregularTrain {
    std::vector<double> pulse_times;

    void validate() const {
        double prev = 0.0;
        for (double p : pulse_times) {
            if (!(p > prev)) throw std::invalid_argument(
                "IrregularTrain: pulse_times must be strictly increasing and > 0");
            prev = p;
        }
    }
};

// One term c * S(arg) of the decay exponent. Arguments are either fixed
// multiples k*tau_s, observation-relative t - k*tau_s, or t itself.
struct CoefficientTerm {
    enum class Arg { FixedMultiple, ObservationMinus, Observation };
    Arg arg = Arg::Observation;
    int k = 0;
    int coefficient = 0;

    double time_argument(double t, double tau_s) const {
        switch (arg) {
            case Arg::FixedMultiple: return k * tau_s;
            case Arg::ObservationMinus: return t - k * tau_s;
            case Arg::Observation: return t;
        }
        return t;
    }
};

// The integer-weighted set of S arguments whose combination gives
// ln I(t) = -2 sum_i c_i S(arg_i) for a regular N-pulse train.
struct CoefficientSeries {
    int n_pulses = 0;
    std::vector<CoefficientTerm> terms;

    double evaluate(double t, double tau_s, const std::function<double(double)>& s) const {
        double acc = 0.0;
        for (const auto& term : terms) acc += term.coefficient * s(term.time_argument(t, tau_s));
        return acc;
    }
    // Lookup for golden tests; returns 0 when the term is absent.
    int coefficient_of(CoefficientTerm::Arg arg, int k) const;
};

// Build the three-group series for N pulses:
//   sum_{k=1..N} (-1)^{k+1} (4(N-k)+2) S(k tau_s)
// + sum_{n=1..N} 2 (-1)^{N+n} S(t - n tau_s)
// + (-1)^N S(t),
// which for N = 0 degenerates to the free-decay term S(t) alone.
CoefficientSeries coefficients(int n_pulses);

// ln I(t) for observation at t >= N tau_s (after the full train).
double log_intensity(double t, const PulseTrain& train, const CumulantEngine& engine);

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> log_intensity;

    void validate() const;
};

// Sample ln I over a sorted grid. Observation times inside the train see only
// the pulses already applied, so each sample evaluates the series of the
// truncated train with floor(t/tau_s) pulses (capped at n_pulses).
DecayCurve intensity_curve(const PulseTrain& train, const CumulantEngine& engine,
                           std::span<const double> t_grid);

// Independent oracle: ln I = -2 int_0^t dt1 int_0^t1 dt2 f(t1) f(t2) Re C(t1-t2)
// with the sign function f toggling between +1 and -1 at each pulse time.
// Brute-force 2-D Gauss-Legendre over the segment decomposition; never forms
// S(.) or a coefficient series, so it validates both.
// cfg.freq_cutoff (oscillation scale of C) sizes the panels; 0 uses a default.
double filter_oracle(double t, const IrregularTrain& train, const CorrelationFn& c,
                     const QuadratureConfig& cfg);

// Closed-form ln I(t_N) at the pulse-applied time t_N = N tau_s for the
// exponential correlation model, valid for even N.
double log_intensity_closed_exp(double t_n, const PulseTrain& train,
                                const models::ExponentialCorrelation& model);

}  // namespace dephase::pulse
