// cumulant.hpp — second cumulant S(t) engines and long-time asymptotics

#pragma once

#include <functional>
#include <memory>

#include "dephase/models.hpp"
#include "dephase/quadrature.hpp"

namespace dephase::cumulant {

using quad::QuadratureConfig;

using SpectrumFn = std::function<double(double)>;     // J(omega)
using CorrelationFn = std::function<double(double)>;  // Re C(u), u >= 0

// Closed form for the exponential correlation model:
// S(t) = delta^2 tau_c { t - tau_c (1 - exp(-t/tau_c)) }, nonnegative, S(0) = S'(0) = 0.
double s_exponential(double t, const models::ExponentialCorrelation& model);

// Frequency-domain route: S(t) = int dw/2pi J(w) (1-cos wt)/w^2, folded onto
// [0, cutoff] using J(w)+J(-w). The (1-cos)/w^2 kernel is evaluated through
// 2 sin^2(wt/2)/w^2 with a Taylor branch inside the small-(wt) window where the
// removable w = 0 singularity would otherwise lose digits.
// cfg.freq_cutoff must be > 0 (integration cutoff).
double s_from_spectrum(double t, const SpectrumFn& j, const QuadratureConfig& cfg);

// Time-domain route. Stationarity collapses the ordered double integral to
// S(t) = int_0^t (t-u) Re C(u) du, then panel quadrature. cfg.freq_cutoff is the
// fastest oscillation scale of C (used to size panels); 0 falls back to panel_count.
double s_from_correlation(double t, const CorrelationFn& c, const QuadratureConfig& cfg);

// Linear boson reservoir: S(t) = int_0^inf dw I(w) (2n(w)+1) (1-cos wt)/w^2.
double s_linear_boson(double t, const models::CaldeiraLeggettDensity& d,
                      const models::ThermalConfig& thermal, const QuadratureConfig& cfg);

struct AsymptoticRate {
    double rate;  // J(0)/2, the long-time dephasing rate
    double t2;    // 2/J(0); +infinity when J(0) = 0
};
AsymptoticRate asymptotic_rate(const SpectrumFn& j);

enum class EngineMode { AnalyticExponential, SpectralQuadrature, TimeDomain, LinearBoson, Tabulated };

// Immutable strategy object producing S(t); cheap to copy, safe to share
// across threads (evaluation at different t is the parallelization axis).
class CumulantEngine {
  public:
    static CumulantEngine analytic_exponential(const models::ExponentialCorrelation& model);
    static CumulantEngine spectral(SpectrumFn j, QuadratureConfig cfg);
    static CumulantEngine time_domain(CorrelationFn c, QuadratureConfig cfg);
    static CumulantEngine linear_boson(const models::CaldeiraLeggettDensity& d,
                                       const models::ThermalConfig& thermal, QuadratureConfig cfg);
    // Dense table of S on [0, support] built once from the correlation function;
    // beyond the support S continues exactly linearly (the correlation has died).
    // Queries interpolate with cubic Hermite segments using S' = int_0^x Re C.
    static CumulantEngine tabulated(const CorrelationFn& c, double support, int table_points,
                                    QuadratureConfig cfg);

    double s(double t) const { return s_fn_(t); }
    EngineMode mode() const { return mode_; }

    // S'(t) at the right edge of a tabulated engine (the asymptotic rate estimate);
    // only meaningful for Tabulated mode.
    double tail_slope() const { return tail_slope_; }

  private:
    CumulantEngine(EngineMode mode, std::function<double(double)> fn, double tail_slope = 0.0)
        : mode_(mode), s_fn_(std::move(fn)), tail_slope_(tail_slope) {}

    EngineMode mode_;
    std::function<double(double)> s_fn_;
    double tail_slope_ = 0.0;
};

}  // namespace dephase::cumulant
