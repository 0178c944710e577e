#include "dephase/cumulant.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace dephase::cumulant {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - cos(w t))/w^2 through 2 sin^2(wt/2)/w^2; series branch for small wt.
double cos_kernel(double w, double t) {
    const double x = w * t;
    if (std::abs(x) < 1e-4) {
        // t^2/2 (1 - x^2/12 + x^4/360)
        const double x2 = x * x;
        return 0.5 * t * t * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0));
    }
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / (w * w);
}

}  // namespace

double s_exponential(double t, const models::ExponentialCorrelation& model) {
    if (t < 0.0) throw std::domain_error("s_exponential: t must be >= 0");
    const double tc = model.tau_c;
    // delta^2 tau_c (t - tau_c (1 - e^{-t/tau_c})); expm1 keeps small t/tau_c exact.
    return model.delta * model.delta * tc * (t + tc * std::expm1(-t / tc));
}

double s_from_spectrum(double t, const SpectrumFn& j, const QuadratureConfig& cfg) {
    if (t < 0.0) throw std::domain_error("s_from_spectrum: t must be >= 0");
    cfg.validate();
    if (!(cfg.freq_cutoff > 0.0))
        throw std::invalid_argument("s_from_spectrum: cfg.freq_cutoff must be > 0");
    if (t == 0.0) return 0.0;
    const double cutoff = cfg.freq_cutoff;
    auto f = [&](double w) { return (j(w) + j(-w)) * cos_kernel(w, t) / (2.0 * kPi); };
    const int base =
        std::max(cfg.panel_count, static_cast<int>(std::ceil(cutoff * t / kPi)));
    return quad::integrate_refined(f, 0.0, cutoff, base, cfg, "s_from_spectrum", 12);
}

double s_from_correlation(double t, const CorrelationFn& c, const QuadratureConfig& cfg) {
    if (t < 0.0) throw std::domain_error("s_from_correlation: t must be >= 0");
    cfg.validate();
    if (t == 0.0) return 0.0;
    auto f = [&](double u) { return (t - u) * c(u); };
    int base = cfg.panel_count;
    if (cfg.freq_cutoff > 0.0)
        base = std::max(base, static_cast<int>(std::ceil(cfg.freq_cutoff * t / kPi)));
    return quad::integrate_refined(f, 0.0, t, base, cfg, "s_from_correlation");
}

double s_linear_boson(double t, const models::CaldeiraLeggettDensity& d,
                      const models::ThermalConfig& thermal, const QuadratureConfig& cfg) {
    if (t < 0.0) throw std::domain_error("s_linear_boson: t must be >= 0");
    d.validate();
    thermal.validate();
    cfg.validate();
    if (t == 0.0 || d.alpha == 0.0) return 0.0;
    // I(w)(2n(w)+1)(1-cos wt)/w^2; coth(beta w/2) through P(w)+P(-w) = w coth(beta w/2)
    // gives an integrand smooth across w = 0 for every n >= 1.
    auto f = [&](double w) {
        const double coth_w = models::occupation_weight(w, thermal) +
                              models::occupation_weight(-w, thermal);  // = w(2n(w)+1)
        const double power = (d.n == 1) ? 1.0 : std::pow(w, d.n - 1);
        return d.alpha * power * std::exp(-w / d.omega_c) * coth_w * cos_kernel(w, t);
    };
    const double cutoff = (cfg.freq_cutoff > 0.0) ? cfg.freq_cutoff : 40.0 * d.omega_c;
    const int base =
        std::max(cfg.panel_count, static_cast<int>(std::ceil(cutoff * t / kPi)));
    return quad::integrate_refined(f, 0.0, cutoff, base, cfg, "s_linear_boson", 12);
}

AsymptoticRate asymptotic_rate(const SpectrumFn& j) {
    const double j0 = j(0.0);
    if (!std::isfinite(j0)) throw std::domain_error("asymptotic_rate: J(0) must be finite");
    const double rate = 0.5 * j0;
    const double t2 = (j0 > 0.0) ? 2.0 / j0 : std::numeric_limits<double>::infinity();
    return {rate, t2};
}

CumulantEngine CumulantEngine::analytic_exponential(const models::ExponentialCorrelation& model) {
    model.validate();
    return CumulantEngine(EngineMode::AnalyticExponential,
                          [model](double t) { return s_exponential(t, model); });
}

CumulantEngine CumulantEngine::spectral(SpectrumFn j, QuadratureConfig cfg) {
    cfg.validate();
    if (!(cfg.freq_cutoff > 0.0))
        throw std::invalid_argument("CumulantEngine::spectral: cfg.freq_cutoff must be > 0");
    return CumulantEngine(EngineMode::SpectralQuadrature,
                          [j = std::move(j), cfg](double t) { return s_from_spectrum(t, j, cfg); });
}

CumulantEngine CumulantEngine::time_domain(CorrelationFn c, QuadratureConfig cfg) {
    cfg.validate();
    return CumulantEngine(EngineMode::TimeDomain,
                          [c = std::move(c), cfg](double t) { return s_from_correlation(t, c, cfg); });
}

CumulantEngine CumulantEngine::linear_boson(const models::CaldeiraLeggettDensity& d,
                                            const models::ThermalConfig& thermal,
                                            QuadratureConfig cfg) {
    d.validate();
    thermal.validate();
    cfg.validate();
    return CumulantEngine(EngineMode::LinearBoson,
                          [d, thermal, cfg](double t) { return s_linear_boson(t, d, thermal, cfg); });
}

namespace {

struct STable {
    double step = 0.0;
    double support = 0.0;
    std::vector<double> s;  // S at edges
    std::vector<double> w;  // S' at edges (prefix integral of Re C)

    double eval(double x) const {
        if (x >= support) return s.back() + (x - support) * w.back();
        const double pos = x / step;
        std::size_t i = static_cast<std::size_t>(pos);
        if (i >= s.size() - 1) i = s.size() - 2;
        const double u = (x - i * step) / step;
        // cubic Hermite with derivatives from the W table (S'' = Re C is bounded)
        const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        const double h10 = u * (1.0 - u) * (1.0 - u);
        const double h01 = u * u * (3.0 - 2.0 * u);
        const double h11 = u * u * (u - 1.0);
        return h00 * s[i] + h10 * step * w[i] + h01 * s[i + 1] + h11 * step * w[i + 1];
    }
};

}  // namespace

CumulantEngine CumulantEngine::tabulated(const CorrelationFn& c, double support, int table_points,
                                         QuadratureConfig cfg) {
    cfg.validate();
    if (!(support > 0.0)) throw std::invalid_argument("CumulantEngine::tabulated: support must be > 0");
    if (table_points < 16) throw std::invalid_argument("CumulantEngine::tabulated: too few table points");

    auto table = std::make_shared<STable>();
    table->step = support / table_points;
    table->support = support;
    table->s.resize(table_points + 1);
    table->w.resize(table_points + 1);

    const auto& rule = quad::GaussLegendre::cached(16);
    const double hstep = table->step;
    table->s[0] = 0.0;
    table->w[0] = 0.0;
    // March the prefix integrals: W_{j+1} = W_j + int C; S_{j+1} = S_j + h W_j + int (x_{j+1}-u) C.
    for (int jn = 0; jn < table_points; ++jn) {
        const double a = jn * hstep;
        const double b = a + hstep;
        const double mid = 0.5 * (a + b), half = 0.5 * hstep;
        double int_c = 0.0, int_wc = 0.0;
        for (int i = 0; i < rule.order(); ++i) {
            const double u = mid + half * rule.nodes()[i];
            const double cu = c(u);
            int_c += half * rule.weights()[i] * cu;
            int_wc += half * rule.weights()[i] * (b - u) * cu;
        }
        table->s[jn + 1] = table->s[jn] + hstep * table->w[jn] + int_wc;
        table->w[jn + 1] = table->w[jn] + int_c;
    }

    const double tail = table->w.back();
    return CumulantEngine(EngineMode::Tabulated,
                          [table](double t) {
                              if (t < 0.0) throw std::domain_error("CumulantEngine: t must be >= 0");
                              return table->eval(t);
                          },
                          tail);
}

}  // namespace dephase::cumulant
