#include "dephase/pulsecontrol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dephase::pulse {

int CoefficientSeries::coefficient_of(CoefficientTerm::Arg arg, int k) const {
    for (const auto& term : terms)
        if (term.arg == arg && (arg == CoefficientTerm::Arg::Observation || term.k == k))
            return term.coefficient;
    return 0;
}

CoefficientSeries coefficients(int n_pulses) {
    if (n_pulses < 0) throw std::invalid_argument("coefficients: n_pulses must be >= 0");
    CoefficientSeries series;
    series.n_pulses = n_pulses;
    if (n_pulses == 0) {
        series.terms.push_back({CoefficientTerm::Arg::Observation, 0, 1});
        return series;
    }
    const int sign_n = (n_pulses % 2 == 0) ? 1 : -1;
    for (int k = 1; k <= n_pulses; ++k) {
        const int sk = (k % 2 == 1) ? 1 : -1;  // (-1)^{k+1}
        series.terms.push_back({CoefficientTerm::Arg::FixedMultiple, k, sk * (4 * (n_pulses - k) + 2)});
    }
    for (int n = 1; n <= n_pulses; ++n) {
        const int sn = ((n_pulses + n) % 2 == 0) ? 1 : -1;  // (-1)^{N+n}
        series.terms.push_back({CoefficientTerm::Arg::ObservationMinus, n, 2 * sn});
    }
    series.terms.push_back({CoefficientTerm::Arg::Observation, 0, sign_n});
    return series;
}

double log_intensity(double t, const PulseTrain& train, const CumulantEngine& engine) {
    train.validate();
    if (t < train.last_pulse_time() * (1.0 - 1e-12))
        throw std::domain_error("log_intensity: observation before the last pulse");
    const auto series = coefficients(train.n_pulses);
    const double exponent =
        series.evaluate(std::max(t, train.last_pulse_time()), train.tau_s,
                        [&engine](double x) { return engine.s(x); });
    return -2.0 * exponent;
}

void DecayCurve::validate() const {
    if (times.size() != log_intensity.size())
        throw std::invalid_argument("DecayCurve: times/log_intensity size mismatch");
    if (!log_intensity.empty() && log_intensity.front() > 1e-12)
        throw std::invalid_argument("DecayCurve: log intensity must start <= 0");
}

DecayCurve intensity_curve(const PulseTrain& train, const CumulantEngine& engine,
                           std::span<const double> t_grid) {
    train.validate();
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw std::invalid_argument("intensity_curve: t_grid must be sorted");
    DecayCurve curve;
    curve.times.assign(t_grid.begin(), t_grid.end());
    curve.log_intensity.reserve(t_grid.size());
    int applied = 0;
    CoefficientSeries series = coefficients(0);
    for (double t : t_grid) {
        if (t < 0.0) throw std::domain_error("intensity_curve: negative observation time");
        int k = (train.n_pulses > 0)
                    ? static_cast<int>(std::floor(t / train.tau_s * (1.0 + 1e-15)))
                    : 0;
        k = std::min(k, train.n_pulses);
        if (k != applied || curve.log_intensity.empty()) {
            series = coefficients(k);
            applied = k;
        }
        const double exponent =
            series.evaluate(t, train.tau_s, [&engine](double x) { return engine.s(x); });
        curve.log_intensity.push_back(-2.0 * exponent);
    }
    return curve;
}

namespace {

// Ordered double integral of f(t1) f(t2) Re C(t1-t2) over 0 <= t2 <= t1 <= t
// for a fixed panel count per unit segment; segments split at pulse times.
double sign_weighted_double_integral(const std::vector<double>& breaks, const CorrelationFn& c,
                                     double panels_per_unit, int order) {
    const auto& rule = quad::GaussLegendre::cached(order);
    const int nseg = static_cast<int>(breaks.size()) - 1;

    // Per-segment panel edges and cached sign.
    std::vector<std::vector<double>> edges(nseg);
    std::vector<int> sign(nseg);
    for (int i = 0; i < nseg; ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const int p = std::max(1, static_cast<int>(std::ceil((b - a) * panels_per_unit)));
        edges[i].resize(p + 1);
        for (int q = 0; q <= p; ++q) edges[i][q] = a + (b - a) * q / p;
        sign[i] = (i % 2 == 0) ? 1 : -1;
    }

    double total = 0.0;
    for (int i = 0; i < nseg; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double sij = sign[i] * sign[j];
            if (j < i) {
                // Full rectangle seg_i x seg_j (t1 > t2 everywhere): tensor rule.
                double block = 0.0;
                for (std::size_t q1 = 0; q1 + 1 < edges[i].size(); ++q1) {
                    const double m1 = 0.5 * (edges[i][q1] + edges[i][q1 + 1]);
                    const double h1 = 0.5 * (edges[i][q1 + 1] - edges[i][q1]);
                    for (std::size_t q2 = 0; q2 + 1 < edges[j].size(); ++q2) {
                        const double m2 = 0.5 * (edges[j][q2] + edges[j][q2 + 1]);
                        const double h2 = 0.5 * (edges[j][q2 + 1] - edges[j][q2]);
                        double cell = 0.0;
                        for (int a1 = 0; a1 < rule.order(); ++a1) {
                            const double t1 = m1 + h1 * rule.nodes()[a1];
                            double row = 0.0;
                            for (int a2 = 0; a2 < rule.order(); ++a2)
                                row += rule.weights()[a2] * c(t1 - (m2 + h2 * rule.nodes()[a2]));
                            cell += rule.weights()[a1] * row;
                        }
                        block += h1 * h2 * cell;
                    }
                }
                total += sij * block;
            } else {
                // Diagonal triangle: inner integral over [seg start, t1];
                // the lag t1-t2 stays >= 0 so Re C is smooth on the cell.
                const double a = breaks[i];
                double block = 0.0;
                for (std::size_t q1 = 0; q1 + 1 < edges[i].size(); ++q1) {
                    const double m1 = 0.5 * (edges[i][q1] + edges[i][q1 + 1]);
                    const double h1 = 0.5 * (edges[i][q1 + 1] - edges[i][q1]);
                    for (int a1 = 0; a1 < rule.order(); ++a1) {
                        const double t1 = m1 + h1 * rule.nodes()[a1];
                        const double hh = 0.5 * (t1 - a);
                        const double mm = 0.5 * (t1 + a);
                        double row = 0.0;
                        for (int a2 = 0; a2 < rule.order(); ++a2)
                            row += rule.weights()[a2] * c(t1 - (mm + hh * rule.nodes()[a2]));
                        block += rule.weights()[a1] * h1 * hh * row;
                    }
                }
                total += sij * block;
            }
        }
    }
    return total;
}

}  // namespace

double filter_oracle(double t, const IrregularTrain& train, const CorrelationFn& c,
                     const QuadratureConfig& cfg) {
    train.validate();
    cfg.validate();
    if (!(t > 0.0)) {
        if (t == 0.0 && train.pulse_times.empty()) return 0.0;
        throw std::domain_error("filter_oracle: t must be > 0");
    }
    if (!train.pulse_times.empty() && train.pulse_times.back() >= t)
        throw std::domain_error("filter_oracle: all pulse times must be < t");

    std::vector<double> breaks;
    breaks.reserve(train.pulse_times.size() + 2);
    breaks.push_back(0.0);
    breaks.insert(breaks.end(), train.pulse_times.begin(), train.pulse_times.end());
    breaks.push_back(t);

    // Panels per unit time from the oscillation scale of C; doubling refinement.
    double per_unit = (cfg.freq_cutoff > 0.0) ? cfg.freq_cutoff / 3.0 : 4.0 / t;
    per_unit = std::max(per_unit, static_cast<double>(breaks.size()) / t);
    double prev = sign_weighted_double_integral(breaks, c, per_unit, 16);
    for (int level = 0; level < std::max(1, cfg.refinement_levels); ++level) {
        per_unit *= 2.0;
        const double next = sign_weighted_double_integral(breaks, c, per_unit, 16);
        if (std::abs(next - prev) <= cfg.rel_tol * std::abs(next) + 1e-14) return -2.0 * next;
        prev = next;
    }
    std::ostringstream msg;
    msg << "filter_oracle: double quadrature did not converge at t = " << t << " with "
        << train.pulse_times.size() << " pulses (rel_tol " << cfg.rel_tol << ")";
    throw quad::NumericalError(msg.str());
}

double log_intensity_closed_exp(double t_n, const PulseTrain& train,
                                const models::ExponentialCorrelation& model) {
    train.validate();
    model.validate();
    const int n = train.n_pulses;
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("log_intensity_closed_exp: requires even n_pulses >= 2");
    if (std::abs(t_n - train.last_pulse_time()) > 1e-9 * std::max(1.0, train.last_pulse_time()))
        throw std::domain_error("log_intensity_closed_exp: t_n must equal n_pulses * tau_s");

    const double tc = model.tau_c;
    const double inv_t2 = model.delta * model.delta * tc;
    // Overflow-safe regrouping: with A = e^{-tau_s/tau_c} and E = e^{-t_N/tau_c},
    // e^{(tau_s - t_N)/tau_c}/(1+e^{tau_s/tau_c}) = E/(1+A) and
    // 1/(1+e^{tau_s/tau_c}) = A/(1+A).
    const double a = std::exp(-train.tau_s / tc);
    const double e = std::exp(-t_n / tc);
    const double term2 = (1.0 + e - 2.0 * n) * tc;
    const double term3 = tc * (-2.0 * e / (1.0 + a) + (2.0 * e + 4.0 * n) * a / (1.0 + a));
    const double term4 = -4.0 * tc * a * (1.0 + e * a) / ((1.0 + a) * (1.0 + a));
    return -2.0 * inv_t2 * (t_n + term2 + term3 + term4);
}

}  // namespace dephase::pulse
