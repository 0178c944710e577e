#include "dephase/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace dephase::analysis {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

FitResult fit_decay_time(const pulse::DecayCurve& curve, double window_start, double window_end) {
    curve.validate();
    if (!(window_end > window_start)) throw FitError("fit window is empty");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < window_start || t > window_end) continue;
        const double y = curve.log_intensity[i];
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++n;
    }
    if (n < 2) throw FitError("fit window contains fewer than 2 samples");
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    if (!(slope < 0.0)) throw FitError("no decay: fitted slope of ln I is non-negative");

    double ss = 0.0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < window_start || t > window_end) continue;
        const double r = curve.log_intensity[i] - (intercept + slope * t);
        ss += r * r;
    }
    return {-1.0 / slope, slope, intercept, std::sqrt(ss / n), n};
}

double effective_t2_formula(int n_pulses, double tau_s, const models::ExponentialCorrelation& model) {
    model.validate();
    if (n_pulses < 1) throw std::invalid_argument("effective_t2_formula: n_pulses must be >= 1");
    if (!(tau_s > 0.0)) throw std::invalid_argument("effective_t2_formula: tau_s must be > 0");
    const double denom = 1.0 + (1.0 / n_pulses - 2.0) * model.tau_c / tau_s;
    if (!(denom > 0.0))
        throw std::domain_error("effective_t2_formula: outside validity regime (denominator <= 0)");
    return model.dephasing_time() / denom;
}

namespace {

SweepRow sweep_one(double tau_s, const SweepSpec& spec) {
    SweepRow row;
    row.tau_s = tau_s;
    row.t2e_formula = kNaN;
    row.tau_i = kNaN;
    row.residual = kNaN;
    const int n_pulses = static_cast<int>(std::ceil(spec.window_end / tau_s - 1e-12));
    row.n_pulses = n_pulses;
    if (spec.exp_model) {
        try {
            row.t2e_formula = effective_t2_formula(n_pulses, tau_s, *spec.exp_model);
        } catch (const std::exception&) {
            // outside the formula's regime; leave NaN
        }
    }
    try {
        pulse::DecayCurve curve;
        for (int k = 1; k <= n_pulses; ++k) {
            const double t = k * tau_s;
            if (t < spec.window_start - 1e-12 || t > spec.window_end + 1e-12) continue;
            pulse::PulseTrain truncated{k, tau_s};
            curve.times.push_back(t);
            curve.log_intensity.push_back(pulse::log_intensity(t, truncated, *spec.engine));
        }
        const auto fit = fit_decay_time(curve, spec.window_start - 1e-12, spec.window_end + 1e-12);
        row.tau_i = fit.decay_time;
        row.residual = fit.residual_rms;
        row.ok = true;
    } catch (const std::exception& ex) {
        row.ok = false;
        row.message = ex.what();
    }
    return row;
}

}  // namespace

SweepResult sweep_tau_s(const SweepSpec& spec) {
    if (!spec.engine) throw std::invalid_argument("sweep_tau_s: engine is required");
    if (!(spec.window_end > spec.window_start) || !(spec.window_start >= 0.0))
        throw std::invalid_argument("sweep_tau_s: invalid fit window");
    for (std::size_t i = 1; i < spec.tau_s_grid.size(); ++i)
        if (!(spec.tau_s_grid[i] > spec.tau_s_grid[i - 1]))
            throw std::invalid_argument("sweep_tau_s: tau_s grid must be strictly increasing");
    for (double ts : spec.tau_s_grid)
        if (!(ts > 0.0)) throw std::invalid_argument("sweep_tau_s: tau_s values must be > 0");

    SweepResult result;
    result.rows.resize(spec.tau_s_grid.size());
    const int threads = std::max(1, spec.threads);
    if (threads == 1 || spec.tau_s_grid.size() < 2) {
        for (std::size_t i = 0; i < spec.tau_s_grid.size(); ++i)
            result.rows[i] = sweep_one(spec.tau_s_grid[i], spec);
        return result;
    }
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    const int nworkers = std::min<std::size_t>(threads, spec.tau_s_grid.size());
    for (int w = 0; w < nworkers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (next >= spec.tau_s_grid.size()) return;
                    i = next++;
                }
                result.rows[i] = sweep_one(spec.tau_s_grid[i], spec);
            }
        });
    }
    for (auto& th : pool) th.join();
    return result;
}

std::vector<double> find_peaks(const models::SpectrumGrid& grid) {
    grid.validate(1e-9);
    std::vector<double> peaks;
    if (grid.omegas.size() < 3) throw std::invalid_argument("find_peaks: need at least 3 samples");
    for (std::size_t i = 1; i + 1 < grid.omegas.size(); ++i) {
        const double y0 = grid.values[i - 1], y1 = grid.values[i], y2 = grid.values[i + 1];
        if (!(y1 > y0 && y1 > y2)) continue;
        // Parabolic vertex through the three samples (uniform or not).
        const double x0 = grid.omegas[i - 1], x1 = grid.omegas[i], x2 = grid.omegas[i + 1];
        const double d1 = (y1 - y0) / (x1 - x0);
        const double d2 = (y2 - y1) / (x2 - x1);
        const double curv = (d2 - d1) / (0.5 * (x2 - x0));
        double x = x1;
        if (curv < 0.0) {
            const double vertex = 0.5 * (x0 + x1) - d1 / curv;
            if (vertex > x0 && vertex < x2) x = vertex;
        }
        peaks.push_back(x);
    }
    return peaks;
}

AsymptoteReport verify_asymptote(const cumulant::CumulantEngine& engine,
                                 const cumulant::SpectrumFn& spectrum,
                                 std::span<const double> t_checkpoints) {
    AsymptoteReport report;
    const auto rate = cumulant::asymptotic_rate(spectrum);
    report.rate = rate.rate;
    report.t2 = rate.t2;
    for (double t : t_checkpoints) {
        if (!(t > 0.0)) throw std::invalid_argument("verify_asymptote: checkpoints must be > 0");
        AsymptoteRow row;
        row.t = t;
        row.s_over_t = engine.s(t) / t;
        row.rel_dev = (report.rate > 0.0) ? std::abs(row.s_over_t - report.rate) / report.rate : kNaN;
        report.rows.push_back(row);
    }
    if (report.rows.size() >= 2) {
        if (report.rate > 0.0)
            report.passed = report.rows.back().rel_dev < report.rows.front().rel_dev;
        else
            report.passed = report.rows.back().s_over_t < report.rows.front().s_over_t;
    }
    return report;
}

}  // namespace dephase::analysis
