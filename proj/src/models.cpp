#include "dephase/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dephase::models {

namespace {
constexpr double kPi = std::numbers::pi;
}

void SpectrumGrid::validate(double positivity_tol) const {
    if (omegas.size() != values.size())
        throw std::invalid_argument("SpectrumGrid: omegas/values size mismatch");
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1]))
            throw std::invalid_argument("SpectrumGrid: omegas must be strictly increasing");
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("SpectrumGrid: non-finite value");
        if (v < -positivity_tol) throw std::invalid_argument("SpectrumGrid: negative spectral value");
    }
}

double bose_occupation(double omega, const ThermalConfig& thermal) {
    thermal.validate();
    if (omega == 0.0) throw std::domain_error("bose_occupation: pole at omega = 0");
    return 1.0 / std::expm1(thermal.beta_p * omega);
}

double occupation_weight(double x, const ThermalConfig& thermal) {
    if (x == 0.0) return 1.0 / thermal.beta_p;
    return x / (-std::expm1(-thermal.beta_p * x));
}

double exp_correlation(double t, const ExponentialCorrelation& model) {
    return model.delta * model.delta * std::exp(-std::abs(t) / model.tau_c);
}

double exp_spectrum(double omega, const ExponentialCorrelation& model) {
    const double wt = omega * model.tau_c;
    return 2.0 * model.delta * model.delta * model.tau_c / (1.0 + wt * wt);
}

double gaussian_density(double e, const GaussianCouplingDensity& g) {
    const double u = (e - g.omega_p) / g.gamma_p;
    return g.s / (std::sqrt(kPi) * g.gamma_p) * std::exp(-u * u);
}

double coupling_support_max(const GaussianCouplingDensity& g) {
    return g.omega_p + 8.0 * g.gamma_p;
}

double quadratic_spectrum(double omega, const GaussianCouplingDensity& g,
                          const ThermalConfig& thermal, const QuadratureConfig& cfg) {
    g.validate();
    thermal.validate();
    cfg.validate();
    if (g.s == 0.0) return 0.0;

    // The e-window must include everywhere h(e) is non-negligible; extending
    // below zero keeps detailed balance exact at the quadrature level.
    const double hi = coupling_support_max(g);
    const double lo = std::min(0.0, g.omega_p - 8.0 * g.gamma_p);

    auto f = [&](double e) {
        const double pe = occupation_weight(e, thermal);
        const double pme = occupation_weight(omega - e, thermal);
        const double emission_and_mixed =
            pe * pme * (gaussian_density(omega - e, g) + 2.0 * gaussian_density(e - omega, g));
        const double absorption = occupation_weight(-e, thermal) * occupation_weight(omega + e, thermal) *
                                  gaussian_density(-(omega + e), g);
        return gaussian_density(e, g) * (emission_and_mixed + absorption);
    };

    // Panels sized to the coupling-density width.
    const int base = std::max(cfg.panel_count, static_cast<int>(std::ceil((hi - lo) / g.gamma_p)) * 2);
    return 2.0 * kPi * quad::integrate_refined(f, lo, hi, base, cfg, "quadratic_spectrum");
}

std::complex<double> quadratic_correlation(double t, const GaussianCouplingDensity& g,
                                           const ThermalConfig& thermal, const QuadratureConfig& cfg) {
    g.validate();
    thermal.validate();
    cfg.validate();
    if (g.s == 0.0) return {0.0, 0.0};

    const double lo = std::max(0.0, g.omega_p - 8.0 * g.gamma_p);
    const double hi = coupling_support_max(g);

    // C(t) = (A + B)^2 with A the emission amplitude and B the absorption one.
    const auto& rule = quad::GaussLegendre::cached(16);
    int panels = std::max(cfg.panel_count,
                          static_cast<int>(std::ceil((hi - lo) * (std::abs(t) + 1.0) / kPi)));
    panels = std::max(panels, static_cast<int>(std::ceil((hi - lo) / g.gamma_p)) * 2);

    std::complex<double> amp_prev{0.0, 0.0};
    for (int level = 0;; ++level) {
        std::complex<double> amp{0.0, 0.0};
        const double w = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double a = lo + p * w;
            const double mid = a + 0.5 * w, half = 0.5 * w;
            for (int i = 0; i < rule.order(); ++i) {
                const double e = mid + half * rule.nodes()[i];
                const double he = gaussian_density(e, g);
                const double pa = occupation_weight(e, thermal);
                const double pb = occupation_weight(-e, thermal);
                const double phase = e * t;
                const std::complex<double> em{std::cos(phase), -std::sin(phase)};
                amp += half * rule.weights()[i] * (he * pa * em + he * pb * std::conj(em));
            }
        }
        if (level > 0 && std::abs(amp - amp_prev) <= cfg.rel_tol * std::abs(amp) + 1e-300)
            return amp * amp;
        if (level >= cfg.refinement_levels && level > 0)
            throw quad::NumericalError("quadratic_correlation: amplitude integral did not converge");
        amp_prev = amp;
        panels *= 2;
    }
}

double linear_spectrum(double omega, const CaldeiraLeggettDensity& d, const ThermalConfig& thermal) {
    d.validate();
    thermal.validate();
    if (d.alpha == 0.0) return 0.0;
    const double a = std::abs(omega);
    // |w|^(n-1) P(w) equals w^n (n(w)+1) for w > 0 and |w|^n n(|w|) for w < 0;
    // at w = 0 it is the one-sided limit (alpha/beta for n = 1, 0 otherwise).
    const double pw = occupation_weight(omega, thermal);
    const double power = (d.n == 1) ? 1.0 : std::pow(a, d.n - 1);
    if (omega == 0.0 && d.n >= 2) return 0.0;
    return 2.0 * kPi * d.alpha * power * std::exp(-a / d.omega_c) * pw;
}

}  // namespace dephase::models
