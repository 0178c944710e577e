// models.hpp — reservoir models: correlation functions, coupling densities, power spectra

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "dephase/quadrature.hpp"

namespace dephase::models {

using quad::QuadratureConfig;

// Exponentially decaying reservoir correlation C(t) = delta^2 exp(-|t|/tau_c).
// The associated pure-dephasing time is T2 = 1/(delta^2 tau_c).
struct ExponentialCorrelation {
    double delta = 1.0;   // interaction strength (inverse time)
    double tau_c = 1.0;   // reservoir correlation time

    void validate() const {
        if (delta < 0.0) throw std::invalid_argument("ExponentialCorrelation: delta must be >= 0");
        if (!(tau_c > 0.0)) throw std::invalid_argument("ExponentialCorrelation: tau_c must be > 0");
    }
    double dephasing_time() const { return 1.0 / (delta * delta * tau_c); }
};

enum class Units { OmegaP, T2 };

// Dimensionless inverse temperature beta_p = hbar*omega_ref/(kB T); the reference
// frequency is omega_p for the quadratic boson model and omega_c for the linear one.
struct ThermalConfig {
    double beta_p = 1.0;
    Units units = Units::OmegaP;

    void validate() const {
        if (!(beta_p > 0.0)) throw std::invalid_argument("ThermalConfig: beta_p must be > 0");
    }
};

// Gaussian coupling density h(e) = s/(sqrt(pi) gamma_p) exp(-(e-omega_p)^2/gamma_p^2).
struct GaussianCouplingDensity {
    double s = 0.0;        // overall coupling scale, S_Q = s^2
    double omega_p = 1.0;  // mean boson frequency
    double gamma_p = 0.1;  // width

    void validate() const {
        if (s < 0.0) throw std::invalid_argument("GaussianCouplingDensity: s must be >= 0");
        if (!(omega_p > 0.0)) throw std::invalid_argument("GaussianCouplingDensity: omega_p must be > 0");
        if (!(gamma_p > 0.0)) throw std::invalid_argument("GaussianCouplingDensity: gamma_p must be > 0");
    }
};

// Caldeira-Leggett coupling density I(w) = alpha w^n exp(-w/omega_c).
struct CaldeiraLeggettDensity {
    double alpha = 1.0;   // coupling strength
    int n = 1;            // ohmicity exponent (1 = ohmic, >= 2 superohmic)
    double omega_c = 1.0; // cutoff frequency

    void validate() const {
        if (alpha < 0.0) throw std::invalid_argument("CaldeiraLeggettDensity: alpha must be >= 0");
        if (n < 1) throw std::invalid_argument("CaldeiraLeggettDensity: n must be >= 1");
        if (!(omega_c > 0.0)) throw std::invalid_argument("CaldeiraLeggettDensity: omega_c must be > 0");
    }
};

// Sampled power spectrum on a strictly increasing frequency grid.
struct SpectrumGrid {
    std::vector<double> omegas;
    std::vector<double> values;

    void validate(double positivity_tol = 1e-12) const;
};

// Bose occupation n(w) = 1/(exp(beta w) - 1). Pole at w = 0.
double bose_occupation(double omega, const ThermalConfig& thermal);

// Smooth occupation weight P(x) = x/(1 - exp(-beta x)) = x (n(x)+1); P(0) = 1/beta.
// Satisfies P(-x) = exp(-beta x) P(x) and P(-x) = x n(x); it is the entire
// function that keeps the boson-model integrands finite across w = 0.
double occupation_weight(double x, const ThermalConfig& thermal);

double exp_correlation(double t, const ExponentialCorrelation& model);

// Lorentzian power spectrum of the exponential model, J(w) = 2 delta^2 tau_c/(1+w^2 tau_c^2).
double exp_spectrum(double omega, const ExponentialCorrelation& model);

double gaussian_density(double e, const GaussianCouplingDensity& g);

// Power spectrum of the quadratically coupled boson reservoir: a single integral
// over the coupling density with two-boson emission, mixed, and two-boson
// absorption terms. h is evaluated by the same Gaussian formula at negative
// arguments (exponentially small there).
double quadratic_spectrum(double omega, const GaussianCouplingDensity& g,
                          const ThermalConfig& thermal, const QuadratureConfig& cfg);

// Correlation function of the quadratic model. Factorizes into
// (A(t) + B(t))^2 with A, B single integrals over the coupling density,
// so C(-t) = conj(C(t)) holds by construction.
std::complex<double> quadratic_correlation(double t, const GaussianCouplingDensity& g,
                                           const ThermalConfig& thermal, const QuadratureConfig& cfg);

// Power spectrum of the linearly coupled boson reservoir. At w = 0 the
// removable n(0) pole is evaluated as a one-sided limit: 2 pi alpha/beta for
// n = 1 and 0 for n >= 2.
double linear_spectrum(double omega, const CaldeiraLeggettDensity& d, const ThermalConfig& thermal);

// Integration window of the e-integrals above: the coupling density support.
double coupling_support_max(const GaussianCouplingDensity& g);

}  // namespace dephase::models
