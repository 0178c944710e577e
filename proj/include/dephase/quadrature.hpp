// quadrature.hpp — fixed-order Gauss-Legendre panels with doubling refinement

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dephase::quad {

// Numerical-failure escape hatch; carries a diagnostic string describing the
// integral, the last refinement step, and the achieved relative change.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

struct QuadratureConfig {
    int panel_count = 64;         // base number of panels
    int refinement_levels = 5;    // panel doublings allowed before giving up
    double rel_tol = 1e-9;        // relative change accepted between refinements
    double freq_cutoff = 0.0;     // integration cutoff / oscillation scale; 0 = caller default

    void validate() const {
        if (panel_count < 8) throw std::invalid_argument("QuadratureConfig: panel_count must be >= 8");
        if (!(rel_tol > 0.0) || rel_tol > 1e-2)
            throw std::invalid_argument("QuadratureConfig: rel_tol must be in (0, 1e-2]");
        if (refinement_levels < 0) throw std::invalid_argument("QuadratureConfig: refinement_levels must be >= 0");
    }
};

// Fixed-order rule on [-1,1]; nodes by Newton iteration on the Legendre polynomial.
class GaussLegendre {
  public:
    explicit GaussLegendre(int order);

    // Rules are immutable after construction; the cache is safe for concurrent reads.
    static const GaussLegendre& cached(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
        return half * acc;
    }

    template <class F>
    double integrate_panels(F&& f, double a, double b, int panels) const {
        if (panels < 1) panels = 1;
        const double w = (b - a) / panels;
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) acc += integrate(f, a + p * w, a + (p + 1) * w);
        return acc;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Integrate f on [a,b] starting from base_panels, doubling until the value is
// stable to cfg.rel_tol (plus a small absolute floor). Throws NumericalError
// with diagnostics when refinement_levels is exhausted.
double integrate_refined(const std::function<double(double)>& f, double a, double b,
                         int base_panels, const QuadratureConfig& cfg,
                         const char* label, int order = 16, double abs_floor = 1e-300);

}  // namespace dephase::quad
