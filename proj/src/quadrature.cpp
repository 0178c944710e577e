#include "dephase/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace dephase::quad {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    nodes_.resize(order);
    weights_.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (order == 1) { p1 = x; }
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (order == 1) ? x : p1;
            const double pn1 = (order == 1) ? 1.0 : p0;
            dp = order * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes_[i] = -x;
        nodes_[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights_[i] = w;
        weights_[order - 1 - i] = w;
    }
}

const GaussLegendre& GaussLegendre::cached(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, GaussLegendre(order)).first;
    return it->second;
}

double integrate_refined(const std::function<double(double)>& f, double a, double b,
                         int base_panels, const QuadratureConfig& cfg,
                         const char* label, int order, double abs_floor) {
    const auto& rule = GaussLegendre::cached(order);
    int panels = std::max(1, base_panels);
    double prev = rule.integrate_panels(f, a, b, panels);
    for (int level = 0; level < cfg.refinement_levels; ++level) {
        panels *= 2;
        const double next = rule.integrate_panels(f, a, b, panels);
        const double change = std::abs(next - prev);
        if (change <= cfg.rel_tol * std::abs(next) + abs_floor) return next;
        prev = next;
    }
    if (cfg.refinement_levels == 0) return prev;
    // One last check against the final doubling before declaring failure.
    const double final_panels = panels * 2.0;
    const double next = rule.integrate_panels(f, a, b, static_cast<int>(final_panels));
    if (std::abs(next - prev) <= cfg.rel_tol * std::abs(next) + abs_floor) return next;
    std::ostringstream msg;
    msg << "quadrature did not converge: " << label << " on [" << a << ", " << b << "], "
        << panels << " panels, last change " << std::abs(next - prev) << " vs value " << next
        << " (rel_tol " << cfg.rel_tol << ", " << cfg.refinement_levels << " refinement levels)";
    throw NumericalError(msg.str());
}

}  // namespace dephase::quad
