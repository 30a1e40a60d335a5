#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace itolab {

// Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n; nodes ascending.
GaussLegendreRule gauss_legendre(std::size_t n);

// Default composite layout: 20 panels x 20 nodes = 400 nodes per axis.
inline constexpr std::size_t kQuadPanels = 20;
inline constexpr std::size_t kQuadOrder = 20;

// Fixed composite rule on [a, b]: absolute nodes and weights.
GaussLegendreRule composite_rule(double a, double b, std::size_t panels = kQuadPanels,
                                 std::size_t order = kQuadOrder);

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           std::size_t panels = kQuadPanels, std::size_t order = kQuadOrder);

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    std::size_t max_depth = 48;
    std::size_t panels = kQuadPanels;
    std::size_t order = kQuadOrder;
};

/// Composite Gauss–Legendre with per-panel bisection until a panel and its two
/// halves agree. `breakpoints` inside (a, b) become panel edges, so narrow
/// features at known locations are resolved. Throws NumericError when a panel
/// fails to converge within max_depth bisections.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints = {}, const AdaptiveOptions& opt = {});

}  // namespace itolab
