#include "itolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "itolab/errors.hpp"

namespace itolab {

GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n == 0) {
        throw InvalidParameter("gauss_legendre: order must be positive");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 -
                      (static_cast<double>(k) - 1.0) * p2) /
                     static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::fabs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

const GaussLegendreRule& cached_rule(std::size_t order) {
    static const GaussLegendreRule default_rule = gauss_legendre(kQuadOrder);
    if (order == kQuadOrder) {
        return default_rule;
    }
    thread_local GaussLegendreRule other;
    if (other.nodes.size() != order) {
        other = gauss_legendre(order);
    }
    return other;
}

double panel(const std::function<double(double)>& f, double a, double b, const GaussLegendreRule& r) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
        s += r.weights[k] * f(mid + half * r.nodes[k]);
    }
    return s * half;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              const GaussLegendreRule& r, const AdaptiveOptions& opt, std::size_t depth,
              double tol) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid, r);
    const double right = panel(f, mid, b, r);
    const double both = left + right;
    if (std::fabs(both - whole) <= std::max(tol, 1e-14 * std::fabs(both))) {
        return both;
    }
    if (depth >= opt.max_depth) {
        throw NumericError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    }
    return refine(f, a, mid, left, r, opt, depth + 1, tol) +
           refine(f, mid, b, right, r, opt, depth + 1, tol);
}

}  // namespace

GaussLegendreRule composite_rule(double a, double b, std::size_t panels, std::size_t order) {
    if (panels == 0 || !(b > a)) {
        throw InvalidParameter("composite_rule: need b > a and at least one panel");
    }
    const auto& base = cached_rule(order);
    GaussLegendreRule out;
    out.nodes.reserve(panels * order);
    out.weights.reserve(panels * order);
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        for (std::size_t k = 0; k < order; ++k) {
            out.nodes.push_back(mid + 0.5 * width * base.nodes[k]);
            out.weights.push_back(0.5 * width * base.weights[k]);
        }
    }
    return out;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           std::size_t panels, std::size_t order) {
    const auto rule = composite_rule(a, b, panels, order);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(rule.nodes[k]);
    return s;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints, const AdaptiveOptions& opt) {
    if (!(b > a)) {
        throw InvalidParameter("integrate_adaptive: need b > a");
    }
    const auto& rule = cached_rule(opt.order);

    std::vector<double> edges;
    const double width = (b - a) / static_cast<double>(opt.panels);
    for (std::size_t p = 0; p <= opt.panels; ++p) edges.push_back(a + width * static_cast<double>(p));
    edges.back() = b;
    for (double bp : breakpoints) {
        if (bp > a && bp < b) edges.push_back(bp);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Coarse pass sets the relative tolerance scale.
    std::vector<double> coarse(edges.size() - 1);
    double magnitude = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        coarse[i] = panel(f, edges[i], edges[i + 1], rule);
        magnitude += std::fabs(coarse[i]);
    }
    const double tol = std::max(opt.abs_tol, opt.rel_tol * magnitude);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double share = tol * (edges[i + 1] - edges[i]) / (b - a);
        total += refine(f, edges[i], edges[i + 1], coarse[i], rule, opt, 0, share);
    }
    return total;
}

}  // namespace itolab
