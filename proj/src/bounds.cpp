#include "bandclust/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bandclust/env.hpp"

namespace bandclust {

namespace {

void require_nonzero(const std::vector<double>& gap) {
    if (gap.empty() || std::all_of(gap.begin(), gap.end(),
                                   [](double g) { return g == 0.0; }))
        throw ZeroGap("gap vector must have a nonzero entry");
}

void require_theta(double theta, int n) {
    if (n < 2)
        throw DomainError("n must be at least 2");
    if (!(theta >= 1.0 / n - 1e-12 && theta <= 0.5 + 1e-12))
        throw DomainError("theta must lie in [1/n, 1/2]");
}

double squared_norm(const std::vector<double>& gap) {
    double s = 0.0;
    for (double g : gap) s += g * g;
    return s;
}

int support_size(const std::vector<double>& ordered) {
    int c = 0;
    for (double g : ordered)
        if (g != 0.0) ++c;
    return c;
}

} // namespace

int effective_sparsity(const std::vector<double>& gap) {
    require_nonzero(gap);
    const std::vector<double> g = ordered_gaps(gap);
    int best_s = 1;
    double best = g[0] * g[0];
    for (int s = 2; s <= static_cast<int>(g.size()); ++s) {
        const double v = s * g[s - 1] * g[s - 1];
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    return best_s;
}

Sandwich sandwich_check(const std::vector<double>& gap) {
    require_nonzero(gap);
    const std::vector<double> g = ordered_gaps(gap);
    const int s_star = effective_sparsity(gap);
    Sandwich sw;
    sw.left = s_star * g[s_star - 1] * g[s_star - 1];
    sw.mid = squared_norm(gap);
    sw.right = std::log2(2.0 * static_cast<double>(gap.size())) * sw.left;
    return sw;
}

double complexity_h(const std::vector<double>& gap, double theta, int n) {
    require_nonzero(gap);
    require_theta(theta, n);
    const std::vector<double> g = ordered_gaps(gap);
    const double d = static_cast<double>(gap.size());
    const int s_star = effective_sparsity(gap);

    const double first =
        (d / theta) * (1.0 / squared_norm(gap) + 1.0 / s_star);

    // (d/s + n) decreases in s and 1/|gap|_(s)^2 + 1 grows, so scan the
    // whole support rather than guessing where the product bottoms out.
    double second = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= support_size(g); ++s) {
        const double v =
            (d / s + n) * (1.0 / (g[s - 1] * g[s - 1]) + 1.0);
        second = std::min(second, v);
    }
    return first + second;
}

double lower_bound_quantile(const std::vector<double>& gap, double theta,
                            int n, double delta) {
    require_nonzero(gap);
    require_theta(theta, n);
    if (n < 3)
        throw DomainError("lower_bound_quantile needs n >= 3");
    if (!(delta > 0.0 && delta < 0.25))
        throw DomainError("lower_bound_quantile needs delta in (0, 1/4)");
    const std::vector<double> g = ordered_gaps(gap);
    const double d = static_cast<double>(gap.size());
    const double top = g[0] * g[0];
    const double first = (2.0 * (n - 2) / top) * std::log(1.0 / (4.8 * delta));
    const double second =
        (2.0 * d / (theta * squared_norm(gap))) * std::log(1.0 / (6.0 * delta));
    return std::max(first, second);
}

double flat_gap_bound(double h, int s, double theta, int n, int d) {
    if (!(h > 0.0 && h < 1.0))
        throw DomainError("flat gap height must lie in (0,1)");
    if (s < 1 || s > d)
        throw DomainError("nonzero count must lie in [1, d]");
    require_theta(theta, n);
    return d / (theta * s * h * h) + n / (h * h);
}

BoundsReport bounds_report(const std::vector<double>& gap, double theta,
                           int n, double delta) {
    require_nonzero(gap);
    require_theta(theta, n);
    const std::vector<double> g = ordered_gaps(gap);
    const int d = static_cast<int>(gap.size());
    const int support = support_size(g);

    BoundsReport rep;
    rep.s_star = effective_sparsity(gap);
    rep.s_tilde = std::max(rep.s_star,
                           std::min((d + n - 1) / n, support));
    rep.sandwich = sandwich_check(gap);
    rep.h_complexity = complexity_h(gap, theta, n);
    if (n >= 3 && delta > 0.0 && delta < 0.25)
        rep.lb_quantile = lower_bound_quantile(gap, theta, n, delta);

    const double h = g[0];
    if (h > 0.0 && h < 1.0 && g[support - 1] == h)
        rep.flat_gap = flat_gap_bound(h, support, theta, n, d);
    return rep;
}

} // namespace bandclust
