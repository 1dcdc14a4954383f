#pragma once
#include <optional>
#include <vector>

#include "bandclust/errors.hpp"

namespace bandclust {

// Triple (max_s s*|gap|_(s)^2, ||gap||^2, log2(2d)*max_s s*|gap|_(s)^2).
// The squared norm is pinned between the best sparsity-adjusted gap level
// and a log2(2d) multiple of it: sum_s g_(s)^2 <= H_d * max <= log2(2d) * max
// via the harmonic bound H_d <= 1 + log2(d). The base-2 factor keeps the
// right side valid for every d >= 1 (natural log fails at small d, e.g.
// gaps (sqrt 2, 1) give mid 3 > ln(4)*2).
struct Sandwich {
    double left = 0.0;
    double mid = 0.0;
    double right = 0.0;
};

struct BoundsReport {
    double h_complexity = 0.0;
    int s_star = 0;
    int s_tilde = 0; // max(s_star, min(ceil(d/n), support size)); informational
    Sandwich sandwich;
    std::optional<double> lb_quantile; // set only when delta < 1/4 and n >= 3
    std::optional<double> flat_gap;    // set only when all nonzero |gaps| coincide
};

// Smallest maximizer of s * |gap|_(s)^2 over s in [d], where |gap|_(s) is the
// s-th largest absolute entry. Throws ZeroGap when every entry is zero.
int effective_sparsity(const std::vector<double>& gap);

Sandwich sandwich_check(const std::vector<double>& gap);

// (d/theta)(1/||gap||^2 + 1/s_star)
//   + min over s in the support of (d/s + n)(1/|gap|_(s)^2 + 1).
// Requires theta in [1/n, 1/2] (fraction of the smaller group).
double complexity_h(const std::vector<double>& gap, double theta, int n);

// max( (2(n-2)/|gap|_(1)^2) * ln(1/(4.8 delta)),
//      (2d/(theta*||gap||^2)) * ln(1/(6 delta)) ).
// Requires delta in (0, 1/4) and n >= 3.
double lower_bound_quantile(const std::vector<double>& gap, double theta,
                            int n, double delta);

// Two-valued gap vectors (s entries equal to h in (0,1), rest zero):
// d/(theta*s*h^2) + n/h^2, the polylog-free budget scale for that family.
double flat_gap_bound(double h, int s, double theta, int n, int d);

BoundsReport bounds_report(const std::vector<double>& gap, double theta,
                           int n, double delta);

} // namespace bandclust
