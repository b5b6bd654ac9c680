#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace smilewing {

/// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs.
/// Runs until the bracket width falls below rel_tol * max(1, |mid|)
/// or max_iter halvings. Re-entrant, no global state.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 1e-13, int max_iter = 200);

/// Scans [lo, hi] in n equal steps and returns the first subinterval on
/// which f changes sign (or is exactly zero at the right node).
std::optional<std::pair<double, double>>
find_first_sign_change(const std::function<double(double)>& f, double lo, double hi, int n);

} // namespace smilewing
