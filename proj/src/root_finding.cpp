#include "smilewing/root_finding.hpp"

#include <cmath>
#include <string>

#include "smilewing/errors.hpp"

namespace smilewing {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw NumericalFailure("bisect: no sign change on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid; // bracket exhausted in double precision
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < rel_tol * std::max(1.0, std::fabs(mid))) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

std::optional<std::pair<double, double>>
find_first_sign_change(const std::function<double(double)>& f, double lo, double hi, int n) {
    double prev_x = lo;
    double prev_f = f(lo);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fx = f(x);
        if (prev_f == 0.0 || std::signbit(fx) != std::signbit(prev_f))
            return std::make_pair(prev_x, x);
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

} // namespace smilewing
