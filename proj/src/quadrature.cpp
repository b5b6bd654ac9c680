#include "smilewing/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "smilewing/errors.hpp"

namespace smilewing {

namespace {

// Gauss-Kronrod 15(7) abscissae and weights (positive half, QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double flo[7], fhi[7];
    const double fc = f(c);
    double result_g = kWg[3] * fc;
    double result_k = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        flo[j] = f(c - x);
        fhi[j] = f(c + x);
        const double fsum = flo[j] + fhi[j];
        result_k += kWgk[j] * fsum;
        if (j % 2 == 1) result_g += kWg[j / 2] * fsum;
    }
    const double mean = 0.5 * result_k;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(flo[j] - mean) + std::fabs(fhi[j] - mean));
    resasc *= std::fabs(h);
    result_g *= h;
    result_k *= h;
    double err = std::fabs(result_k - result_g);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Segment{a, b, result_k, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts, double osc_scale) {
    if (!(b > a)) throw InvalidParameter("integrate_adaptive: requires b > a");

    // Seed segments: a few oscillation periods wide when a frequency hint is given.
    std::size_t n0 = 1;
    if (osc_scale > 0.0) {
        const double seg = 3.0 * M_PI / osc_scale;
        n0 = static_cast<std::size_t>(std::min(4096.0, std::max(1.0, std::ceil((b - a) / seg))));
    }

    std::priority_queue<Segment> queue;
    double total = 0.0, total_err = 0.0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double sa = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
        const double sb = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
        Segment s = gk15(f, sa, sb);
        evals += 15;
        total += s.value;
        total_err += s.error;
        queue.push(s);
    }

    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)) &&
           queue.size() < opts.max_segments) {
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) { // cannot split further
            queue.push(Segment{worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    if (total_err > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)))
        throw NumericalFailure("integrate_adaptive: tolerance not met, achieved error estimate " +
                               std::to_string(total_err) + " with " +
                               std::to_string(queue.size()) + " segments");
    return QuadratureResult{total, total_err, evals, b};
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const std::function<double(double)>& envelope,
                                         double u0, const QuadratureOptions& opts,
                                         double osc_scale) {
    double u_max = std::max(u0, 1.0);
    while (envelope(u_max) >= opts.envelope_tol && u_max < opts.u_cap) u_max *= 2.0;
    if (envelope(u_max) >= opts.envelope_tol)
        throw NumericalFailure(
            "integrate_semi_infinite: integrand envelope still " +
            std::to_string(envelope(u_max)) + " at truncation cap " + std::to_string(u_max));
    QuadratureResult r = integrate_adaptive(f, 0.0, u_max, opts, osc_scale);
    r.u_max = u_max;
    return r;
}

} // namespace smilewing
