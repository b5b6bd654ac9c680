#pragma once

#include <complex>

#include "smilewing/time_change.hpp"

namespace smilewing::detail {

/// Winding-tracked log of A(u) = cosh(d t/2) + b sinh(d t/2)/d along the
/// vertical segment from Re(u) (where A is real positive inside the strip)
/// to u. Fallback for the rare points where the principal-branch
/// decomposition of the Heston log term cannot be certified.
std::complex<double> tracked_log_affine_A(const HestonParams& p, double t,
                                          std::complex<double> u);

} // namespace smilewing::detail
