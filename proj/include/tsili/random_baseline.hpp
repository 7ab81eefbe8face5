#pragma once

#include <gmpxx.h>

#include "tsili/common.hpp"
#include "tsili/metrics.hpp"

namespace tsili {

using Rational = mpq_class;

// Largest N for which the exact rational path is used by random_baseline;
// beyond it a long-double log-gamma evaluation takes over.
inline constexpr long long kExactBaselineLimit = 512;

/// Exact E[AP] of a uniformly random ranking with n1 of N instances
/// defective: (H_N + (n1-1)(N - H_N)/(N-1)) / N, the closed form of the
/// position-wise expectation.
Rational random_ap_rational(long long total, long long defective);

/// Exact E[RR]: sum over first-defective positions i of
/// (1/i) * C(N-i, n1-1) / C(N, n1).
Rational random_rr_rational(long long total, long long defective);

/// Validation oracle: enumerates all C(N, n1) label arrangements and returns
/// the exact mean of the indicator (AP or RR only). Enforces N <= 12.
Rational brute_force_random(Indicator ind, long long total, long long defective);

}  // namespace tsili
