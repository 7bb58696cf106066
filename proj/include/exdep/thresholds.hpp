#pragma once

namespace exdep {

// Acceptance thresholds for the "tends to zero" diagnostics. Values frozen
// from pilot runs at the recorded settings (seed 7, reps 1e7); each sits
// well above the pilot point estimate plus four standard errors, so a
// correct implementation clears them with wide margin while a
// non-vanishing sequence cannot.

// Independence battery, F = G = gauss_copula(2, 0.5), n = 1000. Pilot:
// item_ii 0.0557 +- 0.0024, item_iii 0.0441 +- 0.0013,
// item_v 0.0382 +- 0.0020.
inline constexpr double kIndepItemIiThreshold = 0.10;
inline constexpr double kIndepItemIiiThreshold = 0.10;
inline constexpr double kIndepItemVThreshold = 0.10;

// Uniform-exceedance check, H = h0(2), u = t = 1, n = 1e4: the exact value
// is n * (1/n)^2 = 1e-4.
inline constexpr double kExceedanceH0Threshold = 0.01;

// Finite-block allowance added to 4*SE when the n = 1000 concurrence probe
// is compared against the limiting self-lambda estimate (pilot drift at
// n = 1000 for logistic(2,2) was 0.026 +- 0.015 against lambda = 0.500).
inline constexpr double kConcurrenceAllowance = 0.02;

}  // namespace exdep
