#pragma once

namespace pinning::special {

/// e^z z^{-a} Gamma(a, z): the upper incomplete gamma function scaled so it
/// stays O(1/z) for large z. Valid for every real a and z > 0.
double scaled_upper_gamma(double a, double z);

/// log sum_{k >= start} k^{-s} e^{c k} for c <= 0 and start >= 1.
///
/// Returns +inf when the series diverges (c > 0, or c == 0 with s <= 1).
/// For small |c| the terms from `em_start` on are replaced by an
/// Euler-Maclaurin expansion (six Bernoulli corrections plus the exact
/// integral via scaled_upper_gamma), which bounds the truncation error well
/// below 1e-12 relative for em_start >= 64. Integer s in {0, -1, -2} use
/// closed forms.
double log_power_exp_series(double s, double c, long start, long em_start = 64);

}  // namespace pinning::special
