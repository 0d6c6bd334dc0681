#ifndef LOQS_UTIL_HPP
#define LOQS_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace loqs {

/// log(n!) via lgamma.
double log_factorial(int n);

/// n! as double; exact up to n = 170 overflow limit.
double factorial(int n);

/// Binomial coefficient as double (log-space for large arguments).
double binomial(int n, int k);

/// log C(n, k); -inf when k outside [0, n].
double log_binomial(int n, int k);

/// Hurwitz zeta(2, a) = sum_{k>=0} 1/(k+a)^2 (trigamma), a > 0.
double hurwitz_zeta2(double a);

/// Wilson score interval for `successes` out of `trials` at z = `z`.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = 1.96);

/// Runs fn(i) for i in [0, count) across up to `threads` worker threads.
/// With threads <= 1 the loop runs inline. Output written by index stays
/// deterministic regardless of scheduling.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                  int threads = 1);

}  // namespace loqs

#endif
