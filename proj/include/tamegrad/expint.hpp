#pragma once

// Real exponential integral Ei(z) for z > 0, relative error well under
// 1e-12: cancellation-free power series up to z = 40, asymptotic expansion
// beyond (the minimal term there is ~sqrt(2*pi*z)*e^{-z}, far below the
// target). Internal sums in long double.

#include <cmath>
#include <stdexcept>

namespace tamegrad {

inline double exp_integral_ei(double z) {
  if (!(z > 0)) throw std::domain_error("exp_integral_ei: argument must be > 0");
  constexpr long double kGamma = 0.57721566490153286060651209008240243L;
  if (z <= 40.0) {
    // Ei(z) = gamma + ln z + sum_{n>=1} z^n / (n * n!); all terms positive.
    long double term = 1.0L, sum = 0.0L;
    for (int n = 1; n < 400; ++n) {
      term *= static_cast<long double>(z) / n;
      long double add = term / n;
      sum += add;
      if (add < sum * 1e-20L) break;
    }
    return static_cast<double>(kGamma + std::log(static_cast<long double>(z)) + sum);
  }
  // Ei(z) ~ e^z/z * sum_{n>=0} n!/z^n, truncated at the smallest term.
  long double term = 1.0L, sum = 1.0L;
  for (int n = 1; n < 200; ++n) {
    long double next = term * n / static_cast<long double>(z);
    if (next >= term) break;  // divergent tail reached
    term = next;
    sum += term;
    if (term < sum * 1e-20L) break;
  }
  return static_cast<double>(std::exp(static_cast<long double>(z)) / z * sum);
}

}  // namespace tamegrad
