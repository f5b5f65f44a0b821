#pragma once

// Certified floating-point values: a number plus a rigorous bound on its
// distance from the true quantity.

#include <cmath>
#include <cstdlib>

namespace edelstein {

/// The true quantity lies in [value - error_bound, value + error_bound].
struct CertifiedValue {
  double value = 0.0;
  double error_bound = 0.0;

  double upper() const { return value + error_bound; }
  double lower() const { return value - error_bound; }
};

/// Neumaier-compensated accumulator. Summation order is the caller's;
/// results are bit-reproducible for a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    ++count_;
  }

  double value() const { return sum_ + comp_; }
  long count() const { return count_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  long count_ = 0;
};

/// Rounding allowance for a compensated sum of nonnegative terms, each term
/// itself accurate to a few ulp (trig plus a handful of multiplications).
/// 1e-14 relative is a generous envelope for both effects.
inline double fp_sum_allowance(double nonneg_sum) { return nonneg_sum * 1e-14; }

}  // namespace edelstein
