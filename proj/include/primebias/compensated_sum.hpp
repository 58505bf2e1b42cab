#pragma once

#include <cmath>

namespace primebias {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays accurate
/// when an addend is larger in magnitude than the running sum, which happens
/// when terms are subtracted back out of a finished series.
template <typename Real>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real initial) : sum_(initial) {}

  CompensatedSum& operator+=(Real x) {
    const Real t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(Real x) { return *this += -x; }

  Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{0};
  Real compensation_{0};
};

}  // namespace primebias
