#pragma once

#include <cmath>

namespace qnet::detail {

// Neumaier's variant of Kahan summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) noexcept {
    const T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  T value() const noexcept { return sum_ + compensation_; }

 private:
  T sum_{0};
  T compensation_{0};
};

}  // namespace qnet::detail
