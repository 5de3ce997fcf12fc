#ifndef REALTHETA_DETAIL_COMPENSATED_SUM_HPP
#define REALTHETA_DETAIL_COMPENSATED_SUM_HPP

#include <cmath>
#include <complex>

namespace realtheta::detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double get() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }

  std::complex<double> get() const { return {re_.get(), im_.get()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace realtheta::detail

#endif  // REALTHETA_DETAIL_COMPENSATED_SUM_HPP
