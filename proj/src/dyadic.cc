#include "pathcode/dyadic.h"

#include <algorithm>
#include <cmath>

namespace pathcode {

Dyadic Dyadic::pow2_neg(unsigned exponent) {
  Dyadic d;
  d.num_ = 1;
  d.exp_ = exponent;
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (exp_ >= other.exp_) {
    num_ += other.num_ << (exp_ - other.exp_);
  } else {
    num_ = (num_ << (other.exp_ - exp_)) + other.num_;
    exp_ = other.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) {
  Dyadic negated = other;
  negated.num_ = -negated.num_;
  return *this += negated;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  Dyadic diff = a - b;
  int s = diff.num_.sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
}

std::string Dyadic::to_string() const {
  std::string s = num_.str();
  if (exp_ == 0) return s;
  boost::multiprecision::cpp_int den = 1;
  den <<= exp_;
  return s + "/" + den.str();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  boost::multiprecision::cpp_int magnitude = abs(num_);
  unsigned shift = std::min<unsigned>(
      static_cast<unsigned>(boost::multiprecision::lsb(magnitude)), exp_);
  if (shift > 0) {
    magnitude >>= shift;
    num_ = num_.sign() < 0 ? -magnitude : magnitude;
    exp_ -= shift;
  }
}

}  // namespace pathcode
