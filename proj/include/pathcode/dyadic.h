#ifndef PATHCODE_DYADIC_H_
#define PATHCODE_DYADIC_H_

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pathcode {

// Exact rational of the form n / 2^k, kept normalized (n odd or k == 0).
// Kraft sums are always dyadic, so this is the only exact arithmetic needed.
class Dyadic {
 public:
  Dyadic() = default;
  explicit Dyadic(std::int64_t integer) : num_(integer) {}

  // 2^-exponent.
  static Dyadic pow2_neg(unsigned exponent);

  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  int sign() const { return num_.sign(); }
  double to_double() const;
  // "0", "3", "-1/2", "25/64".
  std::string to_string() const;

 private:
  void normalize();

  boost::multiprecision::cpp_int num_ = 0;
  unsigned exp_ = 0;
};

}  // namespace pathcode

#endif  // PATHCODE_DYADIC_H_
