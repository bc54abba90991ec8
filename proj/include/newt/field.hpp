#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace newt {

// Thrown for every mathematical rejection: bad input, violated precondition,
// unsolvable request. Tool/usage errors are left to the CLI layer.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Exact coefficient. Over Q an arbitrary canonical rational; over F_p a
// residue in [0, p) stored with denominator 1.
using Coef = mpq_class;

// Coefficient field: Q (characteristic 0) or F_p for prime p < 2^31.
// All coefficient arithmetic goes through the field so that a Poly never
// holds a non-normalized value.
class Field {
 public:
  Field() : p_(0) {}
  explicit Field(long characteristic);

  long characteristic() const { return p_; }

  Coef normalize(const Coef& a) const;
  Coef add(const Coef& a, const Coef& b) const { return normalize(a + b); }
  Coef sub(const Coef& a, const Coef& b) const { return normalize(a - b); }
  Coef mul(const Coef& a, const Coef& b) const { return normalize(a * b); }
  Coef neg(const Coef& a) const { return normalize(-a); }
  Coef inv(const Coef& a) const;
  Coef div(const Coef& a, const Coef& b) const { return mul(a, inv(b)); }
  Coef from_long(long v) const { return normalize(Coef(v)); }

  static bool is_zero(const Coef& a) { return sgn(a) == 0; }

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  long p_;  // 0 for Q, else a prime < 2^31
};

std::string coef_to_string(const Coef& a);

}  // namespace newt
