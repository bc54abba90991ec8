#include "newt/field.hpp"

namespace newt {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Inverse of a mod p by extended Euclid; a must be nonzero mod p.
long mod_inverse(long a, long p) {
  long t = 0, new_t = 1;
  long r = p, new_r = a % p;
  if (new_r < 0) new_r += p;
  while (new_r != 0) {
    long q = r / new_r;
    long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw MathError("element not invertible mod p");
  return t < 0 ? t + p : t;
}

}  // namespace

Field::Field(long characteristic) : p_(characteristic) {
  if (p_ == 0) return;
  if (p_ < 2 || p_ > ((1L << 31) - 1) || !is_prime(p_))
    throw MathError("characteristic must be 0 or a prime < 2^31, got " +
                    std::to_string(characteristic));
}

Coef Field::normalize(const Coef& a) const {
  Coef r = a;
  r.canonicalize();
  if (p_ == 0) return r;
  // Residue: numerator times the inverse of the denominator, reduced to [0, p).
  mpz_class num = r.get_num() % p_;
  if (num < 0) num += p_;
  mpz_class den = r.get_den() % p_;
  if (den == 0) throw MathError("denominator divisible by the characteristic");
  long d = den.get_si();
  if (d != 1) num = num * mod_inverse(d, p_) % p_;
  return Coef(num);
}

Coef Field::inv(const Coef& a) const {
  Coef r = normalize(a);
  if (is_zero(r)) throw MathError("division by zero");
  if (p_ == 0) return 1 / r;
  return Coef(mod_inverse(r.get_num().get_si(), p_));
}

std::string coef_to_string(const Coef& a) { return a.get_str(); }

}  // namespace newt
