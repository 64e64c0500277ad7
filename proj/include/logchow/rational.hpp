// Exact rational scalars on top of GMP.  Always stored canonically: reduced,
// positive denominator.
#pragma once

#include <gmpxx.h>

#include <string>

namespace logchow {

using Int = mpz_class;

class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}               // NOLINT: implicit by design
  Rat(const Int &n) : v_(n) {}         // NOLINT
  Rat(const Int &num, const Int &den);
  explicit Rat(const mpq_class &v) : v_(v) { v_.canonicalize(); }

  // Parses "p" or "p/q".
  static Rat fromString(const std::string &s);

  const mpq_class &raw() const { return v_; }
  Int num() const { return Int(v_.get_num()); }
  Int den() const { return Int(v_.get_den()); }

  bool isZero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool isInteger() const { return v_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat &operator+=(const Rat &o) { v_ += o.v_; return *this; }
  Rat &operator-=(const Rat &o) { v_ -= o.v_; return *this; }
  Rat &operator*=(const Rat &o) { v_ *= o.v_; return *this; }
  Rat &operator/=(const Rat &o);

  friend Rat operator+(Rat a, const Rat &b) { return a += b; }
  friend Rat operator-(Rat a, const Rat &b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat &b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat &b) { return a /= b; }

  friend bool operator==(const Rat &a, const Rat &b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat &a, const Rat &b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat &a, const Rat &b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat &a, const Rat &b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat &a, const Rat &b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat &a, const Rat &b) { return a.v_ >= b.v_; }

  std::string str() const;

private:
  mpq_class v_;
};

Rat inverse(const Rat &a);

} // namespace logchow
