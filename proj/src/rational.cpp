#include "logchow/rational.hpp"

#include "logchow/error.hpp"

namespace logchow {

Rat::Rat(const Int &num, const Int &den) {
  require(sgn(den) != 0, "rational with zero denominator");
  v_ = mpq_class(num) / mpq_class(den);
  v_.canonicalize();
}

Rat Rat::fromString(const std::string &s) {
  mpq_class v;
  if (v.set_str(s, 10) != 0)
    fail(errkind::TypeMismatch, "bad rational literal '" + s + "'");
  v.canonicalize();
  return Rat(v);
}

Rat &Rat::operator/=(const Rat &o) {
  require(!o.isZero(), "division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rat::str() const { return v_.get_str(); }

Rat inverse(const Rat &a) {
  require(!a.isZero(), "inverse of zero");
  return Rat(1) / a;
}

} // namespace logchow
