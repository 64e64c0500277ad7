// Sparse multivariate polynomials over Rat with named variables and a graded
// lexicographic term order (leading term first).  Exponent vectors are dense
// and always have length = number of variables.
#pragma once

#include "logchow/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logchow {

using Exp = std::vector<int>;

// Descending graded lex: higher total degree first, ties broken
// lexicographically with earlier variables weighing more.
struct GrlexDesc {
  bool operator()(const Exp &a, const Exp &b) const;
};

// Column-style integer matrix: mat[i] is the image of basis vector i.
using IMat = std::vector<std::vector<long long>>;

class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  Poly(std::vector<std::string> vars, const Rat &c);

  static Poly variable(const std::vector<std::string> &vars, int i);
  static Poly constant(const std::vector<std::string> &vars, const Rat &c);
  // Parses "3/2*x0^2*x1 - x2" style text over the given variables.
  static Poly parse(const std::string &text,
                    const std::vector<std::string> &vars);

  const std::vector<std::string> &vars() const { return vars_; }
  int numVars() const { return static_cast<int>(vars_.size()); }
  const std::map<Exp, Rat, GrlexDesc> &terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Rat constantValue() const; // 0 if zero polynomial
  int degree() const;        // -1 for the zero polynomial
  bool isHomogeneous() const;
  bool isHomogeneousOfDegree(int d) const;

  void addTerm(const Exp &e, const Rat &c);
  Rat coeff(const Exp &e) const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  Poly &operator*=(const Poly &o) { return *this = *this * o; }
  Poly scaled(const Rat &c) const;

  friend bool operator==(const Poly &a, const Poly &b);
  friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }
  bool operator<(const Poly &o) const; // total order for canonical keying

  // Ring homomorphism sending variable i to images[i]; every image must live
  // over newVars.
  Poly substitute(const std::vector<Poly> &images,
                  const std::vector<std::string> &newVars) const;
  // Same, keyed by variable name; a missing key raises MissingVariable.
  Poly substitute(const std::map<std::string, Poly> &images,
                  const std::vector<std::string> &newVars) const;

  Rat evaluate(const std::vector<Rat> &point) const;

  // Renames variables without touching terms.
  Poly withVars(std::vector<std::string> vars) const;

  std::string str() const;

private:
  std::vector<std::string> vars_;
  std::map<Exp, Rat, GrlexDesc> terms_;
};

// Exact quotient num/den; raises NotDivisible when the division leaves a
// remainder.
Poly exactDivide(const Poly &num, const Poly &den);

// Pullback of p along the linear map with column matrix mat: the result in
// srcVars satisfies result(x) = p(mat * x).  mat[i] must have p.numVars()
// entries.
Poly pullbackLinear(const Poly &p, const IMat &mat,
                    const std::vector<std::string> &srcVars);

// All exponent vectors of the given total degree, in descending graded lex
// order.
std::vector<Exp> monomialsOfDegree(int numVars, int degree);

std::vector<std::string> makeVarNames(const std::string &prefix, int n);

} // namespace logchow
