#include "logchow/poly.hpp"

#include "logchow/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace logchow {

bool GrlexDesc::operator()(const Exp &a, const Exp &b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db)
    return da > db;
  return a > b; // lexicographic, earlier variables weigh more
}

Poly::Poly(std::vector<std::string> vars, const Rat &c)
    : vars_(std::move(vars)) {
  if (!c.isZero())
    terms_[Exp(vars_.size(), 0)] = c;
}

Poly Poly::variable(const std::vector<std::string> &vars, int i) {
  require(i >= 0 && i < static_cast<int>(vars.size()), "variable index");
  Poly p(vars);
  Exp e(vars.size(), 0);
  e[i] = 1;
  p.terms_[e] = Rat(1);
  return p;
}

Poly Poly::constant(const std::vector<std::string> &vars, const Rat &c) {
  return Poly(vars, c);
}

bool Poly::isConstant() const {
  if (terms_.empty())
    return true;
  if (terms_.size() > 1)
    return false;
  const Exp &e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat Poly::constantValue() const {
  require(isConstant(), "constantValue on non-constant polynomial");
  return terms_.empty() ? Rat(0) : terms_.begin()->second;
}

int Poly::degree() const {
  if (terms_.empty())
    return -1;
  const Exp &e = terms_.begin()->first; // leading term has maximal degree
  return std::accumulate(e.begin(), e.end(), 0);
}

bool Poly::isHomogeneous() const {
  if (terms_.empty())
    return true;
  return isHomogeneousOfDegree(degree());
}

bool Poly::isHomogeneousOfDegree(int d) const {
  for (const auto &[e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d)
      return false;
  return true;
}

void Poly::addTerm(const Exp &e, const Rat &c) {
  require(e.size() == vars_.size(), "exponent length");
  if (c.isZero())
    return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
    return;
  }
  it->second += c;
  if (it->second.isZero())
    terms_.erase(it);
}

Rat Poly::coeff(const Exp &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto &[e, c] : terms_)
    r.terms_[e] = -c;
  return r;
}

static void checkSameVars(const Poly &a, const Poly &b) {
  require(a.vars() == b.vars(), "polynomial variable sets differ");
}

Poly &Poly::operator+=(const Poly &o) {
  checkSameVars(*this, o);
  for (const auto &[e, c] : o.terms_)
    addTerm(e, c);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  checkSameVars(*this, o);
  for (const auto &[e, c] : o.terms_)
    addTerm(e, -c);
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  checkSameVars(a, b);
  Poly r(a.vars_);
  Exp e(a.vars_.size());
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      r.addTerm(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Rat &c) const {
  Poly r(vars_);
  if (c.isZero())
    return r;
  for (const auto &[e, t] : terms_)
    r.terms_[e] = t * c;
  return r;
}

bool operator==(const Poly &a, const Poly &b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

bool Poly::operator<(const Poly &o) const {
  if (vars_ != o.vars_)
    return vars_ < o.vars_;
  auto i = terms_.begin(), j = o.terms_.begin();
  for (; i != terms_.end() && j != o.terms_.end(); ++i, ++j) {
    if (i->first != j->first)
      return GrlexDesc()(i->first, j->first);
    if (i->second != j->second)
      return i->second < j->second;
  }
  return j != o.terms_.end();
}

Poly Poly::substitute(const std::vector<Poly> &images,
                      const std::vector<std::string> &newVars) const {
  require(images.size() == vars_.size(), "one image per variable required");
  for (const Poly &im : images)
    require(im.vars() == newVars, "substitution image over wrong variables");
  // powers[i][k] = images[i]^k, built on demand
  std::vector<std::vector<Poly>> powers(vars_.size());
  auto power = [&](int i, int k) -> const Poly & {
    auto &cache = powers[i];
    if (cache.empty())
      cache.push_back(Poly::constant(newVars, Rat(1)));
    while (static_cast<int>(cache.size()) <= k)
      cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Poly r(newVars);
  for (const auto &[e, c] : terms_) {
    Poly term = Poly::constant(newVars, c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0)
        term *= power(static_cast<int>(i), e[i]);
    r += term;
  }
  return r;
}

Poly Poly::substitute(const std::map<std::string, Poly> &images,
                      const std::vector<std::string> &newVars) const {
  std::vector<Poly> byIndex;
  byIndex.reserve(vars_.size());
  for (const std::string &v : vars_) {
    auto it = images.find(v);
    if (it == images.end())
      fail(errkind::MissingVariable, "no image for variable '" + v + "'");
    byIndex.push_back(it->second);
  }
  return substitute(byIndex, newVars);
}

Rat Poly::evaluate(const std::vector<Rat> &point) const {
  require(point.size() == vars_.size(), "evaluation point dimension");
  Rat total(0);
  for (const auto &[e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k)
        t *= point[i];
    total += t;
  }
  return total;
}

Poly Poly::withVars(std::vector<std::string> vars) const {
  require(vars.size() == vars_.size(), "variable rename arity");
  Poly r(std::move(vars));
  r.terms_ = terms_;
  return r;
}

std::string Poly::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    Rat a = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0)
        out << "-";
      first = false;
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    std::vector<std::string> parts;
    bool anyVar = false;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0)
        anyVar = true;
    if (!anyVar || a != Rat(1))
      parts.push_back(a.str());
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      std::string t = vars_[i];
      if (e[i] > 1)
        t += "^" + std::to_string(e[i]);
      parts.push_back(t);
    }
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i)
        out << "*";
      out << parts[i];
    }
  }
  return out.str();
}

namespace {

struct Parser {
  const std::string &text;
  size_t pos = 0;
  const std::vector<std::string> &vars;

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skipWs();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void bad(const std::string &what) {
    fail(errkind::TypeMismatch,
         "polynomial parse error at offset " + std::to_string(pos) + ": " + what);
  }

  Poly expr() {
    skipWs();
    bool neg = eat('-');
    if (!neg)
      eat('+');
    Poly p = term();
    if (neg)
      p = -p;
    while (true) {
      skipWs();
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        break;
    }
    return p;
  }

  Poly term() {
    Poly p = factor();
    while (eat('*'))
      p *= factor();
    return p;
  }

  Poly factor() {
    Poly p = primary();
    if (eat('^')) {
      int k = integer();
      Poly r = Poly::constant(vars, Rat(1));
      for (int i = 0; i < k; ++i)
        r *= p;
      p = r;
    }
    return p;
  }

  int integer() {
    skipWs();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      bad("expected integer exponent");
    return std::stoi(text.substr(start, pos - start));
  }

  Poly primary() {
    skipWs();
    if (pos >= text.size())
      bad("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Poly p = expr();
      if (!eat(')'))
        bad("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        ++pos;
      return Poly::constant(vars, Rat::fromString(text.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name)
          return Poly::variable(vars, static_cast<int>(i));
      fail(errkind::MissingVariable, "unknown variable '" + name + "'");
    }
    bad("unexpected character");
  }
};

} // namespace

Poly Poly::parse(const std::string &text, const std::vector<std::string> &vars) {
  Parser p{text, 0, vars};
  Poly r = p.expr();
  p.skipWs();
  if (p.pos != text.size())
    p.bad("trailing input");
  return r;
}

Poly exactDivide(const Poly &num, const Poly &den) {
  require(num.vars() == den.vars(), "exactDivide variable sets differ");
  if (num.isZero())
    return Poly(num.vars());
  if (den.isZero())
    fail(errkind::NotDivisible, "division by the zero polynomial");
  Poly r = num;
  Poly q(num.vars());
  const auto &dlead = *den.terms().begin();
  while (!r.isZero()) {
    const auto &rlead = *r.terms().begin();
    Exp e(rlead.first.size());
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = rlead.first[i] - dlead.first[i];
      if (e[i] < 0)
        fail(errkind::NotDivisible, "nonzero remainder " + r.str());
    }
    Rat c = rlead.second / dlead.second;
    Poly t(num.vars());
    t.addTerm(e, c);
    q += t;
    r -= t * den;
  }
  return q;
}

Poly pullbackLinear(const Poly &p, const IMat &mat,
                    const std::vector<std::string> &srcVars) {
  std::vector<Poly> images(p.numVars(), Poly(srcVars));
  for (size_t i = 0; i < mat.size(); ++i) {
    require(mat[i].size() == static_cast<size_t>(p.numVars()),
            "lattice matrix column length");
    for (int j = 0; j < p.numVars(); ++j)
      if (mat[i][j] != 0)
        images[j] += Poly::variable(srcVars, static_cast<int>(i))
                         .scaled(Rat(static_cast<long>(mat[i][j])));
  }
  return p.substitute(images, srcVars);
}

static void listExponents(int numVars, int degree, int at, Exp &cur,
                          std::vector<Exp> &out) {
  if (at == numVars - 1) {
    cur[at] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[at] = k;
    listExponents(numVars, degree - k, at + 1, cur, out);
  }
}

std::vector<Exp> monomialsOfDegree(int numVars, int degree) {
  std::vector<Exp> out;
  if (numVars == 0) {
    if (degree == 0)
      out.push_back({});
    return out;
  }
  Exp cur(numVars, 0);
  listExponents(numVars, degree, 0, cur, out);
  std::sort(out.begin(), out.end(), GrlexDesc());
  return out;
}

std::vector<std::string> makeVarNames(const std::string &prefix, int n) {
  std::vector<std::string> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i)
    v.push_back(prefix + std::to_string(i));
  return v;
}

} // namespace logchow
