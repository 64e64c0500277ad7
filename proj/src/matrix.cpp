#include "logchow/matrix.hpp"

#include "logchow/error.hpp"

#include <algorithm>
#include <set>

namespace logchow {

namespace {

// Clears denominators, divides by the content, makes the leading sign
// positive.  Zero rows come back empty.
std::vector<Int> primitiveRow(const RatMatrix &m, int r) {
  Int l(1);
  for (int c = 0; c < m.cols; ++c)
    if (!m.at(r, c).isZero())
      l = lcm(l, m.at(r, c).den());
  std::vector<Int> row(m.cols);
  bool any = false;
  for (int c = 0; c < m.cols; ++c) {
    const Rat &v = m.at(r, c);
    row[c] = v.num() * (l / v.den());
    if (sgn(row[c]) != 0)
      any = true;
  }
  if (!any)
    return {};
  Int g(0);
  for (const Int &x : row)
    g = gcd(g, x);
  int lead = 0;
  while (sgn(row[lead]) == 0)
    ++lead;
  if (sgn(row[lead]) < 0)
    g = -g;
  for (Int &x : row)
    x /= g;
  return row;
}

long bareissRank(std::vector<std::vector<Int>> rows, int cols, Exec ex) {
  int n = static_cast<int>(rows.size());
  int pivotRow = 0;
  Int prev(1);
  for (int col = 0; col < cols && pivotRow < n; ++col) {
    int sel = -1;
    for (int r = pivotRow; r < n; ++r)
      if (sgn(rows[r][col]) != 0) {
        sel = r;
        break;
      }
    if (sel < 0)
      continue;
    std::swap(rows[pivotRow], rows[sel]);
    const Int pivot = rows[pivotRow][col];
    const std::vector<Int> &prow = rows[pivotRow];
    parallelFor(
        n - pivotRow - 1,
        [&](int k) {
          std::vector<Int> &row = rows[pivotRow + 1 + k];
          const Int f = row[col];
          // The update degenerates to scaling by pivot/prev when f is zero;
          // skipping is sound only when that scaling is the identity.
          if (sgn(f) == 0 && pivot == prev)
            return;
          for (int c = 0; c < cols; ++c) {
            Int v = row[c] * pivot - f * prow[c];
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            row[c] = v;
          }
        },
        ex);
    prev = pivot;
    ++pivotRow;
  }
  return pivotRow;
}

} // namespace

long rank(const RatMatrix &m, Exec ex) {
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> rows;
  for (int r = 0; r < m.rows; ++r) {
    std::vector<Int> row = primitiveRow(m, r);
    if (row.empty())
      continue;
    if (seen.insert(row).second)
      rows.push_back(std::move(row));
  }
  return bareissRank(std::move(rows), m.cols, ex);
}

long rankSerial(const RatMatrix &m) { return rank(m, Exec::Serial); }

void RowSpan::reduceInPlace(std::vector<Rat> &v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rat &c = v[pivots_[i]];
    if (c.isZero())
      continue;
    Rat f = c;
    for (int j = 0; j < cols_; ++j)
      if (!rows_[i][j].isZero())
        v[j] -= f * rows_[i][j];
  }
}

bool RowSpan::add(std::vector<Rat> v) {
  require(static_cast<int>(v.size()) == cols_, "row length");
  reduceInPlace(v);
  int pivot = -1;
  for (int j = 0; j < cols_; ++j)
    if (!v[j].isZero()) {
      pivot = j;
      break;
    }
  if (pivot < 0)
    return false;
  Rat inv = inverse(v[pivot]);
  for (Rat &x : v)
    x *= inv;
  // keep earlier rows reduced against the new pivot
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rat c = rows_[i][pivot];
    if (c.isZero())
      continue;
    for (int j = 0; j < cols_; ++j)
      if (!v[j].isZero())
        rows_[i][j] -= c * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool RowSpan::contains(std::vector<Rat> v) const {
  require(static_cast<int>(v.size()) == cols_, "row length");
  reduceInPlace(v);
  return std::all_of(v.begin(), v.end(),
                     [](const Rat &x) { return x.isZero(); });
}

std::vector<std::vector<Rat>> kernelBasis(const RatMatrix &m) {
  // Reduced row echelon form of m, then one kernel vector per free column.
  std::vector<std::vector<Rat>> red;
  std::vector<int> pivots;
  for (int r = 0; r < m.rows; ++r) {
    std::vector<Rat> row(m.cols);
    for (int c = 0; c < m.cols; ++c)
      row[c] = m.at(r, c);
    for (size_t i = 0; i < red.size(); ++i) {
      Rat f = row[pivots[i]];
      if (f.isZero())
        continue;
      for (int j = 0; j < m.cols; ++j)
        if (!red[i][j].isZero())
          row[j] -= f * red[i][j];
    }
    int p = -1;
    for (int j = 0; j < m.cols; ++j)
      if (!row[j].isZero()) {
        p = j;
        break;
      }
    if (p < 0)
      continue;
    Rat inv = inverse(row[p]);
    for (Rat &x : row)
      x *= inv;
    for (size_t i = 0; i < red.size(); ++i) {
      Rat f = red[i][p];
      if (f.isZero())
        continue;
      for (int j = 0; j < m.cols; ++j)
        if (!row[j].isZero())
          red[i][j] -= f * row[j];
    }
    red.push_back(std::move(row));
    pivots.push_back(p);
  }
  std::vector<bool> isPivot(m.cols, false);
  for (int p : pivots)
    isPivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (isPivot[free])
      continue;
    std::vector<Rat> x(m.cols, Rat(0));
    x[free] = Rat(1);
    for (size_t i = 0; i < red.size(); ++i)
      x[pivots[i]] = -red[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

} // namespace logchow
