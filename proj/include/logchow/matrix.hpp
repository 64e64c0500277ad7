// Exact linear algebra: fraction-free rank (Bareiss, with an OpenMP row-update
// kernel and a serial reference) and incremental row reduction over Rat.
#pragma once

#include "logchow/parallel.hpp"
#include "logchow/rational.hpp"

#include <vector>

namespace logchow {

struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a; // row major

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Rat &at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat &at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }
};

// Rank over the rationals.  Rows are cleared to primitive integer vectors,
// deduplicated, then eliminated fraction-free.
long rank(const RatMatrix &m, Exec ex);
inline long rank(const RatMatrix &m) { return rank(m, defaultExec()); }
long rankSerial(const RatMatrix &m);

// Incrementally maintained reduced row echelon span over Rat.
class RowSpan {
public:
  explicit RowSpan(int cols) : cols_(cols) {}

  // Reduces v against the span; returns true (and absorbs it) if it enlarges
  // the span.
  bool add(std::vector<Rat> v);
  bool contains(std::vector<Rat> v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

private:
  void reduceInPlace(std::vector<Rat> &v) const;

  int cols_;
  std::vector<std::vector<Rat>> rows_; // reduced, pivot coefficient 1
  std::vector<int> pivots_;
};

// Basis of the right kernel {x : m x = 0}, echelonized deterministically.
std::vector<std::vector<Rat>> kernelBasis(const RatMatrix &m);

} // namespace logchow
