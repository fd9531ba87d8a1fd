#include "qcverify/linalg_exact.hpp"

#include <stdexcept>

namespace qcv {

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ MatQ::operator*(const MatQ& o) const {
  if (cols != o.rows) throw std::invalid_argument("MatQ::*: shape mismatch");
  MatQ r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (sgn(at(i, k)) == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

MatQ MatQ::operator+(const MatQ& o) const {
  MatQ r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

MatQ MatQ::operator-(const MatQ& o) const {
  MatQ r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

MatQ MatQ::operator*(const Rational& c) const {
  MatQ r = *this;
  for (auto& x : r.a) x *= c;
  return r;
}

MatQ MatQ::transposed() const {
  MatQ r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool MatQ::is_zero() const {
  for (auto& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

MatQ MatQ::commutator(const MatQ& x, const MatQ& y) { return x * y - y * x; }

Rational MatQ::inner(const MatQ& x, const MatQ& y) {
  Rational s = 0;
  for (size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

namespace {

// Row echelon with partial ordering; returns pivot columns, transforms b too.
std::vector<int> echelon(MatQ& m, std::vector<Rational>* b) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (sgn(m.at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) {
      for (int j = 0; j < m.cols; ++j) swap(m.at(p, j), m.at(row, j));
      if (b) swap((*b)[p], (*b)[row]);
    }
    Rational inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    if (b) (*b)[row] *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rational f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
      if (b) (*b)[i] -= f * (*b)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_exact(MatQ m) { return int(echelon(m, nullptr).size()); }

std::optional<std::vector<Rational>> solve_exact(MatQ a, std::vector<Rational> b) {
  int rows = a.rows, cols = a.cols;
  auto pivots = echelon(a, &b);
  for (int i = int(pivots.size()); i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> x(cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

std::vector<std::vector<Rational>> nullspace_exact(MatQ a) {
  int cols = a.cols;
  auto pivots = echelon(a, nullptr);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qcv
