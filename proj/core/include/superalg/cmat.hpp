#pragma once

// Dense matrices over exact complex rationals, row-vector convention
// throughout: vectors are rows, matrices act on the right, subspaces are row
// spans. Everything here is exact; no pivoting heuristics are needed.

#include <stdexcept>
#include <vector>

#include "superalg/scalar.hpp"

namespace superalg {

struct CMat {
  int rows = 0, cols = 0;
  std::vector<CQ> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  CQ& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const CQ& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = CQ(1);
    return m;
  }

  CMat operator*(const CMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("CMat: dim mismatch");
    CMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (at(i, k).is_zero()) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }
  CMat operator+(const CMat& o) const {
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  CMat operator-(const CMat& o) const {
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  CMat operator-() const {
    CMat r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  CMat scaled(const CQ& c) const {
    CMat r = *this;
    for (auto& x : r.a) x = x * c;
    return r;
  }
  bool operator==(const CMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  CMat transpose() const {
    CMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  CMat conj() const {
    CMat r = *this;
    for (auto& x : r.a) x = x.conj();
    return r;
  }
  CMat adjoint() const { return conj().transpose(); }

  CMat block(int i0, int j0, int r, int c) const {
    CMat b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const CMat& b) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

  CMat row(int i) const { return block(i, 0, 1, cols); }

  static CMat vstack(const CMat& top, const CMat& bot) {
    if (top.cols != bot.cols && top.rows && bot.rows)
      throw std::invalid_argument("CMat: vstack width mismatch");
    CMat r(top.rows + bot.rows, top.rows ? top.cols : bot.cols);
    r.set_block(0, 0, top);
    r.set_block(top.rows, 0, bot);
    return r;
  }
  static CMat hstack(const CMat& l, const CMat& r_) {
    if (l.rows != r_.rows && l.cols && r_.cols)
      throw std::invalid_argument("CMat: hstack height mismatch");
    CMat r(l.rows ? l.rows : r_.rows, l.cols + r_.cols);
    r.set_block(0, 0, l);
    r.set_block(0, l.cols, r_);
    return r;
  }
};

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref(CMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    CQ inv = CQ(1) / m.at(r, c);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      CQ f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(CMat m) { return int(rref(m).size()); }

// Rows spanning {x : x M = 0}.
inline CMat left_kernel(const CMat& m) {
  CMat t = m.transpose();
  std::vector<int> piv = rref(t);
  std::vector<bool> is_piv(m.rows, false);
  for (int c : piv) is_piv[c] = true;
  CMat k(m.rows - int(piv.size()), m.rows);
  int kr = 0;
  for (int c = 0; c < m.rows; ++c) {
    if (is_piv[c]) continue;
    k.at(kr, c) = CQ(1);
    for (size_t pi = 0; pi < piv.size(); ++pi)
      k.at(kr, piv[pi]) = -t.at(int(pi), c);
    ++kr;
  }
  return k;
}

inline CQ det(CMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  CQ d(1);
  for (int c = 0; c < m.cols; ++c) {
    int sel = -1;
    for (int i = c; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) return CQ(0);
    if (sel != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    CQ inv = CQ(1) / m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c).is_zero()) continue;
      CQ f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

inline CMat inverse(const CMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  CMat aug = CMat::hstack(m, CMat::identity(m.rows));
  std::vector<int> piv = rref(aug);
  if (int(piv.size()) != m.rows || piv.back() >= m.rows)
    throw std::domain_error("inverse: singular matrix");
  return aug.block(0, m.rows, m.rows, m.rows);
}

// Solutions x (rows) of x A = b for each row b of rhs; throws if unsolvable.
inline CMat solve_left(const CMat& A, const CMat& rhs) {
  // x A = b  <=>  A^t x^t = b^t
  CMat at = A.transpose();
  CMat out(rhs.rows, A.rows);
  CMat aug = CMat::hstack(at, rhs.transpose());
  std::vector<int> piv = rref(aug);
  for (int c : piv)
    if (c >= A.rows) throw std::domain_error("solve_left: inconsistent system");
  // back-substitute from rref: pivot rows give solved coordinates
  for (size_t pi = 0; pi < piv.size(); ++pi)
    for (int k = 0; k < rhs.rows; ++k)
      out.at(k, piv[pi]) = aug.at(int(pi), A.rows + k);
  return out;
}

// Canonical row-span container: RREF basis, unique per subspace.
struct Subspace {
  int ambient = 0;
  CMat basis;  // RREF, full row rank

  Subspace() = default;
  explicit Subspace(int amb) : ambient(amb), basis(0, amb) {}
  static Subspace span(const CMat& rows_) {
    Subspace s;
    s.ambient = rows_.cols;
    CMat m = rows_;
    std::vector<int> piv = rref(m);
    s.basis = m.block(0, 0, int(piv.size()), m.cols);
    return s;
  }
  int dim() const { return basis.rows; }
  bool contains(const CMat& v) const {
    CMat m = CMat::vstack(basis, v);
    return rank(m) == dim();
  }
  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && basis == o.basis;
  }
};

inline Subspace intersect(const Subspace& x, const Subspace& y) {
  // rows (u, v) with u x.basis = v y.basis; intersection = u x.basis
  if (x.ambient != y.ambient) throw std::invalid_argument("intersect: ambient");
  CMat stk = CMat::vstack(x.basis, -y.basis);
  CMat k = left_kernel(stk);
  CMat u = k.block(0, 0, k.rows, x.dim());
  return Subspace::span(u * x.basis);
}

inline Subspace sum(const Subspace& x, const Subspace& y) {
  return Subspace::span(CMat::vstack(x.basis, y.basis));
}

}  // namespace superalg
