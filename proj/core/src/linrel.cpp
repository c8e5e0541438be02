#include "superalg/linrel.hpp"

namespace superalg {

LinearRelation graph_of(const CMat& A) {
  CMat rows = CMat::hstack(CMat::identity(A.rows), A);
  return LinearRelation(A.rows, A.cols, Subspace::span(rows));
}

LinearRelation identity_relation(int n) { return graph_of(CMat::identity(n)); }

LinearRelation zero_relation(int nv, int nw) {
  return LinearRelation(nv, nw, Subspace::span(CMat(0, nv + nw)));
}

LinearRelation full_relation(int nv, int nw) {
  return LinearRelation(nv, nw, Subspace::span(CMat::identity(nv + nw)));
}

LinearRelation compose(const LinearRelation& Q, const LinearRelation& P) {
  if (P.nw != Q.nv) throw std::invalid_argument("compose: inner dims differ");
  int nv = P.nv, nw = P.nw, ny = Q.nw;
  int amb = nv + 2 * nw + ny;
  CMat pq(P.dim() + Q.dim(), amb);
  pq.set_block(0, 0, P.sub.basis);
  pq.set_block(P.dim(), nv + nw, Q.sub.basis);
  CMat diag(nv + nw + ny, amb);
  for (int i = 0; i < nv; ++i) diag.at(i, i) = CQ(1);
  for (int j = 0; j < nw; ++j) {
    diag.at(nv + j, nv + j) = CQ(1);
    diag.at(nv + j, nv + nw + j) = CQ(1);
  }
  for (int k = 0; k < ny; ++k) diag.at(nv + nw + k, nv + 2 * nw + k) = CQ(1);
  Subspace s = intersect(Subspace::span(pq), Subspace::span(diag));
  CMat proj = CMat::hstack(s.basis.block(0, 0, s.dim(), nv),
                           s.basis.block(0, nv + 2 * nw, s.dim(), ny));
  return LinearRelation(nv, ny, Subspace::span(proj));
}

Subspace ker_of(const LinearRelation& P) {
  CMat a = P.sub.basis.block(0, 0, P.dim(), P.nv);
  CMat b = P.sub.basis.block(0, P.nv, P.dim(), P.nw);
  return Subspace::span(left_kernel(b) * a);
}

Subspace im_of(const LinearRelation& P) {
  return Subspace::span(P.sub.basis.block(0, P.nv, P.dim(), P.nw));
}

Subspace dom_of(const LinearRelation& P) {
  return Subspace::span(P.sub.basis.block(0, 0, P.dim(), P.nv));
}

Subspace indef_of(const LinearRelation& P) {
  CMat a = P.sub.basis.block(0, 0, P.dim(), P.nv);
  CMat b = P.sub.basis.block(0, P.nv, P.dim(), P.nw);
  return Subspace::span(left_kernel(a) * b);
}

bool is_transversal(const LinearRelation& P, const LinearRelation& Q) {
  if (P.nw != Q.nv) throw std::invalid_argument("is_transversal: dims differ");
  if (sum(im_of(P), dom_of(Q)).dim() != P.nw) return false;
  return intersect(indef_of(P), ker_of(Q)).dim() == 0;
}

CMat form_l(int n) {
  CMat g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g.at(i, n + i) = CQ(1);
    g.at(n + i, i) = CQ(1);
  }
  return g;
}

CMat form_lambda(int n) {
  CMat g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g.at(i, n + i) = CQ(1);
    g.at(n + i, i) = CQ(-1);
  }
  return g;
}

CMat form_n(int n) {
  CMat g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g.at(i, i) = CQ(-1);
    g.at(n + i, n + i) = CQ(1);
  }
  return g;
}

CMat ominus(const CMat& gv, const CMat& gw) {
  CMat g(gv.rows + gw.rows, gv.cols + gw.cols);
  g.set_block(0, 0, gv);
  g.set_block(gv.rows, gv.cols, -gw);
  return g;
}

bool is_lagrangian(const Subspace& h, const CMat& gram) {
  if (h.ambient != gram.rows) throw std::invalid_argument("is_lagrangian: ambient");
  if (2 * h.dim() != h.ambient) return false;
  CMat x = h.basis * gram * h.basis.transpose();
  return x == CMat(x.rows, x.cols);
}

bool is_lagrangian(const Subspace& h, const FormDescriptor& form) {
  if (form.kind == FormKind::HermitianM)
    throw std::invalid_argument("is_lagrangian: bilinear form expected");
  return is_lagrangian(h, form.gram());
}

GDMorphism GDMorphism::of(const LinearRelation& p) {
  if (p.nv % 2 || p.nw % 2)
    throw std::invalid_argument("GDMorphism: odd ambient dimension");
  if (!is_lagrangian(p.sub, ominus(form_l(p.nv / 2), form_l(p.nw / 2))))
    throw std::invalid_argument("GDMorphism: relation is not Lagrangian");
  return {p.nv, p.nw, p};
}

GDMorphism gd_compose(const GDMorphism& Q, const GDMorphism& P) {
  if (P.nw != Q.nv) throw std::invalid_argument("gd_compose: dims differ");
  if (P.is_null() || Q.is_null()) return GDMorphism::null(P.nv, Q.nw);
  if (!is_transversal(*P.rel, *Q.rel)) return GDMorphism::null(P.nv, Q.nw);
  return GDMorphism{P.nv, Q.nw, compose(*Q.rel, *P.rel)};
}

namespace {

// Column index and sign of the two slot vectors of chart J at position j.
struct Slot {
  int plus_col, minus_col;
  CQ minus_sign;
};

Slot chart_slot(FormKind kind, int n, unsigned J, int j) {
  bool in = (J >> j) & 1u;
  Slot s;
  s.plus_col = in ? j : n + j;
  s.minus_col = in ? n + j : j;
  s.minus_sign = CQ(1);
  if (kind == FormKind::SkewLambda && !in) s.minus_sign = CQ(-1);
  return s;
}

void check_chart_args(FormKind kind, int n, const CMat& T) {
  if (kind != FormKind::SymmetricL && kind != FormKind::SkewLambda)
    throw std::invalid_argument("chart: bilinear form expected");
  if (T.rows != n || T.cols != n) throw std::invalid_argument("chart: T size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      bool ok = kind == FormKind::SymmetricL
                    ? T.at(i, j) == -T.at(j, i)
                    : T.at(i, j) == T.at(j, i);
      if (!ok)
        throw std::invalid_argument(
            kind == FormKind::SymmetricL ? "chart: T must be skew"
                                         : "chart: T must be symmetric");
    }
}

}  // namespace

Subspace chart_encode(FormKind kind, int n, unsigned J, const CMat& T) {
  check_chart_args(kind, n, T);
  CMat rows(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    Slot si = chart_slot(kind, n, J, i);
    rows.at(i, si.plus_col) = rows.at(i, si.plus_col) + CQ(1);
    for (int j = 0; j < n; ++j) {
      Slot sj = chart_slot(kind, n, J, j);
      rows.at(i, sj.minus_col) = rows.at(i, sj.minus_col) + T.at(i, j) * sj.minus_sign;
    }
  }
  return Subspace::span(rows);
}

bool chart_contains(FormKind kind, int n, unsigned J, const Subspace& h) {
  if (h.ambient != 2 * n) throw std::invalid_argument("chart_contains: ambient");
  if (h.dim() != n) return false;
  // H meets the chart iff its projection to the plus-slots is invertible.
  CMat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      x.at(i, j) = h.basis.at(i, chart_slot(kind, n, J, j).plus_col);
  return rank(x) == n;
}

CMat chart_decode(FormKind kind, int n, unsigned J, const Subspace& h) {
  if (h.ambient != 2 * n) throw std::invalid_argument("chart_decode: ambient");
  if (!chart_contains(kind, n, J, h))
    throw std::domain_error("chart_decode: subspace outside the chart");
  CMat x(n, n), y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Slot sj = chart_slot(kind, n, J, j);
      x.at(i, j) = h.basis.at(i, sj.plus_col);
      y.at(i, j) = h.basis.at(i, sj.minus_col) / sj.minus_sign;
    }
  return inverse(x) * y;
}

unsigned chart_find(FormKind kind, int n, const Subspace& h) {
  for (unsigned J = 0; J < (1u << n); ++J)
    if (chart_contains(kind, n, J, h)) return J;
  throw std::domain_error("chart_find: no chart contains the subspace");
}

CMat reflection_matrix(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("reflection_matrix: index");
  CMat s = CMat::identity(2 * n);
  s.at(i, i) = CQ(0);
  s.at(n + i, n + i) = CQ(0);
  s.at(i, n + i) = CQ(1);
  s.at(n + i, i) = CQ(1);
  return s;
}

int component_parity(const Subspace& h) {
  int n = h.ambient / 2;
  if (!is_lagrangian(h, form_l(n)))
    throw std::invalid_argument("component_parity: not Lagrangian");
  CMat minus(n, 2 * n);
  for (int j = 0; j < n; ++j) minus.at(j, n + j) = CQ(1);
  return intersect(h, Subspace::span(minus)).dim() % 2;
}

namespace {

// Positive definiteness of an exact Hermitian matrix: Sylvester leading
// principal minors (sufficient for strict definiteness, unlike the
// semidefinite case).
bool hermitian_pd(const CMat& x) {
  for (int k = 1; k <= x.rows; ++k) {
    CQ d = det(x.block(0, 0, k, k));
    if (!(d.im == 0) || !(d.re > 0)) return false;
  }
  return true;
}

CMat restrict_hermitian(const CMat& basis, const CMat& gram) {
  return basis * gram * basis.adjoint();
}

}  // namespace

bool is_sp_morphism(const LinearRelation& P) {
  if (P.nv % 2 || P.nw % 2)
    throw std::invalid_argument("is_sp_morphism: odd ambient dimension");
  int n = P.nv / 2, m = P.nw / 2;
  if (!is_lagrangian(P.sub, ominus(form_lambda(n), form_lambda(m)))) return false;
  CMat on_p = restrict_hermitian(P.sub.basis, ominus(form_n(n), form_n(m)));
  if (!is_hermitian_psd(-on_p)) return false;
  Subspace k = ker_of(P);
  if (k.dim() > 0 && !hermitian_pd(-restrict_hermitian(k.basis, form_n(n))))
    return false;
  Subspace ind = indef_of(P);
  if (ind.dim() > 0 && !hermitian_pd(restrict_hermitian(ind.basis, form_n(m))))
    return false;
  return true;
}

namespace {

mpq_class small_chart_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

CMat rand_chart_matrix(std::mt19937_64& rng, int n, FormKind kind) {
  CMat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      CQ v(small_chart_rat(rng), small_chart_rat(rng));
      t.at(i, j) = v;
      t.at(j, i) = kind == FormKind::SymmetricL ? -v : v;
    }
  if (kind == FormKind::SkewLambda)
    for (int i = 0; i < n; ++i) t.at(i, i) = CQ(small_chart_rat(rng));
  return t;
}

}  // namespace

Subspace rand_lagrangian(std::mt19937_64& rng, int n, FormKind kind) {
  unsigned J = n ? unsigned(rng() % (1u << n)) : 0u;
  return chart_encode(kind, n, J, rand_chart_matrix(rng, n, kind));
}

LinearRelation rand_gd_relation(std::mt19937_64& rng, int n, int m) {
  // Sample in (C^{2(n+m)}, L) and pull the target coordinates through the
  // sign twist that turns L (+) L into L-ominus.
  int nm = n + m;
  Subspace big = rand_lagrangian(rng, nm, FormKind::SymmetricL);
  CMat phi(2 * nm, 2 * (n + m));
  for (int j = 0; j < nm; ++j) {
    int plus_to = j < n ? j : 2 * n + (j - n);
    int minus_to = j < n ? n + j : 2 * n + m + (j - n);
    phi.at(j, plus_to) = CQ(1);
    phi.at(nm + j, minus_to) = j < n ? CQ(1) : CQ(-1);
  }
  return LinearRelation(2 * n, 2 * m, Subspace::span(big.basis * phi));
}

}  // namespace superalg
