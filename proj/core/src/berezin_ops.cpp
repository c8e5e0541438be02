#include "superalg/berezin_ops.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace superalg {

namespace {

std::string gname(const char* stem, int i) {
  return std::string(stem) + std::to_string(i + 1);
}

void check_pure(const SuperElement& e, int nf, const char* where) {
  if (!e.gens) throw std::invalid_argument(std::string(where) + ": no algebra");
  if (!e.gens->bosons.empty() || e.gens->phantoms != 0 ||
      int(e.gens->fermions.size()) != nf)
    throw std::invalid_argument(std::string(where) +
                                ": expected a pure exterior algebra of rank " +
                                std::to_string(nf));
}

void check_dims(const BerezinKernel& k, const char* where) {
  if (k.p < 0 || k.q < 0)
    throw std::invalid_argument(std::string(where) + ": negative dimension");
  if (k.A.rows != k.p || k.A.cols != k.p || k.B.rows != k.p ||
      k.B.cols != k.q || k.C.rows != k.q || k.C.cols != k.q)
    throw std::invalid_argument(std::string(where) + ": block shape mismatch");
  if (!(k.A == -k.A.transpose()) || !(k.C == -k.C.transpose()))
    throw std::invalid_argument(std::string(where) + ": block not skew");
  if (int(k.factors.size()) > k.p + k.q)
    throw std::invalid_argument(std::string(where) + ": too many factors");
  for (const auto& f : k.factors)
    if (f.u.rows != 1 || f.u.cols != k.p || f.v.rows != 1 || f.v.cols != k.q)
      throw std::invalid_argument(std::string(where) + ": factor shape");
}

CQ exact_coeff(const Scalar& c, const char* where) {
  if (!c.is_exact() || c.tau() != 0)
    throw std::logic_error(std::string(where) + ": exact coefficients required");
  return c.exact_value();
}

// Pfaffian over CQ, expansion along the first remaining index.
CQ pf_sub(const CMat& m, const std::vector<int>& idx) {
  size_t n = idx.size();
  if (n == 0) return CQ(1);
  if (n % 2) return CQ(0);
  CQ acc(0);
  for (size_t j = 1; j < n; ++j) {
    CQ aij = m.at(idx[0], idx[j]);
    if (aij.is_zero()) continue;
    std::vector<int> rest;
    rest.reserve(n - 2);
    for (size_t t = 1; t < n; ++t)
      if (t != j) rest.push_back(idx[t]);
    CQ term = aij * pf_sub(m, rest);
    acc += (j % 2) ? term : -term;
  }
  return acc;
}

CMat mult_matrix(int n, int j) {
  CMat X(1 << n, 1 << n);
  for (std::uint64_t S = 0; S < (std::uint64_t(1) << n); ++S) {
    if ((S >> j) & 1) continue;
    X.at(int(S | (std::uint64_t(1) << j)), int(S)) =
        CQ(merge_sign(std::uint64_t(1) << j, S));
  }
  return X;
}

CMat deriv_matrix(int n, int j) {
  CMat D(1 << n, 1 << n);
  for (std::uint64_t S = 0; S < (std::uint64_t(1) << n); ++S) {
    if (!((S >> j) & 1)) continue;
    std::uint64_t R = S & ~(std::uint64_t(1) << j);
    D.at(int(R), int(S)) = CQ(merge_sign(std::uint64_t(1) << j, R));
  }
  return D;
}

CMat blockdiag(const CMat& a, const CMat& b) {
  CMat r(a.rows + b.rows, a.cols + b.cols);
  r.set_block(0, 0, a);
  r.set_block(a.rows, a.cols, b);
  return r;
}

// Coordinate action on one side of a relation when that side is conjugated
// by the listed reflection operators.  Each factor swaps the two lines of
// its own slot and, because it anticommutes with every other generator,
// flips the sign of all the other slots.
CMat refl_conj_matrix(int n, const std::vector<int>& idxs) {
  CMat S = CMat::identity(2 * n);
  for (int m : idxs) {
    CMat r(2 * n, 2 * n);
    for (int l = 0; l < n; ++l) {
      if (l == m) {
        r.at(l, n + l) = CQ(1);
        r.at(n + l, l) = CQ(1);
      } else {
        r.at(l, l) = CQ(-1);
        r.at(n + l, n + l) = CQ(-1);
      }
    }
    S = S * r;
  }
  return S;
}

void check_dform(const DFactorForm& d, const char* where) {
  check_dims(d.core, where);
  if (!d.core.factors.empty())
    throw std::invalid_argument(std::string(where) + ": core must be narrow");
  for (size_t t = 0; t < d.xi.size(); ++t) {
    if (d.xi[t] < 0 || d.xi[t] >= d.core.p ||
        (t > 0 && d.xi[t] <= d.xi[t - 1]))
      throw std::invalid_argument(std::string(where) +
                                  ": target indices not increasing");
  }
  for (size_t t = 0; t < d.eta.size(); ++t) {
    if (d.eta[t] < 0 || d.eta[t] >= d.core.q ||
        (t > 0 && d.eta[t] <= d.eta[t - 1]))
      throw std::invalid_argument(std::string(where) +
                                  ": source indices not increasing");
  }
}

}  // namespace

GenSetPtr grassmann_gens(int n) {
  std::vector<std::string> f;
  f.reserve(n);
  for (int i = 0; i < n; ++i) f.push_back(gname("x", i));
  return make_gens({}, std::move(f));
}

GenSetPtr kernel_gens(int p, int q) {
  std::vector<std::string> f;
  f.reserve(p + q);
  for (int i = 0; i < p; ++i) f.push_back(gname("x", i));
  for (int j = 0; j < q; ++j) f.push_back(gname("eb", j));
  return make_gens({}, std::move(f));
}

BerezinKernel make_kernel(int p, int q, Scalar s,
                          std::vector<BerezinFactor> factors, CMat A, CMat B,
                          CMat C) {
  BerezinKernel k;
  k.p = p;
  k.q = q;
  k.s = std::move(s);
  k.factors = std::move(factors);
  k.A = std::move(A);
  k.B = std::move(B);
  k.C = std::move(C);
  check_dims(k, "make_kernel");
  return k;
}

BerezinKernel narrow_kernel(int p, int q, CMat A, CMat B, CMat C) {
  return make_kernel(p, q, Scalar(1), {}, std::move(A), std::move(B),
                     std::move(C));
}

BerezinKernel identity_kernel(int n) {
  return narrow_kernel(n, n, CMat(n, n), CMat::identity(n), CMat(n, n));
}

BerezinKernel reflection_kernel(int n, int k) {
  if (k < 0 || k >= n)
    throw std::invalid_argument("reflection_kernel: index out of range");
  BerezinFactor f{CMat(1, n), CMat(1, n)};
  f.u.at(0, k) = CQ(1);
  f.v.at(0, k) = CQ(1);
  return make_kernel(n, n, Scalar(1), {f}, CMat(n, n), CMat::identity(n),
                     CMat(n, n));
}

SuperElement kernel_element(const BerezinKernel& k) {
  check_dims(k, "kernel_element");
  GenSetPtr g = kernel_gens(k.p, k.q);
  SuperElement expo(g);
  for (int i = 0; i < k.p; ++i)
    for (int j = i + 1; j < k.p; ++j)
      expo.add_term(
          TermKey{0, (std::uint64_t(1) << i) | (std::uint64_t(1) << j), 0},
          Scalar(k.A.at(i, j)));
  for (int i = 0; i < k.p; ++i)
    for (int j = 0; j < k.q; ++j)
      expo.add_term(TermKey{0,
                            (std::uint64_t(1) << i) |
                                (std::uint64_t(1) << (k.p + j)),
                            0},
                    Scalar(k.B.at(i, j)));
  for (int i = 0; i < k.q; ++i)
    for (int j = i + 1; j < k.q; ++j)
      expo.add_term(TermKey{0,
                            (std::uint64_t(1) << (k.p + i)) |
                                (std::uint64_t(1) << (k.p + j)),
                            0},
                    Scalar(k.C.at(i, j)));
  SuperElement e = exp_even(expo);
  for (auto it = k.factors.rbegin(); it != k.factors.rend(); ++it) {
    SuperElement lin(g);
    for (int i = 0; i < k.p; ++i)
      lin.add_term(TermKey{0, std::uint64_t(1) << i, 0},
                   Scalar(it->u.at(0, i)));
    for (int j = 0; j < k.q; ++j)
      lin.add_term(TermKey{0, std::uint64_t(1) << (k.p + j), 0},
                   Scalar(it->v.at(0, j)));
    e = mul(lin, e);
  }
  return e * k.s;
}

SuperElement apply_kernel_element(const SuperElement& ker, int p, int q,
                                  const SuperElement& f) {
  check_pure(ker, p + q, "apply_kernel_element(kernel)");
  check_pure(f, q, "apply_kernel_element(argument)");
  std::vector<std::string> names;
  names.reserve(p + 2 * q);
  for (int i = 0; i < p; ++i) names.push_back(gname("x", i));
  for (int j = 0; j < q; ++j) names.push_back(gname("eb", j));
  for (int j = 0; j < q; ++j) names.push_back(gname("e", j));
  GenSetPtr w = make_gens({}, std::move(names));
  std::vector<int> kmap(p + q), fmap(q);
  std::iota(kmap.begin(), kmap.end(), 0);
  std::iota(fmap.begin(), fmap.end(), p + q);
  SuperElement prod = mul(map_generators(ker, w, {}, kmap),
                          map_generators(f, w, {}, fmap));
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(q);
  for (int j = 0; j < q; ++j) pairs.emplace_back(p + q + j, p + j);
  SuperElement integ = gauss_pair_fermion(prod, pairs);
  SuperElement out(grassmann_gens(p));
  for (const auto& [key, c] : integ.terms) {
    if (key.ferm >> p)
      throw std::logic_error("apply_kernel_element: residual source factor");
    out.add_term(key, c);
  }
  return out;
}

SuperElement apply_kernel(const BerezinKernel& k, const SuperElement& f) {
  return apply_kernel_element(kernel_element(k), k.p, k.q, f);
}

CMat matrix_of_element(const SuperElement& ker, int p, int q) {
  check_pure(ker, p + q, "matrix_of_element");
  if (p > 20 || q > 20)
    throw std::invalid_argument("matrix_of_element: rank too large");
  CMat M(1 << p, 1 << q);
  std::uint64_t low = (std::uint64_t(1) << p) - 1;
  for (const auto& [key, c] : ker.terms) {
    std::uint64_t S = key.ferm & low;
    std::uint64_t T = key.ferm >> p;
    int k = std::popcount(T);
    CQ v = exact_coeff(c, "matrix_of_element");
    if ((k * (k - 1) / 2) % 2) v = -v;
    M.at(int(S), int(T)) += v;
  }
  return M;
}

CMat matrix_of(const BerezinKernel& k) {
  return matrix_of_element(kernel_element(k), k.p, k.q);
}

SuperElement compose_kernel_elements(const SuperElement& L, int r, int mid,
                                     const SuperElement& K, int in) {
  check_pure(L, r + mid, "compose_kernel_elements(left)");
  check_pure(K, mid + in, "compose_kernel_elements(right)");
  std::vector<std::string> names;
  names.reserve(r + 2 * mid + in);
  for (int i = 0; i < r; ++i) names.push_back(gname("z", i));
  for (int t = 0; t < mid; ++t) names.push_back(gname("s", t));
  for (int t = 0; t < mid; ++t) names.push_back(gname("sb", t));
  for (int b = 0; b < in; ++b) names.push_back(gname("eb", b));
  GenSetPtr w = make_gens({}, std::move(names));
  std::vector<int> lmap(r + mid), kmap(mid + in);
  for (int i = 0; i < r; ++i) lmap[i] = i;
  for (int t = 0; t < mid; ++t) lmap[r + t] = r + mid + t;
  for (int t = 0; t < mid; ++t) kmap[t] = r + t;
  for (int b = 0; b < in; ++b) kmap[mid + b] = r + 2 * mid + b;
  SuperElement prod = mul(map_generators(L, w, {}, lmap),
                          map_generators(K, w, {}, kmap));
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(mid);
  for (int t = 0; t < mid; ++t) pairs.emplace_back(r + t, r + mid + t);
  SuperElement integ = gauss_pair_fermion(prod, pairs);
  // Reindexing from (z, eb) slots is monotone, so no signs move.
  SuperElement out(kernel_gens(r, in));
  std::uint64_t low = (std::uint64_t(1) << r) - 1;
  for (const auto& [key, c] : integ.terms) {
    std::uint64_t high = key.ferm >> (r + 2 * mid);
    if ((key.ferm & ~low) != (high << (r + 2 * mid)))
      throw std::logic_error("compose_kernel_elements: residual inner factor");
    out.add_term(TermKey{0, (key.ferm & low) | (high << r), 0}, c);
  }
  return out;
}

SuperElement compose_oracle(const BerezinKernel& L, const BerezinKernel& K) {
  if (L.q != K.p)
    throw std::invalid_argument("compose_oracle: inner dimension mismatch");
  return compose_kernel_elements(kernel_element(L), L.p, L.q,
                                 kernel_element(K), K.q);
}

NarrowProduct compose_closed(const BerezinKernel& L, const BerezinKernel& K) {
  check_dims(L, "compose_closed(left)");
  check_dims(K, "compose_closed(right)");
  if (!L.factors.empty() || !K.factors.empty())
    throw std::invalid_argument(
        "compose_closed: linear factors present; use the oracle route");
  if (L.q != K.p)
    throw std::invalid_argument("compose_closed: inner dimension mismatch");
  int mid = L.q;
  const CMat& M = L.C;
  const CMat& P = K.A;
  CMat invMP(0, 0), invPM(0, 0);
  if (mid > 0) {
    CMat one = CMat::identity(mid);
    CMat IpMP = one + M * P;
    if (det(IpMP).is_zero())
      throw std::domain_error(
          "compose_closed: det(1 + MP) = 0; use the oracle route");
    invMP = inverse(IpMP);
    invPM = inverse(one + P * M);
  }
  CMat A = L.A + L.B * P * invMP * L.B.transpose();
  CMat B = L.B * invPM * K.B;
  CMat C = K.C + K.B.transpose() * invMP * M * K.B;
  CQ scal(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << mid); ++mask) {
    int s = std::popcount(mask);
    if (s % 2) continue;
    std::vector<int> idx;
    idx.reserve(s);
    for (int t = 0; t < mid; ++t)
      if ((mask >> t) & 1) idx.push_back(t);
    CQ term = pf_sub(M, idx) * pf_sub(P, idx);
    if ((s * (s + 1) / 2) % 2) term = -term;
    scal += term;
  }
  NarrowProduct out{Scalar(scal),
                    make_kernel(L.p, K.q, L.s * K.s, {}, std::move(A),
                                std::move(B), std::move(C))};
  return out;
}

SuperElement dform_element(const DFactorForm& d) {
  check_dform(d, "dform_element");
  int p = d.core.p, q = d.core.q;
  SuperElement e = kernel_element(d.core);
  for (auto it = d.xi.rbegin(); it != d.xi.rend(); ++it)
    e = mul(SuperElement::fermion_var(e.gens, *it), e) + derive_left(e, *it);
  for (int m : d.eta)
    e = compose_kernel_elements(e, p, q,
                                kernel_element(reflection_kernel(q, m)), q);
  return e;
}

BerezinKernel wide_of_element(const SuperElement& e, int p, int q) {
  check_pure(e, p + q, "wide_of_element");
  int n = p + q;
  if (e.is_zero())
    return make_kernel(p, q, Scalar(CQ(0)), {}, CMat(p, p), CMat(p, q),
                       CMat(q, q));
  if (n == 0)
    return make_kernel(0, 0, e.coeff(TermKey{}), {}, CMat(0, 0), CMat(0, 0),
                       CMat(0, 0));
  int m = -1;
  for (const auto& [key, c] : e.terms) {
    int oc = key.odd_count();
    if (m < 0 || oc < m) m = oc;
  }
  for (const auto& [key, c] : e.terms)
    if ((key.odd_count() - m) % 2)
      throw std::logic_error("wide_of_element: mixed parity");
  // Lowest-degree part and its linear annihilator: the factor span.
  SuperElement omega(e.gens);
  for (const auto& [key, c] : e.terms)
    if (key.odd_count() == m) omega.add_term(key, c);
  std::map<TermKey, int> colof;
  std::vector<SuperElement> wrows;
  wrows.reserve(n);
  for (int i = 0; i < n; ++i) {
    wrows.push_back(mul(SuperElement::fermion_var(e.gens, i), omega));
    for (const auto& [key, c] : wrows.back().terms)
      colof.emplace(key, 0);
  }
  int nc = 0;
  for (auto& [key, idx] : colof) idx = nc++;
  CMat W(n, nc);
  for (int i = 0; i < n; ++i)
    for (const auto& [key, c] : wrows[i].terms)
      W.at(i, colof[key]) = exact_coeff(c, "wide_of_element");
  CMat F = left_kernel(W);
  if (F.rows != m)
    throw std::logic_error("wide_of_element: not of kernel product shape");
  // Extend the factor rows to a basis, then rewrite in those coordinates.
  CMat T = F;
  for (int i = 0; i < n && T.rows < n; ++i) {
    CMat row(1, n);
    row.at(0, i) = CQ(1);
    CMat cand = CMat::vstack(T, row);
    if (rank(cand) > T.rows) T = cand;
  }
  CMat Tinv = inverse(T);
  GenSetPtr tg = grassmann_gens(n);
  std::vector<SuperElement> images;
  images.reserve(n);
  for (int a = 0; a < n; ++a) {
    SuperElement img(tg);
    for (int i = 0; i < n; ++i)
      img.add_term(TermKey{0, std::uint64_t(1) << i, 0}, Scalar(Tinv.at(a, i)));
    images.push_back(img);
  }
  SuperElement ep = substitute(e, tg, {}, images, {});
  std::uint64_t base = (std::uint64_t(1) << m) - 1;
  CQ s = exact_coeff(ep.coeff(TermKey{0, base, 0}), "wide_of_element");
  if (s == CQ(0))
    throw std::logic_error("wide_of_element: degenerate factor block");
  CMat Qp(n, n);
  for (int a = m; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      TermKey key{0,
                  base | (std::uint64_t(1) << a) | (std::uint64_t(1) << b), 0};
      CQ val = exact_coeff(ep.coeff(key), "wide_of_element") / s;
      Qp.at(a, b) = val;
      Qp.at(b, a) = -val;
    }
  CMat Q = T.transpose() * Qp * T;
  std::vector<BerezinFactor> factors;
  factors.reserve(m);
  for (int i = 0; i < m; ++i)
    factors.push_back(BerezinFactor{T.block(i, 0, 1, p), T.block(i, p, 1, q)});
  BerezinKernel out =
      make_kernel(p, q, Scalar(s), std::move(factors), Q.block(0, 0, p, p),
                  Q.block(0, p, p, q), Q.block(p, p, q, q));
  if (!(kernel_element(out) == e))
    throw std::logic_error("wide_of_element: element is not of kernel shape");
  return out;
}

BerezinKernel wide_of_dform(const DFactorForm& d) {
  return wide_of_element(dform_element(d), d.core.p, d.core.q);
}

GDMorphism relation_of_matrix(const CMat& op, int p, int q) {
  if (op.rows != (1 << p) || op.cols != (1 << q))
    throw std::invalid_argument("relation_of_matrix: shape mismatch");
  bool zero = true;
  for (const auto& x : op.a)
    if (!x.is_zero()) {
      zero = false;
      break;
    }
  if (zero) return GDMorphism::null(2 * q, 2 * p);
  int cells = (1 << p) * (1 << q);
  CMat G(2 * q + 2 * p, cells);
  auto put = [&](int row, const CMat& m) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) G.at(row, i * (1 << q) + j) = m.at(i, j);
  };
  for (int k = 0; k < q; ++k) {
    put(k, -(op * mult_matrix(q, k)));
    put(q + k, -(op * deriv_matrix(q, k)));
  }
  for (int j = 0; j < p; ++j) {
    put(2 * q + j, mult_matrix(p, j) * op);
    put(2 * q + p + j, deriv_matrix(p, j) * op);
  }
  Subspace sol = Subspace::span(left_kernel(G));
  if (sol.dim() != p + q)
    throw std::domain_error("relation_of_matrix: matrix is not of kernel type");
  return GDMorphism::of(LinearRelation(2 * q, 2 * p, sol));
}

GDMorphism relation_of_operator(const BerezinKernel& k) {
  return relation_of_matrix(matrix_of(k), k.p, k.q);
}

GDMorphism relation_of_dform(const DFactorForm& d) {
  check_dform(d, "relation_of_dform");
  GDMorphism core = relation_of_operator(d.core);
  CMat T = blockdiag(refl_conj_matrix(d.core.q, d.eta),
                     refl_conj_matrix(d.core.p, d.xi));
  return GDMorphism::of(
      LinearRelation(core.nv, core.nw, Subspace::span(core.rel->sub.basis * T)));
}

DFactorForm dform_of_relation(const GDMorphism& P) {
  if (P.is_null())
    throw std::invalid_argument("dform_of_relation: Null has no kernel");
  if (P.nv % 2 || P.nw % 2)
    throw std::invalid_argument("dform_of_relation: odd ambient dimension");
  int q = P.nv / 2, p = P.nw / 2;
  const Subspace& sub = P.rel->sub;
  if (sub.dim() != p + q ||
      !is_lagrangian(sub, ominus(form_l(q), form_l(p))))
    throw std::invalid_argument("dform_of_relation: not a Lagrangian relation");
  std::vector<unsigned> masks(std::size_t(1) << (q + p));
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  for (unsigned J : masks) {
    std::vector<int> eta, xi;
    for (int j = 0; j < q; ++j)
      if ((J >> j) & 1) eta.push_back(j);
    for (int k = 0; k < p; ++k)
      if ((J >> (q + k)) & 1) xi.push_back(k);
    CMat Bm = sub.basis * blockdiag(refl_conj_matrix(q, eta),
                                    refl_conj_matrix(p, xi));
    // Columns: v+ [0,q), v- [q,2q), w+ [2q,2q+p), w- [2q+p,2q+2p).
    CMat E(p + q, p + q), D(p + q, p + q);
    for (int i = 0; i < p + q; ++i) {
      for (int j = 0; j < q; ++j) {
        E.at(i, j) = Bm.at(i, j);
        D.at(i, j) = Bm.at(i, q + j);
      }
      for (int j = 0; j < p; ++j) {
        E.at(i, q + j) = Bm.at(i, 2 * q + p + j);
        D.at(i, q + j) = Bm.at(i, 2 * q + j);
      }
    }
    if (det(E).is_zero()) continue;
    // Graph over (v+, w-): the dependent pair is (v-, w+) = (v+, w-) S with
    // S = (C, B^t; B, -A).
    CMat S = inverse(E) * D;
    CMat C = S.block(0, 0, q, q);
    CMat Bk = S.block(q, 0, p, q);
    CMat A = -S.block(q, q, p, p);
    if (!(S.block(0, q, q, p) == Bk.transpose()))
      throw std::logic_error("dform_of_relation: chart decode inconsistent");
    DFactorForm out{std::move(xi), std::move(eta),
                    narrow_kernel(p, q, std::move(A), std::move(Bk),
                                  std::move(C))};
    return out;
  }
  throw std::logic_error("dform_of_relation: no chart contains the relation");
}

DFactorForm dform_of_wide(const BerezinKernel& k) {
  SuperElement target = kernel_element(k);
  if (target.is_zero())
    throw std::invalid_argument("dform_of_wide: zero kernel");
  DFactorForm d = dform_of_relation(relation_of_operator(k));
  SuperElement have = dform_element(d);
  auto it = target.terms.begin();
  Scalar c1 = have.coeff(it->first);
  if (c1.is_zero())
    throw std::logic_error("dform_of_wide: scale reference term missing");
  d.core.s = d.core.s * (it->second / c1);
  if (!(dform_element(d) == target))
    throw std::logic_error("dform_of_wide: elements not proportional");
  return d;
}

BerezinKernel operator_of_relation(const GDMorphism& P) {
  return wide_of_dform(dform_of_relation(P));
}

int morphism_component_parity(const GDMorphism& P) {
  if (P.is_null())
    throw std::invalid_argument("morphism_component_parity: Null");
  if (P.nv % 2 || P.nw % 2)
    throw std::invalid_argument("morphism_component_parity: odd ambient");
  int q = P.nv / 2, p = P.nw / 2;
  CMat rows(q + p, 2 * q + 2 * p);
  for (int i = 0; i < q; ++i) rows.at(i, q + i) = CQ(1);
  for (int j = 0; j < p; ++j) rows.at(q + j, 2 * q + j) = CQ(1);
  return intersect(P.rel->sub, Subspace::span(rows)).dim() % 2;
}

}  // namespace superalg
