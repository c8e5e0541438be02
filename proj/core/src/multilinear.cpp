#include "superalg/multilinear.hpp"

#include <Eigen/Dense>
#include <map>

namespace superalg {

SMat SMat::identity(GenSetPtr g, int n) {
  SMat m(g, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = SuperElement::one(g);
  return m;
}

SMat SMat::from_cmat(GenSetPtr g, const CMat& c) {
  SMat m(g, c.rows, c.cols);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j)
      m.at(i, j) = SuperElement(g, Scalar(c.at(i, j)));
  return m;
}

SMat SMat::operator*(const SMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("SMat: dim mismatch");
  SMat r(gens, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols; ++j)
        if (!o.at(k, j).is_zero())
          r.at(i, j) += mul(at(i, k), o.at(k, j));
    }
  return r;
}

SMat SMat::operator+(const SMat& o) const {
  SMat r = *this;
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

SMat SMat::operator-(const SMat& o) const { return *this + (-o); }

SMat SMat::operator-() const {
  SMat r = *this;
  for (auto& x : r.e) x = -x;
  return r;
}

SMat SMat::scaled(const Scalar& c) const {
  SMat r = *this;
  for (auto& x : r.e) x = x * c;
  return r;
}

SMat SMat::transpose() const {
  SMat r(gens, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

SMat SMat::block(int i0, int j0, int r, int c) const {
  SMat b(gens, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
  return b;
}

void SMat::set_block(int i0, int j0, const SMat& b) {
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

SMat SMat::map(const std::function<SuperElement(const SuperElement&)>& f) const {
  SMat r = *this;
  for (auto& x : r.e) x = f(x);
  return r;
}

CMat SMat::body() const {
  CMat r(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Scalar s = pi_down(at(i, j)).body();
      if (s.tau() != 0)
        throw std::domain_error("SMat::body: symbolic scalar factor");
      r.at(i, j) = s.is_exact() ? s.exact_value()
                                : throw std::domain_error("SMat::body: float entry");
    }
  return r;
}

bool SMat::is_zero() const {
  for (const auto& x : e)
    if (!x.is_zero()) return false;
  return true;
}

double SMat::float_norm() const {
  double m = 0;
  for (const auto& x : e) m = std::max(m, x.float_norm());
  return m;
}

SMat vstack_smat(const SMat& a, const SMat& b) {
  SMat r(a.gens ? a.gens : b.gens, a.rows + b.rows, a.rows ? a.cols : b.cols);
  r.set_block(0, 0, a);
  r.set_block(a.rows, 0, b);
  return r;
}

SMat hstack_smat(const SMat& a, const SMat& b) {
  SMat r(a.gens ? a.gens : b.gens, a.rows ? a.rows : b.rows, a.cols + b.cols);
  r.set_block(0, 0, a);
  r.set_block(0, a.cols, b);
  return r;
}

namespace {

void require_even_entries(const SMat& m, const char* who) {
  for (const auto& x : m.e)
    if (!x.is_even())
      throw std::invalid_argument(std::string(who) + ": entries must be even");
}

SuperElement pfaffian_rec(const SMat& R, std::vector<int>& idx,
                          std::map<std::uint64_t, SuperElement>& memo) {
  if (idx.empty()) return SuperElement::one(R.gens);
  std::uint64_t key = 0;
  for (int i : idx) key |= std::uint64_t(1) << i;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  SuperElement acc(R.gens);
  int i0 = idx[0];
  for (size_t t = 1; t < idx.size(); ++t) {
    const SuperElement& a = R.at(i0, idx[t]);
    if (a.is_zero()) continue;
    std::vector<int> rest;
    for (size_t s = 1; s < idx.size(); ++s)
      if (s != t) rest.push_back(idx[s]);
    SuperElement term = mul(a, pfaffian_rec(R, rest, memo));
    acc += (t % 2 == 1) ? term : -term;
  }
  memo.emplace(key, acc);
  return acc;
}

}  // namespace

SuperElement pfaffian(const SMat& R) {
  if (R.rows != R.cols) throw std::invalid_argument("pfaffian: not square");
  require_even_entries(R, "pfaffian");
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < R.cols; ++j)
      if (!(R.at(i, j) == -R.at(j, i)))
        throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
  if (R.rows % 2) return SuperElement(R.gens);
  std::vector<int> idx(R.rows);
  for (int i = 0; i < R.rows; ++i) idx[i] = i;
  std::map<std::uint64_t, SuperElement> memo;
  return pfaffian_rec(R, idx, memo);
}

namespace {

SuperElement det_rec(const SMat& M, std::vector<int>& cols_left, int row,
                     std::map<std::uint64_t, SuperElement>& memo) {
  if (cols_left.empty()) return SuperElement::one(M.gens);
  std::uint64_t key = 0;
  for (int c : cols_left) key |= std::uint64_t(1) << c;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  SuperElement acc(M.gens);
  for (size_t t = 0; t < cols_left.size(); ++t) {
    const SuperElement& a = M.at(row, cols_left[t]);
    if (a.is_zero()) continue;
    std::vector<int> rest;
    for (size_t s = 0; s < cols_left.size(); ++s)
      if (s != t) rest.push_back(cols_left[s]);
    SuperElement term = mul(a, det_rec(M, rest, row + 1, memo));
    acc += (t % 2 == 0) ? term : -term;
  }
  memo.emplace(key, acc);
  return acc;
}

}  // namespace

SuperElement det_even(const SMat& M) {
  if (M.rows != M.cols) throw std::invalid_argument("det_even: not square");
  require_even_entries(M, "det_even");
  std::vector<int> cols(M.cols);
  for (int i = 0; i < M.cols; ++i) cols[i] = i;
  std::map<std::uint64_t, SuperElement> memo;
  return det_rec(M, cols, 0, memo);
}

SMat inverse_even(const SMat& M) {
  SuperElement d = det_even(M);
  SuperElement dinv = invert(d);
  int n = M.rows;
  SMat adj(M.gens, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // cofactor C_ji
      SMat minor(M.gens, n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc++) = M.at(r, c);
        }
        ++rr;
      }
      SuperElement cof = det_even(minor);
      adj.at(i, j) = ((i + j) % 2) ? -cof : cof;
    }
  return adj.map([&](const SuperElement& x) { return mul(x, dinv); });
}

namespace {

void check_supermatrix_parity(const SuperMatrix& s) {
  for (int i = 0; i < s.p + s.q; ++i)
    for (int j = 0; j < s.p + s.q; ++j) {
      bool diag_block = (i < s.p) == (j < s.p);
      int want = diag_block ? s.parity : 1 - s.parity;
      const SuperElement& x = s.m.at(i, j);
      if (x.is_zero()) continue;
      if (x.parity() != want)
        throw std::invalid_argument("supermatrix: entry parity violates block pattern");
    }
}

}  // namespace

SuperMatrix make_supermatrix(int p, int q, int parity, const SMat& entries) {
  if (entries.rows != p + q || entries.cols != p + q)
    throw std::invalid_argument("make_supermatrix: size");
  SuperMatrix s{p, q, parity, entries};
  check_supermatrix_parity(s);
  return s;
}

SuperMatrix super_identity(GenSetPtr g, int p, int q) {
  return SuperMatrix{p, q, 0, SMat::identity(g, p + q)};
}

SuperMatrix super_mul(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p != b.p || a.q != b.q)
    throw std::invalid_argument("super_mul: size mismatch");
  return SuperMatrix{a.p, a.q, (a.parity + b.parity) % 2, a.m * b.m};
}

SuperElement berezinian(const SuperMatrix& Q) {
  if (Q.parity != 0) throw std::invalid_argument("berezinian: matrix must be even");
  SMat A = Q.A(), B = Q.B(), C = Q.C(), D = Q.D();
  SuperElement dA = det_even(A), dD = det_even(D);
  if (pi_down(dA).body().is_zero() || pi_down(dD).body().is_zero())
    throw std::domain_error("berezinian: diagonal block not invertible");
  SMat Ainv = inverse_even(A);
  SuperElement schur = det_even(D - C * Ainv * B);
  return mul(invert(dA), schur);
}

SuperMatrix supertranspose(const SuperMatrix& Q) {
  SMat At = Q.A().transpose(), Bt = Q.B().transpose(), Ct = Q.C().transpose(),
       Dt = Q.D().transpose();
  SMat r(Q.m.gens, Q.p + Q.q, Q.p + Q.q);
  r.set_block(0, 0, At);
  r.set_block(Q.p, Q.p, Dt);
  if (Q.parity == 0) {
    r.set_block(0, Q.p, Ct);
    r.set_block(Q.p, 0, -Bt);
  } else {
    r.set_block(0, Q.p, -Ct);
    r.set_block(Q.p, 0, Bt);
  }
  return SuperMatrix{Q.p, Q.q, Q.parity, r};
}

SMat osp_J(GenSetPtr g, int p, int q) {
  SMat J(g, 2 * p + 2 * q, 2 * p + 2 * q);
  Scalar half(CQ(mpq_class(1, 2)));
  for (int i = 0; i < p; ++i) {
    J.at(i, p + i) = SuperElement(g, half);
    J.at(p + i, i) = SuperElement(g, -half);
  }
  for (int j = 0; j < q; ++j) {
    J.at(2 * p + j, 2 * p + q + j) = SuperElement(g, half);
    J.at(2 * p + q + j, 2 * p + j) = SuperElement(g, half);
  }
  return J;
}

SuperElement osp_form(const SMat& u, const SMat& v, int parity_u,
                      int parity_v, int p, int q) {
  (void)parity_u;
  SMat J = osp_J(u.gens, p, q);
  // v^st for a row vector: (a, b)^st = (a^t; -b^t) when v is even,
  // (a^t; b^t) when odd (the vector seen as a one-row supermatrix).
  SMat vst(v.gens, 2 * p + 2 * q, 1);
  for (int j = 0; j < 2 * p; ++j) vst.at(j, 0) = v.at(0, j);
  for (int j = 0; j < 2 * q; ++j) {
    const SuperElement& x = v.at(0, 2 * p + j);
    vst.at(2 * p + j, 0) = parity_v == 0 ? -x : x;
  }
  return (u * J * vst).at(0, 0);
}

bool is_osp(const SuperMatrix& g) {
  if (g.parity != 0) throw std::invalid_argument("is_osp: matrix must be even");
  if (g.p % 2 || g.q % 2)
    throw std::invalid_argument("is_osp: block sizes must be (2p|2q)");
  SMat J = osp_J(g.m.gens, g.p / 2, g.q / 2);
  SMat lhs = g.m * J * supertranspose(g).m;
  return lhs == J;
}

SuperMatrix osp_exp(const SuperMatrix& X, int order) {
  if (X.parity != 0) throw std::invalid_argument("osp_exp: even matrices only");
  if (X.p % 2 || X.q % 2)
    throw std::invalid_argument("osp_exp: block sizes must be (2p|2q)");
  SMat J = osp_J(X.m.gens, X.p / 2, X.q / 2);
  if (!((X.m * J + J * supertranspose(X).m).is_zero()))
    throw std::invalid_argument("osp_exp: X J + J X^st != 0");
  int n = X.p + X.q;
  SMat acc = SMat::identity(X.m.gens, n);
  SMat pw = SMat::identity(X.m.gens, n);
  mpz_class kfact(1);
  for (int k = 1; k <= order; ++k) {
    pw = pw * X.m;
    if (pw.is_zero()) break;
    kfact *= k;
    acc = acc + pw.scaled(Scalar(CQ(mpq_class(mpz_class(1), kfact))));
  }
  return SuperMatrix{X.p, X.q, 0, acc};
}

bool is_hermitian_psd(const CMat& h) {
  int n = h.rows;
  // every principal minor of a Hermitian PSD matrix is a nonnegative real
  for (std::uint64_t s = 1; s < (std::uint64_t(1) << n); ++s) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (s & (std::uint64_t(1) << i)) idx.push_back(i);
    CMat sub(int(idx.size()), int(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j)
        sub.at(int(i), int(j)) = h.at(idx[i], idx[j]);
    CQ d = det(sub);
    if (d.im != 0 || d.re < 0) return false;
  }
  return true;
}

bool is_olshanski_classical(const CMat& g, double tol) {
  int n2 = g.rows;
  if (n2 % 2) throw std::invalid_argument("is_olshanski_classical: odd size");
  int n = n2 / 2;
  // contraction of the indefinite Hermitian form diag(I, -I): the
  // orientation under which membership matches bounded Gaussian operators
  CMat lambda(n2, n2);
  for (int i = 0; i < n; ++i) lambda.at(i, i) = CQ(1);
  for (int i = n; i < n2; ++i) lambda.at(i, i) = CQ(-1);
  CMat diff = g * lambda * g.adjoint() - lambda;
  if (tol <= 0.0) return is_hermitian_psd(-diff);
  Eigen::MatrixXcd d(n2, n2);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) d(i, j) = diff.at(i, j).to_complex();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
  return es.eigenvalues().maxCoeff() <= tol;
}

bool is_olshanski_super(const SuperMatrix& g) {
  if (!is_osp(g)) throw std::invalid_argument("is_olshanski_super: not in the group");
  return is_olshanski_classical(g.A().body());
}

namespace {

mpq_class small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-2, 2), den(1, 2);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// g = (A 0; 0 (A^{-1})^t), shear (I S; 0 I), or its transpose-side twin;
// S symmetric for the skew form, skew for the symmetric form.
CMat rand_form_group(std::mt19937_64& rng, int n, int nfactors, bool skew_form) {
  CMat g = CMat::identity(2 * n);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int f = 0; f < nfactors; ++f) {
    CMat h = CMat::identity(2 * n);
    int k = kind(rng);
    if (k == 0) {
      CMat A = CMat::identity(n);
      // random unitriangular with rational fill stays invertible
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) A.at(i, j) = CQ(small_rat(rng));
      if (rng() & 1) A = A.transpose();
      h.set_block(0, 0, A);
      h.set_block(n, n, inverse(A).transpose());
    } else {
      CMat S(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S.at(i, j) = CQ(small_rat(rng));
      CMat Ssym = skew_form ? S + S.transpose() : S - S.transpose();
      if (k == 1)
        h.set_block(0, n, Ssym);
      else
        h.set_block(n, 0, Ssym);
    }
    g = g * h;
  }
  return g;
}

}  // namespace

CMat rand_sp_rational(std::mt19937_64& rng, int n, int nfactors) {
  return rand_form_group(rng, n, nfactors, true);
}

CMat rand_orth_split_rational(std::mt19937_64& rng, int n, int nfactors) {
  return rand_form_group(rng, n, nfactors, false);
}

SuperMatrix osp_odd_generator(const SMat& B, int p2, int q2) {
  if (B.rows != p2 || B.cols != q2)
    throw std::invalid_argument("osp_odd_generator: B size");
  if (p2 % 2 || q2 % 2) throw std::invalid_argument("osp_odd_generator: sizes");
  GenSetPtr g = B.gens;
  int P = p2 / 2, Q = q2 / 2;
  // C = -Kf B^t Kb, forced by X J + J X^st = 0 for X = (0 B; C 0)
  CMat Kb(p2, p2), Kf(q2, q2);
  for (int i = 0; i < P; ++i) {
    Kb.at(i, P + i) = CQ(1);
    Kb.at(P + i, i) = CQ(-1);
  }
  for (int j = 0; j < Q; ++j) {
    Kf.at(j, Q + j) = CQ(1);
    Kf.at(Q + j, j) = CQ(1);
  }
  SMat C = -(SMat::from_cmat(g, Kf) * B.transpose() * SMat::from_cmat(g, Kb));
  SMat m(g, p2 + q2, p2 + q2);
  m.set_block(0, p2, B);
  m.set_block(p2, 0, C);
  return make_supermatrix(p2, q2, 0, m);
}

namespace {

SuperMatrix osp_from_body(std::mt19937_64& rng, GenSetPtr g, int p, int q,
                          const CMat& a) {
  CMat d = rand_orth_split_rational(rng, q, 3);
  SMat body(g, 2 * p + 2 * q, 2 * p + 2 * q);
  body.set_block(0, 0, SMat::from_cmat(g, a));
  body.set_block(2 * p, 2 * p, SMat::from_cmat(g, d));
  SuperMatrix gb = make_supermatrix(2 * p, 2 * q, 0, body);
  if (g->phantoms == 0) return gb;
  SMat B(g, 2 * p, 2 * q);
  std::uniform_int_distribution<int> ph(0, g->phantoms - 1);
  for (int i = 0; i < 2 * p; ++i)
    for (int j = 0; j < 2 * q; ++j)
      B.at(i, j) = SuperElement::phantom_var(g, ph(rng)) * Scalar(CQ(small_rat(rng)));
  SuperMatrix X = osp_odd_generator(B, 2 * p, 2 * q);
  return super_mul(gb, osp_exp(X, 4 * (g->phantoms + 1)));
}

}  // namespace

SuperMatrix rand_osp(std::mt19937_64& rng, GenSetPtr g, int p, int q) {
  return osp_from_body(rng, g, p, q, rand_sp_rational(rng, p, 3));
}

CMat rand_gamma_sp_rational(std::mt19937_64& rng, int n, int nfactors) {
  CMat g = CMat::identity(2 * n);
  std::uniform_int_distribution<int> kind(0, 2), which(0, n - 1),
      mk(1, 3);
  for (int f = 0; f < nfactors; ++f) {
    CMat h = CMat::identity(2 * n);
    int k = kind(rng);
    int i = which(rng);
    if (k == 0) {
      // pair block (a b; conj b, conj a), |a|^2 - |b|^2 = 1
      mpq_class a_re, b_re;
      if (rng() & 1) {
        int m = mk(rng) + 1, kk = mk(rng) % m;
        mpq_class den(m * m - kk * kk);
        a_re = mpq_class(m * m + kk * kk) / den;
        b_re = mpq_class(2 * m * kk) / den;
        h.at(i, i) = CQ(a_re);
        h.at(i, n + i) = CQ(b_re);
        h.at(n + i, i) = CQ(b_re);
        h.at(n + i, n + i) = CQ(a_re);
      } else {
        // unit-modulus phase a = (3+4i)/5, b = 0
        CQ a(mpq_class(3, 5), mpq_class(4, 5));
        h.at(i, i) = a;
        h.at(n + i, n + i) = a.conj();
      }
    } else if (k == 1) {
      // contracting dilation: |t| <= 1 on the creation coordinate
      mpq_class t(1, mk(rng) + 1);
      h.at(i, i) = CQ(t);
      h.at(n + i, n + i) = CQ(1 / t);
    } else if (n > 1) {
      // swap two pairs simultaneously
      int j = which(rng);
      if (i != j) {
        h.at(i, i) = h.at(j, j) = CQ(0);
        h.at(i, j) = h.at(j, i) = CQ(1);
        h.at(n + i, n + i) = h.at(n + j, n + j) = CQ(0);
        h.at(n + i, n + j) = h.at(n + j, n + i) = CQ(1);
      }
    }
    g = g * h;
  }
  return g;
}

SuperMatrix rand_gamma_osp(std::mt19937_64& rng, GenSetPtr g, int p, int q) {
  return osp_from_body(rng, g, p, q, rand_gamma_sp_rational(rng, p, 3));
}

CMat FormDescriptor::gram() const {
  int n = half_dim;
  switch (kind) {
    case FormKind::SymmetricL: {
      CMat m(2 * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        m.at(i, n + i) = CQ(1);
        m.at(n + i, i) = CQ(1);
      }
      return m;
    }
    case FormKind::SkewLambda: {
      CMat m(2 * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        m.at(i, n + i) = CQ(1);
        m.at(n + i, i) = CQ(-1);
      }
      return m;
    }
    case FormKind::HermitianM: {
      CMat m(2 * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        m.at(i, i) = CQ(1);
        m.at(n + i, n + i) = CQ(-1);
      }
      return m;
    }
    default:
      throw std::invalid_argument("FormDescriptor: OSp form has no numeric Gram");
  }
}

}  // namespace superalg
