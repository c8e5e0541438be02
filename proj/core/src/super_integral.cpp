#include "superalg/super_integral.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace superalg {

namespace {

void require_even_or_zero(const SMat& m, const char* who) {
  for (const auto& e : m.e)
    if (!e.is_zero() && !e.is_even())
      throw std::invalid_argument(std::string(who) + ": even entry expected");
}

void require_odd_or_zero(const SMat& m, const char* who) {
  for (const auto& e : m.e)
    if (!e.is_zero() && !e.is_odd())
      throw std::invalid_argument(std::string(who) + ": odd entry expected");
}

void require_dims(const SMat& m, int r, int c, const char* who) {
  if (m.rows != r || m.cols != c)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void validate_integrand(const GBIntegrand& in) {
  GenSetPtr g = in.A.gens ? in.A.gens : in.C.gens;
  if (!g) throw std::invalid_argument("gb integrand: no generator set");
  if (!g->bosons.empty() || !g->fermions.empty())
    throw std::invalid_argument(
        "gb integrand: entries must live in a constants algebra "
        "(phantom generators only)");
  for (const SMat* m : {&in.A, &in.B, &in.C, &in.h, &in.g})
    if (!(*m->gens == *g))
      throw std::invalid_argument("gb integrand: mixed generator sets");
  require_dims(in.A, in.p, in.p, "gb integrand A");
  require_dims(in.B, in.p, in.q, "gb integrand B");
  require_dims(in.C, in.q, in.q, "gb integrand C");
  require_dims(in.h, 1, in.p, "gb integrand h");
  require_dims(in.g, 1, in.q, "gb integrand g");
  require_even_or_zero(in.A, "gb integrand A");
  require_odd_or_zero(in.B, "gb integrand B");
  require_even_or_zero(in.C, "gb integrand C");
  require_even_or_zero(in.h, "gb integrand h");
  require_odd_or_zero(in.g, "gb integrand g");
  if (!(in.A == in.A.transpose()))
    throw std::invalid_argument("gb integrand: A not symmetric");
  if (!(in.C == -in.C.transpose()))
    throw std::invalid_argument("gb integrand: C not skew-symmetric");
}

// Body of a constants matrix, tolerating float entries.
bool body_complex(const SMat& m, Eigen::MatrixXcd& out) {
  out.resize(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      out(i, j) = pi_down(m.at(i, j)).body().raw_complex();
  for (const auto& e : m.e)
    for (const auto& [k, c] : e.terms)
      if (!c.is_exact()) return false;  // float somewhere
  return true;
}

void require_convergence(const GBIntegrand& in) {
  if (!gb_converges(in))
    throw std::domain_error(
        "gb integral: real part of the body of A is not negative definite");
}

// Inverse of a square matrix whose body is invertible and whose remaining
// part is nilpotent: Neumann series around the body inverse.
SMat invert_body_nilpotent(const SMat& q) {
  if (q.rows != q.cols)
    throw std::invalid_argument("matrix inverse: not square");
  if (q.rows == 0) return q;
  CMat body = q.body();
  CMat body_inv = inverse(body);  // throws domain_error when singular
  SMat r = SMat::from_cmat(q.gens, body_inv);
  SMat t = SMat::identity(q.gens, q.rows) - r * q;
  SMat acc = SMat::identity(q.gens, q.rows);
  SMat pw = t;
  for (int k = 0; k < 256 && !pw.is_zero(); ++k) {
    acc = acc + pw;
    pw = pw * t;
  }
  if (!pw.is_zero())
    throw std::domain_error("matrix inverse: non-nilpotent remainder");
  return acc * r;
}

// (2pi)^{p/2} det(-A)^{-1/2} as an element over the integrand's generators.
SuperElement boson_prefactor(const GBIntegrand& in) {
  GenSetPtr g = in.A.gens;
  SuperElement d = det_even(-in.A);
  SuperElement pref = invert(sqrt_even(d));
  return mul(SuperElement(g, Scalar::exact(CQ(1), in.p)), pref);
}

GBIntegrand quadratic_part(const GBIntegrand& in) {
  GBIntegrand r = in;
  r.h = SMat(in.A.gens, 1, in.p);
  r.g = SMat(in.A.gens, 1, in.q);
  r.has_linear = false;
  return r;
}

// Exponential that tolerates a nonzero exact scalar part by dropping the
// whole exponent to the float backend first.
SuperElement exp_with_body(const SuperElement& a) {
  Scalar b = a.body();
  if (!b.is_zero() && b.is_exact()) return exp_even(a.to_float());
  return exp_even(a);
}

// Gaussian moment E[x_{i_1} ... x_{i_m}] for the centered measure with
// covariance cov, by recursive Wick pairing. idx is sorted.
CQ gauss_moment(const CMat& cov, const std::vector<int>& idx,
                std::map<std::vector<int>, CQ>& memo) {
  if (idx.empty()) return CQ(1);
  if (idx.size() % 2) return CQ(0);
  auto it = memo.find(idx);
  if (it != memo.end()) return it->second;
  CQ acc;
  for (size_t t = 1; t < idx.size(); ++t) {
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (size_t s = 1; s < idx.size(); ++s)
      if (s != t) rest.push_back(idx[s]);
    acc += cov.at(idx[0], idx[t]) * gauss_moment(cov, rest, memo);
  }
  memo.emplace(idx, acc);
  return acc;
}

SuperElement constants_to(GenSetPtr g, const SuperElement& a) {
  SuperElement r(g);
  for (const auto& [k, c] : a.terms) {
    if (k.boson != 0 || k.ferm != 0)
      throw std::logic_error("constants_to: non-constant term left over");
    r.add_term(k, c);
  }
  return r;
}

}  // namespace

GBIntegrand make_gb_integrand(int p, int q, SMat A, SMat B, SMat C) {
  GenSetPtr g = A.gens ? A.gens : C.gens;
  GBIntegrand in;
  in.p = p;
  in.q = q;
  in.A = std::move(A);
  in.B = std::move(B);
  in.C = std::move(C);
  in.h = SMat(g, 1, p);
  in.g = SMat(g, 1, q);
  in.has_linear = false;
  validate_integrand(in);
  return in;
}

GBIntegrand make_gb_integrand_linear(int p, int q, SMat A, SMat B, SMat C,
                                     SMat h, SMat g) {
  GBIntegrand in = make_gb_integrand(p, q, std::move(A), std::move(B),
                                     std::move(C));
  in.h = std::move(h);
  in.g = std::move(g);
  in.has_linear = true;
  validate_integrand(in);
  return in;
}

bool gb_converges(const GBIntegrand& in) {
  if (in.p == 0) return true;
  Eigen::MatrixXcd body;
  bool exact = body_complex(in.A, body);
  if (exact) {
    // Sylvester on the exact real part: (-1)^k det_k > 0 for every leading
    // principal minor.
    CMat re(in.p, in.p);
    for (int i = 0; i < in.p; ++i)
      for (int j = 0; j < in.p; ++j)
        re.at(i, j) = CQ(pi_down(in.A.at(i, j)).body().exact_value().re);
    for (int k = 1; k <= in.p; ++k) {
      CQ d = det(re.block(0, 0, k, k));
      bool ok = (k % 2) ? d.re < 0 : d.re > 0;
      if (!ok) return false;
    }
    return true;
  }
  Eigen::MatrixXd re = body.real();
  re = ((re + re.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re);
  return es.eigenvalues().maxCoeff() < 0.0;
}

SuperElement gb_integral(const GBIntegrand& in) {
  validate_integrand(in);
  require_convergence(in);
  GenSetPtr g = in.A.gens;
  if (in.q % 2) return SuperElement::zero(g);
  SMat a_inv = inverse_even(in.A);
  SMat d = in.C + in.B.transpose() * (a_inv * in.B);
  return mul(boson_prefactor(in), pfaffian(d));
}

SuperElement fermionic_general(const SMat& D, const SMat& r) {
  if (D.rows != D.cols)
    throw std::invalid_argument("fermionic_general: D not square");
  if (r.rows != 1 || r.cols != D.rows)
    throw std::invalid_argument("fermionic_general: r must be a 1 x q row");
  require_even_or_zero(D, "fermionic_general D");
  require_odd_or_zero(r, "fermionic_general r");
  if (!(D == -D.transpose()))
    throw std::invalid_argument("fermionic_general: D not skew-symmetric");
  int q = D.rows;
  if (q > 30) throw std::invalid_argument("fermionic_general: q too large");
  GenSetPtr g = D.gens;
  SuperElement acc(g);
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
    int k2 = std::popcount(mask);
    if (k2 % 2) continue;
    std::uint32_t comp = ~mask & ((q == 0) ? 0u : ((1u << q) - 1));
    int s = q - k2;
    int sgn = merge_sign(mask, comp);
    if ((s * (s - 1) / 2) % 2) sgn = -sgn;
    std::vector<int> idx;
    for (int i = 0; i < q; ++i)
      if (mask >> i & 1) idx.push_back(i);
    SMat sub(g, k2, k2);
    for (int a = 0; a < k2; ++a)
      for (int b = 0; b < k2; ++b) sub.at(a, b) = D.at(idx[a], idx[b]);
    SuperElement term = pfaffian(sub);
    if (term.is_zero()) continue;
    for (int j = 0; j < q; ++j)
      if (comp >> j & 1) term = mul(term, r.at(0, j));
    acc += (sgn < 0) ? -term : term;
  }
  return acc;
}

SuperElement gb_integral_linear(const GBIntegrand& in, LinearRoute route) {
  validate_integrand(in);
  require_convergence(in);
  GenSetPtr g = in.A.gens;
  if (route == LinearRoute::Auto) {
    bool c_invertible = (in.q == 0);
    if (in.q > 0 && in.q % 2 == 0) {
      try {
        inverse(in.C.body());
        c_invertible = true;
      } catch (const std::domain_error&) {
      } catch (const std::logic_error&) {
      }
    }
    route = c_invertible ? LinearRoute::Shift : LinearRoute::Staged;
  }

  if (route == LinearRoute::Shift) {
    int n = in.p + in.q;
    SMat big(g, n, n);
    big.set_block(0, 0, in.A);
    big.set_block(0, in.p, in.B);
    big.set_block(in.p, 0, -in.B.transpose());
    big.set_block(in.p, in.p, in.C);
    SMat m(g, 1, n);
    m.set_block(0, 0, in.h);
    m.set_block(0, in.p, in.g);
    SMat big_inv = invert_body_nilpotent(big);
    SMat ncol = big_inv * m.transpose();
    // kappa = -(1/2) sum_a n_a m_a, factor order as written; the fermion
    // slots contribute odd * odd products whose order matters.
    SuperElement kappa =
        (ncol.transpose() * m.transpose()).at(0, 0) *
        Scalar::exact(CQ(mpq_class(-1, 2)));
    return mul(exp_with_body(kappa), gb_integral(quadratic_part(in)));
  }

  // Staged: integrate the commuting variables, then the fermionic leftover
  // int exp{(1/2) xi D xi^t + xi r^t} d xi.
  SMat a_inv = inverse_even(in.A);
  SMat d = in.C + in.B.transpose() * (a_inv * in.B);
  SMat r = in.g + (in.h * a_inv) * in.B;
  SuperElement hh = (in.p == 0)
                        ? SuperElement::zero(g)
                        : (in.h * a_inv * in.h.transpose()).at(0, 0) *
                              Scalar::exact(CQ(mpq_class(-1, 2)));
  SuperElement pref = mul(boson_prefactor(in), exp_with_body(hh));
  return mul(pref, fermionic_general(d, r));
}

SuperElement wick_oracle(const GBIntegrand& in) {
  validate_integrand(in);
  require_convergence(in);
  GenSetPtr gin = in.A.gens;
  if (in.p > 8)
    throw std::invalid_argument("wick_oracle: at most 8 commuting variables");
  for (const auto& e : in.h.e)
    if (!pi_down(e).is_zero())
      throw std::invalid_argument(
          "wick_oracle: linear boson term must have nilpotent entries");

  int nph = gin->phantoms;
  int trunc = std::min(250, nph + in.q + 2);
  if (in.p == 0) trunc = 0;
  std::vector<std::string> bs, fs;
  for (int i = 0; i < in.p; ++i) bs.push_back("x" + std::to_string(i + 1));
  for (int k = 0; k < in.q; ++k) fs.push_back("xi" + std::to_string(k + 1));
  GenSetPtr w = make_gens(bs, fs, nph, trunc);

  auto lift = [&](const SuperElement& e) {
    return map_generators(e, w, {}, {});
  };
  std::vector<SuperElement> x, xi;
  for (int i = 0; i < in.p; ++i) x.push_back(SuperElement::boson_var(w, i));
  for (int k = 0; k < in.q; ++k) xi.push_back(SuperElement::fermion_var(w, k));

  // Body of A and the nilpotent correction nu.
  CMat a0(in.p, in.p);
  for (int i = 0; i < in.p; ++i)
    for (int j = 0; j < in.p; ++j)
      a0.at(i, j) = pi_down(in.A.at(i, j)).body().exact_value();

  Scalar half = Scalar::exact(CQ(mpq_class(1, 2)));
  SuperElement expo(w);
  for (int i = 0; i < in.p; ++i)
    for (int j = 0; j < in.p; ++j) {
      SuperElement nu = lift(in.A.at(i, j)) - SuperElement(w, Scalar(a0.at(i, j)));
      if (nu.is_zero()) continue;
      expo += mul(mul(x[i], x[j]), nu) * half;
    }
  for (int i = 0; i < in.p; ++i)
    for (int k = 0; k < in.q; ++k)
      expo += mul(mul(x[i], lift(in.B.at(i, k))), xi[k]);
  for (int k = 0; k < in.q; ++k)
    for (int l = 0; l < in.q; ++l)
      expo += mul(mul(xi[k], lift(in.C.at(k, l))), xi[l]) * half;
  for (int i = 0; i < in.p; ++i) expo += mul(x[i], lift(in.h.at(0, i)));
  for (int k = 0; k < in.q; ++k) expo += mul(xi[k], lift(in.g.at(0, k)));
  if (!expo.is_zero() && !expo.is_even())
    throw std::logic_error("wick_oracle: exponent not even");

  SuperElement poly = exp_even(expo);
  if (poly.truncated)
    throw std::logic_error("wick_oracle: boson degree cap too small");

  // Termwise x-integration: x^alpha -> E[x^alpha] with covariance (-A0)^{-1}.
  SuperElement integrated(w);
  if (in.p > 0) {
    CMat cov = inverse(-a0);
    std::map<std::vector<int>, CQ> memo;
    for (const auto& [k, c] : poly.terms) {
      std::vector<int> idx;
      for (int i = 0; i < in.p; ++i)
        for (int e = 0; e < k.boson_exp(i); ++e) idx.push_back(i);
      CQ mom = gauss_moment(cov, idx, memo);
      if (mom.is_zero()) continue;
      TermKey nk = k;
      nk.boson = 0;
      integrated.add_term(nk, c * Scalar(mom));
    }
  } else {
    integrated = poly;
  }

  std::vector<int> order(in.q);
  for (int k = 0; k < in.q; ++k) order[k] = k;
  SuperElement ferm = berezin_integral_seq(integrated, order);

  Scalar s0 = Scalar::exact(CQ(1), in.p);
  if (in.p > 0) s0 = s0 / Scalar(det(-a0)).sqrt();
  return constants_to(gin, ferm) * s0;
}

std::pair<CMat, int> skew_normal_form(const CMat& D) {
  if (D.rows != D.cols)
    throw std::invalid_argument("skew_normal_form: not square");
  if (!(D == -D.transpose()))
    throw std::invalid_argument("skew_normal_form: not skew-symmetric");
  int q = D.rows;
  CMat e = D;
  CMat s = CMat::identity(q);

  auto swap_rows = [&](CMat& m, int a, int b) {
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](CMat& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
  };

  int t = 0;
  while (t + 1 < q) {
    int pi = -1, pj = -1;
    for (int i = t; i < q && pi < 0; ++i)
      for (int j = i + 1; j < q; ++j)
        if (!e.at(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != t) {
      swap_rows(e, pi, t);
      swap_cols(e, pi, t);
      swap_rows(s, pi, t);
      if (pj == t) pj = pi;
    }
    if (pj != t + 1) {
      swap_rows(e, pj, t + 1);
      swap_cols(e, pj, t + 1);
      swap_rows(s, pj, t + 1);
    }
    CQ c = CQ(1) / e.at(t, t + 1);
    for (int j = 0; j < q; ++j) e.at(t + 1, j) *= c;
    for (int i = 0; i < q; ++i) e.at(i, t + 1) *= c;
    for (int j = 0; j < q; ++j) s.at(t + 1, j) *= c;
    // Clear rows/cols t, t+1 below the pivot block: row_k += alpha row_t +
    // beta row_{t+1} with alpha = -e(k,t+1), beta = e(k,t), then the same
    // on columns.
    CMat l = CMat::identity(q);
    for (int k = t + 2; k < q; ++k) {
      l.at(k, t) = -e.at(k, t + 1);
      l.at(k, t + 1) = e.at(k, t);
    }
    e = l * e * l.transpose();
    s = l * s;
    t += 2;
  }
  int gamma = t / 2;
  CMat check(q, q);
  for (int j = 0; j < gamma; ++j) {
    check.at(2 * j, 2 * j + 1) = CQ(1);
    check.at(2 * j + 1, 2 * j) = CQ(-1);
  }
  if (!(e == check))
    throw std::logic_error("skew_normal_form: reduction failed");
  return {s, gamma};
}

GrassmannGaussCanonical grassmann_gauss_canonical(const CMat& D) {
  auto [s, gamma] = skew_normal_form(D);
  int q = D.rows;
  int m = q - 2 * gamma;
  GrassmannGaussCanonical out;
  out.gamma = gamma;
  CQ ds = det(s);
  CQ sc = CQ(1) / ds;
  if ((m * (m - 1) / 2) % 2) sc = -sc;
  out.s = Scalar(sc);
  out.factors = s.block(2 * gamma, 0, m, q);
  CMat quad(q, q);
  for (int j = 0; j < gamma; ++j) {
    CMat ha = s.row(2 * j), hb = s.row(2 * j + 1);
    quad = quad + hb.transpose() * ha - ha.transpose() * hb;
  }
  out.Q = quad;
  return out;
}

}  // namespace superalg
