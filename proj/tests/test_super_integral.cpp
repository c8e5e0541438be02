#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <superalg/super_integral.hpp>

#include "test_util.hpp"

using namespace superalg;
using tutil::rand_cq;
using tutil::rand_element;
using tutil::rand_rat;

namespace {

GenSetPtr constants_gens(int nph) { return make_gens({}, {}, nph); }

// Even element with zero body: nilpotent even coefficient.
SuperElement rand_even_nil(std::mt19937_64& rng, const GenSetPtr& g,
                           int nterms = 1) {
  SuperElement e = rand_element(rng, g, nterms, 0);
  e.terms.erase(TermKey{});
  return e;
}

SuperElement rand_odd(std::mt19937_64& rng, const GenSetPtr& g,
                      int nterms = 1) {
  return rand_element(rng, g, nterms, 1);
}

CMat rand_invertible(std::mt19937_64& rng, int n) {
  for (;;) {
    CMat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.at(i, j) = CQ(rand_rat(rng));
    if (!det(r).is_zero()) return r;
  }
}

// Symmetric A with body -R R^t (so the body is negative definite with a
// perfect-square determinant) plus nilpotent symmetric corrections.
SMat rand_a(std::mt19937_64& rng, const GenSetPtr& g, int p, bool nil = true) {
  CMat r = rand_invertible(rng, p);
  CMat body = -(r * r.transpose());
  SMat a = SMat::from_cmat(g, body);
  if (nil)
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) {
        SuperElement n = rand_even_nil(rng, g);
        a.at(i, j) += n;
        if (i != j) a.at(j, i) += n;
      }
  return a;
}

SMat rand_b(std::mt19937_64& rng, const GenSetPtr& g, int p, int q) {
  SMat b(g, p, q);
  for (auto& e : b.e) e = rand_odd(rng, g);
  return b;
}

SMat rand_c(std::mt19937_64& rng, const GenSetPtr& g, int q,
            bool with_body = true) {
  SMat c(g, q, q);
  for (int k = 0; k < q; ++k)
    for (int l = k + 1; l < q; ++l) {
      SuperElement e = rand_even_nil(rng, g);
      if (with_body) e += SuperElement(g, Scalar(rand_cq(rng)));
      c.at(k, l) = e;
      c.at(l, k) = -e;
    }
  return c;
}

SMat rand_h_nil(std::mt19937_64& rng, const GenSetPtr& g, int p) {
  SMat h(g, 1, p);
  for (auto& e : h.e) e = rand_even_nil(rng, g);
  return h;
}

SMat rand_g_row(std::mt19937_64& rng, const GenSetPtr& g, int q) {
  SMat r(g, 1, q);
  for (auto& e : r.e) e = rand_odd(rng, g);
  return r;
}

// Direct evaluation of int exp{(1/2) xi D xi^t + xi r^t} d xi by expanding
// the exponential over fermion generators and reading the top coefficient.
// The comparison happens in the working generator set.
SuperElement direct_fermionic(const SMat& D, const SMat& r, GenSetPtr& w_out) {
  int q = D.rows;
  std::vector<std::string> fs;
  for (int k = 0; k < q; ++k) fs.push_back("xi" + std::to_string(k + 1));
  GenSetPtr w = make_gens({}, fs, D.gens->phantoms, 0);
  w_out = w;
  auto lift = [&](const SuperElement& e) {
    return map_generators(e, w, {}, {});
  };
  Scalar half = Scalar::exact(CQ(mpq_class(1, 2)));
  SuperElement expo(w);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l)
      expo += mul(mul(SuperElement::fermion_var(w, k), lift(D.at(k, l))),
                  SuperElement::fermion_var(w, l)) *
              half;
  for (int k = 0; k < q; ++k)
    expo += mul(SuperElement::fermion_var(w, k), lift(r.at(0, k)));
  std::vector<int> order(q);
  for (int k = 0; k < q; ++k) order[k] = k;
  return berezin_integral_seq(exp_even(expo), order);
}

SuperElement lift_to(const GenSetPtr& w, const SuperElement& e) {
  return map_generators(e, w, {}, {});
}

double simpson(const std::function<double(double)>& f, double lo, double hi,
               int n) {
  double s = f(lo) + f(hi);
  double dx = (hi - lo) / n;
  for (int i = 1; i < n; ++i) s += f(lo + i * dx) * ((i % 2) ? 4.0 : 2.0);
  return s * dx / 3.0;
}

}  // namespace

TEST_CASE("one dimensional quadrature pins the gaussian constants") {
  // int exp{-(1/2) a x^2 + b x} dx = sqrt(2 pi / a) exp{+ b^2 / (2a)}.
  // The plus sign in the exponent is the entire point of this test: every
  // closed form downstream inherits it.
  for (auto [a, b] : {std::pair{2.0, 0.0}, {2.0, 0.7}, {2.5, -1.3}}) {
    double quad = simpson(
        [&](double x) { return std::exp(-0.5 * a * x * x + b * x); }, -20.0,
        20.0, 40000);
    double closed = std::sqrt(2.0 * M_PI / a) * std::exp(b * b / (2.0 * a));
    CHECK(std::abs(quad - closed) < 1e-8);
  }

  GenSetPtr g = constants_gens(0);
  // a = 2, b = 0: the quadratic closed form.
  SMat a2(g, 1, 1);
  a2.at(0, 0) = SuperElement(g, Scalar(CQ(-2)));
  GBIntegrand quad_i = make_gb_integrand(1, 0, a2, SMat(g, 1, 0), SMat(g, 0, 0));
  double quad_val = gb_integral(quad_i).body().to_complex().real();
  CHECK(std::abs(quad_val - std::sqrt(M_PI)) < 1e-12);

  // b = 7/10: both linear routes against the quadrature value.
  SMat h(g, 1, 1);
  h.at(0, 0) = SuperElement(g, Scalar(CQ(mpq_class(7, 10))));
  GBIntegrand lin_i =
      make_gb_integrand_linear(1, 0, a2, SMat(g, 1, 0), SMat(g, 0, 0), h,
                               SMat(g, 1, 0));
  double closed = std::sqrt(M_PI) * std::exp(0.49 / 4.0);
  for (auto route : {LinearRoute::Auto, LinearRoute::Shift,
                     LinearRoute::Staged}) {
    double v = gb_integral_linear(lin_i, route).body().to_complex().real();
    CHECK(std::abs(v - closed) < 1e-12);
  }
}

TEST_CASE("quadratic integral: pure pfaffian case and odd-q vanishing") {
  std::mt19937_64 rng(2025);
  GenSetPtr g = constants_gens(4);

  SuperElement c = SuperElement(g, Scalar(CQ(2)));
  c += mul(SuperElement::phantom_var(g, 0), SuperElement::phantom_var(g, 1));
  SMat cc(g, 2, 2);
  cc.at(0, 1) = c;
  cc.at(1, 0) = -c;
  GBIntegrand in = make_gb_integrand(0, 2, SMat(g, 0, 0), SMat(g, 0, 2), cc);
  CHECK(gb_integral(in) == c);

  // Odd q vanishes regardless of the blocks.
  GBIntegrand odd1 =
      make_gb_integrand(0, 3, SMat(g, 0, 0), SMat(g, 0, 3), rand_c(rng, g, 3));
  CHECK(gb_integral(odd1).is_zero());
  GBIntegrand odd2 = make_gb_integrand(2, 1, rand_a(rng, g, 2),
                                       rand_b(rng, g, 2, 1), rand_c(rng, g, 1));
  CHECK(gb_integral(odd2).is_zero());
}

TEST_CASE("quadratic closed form equals the moment oracle") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int it = 0; it < 36; ++it) {
    int p = int(rng() % 4);
    int q = int(rng() % 4);
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand(p, q, rand_a(rng, g, p),
                                       rand_b(rng, g, p, q), rand_c(rng, g, q));
    SuperElement closed = gb_integral(in);
    SuperElement oracle = wick_oracle(in);
    CHECK(closed == oracle);
    if (!closed.is_zero()) ++checked;
  }
  CHECK(checked > 10);

  // A body with a non-square determinant exercises the float fallback of
  // the square root; the two sides then agree numerically.
  GenSetPtr g = constants_gens(4);
  std::vector<SMat> as;
  SMat a1(g, 1, 1);
  a1.at(0, 0) = SuperElement(g, Scalar(CQ(-3)));
  a1.at(0, 0) += rand_even_nil(rng, g);
  GBIntegrand in = make_gb_integrand(1, 2, a1, rand_b(rng, g, 1, 2),
                                     rand_c(rng, g, 2));
  SuperElement diff =
      gb_integral(in).to_float() - wick_oracle(in).to_float();
  CHECK(diff.float_norm() < 1e-9);
}

TEST_CASE("phantom sources expose the second moment") {
  // With h = a1 a2 + a3 a4 the expansion of exp{x h} stops at x^2 h^2 / 2,
  // so the integral reads off E[x^2] = 1/a exactly.
  GenSetPtr g = constants_gens(4);
  SMat a(g, 1, 1);
  a.at(0, 0) = SuperElement(g, Scalar(CQ(-4)));
  SMat h(g, 1, 1);
  auto ph = [&](int j) { return SuperElement::phantom_var(g, j); };
  h.at(0, 0) = mul(ph(0), ph(1)) + mul(ph(2), ph(3));
  GBIntegrand in = make_gb_integrand_linear(1, 0, a, SMat(g, 1, 0),
                                            SMat(g, 0, 0), h, SMat(g, 1, 0));

  Scalar z0 = Scalar::exact(CQ(mpq_class(1, 2)), 1);  // (2pi)^{1/2} / 2
  SuperElement expected(g, z0);
  TermKey top;
  top.phan = 0xf;
  expected.add_term(top, z0 * Scalar(CQ(mpq_class(1, 4))));

  CHECK(wick_oracle(in) == expected);
  CHECK(gb_integral_linear(in, LinearRoute::Shift) == expected);
  CHECK(gb_integral_linear(in, LinearRoute::Staged) == expected);
}

TEST_CASE("general fermionic formula equals direct expansion") {
  std::mt19937_64 rng(99);
  for (int q = 1; q <= 5; ++q) {
    for (int it = 0; it < 6; ++it) {
      GenSetPtr g = constants_gens(5);
      SMat d = rand_c(rng, g, q);
      SMat r = rand_g_row(rng, g, q);
      SuperElement lib = fermionic_general(d, r);
      GenSetPtr w;
      SuperElement direct = direct_fermionic(d, r, w);
      CHECK(lift_to(w, lib) == direct);
    }
  }

  // r = 0, even q: plain pfaffian.
  {
    GenSetPtr g = constants_gens(5);
    SMat d = rand_c(rng, g, 4);
    CHECK(fermionic_general(d, SMat(g, 1, 4)) == pfaffian(d));
  }

  // D = 0: the product of the odd constants picks up the sign from moving
  // them out of the ascending monomial.
  for (int q = 1; q <= 5; ++q) {
    GenSetPtr g = constants_gens(6);
    SMat r = rand_g_row(rng, g, q);
    SuperElement prod = SuperElement::one(g);
    for (int k = 0; k < q; ++k) prod = mul(prod, r.at(0, k));
    if ((q * (q - 1) / 2) % 2) prod = -prod;
    SuperElement lib = fermionic_general(SMat(g, q, q), r);
    CHECK(lib == prod);
    GenSetPtr w;
    SuperElement direct = direct_fermionic(SMat(g, q, q), r, w);
    CHECK(lift_to(w, lib) == direct);
  }
}

TEST_CASE("linear terms: both routes and the oracle agree") {
  std::mt19937_64 rng(1234);

  // Invertible fermion block: the shift route is picked automatically.
  for (int it = 0; it < 8; ++it) {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand_linear(
        1, 2, rand_a(rng, g, 1), rand_b(rng, g, 1, 2), rand_c(rng, g, 2),
        rand_h_nil(rng, g, 1), rand_g_row(rng, g, 2));
    SuperElement oracle = wick_oracle(in);
    CHECK(gb_integral_linear(in) == oracle);
    CHECK(gb_integral_linear(in, LinearRoute::Shift) == oracle);
    CHECK(gb_integral_linear(in, LinearRoute::Staged) == oracle);
  }

  // Odd q: the fermion block is singular, staged route only.
  for (int it = 0; it < 6; ++it) {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand_linear(
        1, 3, rand_a(rng, g, 1), rand_b(rng, g, 1, 3), rand_c(rng, g, 3),
        rand_h_nil(rng, g, 1), rand_g_row(rng, g, 3));
    SuperElement oracle = wick_oracle(in);
    CHECK(gb_integral_linear(in) == oracle);
    CHECK(gb_integral_linear(in, LinearRoute::Staged) == oracle);
  }

  // Even q with a nilpotent fermion block: auto falls back to staged, and
  // forcing the shift route reports the singular matrix.
  {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand_linear(
        2, 2, rand_a(rng, g, 2), rand_b(rng, g, 2, 2),
        rand_c(rng, g, 2, /*with_body=*/false), rand_h_nil(rng, g, 2),
        rand_g_row(rng, g, 2));
    CHECK(gb_integral_linear(in) == wick_oracle(in));
    CHECK_THROWS_AS(gb_integral_linear(in, LinearRoute::Shift),
                    std::domain_error);
  }

  // Pure boson with nilpotent linear term.
  {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand_linear(
        2, 0, rand_a(rng, g, 2), SMat(g, 2, 0), SMat(g, 0, 0),
        rand_h_nil(rng, g, 2), SMat(g, 1, 0));
    SuperElement oracle = wick_oracle(in);
    CHECK(gb_integral_linear(in, LinearRoute::Shift) == oracle);
    CHECK(gb_integral_linear(in, LinearRoute::Staged) == oracle);
  }

  // Zero linear data reduces to the quadratic form.
  {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand_linear(
        2, 2, rand_a(rng, g, 2), rand_b(rng, g, 2, 2), rand_c(rng, g, 2),
        SMat(g, 1, 2), SMat(g, 1, 2));
    GBIntegrand quad = make_gb_integrand(2, 2, in.A, in.B, in.C);
    CHECK(gb_integral_linear(in) == gb_integral(quad));
  }

  // A linear boson term with nonzero body drops to the float backend; the
  // two routes still agree numerically.
  {
    GenSetPtr g = constants_gens(4);
    SMat h(g, 1, 1);
    h.at(0, 0) = SuperElement(g, Scalar(CQ(mpq_class(3, 2)))) +
                 rand_even_nil(rng, g);
    GBIntegrand in = make_gb_integrand_linear(
        1, 2, rand_a(rng, g, 1), rand_b(rng, g, 1, 2), rand_c(rng, g, 2), h,
        rand_g_row(rng, g, 2));
    SuperElement d = gb_integral_linear(in, LinearRoute::Shift).to_float() -
                     gb_integral_linear(in, LinearRoute::Staged).to_float();
    CHECK(d.float_norm() < 1e-9);
  }
}

TEST_CASE("translation by nilpotent constants leaves the integral fixed") {
  // Substituting x -> x + nu with nu even nilpotent turns the integrand
  // data (h, g) into (h + nu A, g - nu B) times the constant
  // exp{(1/2) nu A nu^t + nu h^t}; the integral must not notice.
  std::mt19937_64 rng(4321);
  for (int it = 0; it < 6; ++it) {
    GenSetPtr g = constants_gens(6);
    int p = 2, q = 2;
    SMat a = rand_a(rng, g, p), b = rand_b(rng, g, p, q),
         c = rand_c(rng, g, q);
    SMat h = rand_h_nil(rng, g, p), gr = rand_g_row(rng, g, q);
    SMat nu = rand_h_nil(rng, g, p);

    GBIntegrand lhs = make_gb_integrand_linear(p, q, a, b, c, h, gr);
    GBIntegrand rhs = make_gb_integrand_linear(p, q, a, b, c, h + nu * a,
                                               gr - nu * b);
    Scalar half = Scalar::exact(CQ(mpq_class(1, 2)));
    SuperElement cst = exp_even((nu * a * nu.transpose()).at(0, 0) * half +
                                (nu * h.transpose()).at(0, 0));

    CHECK(wick_oracle(lhs) == mul(cst, wick_oracle(rhs)));
    CHECK(gb_integral_linear(lhs) == mul(cst, gb_integral_linear(rhs)));
  }
}

TEST_CASE("squared closed form matches the berezinian") {
  std::mt19937_64 rng(555);
  for (auto [p, q] : {std::pair{0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 2},
                      {3, 2}, {2, 4}}) {
    GenSetPtr g = constants_gens(6);
    GBIntegrand in = make_gb_integrand(p, q, rand_a(rng, g, p),
                                       rand_b(rng, g, p, q), rand_c(rng, g, q));
    SuperElement ii = mul(gb_integral(in), gb_integral(in));

    SMat m(g, p + q, p + q);
    m.set_block(0, 0, in.A);
    m.set_block(0, p, in.B);
    m.set_block(p, 0, -in.B.transpose());
    m.set_block(p, p, in.C);
    SuperElement ber = berezinian(make_supermatrix(p, q, 0, m));
    // I^2 = (-1)^p (2 pi)^p ber; the sign alternates with the number of
    // commuting variables (p = 0, q = 2 forces the plus sign).
    Scalar pref = Scalar::exact(CQ((p % 2) ? -1 : 1), 2 * p);
    CHECK(ii == ber * pref);
  }
}

TEST_CASE("skew normal form and the canonical fermionic gaussian") {
  std::mt19937_64 rng(31);

  auto rand_skew = [&](int q, int rank2) {
    // sum of rank2 rank-two pieces u^t v - v^t u
    CMat d(q, q);
    for (int t = 0; t < rank2; ++t) {
      CMat u(1, q), v(1, q);
      for (int j = 0; j < q; ++j) {
        u.at(0, j) = rand_cq(rng);
        v.at(0, j) = rand_cq(rng);
      }
      d = d + u.transpose() * v - v.transpose() * u;
    }
    return d;
  };

  // Normal-form property on random skew matrices of assorted ranks.
  for (int it = 0; it < 20; ++it) {
    int q = 1 + int(rng() % 5);
    CMat d = rand_skew(q, int(rng() % 3));
    auto [s, gamma] = skew_normal_form(d);
    CHECK(2 * gamma == rank(d));
    CHECK(!det(s).is_zero());
    CMat n(q, q);
    for (int j = 0; j < gamma; ++j) {
      n.at(2 * j, 2 * j + 1) = CQ(1);
      n.at(2 * j + 1, 2 * j) = CQ(-1);
    }
    CHECK(s * d * s.transpose() == n);
  }

  auto expand = [&](const GrassmannGaussCanonical& cf, GenSetPtr w) {
    int q = cf.Q.rows;
    SuperElement acc(w, cf.s);
    for (int j = 0; j < cf.factors.rows; ++j) {
      SuperElement fac(w);
      for (int l = 0; l < q; ++l)
        fac += SuperElement::fermion_var(w, l) *
               Scalar(cf.factors.at(j, l));
      acc = mul(acc, fac);
    }
    SuperElement quad(w);
    Scalar half = Scalar::exact(CQ(mpq_class(1, 2)));
    for (int k = 0; k < q; ++k)
      for (int l = 0; l < q; ++l)
        quad += mul(SuperElement::fermion_var(w, k),
                    SuperElement::fermion_var(w, l)) *
                (Scalar(cf.Q.at(k, l)) * half);
    return mul(acc, exp_even(quad));
  };

  auto check_against_direct = [&](const CMat& d) {
    int q = d.rows;
    std::vector<std::string> fs;
    for (int k = 0; k < q; ++k) fs.push_back("z" + std::to_string(k + 1));
    GenSetPtr w = make_gens({}, fs, 0, 0);
    GrassmannGaussCanonical cf = grassmann_gauss_canonical(d);
    // fermionic_general over w, with r the row of the fermion generators
    SMat dm = SMat::from_cmat(w, d);
    SMat r(w, 1, q);
    for (int k = 0; k < q; ++k) r.at(0, k) = SuperElement::fermion_var(w, k);
    CHECK(expand(cf, w) == fermionic_general(dm, r));
    return cf;
  };

  // Invertible D: no linear factors, Q = D^{-1} (with the orientation of
  // the J blocks used by the reduction), s = Pf(D).
  for (int q : {2, 4}) {
    CMat d = rand_skew(q, 3);
    while (det(d).is_zero()) d = rand_skew(q, 3);
    GrassmannGaussCanonical cf = check_against_direct(d);
    CHECK(cf.gamma * 2 == q);
    CHECK(cf.factors.rows == 0);
    CHECK(cf.Q == inverse(d));
    std::vector<std::vector<CQ>> dd(q, std::vector<CQ>(q));
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) dd[i][j] = d.at(i, j);
    CHECK(cf.s == Scalar(tutil::pfaffian_matching_sum(dd)));
  }

  // D = 0: all-factor case, the constant carries the reordering sign.
  {
    CMat d(3, 3);
    GrassmannGaussCanonical cf = check_against_direct(d);
    CHECK(cf.gamma == 0);
    CHECK(cf.factors == CMat::identity(3));
    CHECK(cf.s == Scalar(CQ(-1)));  // (-1)^{3*2/2}
  }

  // Rank-deficient 4x4: one pair block and two linear factors.
  for (int it = 0; it < 5; ++it) {
    CMat d = rand_skew(4, 1);
    if (rank(d) != 2) continue;
    GrassmannGaussCanonical cf = check_against_direct(d);
    CHECK(cf.gamma == 1);
    CHECK(cf.factors.rows == 2);
  }
}

TEST_CASE("integrand validation and convergence errors") {
  std::mt19937_64 rng(8);
  GenSetPtr g = constants_gens(4);

  SMat a(g, 2, 2);
  a.at(0, 0) = SuperElement(g, Scalar(CQ(-1)));
  a.at(1, 1) = SuperElement(g, Scalar(CQ(-1)));
  SMat b(g, 2, 2), c(g, 2, 2);

  // Asymmetric A.
  SMat bad_a = a;
  bad_a.at(0, 1) = SuperElement(g, Scalar(CQ(1)));
  CHECK_THROWS_AS(make_gb_integrand(2, 2, bad_a, b, c), std::invalid_argument);

  // C with a diagonal entry.
  SMat bad_c = c;
  bad_c.at(0, 0) = SuperElement(g, Scalar(CQ(1)));
  CHECK_THROWS_AS(make_gb_integrand(2, 2, a, b, bad_c), std::invalid_argument);

  // Even entry inside B.
  SMat bad_b = b;
  bad_b.at(0, 0) = SuperElement(g, Scalar(CQ(1)));
  CHECK_THROWS_AS(make_gb_integrand(2, 2, a, bad_b, c), std::invalid_argument);

  // Odd entry inside h.
  SMat bad_h(g, 1, 2);
  bad_h.at(0, 0) = SuperElement::phantom_var(g, 0);
  CHECK_THROWS_AS(
      make_gb_integrand_linear(2, 2, a, b, c, bad_h, SMat(g, 1, 2)),
      std::invalid_argument);

  // Positive body: the integral diverges.
  SMat pos = a;
  pos.at(1, 1) = SuperElement(g, Scalar(CQ(1)));
  GBIntegrand div = make_gb_integrand(2, 2, pos, b, c);
  CHECK(!gb_converges(div));
  CHECK_THROWS_AS(gb_integral(div), std::domain_error);
  CHECK_THROWS_AS(wick_oracle(div), std::domain_error);
  GBIntegrand conv = make_gb_integrand(2, 2, a, b, c);
  CHECK(gb_converges(conv));

  // Entries must be constants: boson variables in the generator set.
  GenSetPtr gb = make_gens({"x"}, {}, 2, 4);
  SMat ab(gb, 1, 1);
  ab.at(0, 0) = SuperElement(gb, Scalar(CQ(-1)));
  CHECK_THROWS_AS(make_gb_integrand(1, 0, ab, SMat(gb, 1, 0), SMat(gb, 0, 0)),
                  std::invalid_argument);

  // The oracle rejects a linear boson term with a body.
  SMat hb(g, 1, 2);
  hb.at(0, 0) = SuperElement(g, Scalar(CQ(1)));
  GBIntegrand body_h =
      make_gb_integrand_linear(2, 2, a, b, c, hb, SMat(g, 1, 2));
  CHECK_THROWS_AS(wick_oracle(body_h), std::invalid_argument);
}
