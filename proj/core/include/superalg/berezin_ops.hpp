#pragma once

// Integral operators Lambda_q -> Lambda_p through their kernels.  A kernel
// lives in the exterior algebra on p target generators xi_1..xi_p followed by
// q barred source generators eb_1..eb_q; applying it to f contracts the
// barred copies against the source generators of f with the paired Gaussian
// weight exp{-sum eta_j eb_j}, normalized so that every monomial
// (eb_{a_1} eta_{a_1})...(eb_{a_k} eta_{a_k}) integrates to 1.
//
// Kernel data is kept in product shape
//   s * prod_j (xi u_j^t + eb v_j^t) * exp{(1/2) xi A xi^t + xi B eb^t
//                                          + (1/2) eb C eb^t},
// which spans the closure of the pure exponentials (scaled exponentials can
// degenerate onto products of linear factors).  The shape is not canonical
// once factors are present, so operator equality is always decided on
// expanded elements or on matrices, never on the raw fields.

#include <utility>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/cmat.hpp"
#include "superalg/linrel.hpp"

namespace superalg {

struct BerezinFactor {
  CMat u;  // 1 x p, pairs with the target generators
  CMat v;  // 1 x q, pairs with the barred source generators
};

struct BerezinKernel {
  int p = 0, q = 0;
  Scalar s{1};
  std::vector<BerezinFactor> factors;
  CMat A;  // p x p, skew
  CMat B;  // p x q
  CMat C;  // q x q, skew
};

// Plain exterior algebra on n generators x1..xn.
GenSetPtr grassmann_gens(int n);
// Ambient algebra of kernels: p target generators, then q barred ones.
GenSetPtr kernel_gens(int p, int q);

// Validating constructors.  narrow_kernel has no linear factors.
BerezinKernel narrow_kernel(int p, int q, CMat A, CMat B, CMat C);
BerezinKernel make_kernel(int p, int q, Scalar s,
                          std::vector<BerezinFactor> factors, CMat A, CMat B,
                          CMat C);
BerezinKernel identity_kernel(int n);
// One-factor kernel of the involution xi_k + d/dxi_k on Lambda_n.  These
// generate the non-exponential component; on relations they act as the
// elementary reflection sigma_k.
BerezinKernel reflection_kernel(int n, int k);

// Expanded polynomial in (xi, eb) over kernel_gens(p, q).
SuperElement kernel_element(const BerezinKernel& k);

// Apply to f from Lambda_q (any generator set with exactly q fermions and
// nothing else); the result lives over grassmann_gens(p).
SuperElement apply_kernel(const BerezinKernel& k, const SuperElement& f);
SuperElement apply_kernel_element(const SuperElement& ker, int p, int q,
                                  const SuperElement& f);

// 2^p x 2^q matrix in the subset-monomial basis, columns indexed by source
// masks, rows by target masks.  Exact coefficients only.
CMat matrix_of(const BerezinKernel& k);
CMat matrix_of_element(const SuperElement& ker, int p, int q);

// Kernel element of the composition "first K, then L", by definition:
// contract the middle copies pairwise.  Inner dimensions must match
// (L.q == K.p).
SuperElement compose_oracle(const BerezinKernel& L, const BerezinKernel& K);
SuperElement compose_kernel_elements(const SuperElement& L, int r, int mid,
                                     const SuperElement& K, int in);

// Closed form for narrow kernels.  With inner blocks M = L.C and P = K.A,
// requires det(1 + MP) != 0 (throws std::domain_error otherwise; the
// definitional route still works there, and lands on the factor component
// of the cone).  Satisfies
//   compose_oracle(L, K) == scalar * kernel_element(kernel).
// The scalar is sum_I (-1)^{|I|(|I|+1)/2} Pf(M_I) Pf(P_I) over subsets I of
// the inner index set, equivalently (-1)^{q(q-1)/2} Pf(M, 1; -1, P); its
// square is det(1 + MP), so the closed form applies exactly when the
// scalar is nonzero.
struct NarrowProduct {
  Scalar scalar;
  BerezinKernel kernel;
};
NarrowProduct compose_closed(const BerezinKernel& L, const BerezinKernel& K);

// Alternative description: reflection operators wrapped around a narrow
// core, indices strictly increasing,
//   (xi_{k_1} + d_{k_1}) ... core ... applied after (eta_{m_1} + d_{m_1}) ...
struct DFactorForm {
  std::vector<int> xi;   // target reflection indices, strictly increasing
  std::vector<int> eta;  // source reflection indices, strictly increasing
  BerezinKernel core;    // narrow
};

SuperElement dform_element(const DFactorForm& d);

// Recover product-shape data from an expanded element (lowest-degree part
// factors into the linear part, the rest exponentiates).  Throws
// std::logic_error when the element is not of kernel product shape.
BerezinKernel wide_of_element(const SuperElement& e, int p, int q);
BerezinKernel wide_of_dform(const DFactorForm& d);
// Inverse direction, through the operator's relation and chart search; the
// scalar is fixed by comparing elements.
DFactorForm dform_of_wide(const BerezinKernel& k);

// The relation of an operator: all v (+) w with a(w) O = O a(v), where
// a(v) f = sum_j v_j^+ xi_j f + v_j^- d f / d xi_j.  Ambient coordinates are
// (v^+, v^-, w^+, w^-); the result is Lagrangian for the difference of the
// symmetric pairing forms, of dimension p + q.  The zero operator maps to
// the absorbing Null morphism; a nonzero matrix outside the kernel cone has
// a smaller solution space and raises std::domain_error.
GDMorphism relation_of_operator(const BerezinKernel& k);
GDMorphism relation_of_matrix(const CMat& op, int p, int q);
// Same through reflection conjugation of the core's relation.
GDMorphism relation_of_dform(const DFactorForm& d);

// Chart decoding: search reflected charts (source bits low, target bits
// high, masks ordered by popcount then value), decode the chart graph into
// a narrow core, record the reflections used.  Null is rejected with
// std::invalid_argument (only the zero operator would match it).
DFactorForm dform_of_relation(const GDMorphism& P);
BerezinKernel operator_of_relation(const GDMorphism& P);
inline BerezinKernel spin(const GDMorphism& P) {
  return operator_of_relation(P);
}

// dim(P /\ (source minus (+) target plus)) mod 2; matches the factor-count
// parity of any operator with this relation.
int morphism_component_parity(const GDMorphism& P);

}  // namespace superalg
