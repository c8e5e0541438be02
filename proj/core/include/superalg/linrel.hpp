#pragma once

// Linear relations over exact complex rationals, the categories GD (with
// Null) and Sp, Lagrangian Grassmannian charts, reflections, and component
// parity.  Everything here is exact: rank logic decides Null, so there are
// no tolerances in this module.

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "superalg/cmat.hpp"
#include "superalg/multilinear.hpp"

namespace superalg {

// A relation V ==> W: a subspace of V (+) W, row-spanned.
struct LinearRelation {
  int nv = 0, nw = 0;
  Subspace sub;

  LinearRelation() = default;
  LinearRelation(int nv_, int nw_, Subspace s) : nv(nv_), nw(nw_), sub(std::move(s)) {
    if (sub.ambient != nv + nw)
      throw std::invalid_argument("LinearRelation: ambient mismatch");
  }
  int dim() const { return sub.dim(); }
  bool operator==(const LinearRelation& o) const {
    return nv == o.nv && nw == o.nw && sub == o.sub;
  }
};

// graph(A) = {v (+) vA}, A acting on row vectors, nv x nw.
LinearRelation graph_of(const CMat& A);
LinearRelation identity_relation(int n);
// The zero subspace of V (+) W.
LinearRelation zero_relation(int nv, int nw);
// All of V (+) W.
LinearRelation full_relation(int nv, int nw);

// Product QP: first apply P, then Q.  Computed in V (+) W (+) W (+) Y:
// intersect P (+) Q with the diagonal {v (+) w (+) w (+) y}, then drop the
// middle coordinates.  No transversality is assumed.
LinearRelation compose(const LinearRelation& Q, const LinearRelation& P);

Subspace ker_of(const LinearRelation& P);     // {v : v (+) 0 in P}
Subspace im_of(const LinearRelation& P);      // projection to W
Subspace dom_of(const LinearRelation& P);     // projection to V
Subspace indef_of(const LinearRelation& P);   // {w : 0 (+) w in P}

// im P + dom Q = W  and  indef P /\ ker Q = 0.
bool is_transversal(const LinearRelation& P, const LinearRelation& Q);

// Gram matrices, row convention: form(v, w) = v G w^t (or v G conj(w)^t for
// the Hermitian one).
CMat form_l(int n);        // symmetric (0 I; I 0) on C^{2n}
CMat form_lambda(int n);   // skew (0 I; -I 0)
CMat form_n(int n);        // Hermitian diag(-I, I), the morphism orientation
// Difference form on V (+) W: blockdiag(GV, -GW).
CMat ominus(const CMat& gv, const CMat& gw);

// Isotropic of half dimension, for a bilinear (not Hermitian) Gram matrix.
bool is_lagrangian(const Subspace& h, const CMat& gram);
bool is_lagrangian(const Subspace& h, const FormDescriptor& form);

// Morphisms of GD: an L-ominus-Lagrangian relation or the absorbing Null.
struct GDMorphism {
  int nv = 0, nw = 0;  // ambient dims 2n, 2m
  std::optional<LinearRelation> rel;  // nullopt = Null

  static GDMorphism null(int nv, int nw) { return {nv, nw, std::nullopt}; }
  static GDMorphism of(const LinearRelation& p);
  bool is_null() const { return !rel.has_value(); }
  bool operator==(const GDMorphism& o) const {
    return nv == o.nv && nw == o.nw && rel == o.rel;
  }
};

// Product with the Null rule: non-transversal pairs collapse to Null.
GDMorphism gd_compose(const GDMorphism& Q, const GDMorphism& P);

// Charts on the Lagrangian Grassmannian of C^{2n}.  Coordinates are ordered
// (e_1^+ .. e_n^+, e_1^- .. e_n^-).  J is a bitmask over {0..n-1}; the chart
// consists of subspaces transversal to span{slot_j^-}, written as row graphs
// h_i = slot_i^+ + sum_j T_ij slot_j^-, where
//   symmetric form:  slot_j^+ = e_j^+ (j in J) else e_j^-,
//                    slot_j^- = e_j^- (j in J) else e_j^+,   T skew;
//   skew form:       slot_j^+ = e_j^+ (j in J) else e_j^-,
//                    slot_j^- = e_j^- (j in J) else -e_j^+,  T symmetric.
Subspace chart_encode(FormKind kind, int n, unsigned J, const CMat& T);
// Inverse: recover T from a subspace in the chart.  Throws std::domain_error
// when H meets the chart's complement.
CMat chart_decode(FormKind kind, int n, unsigned J, const Subspace& h);
bool chart_contains(FormKind kind, int n, unsigned J, const Subspace& h);
// Smallest bitmask whose chart contains H (exhaustive; throws if none, which
// cannot happen for Lagrangian H).
unsigned chart_find(FormKind kind, int n, const Subspace& h);

// Elementary reflection sigma_i: swaps e_i^+ and e_i^-.
CMat reflection_matrix(int n, int i);

// dim(H /\ span{e^-}) mod 2; requires H Lagrangian for the symmetric form.
int component_parity(const Subspace& h);

// The three conditions on a morphism W_{2n} ==> W_{2m} of Sp: Lagrangian for
// the skew difference form, the Hermitian difference form nonpositive on P,
// and strictly definite on ker and indef (orientation of form_n).
bool is_sp_morphism(const LinearRelation& P);

// Random Lagrangian subspace through a random chart (covers both components
// for the symmetric form).
Subspace rand_lagrangian(std::mt19937_64& rng, int n, FormKind kind);
// Random L-ominus-Lagrangian relation C^{2n} ==> C^{2m}.
LinearRelation rand_gd_relation(std::mt19937_64& rng, int n, int m);

}  // namespace superalg
