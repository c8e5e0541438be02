#pragma once

// Bosonic Gaussian integral operators on degree-truncated Fock spaces:
// symbols, application through the boson pairing, the Olshanski
// boundedness test, *-composition with its squared scalar factor, and the
// correspondence with symplectic linear relations.

#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/cmat.hpp"
#include "superalg/linrel.hpp"

namespace superalg {

// Symbol of a Gaussian operator F_n -> F_m: the symmetric block matrix
//   S = (K  L ),   K m x m, L m x n, M n x n, K = K^t, M = M^t,
//       (L^t M )
// acting by f |-> contraction of exp{1/2 (z ub) S (z ub)^t} f(u) under the
// pairing <u^a, ub^a> = a!.  Blocks are exact; float interchange converts
// entrywise (doubles are rationals).
struct GaussianSymbol {
  int n = 0, m = 0;  // source and target variable counts
  CMat K, L, M;
};

// Validates block shapes and exact symmetry of K and M.
GaussianSymbol gaussian_symbol(int n, int m, CMat K, CMat L, CMat M);
GaussianSymbol zero_symbol(int n, int m);
// L = 1: the reproducing kernel, the identity operator on F_n.
GaussianSymbol identity_symbol(int n);
// (K L; L^t M) assembled.
CMat full_matrix(const GaussianSymbol& S);

// Largest singular value, floating point.
double spectral_norm(const CMat& x);

// Entire-function coefficients kept to total degree <= trunc, over boson
// generators z1..zn.  Coefficients of the retained degrees are exact (up
// to the backend); dropping the higher degrees is the only approximation.
struct TruncatedFockElement {
  int n = 0;
  int trunc = 0;
  SuperElement elem;
};

GenSetPtr fock_gens(int n, int trunc);
TruncatedFockElement fock_zero(int n, int trunc);
TruncatedFockElement fock_monomial(int n, int trunc,
                                   const std::vector<int>& deg,
                                   const Scalar& c);
Scalar fock_coeff(const TruncatedFockElement& f, const std::vector<int>& deg);

// Multidegrees of total degree <= trunc in graded lexicographic order; the
// basis the operator matrices below are written in.
std::vector<std::vector<int>> fock_basis(int n, int trunc);
// z_j multiplication and d/dz_j on coefficient columns over fock_basis.
// Multiplication drops the top degree, so the two are truncation-adjoint
// only below it.
CMat boson_mult_matrix(int n, int trunc, int j);
CMat boson_deriv_matrix(int n, int trunc, int j);

// a^(v) f = sum_j v^+_j z_j f + sum_j v^-_j df/dz_j for a 1 x 2n row v
// split as (v^+ v^-).
TruncatedFockElement a_hat(const CMat& v, const TruncatedFockElement& f);

// The integral operator: expands the kernel exponential (filtered to the
// degrees that can survive) and contracts with f through pair_boson.
// For polynomial f the retained coefficients are exact up to float
// rounding; the dropped output degrees above f.trunc are geometrically
// small, O(norm(S)^trunc) on unit-coefficient input when norm(S) < 1.
// Requires S.n == f.n and S.m + 2 S.n <= 8 (packed monomial keys).
TruncatedFockElement apply_gaussian(const GaussianSymbol& S,
                                    const TruncatedFockElement& f);

// Boundedness of the operator: norm(S) <= 1, norm(K) < 1, norm(M) < 1,
// each compared with float tolerance 1e-12.
bool olshanski_bounded(const GaussianSymbol& S);

// S2 * S1 with its squared scalar: apply(S2) after apply(S1) equals
// lambda * apply(S2 * S1) where lambda^2 = det(1 - M P)^{-1}, M = S2.M,
// P = S1.K.  The square root is never taken here: the representation is
// projective and the branch is not tracked.  Blocks:
//   K' = K + L P (1-MP)^{-1} L^t
//   L' = L (1-PM)^{-1} Q
//   M' = R + Q^t (1-MP)^{-1} M Q
// Throws std::invalid_argument on an inner dimension mismatch and
// std::domain_error when det(1 - MP) = 0.
struct StarProduct {
  Scalar scalar_sq;
  GaussianSymbol symbol;
};
StarProduct star_compose(const GaussianSymbol& S2, const GaussianSymbol& S1);

// The relation {v (+) w : a^(w) after the operator = the operator after
// a^(v)} inside C^{2n} (+) C^{2m}.  Collecting kernel coefficients gives
//   v^- = w^- L - v^+ M,      w^+ = v^+ L^t - w^- K,
// so the relation is the row span of [e_i | -e_i M | e_i L^t | 0] and
// [0 | e_j L | -e_j K | e_j].  Throws std::domain_error when S fails the
// boundedness test.
LinearRelation relation_of_gaussian(const GaussianSymbol& S);

// Inverse: solve the graph over the (v^+, w^-) coordinates, the chart
// every bounded-operator relation lies in.  Throws std::domain_error when
// the relation misses the chart or is not consistent with a symmetric
// symbol.
GaussianSymbol gaussian_of_relation(const LinearRelation& P);

}  // namespace superalg
