#pragma once

#include <utility>

#include "superalg/multilinear.hpp"

namespace superalg {

// Exponent data of a mixed Gaussian integral over p commuting and q
// anticommuting variables,
//
//   exp{ (1/2)(x xi) (A B; -B^t C) (x xi)^t + x h^t + xi g^t },
//
// with A symmetric (even entries), C skew (even entries), B odd, h even,
// g odd. Entries are constants: the generator set must declare no boson and
// no fermion variables, phantoms only. All fermion integrals below use the
// ascending-coefficient normalization of berezin_integral_seq.
struct GBIntegrand {
  int p = 0, q = 0;
  SMat A, B, C;  // p x p, p x q, q x q
  SMat h, g;     // 1 x p, 1 x q
  bool has_linear = false;
};

// Validate dimensions, entry parities and the symmetry pattern; throws
// std::invalid_argument on violation.
GBIntegrand make_gb_integrand(int p, int q, SMat A, SMat B, SMat C);
GBIntegrand make_gb_integrand_linear(int p, int q, SMat A, SMat B, SMat C,
                                     SMat h, SMat g);

// True when the real part of the body of A is negative definite, which is
// exactly the convergence condition of the integral.
bool gb_converges(const GBIntegrand& in);

// Closed form of the quadratic integral:
//   (2pi)^{p/2} det(-A)^{-1/2} Pf(C + B^t A^{-1} B)   for even q,
//   0                                                 for odd q.
// The (2pi)^{p/2} factor stays symbolic inside the Scalars.
SuperElement gb_integral(const GBIntegrand& in);

enum class LinearRoute { Auto, Shift, Staged };

// Linear-term variant.
//
// Shift route: one completion of the square over the full matrix
// Q = (A B; -B^t C),
//   J = exp{-(1/2) sum_a n_a m_a} * I,   n^t = Q^{-1} m^t,  m = (h g),
// factor order as written; needs C invertible (A already is whenever the
// integral converges). Staged route: integrate the commuting variables
// first, which leaves
//   (2pi)^{p/2} det(-A)^{-1/2} exp{-(1/2) h A^{-1} h^t}
//     * int exp{(1/2) xi D xi^t + xi r^t} d xi,
//   D = C + B^t A^{-1} B,  r = g + h A^{-1} B,
// and is total. Auto picks Shift when the body of C is invertible, Staged
// otherwise. A shift constant with nonzero scalar part drops to the float
// backend (its exponential is transcendental).
SuperElement gb_integral_linear(const GBIntegrand& in,
                                LinearRoute route = LinearRoute::Auto);

// int exp{(1/2) xi D xi^t + xi r^t} d xi for D skew with even entries and
// r a row of odd entries, as a sum over even-size index subsets I:
//   sum_I sigma(I) (-1)^{s(s-1)/2} Pf(D_I) r_{j_1} ... r_{j_s},
// where J = {j_1 < ... < j_s} is the complement of I and sigma(I) is the
// sign merging (xi_I)(xi_J) into xi_1...xi_q. The (-1)^{s(s-1)/2} factor
// comes from commuting the odd constants r_j rightward out of the ascending
// monomial (left-derivative normalization); dropping it breaks the
// q = 2, D = 0 case already.
SuperElement fermionic_general(const SMat& D, const SMat& r);

// Brute-force moment oracle. Splits A = A0 + nu with A0 the body, expands
// exp{ (1/2) x nu x^t + x B xi^t + (1/2) xi C xi^t + x h^t + xi g^t } as a
// terminating polynomial, integrates boson monomials against
// exp{(1/2) x A0 x^t} by Wick pairing with covariance (-A0)^{-1}, then
// integrates the fermion part termwise. Exact; independent of every closed
// form above. Requires pi_down(h) = 0 (a linear term with nonzero body
// would leave a non-polynomial factor) and p <= 8.
SuperElement wick_oracle(const GBIntegrand& in);

// Congruence reduction of a complex skew-symmetric matrix: invertible S
// with S D S^t = diag(J, ..., J, 0, ..., 0), J = (0 1; -1 0); the second
// component is the number gamma of J blocks (= rank(D)/2).
std::pair<CMat, int> skew_normal_form(const CMat& D);

// Canonical form of int exp{(1/2) xi D xi^t + xi z^t} d xi for complex skew
// D and a row z of external odd symbols:
//   s * (z h_1^t)(z h_2^t)...(z h_m^t) * exp{(1/2) z Q z^t},
// where the h_j are the last m = q - 2 gamma rows of S from the normal form
// above and Q = sum_j (S_{2j+1}^t S_{2j} - S_{2j}^t S_{2j+1}) over the J
// blocks. For invertible D this yields m = 0, s = Pf(D), Q = D^{-1} (the
// sign of Q follows the orientation of the J blocks).
struct GrassmannGaussCanonical {
  Scalar s;
  CMat factors;  // m x q, rows h_j in order
  CMat Q;        // q x q, skew
  int gamma = 0;
};
GrassmannGaussCanonical grassmann_gauss_canonical(const CMat& D);

}  // namespace superalg
