#pragma once

#include <random>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/cmat.hpp"

namespace superalg {

// Dense matrix of algebra elements over one shared generator set.
struct SMat {
  GenSetPtr gens;
  int rows = 0, cols = 0;
  std::vector<SuperElement> e;

  SMat() = default;
  SMat(GenSetPtr g, int r, int c)
      : gens(g), rows(r), cols(c), e(size_t(r) * c, SuperElement(g)) {}

  SuperElement& at(int i, int j) { return e[size_t(i) * cols + j]; }
  const SuperElement& at(int i, int j) const { return e[size_t(i) * cols + j]; }

  static SMat identity(GenSetPtr g, int n);
  static SMat from_cmat(GenSetPtr g, const CMat& m);

  SMat operator*(const SMat& o) const;
  SMat operator+(const SMat& o) const;
  SMat operator-(const SMat& o) const;
  SMat operator-() const;
  SMat scaled(const Scalar& c) const;
  bool operator==(const SMat& o) const { return e == o.e && rows == o.rows; }

  SMat transpose() const;
  SMat block(int i0, int j0, int r, int c) const;
  void set_block(int i0, int j0, const SMat& b);
  SMat map(const std::function<SuperElement(const SuperElement&)>& f) const;

  // Body matrix: pi_down followed by the scalar part of each entry.
  CMat body() const;
  bool is_zero() const;
  double float_norm() const;
};

SMat vstack_smat(const SMat& a, const SMat& b);
SMat hstack_smat(const SMat& a, const SMat& b);

// Pfaffian of a skew matrix with even commutative entries; first-row
// recursion. Odd size gives 0, matching the vanishing of the defining
// integral of exp((1/2) xi R xi^t).
SuperElement pfaffian(const SMat& R);

// Leibniz determinant over the even commutative subalgebra (cofactor
// recursion; valid over any commutative ring, no division).
SuperElement det_even(const SMat& M);

// Inverse of a square matrix with even entries and invertible-body
// determinant, via the adjugate.
SMat inverse_even(const SMat& M);

// Supermatrix in Mat(p|q): diagonal blocks A (p x p) and D (q x q),
// off-diagonal B (p x q), C (q x p). Even matrix: A, D even entries and
// B, C odd; odd matrix: the reverse. Entries carry phantom constants only.
struct SuperMatrix {
  int p = 0, q = 0;
  int parity = 0;
  SMat m;

  SMat A() const { return m.block(0, 0, p, p); }
  SMat B() const { return m.block(0, p, p, q); }
  SMat C() const { return m.block(p, 0, q, p); }
  SMat D() const { return m.block(p, p, q, q); }
};

// Validates block parities; throws on violation.
SuperMatrix make_supermatrix(int p, int q, int parity, const SMat& entries);
SuperMatrix super_identity(GenSetPtr g, int p, int q);
SuperMatrix super_mul(const SuperMatrix& a, const SuperMatrix& b);

// ber(A B; C D) = det(A)^{-1} det(D - C A^{-1} B); multiplicative,
// ber(diag(P, T)) = det(T)/det(P).
SuperElement berezinian(const SuperMatrix& Q);

// Block transpose with the parity-dependent sign pattern making
// (QR)^st = R^st Q^st hold whenever a factor is even.
SuperMatrix supertranspose(const SuperMatrix& Q);

// The orthosymplectic Gram matrix (1/2)(0 I 0 0; -I 0 0 0; 0 0 0 I; 0 0 I 0)
// on blocks of sizes (p, p, q, q).
SMat osp_J(GenSetPtr g, int p, int q);

// s(u, v) = u J v^st for row vectors of the declared parity.
SuperElement osp_form(const SMat& u, const SMat& v, int parity_u,
                      int parity_v, int p, int q);

// Membership test g J g^st = J for even g of size (2p|2q).
bool is_osp(const SuperMatrix& g);

// Truncated exponential series for Lie-algebra elements X with
// X J + J X^st = 0. Terminates exactly on nilpotent entries; otherwise the
// first `order` terms are summed.
SuperMatrix osp_exp(const SuperMatrix& X, int order);

// Hermitian semidefiniteness over exact complex rationals (all principal
// minors; leading minors alone certify only strict definiteness).
bool is_hermitian_psd(const CMat& h);

// g M g* - M <= 0 with M = diag(I_n, -I_n) for a 2n x 2n complex matrix g:
// the contraction-semigroup condition inside Sp(2n, C), oriented so that
// members correspond to bounded Gaussian operators.
bool is_olshanski_classical(const CMat& g, double tol = 0.0);

// The same test applied to the body of the boson-boson block A of an
// orthosymplectic supermatrix.
bool is_olshanski_super(const SuperMatrix& g);

// Exact random elements for test drivers: products of rational generator
// matrices of the split symplectic form (0 I; -I 0) resp. the split
// symmetric form (0 I; I 0).
CMat rand_sp_rational(std::mt19937_64& rng, int n, int nfactors = 4);
CMat rand_orth_split_rational(std::mt19937_64& rng, int n, int nfactors = 4);

// Lie-algebra element (0 B; C 0) of osp with C determined by B; entries of
// B must be odd. Exponentiates to a group element by a terminating series.
SuperMatrix osp_odd_generator(const SMat& B, int p2, int q2);

// Random element of OSp(2p|2q): rational body in Sp x O times the
// exponential of a random odd generator with phantom-linear entries.
SuperMatrix rand_osp(std::mt19937_64& rng, GenSetPtr g, int p, int q);

// Random exact member of the contraction subsemigroup of Sp(2n, C):
// products of unitary-symplectic pair blocks (a b; conj(b) conj(a)) with
// |a|^2 - |b|^2 = 1, pair permutations, and dilations diag(t, 1/t), |t| <= 1.
CMat rand_gamma_sp_rational(std::mt19937_64& rng, int n, int nfactors = 4);

// rand_osp with the boson body drawn from the contraction semigroup.
SuperMatrix rand_gamma_osp(std::mt19937_64& rng, GenSetPtr g, int p, int q);

// Form descriptors for the pairings the relation categories use.
enum class FormKind { SymmetricL, SkewLambda, HermitianM, OrthosymplecticS };

struct FormDescriptor {
  FormKind kind;
  int half_dim;           // n for 2n x 2n forms; (p, q) packs as p for OSp
  int half_dim_2 = 0;     // q, orthosymplectic only
  CMat gram() const;      // numeric Gram matrix (non-OSp kinds)
};

}  // namespace superalg
