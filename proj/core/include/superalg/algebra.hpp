#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "superalg/scalar.hpp"

namespace superalg {

// Ambient algebra description: commuting variables ("bosons", with a hard cap
// on total degree), anticommuting generators ("fermions"), and a number of
// anticommuting constants ("phantoms") adjoined to the coefficient ring.
struct GeneratorSet {
  std::vector<std::string> bosons;
  std::vector<std::string> fermions;
  int phantoms = 0;
  int trunc = 0;  // total boson degree cap; required > 0 when bosons exist

  bool operator==(const GeneratorSet& o) const {
    return bosons == o.bosons && fermions == o.fermions &&
           phantoms == o.phantoms && trunc == o.trunc;
  }
  int boson_index(const std::string& name) const;
  int fermion_index(const std::string& name) const;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

GenSetPtr make_gens(std::vector<std::string> bosons,
                    std::vector<std::string> fermions, int phantoms = 0,
                    int trunc = 0);

// Monomial key. Boson exponents live in 8-bit lanes of `boson` (at most 8
// variables, exponents at most 255); fermion and phantom factors are bitmask
// sets, always written in ascending index order.
struct TermKey {
  std::uint64_t boson = 0;
  std::uint64_t ferm = 0;
  std::uint64_t phan = 0;

  bool operator==(const TermKey& o) const {
    return boson == o.boson && ferm == o.ferm && phan == o.phan;
  }
  bool operator<(const TermKey& o) const {
    if (boson != o.boson) return boson < o.boson;
    if (ferm != o.ferm) return ferm < o.ferm;
    return phan < o.phan;
  }

  int boson_exp(int i) const { return int((boson >> (8 * i)) & 0xff); }
  void set_boson_exp(int i, int e);
  int boson_degree() const;
  int odd_count() const;           // fermion + phantom factors
  int parity() const { return odd_count() & 1; }
  int degree() const { return boson_degree() + odd_count(); }
};

// Sign of merging two ascending generator lists (bitmasks) into one ascending
// list: parity of the number of inversions.
int merge_sign(std::uint64_t a, std::uint64_t b);

// Element of the truncated polynomial-exterior algebra over phantom constants.
// Coefficients are Scalars; terms map is kept free of exact zeros. The
// `truncated` flag turns sticky once a product drops a term over the boson
// degree cap.
class SuperElement {
 public:
  GenSetPtr gens;
  std::map<TermKey, Scalar> terms;
  bool truncated = false;

  SuperElement() = default;
  explicit SuperElement(GenSetPtr g) : gens(std::move(g)) {}
  SuperElement(GenSetPtr g, const Scalar& c);

  static SuperElement zero(GenSetPtr g) { return SuperElement(std::move(g)); }
  static SuperElement one(GenSetPtr g) { return SuperElement(std::move(g), Scalar(1)); }
  static SuperElement boson_var(GenSetPtr g, int i);
  static SuperElement fermion_var(GenSetPtr g, int i);
  static SuperElement phantom_var(GenSetPtr g, int j);
  static SuperElement monomial(GenSetPtr g, const TermKey& k, const Scalar& c);

  bool is_zero() const { return terms.empty(); }
  Scalar coeff(const TermKey& k) const;
  Scalar body() const { return coeff(TermKey{}); }
  void add_term(const TermKey& k, const Scalar& c);

  bool is_even() const;
  bool is_odd() const;
  // -1 for 0 or mixed, else 0/1.
  int parity() const;
  int max_degree() const;

  SuperElement operator-() const;
  SuperElement operator+(const SuperElement& o) const;
  SuperElement operator-(const SuperElement& o) const;
  SuperElement operator*(const Scalar& c) const;
  SuperElement& operator+=(const SuperElement& o);
  bool operator==(const SuperElement& o) const;
  bool operator!=(const SuperElement& o) const { return !(*this == o); }

  SuperElement to_float() const;
  // Max |coefficient| over all terms, symbolic factors expanded.
  double float_norm() const;
};

using KeyFilter = std::function<bool(const TermKey&)>;

SuperElement mul(const SuperElement& a, const SuperElement& b);
SuperElement mul_filtered(const SuperElement& a, const SuperElement& b,
                          const KeyFilter& keep);

// Parity automorphism: negates every odd-parity term (fermions and phantoms
// both count).
SuperElement sigma(const SuperElement& a);

// Projection killing every term that carries a phantom factor.
SuperElement pi_down(const SuperElement& a);

// exp of an even element with nilpotent (truncation included) non-scalar
// part. An exact-backend element must have zero scalar part; a float one may
// carry any scalar part.
SuperElement exp_even(const SuperElement& a);
SuperElement exp_even_filtered(const SuperElement& a, const KeyFilter& keep);

// Multiplicative inverse of an even element with invertible scalar part.
SuperElement invert(const SuperElement& a);

// Square root of an even element whose scalar part has an accessible square
// root (exact perfect squares stay exact).
SuperElement sqrt_even(const SuperElement& a);

// Left derivative with respect to one fermion generator:
// a = xi * derive_left(a, i) + (part of a free of xi).
SuperElement derive_left(const SuperElement& a, int fermion_index);

// Sequential left derivatives, leftmost entry of `order` applied first.
// Normalization: the integral of g_1 g_2 ... g_m over dg_1 dg_2 ... dg_m
// is 1. This is the primitive every Gaussian formula in the library uses.
SuperElement berezin_integral_seq(const SuperElement& a,
                                  const std::vector<int>& order);

// Berezin integral with the classical normalization: the integral of the
// reversed top monomial g_m ... g_2 g_1 over dg_1 dg_2 ... dg_m is 1.
SuperElement berezin_integral(const SuperElement& a,
                              const std::vector<int>& order);

// Contraction of paired fermion generators (eta_i, etabar_i): multiplies by
// exp(-sum eta_i etabar_i) and integrates out all listed generators.
SuperElement gauss_pair_fermion(const SuperElement& a,
                                const std::vector<std::pair<int, int>>& pairs);

// Contraction of paired boson variables (u_i, ubar_i) under the pairing
// <u^k, ubar^k> = k!. Terms with mismatched exponents in a pair vanish.
SuperElement pair_boson(const SuperElement& a,
                        const std::vector<std::pair<int, int>>& pairs);

// Algebra map determined by images of every generator. Boson images must be
// even, fermion and phantom images odd, all over `target`.
SuperElement substitute(const SuperElement& a, GenSetPtr target,
                        const std::vector<SuperElement>& boson_images,
                        const std::vector<SuperElement>& fermion_images,
                        const std::vector<SuperElement>& phantom_images);

// Injective relabeling into a larger generator set; boson_map/fermion_map
// give the target index of each source generator, phantoms keep their index.
SuperElement map_generators(const SuperElement& a, GenSetPtr target,
                            const std::vector<int>& boson_map,
                            const std::vector<int>& fermion_map);

std::string to_string(const SuperElement& a);

}  // namespace superalg
