#include "superalg/algebra.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace superalg {

int GeneratorSet::boson_index(const std::string& name) const {
  for (size_t i = 0; i < bosons.size(); ++i)
    if (bosons[i] == name) return int(i);
  return -1;
}

int GeneratorSet::fermion_index(const std::string& name) const {
  for (size_t i = 0; i < fermions.size(); ++i)
    if (fermions[i] == name) return int(i);
  return -1;
}

GenSetPtr make_gens(std::vector<std::string> bosons,
                    std::vector<std::string> fermions, int phantoms,
                    int trunc) {
  if (bosons.size() > 8) throw std::invalid_argument("make_gens: >8 bosons");
  if (fermions.size() > 64 || phantoms > 64)
    throw std::invalid_argument("make_gens: generator count out of range");
  if (!bosons.empty() && trunc <= 0)
    throw std::invalid_argument("make_gens: bosons need a degree cap");
  if (trunc > 255) throw std::invalid_argument("make_gens: cap too large");
  auto g = std::make_shared<GeneratorSet>();
  g->bosons = std::move(bosons);
  g->fermions = std::move(fermions);
  g->phantoms = phantoms;
  g->trunc = trunc;
  return g;
}

void TermKey::set_boson_exp(int i, int e) {
  boson = (boson & ~(std::uint64_t(0xff) << (8 * i))) |
          (std::uint64_t(e & 0xff) << (8 * i));
}

int TermKey::boson_degree() const {
  int d = 0;
  for (int i = 0; i < 8; ++i) d += boson_exp(i);
  return d;
}

int TermKey::odd_count() const {
  return std::popcount(ferm) + std::popcount(phan);
}

int merge_sign(std::uint64_t a, std::uint64_t b) {
  int inv = 0;
  std::uint64_t bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    bb &= bb - 1;
    if (j < 63) inv += std::popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

namespace {

void check_same_gens(const SuperElement& a, const SuperElement& b,
                     const char* who) {
  if (!a.gens || !b.gens || !(*a.gens == *b.gens))
    throw std::invalid_argument(std::string(who) + ": mismatched generator sets");
}

}  // namespace

SuperElement::SuperElement(GenSetPtr g, const Scalar& c) : gens(std::move(g)) {
  if (!c.is_zero()) terms.emplace(TermKey{}, c);
}

SuperElement SuperElement::boson_var(GenSetPtr g, int i) {
  if (i < 0 || i >= int(g->bosons.size()))
    throw std::out_of_range("boson_var");
  TermKey k;
  k.set_boson_exp(i, 1);
  return monomial(std::move(g), k, Scalar(1));
}

SuperElement SuperElement::fermion_var(GenSetPtr g, int i) {
  if (i < 0 || i >= int(g->fermions.size()))
    throw std::out_of_range("fermion_var");
  TermKey k;
  k.ferm = std::uint64_t(1) << i;
  return monomial(std::move(g), k, Scalar(1));
}

SuperElement SuperElement::phantom_var(GenSetPtr g, int j) {
  if (j < 0 || j >= g->phantoms) throw std::out_of_range("phantom_var");
  TermKey k;
  k.phan = std::uint64_t(1) << j;
  return monomial(std::move(g), k, Scalar(1));
}

SuperElement SuperElement::monomial(GenSetPtr g, const TermKey& k,
                                    const Scalar& c) {
  SuperElement e(std::move(g));
  if (!c.is_zero()) e.terms.emplace(k, c);
  return e;
}

Scalar SuperElement::coeff(const TermKey& k) const {
  auto it = terms.find(k);
  return it == terms.end() ? Scalar() : it->second;
}

void SuperElement::add_term(const TermKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool SuperElement::is_even() const {
  for (const auto& [k, c] : terms)
    if (k.parity() != 0) return false;
  return true;
}

bool SuperElement::is_odd() const {
  for (const auto& [k, c] : terms)
    if (k.parity() != 1) return false;
  return true;
}

int SuperElement::parity() const {
  if (terms.empty()) return 0;
  int p = terms.begin()->first.parity();
  for (const auto& [k, c] : terms)
    if (k.parity() != p) return -1;
  return p;
}

int SuperElement::max_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms) d = std::max(d, k.degree());
  return d;
}

SuperElement SuperElement::operator-() const {
  SuperElement r = *this;
  for (auto& [k, c] : r.terms) c = -c;
  return r;
}

SuperElement SuperElement::operator+(const SuperElement& o) const {
  check_same_gens(*this, o, "add");
  SuperElement r = *this;
  r.truncated = truncated || o.truncated;
  for (const auto& [k, c] : o.terms) r.add_term(k, c);
  return r;
}

SuperElement SuperElement::operator-(const SuperElement& o) const {
  return *this + (-o);
}

SuperElement SuperElement::operator*(const Scalar& c) const {
  SuperElement r(gens);
  r.truncated = truncated;
  if (c.is_zero()) return r;
  for (const auto& [k, cc] : terms) {
    Scalar v = cc * c;
    if (!v.is_zero()) r.terms.emplace(k, v);
  }
  return r;
}

SuperElement& SuperElement::operator+=(const SuperElement& o) {
  *this = *this + o;
  return *this;
}

bool SuperElement::operator==(const SuperElement& o) const {
  if (!gens || !o.gens) return terms.empty() && o.terms.empty();
  return *gens == *o.gens && terms == o.terms;
}

SuperElement SuperElement::to_float() const {
  SuperElement r(gens);
  r.truncated = truncated;
  for (const auto& [k, c] : terms) {
    Scalar v = c.to_float();
    if (!v.is_zero()) r.terms.emplace(k, v);
  }
  return r;
}

double SuperElement::float_norm() const {
  double m = 0;
  for (const auto& [k, c] : terms) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

SuperElement mul_filtered(const SuperElement& a, const SuperElement& b,
                          const KeyFilter& keep) {
  check_same_gens(a, b, "mul");
  SuperElement r(a.gens);
  r.truncated = a.truncated || b.truncated;
  const bool has_bosons = !a.gens->bosons.empty();
  const int cap = a.gens->trunc;
  for (const auto& [k1, c1] : a.terms) {
    for (const auto& [k2, c2] : b.terms) {
      if (k1.ferm & k2.ferm) continue;
      if (k1.phan & k2.phan) continue;
      TermKey k;
      if (has_bosons) {
        int d = 0;
        for (size_t i = 0; i < a.gens->bosons.size(); ++i) {
          int e = k1.boson_exp(int(i)) + k2.boson_exp(int(i));
          k.set_boson_exp(int(i), e);
          d += e;
        }
        if (d > cap) {
          r.truncated = true;
          continue;
        }
      }
      k.ferm = k1.ferm | k2.ferm;
      k.phan = k1.phan | k2.phan;
      if (keep && !keep(k)) continue;
      int s = merge_sign(k1.ferm, k2.ferm) * merge_sign(k1.phan, k2.phan);
      if ((std::popcount(k1.phan) & 1) && (std::popcount(k2.ferm) & 1)) s = -s;
      Scalar v = c1 * c2;
      if (s < 0) v = -v;
      r.add_term(k, v);
    }
  }
  return r;
}

SuperElement mul(const SuperElement& a, const SuperElement& b) {
  return mul_filtered(a, b, nullptr);
}

SuperElement sigma(const SuperElement& a) {
  SuperElement r = a;
  for (auto& [k, c] : r.terms)
    if (k.parity()) c = -c;
  return r;
}

SuperElement pi_down(const SuperElement& a) {
  SuperElement r(a.gens);
  r.truncated = a.truncated;
  for (const auto& [k, c] : a.terms)
    if (k.phan == 0) r.terms.emplace(k, c);
  return r;
}

namespace {

int nilpotency_bound(const GeneratorSet& g) {
  return 2 * g.trunc + int(g.fermions.size()) + g.phantoms + 2;
}

SuperElement exp_impl(const SuperElement& a, const KeyFilter& keep) {
  if (!a.is_even()) throw std::domain_error("exp_even: element not even");
  Scalar c0 = a.body();
  SuperElement n = a;
  n.terms.erase(TermKey{});
  Scalar pref(1);
  if (!c0.is_zero()) {
    if (c0.is_exact())
      throw std::domain_error("exp_even: exact element with scalar part");
    pref = Scalar::flt(std::exp(c0.to_complex()));
  }
  SuperElement r = SuperElement::one(a.gens);
  SuperElement p = SuperElement::one(a.gens);
  mpz_class kfact(1);
  int bound = nilpotency_bound(*a.gens);
  for (int k = 1; !p.is_zero() && k <= bound; ++k) {
    p = mul_filtered(p, n, keep);
    kfact *= k;
    if (p.is_zero()) break;
    r += p * Scalar(CQ(mpq_class(mpz_class(1), kfact)));
  }
  if (!p.is_zero())
    throw std::domain_error("exp_even: element not nilpotent");
  if (!(pref == Scalar(1))) r = r * pref;
  r.truncated = r.truncated || a.truncated;
  return r;
}

}  // namespace

SuperElement exp_even(const SuperElement& a) { return exp_impl(a, nullptr); }

SuperElement exp_even_filtered(const SuperElement& a, const KeyFilter& keep) {
  return exp_impl(a, keep);
}

SuperElement invert(const SuperElement& a) {
  if (!a.is_even()) throw std::domain_error("invert: element not even");
  Scalar b = a.body();
  if (b.is_zero()) throw std::domain_error("invert: scalar part vanishes");
  Scalar binv = Scalar(1) / b;
  SuperElement n = a * binv;  // 1 + nilpotent
  n.terms.erase(TermKey{});
  SuperElement r = SuperElement::one(a.gens);
  SuperElement p = SuperElement::one(a.gens);
  int bound = nilpotency_bound(*a.gens);
  for (int k = 1; k <= bound; ++k) {
    p = mul(p, n);
    if (p.is_zero()) break;
    r += (k & 1) ? -p : p;
  }
  if (!p.is_zero()) throw std::domain_error("invert: series did not terminate");
  r = r * binv;
  r.truncated = r.truncated || a.truncated;
  return r;
}

SuperElement sqrt_even(const SuperElement& a) {
  if (!a.is_even()) throw std::domain_error("sqrt_even: element not even");
  Scalar b = a.body();
  if (b.is_zero()) throw std::domain_error("sqrt_even: scalar part vanishes");
  Scalar s = b.sqrt();
  SuperElement n = a * (Scalar(1) / b);
  n.terms.erase(TermKey{});
  SuperElement r = SuperElement::one(a.gens);
  SuperElement p = SuperElement::one(a.gens);
  mpq_class coef(1);
  int bound = nilpotency_bound(*a.gens);
  for (int k = 1; k <= bound; ++k) {
    p = mul(p, n);
    if (p.is_zero()) break;
    // binomial(1/2, k), built incrementally
    mpq_class step(3 - 2 * k, 2 * k);
    step.canonicalize();
    coef *= step;
    r += p * Scalar(CQ(coef));
  }
  if (!p.is_zero())
    throw std::domain_error("sqrt_even: series did not terminate");
  r = r * s;
  r.truncated = r.truncated || a.truncated;
  return r;
}

SuperElement derive_left(const SuperElement& a, int fermion_index) {
  if (fermion_index < 0 || fermion_index >= int(a.gens->fermions.size()))
    throw std::out_of_range("derive_left");
  std::uint64_t bit = std::uint64_t(1) << fermion_index;
  SuperElement r(a.gens);
  r.truncated = a.truncated;
  for (const auto& [k, c] : a.terms) {
    if (!(k.ferm & bit)) continue;
    TermKey nk = k;
    nk.ferm &= ~bit;
    int before = std::popcount(k.ferm & (bit - 1));
    r.terms.emplace(nk, (before & 1) ? -c : c);
  }
  return r;
}

SuperElement berezin_integral_seq(const SuperElement& a,
                                  const std::vector<int>& order) {
  SuperElement r = a;
  for (int i : order) r = derive_left(r, i);
  return r;
}

SuperElement berezin_integral(const SuperElement& a,
                              const std::vector<int>& order) {
  std::vector<int> rev(order.rbegin(), order.rend());
  return berezin_integral_seq(a, rev);
}

SuperElement gauss_pair_fermion(
    const SuperElement& a, const std::vector<std::pair<int, int>>& pairs) {
  SuperElement weight = SuperElement::one(a.gens);
  std::vector<int> order;
  for (auto [e, eb] : pairs) {
    SuperElement f = SuperElement::one(a.gens);
    TermKey k;
    k.ferm = (std::uint64_t(1) << e) | (std::uint64_t(1) << eb);
    // -eta*etabar written on the ascending-order key
    Scalar c = (e < eb) ? Scalar(-1) : Scalar(1);
    f.add_term(k, c);
    weight = mul(weight, f);
    order.push_back(eb);
    order.push_back(e);
  }
  return berezin_integral_seq(mul(a, weight), order);
}

SuperElement pair_boson(const SuperElement& a,
                        const std::vector<std::pair<int, int>>& pairs) {
  SuperElement r(a.gens);
  r.truncated = a.truncated;
  for (const auto& [k, c] : a.terms) {
    TermKey nk = k;
    mpz_class w(1);
    bool ok = true;
    for (auto [u, ub] : pairs) {
      int eu = k.boson_exp(u), eb = k.boson_exp(ub);
      if (eu != eb) {
        ok = false;
        break;
      }
      for (int j = 2; j <= eu; ++j) w *= j;
      nk.set_boson_exp(u, 0);
      nk.set_boson_exp(ub, 0);
    }
    if (!ok) continue;
    Scalar v = c;
    if (w != 1) v = v * Scalar(CQ(mpq_class(w)));
    r.add_term(nk, v);
  }
  return r;
}

SuperElement substitute(const SuperElement& a, GenSetPtr target,
                        const std::vector<SuperElement>& boson_images,
                        const std::vector<SuperElement>& fermion_images,
                        const std::vector<SuperElement>& phantom_images) {
  SuperElement r(target);
  r.truncated = a.truncated;
  for (const auto& [k, c] : a.terms) {
    SuperElement t(target, c);
    for (size_t i = 0; i < a.gens->bosons.size(); ++i)
      for (int e = 0; e < k.boson_exp(int(i)); ++e)
        t = mul(t, boson_images.at(i));
    std::uint64_t f = k.ferm;
    while (f) {
      int i = std::countr_zero(f);
      f &= f - 1;
      t = mul(t, fermion_images.at(i));
    }
    std::uint64_t p = k.phan;
    while (p) {
      int j = std::countr_zero(p);
      p &= p - 1;
      t = mul(t, phantom_images.at(j));
    }
    r += t;
  }
  return r;
}

SuperElement map_generators(const SuperElement& a, GenSetPtr target,
                            const std::vector<int>& boson_map,
                            const std::vector<int>& fermion_map) {
  if (a.gens->phantoms > target->phantoms)
    throw std::invalid_argument("map_generators: phantom count shrinks");
  SuperElement r(target);
  r.truncated = a.truncated;
  for (const auto& [k, c] : a.terms) {
    TermKey nk;
    for (size_t i = 0; i < a.gens->bosons.size(); ++i) {
      int e = k.boson_exp(int(i));
      if (e) nk.set_boson_exp(boson_map.at(i), e);
    }
    // relabeled fermions may land out of ascending order; count inversions
    std::vector<int> imgs;
    std::uint64_t f = k.ferm;
    while (f) {
      int i = std::countr_zero(f);
      f &= f - 1;
      imgs.push_back(fermion_map.at(i));
    }
    int inv = 0;
    for (size_t x = 0; x < imgs.size(); ++x)
      for (size_t y = x + 1; y < imgs.size(); ++y)
        if (imgs[x] > imgs[y]) ++inv;
    for (int i : imgs) {
      std::uint64_t bit = std::uint64_t(1) << i;
      if (nk.ferm & bit)
        throw std::invalid_argument("map_generators: fermion map not injective");
      nk.ferm |= bit;
    }
    nk.phan = k.phan;
    r.add_term(nk, (inv & 1) ? -c : c);
  }
  return r;
}

std::string to_string(const SuperElement& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < a.gens->bosons.size(); ++i) {
      int e = k.boson_exp(int(i));
      if (e == 1) os << "*" << a.gens->bosons[i];
      if (e > 1) os << "*" << a.gens->bosons[i] << "^" << e;
    }
    std::uint64_t f = k.ferm;
    while (f) {
      int i = std::countr_zero(f);
      f &= f - 1;
      os << "*" << a.gens->fermions[i];
    }
    std::uint64_t p = k.phan;
    while (p) {
      int j = std::countr_zero(p);
      p &= p - 1;
      os << "*a" << (j + 1);
    }
  }
  return os.str();
}

}  // namespace superalg
