#include "superalg/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace superalg {

namespace {
const double kTwoPi = 6.283185307179586476925286766559;
}

std::string CQ::str() const {
  std::ostringstream os;
  if (im == 0) {
    os << re;
  } else if (re == 0) {
    os << im << "i";
  } else {
    os << re;
    if (im > 0) os << "+";
    os << im << "i";
  }
  return os.str();
}

CQ cq_parse(const std::string& s) {
  // Accepted grammar: [sign] term [sign term], term = rational ['i'] | 'i'.
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("cq_parse: empty");

  CQ out;
  size_t pos = 0;
  auto term = [&]() {
    int sign = 1;
    while (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      if (t[pos] == '-') sign = -sign;
      ++pos;
    }
    size_t start = pos;
    while (pos < t.size() && (isdigit(static_cast<unsigned char>(t[pos])) ||
                              t[pos] == '/' || t[pos] == '.'))
      ++pos;
    bool imag = pos < t.size() && (t[pos] == 'i' || t[pos] == 'I' || t[pos] == 'j');
    std::string num = t.substr(start, pos - start);
    if (imag) ++pos;
    if (num.empty()) {
      if (!imag) throw std::invalid_argument("cq_parse: bad term in '" + s + "'");
      num = "1";
    }
    mpq_class q;
    if (num.find('.') != std::string::npos) {
      // Decimal literal: scale to a rational.
      size_t dot = num.find('.');
      std::string digits = num.substr(0, dot) + num.substr(dot + 1);
      size_t frac = num.size() - dot - 1;
      mpz_class den(1);
      for (size_t k = 0; k < frac; ++k) den *= 10;
      q = mpq_class(mpz_class(digits), den);
    } else {
      q = mpq_class(num);
    }
    q.canonicalize();
    if (sign < 0) q = -q;
    if (imag)
      out.im += q;
    else
      out.re += q;
  };
  term();
  if (pos < t.size()) term();
  if (pos != t.size())
    throw std::invalid_argument("cq_parse: trailing junk in '" + s + "'");
  return out;
}

bool rational_sqrt(const mpq_class& x, mpq_class& out) {
  if (x < 0) return false;
  if (x == 0) {
    out = 0;
    return true;
  }
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class rn, rd;
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = mpq_class(rn, rd);
  return true;
}

std::complex<double> Scalar::to_complex() const {
  std::complex<double> v = raw_complex();
  if (tau_ != 0) v *= std::pow(kTwoPi, tau_ / 2.0);
  return v;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (s.is_exact())
    s.ex_ = -s.ex_;
  else
    s.fl_ = -s.fl_;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (tau_ != o.tau_)
    throw std::domain_error("Scalar: adding incompatible (2*pi) powers");
  if (is_exact() && o.is_exact()) return Scalar(ex_ + o.ex_, tau_);
  return flt(raw_complex() + o.raw_complex(), tau_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  int tau = tau_ + o.tau_;
  if (is_exact() && o.is_exact()) {
    CQ v = ex_ * o.ex_;
    if (v.is_zero()) tau = 0;
    return Scalar(std::move(v), tau);
  }
  std::complex<double> v = raw_complex() * o.raw_complex();
  if (v == std::complex<double>(0.0, 0.0)) tau = 0;
  return flt(v, tau);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
  int tau = tau_ - o.tau_;
  if (is_exact() && o.is_exact()) {
    CQ v = ex_ / o.ex_;
    if (v.is_zero()) tau = 0;
    return Scalar(std::move(v), tau);
  }
  std::complex<double> v = raw_complex() / o.raw_complex();
  if (v == std::complex<double>(0.0, 0.0)) tau = 0;
  return flt(v, tau);
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(ex_.conj(), tau_);
  return flt(std::conj(fl_), tau_);
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (tau_ != o.tau_) return false;
  if (is_exact() && o.is_exact()) return ex_ == o.ex_;
  return raw_complex() == o.raw_complex();
}

Scalar Scalar::sqrt() const {
  if (is_zero()) return Scalar();
  if (is_exact() && tau_ % 2 == 0) {
    // z = a+bi is a square in Q(i) iff |z|^2 is a rational square s^2 with
    // (a+s)/2 a rational square p^2; then sqrt(z) = p + (b/2p) i.
    mpq_class a = ex_.re, b = ex_.im;
    mpq_class n = a * a + b * b, s;
    if (rational_sqrt(n, s)) {
      mpq_class half = mpq_class(1, 2);
      mpq_class p2 = (a + s) * half, p;
      if (rational_sqrt(p2, p) && p != 0) {
        mpq_class q = b / (2 * p);
        CQ r(p, q);
        // Principal branch: Re > 0, or Re = 0 with Im >= 0.
        if (r.re < 0 || (r.re == 0 && r.im < 0)) r = -r;
        return Scalar(r, tau_ / 2);
      }
      if (p2 == 0) {
        // Purely negative real: sqrt(-r^2) = r i.
        mpq_class m2 = (s - a) * half, m;
        if (rational_sqrt(m2, m))
          return Scalar(CQ(mpq_class(0), m), tau_ / 2);
      }
    }
  }
  std::complex<double> v = raw_complex();
  if (tau_ % 2 != 0) v *= std::pow(kTwoPi, 0.5 * (tau_ % 2));
  return flt(std::sqrt(v), tau_ / 2);
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (is_exact())
    os << ex_.str();
  else {
    os << fl_.real();
    if (fl_.imag() != 0) os << (fl_.imag() > 0 ? "+" : "") << fl_.imag() << "i";
  }
  if (tau_ != 0) os << "*(2pi)^(" << tau_ << "/2)";
  return os.str();
}

}  // namespace superalg
