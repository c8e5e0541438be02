#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace superalg {

// Complex number with exact rational real and imaginary parts.
// The coefficient field for all exact computations.
struct CQ {
  mpq_class re, im;

  CQ() : re(0), im(0) {}
  CQ(long r) : re(r), im(0) {}
  CQ(const mpq_class& r) : re(r), im(0) {}
  CQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  static CQ i() { return CQ(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CQ conj() const { return CQ(re, -im); }

  CQ operator-() const { return CQ(-re, -im); }
  CQ operator+(const CQ& o) const { return CQ(re + o.re, im + o.im); }
  CQ operator-(const CQ& o) const { return CQ(re - o.re, im - o.im); }
  CQ operator*(const CQ& o) const {
    return CQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CQ operator/(const CQ& o) const {
    mpq_class n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("CQ: division by zero");
    return CQ((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
  }
  CQ& operator+=(const CQ& o) { re += o.re; im += o.im; return *this; }
  CQ& operator-=(const CQ& o) { re -= o.re; im -= o.im; return *this; }
  CQ& operator*=(const CQ& o) { *this = *this * o; return *this; }
  bool operator==(const CQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CQ& o) const { return !(*this == o); }
  bool operator<(const CQ& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }
  std::string str() const;
};

// Parses "a/b", "a/b+c/d i", "-3", "2i", ... (the interchange string form).
CQ cq_parse(const std::string& s);

// Exact square root of a nonnegative rational if it is a perfect square.
bool rational_sqrt(const mpq_class& x, mpq_class& out);

// One scalar of the calculus: either an exact Gaussian rational or a complex
// double, times a symbolic power (2*pi)^(tau/2) that is only expanded on
// explicit request. tau combines additively under multiplication; addition
// demands matching tau (a zero operand adopts the other side's tau).
class Scalar {
 public:
  enum class Backend { Exact, Float };

  Scalar() : b_(Backend::Exact), tau_(0) {}
  Scalar(long v) : b_(Backend::Exact), ex_(v), tau_(0) {}
  explicit Scalar(CQ v, int tau = 0) : b_(Backend::Exact), ex_(std::move(v)), tau_(tau) {}
  static Scalar exact(CQ v, int tau = 0) { return Scalar(std::move(v), tau); }
  static Scalar flt(std::complex<double> v, int tau = 0) {
    Scalar s;
    s.b_ = Backend::Float;
    s.fl_ = v;
    s.tau_ = tau;
    return s;
  }

  Backend backend() const { return b_; }
  bool is_exact() const { return b_ == Backend::Exact; }
  int tau() const { return tau_; }
  bool is_zero() const {
    return is_exact() ? ex_.is_zero() : fl_ == std::complex<double>(0.0, 0.0);
  }

  // Exact payload (throws on float backend).
  const CQ& exact_value() const {
    if (!is_exact()) throw std::logic_error("Scalar: not exact");
    return ex_;
  }
  // Numeric value without the (2*pi)^(tau/2) factor.
  std::complex<double> raw_complex() const {
    return is_exact() ? ex_.to_complex() : fl_;
  }
  // Numeric value with the symbolic factor expanded.
  std::complex<double> to_complex() const;

  Scalar to_float() const { return flt(raw_complex(), tau_); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar conj() const;  // complex conjugate; tau unchanged

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Principal square root. Exact if the value is a perfect square in Q(i)
  // (and tau is even); otherwise falls back to the float backend.
  Scalar sqrt() const;

  std::string str() const;

 private:
  Backend b_;
  CQ ex_;
  std::complex<double> fl_{0.0, 0.0};
  int tau_;
};

}  // namespace superalg
