#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "ncg/errors.hpp"

namespace ncg {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational ratio(long n, long d) {
  require(d != 0, Err::DivisionByZero, "rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Element of Q(i). The coefficient field underneath everything.
struct GaussRat {
  Rational re{0};
  Rational im{0};

  GaussRat() = default;
  GaussRat(Rational r) : re(std::move(r)) {}
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussRat conj() const { return GaussRat(re, -im); }
  Rational norm() const { return re * re + im * im; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re + b.re, a.im + b.im);
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re - b.re, a.im - b.im);
  }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    require(!b.is_zero(), Err::DivisionByZero, "Gaussian rational division by zero");
    const Rational n = b.norm();
    GaussRat c = a * b.conj();
    return GaussRat(c.re / n, c.im / n);
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

namespace detail {

// Dense univariate polynomials over Q(i), ascending degree, trailing zeros trimmed.
using Poly = std::vector<GaussRat>;

inline void ptrim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t k = 0; k < r.size(); ++k) {
    GaussRat v;
    if (k < a.size()) v = v + a[k];
    if (k < b.size()) v = v + b[k];
    r[k] = v;
  }
  ptrim(r);
  return r;
}

inline Poly pneg(const Poly& a) {
  Poly r(a);
  for (auto& c : r) c = -c;
  return r;
}

inline Poly psub(const Poly& a, const Poly& b) { return padd(a, pneg(b)); }

inline Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = 0; k < b.size(); ++k) r[j + k] = r[j + k] + a[j] * b[k];
  ptrim(r);
  return r;
}

inline Poly pscale(const Poly& a, const GaussRat& c) {
  Poly r(a);
  for (auto& x : r) x = x * c;
  ptrim(r);
  return r;
}

// Euclidean division; requires b nonzero.
inline void pdivmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  require(!b.empty(), Err::DivisionByZero, "polynomial division by zero");
  q.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, GaussRat());
  while (a.size() >= b.size()) {
    const size_t shift = a.size() - b.size();
    GaussRat c = a.back() / b.back();
    q[shift] = c;
    for (size_t k = 0; k < b.size(); ++k) a[shift + k] = a[shift + k] - c * b[k];
    ptrim(a);
    if (a.empty()) break;
    if (a.size() < b.size()) break;
  }
  ptrim(q);
  r = std::move(a);
}

inline Poly pmonic(Poly a) {
  if (a.empty()) return a;
  const GaussRat lead = a.back();
  for (auto& c : a) c = c / lead;
  return a;
}

inline Poly pgcd(Poly a, Poly b) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly q, r;
    pdivmod(a, b, q, r);
    a = std::move(b);
    b = pmonic(std::move(r));
  }
  return pmonic(std::move(a));
}

inline GaussRat peval1(const Poly& a) {
  GaussRat s;
  for (const auto& c : a) s = s + c;
  return s;
}

inline Poly pconj(Poly a) {
  for (auto& c : a) c = c.conj();
  return a;
}

inline Poly preverse(Poly a) {
  std::reverse(a.begin(), a.end());
  ptrim(a);
  return a;
}

}  // namespace detail

// Scalar of the deformation field: a rational function of the formal unit
// x = q^(1/2) over Q(i), stored as x^pow * num(x)/den(x) with the canonical
// form: num, den coprime, den monic, num(0) != 0 and den(0) != 0 (powers of x
// pulled into pow). Zero is {pow 0, num empty, den 1}, so equality is
// structural. The involution sends x to x^(-1) and i to -i.
struct Scalar {
  long pow = 0;           // exponent of x = q^(1/2)
  detail::Poly num;       // empty means zero
  detail::Poly den{GaussRat(Rational(1))};

  Scalar() = default;

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return from_gauss(GaussRat(Rational(1))); }
  static Scalar imag_unit() { return from_gauss(GaussRat::i()); }
  // Copies are canonicalized before use: GMP comparisons assume canonical
  // form, and callers may hand over two-argument mpq constructions.
  static Scalar from_rational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return from_gauss(GaussRat(c));
  }
  static Scalar from_gauss(const GaussRat& g) {
    Scalar s;
    if (!g.is_zero()) s.num = {g};
    return s;
  }
  // q^(half_units/2); half_units counts powers of x.
  static Scalar q_power(long half_units) {
    Scalar s = one();
    s.pow = half_units;
    return s;
  }

  bool is_zero() const { return num.empty(); }
  bool is_one() const { return pow == 0 && den.size() == 1 && den[0] == GaussRat(Rational(1)) && num.size() == 1 && num[0] == GaussRat(Rational(1)); }
  bool is_constant() const {
    return is_zero() || (pow == 0 && num.size() == 1 && den.size() == 1);
  }
  GaussRat as_gauss() const {
    require(is_constant(), Err::DomainMismatch, "scalar is not a constant");
    if (is_zero()) return GaussRat();
    return num[0] / den[0];
  }

  void normalize() {
    detail::ptrim(num);
    detail::ptrim(den);
    require(!den.empty(), Err::DivisionByZero, "scalar with zero denominator");
    if (num.empty()) {
      pow = 0;
      den = {GaussRat(Rational(1))};
      return;
    }
    while (num.front().is_zero()) {
      num.erase(num.begin());
      ++pow;
    }
    while (den.front().is_zero()) {
      den.erase(den.begin());
      --pow;
    }
    detail::Poly g = detail::pgcd(num, den);
    if (g.size() > 1) {
      detail::Poly q, r;
      detail::pdivmod(num, g, q, r);
      num = std::move(q);
      detail::pdivmod(den, g, q, r);
      den = std::move(q);
    }
    const GaussRat lead = den.back();
    num = detail::pscale(num, GaussRat(Rational(1)) / lead);
    den = detail::pscale(den, GaussRat(Rational(1)) / lead);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Scalar r;
    r.pow = std::min(a.pow, b.pow);
    detail::Poly na = a.num, nb = b.num;
    na.insert(na.begin(), static_cast<size_t>(a.pow - r.pow), GaussRat());
    nb.insert(nb.begin(), static_cast<size_t>(b.pow - r.pow), GaussRat());
    r.num = detail::padd(detail::pmul(na, b.den), detail::pmul(nb, a.den));
    r.den = detail::pmul(a.den, b.den);
    r.normalize();
    return r;
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar r(a);
    r.num = detail::pneg(r.num);
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Scalar r;
    r.pow = a.pow + b.pow;
    r.num = detail::pmul(a.num, b.num);
    r.den = detail::pmul(a.den, b.den);
    r.normalize();
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    require(!b.is_zero(), Err::DivisionByZero, "scalar division by zero");
    if (a.is_zero()) return zero();
    Scalar r;
    r.pow = a.pow - b.pow;
    r.num = detail::pmul(a.num, b.den);
    r.den = detail::pmul(a.den, b.num);
    r.normalize();
    return r;
  }
  Scalar inverse() const { return one() / *this; }

  // The involution: q^(1/2) -> q^(-1/2), i -> -i.
  Scalar conj() const {
    if (is_zero()) return zero();
    Scalar r;
    const long dn = static_cast<long>(num.size()) - 1;
    const long dd = static_cast<long>(den.size()) - 1;
    r.pow = -pow - dn + dd;
    r.num = detail::preverse(detail::pconj(num));
    r.den = detail::preverse(detail::pconj(den));
    r.normalize();
    return r;
  }

  bool is_hermitian() const { return conj() == *this; }

  // Substitutes q = 1. Fails on a pole at q = 1 (possible only for
  // denominators divisible by x - 1, which the geometric pipeline never makes).
  Scalar specialize_one() const {
    if (is_zero()) return zero();
    const GaussRat d1 = detail::peval1(den);
    require(!d1.is_zero(), Err::UnsupportedSpecialization,
            "pole at q = 1");
    return from_gauss(detail::peval1(num) / d1);
  }

  Scalar power(long k) const {
    if (k == 0) return one();
    Scalar base = k > 0 ? *this : inverse();
    long n = std::labs(k);
    Scalar r = one();
    for (long j = 0; j < n; ++j) r = r * base;
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.pow == b.pow && a.num == b.num && a.den == b.den;
  }
};

namespace detail {

// Polynomials in the central element t with Scalar coefficients.
using TPoly = std::vector<Scalar>;

inline void ttrim(TPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline TPoly tadd(const TPoly& a, const TPoly& b) {
  TPoly r(std::max(a.size(), b.size()), Scalar::zero());
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] = r[k] + a[k];
    if (k < b.size()) r[k] = r[k] + b[k];
  }
  ttrim(r);
  return r;
}

inline TPoly tmul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, Scalar::zero());
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = 0; k < b.size(); ++k) r[j + k] = r[j + k] + a[j] * b[k];
  ttrim(r);
  return r;
}

inline Scalar teval1(const TPoly& a) {
  Scalar s = Scalar::zero();
  for (const auto& c : a) s = s + c;
  return s;
}

// Exact division by (1 - t); requires a(1) = 0.
inline TPoly tdiv_one_minus_t(const TPoly& a) {
  if (a.empty()) return {};
  TPoly b(a.size() - 1, Scalar::zero());
  Scalar carry = Scalar::zero();
  for (size_t k = 0; k + 1 < a.size(); ++k) {
    carry = a[k] + carry;
    b[k] = carry;
  }
  require(b.empty() ? a[0].is_zero() : (-b.back()) == a.back(), Err::DivisionByZero,
          "inexact division by (1 - t)");
  ttrim(b);
  return b;
}

}  // namespace detail

// Central coefficient: num(t) / (t^tp * (1-t)^up) with Scalar coefficients.
// Canonical: tp, up >= 0; if tp > 0 the numerator is not divisible by t; if
// up > 0 it is not divisible by (1 - t). Zero is {empty, 0, 0}.
struct CentralFn {
  detail::TPoly num;
  long tp = 0;
  long up = 0;

  CentralFn() = default;

  static CentralFn zero() { return CentralFn(); }
  static CentralFn one() { return from_scalar(Scalar::one()); }
  static CentralFn from_scalar(const Scalar& s) {
    CentralFn c;
    if (!s.is_zero()) c.num = {s};
    return c;
  }
  static CentralFn t() {
    CentralFn c;
    c.num = {Scalar::zero(), Scalar::one()};
    return c;
  }
  static CentralFn one_minus_t() {
    CentralFn c;
    c.num = {Scalar::one(), -Scalar::one()};
    return c;
  }

  bool is_zero() const { return num.empty(); }
  bool is_polynomial() const { return tp == 0 && up == 0; }
  bool is_constant() const { return is_zero() || (is_polynomial() && num.size() == 1); }
  bool is_one() const { return is_constant() && !is_zero() && num[0].is_one(); }
  Scalar as_scalar() const {
    require(is_constant(), Err::DomainMismatch, "central coefficient is not constant");
    return is_zero() ? Scalar::zero() : num[0];
  }

  void normalize() {
    detail::ttrim(num);
    if (num.empty()) {
      tp = up = 0;
      return;
    }
    while (tp > 0 && num.front().is_zero()) {
      num.erase(num.begin());
      --tp;
    }
    while (up > 0 && detail::teval1(num).is_zero()) {
      num = detail::tdiv_one_minus_t(num);
      --up;
    }
  }

  friend CentralFn operator+(const CentralFn& a, const CentralFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const long tp = std::max(a.tp, b.tp);
    const long up = std::max(a.up, b.up);
    auto lift = [&](const CentralFn& c) {
      detail::TPoly p = c.num;
      p.insert(p.begin(), static_cast<size_t>(tp - c.tp), Scalar::zero());
      for (long j = 0; j < up - c.up; ++j)
        p = detail::tmul(p, {Scalar::one(), -Scalar::one()});
      return p;
    };
    CentralFn r;
    r.num = detail::tadd(lift(a), lift(b));
    r.tp = tp;
    r.up = up;
    r.normalize();
    return r;
  }
  friend CentralFn operator-(const CentralFn& a) {
    CentralFn r(a);
    for (auto& c : r.num) c = -c;
    return r;
  }
  friend CentralFn operator-(const CentralFn& a, const CentralFn& b) { return a + (-b); }
  friend CentralFn operator*(const CentralFn& a, const CentralFn& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    CentralFn r;
    r.num = detail::tmul(a.num, b.num);
    r.tp = a.tp + b.tp;
    r.up = a.up + b.up;
    r.normalize();
    return r;
  }
  friend CentralFn operator*(const CentralFn& a, const Scalar& s) {
    return a * CentralFn::from_scalar(s);
  }
  friend CentralFn operator*(const Scalar& s, const CentralFn& a) {
    return a * CentralFn::from_scalar(s);
  }

  // Multiply by t^k (k of either sign), staying canonical.
  CentralFn t_times(long k) const {
    if (is_zero()) return zero();
    CentralFn r(*this);
    if (k >= 0) {
      const long cancel = std::min(k, r.tp);
      r.tp -= cancel;
      k -= cancel;
      r.num.insert(r.num.begin(), static_cast<size_t>(k), Scalar::zero());
    } else {
      r.tp += -k;
      r.normalize();
    }
    return r;
  }

  // Multiply by (1-t)^k (k of either sign).
  CentralFn one_minus_t_times(long k) const {
    if (is_zero()) return zero();
    CentralFn r(*this);
    if (k >= 0) {
      const long cancel = std::min(k, r.up);
      r.up -= cancel;
      for (long j = 0; j < k - cancel; ++j)
        r.num = detail::tmul(r.num, {Scalar::one(), -Scalar::one()});
    } else {
      r.up += -k;
      r.normalize();
    }
    return r;
  }

  CentralFn conj() const {
    CentralFn r(*this);
    for (auto& c : r.num) c = c.conj();
    r.normalize();
    return r;
  }

  bool is_hermitian() const { return conj() == *this; }

  // Exact inverse; defined when the numerator is c * t^a * (1-t)^b.
  CentralFn inverse() const {
    require(!is_zero(), Err::UnsupportedInversion, "inverse of zero coefficient");
    detail::TPoly p = num;
    long a = 0, b = 0;
    while (p.size() > 1 && p.front().is_zero()) {
      p.erase(p.begin());
      ++a;
    }
    while (p.size() > 1 && detail::teval1(p).is_zero()) {
      p = detail::tdiv_one_minus_t(p);
      ++b;
    }
    require(p.size() == 1, Err::UnsupportedInversion,
            "coefficient is not a monomial in t and (1 - t)");
    CentralFn r = from_scalar(p[0].inverse());
    r = r.t_times(tp - a);
    r = r.one_minus_t_times(up - b);
    return r;
  }

  // Derivative with respect to t, as an exact rational function.
  CentralFn ddt() const {
    if (is_zero()) return zero();
    detail::TPoly dnum;
    for (size_t k = 1; k < num.size(); ++k)
      dnum.push_back(num[k] * Scalar::from_rational(Rational(static_cast<long>(k))));
    // [num' * t(1-t) - num * (tp*(1-t) - up*t)] / (t^(tp+1) * (1-t)^(up+1))
    detail::TPoly t_one_minus_t = {Scalar::zero(), Scalar::one(), -Scalar::one()};
    detail::TPoly part1 = detail::tmul(dnum, t_one_minus_t);
    // tp*(1-t) - up*t = tp - (tp+up) t
    detail::TPoly lin = {Scalar::from_rational(Rational(tp)),
                         Scalar::from_rational(Rational(-(tp + up)))};
    detail::TPoly part2 = detail::tmul(num, lin);
    CentralFn r;
    r.num = detail::tadd(part1, detail::tmul(part2, {-Scalar::one()}));
    r.tp = tp + 1;
    r.up = up + 1;
    r.normalize();
    return r;
  }

  // Evaluation t -> s for a scalar s (used when a morphism sends t to a
  // scalar multiple of the identity).
  Scalar eval_at(const Scalar& s) const {
    Scalar acc = Scalar::zero();
    Scalar p = Scalar::one();
    for (const auto& c : num) {
      acc = acc + c * p;
      p = p * s;
    }
    Scalar d = Scalar::one();
    for (long j = 0; j < tp; ++j) d = d * s;
    Scalar omt = Scalar::one() - s;
    for (long j = 0; j < up; ++j) d = d * omt;
    return acc / d;
  }

  CentralFn specialize_one() const {
    CentralFn r(*this);
    for (auto& c : r.num) c = c.specialize_one();
    r.normalize();
    return r;
  }

  friend bool operator==(const CentralFn& a, const CentralFn& b) {
    return a.tp == b.tp && a.up == b.up && a.num == b.num;
  }
};

}  // namespace ncg
