#pragma once

#include <string>
#include <vector>

#include "ncg/qalgebra.hpp"

namespace ncg {

namespace detail {

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Renders c*i with c rational; assumes c != 0.
inline std::string imag_str(const Rational& c) {
  if (c == 1) return "i";
  if (c == -1) return "-i";
  return rat_str(c) + "*i";
}

}  // namespace detail

// Gaussian rational as a factor: parenthesized when it is a two-part sum.
inline std::string render_gauss(const GaussRat& g, bool as_factor = false) {
  if (g.is_zero()) return "0";
  if (g.im == 0) return detail::rat_str(g.re);
  if (g.re == 0) {
    std::string s = detail::imag_str(g.im);
    return s;
  }
  std::string s = detail::rat_str(g.re);
  if (g.im > 0)
    s += " + " + detail::imag_str(g.im);
  else
    s += " - " + detail::imag_str(-g.im);
  return as_factor ? "(" + s + ")" : s;
}

// q^(p/2) for p half-units; empty string when p = 0.
inline std::string render_q_power(long p) {
  if (p == 0) return "";
  if (p == 2) return "q";
  if (p % 2 == 0) {
    const long e = p / 2;
    return e > 0 ? "q^" + std::to_string(e) : "q^(" + std::to_string(e) + ")";
  }
  return "q^(" + std::to_string(p) + "/2)";
}

namespace detail {

// One Laurent monomial c * q^(p/2); c nonzero.
inline std::string scalar_term(const GaussRat& c, long p) {
  const std::string qs = render_q_power(p);
  if (qs.empty()) return render_gauss(c, false);
  if (c == GaussRat(Rational(1))) return qs;
  if (c == GaussRat(Rational(-1))) return "-" + qs;
  return render_gauss(c, true) + "*" + qs;
}

inline std::string join_sum(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) {
    if (!parts[k].empty() && parts[k][0] == '-')
      out += " - " + parts[k].substr(1);
    else
      out += " + " + parts[k];
  }
  return out;
}

inline std::string render_laurent(const Poly& p, long pow) {
  std::vector<std::string> parts;
  for (size_t k = 0; k < p.size(); ++k)
    if (!p[k].is_zero()) parts.push_back(scalar_term(p[k], pow + static_cast<long>(k)));
  return join_sum(parts);
}

}  // namespace detail

struct Rendered {
  std::string s;
  bool atom = true;  // safe to use as a factor without parentheses
};

inline Rendered render_scalar_parts(const Scalar& x) {
  if (x.is_zero()) return {"0", true};
  if (x.den.size() == 1) {
    std::string s = detail::render_laurent(x.num, x.pow);
    size_t nonzero = 0;
    for (const auto& c : x.num)
      if (!c.is_zero()) ++nonzero;
    bool atom = nonzero == 1;
    if (atom) {
      // single monomial: atomic unless the Gaussian part is a sum
      const GaussRat* c = nullptr;
      for (const auto& g : x.num)
        if (!g.is_zero()) c = &g;
      if (c && c->re != 0 && c->im != 0 && render_q_power(x.pow) == "" && x.num.size() == 1)
        s = render_gauss(*c, true);
    }
    return {s, atom};
  }
  std::string n = detail::render_laurent(x.num, x.pow);
  std::string d = detail::render_laurent(x.den, 0);
  return {"(" + n + ")/(" + d + ")", true};
}

inline std::string render_scalar(const Scalar& x) { return render_scalar_parts(x).s; }

namespace detail {

// Tries to factor a t-polynomial as c * t^a * (1-t)^b.
inline bool tpoly_factor(const TPoly& p, Scalar& c, long& a, long& b) {
  if (p.empty()) return false;
  TPoly q = p;
  a = b = 0;
  while (q.size() > 1 && q.front().is_zero()) {
    q.erase(q.begin());
    ++a;
  }
  while (q.size() > 1 && teval1(q).is_zero()) {
    q = tdiv_one_minus_t(q);
    ++b;
  }
  if (q.size() != 1) return false;
  c = q[0];
  return true;
}

inline std::string power_factor(const std::string& base, long k, bool paren_base) {
  const std::string b = paren_base ? "(" + base + ")" : base;
  if (k == 1) return b;
  return k > 0 ? b + "^" + std::to_string(k) : b + "^(" + std::to_string(k) + ")";
}

}  // namespace detail

// A central coefficient as a list of product factors (empty means 1); the
// leading sign is folded into the first factor.
inline std::vector<std::string> render_central_factors(const CentralFn& c) {
  std::vector<std::string> factors;
  if (c.is_zero()) return {"0"};
  Scalar lead;
  long a = 0, b = 0;
  if (detail::tpoly_factor(c.num, lead, a, b)) {
    const long ta = a - c.tp, tb = b - c.up;
    bool neg = false;
    if ((ta != 0 || tb != 0) && (-lead).is_one()) {
      neg = true;
      lead = Scalar::one();
    }
    Rendered ls = render_scalar_parts(lead);
    if (!(lead.is_one() && (ta != 0 || tb != 0)))
      factors.push_back(ls.atom ? ls.s : "(" + ls.s + ")");
    if (ta != 0) factors.push_back(detail::power_factor("t", ta, false));
    if (tb != 0) factors.push_back(detail::power_factor("1 - t", tb, true));
    if (neg) factors.front() = "-" + factors.front();
    return factors;
  }
  // general polynomial numerator over an explicit denominator
  std::vector<std::string> parts;
  for (size_t k = 0; k < c.num.size(); ++k) {
    if (c.num[k].is_zero()) continue;
    Rendered cs = render_scalar_parts(c.num[k]);
    std::string term;
    if (k == 0)
      term = cs.s;
    else {
      std::string tp = detail::power_factor("t", static_cast<long>(k), false);
      if (c.num[k].is_one())
        term = tp;
      else if ((-c.num[k]).is_one())
        term = "-" + tp;
      else
        term = (cs.atom ? cs.s : "(" + cs.s + ")") + "*" + tp;
    }
    parts.push_back(term);
  }
  factors.push_back("(" + detail::join_sum(parts) + ")");
  if (c.tp != 0) factors.push_back(detail::power_factor("t", -c.tp, false));
  if (c.up != 0) factors.push_back(detail::power_factor("1 - t", -c.up, true));
  return factors;
}

inline std::string render_central(const CentralFn& c) {
  auto f = render_central_factors(c);
  std::string out = f[0];
  for (size_t k = 1; k < f.size(); ++k) out += "*" + f[k];
  return out;
}

// Canonical text form of an element in the grammar the parser accepts.
inline std::string render_element(const AlgElement& x) {
  if (x.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : x.terms) {
    std::vector<std::string> factors;
    const bool lone = m.trivial();
    bool neg = false;
    CentralFn cc = c;
    if (!lone && cc.is_constant() && (-cc.as_scalar()).is_one()) {
      neg = true;
    } else if (!(cc.is_one() && !lone)) {
      for (auto& f : render_central_factors(cc)) factors.push_back(std::move(f));
    }
    const char* an = x.spec.gen_a_name();
    const char* bn = x.spec.gen_b_name();
    if (m.z != 0) {
      if (x.spec.is_sphere() && m.z < 0)
        factors.push_back(detail::power_factor(std::string(an) + "*", -m.z, false));
      else
        factors.push_back(detail::power_factor(an, m.z, false));
    }
    if (m.w != 0) {
      if (x.spec.is_sphere() && m.w < 0)
        factors.push_back(detail::power_factor(std::string(bn) + "*", -m.w, false));
      else
        factors.push_back(detail::power_factor(bn, m.w, false));
    }
    for (KSym s : m.word) factors.push_back(ksym_name(s));
    std::string t;
    for (size_t k = 0; k < factors.size(); ++k) {
      if (k) t += "*";
      t += factors[k];
    }
    terms.push_back(neg ? "-" + t : t);
  }
  return detail::join_sum(terms);
}

// ---------------------------------------------------------------------------
// LaTeX rendering. Presentational only; the text form above is the canonical
// round-trip format. On the sphere t and 1-t display as |Z|^2 and |W|^2, and
// the combination (1/2) K^-1 K_a displays as H_a.

namespace detail {

inline std::string latex_rat(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  std::string num = r.get_num().get_str();
  bool neg = false;
  if (!num.empty() && num[0] == '-') {
    neg = true;
    num = num.substr(1);
  }
  return std::string(neg ? "-" : "") + "\\tfrac{" + num + "}{" + r.get_den().get_str() + "}";
}

inline std::string latex_gauss(const GaussRat& g, bool as_factor) {
  if (g.is_zero()) return "0";
  if (g.im == 0) return latex_rat(g.re);
  std::string im;
  if (g.im == 1)
    im = "i";
  else if (g.im == -1)
    im = "-i";
  else
    im = latex_rat(g.im) + "i";
  if (g.re == 0) return im;
  std::string s = latex_rat(g.re) + (g.im > 0 ? " + " : " - ") +
                  (g.im > 0 ? (g.im == 1 ? "i" : latex_rat(g.im) + "i")
                            : ((-g.im) == 1 ? "i" : latex_rat(-g.im) + "i"));
  return as_factor ? "\\left(" + s + "\\right)" : s;
}

inline std::string latex_pow(const std::string& base, long k) {
  if (k == 1) return base;
  return base + "^{" + std::to_string(k) + "}";
}

}  // namespace detail

inline std::string render_scalar_latex(const Scalar& x) {
  if (x.is_zero()) return "0";
  auto lone = [&](const GaussRat& c, long p) {
    std::string qs;
    if (p != 0) qs = (p % 2 == 0) ? detail::latex_pow("q", p / 2)
                                  : "q^{" + std::to_string(p) + "/2}";
    if (qs.empty()) return detail::latex_gauss(c, false);
    if (c == GaussRat(Rational(1))) return qs;
    if (c == GaussRat(Rational(-1))) return "-" + qs;
    return detail::latex_gauss(c, true) + qs;
  };
  if (x.den.size() == 1) {
    std::vector<std::string> parts;
    for (size_t k = 0; k < x.num.size(); ++k)
      if (!x.num[k].is_zero()) parts.push_back(lone(x.num[k], x.pow + static_cast<long>(k)));
    return detail::join_sum(parts);
  }
  std::string n, d;
  {
    std::vector<std::string> parts;
    for (size_t k = 0; k < x.num.size(); ++k)
      if (!x.num[k].is_zero()) parts.push_back(lone(x.num[k], x.pow + static_cast<long>(k)));
    n = detail::join_sum(parts);
    parts.clear();
    for (size_t k = 0; k < x.den.size(); ++k)
      if (!x.den[k].is_zero()) parts.push_back(lone(x.den[k], static_cast<long>(k)));
    d = detail::join_sum(parts);
  }
  return "\\frac{" + n + "}{" + d + "}";
}

inline std::string render_central_latex(const CentralFn& c, bool sphere_alias) {
  if (c.is_zero()) return "0";
  auto tpow = [&](long k) {
    return sphere_alias ? "|Z|^{" + std::to_string(2 * k) + "}"
                        : detail::latex_pow("t", k);
  };
  auto upow = [&](long k) {
    return sphere_alias ? "|W|^{" + std::to_string(2 * k) + "}"
                        : (k == 1 ? std::string("(1-t)") : "(1-t)^{" + std::to_string(k) + "}");
  };
  Scalar lead;
  long a = 0, b = 0;
  std::string out;
  if (detail::tpoly_factor(c.num, lead, a, b)) {
    const long ta = a - c.tp, tb = b - c.up;
    if (!(lead.is_one() && (ta != 0 || tb != 0)))
      out += (-lead).is_one() && (ta != 0 || tb != 0) ? "-" : render_scalar_latex(lead);
    if (ta != 0) out += tpow(ta);
    if (tb != 0) out += upow(tb);
    return out;
  }
  std::vector<std::string> parts;
  for (size_t k = 0; k < c.num.size(); ++k) {
    if (c.num[k].is_zero()) continue;
    std::string term;
    std::string tp = k == 0 ? "" : tpow(static_cast<long>(k));
    if (k == 0)
      term = render_scalar_latex(c.num[k]);
    else if (c.num[k].is_one())
      term = tp;
    else if ((-c.num[k]).is_one())
      term = "-" + tp;
    else
      term = render_scalar_latex(c.num[k]) + tp;
    parts.push_back(term);
  }
  out = "\\left(" + detail::join_sum(parts) + "\\right)";
  if (c.tp != 0) out += tpow(-c.tp);
  if (c.up != 0) out += upow(-c.up);
  return out;
}

inline std::string render_element_latex(const AlgElement& x) {
  if (x.is_zero()) return "0";
  const bool sphere = x.spec.is_sphere();
  const bool tilde = x.spec.is_torus();  // mapped factor symbols display with a tilde
  auto sym_latex = [&](KSym s) -> std::string {
    std::string base = tilde ? "\\tilde{K}" : "K";
    switch (s) {
      case KSym::K: return base;
      case KSym::Kinv: return base + "^{-1}";
      default: break;
    }
    if (ksym_is_first(s)) return base + "_" + std::to_string(ksym_first_index(s));
    std::string n = ksym_name(s);  // "K_ab"
    return base + "_{" + n.substr(2) + "}";
  };
  std::vector<std::string> terms;
  for (const auto& [m, c] : x.terms) {
    std::string t;
    CentralFn cc = c;
    // (1/2) K^-1 K_a displays as H_a
    bool done_word = false;
    std::string word_part;
    if (m.word.size() == 2 && m.word[0] == KSym::Kinv && ksym_is_first(m.word[1])) {
      cc = cc * Scalar::from_rational(2);
      word_part = (tilde ? "\\tilde{H}_" : "H_") + std::to_string(ksym_first_index(m.word[1]));
      done_word = true;
    }
    const bool lone = m.z == 0 && m.w == 0 && (m.word.empty() || done_word);
    bool neg = false;
    if (cc.is_constant() && (-cc.as_scalar()).is_one() && !(lone && word_part.empty())) {
      neg = true;
    } else if (!(cc.is_one() && !(lone && word_part.empty()))) {
      std::string cs = render_central_latex(cc, sphere);
      if (cs.compare(0, 6, "\\left(") != 0 &&
          (cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos))
        cs = "\\left(" + cs + "\\right)";
      t += cs;
    }
    auto blk = [&](long k, const char* name) -> std::string {
      if (k == 0) return "";
      if (k > 0) return detail::latex_pow(name, k);
      if (sphere)
        return (-k) == 1 ? std::string(name) + "^*"
                         : std::string(name) + "^{*" + std::to_string(-k) + "}";
      return std::string(name) + "^{" + std::to_string(k) + "}";
    };
    std::string za = blk(m.z, x.spec.gen_a_name());
    std::string wb = blk(m.w, x.spec.gen_b_name());
    t += za + wb;
    if (done_word)
      t += word_part;
    else
      for (KSym s : m.word) t += sym_latex(s);
    if (t.empty()) t = "1";
    terms.push_back(neg ? "-" + t : t);
  }
  return detail::join_sum(terms);
}

}  // namespace ncg
