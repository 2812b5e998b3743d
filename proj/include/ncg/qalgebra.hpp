#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/scalars.hpp"

namespace ncg {

// Formal conformal-factor symbols: an invertible hermitian K, its inverse,
// its first derivatives K_a and symmetric second derivatives K_ab. Words in
// these symbols reduce only by cancelling adjacent inverse pairs.
enum class KSym : std::uint8_t {
  K, Kinv, K1, K2, K3, K11, K12, K13, K22, K23, K33
};

inline bool ksym_is_first(KSym s) { return s == KSym::K1 || s == KSym::K2 || s == KSym::K3; }
inline bool ksym_is_second(KSym s) {
  switch (s) {
    case KSym::K11: case KSym::K12: case KSym::K13:
    case KSym::K22: case KSym::K23: case KSym::K33: return true;
    default: return false;
  }
}
inline KSym ksym_first(int a) {
  switch (a) {
    case 1: return KSym::K1;
    case 2: return KSym::K2;
    case 3: return KSym::K3;
  }
  fail(Err::DomainMismatch, "derivative index out of range");
}
inline int ksym_first_index(KSym s) {
  switch (s) {
    case KSym::K1: return 1;
    case KSym::K2: return 2;
    case KSym::K3: return 3;
    default: fail(Err::DomainMismatch, "not a first-order factor symbol");
  }
}
inline KSym ksym_second(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 1 && b == 1) return KSym::K11;
  if (a == 1 && b == 2) return KSym::K12;
  if (a == 1 && b == 3) return KSym::K13;
  if (a == 2 && b == 2) return KSym::K22;
  if (a == 2 && b == 3) return KSym::K23;
  if (a == 3 && b == 3) return KSym::K33;
  fail(Err::DomainMismatch, "derivative index out of range");
}
inline const char* ksym_name(KSym s) {
  switch (s) {
    case KSym::K: return "K";
    case KSym::Kinv: return "Kinv";
    case KSym::K1: return "K_1";
    case KSym::K2: return "K_2";
    case KSym::K3: return "K_3";
    case KSym::K11: return "K_11";
    case KSym::K12: return "K_12";
    case KSym::K13: return "K_13";
    case KSym::K22: return "K_22";
    case KSym::K23: return "K_23";
    case KSym::K33: return "K_33";
  }
  return "?";
}

using Word = std::vector<KSym>;

inline Word word_reduce(Word w) {
  Word out;
  for (KSym s : w) {
    if (!out.empty() && ((out.back() == KSym::K && s == KSym::Kinv) ||
                         (out.back() == KSym::Kinv && s == KSym::K))) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

inline Word word_star(const Word& w) {
  // Every symbol is hermitian; the star reverses the order.
  return Word(w.rbegin(), w.rend());
}

// Which deformed algebra an element lives in, plus whether it is extended by
// the formal conformal-factor symbols.
struct AlgebraSpec {
  enum class Base { Torus, Sphere3, Sphere3Loc };
  Base base = Base::Torus;
  bool formal_factor = false;
  // q specialized to 1: same generators and relations except that the
  // deformation phases collapse, giving the commutative limit.
  bool q_one = false;

  static AlgebraSpec torus() { return {Base::Torus, false}; }
  static AlgebraSpec sphere3() { return {Base::Sphere3, false}; }
  static AlgebraSpec sphere3loc() { return {Base::Sphere3Loc, false}; }
  AlgebraSpec with_formal_factor() const {
    require(base != Base::Sphere3, Err::DomainMismatch,
            "formal factor extension requires the localized sphere or the torus");
    AlgebraSpec s(*this);
    s.formal_factor = true;
    return s;
  }
  AlgebraSpec at_q_one() const {
    AlgebraSpec s(*this);
    s.q_one = true;
    return s;
  }

  bool is_torus() const { return base == Base::Torus; }
  bool is_sphere() const { return base != Base::Torus; }
  bool localized() const { return base == Base::Sphere3Loc; }
  int derivation_count() const { return is_torus() ? 2 : 3; }

  // Admissible coefficients: the torus has plain scalars, the unlocalized
  // sphere polynomial functions of t, the localized sphere any t^-i (1-t)^-j
  // denominator.
  void check_coeff(const CentralFn& c) const {
    if (is_torus())
      require(c.is_constant(), Err::InvalidCoefficient,
              "torus coefficients are scalars");
    else if (base == Base::Sphere3)
      require(c.is_polynomial(), Err::InvalidCoefficient,
              "unlocalized sphere coefficients are polynomial in t");
  }

  const char* gen_a_name() const { return is_torus() ? "U" : "Z"; }
  const char* gen_b_name() const { return is_torus() ? "V" : "W"; }
  std::string name() const {
    std::string n = is_torus() ? "torus" : (localized() ? "sphere3loc" : "sphere3");
    if (formal_factor) n += "+K";
    if (q_one) n += "@q=1";
    return n;
  }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.base == b.base && a.formal_factor == b.formal_factor && a.q_one == b.q_one;
  }
};

// Canonical monomial: first-generator block, second-generator block, then a
// reduced word in the formal symbols. For the sphere a negative exponent
// means the starred generator; for the torus it is the honest inverse power.
struct Mono {
  long z = 0;
  long w = 0;
  Word word;

  bool trivial() const { return z == 0 && w == 0 && word.empty(); }
  friend bool operator<(const Mono& a, const Mono& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.w != b.w) return a.w < b.w;
    return a.word < b.word;
  }
  friend bool operator==(const Mono& a, const Mono& b) {
    return a.z == b.z && a.w == b.w && a.word == b.word;
  }
};

// A normal-form element: finitely many canonical monomials with central
// coefficients. All ring operations preserve the normal form, so equality is
// structural equality of the term maps.
struct AlgElement {
  AlgebraSpec spec;
  std::map<Mono, CentralFn> terms;

  AlgElement() = default;
  explicit AlgElement(AlgebraSpec s) : spec(s) {}

  static AlgElement zero(AlgebraSpec s) { return AlgElement(s); }
  static AlgElement unit(AlgebraSpec s) { return central(s, CentralFn::one()); }
  static AlgElement scalar(AlgebraSpec s, const Scalar& c) {
    return central(s, CentralFn::from_scalar(c));
  }
  static AlgElement central(AlgebraSpec s, const CentralFn& c) {
    return from_mono(s, Mono{}, c);
  }
  static AlgElement from_mono(AlgebraSpec s, const Mono& m, const CentralFn& c) {
    if (!m.word.empty())
      require(s.formal_factor, Err::DomainMismatch,
              "formal symbols outside a formal factor extension");
    s.check_coeff(c);
    AlgElement e(s);
    e.add_term(m, c);
    return e;
  }
  // U^k resp. Z^k (k < 0: U^-k inverse resp. (Z*)^-k).
  static AlgElement gen_a(AlgebraSpec s, long k = 1) {
    return from_mono(s, Mono{k, 0, {}}, CentralFn::one());
  }
  // V^k resp. W^k.
  static AlgElement gen_b(AlgebraSpec s, long k = 1) {
    return from_mono(s, Mono{0, k, {}}, CentralFn::one());
  }
  static AlgElement word_elem(AlgebraSpec s, const Word& w) {
    return from_mono(s, Mono{0, 0, word_reduce(w)}, CentralFn::one());
  }
  static AlgElement t_elem(AlgebraSpec s) {
    require(s.is_sphere(), Err::DomainMismatch, "t lives on the sphere");
    return central(s, CentralFn::t());
  }

  bool is_zero() const { return terms.empty(); }
  bool is_unit() const {
    return terms.size() == 1 && terms.begin()->first.trivial() &&
           terms.begin()->second.is_one();
  }

  void add_term(const Mono& m, const CentralFn& c0) {
    const CentralFn c = spec.q_one ? c0.specialize_one() : c0;
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  friend AlgElement operator+(const AlgElement& a, const AlgElement& b) {
    require(a.spec == b.spec, Err::MixedAlgebras, "sum across algebras");
    AlgElement r(a);
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend AlgElement operator-(const AlgElement& a) {
    AlgElement r(a);
    for (auto& [m, c] : r.terms) c = -c;
    return r;
  }
  friend AlgElement operator-(const AlgElement& a, const AlgElement& b) {
    return a + (-b);
  }

  friend AlgElement operator*(const AlgElement& a, const AlgElement& b) {
    require(a.spec == b.spec, Err::MixedAlgebras, "product across algebras");
    AlgElement r(a.spec);
    const bool sphere = a.spec.is_sphere();
    for (const auto& [m1, c1] : a.terms) {
      for (const auto& [m2, c2] : b.terms) {
        // Moving the second-generator block of the left factor past the
        // first-generator block of the right factor contributes q^(w1*z2).
        CentralFn c = c1 * c2 * Scalar::q_power(2 * m1.w * m2.z);
        long z = m1.z + m2.z;
        long w = m1.w + m2.w;
        if (sphere) {
          if ((m1.z > 0 && m2.z < 0) || (m1.z < 0 && m2.z > 0))
            c = c.t_times(std::min(std::labs(m1.z), std::labs(m2.z)));
          if ((m1.w > 0 && m2.w < 0) || (m1.w < 0 && m2.w > 0))
            c = c.one_minus_t_times(std::min(std::labs(m1.w), std::labs(m2.w)));
        }
        Word word = m1.word;
        word.insert(word.end(), m2.word.begin(), m2.word.end());
        r.add_term(Mono{z, w, word_reduce(word)}, c);
      }
    }
    return r;
  }

  friend AlgElement operator*(const AlgElement& a, const CentralFn& c) {
    AlgElement r(a.spec);
    for (const auto& [m, co] : a.terms) r.add_term(m, co * c);
    return r;
  }
  friend AlgElement operator*(const CentralFn& c, const AlgElement& a) { return a * c; }
  friend AlgElement operator*(const AlgElement& a, const Scalar& s) {
    return a * CentralFn::from_scalar(s);
  }
  friend AlgElement operator*(const Scalar& s, const AlgElement& a) { return a * s; }

  AlgElement star() const {
    AlgElement r(spec);
    for (const auto& [m, c] : terms) {
      r.add_term(Mono{-m.z, -m.w, word_star(m.word)},
                 c.conj() * Scalar::q_power(2 * m.z * m.w));
    }
    return r;
  }

  bool is_hermitian() const { return star() == *this; }
  bool is_central_element() const {
    for (const auto& [m, c] : terms)
      if (!m.trivial()) return false;
    return true;
  }
  std::optional<CentralFn> as_central() const {
    if (terms.empty()) return CentralFn::zero();
    if (terms.size() != 1 || !terms.begin()->first.trivial()) return std::nullopt;
    return terms.begin()->second;
  }
  std::optional<Scalar> as_scalar() const {
    auto c = as_central();
    if (!c || !c->is_constant()) return std::nullopt;
    return c->as_scalar();
  }

  // Moves the element into the q = 1 algebra; coefficients are specialized
  // on entry by add_term.
  AlgElement specialize_one() const {
    AlgElement r(spec.at_q_one());
    for (const auto& [m, c] : terms) r.add_term(m, c);
    return r;
  }

  // Exact two-sided inverse for the invertible normal forms the engine can
  // certify: a single term whose coefficient is a scalar times a monomial in
  // t, (1-t); whose generator block is either trivial or (on the torus) any
  // unitary monomial; and whose symbol word is a pure power of K or of Kinv.
  AlgElement invert() const {
    require(terms.size() == 1, Err::UnsupportedInversion,
            "only single-term elements are inverted");
    const auto& [m, c] = *terms.begin();
    if (spec.is_sphere())
      require(m.z == 0 && m.w == 0, Err::UnsupportedInversion,
              "sphere generators are not invertible");
    for (size_t j = 0; j < m.word.size(); ++j)
      require(m.word[j] == m.word[0] &&
                  (m.word[0] == KSym::K || m.word[0] == KSym::Kinv),
              Err::UnsupportedInversion, "symbol word is not a power of K");
    CentralFn cinv = c.inverse();
    if (spec.base == AlgebraSpec::Base::Sphere3)
      require(cinv.is_polynomial(), Err::UnsupportedInversion,
              "inverse leaves the unlocalized sphere");
    // On the torus (U^m V^n)^-1 = q^(mn) U^-m V^-n; sphere blocks are trivial here.
    Word w(m.word.size(), m.word.empty() || m.word[0] == KSym::K ? KSym::Kinv : KSym::K);
    return from_mono(spec, Mono{-m.z, -m.w, w},
                     cinv * Scalar::q_power(2 * m.z * m.w));
  }

  AlgElement power(long k) const {
    if (k == 0) return unit(spec);
    AlgElement base = k > 0 ? *this : invert();
    AlgElement r = unit(spec);
    for (long j = 0; j < std::labs(k); ++j) r = r * base;
    return r;
  }

  friend bool operator==(const AlgElement& a, const AlgElement& b) {
    return a.spec == b.spec && a.terms == b.terms;
  }
};

// Generator atoms: the two distinguished generators and their stars.
enum class GenAtom { A, As, B, Bs };

inline AlgElement gen_atom_elem(AlgebraSpec s, GenAtom g) {
  switch (g) {
    case GenAtom::A: return AlgElement::gen_a(s, 1);
    case GenAtom::As: return AlgElement::gen_a(s, -1);
    case GenAtom::B: return AlgElement::gen_b(s, 1);
    case GenAtom::Bs: return AlgElement::gen_b(s, -1);
  }
  fail(Err::DomainMismatch, "bad generator atom");
}

// One canonical generator block as an element: U^k / Z^k when first, else
// V^k / W^k (negative k meaning the starred sphere generator).
inline AlgElement gen_block(AlgebraSpec s, long k, bool first) {
  Mono m;
  (first ? m.z : m.w) = k;
  return AlgElement::from_mono(s, m, CentralFn::one());
}

// A hermitian derivation given either as a rational combination of the
// standard basis (which also acts on the formal symbols) or as a custom
// generator table (used to exercise the well-definedness checker).
struct Derivation {
  AlgebraSpec spec;
  bool is_combo = true;
  std::vector<Rational> combo;  // size = spec.derivation_count()
  std::optional<AlgElement> img_a, img_b, img_as, img_bs;

  static Derivation basis(AlgebraSpec s, int index) {
    std::vector<Rational> c(s.derivation_count(), Rational(0));
    require(index >= 1 && index <= s.derivation_count(), Err::DomainMismatch,
            "derivation index out of range");
    c[index - 1] = 1;
    return combo_of(s, c);
  }
  static Derivation combo_of(AlgebraSpec s, std::vector<Rational> c) {
    require(static_cast<int>(c.size()) == s.derivation_count(), Err::RankMismatch,
            "combination length does not match the derivation basis");
    Derivation d;
    d.spec = s;
    d.combo = std::move(c);
    return d;
  }
  static Derivation custom_torus(AlgebraSpec s, AlgElement dU, AlgElement dV) {
    require(s.is_torus(), Err::DomainMismatch, "custom torus table on the torus");
    Derivation d;
    d.spec = s;
    d.is_combo = false;
    d.img_a = std::move(dU);
    d.img_b = std::move(dV);
    return d;
  }
  static Derivation custom_sphere(AlgebraSpec s, AlgElement dZ, AlgElement dZs,
                                  AlgElement dW, AlgElement dWs) {
    require(s.is_sphere(), Err::DomainMismatch, "custom sphere table on the sphere");
    Derivation d;
    d.spec = s;
    d.is_combo = false;
    d.img_a = std::move(dZ);
    d.img_as = std::move(dZs);
    d.img_b = std::move(dW);
    d.img_bs = std::move(dWs);
    return d;
  }

  static Derivation sum(const Derivation& x, const Derivation& y) {
    require(x.is_combo && y.is_combo && x.spec == y.spec, Err::DomainMismatch,
            "only basis combinations are added");
    std::vector<Rational> c = x.combo;
    for (size_t j = 0; j < c.size(); ++j) c[j] += y.combo[j];
    return combo_of(x.spec, c);
  }
  Derivation scaled(const Rational& r) const {
    require(is_combo, Err::DomainMismatch, "only basis combinations are scaled");
    std::vector<Rational> c = combo;
    for (auto& x : c) x *= r;
    return combo_of(spec, c);
  }
  bool is_zero_combo() const {
    if (!is_combo) return false;
    for (const auto& c : combo)
      if (c != 0) return false;
    return true;
  }

  AlgElement action_on_gen(GenAtom g) const {
    if (!is_combo) {
      switch (g) {
        case GenAtom::A: return *img_a;
        case GenAtom::B: return *img_b;
        case GenAtom::As:
          if (img_as) return *img_as;
          // forced by d(U U^-1) = 0
          return -(AlgElement::gen_a(spec, -1) * (*img_a) * AlgElement::gen_a(spec, -1));
        case GenAtom::Bs:
          if (img_bs) return *img_bs;
          return -(AlgElement::gen_b(spec, -1) * (*img_b) * AlgElement::gen_b(spec, -1));
      }
    }
    const Scalar i = Scalar::imag_unit();
    AlgElement r = AlgElement::zero(spec);
    if (spec.is_torus()) {
      switch (g) {
        case GenAtom::A: r = AlgElement::gen_a(spec, 1) * (i * Scalar::from_rational(combo[0])); break;
        case GenAtom::As: r = AlgElement::gen_a(spec, -1) * (-(i * Scalar::from_rational(combo[0]))); break;
        case GenAtom::B: r = AlgElement::gen_b(spec, 1) * (i * Scalar::from_rational(combo[1])); break;
        case GenAtom::Bs: r = AlgElement::gen_b(spec, -1) * (-(i * Scalar::from_rational(combo[1]))); break;
      }
      return r;
    }
    const CentralFn omt = CentralFn::one_minus_t();
    const CentralFn tt = CentralFn::t();
    switch (g) {
      case GenAtom::A:
        r = AlgElement::gen_a(spec, 1) * (CentralFn::from_scalar(i * Scalar::from_rational(combo[0])) +
                                          omt * Scalar::from_rational(combo[2]));
        break;
      case GenAtom::As:
        r = AlgElement::gen_a(spec, -1) * (CentralFn::from_scalar(-(i * Scalar::from_rational(combo[0]))) +
                                           omt * Scalar::from_rational(combo[2]));
        break;
      case GenAtom::B:
        r = AlgElement::gen_b(spec, 1) * (CentralFn::from_scalar(i * Scalar::from_rational(combo[1])) -
                                          tt * Scalar::from_rational(combo[2]));
        break;
      case GenAtom::Bs:
        r = AlgElement::gen_b(spec, -1) * (CentralFn::from_scalar(-(i * Scalar::from_rational(combo[1]))) -
                                           tt * Scalar::from_rational(combo[2]));
        break;
    }
    return r;
  }

  // d(t) as a central coefficient; t = Z Z* gives 2 t (1-t) for the third
  // basis derivation and 0 for the others.
  CentralFn action_on_t() const {
    if (spec.is_torus()) return CentralFn::zero();
    if (is_combo) {
      CentralFn g = CentralFn::t() * CentralFn::one_minus_t() *
                    Scalar::from_rational(Rational(2) * combo[2]);
      return g;
    }
    AlgElement dt = (*img_a) * AlgElement::gen_a(spec, -1) +
                    AlgElement::gen_a(spec, 1) * (*img_as);
    auto c = dt.as_central();
    require(c.has_value(), Err::NotCompatible,
            "custom derivation does not map t into the center");
    return *c;
  }

  AlgElement action_on_ksym(KSym s) const {
    require(spec.formal_factor, Err::DomainMismatch,
            "formal symbols outside a formal factor extension");
    require(is_combo, Err::DomainMismatch,
            "custom derivations do not act on formal symbols");
    AlgElement r = AlgElement::zero(spec);
    if (s == KSym::K) {
      for (int a = 1; a <= spec.derivation_count(); ++a)
        r = r + AlgElement::word_elem(spec, {ksym_first(a)}) *
                    Scalar::from_rational(combo[a - 1]);
      return r;
    }
    if (s == KSym::Kinv) {
      AlgElement kinv = AlgElement::word_elem(spec, {KSym::Kinv});
      return -(kinv * action_on_ksym(KSym::K) * kinv);
    }
    if (ksym_is_first(s)) {
      const int b = ksym_first_index(s);
      for (int a = 1; a <= spec.derivation_count(); ++a)
        r = r + AlgElement::word_elem(spec, {ksym_second(a, b)}) *
                    Scalar::from_rational(combo[a - 1]);
      return r;
    }
    fail(Err::DerivationOrderExceeded,
         "third derivative of the formal factor requested");
  }

  // Leibniz derivative of a power of one generator atom.
  AlgElement d_power(GenAtom g, long k) const {
    AlgElement out = AlgElement::zero(spec);
    if (k == 0) return out;
    AlgElement base = gen_atom_elem(spec, g);
    AlgElement dg = action_on_gen(g);
    for (long j = 0; j < k; ++j) {
      AlgElement piece = AlgElement::unit(spec);
      for (long l = 0; l < j; ++l) piece = piece * base;
      piece = piece * dg;
      for (long l = j + 1; l < k; ++l) piece = piece * base;
      out = out + piece;
    }
    return out;
  }

  AlgElement d_word(const Word& w) const {
    AlgElement out = AlgElement::zero(spec);
    for (size_t j = 0; j < w.size(); ++j) {
      AlgElement piece = AlgElement::word_elem(spec, Word(w.begin(), w.begin() + j));
      piece = piece * action_on_ksym(w[j]);
      piece = piece * AlgElement::word_elem(spec, Word(w.begin() + j + 1, w.end()));
      out = out + piece;
    }
    return out;
  }

  AlgElement apply(const AlgElement& x) const {
    require(x.spec == spec, Err::MixedAlgebras, "derivation applied across algebras");
    AlgElement out = AlgElement::zero(spec);
    const CentralFn dt = action_on_t();
    for (const auto& [m, c] : x.terms) {
      if (!dt.is_zero()) {
        CentralFn dc = c.ddt() * dt;
        if (!dc.is_zero()) out.add_term(m, dc);
      }
      const AlgElement zblk = gen_block(spec, m.z, true);
      const AlgElement wblk = gen_block(spec, m.w, false);
      const AlgElement wrd = AlgElement::word_elem(spec, m.word);
      AlgElement dada = d_power(m.z >= 0 ? GenAtom::A : GenAtom::As, std::labs(m.z));
      AlgElement dbdb = d_power(m.w >= 0 ? GenAtom::B : GenAtom::Bs, std::labs(m.w));
      AlgElement part = dada * wblk * wrd + zblk * dbdb * wrd;
      if (!m.word.empty()) part = part + zblk * wblk * d_word(m.word);
      out = out + part * c;
    }
    return out;
  }
};

struct CheckItem {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;
  bool pass() const {
    for (const auto& it : items)
      if (!it.ok) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string detail = "") {
    items.push_back({std::move(name), ok, std::move(detail)});
  }
  void merge(const Report& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
};

// ---------------------------------------------------------------------------
// Defining relations, kept as raw words so that extensions of maps by the
// Leibniz rule or multiplicativity can be checked against them as written.

struct RelAtom {
  bool is_k = false;
  GenAtom g = GenAtom::A;
  KSym k = KSym::K;
  static RelAtom gen(GenAtom a) { return {false, a, KSym::K}; }
  static RelAtom sym(KSym s) { return {true, GenAtom::A, s}; }
};

struct RelSide {
  Scalar coeff;
  std::vector<RelAtom> atoms;
};

struct Relation {
  std::string name;
  std::vector<RelSide> lhs;
  std::vector<RelSide> rhs;
};

inline std::vector<Relation> defining_relations(AlgebraSpec s) {
  using A = RelAtom;
  const Scalar one = Scalar::one();
  const Scalar q = Scalar::q_power(2);
  const Scalar qi = Scalar::q_power(-2);
  std::vector<Relation> rels;
  auto side = [](Scalar c, std::vector<RelAtom> at) {
    return std::vector<RelSide>{{std::move(c), std::move(at)}};
  };
  if (s.is_torus()) {
    rels.push_back({"V U = q U V", side(one, {A::gen(GenAtom::B), A::gen(GenAtom::A)}),
                    side(q, {A::gen(GenAtom::A), A::gen(GenAtom::B)})});
    rels.push_back({"U U* = 1", side(one, {A::gen(GenAtom::A), A::gen(GenAtom::As)}), side(one, {})});
    rels.push_back({"U* U = 1", side(one, {A::gen(GenAtom::As), A::gen(GenAtom::A)}), side(one, {})});
    rels.push_back({"V V* = 1", side(one, {A::gen(GenAtom::B), A::gen(GenAtom::Bs)}), side(one, {})});
    rels.push_back({"V* V = 1", side(one, {A::gen(GenAtom::Bs), A::gen(GenAtom::B)}), side(one, {})});
  } else {
    rels.push_back({"W Z = q Z W", side(one, {A::gen(GenAtom::B), A::gen(GenAtom::A)}),
                    side(q, {A::gen(GenAtom::A), A::gen(GenAtom::B)})});
    rels.push_back({"W* Z = q^-1 Z W*", side(one, {A::gen(GenAtom::Bs), A::gen(GenAtom::A)}),
                    side(qi, {A::gen(GenAtom::A), A::gen(GenAtom::Bs)})});
    rels.push_back({"W Z* = q^-1 Z* W", side(one, {A::gen(GenAtom::B), A::gen(GenAtom::As)}),
                    side(qi, {A::gen(GenAtom::As), A::gen(GenAtom::B)})});
    rels.push_back({"W* Z* = q Z* W*", side(one, {A::gen(GenAtom::Bs), A::gen(GenAtom::As)}),
                    side(q, {A::gen(GenAtom::As), A::gen(GenAtom::Bs)})});
    rels.push_back({"Z* Z = Z Z*", side(one, {A::gen(GenAtom::As), A::gen(GenAtom::A)}),
                    side(one, {A::gen(GenAtom::A), A::gen(GenAtom::As)})});
    rels.push_back({"W* W = W W*", side(one, {A::gen(GenAtom::Bs), A::gen(GenAtom::B)}),
                    side(one, {A::gen(GenAtom::B), A::gen(GenAtom::Bs)})});
    Relation unit{"W W* = 1 - Z Z*",
                  side(one, {A::gen(GenAtom::B), A::gen(GenAtom::Bs)}),
                  side(one, {})};
    unit.rhs.push_back({-one, {A::gen(GenAtom::A), A::gen(GenAtom::As)}});
    rels.push_back(std::move(unit));
  }
  if (s.formal_factor) {
    rels.push_back({"K Kinv = 1", side(one, {A::sym(KSym::K), A::sym(KSym::Kinv)}), side(one, {})});
    rels.push_back({"Kinv K = 1", side(one, {A::sym(KSym::Kinv), A::sym(KSym::K)}), side(one, {})});
  }
  return rels;
}

// Evaluates a relation side with atoms replaced by atom_val(atom).
template <class F>
inline AlgElement rel_side_eval(AlgebraSpec out, const std::vector<RelSide>& side, F&& atom_val) {
  AlgElement sum = AlgElement::zero(out);
  for (const auto& s : side) {
    AlgElement prod = AlgElement::scalar(out, s.coeff);
    for (const auto& a : s.atoms) prod = prod * atom_val(a);
    sum = sum + prod;
  }
  return sum;
}

// Leibniz extension of a linear map given on atoms, applied to a side as
// written (differentiating factor by factor before any rewriting).
template <class FVal, class FDer>
inline AlgElement rel_side_leibniz(AlgebraSpec out, const std::vector<RelSide>& side,
                                   FVal&& atom_val, FDer&& atom_der) {
  AlgElement sum = AlgElement::zero(out);
  for (const auto& s : side) {
    for (size_t j = 0; j < s.atoms.size(); ++j) {
      AlgElement prod = AlgElement::scalar(out, s.coeff);
      for (size_t l = 0; l < s.atoms.size(); ++l)
        prod = prod * (l == j ? atom_der(s.atoms[l]) : atom_val(s.atoms[l]));
      sum = sum + prod;
    }
  }
  return sum;
}

// Checks that the generator table extends to a well-defined hermitian
// derivation: the Leibniz derivative of every defining relation vanishes and
// the table commutes with the star on generators.
inline Report check_derivation(const Derivation& d) {
  Report rep;
  const AlgebraSpec s = d.spec;
  auto val = [&](const RelAtom& a) {
    return a.is_k ? AlgElement::word_elem(s, {a.k}) : gen_atom_elem(s, a.g);
  };
  auto der = [&](const RelAtom& a) {
    return a.is_k ? d.action_on_ksym(a.k) : d.action_on_gen(a.g);
  };
  for (const auto& rel : defining_relations(s)) {
    AlgElement residual = rel_side_leibniz(s, rel.lhs, val, der) -
                          rel_side_leibniz(s, rel.rhs, val, der);
    rep.add("Leibniz derivative of " + rel.name + " vanishes", residual.is_zero(),
            residual.is_zero() ? "" : "nonzero residual");
  }
  auto hermitian_on = [&](GenAtom g, GenAtom gs, const char* name) {
    const bool ok = d.action_on_gen(gs) == d.action_on_gen(g).star();
    rep.add(std::string("hermitian on ") + name, ok,
            ok ? "" : "d(g*) differs from d(g)*");
  };
  hermitian_on(GenAtom::A, GenAtom::As, s.gen_a_name());
  hermitian_on(GenAtom::B, GenAtom::Bs, s.gen_b_name());
  return rep;
}

}  // namespace ncg
