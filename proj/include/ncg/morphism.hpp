#pragma once

#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ncg/connection.hpp"

namespace ncg {

inline std::optional<Rational> scalar_as_rational(const Scalar& s) {
  if (s.is_zero()) return Rational(0);
  if (s.pow != 0 || s.num.size() != 1 || s.den.size() != 1) return std::nullopt;
  if (s.num[0].im != 0) return std::nullopt;
  return s.num[0].re / s.den[0].re;
}

inline std::optional<Rational> elem_as_rational(const AlgElement& x) {
  auto s = x.as_scalar();
  if (!s) return std::nullopt;
  return scalar_as_rational(*s);
}

// ---------------------------------------------------------------------------
// Unital *-algebra morphisms given by generator images. The image of the
// central element t is derived from the images (t = Z Z*), never declared,
// and coefficients are transported by evaluating them at that image.

struct AlgebraMorphism {
  AlgebraSpec dom = AlgebraSpec::torus();
  AlgebraSpec cod = AlgebraSpec::torus();
  AlgElement img_a = AlgElement::unit(AlgebraSpec::torus());
  AlgElement img_b = AlgElement::unit(AlgebraSpec::torus());
  std::shared_ptr<AlgebraMorphism> inv;  // registered inverse, optional

  static AlgebraMorphism on_generators(AlgebraSpec dom, AlgebraSpec cod, AlgElement a,
                                       AlgElement b) {
    require(a.spec == cod && b.spec == cod, Err::DomainMismatch,
            "generator images must live in the codomain");
    require(!dom.formal_factor || cod.formal_factor, Err::DomainMismatch,
            "formal factor symbols need a formal-factor codomain");
    AlgebraMorphism m;
    m.dom = dom;
    m.cod = cod;
    m.img_a = std::move(a);
    m.img_b = std::move(b);
    return m;
  }

  static AlgebraMorphism identity(AlgebraSpec s) {
    return on_generators(s, s, AlgElement::gen_a(s, 1), AlgElement::gen_b(s, 1));
  }

  // Inclusion into an extension of the same algebra (localization, formal
  // conformal factor): generators map to themselves.
  static AlgebraMorphism extension(AlgebraSpec dom, AlgebraSpec cod) {
    return on_generators(dom, cod, AlgElement::gen_a(cod, 1), AlgElement::gen_b(cod, 1));
  }

  AlgebraMorphism with_inverse(const AlgebraMorphism& f) const {
    require(f.dom == cod && f.cod == dom, Err::DomainMismatch,
            "inverse must map the codomain back to the domain");
    AlgebraMorphism m = *this;
    m.inv = std::make_shared<AlgebraMorphism>(f);
    require(f.apply(img_a) == AlgElement::gen_a(dom, 1) &&
                f.apply(img_b) == AlgElement::gen_b(dom, 1) &&
                apply(f.img_a) == AlgElement::gen_a(cod, 1) &&
                apply(f.img_b) == AlgElement::gen_b(cod, 1),
            Err::NotInvertible, "registered inverse does not invert on generators");
    return m;
  }

  // phi(t) = phi(Z) phi(Z)*; only meaningful for a sphere domain.
  AlgElement image_t() const {
    AlgElement u = img_a * img_a.star();
    require(u.is_central_element(), Err::NotCompatible, "image of t is not central");
    return u;
  }

  AlgElement apply_central(const CentralFn& c) const {
    if (c.is_zero()) return AlgElement::zero(cod);
    if (dom.is_torus()) return AlgElement::scalar(cod, c.as_scalar());
    const AlgElement u = image_t();
    if (cod.is_sphere() && u == AlgElement::t_elem(cod)) return AlgElement::central(cod, c);
    if (auto s = u.as_scalar()) return AlgElement::scalar(cod, c.eval_at(*s));
    AlgElement acc = AlgElement::zero(cod);
    AlgElement upow = AlgElement::unit(cod);
    for (size_t k = 0; k < c.num.size(); ++k) {
      if (!c.num[k].is_zero()) acc = acc + upow * c.num[k];
      if (k + 1 < c.num.size()) upow = upow * u;
    }
    if (c.tp != 0) acc = acc * u.invert().power(c.tp);
    if (c.up != 0) acc = acc * (AlgElement::unit(cod) - u).invert().power(c.up);
    return acc;
  }

  AlgElement apply(const AlgElement& x) const {
    require(x.spec == dom, Err::DomainMismatch, "element is not in the domain");
    AlgElement out = AlgElement::zero(cod);
    const AlgElement as = img_a.star();
    const AlgElement bs = img_b.star();
    for (const auto& [m, c] : x.terms) {
      AlgElement term = apply_central(c);
      const AlgElement& fa = m.z >= 0 ? img_a : as;
      for (long k = 0; k < std::labs(m.z); ++k) term = term * fa;
      const AlgElement& fb = m.w >= 0 ? img_b : bs;
      for (long k = 0; k < std::labs(m.w); ++k) term = term * fb;
      // formal symbols transport to the same symbols of the codomain
      if (!m.word.empty()) term = term * AlgElement::word_elem(cod, m.word);
      out = out + term;
    }
    return out;
  }

  // Every defining relation of the domain must map to zero residual; the
  // star is preserved by construction (starred generators map to starred
  // images), so relations are the whole obligation.
  Report validate() const {
    Report rep;
    auto val = [&](const RelAtom& a) {
      if (a.is_k) return AlgElement::word_elem(cod, {a.k});
      switch (a.g) {
        case GenAtom::A: return img_a;
        case GenAtom::As: return img_a.star();
        case GenAtom::B: return img_b;
        default: return img_b.star();
      }
    };
    for (const auto& rel : defining_relations(dom)) {
      AlgElement residual = rel_side_eval(cod, rel.lhs, val) - rel_side_eval(cod, rel.rhs, val);
      rep.add("phi preserves " + rel.name, residual.is_zero(),
              residual.is_zero() ? "" : render_detail(residual));
    }
    if (dom.is_sphere()) {
      AlgElement u = img_a * img_a.star();
      rep.add("phi(t) is central", u.is_central_element());
    }
    return rep;
  }

  void require_valid() const {
    Report rep = validate();
    for (const auto& it : rep.items)
      require(it.ok, Err::RelationViolation, "morphism breaks relation: " + it.name);
  }

 private:
  static std::string render_detail(const AlgElement&) { return "nonzero residual"; }
};

inline AlgebraMorphism compose_morphism(const AlgebraMorphism& outer,
                                        const AlgebraMorphism& inner) {
  require(inner.cod == outer.dom, Err::DomainMismatch,
          "codomain of the inner map must be the domain of the outer map");
  AlgebraMorphism m = AlgebraMorphism::on_generators(
      inner.dom, outer.cod, outer.apply(inner.img_a), outer.apply(inner.img_b));
  if (inner.inv && outer.inv)
    m.inv = std::make_shared<AlgebraMorphism>(compose_morphism(*inner.inv, *outer.inv));
  return m;
}

// ---------------------------------------------------------------------------
// Real calculus homomorphisms: (phi, psi, psi-hat). psi maps the codomain
// Lie algebra into the domain one (opposite direction to phi), column i
// holding the coordinates of psi(delta'_i) over the domain basis. psi-hat is
// synthesized, never supplied: it sends Psi(delta'_i) = phi_dom(psi(delta'_i))
// to Psi'(delta'_i) and extends right-linearly over phi.

struct CalculusHomomorphism {
  RealCalculus dom, cod;
  AlgebraMorphism phi;
  RatMat psi;               // dom.dim() x cod.dim()
  RatMat tangent;           // anchor_dom * psi: E-coordinates of Psi(delta'_i)
  std::vector<size_t> pivots;
  RatMat pivot_inv;         // inverse of the pivot-row submatrix of tangent

  size_t tangent_rank() const { return psi.empty() ? 0 : psi[0].size(); }

  ModuleVec tangent_vec(size_t i) const {
    ModuleVec v = mv_zero(dom.alg, dom.dim());
    for (size_t a = 0; a < dom.dim(); ++a)
      v[a] = AlgElement::scalar(dom.alg, Scalar::from_rational(tangent[a][i]));
    return v;
  }

  // Coordinates of m over the tangent frame Psi(delta'_i); errors when m is
  // not in the submodule those vectors generate.
  std::vector<AlgElement> tangent_coords(const ModuleVec& m) const {
    const size_t k = tangent_rank();
    require(m.size() == dom.dim(), Err::RankMismatch, "vector has the wrong length");
    std::vector<AlgElement> c(k, AlgElement::zero(dom.alg));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        if (pivot_inv[i][j] != 0)
          c[i] = c[i] + m[pivots[j]] * Scalar::from_rational(pivot_inv[i][j]);
    for (size_t a = 0; a < dom.dim(); ++a) {
      AlgElement rec = AlgElement::zero(dom.alg);
      for (size_t i = 0; i < k; ++i)
        if (tangent[a][i] != 0) rec = rec + c[i] * Scalar::from_rational(tangent[a][i]);
      require(rec == m[a], Err::NotTangential,
              "vector is not in the submodule generated by the tangent frame");
    }
    return c;
  }

  ModuleVec psi_hat(const ModuleVec& m) const {
    const std::vector<AlgElement> c = tangent_coords(m);
    ModuleVec out = mv_zero(cod.alg, cod.dim());
    for (size_t b = 0; b < cod.dim(); ++b)
      for (size_t i = 0; i < tangent_rank(); ++i)
        if (cod.anchor[b][i] != 0)
          out[b] = out[b] + phi.apply(c[i]) * Scalar::from_rational(cod.anchor[b][i]);
    return out;
  }
};

namespace detail {

// Selects rows of t forming an invertible square submatrix; t must have full
// column rank.
inline bool pivot_rows(const RatMat& t, std::vector<size_t>& pivots, RatMat& inv) {
  const size_t cols = t.empty() ? 0 : t[0].size();
  pivots.clear();
  RatMat sub;
  for (size_t r = 0; r < t.size() && pivots.size() < cols; ++r) {
    sub.push_back(t[r]);
    if (rat_rank(sub) == sub.size())
      pivots.push_back(r);
    else
      sub.pop_back();
  }
  if (pivots.size() != cols) return false;
  inv = rat_inverse(sub);
  return true;
}

}  // namespace detail

inline CalculusHomomorphism construct_hom(RealCalculus dom, RealCalculus cod,
                                          AlgebraMorphism phi, RatMat psi) {
  require(phi.dom == dom.alg && phi.cod == cod.alg, Err::DomainMismatch,
          "morphism does not connect the two calculi");
  phi.require_valid();
  const size_t n = dom.dim(), np = cod.dim();
  require(psi.size() == n, Err::RankMismatch, "psi must have one row per domain basis element");
  for (auto& row : psi) {
    require(row.size() == np, Err::RankMismatch, "psi must have one column per codomain basis element");
    // GMP comparisons assume canonical form; normalize caller-supplied entries
    for (auto& x : row) x.canonicalize();
  }

  // psi is a Lie algebra homomorphism: [psi(d_i), psi(d_j)] = psi([d_i, d_j])
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < np; ++i)
      for (size_t j = 0; j < np; ++j) {
        Rational lhs(0), rhs(0);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b) lhs += dom.lie.f[r][a][b] * psi[a][i] * psi[b][j];
        for (size_t c = 0; c < np; ++c) rhs += psi[r][c] * cod.lie.f[c][i][j];
        require(lhs == rhs, Err::NotLieHom, "psi does not respect the brackets");
      }

  // compatibility: delta'(phi(g)) = phi(psi(delta')(g)) on every generator
  std::vector<AlgElement> probes{AlgElement::gen_a(dom.alg, 1), AlgElement::gen_b(dom.alg, 1)};
  if (dom.alg.is_sphere()) {
    probes.push_back(AlgElement::gen_a(dom.alg, -1));
    probes.push_back(AlgElement::gen_b(dom.alg, -1));
  }
  if (dom.alg.formal_factor) probes.push_back(AlgElement::word_elem(dom.alg, {KSym::K}));
  for (size_t i = 0; i < np; ++i)
    for (const AlgElement& g : probes) {
      AlgElement lhs = cod.lie.basis[i].apply(phi.apply(g));
      AlgElement rhs = AlgElement::zero(cod.alg);
      for (size_t a = 0; a < n; ++a)
        if (psi[a][i] != 0)
          rhs = rhs + phi.apply(dom.lie.basis[a].apply(g)) * Scalar::from_rational(psi[a][i]);
      require(lhs == rhs, Err::NotCompatible,
              "delta(phi(g)) != phi(psi(delta)(g)) on a generator");
    }

  CalculusHomomorphism f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.phi = std::move(phi);
  f.tangent = rat_mul(f.dom.anchor, psi);
  f.psi = std::move(psi);
  require(detail::pivot_rows(f.tangent, f.pivots, f.pivot_inv), Err::AmbiguousModuleMap,
          "tangent frame is not free: psi-hat coordinates are not unique");
  return f;
}

inline CalculusHomomorphism hom_identity(const RealCalculus& c) {
  return construct_hom(c, c, AlgebraMorphism::identity(c.alg), rat_identity(c.dim()));
}

// (g after f): domain of g must be the codomain of f.
inline CalculusHomomorphism compose(const CalculusHomomorphism& f,
                                    const CalculusHomomorphism& g) {
  require(f.cod.alg == g.dom.alg && f.cod.dim() == g.dom.dim(), Err::DomainMismatch,
          "codomain of the first map must match the domain of the second");
  return construct_hom(f.dom, g.cod, compose_morphism(g.phi, f.phi),
                       rat_mul(f.psi, g.psi));
}

// For an isomorphism phi with registered inverse, psi is determined:
// psi(delta') = phi^{-1} . delta' . phi, decomposed over the domain basis.
inline RatMat iso_psi_from_phi(const RealCalculus& dom, const RealCalculus& cod,
                               const AlgebraMorphism& phi) {
  require(phi.inv != nullptr, Err::NotInvertible, "phi has no registered inverse");
  phi.require_valid();
  const size_t n = dom.dim(), np = cod.dim();
  std::vector<AlgElement> probes{AlgElement::gen_a(dom.alg, 1), AlgElement::gen_b(dom.alg, 1)};

  // flatten sum_a x_a D_a = rhs over monomials and t-degrees into Scalar rows
  auto flatten = [&](const std::vector<AlgElement>& d, const AlgElement& rhs,
                     std::vector<std::vector<Scalar>>& rows, std::vector<Scalar>& b) {
    std::set<Mono> monos;
    for (const auto& e : d)
      for (const auto& [m, c] : e.terms) monos.insert(m);
    for (const auto& [m, c] : rhs.terms) monos.insert(m);
    for (const Mono& m : monos) {
      std::vector<CentralFn> cs;
      for (const auto& e : d) {
        auto it = e.terms.find(m);
        cs.push_back(it == e.terms.end() ? CentralFn::zero() : it->second);
      }
      auto it = rhs.terms.find(m);
      cs.push_back(it == rhs.terms.end() ? CentralFn::zero() : it->second);
      long tp = 0, up = 0;
      size_t len = 1;
      for (const auto& c : cs) {
        tp = std::max(tp, c.tp);
        up = std::max(up, c.up);
      }
      for (const auto& c : cs)
        len = std::max(len, c.num.size() + size_t(tp - c.tp) + size_t(up - c.up));
      auto expand = [&](const CentralFn& c) {
        std::vector<Scalar> p(c.num.begin(), c.num.end());
        if (p.empty()) p.push_back(Scalar::zero());
        for (long k = c.tp; k < tp; ++k) p = detail::tmul(p, {Scalar::zero(), Scalar::one()});
        for (long k = c.up; k < up; ++k)
          p = detail::tmul(p, {Scalar::one(), Scalar::from_rational(Rational(-1))});
        p.resize(len, Scalar::zero());
        return p;
      };
      std::vector<std::vector<Scalar>> cols;
      for (const auto& c : cs) cols.push_back(expand(c));
      for (size_t k = 0; k < len; ++k) {
        std::vector<Scalar> row;
        for (size_t a = 0; a + 1 < cols.size(); ++a) row.push_back(cols[a][k]);
        rows.push_back(std::move(row));
        b.push_back(cols.back()[k]);
      }
    }
  };

  RatMat psi(n, std::vector<Rational>(np, Rational(0)));
  for (size_t i = 0; i < np; ++i) {
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> b;
    for (const AlgElement& g : probes) {
      std::vector<AlgElement> d;
      for (size_t a = 0; a < n; ++a) d.push_back(dom.lie.basis[a].apply(g));
      AlgElement rhs = phi.inv->apply(cod.lie.basis[i].apply(phi.apply(g)));
      flatten(d, rhs, rows, b);
    }
    ScalarSolve sol = scalar_solve(rows, b);
    require(sol.consistent && sol.unique, Err::NotInBasisSpan,
            "phi^{-1} . delta . phi is not a combination of the basis derivations");
    for (size_t a = 0; a < n; ++a) {
      auto r = scalar_as_rational(sol.x[a]);
      require(r.has_value(), Err::NotInBasisSpan,
              "derivation coordinates are not rational");
      psi[a][i] = *r;
    }
  }
  return psi;
}

// h'(Psi'(d_i), Psi'(d_j)) := phi(h(Psi(d_i), Psi(d_j))). The result is
// expressed over the module basis of the codomain.
inline HermitianMetric induced_metric(const CalculusHomomorphism& f, const HermitianMetric& h,
                                      std::optional<ElemMat> registered_inverse = {}) {
  const size_t np = f.cod.dim();
  require(h.dim() == f.dom.dim(), Err::RankMismatch, "metric does not match the domain");
  ElemMat hf(np, std::vector<AlgElement>(np, AlgElement::zero(f.cod.alg)));
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j) {
      AlgElement g = AlgElement::zero(f.dom.alg);
      for (size_t a = 0; a < f.dom.dim(); ++a)
        for (size_t b = 0; b < f.dom.dim(); ++b)
          if (f.tangent[a][i] != 0 && f.tangent[b][j] != 0)
            g = g + h.h[a][b] * Scalar::from_rational(f.tangent[a][i] * f.tangent[b][j]);
      hf[i][j] = f.phi.apply(g);
    }
  // transport from the anchored basis to the module basis of the codomain
  if (!f.cod.identity_anchor()) {
    const RatMat ainv = rat_inverse(f.cod.anchor);
    hf = elem_mat_mul(elem_mat_from_rat(f.cod.alg, rat_transpose(ainv)),
                      elem_mat_mul(hf, elem_mat_from_rat(f.cod.alg, ainv)));
  }
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j)
      require(hf[i][j].star() == hf[j][i], Err::NotHermitian,
              "induced form is not hermitian");
  if (registered_inverse)
    return HermitianMetric::with_registered_inverse(hf, *registered_inverse);
  bool diag = true;
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j)
      if (i != j && !hf[i][j].is_zero()) diag = false;
  require(diag, Err::UnsupportedInversion,
          "non-diagonal induced metric needs a registered inverse");
  std::vector<AlgElement> d;
  for (size_t i = 0; i < np; ++i) d.push_back(hf[i][i]);
  return HermitianMetric::diagonal(d);
}

// ---------------------------------------------------------------------------
// Embeddings: a homomorphism with surjective phi and a direct-sum complement
// of the tangent submodule. In the isometric case the complement is the
// metric orthogonal and projections are computed by a Gram solve.

struct EmbeddingOptions {
  std::vector<AlgElement> preimages;          // one per codomain generator (a, b)
  std::optional<ElemMat> gram_inverse;        // when the Gram matrix is not diagonal
  std::optional<ElemMat> combined_inverse;    // general (non-isometric) splitting
  bool isometric = true;
};

struct Embedding {
  CalculusHomomorphism f;
  std::vector<ModuleVec> complement;
  HermitianMetric h;        // domain metric
  HermitianMetric hprime;   // codomain metric
  std::vector<AlgElement> preimages;  // surjectivity certificate
  bool isometric = true;
  ElemMat gram, gram_inv;           // isometric path
  ElemMat combined, combined_inv;   // general path
  bool have_combined = false;

  // Splits m = P(m) + Pi(m) with P(m) in the tangent submodule.
  std::pair<ModuleVec, ModuleVec> project(const ModuleVec& m) const {
    const size_t n = f.dom.dim(), k = f.tangent_rank();
    require(m.size() == n, Err::RankMismatch, "vector has the wrong length");
    std::vector<AlgElement> c(k, AlgElement::zero(f.dom.alg));
    if (isometric) {
      for (size_t i = 0; i < k; ++i) {
        AlgElement b = AlgElement::zero(f.dom.alg);
        for (size_t a = 0; a < n; ++a)
          for (size_t p = 0; p < n; ++p)
            if (f.tangent[a][i] != 0)
              b = b + h.h[a][p] * m[p] * Scalar::from_rational(f.tangent[a][i]);
        for (size_t j = 0; j < k; ++j) c[j] = c[j] + gram_inv[j][i] * b;
      }
      // note: accumulated as c_j = sum_i Ginv_ji h(Psi_i, m)
    } else {
      for (size_t i = 0; i < k; ++i) {
        AlgElement acc = AlgElement::zero(f.dom.alg);
        for (size_t a = 0; a < n; ++a) acc = acc + combined_inv[i][a] * m[a];
        c[i] = acc;
      }
    }
    ModuleVec p = mv_zero(f.dom.alg, n);
    for (size_t a = 0; a < n; ++a)
      for (size_t i = 0; i < k; ++i)
        if (f.tangent[a][i] != 0)
          p[a] = p[a] + c[i] * Scalar::from_rational(f.tangent[a][i]);
    return {p, mv_sub(m, p)};
  }

  ModuleVec tangential(const ModuleVec& m) const { return project(m).first; }
  ModuleVec normal(const ModuleVec& m) const { return project(m).second; }

  bool is_extension(const ModuleVec& m, const ModuleVec& mprime) const {
    require(mv_is_zero(normal(m)), Err::NotTangential,
            "extensions must lie in the tangent submodule");
    return mv_eq(f.psi_hat(m), mprime);
  }
};

inline Embedding make_embedding(CalculusHomomorphism f, std::vector<ModuleVec> complement,
                                HermitianMetric h, HermitianMetric hprime,
                                EmbeddingOptions opts = {}) {
  const size_t n = f.dom.dim(), k = f.tangent_rank();
  require(h.dim() == n && hprime.dim() == f.cod.dim(), Err::RankMismatch,
          "metric dimensions do not match the homomorphism");

  // surjectivity certificate: a preimage for each codomain generator
  std::vector<AlgElement> pre = opts.preimages;
  if (pre.empty() && f.phi.inv) {
    pre.push_back(f.phi.inv->img_a);
    pre.push_back(f.phi.inv->img_b);
  }
  require(pre.size() == 2, Err::NotSurjective,
          "surjectivity needs a preimage for each codomain generator");
  require(f.phi.apply(pre[0]) == AlgElement::gen_a(f.cod.alg, 1) &&
              f.phi.apply(pre[1]) == AlgElement::gen_b(f.cod.alg, 1),
          Err::NotSurjective, "preimage certificate does not map to the generators");

  require(complement.size() == n - k, Err::NotComplement,
          "complement must have rank n - rank(psi)");
  for (const auto& v : complement)
    require(v.size() == n, Err::RankMismatch, "complement vector has the wrong length");

  Embedding e;
  e.f = std::move(f);
  e.complement = std::move(complement);
  e.h = std::move(h);
  e.hprime = std::move(hprime);
  e.preimages = pre;
  e.isometric = opts.isometric;

  // combined matrix [tangent | complement] certifies the direct sum
  ElemMat comb(n, std::vector<AlgElement>(n, AlgElement::zero(e.f.dom.alg)));
  bool rational = true;
  RatMat comb_rat(n, std::vector<Rational>(n, Rational(0)));
  for (size_t a = 0; a < n; ++a) {
    for (size_t i = 0; i < k; ++i) {
      comb[a][i] = AlgElement::scalar(e.f.dom.alg, Scalar::from_rational(e.f.tangent[a][i]));
      comb_rat[a][i] = e.f.tangent[a][i];
    }
    for (size_t j = 0; j < n - k; ++j) {
      comb[a][k + j] = e.complement[j][a];
      auto r = elem_as_rational(e.complement[j][a]);
      if (r)
        comb_rat[a][k + j] = *r;
      else
        rational = false;
    }
  }
  e.combined = comb;
  if (opts.combined_inverse) {
    e.combined_inv = *opts.combined_inverse;
    require(e.combined_inv.size() == n, Err::RankMismatch, "combined inverse has wrong size");
    ElemMat prod = elem_mat_mul(e.combined_inv, comb);
    ElemMat prod2 = elem_mat_mul(comb, e.combined_inv);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        AlgElement expect = i == j ? AlgElement::unit(e.f.dom.alg) : AlgElement::zero(e.f.dom.alg);
        require(prod[i][j] == expect && prod2[i][j] == expect, Err::NotComplement,
                "combined inverse certificate fails");
      }
    e.have_combined = true;
  } else if (rational) {
    try {
      e.combined_inv = elem_mat_from_rat(e.f.dom.alg, rat_inverse(comb_rat));
      e.have_combined = true;
    } catch (const EngineError&) {
      fail(Err::NotComplement, "tangent frame and complement do not split the module");
    }
  } else if (!opts.isometric) {
    fail(Err::NotComplement, "non-rational complement needs a registered combined inverse");
  }

  if (opts.isometric) {
    // orthogonality of the complement
    for (size_t i = 0; i < k; ++i)
      for (const auto& xi : e.complement) {
        AlgElement v = metric_eval(e.h, e.f.tangent_vec(i), xi);
        require(v.is_zero(), Err::NotOrthogonal,
                "complement is not metric-orthogonal to the tangent frame");
      }
    // Gram matrix of the tangent frame with a registered inverse
    ElemMat g(k, std::vector<AlgElement>(k, AlgElement::zero(e.f.dom.alg)));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        g[i][j] = metric_eval(e.h, e.f.tangent_vec(i), e.f.tangent_vec(j));
    e.gram = g;
    if (opts.gram_inverse) {
      e.gram_inv = *opts.gram_inverse;
    } else {
      bool diag = true;
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
          if (i != j && !g[i][j].is_zero()) diag = false;
      require(diag, Err::GramSingular, "non-diagonal Gram matrix needs a registered inverse");
      e.gram_inv.assign(k, std::vector<AlgElement>(k, AlgElement::zero(e.f.dom.alg)));
      for (size_t i = 0; i < k; ++i) {
        try {
          e.gram_inv[i][i] = g[i][i].invert();
        } catch (const EngineError&) {
          fail(Err::GramSingular, "Gram diagonal entry is not invertible");
        }
      }
    }
    ElemMat prod = elem_mat_mul(e.gram_inv, g);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) {
        AlgElement expect = i == j ? AlgElement::unit(e.f.dom.alg) : AlgElement::zero(e.f.dom.alg);
        require(prod[i][j] == expect, Err::GramSingular, "Gram inverse certificate fails");
      }
    // the codomain metric must be the induced one
    HermitianMetric hp = induced_metric(e.f, e.h, e.hprime.hinv.empty()
                                                      ? std::optional<ElemMat>{}
                                                      : std::optional<ElemMat>{e.hprime.hinv});
    for (size_t i = 0; i < e.f.cod.dim(); ++i)
      for (size_t j = 0; j < e.f.cod.dim(); ++j)
        require(hp.h[i][j] == e.hprime.h[i][j], Err::NotCompatible,
                "codomain metric is not the induced metric");
  }
  return e;
}

}  // namespace ncg
