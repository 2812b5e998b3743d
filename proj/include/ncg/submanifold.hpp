#pragma once

#include <utility>
#include <vector>

#include "ncg/builtin.hpp"

namespace ncg {

namespace detail {

inline std::vector<Rational> psi_column(const CalculusHomomorphism& f, size_t i) {
  std::vector<Rational> c(f.dom.dim(), Rational(0));
  for (size_t a = 0; a < f.dom.dim(); ++a) c[a] = f.psi[a][i];
  return c;
}

}  // namespace detail

// Tables of the Gauss/Weingarten decomposition over the codomain derivation
// basis and the complement basis:
//   nabla_{psi(d_i)} Psi(d_j)  =  L(d_i, Psi(d_j)) + alpha(d_i, Psi(d_j))
//   nabla_{psi(d_i)} xi_k      =  -A_{xi_k}(d_i)   + D_{d_i} xi_k
// All vectors are held in module-basis coordinates of the domain.
struct GaussWeingarten {
  std::vector<std::vector<ModuleVec>> tangential;   // L[i][j]
  std::vector<std::vector<ModuleVec>> second_form;  // alpha[i][j]
  std::vector<std::vector<ModuleVec>> weingarten;   // A[k][i]
  std::vector<std::vector<ModuleVec>> normal_conn;  // D[k][i]
};

inline GaussWeingarten gauss_weingarten(const Embedding& e, const Connection& conn) {
  require(e.isometric, Err::NotOrthogonal,
          "the decomposition needs the metric-orthogonal complement");
  const size_t np = e.f.cod.dim(), nc = e.complement.size();
  GaussWeingarten gw;
  gw.tangential.assign(np, std::vector<ModuleVec>(np));
  gw.second_form.assign(np, std::vector<ModuleVec>(np));
  gw.weingarten.assign(nc, std::vector<ModuleVec>(np));
  gw.normal_conn.assign(nc, std::vector<ModuleVec>(np));
  for (size_t i = 0; i < np; ++i) {
    const std::vector<Rational> combo = detail::psi_column(e.f, i);
    for (size_t j = 0; j < np; ++j) {
      ModuleVec nab = covariant_deriv(e.f.dom, conn, combo, e.f.tangent_vec(j));
      auto [p, n] = e.project(nab);
      gw.tangential[i][j] = std::move(p);
      gw.second_form[i][j] = std::move(n);
    }
    for (size_t k = 0; k < nc; ++k) {
      ModuleVec nab = covariant_deriv(e.f.dom, conn, combo, e.complement[k]);
      auto [p, n] = e.project(nab);
      gw.weingarten[k][i] = mv_neg(p);
      gw.normal_conn[k][i] = std::move(n);
    }
  }
  return gw;
}

// The connection induced on the codomain: nabla'_i F'_j = psi-hat(L(d_i, Psi(d_j))).
inline Connection induced_connection(const Embedding& e, const GaussWeingarten& gw) {
  const size_t np = e.f.cod.dim();
  Connection conn;
  conn.n = np;
  conn.gamma.assign(np, std::vector<std::vector<AlgElement>>(
                            np, std::vector<AlgElement>(np, AlgElement::zero(e.f.cod.alg))));
  const bool idanchor = e.f.cod.identity_anchor();
  const RatMat ainv = idanchor ? RatMat{} : rat_inverse(e.f.cod.anchor);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j) {
      ModuleVec img = e.f.psi_hat(gw.tangential[i][j]);
      if (!idanchor) img = mv_rat_apply(ainv, img);
      for (size_t p = 0; p < np; ++p) conn.gamma[p][i][j] = img[p];
    }
  return conn;
}

inline Connection induced_connection(const Embedding& e, const Connection& ambient) {
  return induced_connection(e, gauss_weingarten(e, ambient));
}

// Gauss' equation, checked for every index tuple (i, j, k, l) over the
// codomain basis:
//   phi(h(Psi_i, R(psi d_k, psi d_l) Psi_j))
//     = h'(F'_i, R'(d_k, d_l) F'_j)
//       + phi(h(alpha(d_l, Psi_i), alpha(d_k, Psi_j)))
//       - phi(h(alpha(d_k, Psi_i), alpha(d_l, Psi_j)))
inline Report gauss_equation_check(const Embedding& e, const Connection& ambient,
                                   const Connection& induced) {
  Report rep;
  const size_t np = e.f.cod.dim();
  GaussWeingarten gw = gauss_weingarten(e, ambient);
  auto unit_combo = [&](size_t n, size_t k) {
    std::vector<Rational> c(n, Rational(0));
    c[k] = 1;
    return c;
  };
  bool ok = true;
  for (size_t i = 0; i < np && ok; ++i)
    for (size_t j = 0; j < np && ok; ++j)
      for (size_t k = 0; k < np && ok; ++k)
        for (size_t l = 0; l < np; ++l) {
          // ambient curvature acts on E-coordinates through the anchor
          ModuleVec pj = e.f.tangent_vec(j);
          ModuleVec pjf = e.f.dom.identity_anchor()
                              ? pj
                              : mv_rat_apply(rat_inverse(e.f.dom.anchor), pj);
          ModuleVec r = curvature_apply(e.f.dom, ambient, detail::psi_column(e.f, k),
                                        detail::psi_column(e.f, l), pjf);
          if (!e.f.dom.identity_anchor()) r = mv_rat_apply(e.f.dom.anchor, r);
          AlgElement lhs = e.f.phi.apply(metric_eval(e.h, e.f.tangent_vec(i), r));

          ModuleVec fj = mv_zero(e.f.cod.alg, np);
          for (size_t a = 0; a < np; ++a)
            fj[a] = AlgElement::scalar(e.f.cod.alg,
                                       Scalar::from_rational(e.f.cod.anchor[a][j]));
          ModuleVec fjf = e.f.cod.identity_anchor()
                              ? fj
                              : mv_rat_apply(rat_inverse(e.f.cod.anchor), fj);
          ModuleVec rp = curvature_apply(e.f.cod, induced, unit_combo(np, k),
                                         unit_combo(np, l), fjf);
          if (!e.f.cod.identity_anchor()) rp = mv_rat_apply(e.f.cod.anchor, rp);
          ModuleVec fi = mv_zero(e.f.cod.alg, np);
          for (size_t a = 0; a < np; ++a)
            fi[a] = AlgElement::scalar(e.f.cod.alg,
                                       Scalar::from_rational(e.f.cod.anchor[a][i]));
          AlgElement rhs = metric_eval(e.hprime, fi, rp) +
                           e.f.phi.apply(metric_eval(e.h, gw.second_form[l][i],
                                                     gw.second_form[k][j])) -
                           e.f.phi.apply(metric_eval(e.h, gw.second_form[k][i],
                                                     gw.second_form[l][j]));
          if (!(lhs == rhs)) {
            ok = false;
            break;
          }
        }
  rep.add("Gauss' equation holds for every index tuple", ok);
  return rep;
}

// ---------------------------------------------------------------------------
// Mean curvature: H(m) = phi(h(m, alpha(d_i, Psi(d_j)))) h'^{ij}, contracted
// with the anchored inverse of the codomain metric and multiplied on the
// right. It kills the tangent submodule, so its values on the complement
// basis carry all the information.

struct MeanCurvatureForm {
  std::vector<AlgElement> on_complement;
};

inline AlgElement mean_curvature_at(const Embedding& e, const GaussWeingarten& gw,
                                    const ModuleVec& m) {
  const size_t np = e.f.cod.dim();
  const ElemMat hfinv = anchored_metric_inverse(e.f.cod, e.hprime);
  AlgElement out = AlgElement::zero(e.f.cod.alg);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j) {
      if (hfinv[i][j].is_zero()) continue;
      AlgElement v = e.f.phi.apply(metric_eval(e.h, m, gw.second_form[i][j]));
      out = out + v * hfinv[i][j];
    }
  return out;
}

inline MeanCurvatureForm mean_curvature(const Embedding& e, const GaussWeingarten& gw) {
  MeanCurvatureForm h;
  for (const auto& xi : e.complement) h.on_complement.push_back(mean_curvature_at(e, gw, xi));
  return h;
}

// Right factors that are invertible do not affect vanishing (x u = 0 iff
// x = 0); trailing inverse-factor symbols are stripped so obstructions read
// in the polynomial form.
inline AlgElement strip_invertible_right(AlgElement x) {
  for (int guard = 0; guard < 8; ++guard) {
    bool trailing = false;
    for (const auto& [m, c] : x.terms)
      if (!m.word.empty() && m.word.back() == KSym::Kinv) trailing = true;
    if (!trailing) break;
    x = x * AlgElement::word_elem(x.spec, {KSym::K});
  }
  return x;
}

struct MinimalityResult {
  bool minimal = true;
  std::vector<AlgElement> obstructions;  // one per complement vector, stripped
};

inline MinimalityResult is_minimal(const Embedding& e, const GaussWeingarten& gw) {
  MinimalityResult r;
  MeanCurvatureForm h = mean_curvature(e, gw);
  for (const auto& v : h.on_complement) {
    AlgElement o = strip_invertible_right(v);
    if (!o.is_zero()) r.minimal = false;
    r.obstructions.push_back(std::move(o));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Basis independence of the mean curvature: transform the codomain
// derivation basis by an invertible rational matrix, rebuild the whole
// embedding pipeline and compare the values on the complement basis.

inline Report mean_curvature_basis_independence(const Embedding& e, const Connection& ambient,
                                                const RatMat& a) {
  Report rep;
  const size_t np = e.f.cod.dim();
  require(a.size() == np, Err::RankMismatch, "transform must match the codomain basis");
  const RatMat ainv = rat_inverse(a);  // SingularMatrix if not invertible

  // transformed basis d~_i = sum_j A_{ji} d_j with transported structure
  // constants and anchor
  std::vector<Derivation> basis;
  for (size_t i = 0; i < np; ++i) {
    std::vector<Rational> combo(e.f.cod.alg.derivation_count(), Rational(0));
    for (size_t j = 0; j < np; ++j) {
      require(e.f.cod.lie.basis[j].is_combo, Err::DomainMismatch,
              "basis transform needs combination derivations");
      for (size_t t = 0; t < combo.size(); ++t)
        combo[t] += a[j][i] * e.f.cod.lie.basis[j].combo[t];
    }
    basis.push_back(Derivation::combo_of(e.f.cod.alg, combo));
  }
  LieAlgebraSpec lie;
  lie.alg = e.f.cod.alg;
  lie.basis = std::move(basis);
  lie.f.assign(np, RatMat(np, std::vector<Rational>(np, Rational(0))));
  for (size_t r = 0; r < np; ++r)
    for (size_t i = 0; i < np; ++i)
      for (size_t j = 0; j < np; ++j) {
        Rational sum(0);
        for (size_t c = 0; c < np; ++c)
          for (size_t x = 0; x < np; ++x)
            for (size_t y = 0; y < np; ++y)
              sum += ainv[r][c] * e.f.cod.lie.f[c][x][y] * a[x][i] * a[y][j];
        lie.f[r][i][j] = sum;
      }
  RealCalculus cod = RealCalculus::anchored(e.f.cod.alg, std::move(lie),
                                            rat_mul(e.f.cod.anchor, a), e.f.cod.basis_symbol);

  CalculusHomomorphism hom = construct_hom(e.f.dom, cod, e.f.phi, rat_mul(e.f.psi, a));
  HermitianMetric hprime = induced_metric(hom, e.h, e.hprime.hinv);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j)
      rep.add("induced metric is unchanged by the basis transform",
              hprime.h[i][j] == e.hprime.h[i][j]);
  EmbeddingOptions opts;
  opts.preimages = e.preimages;
  opts.isometric = e.isometric;
  // Gram transforms as a^T G a, so its inverse is a^{-1} G^{-1} a^{-T}
  if (e.isometric && !e.gram_inv.empty()) {
    const size_t k = e.gram_inv.size();
    ElemMat g(k, std::vector<AlgElement>(k, AlgElement::zero(e.f.dom.alg)));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        for (size_t x = 0; x < k; ++x)
          for (size_t y = 0; y < k; ++y)
            if (ainv[i][x] != 0 && ainv[j][y] != 0)
              g[i][j] = g[i][j] + e.gram_inv[x][y] *
                                      Scalar::from_rational(ainv[i][x] * ainv[j][y]);
    opts.gram_inverse = std::move(g);
  }
  Embedding et = make_embedding(hom, e.complement, e.h, hprime, opts);
  GaussWeingarten gw = gauss_weingarten(e, ambient);
  GaussWeingarten gwt = gauss_weingarten(et, ambient);
  MeanCurvatureForm h0 = mean_curvature(e, gw);
  MeanCurvatureForm h1 = mean_curvature(et, gwt);
  bool same = true;
  for (size_t k = 0; k < h0.on_complement.size(); ++k)
    if (!(h0.on_complement[k] == h1.on_complement[k])) same = false;
  rep.add("mean curvature values agree on the complement basis", same);
  return rep;
}

}  // namespace ncg
