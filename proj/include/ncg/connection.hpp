#pragma once

#include <vector>

#include "ncg/calculus.hpp"

namespace ncg {

inline ModuleVec mv_rat_apply(const RatMat& m, const ModuleVec& v) {
  require(!m.empty() && m[0].size() == v.size(), Err::RankMismatch,
          "matrix does not match vector length");
  const AlgebraSpec s = v.empty() ? AlgebraSpec::torus() : v[0].spec;
  ModuleVec r = mv_zero(s, m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0) r[i] = r[i] + v[j] * Scalar::from_rational(m[i][j]);
  return r;
}

// Affine connection over the anchored basis F_a of a calculus:
// nabla_b F_c = F_a Gamma[a][b][c], acting on coordinates from the left.
struct Connection {
  size_t n = 0;
  std::vector<std::vector<std::vector<AlgElement>>> gamma;  // [a][b][c]

  ModuleVec christoffel_column(size_t b, size_t c) const {
    ModuleVec v;
    v.reserve(n);
    for (size_t a = 0; a < n; ++a) v.push_back(gamma[a][b][c]);
    return v;
  }

  // Covariant derivative along basis derivation b of a vector in anchored
  // coordinates: (nabla_b m)^p = sum_c Gamma^p_bc m^c + d_b(m^p).
  ModuleVec apply(const RealCalculus& calc, size_t b, const ModuleVec& m) const {
    require(m.size() == n, Err::RankMismatch, "vector length does not match connection");
    const Derivation& db = calc.lie.basis[b];
    ModuleVec out = mv_zero(calc.alg, n);
    for (size_t p = 0; p < n; ++p) {
      AlgElement acc = db.apply(m[p]);
      for (size_t c = 0; c < n; ++c) acc = acc + gamma[p][b][c] * m[c];
      out[p] = acc;
    }
    return out;
  }

  // Derivation slot is real-linear: nabla along a rational combination.
  ModuleVec apply_combo(const RealCalculus& calc, const std::vector<Rational>& combo,
                        const ModuleVec& m) const {
    ModuleVec out = mv_zero(calc.alg, n);
    for (size_t b = 0; b < n; ++b)
      if (combo[b] != 0)
        out = mv_add(out, mv_scale_rat(apply(calc, b, m), combo[b]));
    return out;
  }
};

// Covariant derivative along a rational combination of basis derivations,
// with input and output in module-basis (E) coordinates.
inline ModuleVec covariant_deriv(const RealCalculus& calc, const Connection& conn,
                                 const std::vector<Rational>& combo, const ModuleVec& m) {
  if (calc.identity_anchor()) return conn.apply_combo(calc, combo, m);
  const ModuleVec mf = mv_rat_apply(rat_inverse(calc.anchor), m);
  return mv_rat_apply(calc.anchor, conn.apply_combo(calc, combo, mf));
}

namespace detail {

// Right-hand side of the Koszul identity: h_{d a} Gamma^a_{bc} = K_{bcd}.
inline AlgElement koszul_rhs(const RealCalculus& calc, const ElemMat& hf, size_t b,
                             size_t c, size_t d) {
  const auto& g = calc.lie;
  AlgElement acc = g.basis[b].apply(hf[c][d]) + g.basis[c].apply(hf[b][d]) -
                   g.basis[d].apply(hf[b][c]);
  const size_t n = g.dim();
  for (size_t r = 0; r < n; ++r) {
    if (g.f[r][c][d] != 0)
      acc = acc - hf[b][r] * Scalar::from_rational(g.f[r][c][d]);
    if (g.f[r][d][b] != 0)
      acc = acc + hf[c][r] * Scalar::from_rational(g.f[r][d][b]);
    if (g.f[r][b][c] != 0)
      acc = acc + hf[d][r] * Scalar::from_rational(g.f[r][b][c]);
  }
  return acc * Scalar::from_rational(ratio(1, 2));
}

}  // namespace detail

// The unique metric and torsion-free connection, solved from the Koszul
// identity by contracting with the inverse metric on the left.
inline Connection levi_civita(const RealCalculus& calc, const HermitianMetric& h) {
  const size_t n = calc.dim();
  require(h.dim() == n, Err::RankMismatch, "metric does not match calculus rank");
  const ElemMat hf = anchored_metric(calc, h);
  const ElemMat hfinv = anchored_metric_inverse(calc, h);
  Connection conn;
  conn.n = n;
  conn.gamma.assign(
      n, std::vector<std::vector<AlgElement>>(n, std::vector<AlgElement>(n, AlgElement::zero(calc.alg))));
  for (size_t b = 0; b < n; ++b)
    for (size_t c = 0; c < n; ++c) {
      std::vector<AlgElement> k;
      k.reserve(n);
      for (size_t d = 0; d < n; ++d) k.push_back(detail::koszul_rhs(calc, hf, b, c, d));
      for (size_t p = 0; p < n; ++p) {
        AlgElement acc = AlgElement::zero(calc.alg);
        for (size_t d = 0; d < n; ++d) acc = acc + hfinv[p][d] * k[d];
        conn.gamma[p][b][c] = acc;
      }
    }
  return conn;
}

// h(F_d, nabla_b F_c) over the anchored basis.
inline AlgElement pair_anchored(const ElemMat& hf, const ModuleVec& u, const ModuleVec& v) {
  const AlgebraSpec s = hf[0][0].spec;
  AlgElement out = AlgElement::zero(s);
  for (size_t p = 0; p < hf.size(); ++p)
    for (size_t q = 0; q < hf.size(); ++q) out = out + u[p].star() * hf[p][q] * v[q];
  return out;
}

// Checks that a connection is the pseudo-Riemannian one for (calc, h):
// metric compatibility, torsion-freeness, the full Koszul identity, and
// reality of h(nabla F, F).
inline Report verify_pseudo_riemannian(const RealCalculus& calc, const HermitianMetric& h,
                                       const Connection& conn) {
  Report rep;
  const size_t n = calc.dim();
  const ElemMat hf = anchored_metric(calc, h);
  auto basis_vec = [&](size_t p) {
    ModuleVec v = mv_zero(calc.alg, n);
    v[p] = AlgElement::unit(calc.alg);
    return v;
  };
  bool compat = true, torsion = true, koszul = true, real = true;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      const ModuleVec nab = conn.christoffel_column(a, b);
      for (size_t c = 0; c < n; ++c) {
        const AlgElement lhs = calc.lie.basis[a].apply(hf[b][c]);
        const AlgElement rhs = pair_anchored(hf, nab, basis_vec(c)) +
                               pair_anchored(hf, basis_vec(b), conn.christoffel_column(a, c));
        if (!(lhs == rhs)) compat = false;
        const AlgElement hval = pair_anchored(hf, nab, basis_vec(c));
        if (!(hval.star() == hval)) real = false;
      }
      for (size_t p = 0; p < n; ++p) {
        AlgElement t = conn.gamma[p][a][b] - conn.gamma[p][b][a] -
                       AlgElement::scalar(calc.alg, Scalar::from_rational(calc.lie.f[p][a][b]));
        if (!t.is_zero()) torsion = false;
      }
      for (size_t d = 0; d < n; ++d) {
        AlgElement lhs = AlgElement::zero(calc.alg);
        for (size_t p = 0; p < n; ++p) lhs = lhs + hf[d][p] * conn.gamma[p][a][b];
        if (!(lhs == detail::koszul_rhs(calc, hf, a, b, d))) koszul = false;
      }
    }
  rep.add("metric compatibility d h(m,n) = h(nabla m, n) + h(m, nabla n)", compat);
  rep.add("torsion-freeness nabla_a F_b - nabla_b F_a = [a, b]", torsion);
  rep.add("Koszul identity holds entrywise", koszul);
  rep.add("h(nabla F, F) is hermitian", real);
  return rep;
}

// Curvature R(a, b) F_c in anchored coordinates.
struct CurvatureTensor {
  size_t n = 0;
  std::vector<std::vector<std::vector<ModuleVec>>> r;  // [a][b][c]

  const ModuleVec& operator()(size_t a, size_t b, size_t c) const { return r[a][b][c]; }

  bool is_zero() const {
    for (const auto& pa : r)
      for (const auto& pb : pa)
        for (const auto& v : pb)
          if (!mv_is_zero(v)) return false;
    return true;
  }
};

inline ModuleVec curvature_apply(const RealCalculus& calc, const Connection& conn,
                                 const std::vector<Rational>& xa,
                                 const std::vector<Rational>& xb, const ModuleVec& m) {
  const size_t n = calc.dim();
  ModuleVec out = mv_sub(conn.apply_combo(calc, xa, conn.apply_combo(calc, xb, m)),
                         conn.apply_combo(calc, xb, conn.apply_combo(calc, xa, m)));
  // bracket term: [xa, xb]^c = sum_{a,b} f[c][a][b] xa^a xb^b
  std::vector<Rational> bracket(n, Rational(0));
  for (size_t c = 0; c < n; ++c)
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) bracket[c] += calc.lie.f[c][a][b] * xa[a] * xb[b];
  out = mv_sub(out, conn.apply_combo(calc, bracket, m));
  return out;
}

inline CurvatureTensor curvature(const RealCalculus& calc, const Connection& conn) {
  const size_t n = calc.dim();
  CurvatureTensor t;
  t.n = n;
  auto unit_combo = [&](size_t k) {
    std::vector<Rational> c(n, Rational(0));
    c[k] = 1;
    return c;
  };
  t.r.assign(n, std::vector<std::vector<ModuleVec>>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      t.r[a][b].reserve(n);
      for (size_t c = 0; c < n; ++c) {
        ModuleVec basis = mv_zero(calc.alg, n);
        basis[c] = AlgElement::unit(calc.alg);
        t.r[a][b].push_back(
            curvature_apply(calc, conn, unit_combo(a), unit_combo(b), basis));
      }
    }
  return t;
}

// grad(x) = F_a h^{ab} d_b(x), returned in E-coordinates.
inline ModuleVec gradient(const RealCalculus& calc, const HermitianMetric& h,
                          const AlgElement& x) {
  const size_t n = calc.dim();
  const ElemMat hfinv = anchored_metric_inverse(calc, h);
  ModuleVec gf = mv_zero(calc.alg, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      gf[a] = gf[a] + hfinv[a][b] * calc.lie.basis[b].apply(x);
  return calc.identity_anchor() ? gf : mv_rat_apply(calc.anchor, gf);
}

// divergence of a vector in E-coordinates.
inline AlgElement divergence(const RealCalculus& calc, const Connection& conn,
                             const ModuleVec& m) {
  const ModuleVec mf =
      calc.identity_anchor() ? m : mv_rat_apply(rat_inverse(calc.anchor), m);
  AlgElement out = AlgElement::zero(calc.alg);
  for (size_t a = 0; a < conn.n; ++a) out = out + conn.apply(calc, a, mf)[a];
  return out;
}

inline AlgElement laplacian(const RealCalculus& calc, const HermitianMetric& h,
                            const Connection& conn, const AlgElement& x) {
  return divergence(calc, conn, gradient(calc, h, x));
}

}  // namespace ncg
