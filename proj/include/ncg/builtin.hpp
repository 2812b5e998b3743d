#pragma once

#include <utility>
#include <vector>

#include "ncg/morphism.hpp"

namespace ncg {

inline RealCalculus standard_calculus(AlgebraSpec s, std::string symbol = "E") {
  return RealCalculus::free_calculus(s, LieAlgebraSpec::standard(s), std::move(symbol));
}

// Conformal factor for the sphere metrics.
enum class FactorMode { One, FormalK, Element };

inline AlgElement metric_factor(const AlgebraSpec& s, FactorMode mode,
                                const CentralFn& fn = CentralFn::one()) {
  switch (mode) {
    case FactorMode::One:
      return AlgElement::unit(s);
    case FactorMode::FormalK:
      require(s.formal_factor, Err::DomainMismatch,
              "formal factor needs a formal-factor algebra");
      return AlgElement::word_elem(s, {KSym::K});
    default: {
      AlgElement k = AlgElement::central(s, fn);
      require(k.is_hermitian(), Err::NotHermitian, "conformal factor must be hermitian");
      k.invert();  // UnsupportedInversion if not invertible
      return k;
    }
  }
}

// diag(t, 1-t, t(1-t)) scaled by a central hermitian invertible factor.
inline HermitianMetric sphere_metric(const AlgebraSpec& s, const AlgElement& factor) {
  AlgElement t = AlgElement::t_elem(s);
  AlgElement omt = AlgElement::central(s, CentralFn::one_minus_t());
  return HermitianMetric::diagonal({t * factor, omt * factor, t * omt * factor});
}

inline HermitianMetric flat_torus_metric(const AlgebraSpec& s) {
  return HermitianMetric::diagonal({AlgElement::unit(s), AlgElement::unit(s)});
}

// ---------------------------------------------------------------------------
// The determinant-one integer family of torus automorphisms. alpha sends
// U -> U^a V^b, V -> U^c V^d; the inverse carries the compensating unit
// powers and is the member whose psi-matrix has the displayed integer form.

inline AlgebraMorphism torus_automorphism(long a, long b, long c, long d) {
  require(a * d - b * c == 1, Err::NotInvertible, "matrix must have determinant one");
  const AlgebraSpec T = AlgebraSpec::torus();
  AlgebraMorphism alpha = AlgebraMorphism::on_generators(
      T, T, AlgElement::gen_a(T, a) * AlgElement::gen_b(T, b),
      AlgElement::gen_a(T, c) * AlgElement::gen_b(T, d));
  AlgElement phi_u = AlgElement::gen_a(T, d) * AlgElement::gen_b(T, -b) *
                     Scalar::q_power(b * d * (a - c - 1));
  AlgElement phi_v = AlgElement::gen_a(T, -c) * AlgElement::gen_b(T, a) *
                     Scalar::q_power(a * c * (d - b - 1));
  return AlgebraMorphism::on_generators(T, T, phi_u, phi_v).with_inverse(alpha);
}

inline CalculusHomomorphism torus_automorphism_hom(long a, long b, long c, long d) {
  const RealCalculus calc = standard_calculus(AlgebraSpec::torus(), "e");
  AlgebraMorphism phi = torus_automorphism(a, b, c, d);
  RatMat psi = iso_psi_from_phi(calc, calc, phi);
  return construct_hom(calc, calc, phi, psi);
}

// ---------------------------------------------------------------------------
// The torus sitting inside the 3-sphere: phi(Z) = lambda U, phi(W) = mu V
// with lambda, mu nonzero and |lambda|^2 + |mu|^2 = 1, tangent frame
// Psi(d_1) = E_1, Psi(d_2) = E_2 and orthogonal complement E_3.

struct TorusInSphere {
  RealCalculus sphere, torus;
  HermitianMetric h;        // sphere metric
  HermitianMetric hprime;   // induced torus metric
  CalculusHomomorphism hom;
  Embedding emb;
  Scalar lambda, mu;
  AlgElement factor;        // conformal factor inside the sphere algebra
};

inline TorusInSphere torus_in_sphere(FactorMode mode, const Scalar& lambda, const Scalar& mu,
                                     const CentralFn& factor_fn = CentralFn::one(),
                                     bool q_one = false) {
  require(!lambda.is_zero() && !mu.is_zero(), Err::InvalidCoefficient,
          "both generator scales must be nonzero");
  AlgebraSpec s = AlgebraSpec::sphere3loc();
  AlgebraSpec t2 = AlgebraSpec::torus();
  if (mode == FactorMode::FormalK) {
    s = s.with_formal_factor();
    t2 = t2.with_formal_factor();
  }
  if (q_one) {
    s = s.at_q_one();
    t2 = t2.at_q_one();
  }
  TorusInSphere r;
  r.lambda = lambda;
  r.mu = mu;
  r.sphere = standard_calculus(s, "E");
  r.torus = standard_calculus(t2, "e");
  r.factor = metric_factor(s, mode, factor_fn);
  r.h = sphere_metric(s, r.factor);
  AlgebraMorphism phi = AlgebraMorphism::on_generators(
      s, t2, AlgElement::gen_a(t2, 1) * lambda, AlgElement::gen_b(t2, 1) * mu);
  RatMat psi = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)},
                {Rational(0), Rational(0)}};
  r.hom = construct_hom(r.sphere, r.torus, phi, psi);
  r.hprime = induced_metric(r.hom, r.h);
  ModuleVec e3 = mv_zero(s, 3);
  e3[2] = AlgElement::unit(s);
  EmbeddingOptions opts;
  opts.preimages = {AlgElement::gen_a(s, 1) * lambda.inverse(),
                    AlgElement::gen_b(s, 1) * mu.inverse()};
  opts.isometric = true;
  r.emb = make_embedding(r.hom, {e3}, r.h, r.hprime, opts);
  return r;
}

}  // namespace ncg
