#include <doctest.h>

#include "ncg/submanifold.hpp"
#include "support/oracle.hpp"

using namespace ncg;
using namespace testsupport;

namespace {

AlgElement c_of(const AlgebraSpec& s, const CentralFn& f) { return AlgElement::central(s, f); }

Scalar lam_half() {
  return (Scalar::one() + Scalar::imag_unit()) * Scalar::from_rational(Rational(1, 2));
}

// |(2+4i)/5|^2 = 4/5 and |(1+2i)/5|^2 = 1/5, summing to one
Scalar lam_heavy() {
  return (Scalar::from_rational(Rational(2)) +
          Scalar::imag_unit() * Scalar::from_rational(Rational(4))) *
         Scalar::from_rational(Rational(1, 5));
}
Scalar mu_light() {
  return (Scalar::one() + Scalar::imag_unit() * Scalar::from_rational(Rational(2))) *
         Scalar::from_rational(Rational(1, 5));
}

// psi applied to a rational combination of the codomain basis, as a
// coefficient vector over the domain basis
std::vector<Rational> psi_combo(const CalculusHomomorphism& f, const std::vector<Rational>& u) {
  std::vector<Rational> c(f.dom.dim(), Rational(0));
  for (size_t a = 0; a < f.dom.dim(); ++a)
    for (size_t i = 0; i < u.size(); ++i) c[a] += f.psi[a][i] * u[i];
  return c;
}

// the same combination as a derivation on the domain algebra
Derivation psi_derivation(const CalculusHomomorphism& f, const std::vector<Rational>& u) {
  const std::vector<Rational> c = psi_combo(f, u);
  std::vector<Rational> raw(f.dom.alg.derivation_count(), Rational(0));
  for (size_t a = 0; a < f.dom.dim(); ++a)
    for (size_t t = 0; t < raw.size(); ++t) raw[t] += c[a] * f.dom.lie.basis[a].combo[t];
  return Derivation::combo_of(f.dom.alg, raw);
}

// Psi applied to a rational combination, in module coordinates
ModuleVec tangent_combo(const CalculusHomomorphism& f, const std::vector<Rational>& u) {
  ModuleVec m = mv_zero(f.dom.alg, f.dom.dim());
  for (size_t i = 0; i < u.size(); ++i) m = mv_add(m, mv_scale_rat(f.tangent_vec(i), u[i]));
  return m;
}

Rational rnd_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  Rational r(num(rng), den(rng));
  r.canonicalize();  // two-argument mpq construction does not reduce
  return r;
}

}  // namespace

TEST_CASE("second fundamental form matches the closed-form table") {
  const Scalar lam = lam_half();
  const CentralFn t = CentralFn::t(), u = CentralFn::one_minus_t();

  // formal conformal factor
  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  const AlgebraSpec s = bf.sphere.alg;
  const Scalar half = Scalar::from_rational(Rational(1, 2));
  const AlgElement one = AlgElement::unit(s);
  const AlgElement h3 =
      AlgElement::word_elem(s, {KSym::Kinv}) * AlgElement::word_elem(s, {KSym::K3}) * half;
  Connection lcf = levi_civita(bf.sphere, bf.h);
  GaussWeingarten gwf = gauss_weingarten(bf.emb, lcf);

  // alpha(d1, Psi d1) = -E3((1-t)^{-1} H3 + 1)
  CHECK(gwf.second_form[0][0][0].is_zero());
  CHECK(gwf.second_form[0][0][1].is_zero());
  CHECK(gwf.second_form[0][0][2] == -(c_of(s, u.inverse()) * h3) - one);
  // alpha(d1, Psi d2) = alpha(d2, Psi d1) = 0
  CHECK(mv_is_zero(gwf.second_form[0][1]));
  CHECK(mv_is_zero(gwf.second_form[1][0]));
  // alpha(d2, Psi d2) = E3(1 - t^{-1} H3)
  CHECK(gwf.second_form[1][1][0].is_zero());
  CHECK(gwf.second_form[1][1][1].is_zero());
  CHECK(gwf.second_form[1][1][2] == one - c_of(s, t.inverse()) * h3);

  // every table value lies in the orthogonal complement
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      CHECK(mv_is_zero(bf.emb.tangential(gwf.second_form[i][j])));
      CHECK(mv_eq(gwf.second_form[i][j], gwf.second_form[j][i]));
      CHECK(mv_is_zero(bf.emb.normal(gwf.tangential[i][j])));
    }

  // constant factor: the derivative symbols vanish
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  const AlgebraSpec s1 = b1.sphere.alg;
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  GaussWeingarten gw1 = gauss_weingarten(b1.emb, lc1);
  CHECK(gw1.second_form[0][0][2] == -AlgElement::unit(s1));
  CHECK(gw1.second_form[1][1][2] == AlgElement::unit(s1));
  CHECK(mv_is_zero(gw1.second_form[0][1]));
  CHECK(mv_is_zero(gw1.second_form[1][0]));
}

TEST_CASE("Weingarten map and normal connection match the closed-form table") {
  const Scalar lam = lam_half();
  const CentralFn t = CentralFn::t(), u = CentralFn::one_minus_t();
  const Scalar half = Scalar::from_rational(Rational(1, 2));

  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  const AlgebraSpec s = bf.sphere.alg;
  const AlgElement kinv = AlgElement::word_elem(s, {KSym::Kinv});
  const AlgElement h1 = kinv * AlgElement::word_elem(s, {KSym::K1}) * half;
  const AlgElement h2 = kinv * AlgElement::word_elem(s, {KSym::K2}) * half;
  const AlgElement h3 = kinv * AlgElement::word_elem(s, {KSym::K3}) * half;
  Connection lcf = levi_civita(bf.sphere, bf.h);
  GaussWeingarten gwf = gauss_weingarten(bf.emb, lcf);

  // A_{E3}(d1) = -E1(H3 + (1-t)),  A_{E3}(d2) = E2(t - H3)
  CHECK(gwf.weingarten[0][0][0] == -(h3 + c_of(s, u)));
  CHECK(gwf.weingarten[0][0][1].is_zero());
  CHECK(gwf.weingarten[0][0][2].is_zero());
  CHECK(gwf.weingarten[0][1][0].is_zero());
  CHECK(gwf.weingarten[0][1][1] == c_of(s, t) - h3);
  CHECK(gwf.weingarten[0][1][2].is_zero());
  // D_{d1} E3 = E3 H1,  D_{d2} E3 = E3 H2
  CHECK(gwf.normal_conn[0][0][2] == h1);
  CHECK(gwf.normal_conn[0][1][2] == h2);
  CHECK(gwf.normal_conn[0][0][0].is_zero());
  CHECK(gwf.normal_conn[0][1][1].is_zero());

  // the two decompositions reassemble the ambient derivative exactly
  for (size_t i = 0; i < 2; ++i) {
    std::vector<Rational> ei(2, Rational(0));
    ei[i] = 1;
    ModuleVec nab = covariant_deriv(bf.sphere, lcf, psi_combo(bf.emb.f, ei), bf.emb.complement[0]);
    CHECK(mv_eq(nab, mv_add(mv_neg(gwf.weingarten[0][i]), gwf.normal_conn[0][i])));
    for (size_t j = 0; j < 2; ++j) {
      ModuleVec nm =
          covariant_deriv(bf.sphere, lcf, psi_combo(bf.emb.f, ei), bf.emb.f.tangent_vec(j));
      CHECK(mv_eq(nm, mv_add(gwf.tangential[i][j], gwf.second_form[i][j])));
    }
  }

  // constant factor: A_{E3}(d1) = -E1(1-t), A_{E3}(d2) = E2 t, D = 0
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  const AlgebraSpec s1 = b1.sphere.alg;
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  GaussWeingarten gw1 = gauss_weingarten(b1.emb, lc1);
  CHECK(gw1.weingarten[0][0][0] == -c_of(s1, u));
  CHECK(gw1.weingarten[0][1][1] == c_of(s1, t));
  CHECK(mv_is_zero(gw1.normal_conn[0][0]));
  CHECK(mv_is_zero(gw1.normal_conn[0][1]));
}

TEST_CASE("induced connection matches the closed form and the direct construction") {
  const Scalar lam = lam_half();

  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  const AlgebraSpec t2 = bf.torus.alg;
  const Scalar half = Scalar::from_rational(Rational(1, 2));
  const AlgElement kinv = AlgElement::word_elem(t2, {KSym::Kinv});
  const AlgElement ht1 = kinv * AlgElement::word_elem(t2, {KSym::K1}) * half;
  const AlgElement ht2 = kinv * AlgElement::word_elem(t2, {KSym::K2}) * half;
  Connection lcf = levi_civita(bf.sphere, bf.h);
  Connection ind = induced_connection(bf.emb, lcf);

  // with |lambda| = |mu| the ratio factors are 1:
  //   D'_1 e_1 = e_1 Ht1 - e_2 Ht2,   D'_1 e_2 = D'_2 e_1 = e_1 Ht2 + e_2 Ht1,
  //   D'_2 e_2 = -e_1 Ht1 + e_2 Ht2
  CHECK(ind.gamma[0][0][0] == ht1);
  CHECK(ind.gamma[1][0][0] == -ht2);
  CHECK(ind.gamma[0][0][1] == ht2);
  CHECK(ind.gamma[1][0][1] == ht1);
  CHECK(ind.gamma[0][1][0] == ht2);
  CHECK(ind.gamma[1][1][0] == ht1);
  CHECK(ind.gamma[0][1][1] == -ht1);
  CHECK(ind.gamma[1][1][1] == ht2);

  // it is the Levi-Civita connection of the induced metric
  Connection direct = levi_civita(bf.torus, bf.hprime);
  for (size_t p = 0; p < 2; ++p)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(ind.gamma[p][i][j] == direct.gamma[p][i][j]);
  CHECK(verify_pseudo_riemannian(bf.torus, bf.hprime, ind).pass());

  // induced metric in the formal mode: diag(|lambda|^2 K~, |mu|^2 K~)
  const AlgElement ksym = AlgElement::word_elem(t2, {KSym::K});
  CHECK(bf.hprime.h[0][0] == ksym * half);
  CHECK(bf.hprime.h[1][1] == ksym * half);
  CHECK(bf.hprime.h[0][1].is_zero());

  // constant factor: the induced connection is flat
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  Connection ind1 = induced_connection(b1.emb, lc1);
  for (size_t p = 0; p < 2; ++p)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(ind1.gamma[p][i][j].is_zero());
  Connection direct1 = levi_civita(b1.torus, b1.hprime);
  for (size_t p = 0; p < 2; ++p)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(ind1.gamma[p][i][j] == direct1.gamma[p][i][j]);
}

TEST_CASE("Gauss equation holds in both factor modes") {
  const Scalar lam = lam_half();

  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  Connection ind1 = induced_connection(b1.emb, lc1);
  CHECK(gauss_equation_check(b1.emb, lc1, ind1).pass());

  // spot value at indices (1,2;1,2): phi(h(E1, R(d1,d2)E2)) = |lambda|^2 |mu|^2
  const AlgebraSpec s1 = b1.sphere.alg;
  ModuleVec e1 = mv_zero(s1, 3), e2 = mv_zero(s1, 3);
  e1[0] = AlgElement::unit(s1);
  e2[1] = AlgElement::unit(s1);
  std::vector<Rational> c1{1, 0, 0}, c2{0, 1, 0};
  ModuleVec r = curvature_apply(b1.sphere, lc1, c1, c2, e2);
  AlgElement lhs = b1.emb.f.phi.apply(metric_eval(b1.h, e1, r));
  CHECK(lhs == AlgElement::scalar(b1.torus.alg, Scalar::from_rational(Rational(1, 4))));

  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  Connection lcf = levi_civita(bf.sphere, bf.h);
  Connection indf = induced_connection(bf.emb, lcf);
  CHECK(gauss_equation_check(bf.emb, lcf, indf).pass());
}

TEST_CASE("mean curvature matches the closed form and kills the tangent module") {
  const Scalar lam = lam_half();

  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  const AlgebraSpec t2 = bf.torus.alg;
  Connection lcf = levi_civita(bf.sphere, bf.h);
  GaussWeingarten gwf = gauss_weingarten(bf.emb, lcf);
  MeanCurvatureForm mc = mean_curvature(bf.emb, gwf);
  REQUIRE(mc.on_complement.size() == 1);

  // H(E3) = (|lambda|^2 - |mu|^2) 1 - K~3 K~^{-1}; here lambda = mu
  const AlgElement expect =
      -(AlgElement::word_elem(t2, {KSym::K3}) * AlgElement::word_elem(t2, {KSym::Kinv}));
  CHECK(mc.on_complement[0] == expect);

  // the form vanishes on the tangent submodule
  CHECK(mean_curvature_at(bf.emb, gwf, bf.emb.f.tangent_vec(0)).is_zero());
  CHECK(mean_curvature_at(bf.emb, gwf, bf.emb.f.tangent_vec(1)).is_zero());

  // balanced constant factor: zero mean curvature
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  GaussWeingarten gw1 = gauss_weingarten(b1.emb, lc1);
  MeanCurvatureForm mc1 = mean_curvature(b1.emb, gw1);
  CHECK(mc1.on_complement[0].is_zero());

  // unbalanced scales: H(E3) = (4/5 - 1/5) 1
  TorusInSphere bh = torus_in_sphere(FactorMode::One, lam_heavy(), mu_light());
  Connection lch = levi_civita(bh.sphere, bh.h);
  GaussWeingarten gwh = gauss_weingarten(bh.emb, lch);
  MeanCurvatureForm mch = mean_curvature(bh.emb, gwh);
  CHECK(mch.on_complement[0] ==
        AlgElement::scalar(bh.torus.alg, Scalar::from_rational(Rational(3, 5))));
}

TEST_CASE("minimality verdicts for the embedded torus") {
  const Scalar lam = lam_half();
  const CentralFn zw = CentralFn::one().t_times(1).one_minus_t_times(1);  // t(1-t)

  // balanced scales with constant factor: minimal
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  MinimalityResult m1 = is_minimal(b1.emb, gauss_weingarten(b1.emb, lc1));
  CHECK(m1.minimal);
  CHECK(m1.obstructions[0].is_zero());

  // factor t(1-t) with balanced scales: still minimal
  TorusInSphere bz = torus_in_sphere(FactorMode::Element, lam, lam, zw);
  const AlgebraSpec s = bz.sphere.alg;
  Connection lcz = levi_civita(bz.sphere, bz.h);
  MinimalityResult mz = is_minimal(bz.emb, gauss_weingarten(bz.emb, lcz));
  CHECK(mz.minimal);

  // the minimality criterion evaluates through the factor derivative:
  // d3(t(1-t)) = (1-2t) 2t(1-t), whose image under phi is
  // 2|lambda|^2|mu|^2(|mu|^2-|lambda|^2)
  const AlgElement d3K = Derivation::basis(s, 3).apply(bz.factor);
  const CentralFn d3zw = zw.ddt() * zw + zw.ddt() * zw;
  CHECK(d3K == c_of(s, d3zw));
  CHECK(bz.emb.f.phi.apply(d3K).is_zero());

  // the same factor with unbalanced scales is not minimal
  TorusInSphere bh = torus_in_sphere(FactorMode::Element, lam_heavy(), mu_light(), zw);
  Connection lch = levi_civita(bh.sphere, bh.h);
  const AlgElement d3Kh = Derivation::basis(bh.sphere.alg, 3).apply(bh.factor);
  CHECK(bh.emb.f.phi.apply(d3Kh) ==
        AlgElement::scalar(bh.torus.alg, Scalar::from_rational(Rational(-24, 125))));
  MinimalityResult mh = is_minimal(bh.emb, gauss_weingarten(bh.emb, lch));
  CHECK_FALSE(mh.minimal);
  CHECK(mh.obstructions[0] ==
        AlgElement::scalar(bh.torus.alg, Scalar::from_rational(Rational(9, 5))));

  // unbalanced scales with constant factor: obstruction (|lambda|^2-|mu|^2) 1
  TorusInSphere bu = torus_in_sphere(FactorMode::One, lam_heavy(), mu_light());
  Connection lcu = levi_civita(bu.sphere, bu.h);
  MinimalityResult mu_res = is_minimal(bu.emb, gauss_weingarten(bu.emb, lcu));
  CHECK_FALSE(mu_res.minimal);
  CHECK(mu_res.obstructions[0] ==
        AlgElement::scalar(bu.torus.alg, Scalar::from_rational(Rational(3, 5))));

  // formal factor: the obstruction is (|lambda|^2-|mu|^2) K~ - K~3 after the
  // invertible right factor K~^{-1} is stripped
  TorusInSphere bfh = torus_in_sphere(FactorMode::FormalK, lam_heavy(), mu_light());
  const AlgebraSpec t2 = bfh.torus.alg;
  Connection lcfh = levi_civita(bfh.sphere, bfh.h);
  MinimalityResult mf = is_minimal(bfh.emb, gauss_weingarten(bfh.emb, lcfh));
  CHECK_FALSE(mf.minimal);
  const AlgElement expect = AlgElement::word_elem(t2, {KSym::K}) *
                                Scalar::from_rational(Rational(3, 5)) -
                            AlgElement::word_elem(t2, {KSym::K3});
  CHECK(mf.obstructions[0] == expect);
}

TEST_CASE("second fundamental form is symmetric and right-bilinear") {
  std::mt19937_64 rng(61);
  const Scalar lam = lam_half();
  TorusInSphere b = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc = levi_civita(b.sphere, b.h);
  const Embedding& e = b.emb;

  for (int it = 0; it < 200; ++it) {
    std::vector<Rational> uc{rnd_rat(rng), rnd_rat(rng)}, vc{rnd_rat(rng), rnd_rat(rng)};
    if (uc[0] == 0 && uc[1] == 0) uc[0] = 1;
    if (vc[0] == 0 && vc[1] == 0) vc[1] = 1;
    ModuleVec mu_vec = tangent_combo(e.f, uc), mv_vec = tangent_combo(e.f, vc);

    // symmetry in the two derivation slots
    ModuleVec auv = e.normal(covariant_deriv(b.sphere, lc, psi_combo(e.f, uc), mv_vec));
    ModuleVec avu = e.normal(covariant_deriv(b.sphere, lc, psi_combo(e.f, vc), mu_vec));
    CHECK(mv_eq(auv, avu));

    // right-multiplying the module argument factors out
    AlgElement a = random_element(rng, b.sphere.alg, 2, 2);
    ModuleVec lhs =
        e.normal(covariant_deriv(b.sphere, lc, psi_combo(e.f, uc), mv_scale(mv_vec, a)));
    CHECK(mv_eq(lhs, mv_scale(auv, a)));

    // values lie in the orthogonal complement
    if (it % 10 == 0) CHECK(mv_is_zero(e.tangential(auv)));
  }
}

TEST_CASE("Weingarten map is adjoint to the second fundamental form") {
  std::mt19937_64 rng(62);
  const Scalar lam = lam_half();
  TorusInSphere b = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc = levi_civita(b.sphere, b.h);
  const Embedding& e = b.emb;
  GaussWeingarten gw = gauss_weingarten(e, lc);

  for (int it = 0; it < 200; ++it) {
    const size_t i = it % 2, j = (it / 2) % 2;
    AlgElement a = random_element(rng, b.sphere.alg, 2, 2);
    ModuleVec m = mv_scale(e.f.tangent_vec(j), a);
    AlgElement lhs = metric_eval(b.h, gw.weingarten[0][i], m);
    AlgElement rhs = metric_eval(b.h, e.complement[0], mv_scale(gw.second_form[i][j], a));
    CHECK(lhs == rhs);
  }

  // formal factor, exhaustively over the bases
  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  Connection lcf = levi_civita(bf.sphere, bf.h);
  GaussWeingarten gwf = gauss_weingarten(bf.emb, lcf);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      AlgElement lhs = metric_eval(bf.h, gwf.weingarten[0][i], bf.emb.f.tangent_vec(j));
      AlgElement rhs = metric_eval(bf.h, bf.emb.complement[0], gwf.second_form[i][j]);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("normal connection satisfies the module product rule") {
  std::mt19937_64 rng(63);
  const Scalar lam = lam_half();
  TorusInSphere b = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc = levi_civita(b.sphere, b.h);
  const Embedding& e = b.emb;
  GaussWeingarten gw = gauss_weingarten(e, lc);
  const ModuleVec& xi = e.complement[0];

  for (int it = 0; it < 200; ++it) {
    const size_t i = it % 2;
    std::vector<Rational> ei(2, Rational(0));
    ei[i] = 1;
    AlgElement a = random_element(rng, b.sphere.alg, 2, 2);

    // D_{d_i}(xi a) = (D_{d_i} xi) a + xi psi(d_i)(a)
    ModuleVec lhs = e.normal(covariant_deriv(b.sphere, lc, psi_combo(e.f, ei), mv_scale(xi, a)));
    AlgElement da = psi_derivation(e.f, ei).apply(a);
    ModuleVec rhs = mv_add(mv_scale(gw.normal_conn[0][i], a), mv_scale(xi, da));
    CHECK(mv_eq(lhs, rhs));

    // rational linearity in the derivation slot
    std::vector<Rational> uc{rnd_rat(rng), rnd_rat(rng)};
    ModuleVec dl = e.normal(covariant_deriv(b.sphere, lc, psi_combo(e.f, uc), xi));
    ModuleVec dr = mv_add(mv_scale_rat(gw.normal_conn[0][0], uc[0]),
                          mv_scale_rat(gw.normal_conn[0][1], uc[1]));
    CHECK(mv_eq(dl, dr));
  }
}

TEST_CASE("mean curvature vanishes on the whole tangent submodule") {
  std::mt19937_64 rng(64);
  const Scalar lam = lam_half();
  TorusInSphere b = torus_in_sphere(FactorMode::One, lam, lam);
  Connection lc = levi_civita(b.sphere, b.h);
  GaussWeingarten gw = gauss_weingarten(b.emb, lc);
  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  Connection lcf = levi_civita(bf.sphere, bf.h);
  GaussWeingarten gwf = gauss_weingarten(bf.emb, lcf);

  for (int it = 0; it < 200; ++it) {
    AlgElement a0 = random_element(rng, b.sphere.alg, 2, 2);
    AlgElement a1 = random_element(rng, b.sphere.alg, 2, 2);
    ModuleVec m = mv_add(mv_scale(b.emb.f.tangent_vec(0), a0),
                         mv_scale(b.emb.f.tangent_vec(1), a1));
    CHECK(mean_curvature_at(b.emb, gw, m).is_zero());
    if (it % 5 == 0) {
      AlgElement c0 = random_element(rng, bf.sphere.alg, 1, 1);
      ModuleVec mf = mv_scale(bf.emb.f.tangent_vec(it % 2), c0);
      CHECK(mean_curvature_at(bf.emb, gwf, mf).is_zero());
    }
  }
}

TEST_CASE("mean curvature is independent of the tangent basis") {
  const Scalar lam = lam_half();
  const RatMat id{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  const RatMat shear{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  const RatMat stretch{{Rational(2), Rational(0)}, {Rational(0), Rational(1)}};

  TorusInSphere b = torus_in_sphere(FactorMode::One, lam_heavy(), mu_light());
  Connection lc = levi_civita(b.sphere, b.h);
  CHECK(mean_curvature_basis_independence(b.emb, lc, id).pass());
  CHECK(mean_curvature_basis_independence(b.emb, lc, shear).pass());
  CHECK(mean_curvature_basis_independence(b.emb, lc, stretch).pass());

  TorusInSphere bf = torus_in_sphere(FactorMode::FormalK, lam, lam);
  Connection lcf = levi_civita(bf.sphere, bf.h);
  CHECK(mean_curvature_basis_independence(bf.emb, lcf, shear).pass());
  CHECK(mean_curvature_basis_independence(bf.emb, lcf, stretch).pass());

  // a singular transform is rejected
  const RatMat sing{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK_THROWS_AS(mean_curvature_basis_independence(b.emb, lc, sing), EngineError);
}

TEST_CASE("deformation specialization commutes with the embedding pipeline") {
  std::mt19937_64 rng(65);
  // a representative with a deformation phase: |q^2 (1+i)/2|^2 is still 1/2
  const Scalar lam = Scalar::q_power(2) * lam_half();
  TorusInSphere b = torus_in_sphere(FactorMode::One, lam, lam);
  TorusInSphere b1 = torus_in_sphere(FactorMode::One, lam, lam, CentralFn::one(), true);
  Connection lc = levi_civita(b.sphere, b.h);
  Connection lc1 = levi_civita(b1.sphere, b1.h);
  GaussWeingarten gw = gauss_weingarten(b.emb, lc);
  GaussWeingarten gw1 = gauss_weingarten(b1.emb, lc1);

  // the induced metric is scale-phase independent
  const Scalar half = Scalar::from_rational(Rational(1, 2));
  CHECK(b.hprime.h[0][0] == AlgElement::scalar(b.torus.alg, half));
  CHECK(b1.hprime.h[0][0] == AlgElement::scalar(b1.torus.alg, half));

  // tables specialize entry by entry
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(mv_eq(mv_specialize_one(gw.second_form[i][j]), gw1.second_form[i][j]));
  for (size_t i = 0; i < 2; ++i) {
    CHECK(mv_eq(mv_specialize_one(gw.weingarten[0][i]), gw1.weingarten[0][i]));
    CHECK(mv_eq(mv_specialize_one(gw.normal_conn[0][i]), gw1.normal_conn[0][i]));
  }

  // specialize-then-evaluate equals evaluate-then-specialize for the mean
  // curvature on random module vectors
  for (int it = 0; it < 200; ++it) {
    ModuleVec m = random_module_vec(rng, b.sphere.alg, 3, 2, 2);
    AlgElement lhs = mean_curvature_at(b.emb, gw, m).specialize_one();
    AlgElement rhs = mean_curvature_at(b1.emb, gw1, mv_specialize_one(m));
    CHECK(lhs == rhs);
  }
}
