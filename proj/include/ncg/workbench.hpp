#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ncg/expr.hpp"
#include "ncg/render.hpp"
#include "ncg/submanifold.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// Config files: line-oriented `key = value` pairs with an optional nested
// `hom { ... }` block; `#` starts a comment; lists use `;` separators.

struct WorkbenchConfig {
  std::string algebra = "torus";  // torus | sphere3 | sphere3loc
  bool formal_factor = false;
  std::vector<std::string> metric;  // diagonal entries, expressions
  std::string factor = "one";       // one | K | expression in t
  std::string derivations = "standard";
  std::string format = "text";

  bool has_hom = false;
  std::string codomain = "torus";
  std::string lambda, mu;            // shorthand images lambda*U, mu*V
  std::string image_a, image_b;      // explicit generator images
  std::string preimage_a, preimage_b;
  RatMat psi;
  std::vector<std::vector<Rational>> complement;

  std::string source;  // raw text, for the inputs digest
};

namespace detail {

inline std::string wb_trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> wb_split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(wb_trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(wb_trim(cur));
  return parts;
}

inline Rational wb_rational(const std::string& s, int line) {
  try {
    Rational r(s);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    fail(Err::ConfigError, "line " + std::to_string(line) + ": not a rational: " + s);
  }
}

inline bool wb_bool(const std::string& s, int line) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(Err::ConfigError, "line " + std::to_string(line) + ": not a boolean: " + s);
}

}  // namespace detail

inline WorkbenchConfig parse_workbench_config(const std::string& text) {
  WorkbenchConfig cfg;
  cfg.source = text;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool in_hom = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    s = detail::wb_trim(s);
    if (s.empty()) continue;
    if (s == "hom {") {
      require(!in_hom, Err::ConfigError, "line " + std::to_string(line) + ": nested hom block");
      in_hom = true;
      cfg.has_hom = true;
      continue;
    }
    if (s == "}") {
      require(in_hom, Err::ConfigError, "line " + std::to_string(line) + ": unmatched }");
      in_hom = false;
      continue;
    }
    auto eq = s.find('=');
    require(eq != std::string::npos, Err::ConfigError,
            "line " + std::to_string(line) + ": expected key = value");
    std::string key = detail::wb_trim(s.substr(0, eq));
    std::string val = detail::wb_trim(s.substr(eq + 1));
    require(!val.empty(), Err::ConfigError, "line " + std::to_string(line) + ": empty value");
    if (!in_hom) {
      if (key == "algebra")
        cfg.algebra = val;
      else if (key == "formal_factor")
        cfg.formal_factor = detail::wb_bool(val, line);
      else if (key == "metric")
        cfg.metric = detail::wb_split(val, ';');
      else if (key == "factor")
        cfg.factor = val;
      else if (key == "derivations")
        cfg.derivations = val;
      else if (key == "format")
        cfg.format = val;
      else
        fail(Err::ConfigError, "line " + std::to_string(line) + ": unknown key: " + key);
    } else {
      if (key == "codomain")
        cfg.codomain = val;
      else if (key == "lambda")
        cfg.lambda = val;
      else if (key == "mu")
        cfg.mu = val;
      else if (key == "image_a")
        cfg.image_a = val;
      else if (key == "image_b")
        cfg.image_b = val;
      else if (key == "preimage_a")
        cfg.preimage_a = val;
      else if (key == "preimage_b")
        cfg.preimage_b = val;
      else if (key == "psi") {
        for (const std::string& row : detail::wb_split(val, ';')) {
          std::vector<Rational> r;
          std::istringstream rs(row);
          std::string tok;
          while (rs >> tok) r.push_back(detail::wb_rational(tok, line));
          cfg.psi.push_back(std::move(r));
        }
      } else if (key == "complement") {
        std::vector<Rational> v;
        for (const std::string& c : detail::wb_split(val, ';'))
          v.push_back(detail::wb_rational(c, line));
        cfg.complement.push_back(std::move(v));
      } else {
        fail(Err::ConfigError, "line " + std::to_string(line) + ": unknown hom key: " + key);
      }
    }
  }
  require(!in_hom, Err::ConfigError, "unterminated hom block");
  return cfg;
}

// ---------------------------------------------------------------------------

struct Workbench {
  WorkbenchConfig cfg;
  RealCalculus calc;
  HermitianMetric h;
  AlgElement factor;
  bool has_emb = false;
  Embedding emb;
};

inline AlgebraSpec algebra_from_name(const std::string& name, bool formal) {
  AlgebraSpec s = AlgebraSpec::torus();
  if (name == "torus")
    s = AlgebraSpec::torus();
  else if (name == "sphere3")
    s = AlgebraSpec::sphere3();
  else if (name == "sphere3loc")
    s = AlgebraSpec::sphere3loc();
  else
    fail(Err::ConfigError, "unknown algebra: " + name);
  return formal ? s.with_formal_factor() : s;
}

inline Workbench build_workbench(const WorkbenchConfig& cfg) {
  Workbench wb;
  wb.cfg = cfg;
  require(cfg.derivations == "standard", Err::ConfigError,
          "only the standard derivation basis is supported");
  const AlgebraSpec s = algebra_from_name(cfg.algebra, cfg.formal_factor);
  wb.calc = standard_calculus(s, "E");

  if (cfg.factor == "one")
    wb.factor = metric_factor(s, FactorMode::One);
  else if (cfg.factor == "K")
    wb.factor = metric_factor(s, FactorMode::FormalK);
  else {
    auto fn = parse_element(cfg.factor, s).as_central();
    require(fn.has_value(), Err::ConfigError, "factor must be central");
    wb.factor = metric_factor(s, FactorMode::Element, *fn);
  }

  std::vector<std::string> entries = cfg.metric;
  if (entries.empty()) {
    if (s.is_torus())
      entries = {"1", "1"};
    else
      entries = {"t", "1 - t", "t*(1 - t)"};
  }
  require(entries.size() == wb.calc.dim(), Err::ConfigError,
          "metric needs one diagonal entry per derivation");
  std::vector<AlgElement> diag;
  for (const std::string& e : entries) diag.push_back(parse_element(e, s) * wb.factor);
  wb.h = HermitianMetric::diagonal(diag);

  if (cfg.has_hom) {
    const AlgebraSpec t2 = algebra_from_name(cfg.codomain, cfg.formal_factor);
    RealCalculus cod = standard_calculus(t2, "e");
    AlgElement ia = AlgElement::unit(t2), ib = AlgElement::unit(t2);
    AlgElement pa = AlgElement::unit(s), pb = AlgElement::unit(s);
    if (!cfg.lambda.empty() || !cfg.mu.empty()) {
      require(!cfg.lambda.empty() && !cfg.mu.empty(), Err::ConfigError,
              "lambda and mu must be given together");
      Scalar lam = parse_scalar(cfg.lambda);
      Scalar mu = parse_scalar(cfg.mu);
      require(!lam.is_zero() && !mu.is_zero(), Err::ConfigError,
              "lambda and mu must be nonzero");
      ia = AlgElement::gen_a(t2, 1) * lam;
      ib = AlgElement::gen_b(t2, 1) * mu;
      pa = AlgElement::gen_a(s, 1) * lam.inverse();
      pb = AlgElement::gen_b(s, 1) * mu.inverse();
    } else {
      require(!cfg.image_a.empty() && !cfg.image_b.empty(), Err::ConfigError,
              "hom block needs lambda/mu or image_a/image_b");
      ia = parse_element(cfg.image_a, t2);
      ib = parse_element(cfg.image_b, t2);
      require(!cfg.preimage_a.empty() && !cfg.preimage_b.empty(), Err::ConfigError,
              "explicit images need preimage_a and preimage_b");
      pa = parse_element(cfg.preimage_a, s);
      pb = parse_element(cfg.preimage_b, s);
    }
    AlgebraMorphism phi = AlgebraMorphism::on_generators(s, t2, ia, ib);
    RatMat psi = cfg.psi;
    if (psi.empty()) {
      psi.assign(wb.calc.dim(), std::vector<Rational>(cod.dim(), Rational(0)));
      for (size_t i = 0; i < cod.dim(); ++i) psi[i][i] = 1;
    }
    CalculusHomomorphism hom = construct_hom(wb.calc, cod, phi, psi);
    HermitianMetric hprime = induced_metric(hom, wb.h);
    std::vector<ModuleVec> complement;
    if (cfg.complement.empty()) {
      for (size_t k = cod.dim(); k < wb.calc.dim(); ++k) {
        ModuleVec v = mv_zero(s, wb.calc.dim());
        v[k] = AlgElement::unit(s);
        complement.push_back(std::move(v));
      }
    } else {
      for (const auto& cv : cfg.complement) {
        require(cv.size() == wb.calc.dim(), Err::ConfigError,
                "complement vector has the wrong length");
        ModuleVec v = mv_zero(s, wb.calc.dim());
        for (size_t a = 0; a < cv.size(); ++a)
          v[a] = AlgElement::scalar(s, Scalar::from_rational(cv[a]));
        complement.push_back(std::move(v));
      }
    }
    EmbeddingOptions opts;
    opts.preimages = {pa, pb};
    opts.isometric = true;
    wb.emb = make_embedding(hom, complement, wb.h, hprime, opts);
    wb.has_emb = true;
  }
  return wb;
}

// ---------------------------------------------------------------------------

struct ResultRow {
  std::string name;
  std::string expression;
  std::string status;  // ok | pass | fail | info
};

struct RunResult {
  std::string command;
  std::string digest;
  std::vector<ResultRow> rows;
  int exit_code = 0;
};

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

struct Renderer {
  bool latex = false;
  bool json = false;
  bool q_one = false;

  std::string operator()(const AlgElement& x) const {
    const AlgElement v = q_one ? x.specialize_one() : x;
    return latex ? render_element_latex(v) : render_element(v);
  }

  // Whole module vectors are display-only; JSON sticks to per-component
  // rows so every expression field re-parses as an algebra element.
  std::string vec(const ModuleVec& v, const std::string& sym) const {
    std::string out;
    for (size_t p = 0; p < v.size(); ++p) {
      if (v[p].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += latex ? sym + "_{" + std::to_string(p + 1) + "}\\left(" + (*this)(v[p]) + "\\right)"
                   : sym + "_" + std::to_string(p + 1) + "*(" + (*this)(v[p]) + ")";
    }
    return out.empty() ? "0" : out;
  }
};

inline void add_report(RunResult& rr, const Report& rep) {
  for (const auto& it : rep.items)
    rr.rows.push_back({it.name, it.detail, it.ok ? "pass" : "fail"});
}

inline std::string subscript(size_t b, size_t c) {
  return std::to_string(b + 1) + std::to_string(c + 1);
}

inline void add_connection(RunResult& rr, const Renderer& fmt, const Connection& conn,
                           const std::string& sym) {
  bool any = false;
  for (size_t b = 0; b < conn.n; ++b)
    for (size_t c = 0; c < conn.n; ++c)
      for (size_t p = 0; p < conn.n; ++p)
        if (!conn.gamma[p][b][c].is_zero()) {
          rr.rows.push_back({"Gamma^" + std::to_string(p + 1) + "_" + subscript(b, c) +
                                 " [" + sym + "]",
                             fmt(conn.gamma[p][b][c]), "ok"});
          any = true;
        }
  if (!any) rr.rows.push_back({"connection [" + sym + "]", "0", "ok"});
}

inline void add_module_vec(RunResult& rr, const Renderer& fmt, const std::string& name,
                           const ModuleVec& v, const std::string& sym) {
  bool any = false;
  for (size_t p = 0; p < v.size(); ++p)
    if (!v[p].is_zero()) {
      rr.rows.push_back({name + " @ " + sym + std::to_string(p + 1), fmt(v[p]), "ok"});
      any = true;
    }
  if (!any) rr.rows.push_back({name, "0", "ok"});
}

}  // namespace detail

inline void run_one_command(const Workbench& wb, const std::string& command,
                            const std::string& arg, const detail::Renderer& fmt,
                            RunResult& rr) {
  const RealCalculus& calc = wb.calc;
  auto need_emb = [&]() {
    require(wb.has_emb, Err::ConfigError, "command \"" + command + "\" needs a hom block");
  };
  if (command == "validate") {
    detail::add_report(rr, validate_real_metric_calculus(calc, wb.h));
    if (wb.has_emb) {
      detail::add_report(rr, wb.emb.f.phi.validate());
      rr.rows.push_back({"embedding is isometric with orthogonal complement", "",
                         wb.emb.isometric ? "pass" : "fail"});
    }
  } else if (command == "levi-civita") {
    Connection lc = levi_civita(calc, wb.h);
    if (fmt.json) {
      detail::add_connection(rr, fmt, lc, calc.basis_symbol);
    } else {
      bool abelian = true;
      for (const auto& plane : calc.lie.f)
        for (const auto& row : plane)
          for (const auto& e : row)
            if (e != 0) abelian = false;
      for (size_t b = 0; b < lc.n; ++b)
        for (size_t c = abelian ? b : 0; c < lc.n; ++c)
          rr.rows.push_back({"nabla_" + std::to_string(b + 1) + " " + calc.basis_symbol +
                                 std::to_string(c + 1),
                             fmt.vec(lc.christoffel_column(b, c), calc.basis_symbol), "ok"});
    }
    detail::add_report(rr, verify_pseudo_riemannian(calc, wb.h, lc));
  } else if (command == "curvature") {
    Connection lc = levi_civita(calc, wb.h);
    CurvatureTensor r = curvature(calc, lc);
    bool any = false;
    for (size_t a = 0; a < r.n; ++a)
      for (size_t b = a + 1; b < r.n; ++b)
        for (size_t c = 0; c < r.n; ++c)
          if (!mv_is_zero(r(a, b, c))) {
            detail::add_module_vec(rr, fmt,
                                   "R(d" + std::to_string(a + 1) + ",d" +
                                       std::to_string(b + 1) + ")" + calc.basis_symbol +
                                       std::to_string(c + 1),
                                   r(a, b, c), calc.basis_symbol);
            any = true;
          }
    if (!any) rr.rows.push_back({"curvature", "0", "ok"});
  } else if (command == "laplacian") {
    require(!arg.empty(), Err::ConfigError, "laplacian needs an expression argument");
    AlgElement x = parse_element(arg, calc.alg);
    Connection lc = levi_civita(calc, wb.h);
    rr.rows.push_back({"laplace(" + arg + ")", fmt(laplacian(calc, wb.h, lc, x)), "ok"});
  } else if (command == "hom-check") {
    need_emb();
    detail::add_report(rr, wb.emb.f.phi.validate());
    rr.rows.push_back({"psi is a Lie algebra homomorphism", "", "pass"});
    rr.rows.push_back({"compatibility delta(phi(g)) = phi(psi(delta)(g))", "", "pass"});
    for (size_t i = 0; i < wb.emb.f.tangent_rank(); ++i) {
      ModuleVec img = wb.emb.f.psi_hat(wb.emb.f.tangent_vec(i));
      detail::add_module_vec(rr, fmt, "psi-hat(Psi(d" + std::to_string(i + 1) + "))", img,
                             wb.emb.f.cod.basis_symbol);
    }
  } else if (command == "embed") {
    need_emb();
    for (size_t i = 0; i < wb.emb.f.cod.dim(); ++i)
      for (size_t j = 0; j < wb.emb.f.cod.dim(); ++j)
        if (!wb.emb.hprime.h[i][j].is_zero())
          rr.rows.push_back({"h'_" + detail::subscript(i, j), fmt(wb.emb.hprime.h[i][j]), "ok"});
    rr.rows.push_back({"surjectivity certificate verified", "", "pass"});
    rr.rows.push_back({"complement is orthogonal", "", wb.emb.isometric ? "pass" : "fail"});
  } else if (command == "alpha") {
    need_emb();
    Connection amb = levi_civita(calc, wb.h);
    GaussWeingarten gw = gauss_weingarten(wb.emb, amb);
    const size_t np = wb.emb.f.cod.dim();
    for (size_t i = 0; i < np; ++i)
      for (size_t j = 0; j < np; ++j)
        detail::add_module_vec(
            rr, fmt,
            "alpha(d" + std::to_string(i + 1) + ",Psi(d" + std::to_string(j + 1) + "))",
            gw.second_form[i][j], calc.basis_symbol);
    for (size_t k = 0; k < wb.emb.complement.size(); ++k)
      for (size_t i = 0; i < np; ++i) {
        detail::add_module_vec(rr, fmt,
                               "A_xi" + std::to_string(k + 1) + "(d" + std::to_string(i + 1) + ")",
                               gw.weingarten[k][i], calc.basis_symbol);
        detail::add_module_vec(rr, fmt,
                               "D_d" + std::to_string(i + 1) + " xi" + std::to_string(k + 1),
                               gw.normal_conn[k][i], calc.basis_symbol);
      }
  } else if (command == "gauss-check") {
    need_emb();
    Connection amb = levi_civita(calc, wb.h);
    Connection ind = induced_connection(wb.emb, amb);
    detail::add_report(rr, gauss_equation_check(wb.emb, amb, ind));
    detail::add_report(rr, verify_pseudo_riemannian(wb.emb.f.cod, wb.emb.hprime, ind));
  } else if (command == "mean-curvature") {
    need_emb();
    Connection amb = levi_civita(calc, wb.h);
    GaussWeingarten gw = gauss_weingarten(wb.emb, amb);
    MeanCurvatureForm h = mean_curvature(wb.emb, gw);
    for (size_t k = 0; k < h.on_complement.size(); ++k)
      rr.rows.push_back({"H(xi" + std::to_string(k + 1) + ")", fmt(h.on_complement[k]), "ok"});
  } else if (command == "minimal") {
    need_emb();
    Connection amb = levi_civita(calc, wb.h);
    GaussWeingarten gw = gauss_weingarten(wb.emb, amb);
    MinimalityResult mr = is_minimal(wb.emb, gw);
    rr.rows.push_back({"minimal", mr.minimal ? "yes" : "no", mr.minimal ? "pass" : "fail"});
    for (size_t k = 0; k < mr.obstructions.size(); ++k)
      if (!mr.obstructions[k].is_zero())
        rr.rows.push_back(
            {"obstruction(xi" + std::to_string(k + 1) + ")", fmt(mr.obstructions[k]), "info"});
  } else {
    fail(Err::ConfigError, "unknown command: " + command);
  }
}

inline RunResult run_workbench(const Workbench& wb, const std::string& command,
                               const std::string& arg, const std::string& format,
                               bool q_one, bool check_all) {
  require(format == "text" || format == "latex" || format == "json", Err::ConfigError,
          "format must be text, latex or json");
  detail::Renderer fmt{format == "latex", format == "json", q_one};
  RunResult rr;
  rr.command = command;
  rr.digest = fnv1a_hex(wb.cfg.source + "\n" + command + "\n" + arg + "\n" + format + "\n" +
                        (q_one ? "one" : "formal"));
  if (check_all) {
    std::vector<std::string> cmds{"validate", "levi-civita", "curvature"};
    if (wb.has_emb)
      for (const char* c : {"hom-check", "embed", "alpha", "gauss-check", "mean-curvature"})
        cmds.push_back(c);
    for (const auto& c : cmds) run_one_command(wb, c, "", fmt, rr);
  } else {
    run_one_command(wb, command, arg, fmt, rr);
  }
  for (const auto& row : rr.rows)
    if (row.status == "fail") rr.exit_code = 1;
  return rr;
}

inline std::string render_run_text(const RunResult& rr) {
  std::string out = "# " + rr.command + " (digest " + rr.digest + ")\n";
  for (const auto& row : rr.rows) {
    out += row.name;
    if (!row.expression.empty()) out += " = " + row.expression;
    if (row.status != "ok") out += "  [" + row.status + "]";
    out += "\n";
  }
  return out;
}

}  // namespace ncg
