// qexpmap command-line front end.
//
// Exit codes: 0 success, 1 failed identity or golden mismatch, 2 usage or
// input error, 3 term-count guard exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qexpmap/golden.hpp"
#include "qexpmap/render.hpp"
#include "qexpmap/verify.hpp"

using namespace qexpmap;

namespace {

struct Common {
  std::string format = "text";
  std::string norm = "symmetric";
  std::string p, q;
  std::size_t guard = 0;

  Format fmt() const { return format == "json" ? Format::json : format == "latex" ? Format::latex : Format::text; }
  Normalization normalization() const {
    return norm == "rational" ? Normalization::rational : Normalization::symmetric;
  }
  bool numeric() const { return !p.empty() || !q.empty(); }
};

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || r.set_str(s, 10) != 0) throw UsageError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw UsageError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

NumericField numeric_field(const Common& c, bool unit_lambda) {
  if (c.p.empty() || c.q.empty()) throw UsageError("--p and --q must be given together");
  const mpq_class p = parse_rational(c.p), q = parse_rational(c.q);
  if (unit_lambda && p != q) throw UsageError("this object lives at p = q; pass equal --p and --q");
  NumericField f;
  f.at = NumericParams::from_pq(p, q);
  return f;
}

int half_units(const std::string& s, const char* what) {
  try {
    return half_units_from_string(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + " '" + s + "'");
  }
}

Json envelope(const std::string& kind, Json params, Json body) {
  Json o;
  o["kind"] = kind;
  o["params"] = std::move(params);
  o["result"] = std::move(body);
  return o;
}

template <class F>
void emit_poly_matrix(const Matrix<NCPoly<F>>& m, const Common& c, const std::string& kind, const Json& params,
                      bool unit_lambda) {
  if (c.fmt() == Format::json) {
    std::cout << envelope(kind, params, to_json(m)).dump(1) << "\n";
    return;
  }
  std::cout << render_matrix(m, RenderStyle{c.fmt(), unit_lambda}) << "\n";
}

template <class S>
void emit_scalar_matrix(const Matrix<S>& m, const Common& c, const std::string& kind, const Json& params) {
  if (c.fmt() == Format::json) {
    std::cout << envelope(kind, params, scalar_matrix_json(m)).dump(1) << "\n";
    return;
  }
  std::cout << render_scalar_matrix(m, RenderStyle{c.fmt(), false}) << "\n";
}

template <class F>
void normal_order_in(const std::string& algebra, const std::string& expr, const Common& c, F field) {
  NCPoly<F> x;
  bool unit = algebra == "U";
  if (algebra == "A") {
    const AAlgebra<F> A(field, false, c.guard);
    x = A.parse(expr);
  } else {
    const UAlgebra<F> U(field, c.guard);
    x = U.parse(expr);
  }
  if (c.fmt() == Format::json) {
    Json params;
    params["algebra"] = algebra;
    params["input"] = expr;
    std::cout << envelope("normal-order", params, to_json(x)).dump(1) << "\n";
  } else {
    std::cout << render(x, RenderStyle{c.fmt(), unit}) << "\n";
  }
}

template <class F>
void tmatrix_in(SpinLabel l, const Common& c, F field) {
  const AAlgebra<F> A(field, false, c.guard);
  Json params;
  params["j"] = half_units_string(l.j2);
  params["z"] = half_units_string(l.z2);
  params["norm"] = to_string(c.normalization());
  emit_poly_matrix(t_matrix_closed(A, l, c.normalization()).entries, c, "tmatrix", params, false);
}

template <class F>
void lmatrix_in(int sign, int j2, const Common& c, F field) {
  const AAlgebra<F> A(field, true, c.guard);
  const UAlgebra<F> U(field, c.guard);
  Json params;
  params["sign"] = sign > 0 ? "+" : "-";
  params["j"] = half_units_string(j2);
  params["norm"] = to_string(c.normalization());
  emit_poly_matrix(l_matrix(sign, j2, c.normalization(), A, U).entries, c, "lmatrix", params, true);
}

template <class F>
void rmatrix_in(SpinLabel l1, SpinLabel l2, const Common& c, F field) {
  const ScalarContext<F> ctx{field, false};
  Json params;
  params["j1"] = half_units_string(l1.j2);
  params["z1"] = half_units_string(l1.z2);
  params["j2"] = half_units_string(l2.j2);
  params["z2"] = half_units_string(l2.z2);
  params["norm"] = to_string(c.normalization());
  emit_scalar_matrix(r_matrix_rep(l1, l2, c.normalization(), ctx), c, "rmatrix", params);
}

/// Runs fn with the field matching the options: numeric when --p/--q are
/// given, otherwise radical for the symmetric normalization and rational
/// for the rational one.
template <class Fn>
void with_field(const Common& c, bool unit_lambda, Fn&& fn) {
  if (c.numeric()) {
    fn(numeric_field(c, unit_lambda));
  } else if (c.normalization() == Normalization::symmetric) {
    fn(RadicalField{});
  } else {
    fn(ExactField{});
  }
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int golden(const std::string& action, const std::string& path) {
  const std::string text = golden_text();
  if (action == "record") {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    out << text;
    return 0;
  }
  const auto stored = read_file(path);
  if (!stored) {
    std::cerr << "cannot read " << path << "\n";
    return 2;
  }
  if (*stored == text) return 0;
  Json expected;
  try {
    expected = Json::parse(*stored);
  } catch (const Json::parse_error& e) {
    std::cerr << "golden file is not valid JSON: " << e.what() << "\n";
    return 1;
  }
  const auto diffs = golden_differences(expected, golden_document());
  std::cerr << "golden mismatch";
  if (diffs.empty()) std::cerr << " (formatting only)";
  std::cerr << "\n";
  for (const auto& d : diffs) std::cerr << "  " << d << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exponential map for GL_{p,q}(2) and U_{p,q}(gl(2))"};
  app.require_subcommand(1);
  Common c;
  if (const char* g = std::getenv("QEXPMAP_GUARD")) c.guard = std::strtoull(g, nullptr, 10);

  auto add_common = [&](CLI::App* sub, bool norm) {
    sub->add_option("--format", c.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    sub->add_option("--p", c.p, "numeric value of p as r/s");
    sub->add_option("--q", c.q, "numeric value of q as r/s");
    if (norm) sub->add_option("--norm", c.norm, "symmetric or rational")->check(CLI::IsMember({"symmetric", "rational"}));
  };

  std::string algebra = "A", expr;
  auto* no = app.add_subcommand("normal-order", "normal form of an expression");
  no->add_option("--algebra", algebra, "A or U")->check(CLI::IsMember({"A", "U"}));
  no->add_option("expr", expr, "expression")->required();
  add_common(no, false);

  std::string j = "1/2", z = "1/2";
  auto* tm = app.add_subcommand("tmatrix", "the matrix T^(j;z)");
  tm->add_option("--j", j)->required();
  tm->add_option("--z", z)->required();
  add_common(tm, true);

  std::string sign = "+";
  auto* lm = app.add_subcommand("lmatrix", "the L-matrix L^(+-j)");
  lm->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}))->required();
  lm->add_option("--j", j)->required();
  add_common(lm, true);

  std::string j1 = "1/2", z1 = "1/2", jb = "1/2", zb = "1/2";
  auto* rm = app.add_subcommand("rmatrix", "the R-matrix on spin j1 (x) spin j2");
  rm->add_option("--j1", j1)->required();
  rm->add_option("--z1", z1);
  rm->add_option("--j2", jb)->required();
  rm->add_option("--z2", zb);
  add_common(rm, true);

  std::string suite = "all", out_path, vj, vz, max_j = "3/2";
  SuiteOptions so;
  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  vf->add_option("--j", vj, "restrict to one spin");
  vf->add_option("--z", vz, "restrict to one z");
  vf->add_option("--max-j", max_j, "largest spin for T-matrix suites");
  vf->add_option("--max-len", so.max_len, "confluence word length")->check(CLI::Range(3, 6));
  vf->add_option("--points", so.points, "specialization points")->check(CLI::Range(1, 100));
  vf->add_option("--seed", so.seed, "specialization seed");
  vf->add_option("--out", out_path, "write the report here instead of stdout");

  std::string action, golden_path;
  auto* gd = app.add_subcommand("golden", "record or compare the golden matrices");
  gd->add_option("action", action)->check(CLI::IsMember({"record", "compare"}))->required();
  gd->add_option("--path", golden_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*no) {
      if (c.numeric()) {
        normal_order_in(algebra, expr, c, numeric_field(c, algebra == "U"));
      } else {
        normal_order_in(algebra, expr, c, ExactField{});
      }
    } else if (*tm) {
      const SpinLabel l{half_units(j, "j"), half_units(z, "z")};
      validate(l);
      with_field(c, false, [&](auto f) { tmatrix_in(l, c, f); });
    } else if (*lm) {
      const int j2 = half_units(j, "j");
      validate(SpinLabel{j2, 0});
      with_field(c, true, [&](auto f) { lmatrix_in(sign == "+" ? 1 : -1, j2, c, f); });
    } else if (*rm) {
      const SpinLabel l1{half_units(j1, "j1"), half_units(z1, "z1")}, l2{half_units(jb, "j2"), half_units(zb, "z2")};
      validate(l1);
      validate(l2);
      with_field(c, false, [&](auto f) { rmatrix_in(l1, l2, c, f); });
    } else if (*vf) {
      so.guard = c.guard;
      so.max_j2 = half_units(max_j, "max-j");
      if (!vj.empty()) so.j2 = half_units(vj, "j");
      if (!vz.empty()) so.z2 = half_units(vz, "z");
      if (so.z2 && !so.j2) throw UsageError("--z needs --j");
      if (so.j2) validate(SpinLabel{*so.j2, so.z2.value_or(*so.j2)});
      const auto reports = run_suite(suite, so);
      Json doc;
      doc["suite"] = suite;
      doc["pass"] = all_pass(reports);
      Json list = Json::array();
      for (const auto& r : reports) list.push_back(r.to_json());
      doc["reports"] = std::move(list);
      if (out_path.empty()) {
        std::cout << doc.dump(1) << "\n";
      } else {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write " + out_path);
        out << doc.dump(1) << "\n";
      }
      return all_pass(reports) ? 0 : 1;
    } else if (*gd) {
      return golden(action, golden_path);
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
