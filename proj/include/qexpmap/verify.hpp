#pragma once

// Verification suites. Each suite is a list of independent checks; the
// exact run uses the rational field (and the radical field wherever the
// symmetric normalization is involved), "specialize" re-runs everything in
// floating point at random parameter points.

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qexpmap/expmap.hpp"

namespace qexpmap {

struct SuiteOptions {
  int max_j2 = 3;              // spins 1/2 .. max_j2/2
  std::optional<int> j2, z2;   // restrict to one label
  int max_len = 4;             // confluence word length
  int points = 5;              // specialization points
  std::uint64_t seed = 20240101;
  std::size_t guard = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "relations", "qdet", "lie-coords", "confluence", "closed-vs-factorized", "comodule", "rep-relations",
      "pi-homomorphism", "rll", "delta-l", "pi-t-vs-r", "tprime-r", "quasitriangular", "printed", "specialize", "all"};
  return names;
}

inline bool is_suite(const std::string& s) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), s) != n.end();
}

/// The algebras a suite runs in: A with two parameters, A at p = q, and U.
template <class F>
struct Engines {
  AAlgebra<F> A;
  AAlgebra<F> Au;
  UAlgebra<F> U;
  Engines(F two_param, F one_param, std::size_t guard)
      : A(two_param, false, guard), Au(one_param, true, guard), U(one_param, guard) {}
};

/// (j, z) labels for T-matrix suites: z in {j, j-1/2, j-1}.
inline std::vector<SpinLabel> t_labels(const SuiteOptions& o) {
  std::vector<SpinLabel> out;
  if (o.j2) {
    if (o.z2) return {{*o.j2, *o.z2}};
    for (int dz = 0; dz <= 2; ++dz) out.push_back({*o.j2, *o.j2 - dz});
    return out;
  }
  for (int j2 = 1; j2 <= o.max_j2; ++j2)
    for (int dz = 0; dz <= 2; ++dz) out.push_back({j2, j2 - dz});
  return out;
}

inline std::vector<int> l_spins(const SuiteOptions& o) {
  if (o.j2) return {*o.j2};
  return {1, 2};
}

namespace detail {

template <class F>
Report confluence_report(const Presentation<F>& p, const std::string& algebra, int max_len) {
  Report r{"confluence"};
  r.params["algebra"] = algebra;
  r.params["max_len"] = max_len;
  const auto c = confluence_check(p, max_len);
  r.identities = c.words_checked;
  for (const auto& ce : c.counterexamples) r.fail("diamond", Json(ce));
  return r;
}

}  // namespace detail

/// Runs one suite (not "all" or "specialize"). E carries the fields for
/// rational-normalization checks, Es those for the symmetric ones.
template <class F, class Fs>
std::vector<Report> run_core_suite(const std::string& name, const Engines<F>& e, const Engines<Fs>& es,
                                   const SuiteOptions& o) {
  std::vector<Report> out;
  if (name == "relations") {
    out.push_back(relations_check(e.A));
    out.push_back(coproduct_checks(e.A));
  } else if (name == "qdet") {
    out.push_back(qdet_checks(e.A));
  } else if (name == "lie-coords") {
    out.push_back(verify_exponential_coords(e.A));
  } else if (name == "confluence") {
    out.push_back(detail::confluence_report(*e.A.pres(), "A", o.max_len));
    out.push_back(detail::confluence_report(*e.U.pres(), "U", o.max_len));
  } else if (name == "closed-vs-factorized") {
    for (const auto& l : t_labels(o)) {
      out.push_back(closed_vs_factorized_check(e.A, l, Normalization::rational));
      out.push_back(closed_vs_factorized_check(es.A, l, Normalization::symmetric));
      out.push_back(z_shift_check(e.A, l, Normalization::rational));
    }
  } else if (name == "comodule") {
    for (const auto& l : t_labels(o)) out.push_back(comodule_check(e.A, l));
  } else if (name == "rep-relations") {
    const int top = o.j2 ? *o.j2 : std::max(4, o.max_j2);
    for (int j2 = o.j2 ? *o.j2 : 0; j2 <= top; ++j2)
      for (int z2 : {j2, 1}) {
        out.push_back(rep_relations_check({j2, z2}, Normalization::rational, e.A.scalars()));
        out.push_back(rep_relations_check({j2, z2}, Normalization::symmetric, es.A.scalars()));
      }
    for (int j2 = o.j2 ? *o.j2 : 0; j2 <= (o.j2 ? *o.j2 : o.max_j2); ++j2)
      out.push_back(similarity_check({j2, j2}, es.A.scalars()));
    out.push_back(u_coproduct_checks(e.U));
  } else if (name == "pi-homomorphism") {
    for (int s : {1, -1}) out.push_back(pi_homomorphism_check(s, e.Au, e.U));
  } else if (name == "rll") {
    for (int j2 : l_spins(o))
      for (const auto& [s1, s2] : {std::pair{1, 1}, std::pair{-1, -1}, std::pair{1, -1}})
        out.push_back(rll_check(s1, s2, j2, e.Au, e.U));
  } else if (name == "delta-l") {
    for (int j2 : l_spins(o))
      for (int s : {1, -1}) out.push_back(delta_l_check(s, j2, e.Au, e.U));
    for (int j2 = 1; j2 <= (o.j2 ? *o.j2 : o.max_j2); ++j2)
      for (int s : {1, -1}) out.push_back(l_shape_check(s, j2, e.Au, e.U));
  } else if (name == "pi-t-vs-r") {
    for (int j2 : l_spins(o))
      for (int s : {1, -1}) out.push_back(pi_t_vs_r_check(s, j2, e.Au, e.U));
  } else if (name == "tprime-r") {
    for (int s : {1, -1})
      for (const auto& [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}})
        out.push_back(tprime_r_check(s, a, b, e.Au, e.U));
  } else if (name == "quasitriangular") {
    const auto ctx = e.A.scalars();
    for (const auto& [l1, l2] : {std::pair{SpinLabel{1, 1}, SpinLabel{1, 1}}, std::pair{SpinLabel{1, 1}, SpinLabel{2, 1}},
                                 std::pair{SpinLabel{1, -1}, SpinLabel{2, 0}}, std::pair{SpinLabel{2, 2}, SpinLabel{2, -2}}})
      out.push_back(quasitriangularity_check(l1, l2, ctx));
  } else if (name == "printed") {
    out.push_back(t_reference_check(es.A));
    for (int j2 : {1, 2})
      for (int s : {1, -1}) out.push_back(l_reference_check(s, j2, es.Au, es.U));
    out.push_back(r_reference_check(e.A.scalars()));
  } else {
    throw UsageError("unknown suite " + name);
  }
  return out;
}

/// Suites that make sense in floating point: everything but confluence,
/// whose outcome does not depend on the coefficient field.
inline std::vector<std::string> specializable_suites() {
  std::vector<std::string> out;
  for (const auto& s : suite_names())
    if (s != "confluence" && s != "specialize" && s != "all") out.push_back(s);
  return out;
}

struct SpecialPoint {
  mpq_class p, q, u;  // (p, q) for the two-parameter algebra, p = q = u for U
};

/// Random generic points with small numerators and denominators.
inline std::vector<SpecialPoint> special_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(2, 9);
  auto draw = [&] {
    for (;;) {
      mpq_class r(small(rng), small(rng));
      r.canonicalize();
      if (r != 1) return r;
    }
  };
  std::vector<SpecialPoint> out;
  while (static_cast<int>(out.size()) < count) {
    SpecialPoint pt{draw(), draw(), draw()};
    if (pt.p * pt.q == 1) continue;
    out.push_back(pt);
  }
  return out;
}

inline std::vector<Report> run_specialize(const SuiteOptions& o, const std::vector<std::string>& suites) {
  std::vector<Report> out;
  for (const auto& pt : special_points(o.points, o.seed)) {
    NumericField two, one;
    two.at = NumericParams::from_pq(pt.p, pt.q);
    one.at = NumericParams::from_pq(pt.u, pt.u);
    const Engines<NumericField> e(two, one, o.guard);
    const std::string label = "p=" + to_string(pt.p) + ",q=" + to_string(pt.q) + ",q'=" + to_string(pt.u);
    for (const auto& s : suites)
      for (auto r : run_core_suite(s, e, e, o)) {
        r.params["point"] = label;
        r.check = "specialize/" + r.check;
        out.push_back(std::move(r));
      }
  }
  return out;
}

inline void sort_reports(std::vector<Report>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const Report& a, const Report& b) {
    if (a.check != b.check) return a.check < b.check;
    return a.params.dump() < b.params.dump();
  });
}

inline std::vector<Report> run_exact_suite(const std::string& name, const SuiteOptions& o) {
  const Engines<ExactField> e(ExactField{}, ExactField{}, o.guard);
  const Engines<RadicalField> es(RadicalField{}, RadicalField{}, o.guard);
  return run_core_suite(name, e, es, o);
}

/// Runs a suite by name; "all" runs every suite concurrently and merges
/// the reports in a fixed order.
inline std::vector<Report> run_suite(const std::string& name, const SuiteOptions& o) {
  std::vector<Report> out;
  if (name == "specialize") {
    out = run_specialize(o, specializable_suites());
  } else if (name == "all") {
    std::vector<std::future<std::vector<Report>>> jobs;
    for (const auto& s : suite_names()) {
      if (s == "all" || s == "specialize") continue;
      jobs.push_back(std::async(std::launch::async, [s, o] { return run_exact_suite(s, o); }));
    }
    for (const auto& s : specializable_suites())
      jobs.push_back(std::async(std::launch::async, [s, o] { return run_specialize(o, {s}); }));
    for (auto& j : jobs) {
      auto part = j.get();
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  } else {
    out = run_exact_suite(name, o);
  }
  sort_reports(out);
  return out;
}

inline bool all_pass(const std::vector<Report>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Report& r) { return r.pass; });
}

}  // namespace qexpmap
