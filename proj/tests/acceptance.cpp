// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qexpmap/golden.hpp"
#include "qexpmap/verify.hpp"

using namespace qexpmap;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t identities = 0;
  std::vector<std::string> notes;

  void add(const Report& r) {
    pass = pass && r.pass;
    identities += r.identities;
    if (!r.pass) notes.push_back("failed: " + r.check + " " + r.params.dump());
  }
  void add(const std::vector<Report>& rs) {
    for (const auto& r : rs) add(r);
  }
};

int failures = 0;

void line(int n, const std::string& what, const Outcome& o) {
  if (!o.pass) ++failures;
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << what << " (" << o.identities
            << " identities)";
  for (const auto& s : o.notes) std::cout << "; " << s;
  std::cout << std::endl;
}

std::vector<Report> suite(const std::string& name, const SuiteOptions& o) { return run_exact_suite(name, o); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string golden_path = argc > 1 ? argv[1] : QEXPMAP_GOLDEN_PATH;
  SuiteOptions o;
  o.max_j2 = 3;
  o.points = 5;

  const AAlgebra<ExactField> A(ExactField{}, false);
  const UAlgebra<ExactField> U(ExactField{});
  const AAlgebra<RadicalField> Ar(RadicalField{}, false);
  const AAlgebra<RadicalField> Aur(RadicalField{}, true);
  const UAlgebra<RadicalField> Ur(RadicalField{});

  {
    Outcome c;
    c.add(suite("relations", o));
    c.add(suite("qdet", o));
    line(1, "defining relations, determinant forms, group-like determinant, counit axiom", c);
  }
  {
    Outcome c;
    c.add(suite("lie-coords", o));
    line(2, "exponentiated Lie relations of the coordinates", c);
  }
  {
    Outcome c;
    for (const auto& [name, pres] : {std::pair{"A", A.pres()}, std::pair{"U", U.pres()}}) {
      const auto r = confluence_check(*pres, 3);
      c.identities += r.words_checked;
      if (!r.confluent()) {
        c.pass = false;
        c.notes.push_back(std::string(name) + " length 3: " + r.counterexamples.front());
      }
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto r4 = confluence_check(*A.pres(), 4);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.identities += r4.words_checked;
    if (!r4.confluent()) {
      c.pass = false;
      c.notes.push_back("A length 4: " + r4.counterexamples.front());
    }
    if (secs > 60) {
      c.pass = false;
      c.notes.push_back("A length 4 took " + std::to_string(secs) + " s");
    }
    std::ostringstream what;
    what << "confluence, both presentations to length 3, A to length 4 in " << secs << " s";
    line(3, what.str(), c);
  }
  {
    Outcome c;
    c.add(t_reference_check(Ar));
    line(4, "T(1/2;1/2) and T(1;1/2) equal the printed matrices", c);
  }
  {
    Outcome c;
    c.add(suite("closed-vs-factorized", o));
    line(5, "closed T equals factorized T, j = 1/2, 1, 3/2 and z = j, j-1/2, j-1", c);
  }
  {
    Outcome c;
    c.add(suite("comodule", o));
    line(6, "comodule property of T for the same labels", c);
  }
  {
    Outcome c;
    c.add(suite("rep-relations", o));
    line(7, "representation relations for j <= 2, similarity of normalizations for j <= 3/2", c);
  }
  {
    Outcome c;
    c.add(suite("pi-homomorphism", o));
    line(8, "pi+ and pi- are homomorphisms sending the determinant to 1", c);
  }
  {
    Outcome c;
    for (int j2 : {1, 2})
      for (int s : {1, -1}) c.add(l_reference_check(s, j2, Aur, Ur));
    line(9, "L+-(1/2) and L+-(1) equal the printed matrices", c);
  }
  {
    Outcome c;
    c.add(suite("rll", o));
    line(10, "RLL relations for sign pairs ++, --, +- at j = 1/2, 1", c);
  }
  {
    Outcome c;
    c.add(suite("delta-l", o));
    line(11, "coproduct of L+-(j) for j = 1/2, 1", c);
  }
  {
    Outcome c;
    const auto r = r_reference_check(A.scalars());
    c.add(r);
    if (!r.note.empty()) c.notes.push_back(r.note);
    c.add(suite("quasitriangular", o));
    line(12, "R(1/2,1/2) from the universal R equals the printed 4x4, quasitriangularity", c);
  }
  {
    Outcome c;
    for (const auto& r : suite("pi-t-vs-r", o)) {
      c.add(r);
      if (r.params.value("sign", "") == "-" && !r.note.empty() && c.notes.empty()) c.notes.push_back("pi-: " + r.note);
    }
    line(13, "images of T under pi+ and pi- against R, j = 1/2, 1", c);
  }
  {
    Outcome c;
    std::string minus_outcome, plus_outcome;
    for (const auto& r : suite("tprime-r", o)) {
      c.add(r);
      const std::string oc = r.params.value("outcome", "");
      std::string& slot = r.params.value("sign", "") == "-" ? minus_outcome : plus_outcome;
      if (slot.empty()) slot = oc;
      else if (slot != oc) slot = "mixed";
    }
    c.notes.push_back("pi+ outcome " + plus_outcome);
    c.notes.push_back("pi- outcome " + minus_outcome);
    line(14, "T' against R for both signs, (j1, j2) in {(1/2,1/2), (1/2,1), (1,1/2), (1,1)}", c);
  }
  {
    Outcome c;
    const auto rs = run_specialize(o, specializable_suites());
    c.add(rs);
    std::ostringstream what;
    what << "every exact suite re-checked at " << o.points << " random (p,q) points, relative tolerance 1e-10 ("
         << rs.size() << " reports)";
    line(15, what.str(), c);
  }
  {
    Outcome c;
    const std::string first = golden_text(), second = golden_text();
    const std::string recorded = read_file(golden_path);
    c.identities = 2;
    if (first != second) {
      c.pass = false;
      c.notes.push_back("two runs differ");
    }
    if (recorded.empty()) {
      c.pass = false;
      c.notes.push_back("no recorded file at " + golden_path);
    } else if (recorded != first) {
      c.pass = false;
      for (const auto& d : golden_differences(Json::parse(recorded, nullptr, false), golden_document()))
        c.notes.push_back(d);
    }
    line(16, "golden JSON of the printed matrices is byte-stable", c);
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
