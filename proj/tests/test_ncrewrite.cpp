#include <map>
#include <random>
#include <string>

#include "doctest.h"
#include "qexpmap/json_io.hpp"
#include "qexpmap/qalg_u.hpp"
#include "qexpmap/qgroup_a.hpp"
#include "qexpmap/render.hpp"

using namespace qexpmap;

namespace {

using Poly = NCPoly<ExactField>;

const PresentationPtr<ExactField>& apq() {
  static const auto p = apq_presentation<ExactField>();
  return p;
}

Poly P(const std::string& s) { return parse(s, apq()); }
Poly N(const std::string& s) { return normal_order(P(s)); }

bool same(const Poly& x, const Poly& y) { return normal_order(x - y).is_zero(); }

// Unnormalized random word over a, a^-1, b, c, d and D^{+-1/2}.
Poly random_word(std::mt19937& rng, int max_len, bool with_inverse = true) {
  static const char* letters[] = {"a", "b", "c", "d", "a^-1", "D^(1/2)", "D^(-1/2)"};
  std::uniform_int_distribution<int> len(0, max_len), pick(0, with_inverse ? 6 : 3);
  Poly w = Poly::one(apq());
  for (int n = len(rng); n > 0; --n) w = concat(w, P(letters[pick(rng)]));
  return w;
}

// Numeric oracle: words over a, b, c, d with floating coefficients,
// rewritten by the six swap rules until sorted.
using NumPoly = std::map<std::string, Real>;

NumPoly oracle_normal(NumPoly x, const NumericParams& at) {
  const Real p = at.p, q = at.q;
  for (bool changed = true; changed;) {
    changed = false;
    NumPoly out;
    for (const auto& [w, c] : x) {
      std::size_t i = 0;
      while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
      if (i + 1 >= w.size()) {
        out[w] += c;
        continue;
      }
      changed = true;
      const std::string pre = w.substr(0, i), post = w.substr(i + 2);
      const std::string pair = w.substr(i, 2), swapped = {w[i + 1], w[i]};
      if (pair == "ba") out[pre + swapped + post] += c / q;
      else if (pair == "ca") out[pre + swapped + post] += c / p;
      else if (pair == "cb") out[pre + swapped + post] += c * q / p;
      else if (pair == "db") out[pre + swapped + post] += c / p;
      else if (pair == "dc") out[pre + swapped + post] += c / q;
      else if (pair == "da") {
        out[pre + swapped + post] += c;
        out[pre + "bc" + post] -= c * (q - 1 / p);
      }
    }
    x = std::move(out);
  }
  return x;
}

std::string letters_of(const Presentation<ExactField>& p, const Word& w) {
  std::string s;
  for (const auto& [g, e] : w.body) s += std::string(static_cast<std::size_t>(e), p.gens[g].name[0]);
  return s;
}

NumPoly evaluate(const Poly& x, const NumericParams& at) {
  NumPoly out;
  for (const auto& [w, c] : x.terms()) out[letters_of(*x.presentation(), w)] += eval_numeric(c, at);
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  const Poly da = P("d*a");
  REQUIRE(da.size() == 1);
  CHECK_FALSE(da.is_normal());
  CHECK(N("a*b - q*b*a").is_zero());
}

TEST_CASE("parse errors carry the offset") {
  try {
    P("a^^2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).rfind("syntax error at offset 3", 0) == 0);
  }
  CHECK_THROWS_AS(P("a*x"), ParseError);
  CHECK_THROWS_AS(P("b^(1/2)"), ParseError);
  CHECK_THROWS_AS(P("(a + b"), ParseError);
  CHECK_THROWS_AS(P("a +"), ParseError);
}

TEST_CASE("p and q parse as Q lambda and Q lambda^-1") {
  CHECK(same(P("p"), P("Q*lambda")));
  CHECK(same(P("q"), P("Q*lambda^-1")));
}

TEST_CASE("normal ordering examples") {
  CHECK(same(N("b*a"), P("q^-1*a*b")));
  CHECK(same(N("d*a"), P("a*d - (q - p^-1)*b*c")));
  CHECK(same(N("a*a^-1"), P("1")));
  CHECK(same(N("a^-1*a"), P("1")));
  CHECK(same(N("c*b"), P("(q/p)*b*c")));
  CHECK(same(N("D*b"), P("lambda^-2*b*D")));
  CHECK(same(N("D^(1/2)*c"), P("lambda*c*D^(1/2)")));
  // squaring the half-power rule recovers the integer one
  const Poly lhs = N("D^(1/2)*D^(1/2)*c");
  CHECK(same(lhs, N("D^(1/2)*lambda*c*D^(1/2)")));
  CHECK(same(lhs, N("lambda^2*c*D")));
}

TEST_CASE("ring operations") {
  CHECK(same(P("a") * P("1"), P("a")));
  const Poly cd = P("c") * P("d");
  CHECK(cd.is_normal());
  CHECK(same(cd, P("c*d")));
  const Poly det = P("a*d - q*b*c");
  CHECK((det * P("a") - P("a") * det).is_zero());
}

TEST_CASE("normal form is idempotent on random words") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Poly x = normal_order(random_word(rng, 6));
    CHECK(x.is_normal());
    CHECK((normal_order(x) - x).is_zero());
  }
}

TEST_CASE("every rule lies in the ideal") {
  for (const char* r : {"b*a - q^-1*a*b", "c*a - p^-1*a*c", "c*b - (q/p)*b*c", "d*b - p^-1*b*d", "d*c - q^-1*c*d",
                        "d*a - a*d + (q - p^-1)*b*c", "b*a^-1 - q*a^-1*b", "c*a^-1 - p*a^-1*c",
                        "a*a^-1 - 1", "D*a - a*D", "D*d - d*D", "D*b - lambda^-2*b*D", "D*c - lambda^2*c*D"})
    CHECK_MESSAGE(N(r).is_zero(), r);
}

TEST_CASE("normal-ordered product is associative") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Poly x = random_word(rng, 3), y = random_word(rng, 3), z = random_word(rng, 3);
    CHECK(((x * y) * z - x * (y * z)).is_zero());
  }
}

TEST_CASE("exact normal form agrees with numeric rule substitution") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> small(2, 9);
  for (int i = 0; i < 50; ++i) {
    mpq_class p(small(rng), small(rng)), q(small(rng), small(rng));
    p.canonicalize();
    q.canonicalize();
    if (p * q == 1) q += 1;
    const auto at = NumericParams::from_pq(p, q);
    const Poly x = random_word(rng, 3, false) + random_word(rng, 3, false).scaled(FracScalar(HalfLaurent::q()));
    const Poly y = random_word(rng, 3, false) - random_word(rng, 2, false);
    const NumPoly exact = evaluate(x * y, at);
    const NumPoly oracle = oracle_normal(evaluate(concat(x, y), at), at);
    Real scale = 1;
    for (const auto& [w, c] : oracle) scale = std::max(scale, Real(abs(c)));
    std::map<std::string, Real> diff = oracle;
    for (const auto& [w, c] : exact) diff[w] -= c;
    for (const auto& [w, c] : diff) CHECK_MESSAGE(static_cast<double>(abs(c) / scale) < 1e-10, w);
  }
}

TEST_CASE("confluence") {
  const auto a = confluence_check(*apq(), 3);
  CHECK(a.confluent());
  CHECK(a.words_checked > 0);
  const auto u = confluence_check(*u_presentation<ExactField>(), 3);
  CHECK(u.confluent());
  const auto one = PresentationBuilder<ExactField>("x", ExactField{}).generator("x").build();
  CHECK(confluence_check(*one, 3).confluent());
}

TEST_CASE("tensor square") {
  const AAlgebra<ExactField> A(ExactField{}, false);
  const auto& sq = A.square();
  auto leg = [&](const std::string& s, int block) { return embed_block(P(s), sq, block); };
  CHECK((leg("a", 0) * leg("c", 1) - leg("c", 1) * leg("a", 0)).is_zero());
  const Poly ba = leg("b", 0) * leg("a", 0);
  CHECK((ba - (leg("a", 0) * leg("b", 0)).scaled(FracScalar(HalfLaurent::q().pow(-1)))).is_zero());
  CHECK((leg("D", 1) * leg("b", 1) - (leg("b", 1) * leg("D", 1)).scaled(FracScalar(HalfLaurent::lambda().pow(-2))))
            .is_zero());
  CHECK((leg("D", 1) * leg("b", 0) - leg("b", 0) * leg("D", 1)).is_zero());
}

TEST_CASE("guard aborts runaway rewriting") {
  auto p = std::make_shared<Presentation<ExactField>>(*apq());
  p->guard = 3;
  const PresentationPtr<ExactField> small = p;
  CHECK_THROWS_AS(normal_order(parse("d^3*a^3", small)), GuardExceeded);
}

TEST_CASE("rendering") {
  CHECK(render(N("d*a")) == "a*d - (q - p^-1)*b*c");
  const auto U = u_presentation<ExactField>();
  CHECK(render(normal_order(parse("e*f", U))) == "f*e + (k^2 - k^-2)/(q - q^-1)");
  CHECK(render(N("0")) == "0");
  CHECK(render(N("D^(-1/2)*a^2")) == "D^(-1/2)*a^2");
  CHECK(render(N("-p - 1")) == "-(p + 1)");
  CHECK(render(N("p + 1 - a")) == "-a + (p + 1)");
}

TEST_CASE("JSON and text round trips") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Poly x = normal_order(random_word(rng, 4) - random_word(rng, 4).scaled(FracScalar(HalfLaurent::p())));
    const Poly back = poly_from_json(to_json(x), apq());
    CHECK((back - x).is_zero());
    CHECK_MESSAGE(same(P(render(x)), x), render(x) << "  ->  " << render(normal_order(P(render(x)))));
  }
}
