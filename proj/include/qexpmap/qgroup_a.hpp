#pragma once

// The quantum matrix algebra A_{p,q}(GL(2)).
//
// Generators a < b < c < d with a invertible, and the scaling generator D
// (the quantum determinant as a formal group-like element with
// half-integer powers). Normal words are D^s a^i b^j c^k d^l.

#include <string>
#include <vector>

#include "qexpmap/field.hpp"
#include "qexpmap/ncrewrite.hpp"
#include "qexpmap/parser.hpp"
#include "qexpmap/report.hpp"

namespace qexpmap {

template <class F>
PresentationPtr<F> apq_presentation(const F& field = F{}, bool unit_lambda = false) {
  PresentationBuilder<F> b("A", field, unit_lambda);
  b.generator("a", GenKind::invertible)
      .generator("b")
      .generator("c")
      .generator("d")
      .generator("D", GenKind::scaling, "{\\cal D}^{$e}");
  b.scaling_factor("D", "b", 0, -2).scaling_factor("D", "c", 0, 2);

  const auto& cur = b.current();
  auto k = [&](int qh, int lh) { return cur.monomial(qh, lh); };
  const Letter a = b.letter("a"), ai = b.letter("a", -1), bb = b.letter("b"), c = b.letter("c"), d = b.letter("d");

  b.rule(bb, a, k(-2, 2));                   // b a = q^-1 a b
  b.rule(c, a, k(-2, -2));                   // c a = p^-1 a c
  b.rule(c, bb, k(0, -4));                   // c b = (q/p) b c
  b.rule(d, bb, k(-2, -2));                  // d b = p^-1 b d
  b.rule(d, c, k(-2, 2));                    // d c = q^-1 c d
  b.rule(d, a, cur.one(), parse_correction("-(q - p^-1)*b*c", cur));
  b.rule(bb, ai, k(2, -2));                  // b a^-1 = q a^-1 b
  b.rule(c, ai, k(2, 2));                    // c a^-1 = p a^-1 c
  b.rule(d, ai, cur.one(), parse_correction("(q - p^-1)*p*q*a^-2*b*c", cur));
  auto p = b.build();
  return p;
}

/// A_{p,q} together with its tensor square and fourth tensor power (the
/// latter hosts the triple products of coassociativity checks).
template <class F>
class AAlgebra {
 public:
  using Poly = NCPoly<F>;
  using Scalar = typename F::Scalar;

  explicit AAlgebra(F field = F{}, bool unit_lambda = false, std::size_t guard = 0)
      : pres_(with_guard(apq_presentation(field, unit_lambda), guard)),
        square_(tensor_square(pres_)),
        fourth_(tensor_square(square_)),
        delta_(pres_, square_),
        counit_(pres_, scalar_presentation(field, unit_lambda)) {
    const auto& sq = square_;
    auto t = [&](const std::string& x, const std::string& y) {
      return tensor(gen(x), gen(y), sq);
    };
    delta_.set("a", t("a", "a") + t("b", "c"))
        .set("b", t("a", "b") + t("b", "d"))
        .set("c", t("c", "a") + t("d", "c"))
        .set("d", t("c", "b") + t("d", "d"))
        .set_scaling("D", [this](int h) { return tensor(D(h), D(h), square_); });
    const auto& sc = counit_.target();
    counit_.set("a", Poly::one(sc), Poly::one(sc))
        .set("b", Poly(sc))
        .set("c", Poly(sc))
        .set("d", Poly::one(sc))
        .set_scaling("D", [sc](int) { return Poly::one(sc); });
  }

  AAlgebra(const AAlgebra&) = delete;
  AAlgebra& operator=(const AAlgebra&) = delete;

  const PresentationPtr<F>& pres() const { return pres_; }
  const PresentationPtr<F>& square() const { return square_; }
  const PresentationPtr<F>& fourth() const { return fourth_; }
  const F& field() const { return pres_->field; }
  ScalarContext<F> scalars() const { return {pres_->field, pres_->unit_lambda}; }

  Poly gen(const std::string& name, int exp = 1) const { return Poly::generator(pres_, name, exp); }
  /// D^{h/2}
  Poly D(int half_units) const { return Poly::scaling(pres_, "D", half_units); }
  Poly parse(const std::string& text) const { return normal_order(qexpmap::parse(text, pres_)); }
  Poly scalar(const HalfLaurent& h) const { return Poly::constant(pres_, pres_->lift(h)); }

  Poly qdet() const { return parse("a*d - q*b*c"); }
  Poly beta() const { return parse("a^-1*b"); }
  Poly gamma() const { return parse("c*a^-1"); }
  Poly w() const { return parse("d - c*a^-1*b"); }

  Poly coproduct(const Poly& x) const {
    for (const auto& [wd, c] : x.terms())
      if (wd.has_negative_exponent()) throw DomainError("coproduct undefined on localized generator a^-1");
    return delta_.apply(x);
  }

  Scalar counit(const Poly& x) const { return counit_.apply(x).constant_term(); }

  /// (Delta (x) id) when leg == 0, (id (x) Delta) when leg == 1, applied to
  /// an element of the tensor square; the result lives in legs 1..3 of the
  /// fourth power.
  Poly coproduct_on_leg(const Poly& x2, int leg) const {
    const int n = static_cast<int>(pres_->gens.size());
    const int ns = static_cast<int>(pres_->scalings.size());
    Homomorphism<F> h(square_, fourth_);
    for (int l = 0; l < 2; ++l) {
      for (const auto& g : pres_->gens) {
        if (g.kind == GenKind::invertible) continue;
        const std::string name = g.name + "_" + std::to_string(l + 1);
        if (l == leg) {
          const std::vector<int> blocks = leg == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 2};
          h.set(name, normal_order(remap_blocks(delta_.apply(gen(g.name)), fourth_, n, ns, blocks)));
        } else {
          const int b = leg == 0 ? 2 : 0;
          h.set(name, remap_blocks(gen(g.name), fourth_, n, ns, {b}));
        }
      }
      for (const auto& g : pres_->gens) {
        if (g.kind != GenKind::invertible) continue;
        const std::string name = g.name + "_" + std::to_string(l + 1);
        if (l == leg) {
          const std::vector<int> blocks = leg == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 2};
          h.set(name, normal_order(remap_blocks(delta_.apply(gen(g.name)), fourth_, n, ns, blocks)));
        } else {
          const int b = leg == 0 ? 2 : 0;
          h.set(name, remap_blocks(gen(g.name), fourth_, n, ns, {b}), remap_blocks(gen(g.name, -1), fourth_, n, ns, {b}));
        }
      }
      const std::string dname = "D_" + std::to_string(l + 1);
      h.set_scaling(dname, [this, l, leg, n, ns](int hu) {
        if (l == leg) {
          const std::vector<int> blocks = leg == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 2};
          return remap_blocks(tensor(D(hu), D(hu), square_), fourth_, n, ns, blocks);
        }
        return remap_blocks(D(hu), fourth_, n, ns, {leg == 0 ? 2 : 0});
      });
    }
    return h.apply(x2);
  }

 private:
  static PresentationPtr<F> with_guard(PresentationPtr<F> p, std::size_t guard) {
    if (guard == 0) return p;
    auto copy = std::make_shared<Presentation<F>>(*p);
    copy->guard = guard;
    return copy;
  }

  PresentationPtr<F> pres_, square_, fourth_;
  Homomorphism<F> delta_;
  Homomorphism<F> counit_;
};

/// The six relations among a, b, c, d, the four scaling relations of D,
/// the inverse of a, and the half-power scaling rule.
template <class F>
Report relations_check(const AAlgebra<F>& A) {
  Report r{"relations"};
  r.params["field"] = A.field().name();
  const char* rel[][2] = {
      {"a*b", "q*b*a"},           {"a*c", "p*c*a"},         {"b*c", "p/q*c*b"},
      {"b*d", "p*d*b"},           {"c*d", "q*d*c"},         {"a*d - d*a", "(q - p^-1)*b*c"},
      {"D*a", "a*D"},             {"D*b", "lambda^-2*b*D"}, {"D*c", "lambda^2*c*D"},
      {"D*d", "d*D"},             {"a*a^-1", "1"},          {"a^-1*a", "1"},
      {"D^(1/2)*c", "lambda*c*D^(1/2)"}, {"D^(1/2)*D^(-1/2)", "1"}};
  for (const auto& [lhs, rhs] : rel) expect_equal(r, std::string(lhs) + " = " + rhs, A.parse(lhs), A.parse(rhs));
  return r;
}

/// Quantum determinant: the two forms agree, it is group-like, and it
/// commutes with the generators up to the lambda factors of D.
template <class F>
Report qdet_checks(const AAlgebra<F>& A) {
  Report r{"qdet"};
  r.params["field"] = A.field().name();
  const auto det = A.qdet();
  expect_equal(r, "ad - qbc = ad - pcb", det, A.parse("a*d - p*c*b"));
  expect_equal(r, "Delta(det) = det (x) det", A.coproduct(det), tensor(det, det, A.square()));
  const std::pair<const char*, HalfLaurent> factors[] = {{"a", HalfLaurent(1)},
                                                         {"b", HalfLaurent::monomial(0, -4)},
                                                         {"c", HalfLaurent::monomial(0, 4)},
                                                         {"d", HalfLaurent(1)}};
  for (const auto& [x, f] : factors) {
    const auto g = A.gen(x);
    expect_equal(r, std::string("det*") + x + " = mu*" + x + "*det", det * g, A.scalar(f) * (g * det));
  }
  expect_equal_scalar(r, "counit(det) = 1", A.field(), A.counit(det), A.pres()->one());
  return r;
}

/// Coproduct: values on generators, homomorphism property, coassociativity
/// and both counit axioms.
template <class F>
Report coproduct_checks(const AAlgebra<F>& A) {
  using Poly = NCPoly<F>;
  Report r{"coproduct"};
  r.params["field"] = A.field().name();
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  std::vector<Poly> gens;
  for (const auto& n : names) gens.push_back(A.gen(n));
  gens.push_back(A.D(2));
  std::vector<std::string> labels = names;
  labels.push_back("D");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      expect_equal(r, "Delta(" + labels[i] + labels[j] + ") = Delta(" + labels[i] + ")Delta(" + labels[j] + ")",
                   A.coproduct(gens[i] * gens[j]), A.coproduct(gens[i]) * A.coproduct(gens[j]));
  gens.push_back(A.D(1));
  labels.push_back("D^(1/2)");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto dx = A.coproduct(gens[i]);
    expect_equal(r, "coassociativity on " + labels[i], A.coproduct_on_leg(dx, 0), A.coproduct_on_leg(dx, 1));
  }

  // counit axioms through homomorphisms A (x) A -> A
  const auto& sq = A.square();
  Homomorphism<F> left(sq, A.pres()), right(sq, A.pres());
  for (const auto& n : names) {
    const Poly eps = Poly::constant(A.pres(), A.counit(A.gen(n)));
    const bool inv = n == "a";
    if (inv) {
      left.set(n + "_1", eps, Poly::one(A.pres())).set(n + "_2", A.gen(n), A.gen(n, -1));
      right.set(n + "_1", A.gen(n), A.gen(n, -1)).set(n + "_2", eps, Poly::one(A.pres()));
    } else {
      left.set(n + "_1", eps).set(n + "_2", A.gen(n));
      right.set(n + "_1", A.gen(n)).set(n + "_2", eps);
    }
  }
  const auto one = Poly::one(A.pres());
  left.set_scaling("D_1", [one](int) { return one; }).set_scaling("D_2", [&A](int h) { return A.D(h); });
  right.set_scaling("D_1", [&A](int h) { return A.D(h); }).set_scaling("D_2", [one](int) { return one; });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto dx = A.coproduct(gens[i]);
    expect_equal(r, "(eps (x) id)Delta(" + labels[i] + ")", left.apply(dx), gens[i]);
    expect_equal(r, "(id (x) eps)Delta(" + labels[i] + ")", right.apply(dx), gens[i]);
  }
  return r;
}

/// The six relations among the exponential coordinates, in adjoint form:
/// beta = a^-1 b, gamma = c a^-1, w = d - c a^-1 b = e^{-delta}.
template <class F>
Report verify_exponential_coords(const AAlgebra<F>& A) {
  Report r{"lie-coords"};
  r.params["field"] = A.field().name();
  const auto a = A.gen("a"), beta = A.beta(), gamma = A.gamma(), w = A.w();
  const auto q = A.scalar(HalfLaurent::q()), p = A.scalar(HalfLaurent::p());
  const auto pinv = A.scalar(HalfLaurent::monomial(-2, -2)), qinv = A.scalar(HalfLaurent::monomial(-2, 2));
  expect_equal(r, "a beta = q beta a", a * beta, q * (beta * a));
  expect_equal(r, "a gamma = p gamma a", a * gamma, p * (gamma * a));
  expect_equal(r, "w beta = p^-1 beta w", w * beta, pinv * (beta * w));
  expect_equal(r, "w gamma = q^-1 gamma w", w * gamma, qinv * (gamma * w));
  expect_equal(r, "a w = w a", a * w, w * a);
  expect_equal(r, "beta gamma = gamma beta", beta * gamma, gamma * beta);
  return r;
}

}  // namespace qexpmap
