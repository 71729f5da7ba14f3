#pragma once

// The dual side: spin-j representation matrices, hatted generators, the
// U_q(sl(2)) presentation used in the p = q sector, its coproduct, and the
// homomorphisms pi^+- from A_q to U_q.

#include <string>
#include <vector>

#include "qexpmap/field.hpp"
#include "qexpmap/matrix.hpp"
#include "qexpmap/ncrewrite.hpp"
#include "qexpmap/parser.hpp"
#include "qexpmap/qgroup_a.hpp"
#include "qexpmap/report.hpp"

namespace qexpmap {

enum class Normalization { symmetric, rational };

inline std::string to_string(Normalization n) { return n == Normalization::symmetric ? "symmetric" : "rational"; }

/// Spin label j = j2/2 with central charge z = z2/2. Rows and columns are
/// indexed m = j, j-1, ..., -j, i.e. m2 = j2 - 2 * index.
struct SpinLabel {
  int j2 = 1;
  int z2 = 1;
  int dim() const { return j2 + 1; }
  int m2(int index) const { return j2 - 2 * index; }
};

inline void validate(const SpinLabel& s) {
  if (s.j2 < 0) throw DomainError("spin j must be a non-negative half-integer");
}

template <class F>
struct Rep {
  using Scalar = typename F::Scalar;
  SpinLabel label;
  Normalization norm = Normalization::rational;
  Matrix<Scalar> Jplus, Jminus, J0, Z;
  int dim() const { return label.dim(); }
};

/// Gamma^{(j;z)}. Symmetric: (J+)_{m,m-1} = sqrt([j+m][j+1-m]),
/// (J-)_{m,m+1} = sqrt([j-m][j+1+m]). Rational: (J+)_{m,m-1} = [j+1-m],
/// (J-)_{m,m+1} = [j+1+m]; the two are conjugate by
/// S = diag(sqrt([j+m]![j-m]!)) with rational = S^-1 symmetric S.
template <class F>
Rep<F> gamma_rep(SpinLabel label, Normalization norm, const ScalarContext<F>& ctx) {
  validate(label);
  using S = typename F::Scalar;
  Rep<F> r;
  r.label = label;
  r.norm = norm;
  const int n = label.dim();
  r.Jplus = Matrix<S>(n, n, S{});
  r.Jminus = Matrix<S>(n, n, S{});
  r.J0 = Matrix<S>(n, n, S{});
  r.Z = Matrix<S>(n, n, S{});
  const int j2 = label.j2;
  for (int i = 0; i < n; ++i) {
    const int m2 = label.m2(i);
    r.J0(i, i) = ctx.lift(FracScalar(mpq_class(m2, 2)));
    r.Z(i, i) = ctx.lift(FracScalar(mpq_class(label.z2, 2)));
    if (i + 1 < n) {
      // (J+)_{m, m-1}: row i, column i + 1
      const int jpm = (j2 + m2) / 2, jmm1 = (j2 - m2) / 2 + 1;
      r.Jplus(i, i + 1) = norm == Normalization::symmetric ? ctx.lift(RadScalar(FracScalar(1), {jpm, jmm1}))
                                                           : ctx.lift(qint(jmm1));
    }
    if (i > 0) {
      // (J-)_{m, m+1}: row i, column i - 1
      const int jmm = (j2 - m2) / 2, jpm1 = (j2 + m2) / 2 + 1;
      r.Jminus(i, i - 1) = norm == Normalization::symmetric ? ctx.lift(RadScalar(FracScalar(1), {jmm, jpm1}))
                                                            : ctx.lift(qint(jpm1));
    }
  }
  return r;
}

/// Diagonal S with S_m = sqrt([j+m]![j-m]!) and its inverse, as radicals.
inline std::vector<int> factorial_radicand(int n) {
  std::vector<int> r;
  for (int k = 2; k <= n; ++k) r.push_back(k);
  return r;
}

template <class F>
struct Hatted {
  using Scalar = typename F::Scalar;
  Matrix<Scalar> Jplus, Jminus, J0plusZ, J0minusZ;
};

/// Images of the hatted generators
///   J+^ = J+ Q^{-(J0 + 1/2)} lambda^{Z - 1/2},
///   J-^ = Q^{J0 + 1/2} lambda^{Z - 1/2} J-,
/// together with J0 + Z and J0 - Z.
template <class F>
Hatted<F> hatted(const Rep<F>& rep, const ScalarContext<F>& ctx) {
  Hatted<F> h;
  h.Jplus = rep.Jplus;
  h.Jminus = rep.Jminus;
  const int n = rep.dim();
  const int z2 = rep.label.z2;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int mk2 = rep.label.m2(k), mi2 = rep.label.m2(i);
      if (!ctx.field.is_zero(h.Jplus(i, k))) h.Jplus(i, k) = h.Jplus(i, k) * ctx.monomial(-(mk2 + 1), z2 - 1);
      if (!ctx.field.is_zero(h.Jminus(i, k))) h.Jminus(i, k) = ctx.monomial(mi2 + 1, z2 - 1) * h.Jminus(i, k);
    }
  h.J0plusZ = rep.J0 + rep.Z;
  h.J0minusZ = rep.J0 - rep.Z;
  return h;
}

/// Relations of the representation: [J0, J+-] = +-J+-, [J+, J-] = [2 J0]_Q,
/// Z = z * 1.
template <class F>
Report rep_relations_check(SpinLabel label, Normalization norm, const ScalarContext<F>& ctx) {
  using S = typename F::Scalar;
  Report r{"rep-relations"};
  r.params["j"] = half_units_string(label.j2);
  r.params["z"] = half_units_string(label.z2);
  r.params["norm"] = to_string(norm);
  r.params["field"] = ctx.field.name();
  const auto rep = gamma_rep(label, norm, ctx);
  const S zero{};
  auto mul = [&](const Matrix<S>& x, const Matrix<S>& y) { return multiply(x, y, zero); };
  const int n = rep.dim();
  Matrix<S> two_j0(n, n, zero), zmat(n, n, zero);
  for (int i = 0; i < n; ++i) {
    two_j0(i, i) = ctx.lift(qint(label.m2(i)));
    zmat(i, i) = ctx.lift(FracScalar(mpq_class(label.z2, 2)));
  }
  expect_equal_scalar_matrix(r, "[J0,J+] = J+", ctx.field, mul(rep.J0, rep.Jplus) - mul(rep.Jplus, rep.J0), rep.Jplus);
  Matrix<S> neg = Matrix<S>(n, n, zero) - rep.Jminus;
  expect_equal_scalar_matrix(r, "[J0,J-] = -J-", ctx.field, mul(rep.J0, rep.Jminus) - mul(rep.Jminus, rep.J0), neg);
  expect_equal_scalar_matrix(r, "[J+,J-] = [2J0]", ctx.field, mul(rep.Jplus, rep.Jminus) - mul(rep.Jminus, rep.Jplus),
                             two_j0);
  expect_equal_scalar_matrix(r, "Z = z", ctx.field, rep.Z, zmat);
  return r;
}

/// S^-1 J^sym S = J^rat for J = J+, J-, evaluated over radicals.
template <class F>
Report similarity_check(SpinLabel label, const ScalarContext<F>& ctx) {
  using S = typename F::Scalar;
  Report r{"rep-similarity"};
  r.params["j"] = half_units_string(label.j2);
  r.params["field"] = ctx.field.name();
  const auto sym = gamma_rep(label, Normalization::symmetric, ctx);
  const auto rat = gamma_rep(label, Normalization::rational, ctx);
  const int n = label.dim();
  Matrix<S> s(n, n, S{}), sinv(n, n, S{});
  for (int i = 0; i < n; ++i) {
    const int jpm = (label.j2 + label.m2(i)) / 2, jmm = (label.j2 - label.m2(i)) / 2;
    std::vector<int> rad = factorial_radicand(jpm);
    const auto more = factorial_radicand(jmm);
    rad.insert(rad.end(), more.begin(), more.end());
    const RadScalar root(FracScalar(1), rad);
    HalfLaurent prod = qfact(jpm) * qfact(jmm);
    s(i, i) = ctx.lift(root);
    sinv(i, i) = ctx.lift(RadScalar(FracScalar(1) / FracScalar(prod), rad));
  }
  const S zero{};
  auto conj = [&](const Matrix<S>& x) { return multiply(multiply(sinv, x, zero), s, zero); };
  expect_equal_scalar_matrix(r, "S^-1 J+ S", ctx.field, conj(sym.Jplus), rat.Jplus);
  expect_equal_scalar_matrix(r, "S^-1 J- S", ctx.field, conj(sym.Jminus), rat.Jminus);
  return r;
}

// ---------------------------------------------------------------------------
// U_q(sl(2)), lambda = 1

/// Generators f < e with the scaling generator k = q^{J0}; normal words are
/// k^s f^i e^j.
template <class F>
PresentationPtr<F> u_presentation(const F& field = F{}) {
  PresentationBuilder<F> b("U", field, true);
  b.generator("f", GenKind::ordinary, "J_-").generator("e", GenKind::ordinary, "J_+");
  b.generator("k", GenKind::scaling, "q^{$cJ_0}");
  b.scaling_factor("k", "e", 1, 0).scaling_factor("k", "f", -1, 0);
  const auto& cur = b.current();
  b.rule(b.letter("e"), b.letter("f"), cur.one(), parse_correction("(k^2 - k^-2)/(q - q^-1)", cur));
  return b.build();
}

template <class F>
class UAlgebra {
 public:
  using Poly = NCPoly<F>;
  using Scalar = typename F::Scalar;

  explicit UAlgebra(F field = F{}, std::size_t guard = 0)
      : pres_(with_guard(u_presentation(field), guard)),
        square_(tensor_square(pres_)),
        fourth_(tensor_square(square_)),
        delta_(pres_, square_) {
    delta_.set("e", tensor(gen("e"), k(-2), square_) + tensor(k(2), gen("e"), square_))
        .set("f", tensor(gen("f"), k(-2), square_) + tensor(k(2), gen("f"), square_))
        .set_scaling("k", [this](int h) { return tensor(k(h), k(h), square_); });
  }
  UAlgebra(const UAlgebra&) = delete;
  UAlgebra& operator=(const UAlgebra&) = delete;

  const PresentationPtr<F>& pres() const { return pres_; }
  const PresentationPtr<F>& square() const { return square_; }
  const PresentationPtr<F>& fourth() const { return fourth_; }
  const F& field() const { return pres_->field; }
  ScalarContext<F> scalars() const { return {pres_->field, true}; }

  Poly gen(const std::string& name, int exp = 1) const { return Poly::generator(pres_, name, exp); }
  /// k^{h/2}
  Poly k(int half_units) const { return Poly::scaling(pres_, "k", half_units); }
  Poly parse(const std::string& text) const { return normal_order(qexpmap::parse(text, pres_)); }
  Poly scalar(const HalfLaurent& h) const { return Poly::constant(pres_, pres_->lift(h)); }

  Poly coproduct(const Poly& x) const { return delta_.apply(x); }

  Poly coproduct_on_leg(const Poly& x2, int leg) const {
    const int n = static_cast<int>(pres_->gens.size());
    const int ns = static_cast<int>(pres_->scalings.size());
    Homomorphism<F> h(square_, fourth_);
    const std::vector<int> split = leg == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 2};
    const int other = leg == 0 ? 2 : 0;
    for (int l = 0; l < 2; ++l) {
      for (const auto& g : pres_->gens) {
        const std::string name = g.name + "_" + std::to_string(l + 1);
        if (l == leg) {
          h.set(name, normal_order(remap_blocks(delta_.apply(gen(g.name)), fourth_, n, ns, split)));
        } else {
          h.set(name, remap_blocks(gen(g.name), fourth_, n, ns, {other}));
        }
      }
      h.set_scaling("k_" + std::to_string(l + 1), [this, l, leg, n, ns, split, other](int hu) {
        if (l == leg) return remap_blocks(tensor(k(hu), k(hu), square_), fourth_, n, ns, split);
        return remap_blocks(k(hu), fourth_, n, ns, {other});
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
};

/// Evaluation of a U-element in a representation: f -> J-, e -> J+,
/// k^s -> diag(q^{s m}).
template <class F>
Matrix<typename F::Scalar> u_rep_apply(const Rep<F>& rep, const NCPoly<F>& x, const ScalarContext<F>& ctx) {
  using S = typename F::Scalar;
  const auto& p = *x.presentation();
  const int n = rep.dim();
  const S zero{};
  Matrix<S> result(n, n, zero);
  const int fi = p.gen_index("f"), ei = p.gen_index("e");
  for (const auto& [w, c] : x.terms()) {
    Matrix<S> t(n, n, zero);
    for (int i = 0; i < n; ++i) {
      // k^{h/2} on weight m: q^{h m / 2}, in half units h * m2 / 2
      const int prod = w.scaling.empty() ? 0 : w.scaling[0] * rep.label.m2(i);
      if (prod % 2 != 0) throw DomainError("k-power leaves the half-integer lattice in this representation");
      t(i, i) = c * ctx.monomial(prod / 2, 0);
    }
    for (const auto& [g, e] : w.body) {
      const Matrix<S>& m = g == fi ? rep.Jminus : g == ei ? rep.Jplus : throw UsageError("unknown U generator");
      for (int k = 0; k < e; ++k) t = multiply(t, m, zero);
    }
    result = result + t;
  }
  return result;
}

/// The homomorphisms pi^+- : A_q -> U_q of the p = q sector.
///   pi^-: a -> k, b -> 0, c -> q^{-1/2}(q - q^{-1}) e, d -> k^-1
///   pi^+: a -> k^-1, b -> q^{1/2}(q^{-1} - q) f, c -> 0, d -> k
/// D^s -> 1.
template <class F>
Homomorphism<F> pi_pm(int sign, const AAlgebra<F>& A, const UAlgebra<F>& U) {
  if (sign != 1 && sign != -1) throw UsageError("pi sign must be + or -");
  using Poly = NCPoly<F>;
  Homomorphism<F> h(A.pres(), U.pres());
  const Poly zero(U.pres());
  const auto one = Poly::one(U.pres());
  if (sign < 0) {
    h.set("a", U.k(2), U.k(-2)).set("b", zero).set("c", U.parse("q^(-1/2)*(q - q^-1)*e")).set("d", U.k(-2));
  } else {
    h.set("a", U.k(-2), U.k(2)).set("b", U.parse("q^(1/2)*(q^-1 - q)*f")).set("c", zero).set("d", U.k(2));
  }
  h.set_scaling("D", [one](int) { return one; });
  return h;
}

/// pi^+- respect every relation of A at p = q and send the determinant to 1.
template <class F>
Report pi_homomorphism_check(int sign, const AAlgebra<F>& A, const UAlgebra<F>& U) {
  Report r{"pi-homomorphism"};
  r.params["sign"] = sign > 0 ? "+" : "-";
  r.params["field"] = A.field().name();
  const auto pi = pi_pm(sign, A, U);
  const char* rel[][2] = {{"a*b", "q*b*a"}, {"a*c", "p*c*a"}, {"b*c", "p/q*c*b"},
                          {"b*d", "p*d*b"}, {"c*d", "q*d*c"}, {"a*d - d*a", "(q - p^-1)*b*c"},
                          {"a*a^-1", "1"},  {"a^-1*a", "1"},  {"D*b", "lambda^-2*b*D"}};
  for (const auto& [lhs, rhs] : rel) {
    // apply to the raw expressions: images are multiplied in U
    const auto l = pi.apply(parse(lhs, A.pres())), rr = pi.apply(parse(rhs, A.pres()));
    expect_equal(r, std::string("pi(") + lhs + ") = pi(" + rhs + ")", l, rr);
  }
  expect_equal(r, "pi(ad - qbc) = 1", pi.apply(parse("a*d - q*b*c", A.pres())), NCPoly<F>::one(U.pres()));
  return r;
}

/// Delta on U: homomorphism on generator pairs and coassociativity.
template <class F>
Report u_coproduct_checks(const UAlgebra<F>& U) {
  using Poly = NCPoly<F>;
  Report r{"u-coproduct"};
  r.params["field"] = U.field().name();
  std::vector<std::pair<std::string, Poly>> gens = {
      {"f", U.gen("f")}, {"e", U.gen("e")}, {"k", U.k(2)}, {"k^(1/2)", U.k(1)}, {"k^-1", U.k(-2)}};
  for (const auto& [ln, x] : gens)
    for (const auto& [rn, y] : gens)
      expect_equal(r, "Delta(" + ln + "*" + rn + ")", U.coproduct(x * y), U.coproduct(x) * U.coproduct(y));
  for (const auto& [n, x] : gens) {
    const auto dx = U.coproduct(x);
    expect_equal(r, "coassociativity on " + n, U.coproduct_on_leg(dx, 0), U.coproduct_on_leg(dx, 1));
  }
  return r;
}

}  // namespace qexpmap
