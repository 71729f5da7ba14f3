#include "doctest.h"
#include "qexpmap/qalg_u.hpp"
#include "qexpmap/qgroup_a.hpp"

using namespace qexpmap;

namespace {

using Poly = NCPoly<ExactField>;
using M = Matrix<FracScalar>;

FracScalar Qp(int half) { return FracScalar(HalfLaurent::monomial(half, 0)); }

template <class S>
bool equal(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!(a(i, k) == b(i, k))) return false;
  return true;
}

template <class S>
Matrix<S> diag(const std::vector<S>& d) {
  Matrix<S> m(d.size(), d.size(), S{});
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

struct AFix {
  AAlgebra<ExactField> A{ExactField{}, false};
  Poly t(const Poly& x, const Poly& y) const { return tensor(x, y, A.square()); }
};

struct UFix {
  AAlgebra<ExactField> A{ExactField{}, true};
  UAlgebra<ExactField> U{ExactField{}};
  ScalarContext<ExactField> ctx = U.scalars();
};

}  // namespace

TEST_CASE_FIXTURE(AFix, "quantum determinant") {
  CHECK((A.parse("a*d - q*b*c") - A.parse("a*d - p*c*b")).is_zero());
  CHECK((A.coproduct(A.qdet()) - t(A.qdet(), A.qdet())).is_zero());
  CHECK((A.qdet() * A.gen("b") - (A.gen("b") * A.qdet()).scaled(FracScalar(HalfLaurent::lambda().pow(-2)))).is_zero());
  CHECK(qdet_checks(A).pass);
  CHECK(relations_check(A).pass);
}

TEST_CASE_FIXTURE(AFix, "coproduct and counit") {
  CHECK((A.coproduct(A.gen("a")) - (t(A.gen("a"), A.gen("a")) + t(A.gen("b"), A.gen("c")))).is_zero());
  CHECK((A.coproduct(A.gen("d")) - (t(A.gen("c"), A.gen("b")) + t(A.gen("d"), A.gen("d")))).is_zero());
  const Poly one = Poly::one(A.pres());
  CHECK((A.coproduct(one) - t(one, one)).is_zero());
  CHECK((A.coproduct(A.D(1)) - t(A.D(1), A.D(1))).is_zero());
  CHECK_THROWS_AS(A.coproduct(A.gen("a", -1)), DomainError);
  CHECK(A.counit(A.qdet()) == FracScalar(1));
  CHECK(A.counit(A.gen("b")).is_zero());
  CHECK(A.counit(A.gen("a", -1)) == FracScalar(1));
  CHECK(A.counit(A.D(-3)) == FracScalar(1));
  // coassociativity, homomorphism on all pairs, counit axiom on both sides
  CHECK(coproduct_checks(A).pass);
}

TEST_CASE_FIXTURE(AFix, "exponential coordinates") {
  const Poly a = A.gen("a"), be = A.beta(), ga = A.gamma(), w = A.w();
  const auto q = FracScalar(HalfLaurent::q()), p = FracScalar(HalfLaurent::p());
  CHECK((a * be - (be * a).scaled(q)).is_zero());
  CHECK((a * ga - (ga * a).scaled(p)).is_zero());
  CHECK((w * be - (be * w).scaled(p.inverse())).is_zero());
  CHECK((w * ga - (ga * w).scaled(q.inverse())).is_zero());
  CHECK((a * w - w * a).is_zero());
  CHECK((be * ga - ga * be).is_zero());
  CHECK(verify_exponential_coords(A).pass);
}

TEST_CASE("spin-1/2 and spin-1 representation matrices") {
  const ScalarContext<RadicalField> rc{};
  const auto half = gamma_rep({1, 1}, Normalization::symmetric, rc);
  Matrix<RadScalar> shift(2, 2, RadScalar{});
  shift(0, 1) = RadScalar(1);
  CHECK(equal(half.Jplus, shift));
  CHECK(equal(half.J0, diag<RadScalar>({RadScalar(FracScalar(mpq_class(1, 2))), RadScalar(FracScalar(mpq_class(-1, 2)))})));
  const auto one = gamma_rep({2, 2}, Normalization::symmetric, rc);
  CHECK(one.Jplus(0, 1) == RadScalar(FracScalar(1), {2}));
  CHECK(one.Jplus(0, 1) == RadScalar(FracScalar(1), {1, 2}));

  const ScalarContext<ExactField> ec{};
  const auto r = gamma_rep({2, 2}, Normalization::rational, ec);
  const M comm = multiply(r.Jplus, r.Jminus, FracScalar{}) - multiply(r.Jminus, r.Jplus, FracScalar{});
  CHECK(equal(comm, diag<FracScalar>({FracScalar(qint(2)), FracScalar{}, -FracScalar(qint(2))})));
  CHECK_THROWS_AS(gamma_rep({-1, 0}, Normalization::rational, ec), DomainError);
}

TEST_CASE("hatted generators") {
  const ScalarContext<ExactField> ec{};
  const auto rep = gamma_rep({1, 1}, Normalization::symmetric, ec);
  const auto h = hatted(rep, ec);
  CHECK(equal(h.Jplus, rep.Jplus));
  // J-^ = Q^{J0 + 1/2} lambda^{Z - 1/2} J- with the diagonal factor on the left
  const M left = diag<FracScalar>({Qp(2), Qp(0)});
  CHECK(equal(h.Jminus, multiply(left, rep.Jminus, FracScalar{})));
  CHECK(h.Jminus(1, 0) == FracScalar(1));
  for (int j2 = 0; j2 <= 4; ++j2) {
    const auto hj = hatted(gamma_rep({j2, j2}, Normalization::rational, ec), ec);
    M pw = M::identity(j2 + 1, FracScalar{}, FracScalar(1));
    for (int n = 0; n <= j2; ++n) pw = multiply(pw, hj.Jplus, FracScalar{});
    CHECK(equal(pw, M(j2 + 1, j2 + 1, FracScalar{})));
  }
}

TEST_CASE_FIXTURE(UFix, "U relations and coproduct") {
  CHECK((U.parse("e*f - f*e") - U.parse("(k^2 - k^-2)/(q - q^-1)")).is_zero());
  CHECK((U.parse("k*e") - U.parse("q*e*k")).is_zero());
  CHECK((U.parse("k*f") - U.parse("q^-1*f*k")).is_zero());
  const auto& sq = U.square();
  CHECK((U.coproduct(U.k(2)) - tensor(U.k(2), U.k(2), sq)).is_zero());
  const Poly one = Poly::one(U.pres());
  CHECK((U.coproduct(one) - tensor(one, one, sq)).is_zero());
  const Poly e = U.gen("e"), f = U.gen("f");
  CHECK((U.coproduct(e) - (tensor(e, U.k(-2), sq) + tensor(U.k(2), e, sq))).is_zero());
  const Poly lhs = U.coproduct(U.parse("e*f - f*e"));
  const Poly rhs = U.coproduct(e) * U.coproduct(f) - U.coproduct(f) * U.coproduct(e);
  CHECK((lhs - rhs).is_zero());
  CHECK(u_coproduct_checks(U).pass);
}

TEST_CASE_FIXTURE(UFix, "pi homomorphisms") {
  const auto plus = pi_pm(1, A, U), minus = pi_pm(-1, A, U);
  CHECK(plus.apply(A.gen("c")).is_zero());
  CHECK(minus.apply(A.gen("b")).is_zero());
  const Poly pa = minus.apply(A.gen("a")), pc = minus.apply(A.gen("c"));
  CHECK((pa * pc - (pc * pa).scaled(U.pres()->lift(HalfLaurent::q()))).is_zero());
  CHECK((minus.apply(A.qdet()) - Poly::one(U.pres())).is_zero());
  CHECK((plus.apply(A.qdet()) - Poly::one(U.pres())).is_zero());
  CHECK((minus.apply(A.gen("a", -1)) - U.k(-2)).is_zero());
  CHECK((plus.apply(A.gen("a", -1)) - U.k(2)).is_zero());
  CHECK((minus.apply(A.gamma()) - U.parse("q^(-1/2)*(q - q^-1)*e*k^-1")).is_zero());
  CHECK(minus.apply(A.beta()).is_zero());
  CHECK((plus.apply(A.beta()) - U.parse("q^(1/2)*(q^-1 - q)*k*f")).is_zero());
  CHECK(plus.apply(A.gamma()).is_zero());
  CHECK_THROWS_AS(pi_pm(0, A, U), UsageError);
  CHECK(pi_homomorphism_check(1, A, U).pass);
  CHECK(pi_homomorphism_check(-1, A, U).pass);
}

TEST_CASE_FIXTURE(UFix, "evaluation in representations") {
  const auto half = gamma_rep({1, 1}, Normalization::symmetric, ctx);
  CHECK(equal(u_rep_apply(half, U.gen("e"), ctx), half.Jplus));
  CHECK(equal(u_rep_apply(half, U.k(2), ctx), diag<FracScalar>({Qp(1), Qp(-1)})));
  for (int j2 = 1; j2 <= 4; ++j2) {
    const auto rep = gamma_rep({j2, j2}, Normalization::rational, ctx);
    std::vector<FracScalar> d;
    for (int i = 0; i <= j2; ++i) d.push_back(FracScalar(qint(rep.label.m2(i)).at_unit_lambda()));
    CHECK(equal(u_rep_apply(rep, U.parse("e*f - f*e"), ctx), diag(d)));
  }
}

TEST_CASE("representation relations and similarity") {
  for (int j2 = 0; j2 <= 4; ++j2) {
    CHECK(rep_relations_check({j2, j2}, Normalization::rational, ScalarContext<ExactField>{}).pass);
    CHECK(rep_relations_check({j2, 1 - j2 % 2}, Normalization::symmetric, ScalarContext<RadicalField>{}).pass);
  }
  for (int j2 = 0; j2 <= 3; ++j2) CHECK(similarity_check({j2, j2}, ScalarContext<RadicalField>{}).pass);
}
