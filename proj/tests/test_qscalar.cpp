#include <cmath>
#include <random>

#include "doctest.h"
#include "qexpmap/qscalar.hpp"

using namespace qexpmap;

namespace {

HalfLaurent Qpow(int n) { return HalfLaurent::monomial(2 * n, 0); }

double rel_err(const Real& a, const Real& b) {
  return static_cast<double>(abs(a - b) / std::max(Real(1), std::max(abs(a), abs(b))));
}

// Random positive parameter point away from Q = 1.
NumericParams random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.3, 2.5);
  while (true) {
    const double p = u(rng), q = u(rng);
    if (std::abs(std::sqrt(p * q) - 1) > 0.05) return NumericParams::from_pq(p, q);
  }
}

}  // namespace

TEST_CASE("qint small values") {
  CHECK(qint(0).is_zero());
  CHECK(qint(1) == HalfLaurent(1));
  CHECK(qint(2) == Qpow(1) + Qpow(-1));
  CHECK(qint(-2) == -(Qpow(1) + Qpow(-1)));
}

TEST_CASE("qfact") {
  CHECK(qfact(0) == HalfLaurent(1));
  CHECK(qfact(2) == Qpow(1) + Qpow(-1));
  // expanded by hand
  const HalfLaurent expected = Qpow(3) + Qpow(1).scaled(2) + Qpow(-1).scaled(2) + Qpow(-3);
  CHECK(qfact(3) == expected);
  CHECK_THROWS_AS(qfact(-1), DomainError);
}

TEST_CASE("qint in the variable q") {
  // [2]_q = q + q^-1 with q = Q lambda^-1
  CHECK(qint(2, QVariable::q) == HalfLaurent::q() + HalfLaurent::monomial(-2, 2));
}

TEST_CASE("numeric evaluation at p = 9/4, q = 1/4") {
  const auto at = NumericParams::from_pq(mpq_class(9, 4), mpq_class(1, 4));
  CHECK(static_cast<double>(at.Q) == doctest::Approx(0.75));
  CHECK(static_cast<double>(eval_numeric(qint(2), at)) == doctest::Approx(25.0 / 12.0));
  CHECK(static_cast<double>(eval_numeric(HalfLaurent::Q(), at)) == doctest::Approx(0.75));
  CHECK(static_cast<double>(at.lambda) == doctest::Approx(3.0));
  CHECK(static_cast<double>(eval_numeric(HalfLaurent::p(), at)) == doctest::Approx(2.25));
  CHECK(static_cast<double>(eval_numeric(HalfLaurent::q(), at)) == doctest::Approx(0.25));
}

TEST_CASE("numeric parameters are guarded") {
  CHECK_THROWS_AS(NumericParams::from_pq(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(NumericParams::from_pq(0.5, 2.0), DomainError);
}

TEST_CASE("qint matches the closed quotient at random points") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto at = random_point(rng);
    for (int n = -20; n <= 20; ++n) {
      const Real direct = (pow(at.Q, n) - pow(at.Q, -n)) / (at.Q - 1 / at.Q);
      CHECK(rel_err(eval_numeric(qint(n), at), direct) < 1e-12);
    }
  }
}

TEST_CASE("qint addition formula") {
  for (int m = -10; m <= 10; ++m)
    for (int n = -10; n <= 10; ++n) CHECK(qint(m + n) == qint(m) * Qpow(n) + qint(n) * Qpow(-m));
}

TEST_CASE("FracScalar equality is cross-multiplication") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4);
  auto rand_poly = [&] {
    HalfLaurent h;
    for (int i = 0; i < 3; ++i) h += HalfLaurent::monomial(2 * e(rng), 2 * e(rng), c(rng));
    if (h.is_zero()) h = HalfLaurent(1);
    return h;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const HalfLaurent n = rand_poly(), d = rand_poly(), k = rand_poly();
    const FracScalar a(n, d), b(n * k, d * k), c2(n * k * k, d * k * k);
    CHECK(a == a);
    CHECK(a == b);
    CHECK(b == a);
    CHECK(b == c2);
    CHECK(a == c2);
  }
}

TEST_CASE("FracScalar field operations") {
  const FracScalar x(qint(2), HalfLaurent::Q() - HalfLaurent::monomial(-2, 0));
  CHECK(x * x.inverse() == FracScalar(1));
  CHECK(x - x == FracScalar());
  CHECK((x + FracScalar(1)) * FracScalar(2) == x * FracScalar(2) + FracScalar(2));
  // (Q^2 - Q^-2) / (Q - Q^-1) reduces to [2]
  const FracScalar y(Qpow(2) - Qpow(-2), Qpow(1) - Qpow(-1));
  CHECK(y == FracScalar(qint(2)));
  CHECK(y.is_polynomial());
  CHECK_THROWS_AS(FracScalar().inverse(), DomainError);
}

TEST_CASE("FracScalar evaluation names a vanishing denominator") {
  const FracScalar x(HalfLaurent(1), HalfLaurent::Q() - HalfLaurent::lambda());
  NumericParams at{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(eval_numeric(x, at), EvaluationError);
}

TEST_CASE("rad_normalize") {
  CHECK(RadScalar(1, {2, 2}) == RadScalar(qint(2)));
  CHECK(RadScalar(FracScalar(5), {}) == RadScalar(5));
  CHECK(RadScalar(1, {2, 3}) * RadScalar(1, {3}) == RadScalar(FracScalar(qint(3)), {2}));
  CHECK(RadScalar(1, {1, 2}) == RadScalar(1, {2}));
  CHECK(RadScalar(1, {0, 2}).is_zero());

  const RadScalar raw = RadScalar::raw({{FracScalar(1), {2, 3, 2}}, {FracScalar(2), {3}}, {FracScalar(-1), {3}}});
  const RadScalar once = rad_normalize(raw);
  CHECK(rad_normalize(once) == once);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto at = random_point(rng);
    CHECK(rel_err(eval_numeric(raw, at), eval_numeric(once, at)) < 1e-12);
    CHECK(rel_err(eval_numeric(RadScalar::raw({{FracScalar(1), {2, 2}}}), at), eval_numeric(qint(2), at)) < 1e-12);
  }
}

TEST_CASE("equal radicands multiply to a rational value") {
  for (int a = 2; a < 6; ++a)
    for (int b = a + 1; b < 7; ++b) {
      const RadScalar x(FracScalar(3), {a, b});
      CHECK((x * RadScalar(FracScalar(qint(2)), {a, b})).is_rational());
    }
}

TEST_CASE("radicals of negative values are rejected") {
  CHECK_THROWS_AS(RadScalar(1, {-2}), DomainError);
}
