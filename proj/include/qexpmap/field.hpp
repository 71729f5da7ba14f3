#pragma once

// Coefficient fields the algebra engine is instantiated over.
//
// Every formula in the kernel is first written down exactly (HalfLaurent,
// FracScalar or RadScalar) and then lifted into the working field. The
// exact fields keep it symbolic; NumericField evaluates at a parameter
// point so every identity can be re-run in floating point.

#include <algorithm>
#include <cmath>
#include <string>

#include "qexpmap/qscalar.hpp"

namespace qexpmap {

struct ExactField {
  using Scalar = FracScalar;
  static constexpr bool exact = true;
  static constexpr bool has_division = true;

  Scalar lift(const HalfLaurent& h) const { return FracScalar(h); }
  Scalar lift(const FracScalar& f) const { return f; }
  Scalar lift(const RadScalar& r) const {
    if (!r.is_rational()) throw DomainError("radical coefficient in the rational field");
    return r.rational_part();
  }
  Scalar at_unit_lambda(const Scalar& s) const { return s.at_unit_lambda(); }
  Scalar inverse(const Scalar& s) const { return s.inverse(); }
  bool is_zero(const Scalar& s) const { return s.is_zero(); }
  double magnitude(const Scalar&) const { return 0; }
  std::string name() const { return "rational"; }
};

struct RadicalField {
  using Scalar = RadScalar;
  static constexpr bool exact = true;
  static constexpr bool has_division = false;

  Scalar lift(const HalfLaurent& h) const { return RadScalar(h); }
  Scalar lift(const FracScalar& f) const { return RadScalar(f); }
  Scalar lift(const RadScalar& r) const { return r; }
  Scalar at_unit_lambda(const Scalar& s) const { return s.at_unit_lambda(); }
  bool is_zero(const Scalar& s) const { return s.is_zero(); }
  double magnitude(const Scalar&) const { return 0; }
  std::string name() const { return "radical"; }
};

struct NumericField {
  using Scalar = Real;
  static constexpr bool exact = false;
  static constexpr bool has_division = true;

  NumericParams at;
  double rel_tol = 1e-10;

  Scalar lift(const HalfLaurent& h) const { return eval_numeric(h, at); }
  Scalar lift(const FracScalar& f) const { return eval_numeric(f, at); }
  Scalar lift(const RadScalar& r) const { return eval_numeric(r, at); }
  // Numeric points used for the lambda = 1 sector already have p = q.
  Scalar at_unit_lambda(const Scalar& s) const { return s; }
  Scalar inverse(const Scalar& s) const {
    if (s == 0) throw EvaluationError("division by zero in numeric field");
    return 1 / s;
  }
  bool is_zero(const Scalar& s) const { return s == 0; }
  double magnitude(const Scalar& s) const { return static_cast<double>(abs(s)); }
  std::string name() const { return "numeric"; }
};

/// A field together with the lambda = 1 flag of the sector it serves.
template <class F>
struct ScalarContext {
  using Scalar = typename F::Scalar;
  F field{};
  bool unit_lambda = false;

  Scalar lift(const HalfLaurent& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar lift(const FracScalar& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar lift(const RadScalar& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar one() const { return field.lift(HalfLaurent(1)); }
  Scalar monomial(int qhalf, int lhalf) const { return lift(HalfLaurent::monomial(qhalf, lhalf)); }
};

template <class F>
concept CoefficientField = requires(const F& f, const typename F::Scalar& s, const HalfLaurent& h) {
  { f.lift(h) } -> std::convertible_to<typename F::Scalar>;
  { f.is_zero(s) } -> std::convertible_to<bool>;
  { f.magnitude(s) } -> std::convertible_to<double>;
};

}  // namespace qexpmap
