#pragma once

// Check reports and field-aware identity assertions.

#include <algorithm>
#include <cmath>
#include <string>

#include "qexpmap/json_io.hpp"
#include "qexpmap/matrix.hpp"
#include "qexpmap/ncrewrite.hpp"

namespace qexpmap {

struct Report {
  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  std::string check;
  Json params = Json::object();
  bool pass = true;
  Json residuals = Json::array();
  std::string note;
  std::size_t identities = 0;

  Json to_json() const {
    Json o;
    o["check"] = check;
    o["params"] = params;
    o["pass"] = pass;
    o["residuals"] = residuals;
    if (!note.empty()) o["note"] = note;
    o["identities"] = identities;
    return o;
  }

  void fail(const std::string& label, Json residual) {
    pass = false;
    Json r;
    r["label"] = label;
    r["residual"] = std::move(residual);
    residuals.push_back(std::move(r));
  }
};

namespace detail {

template <class F>
double max_magnitude(const NCPoly<F>& x) {
  double m = 0;
  for (const auto& [w, c] : x.terms()) m = std::max(m, x.presentation()->field.magnitude(c));
  return m;
}

}  // namespace detail

/// True when lhs and rhs agree: exactly in symbolic fields, to the field's
/// relative tolerance in the numeric one.
template <class F>
bool agree(const NCPoly<F>& lhs, const NCPoly<F>& rhs, NCPoly<F>* diff_out = nullptr) {
  NCPoly<F> diff = normal_order(lhs - rhs);
  bool ok;
  if constexpr (F::exact) {
    ok = diff.is_zero();
  } else {
    const double scale = std::max({1.0, detail::max_magnitude(lhs), detail::max_magnitude(rhs)});
    ok = detail::max_magnitude(diff) <= lhs.presentation()->field.rel_tol * scale;
  }
  if (diff_out) *diff_out = std::move(diff);
  return ok;
}

template <class F>
bool agree_scalar(const F& field, const typename F::Scalar& a, const typename F::Scalar& b) {
  if constexpr (F::exact) {
    return field.is_zero(a - b);
  } else {
    const double scale = std::max({1.0, field.magnitude(a), field.magnitude(b)});
    return field.magnitude(a - b) <= field.rel_tol * scale;
  }
}

template <class F>
bool expect_equal(Report& r, const std::string& label, const NCPoly<F>& lhs, const NCPoly<F>& rhs) {
  ++r.identities;
  NCPoly<F> diff;
  if (agree(lhs, rhs, &diff)) return true;
  r.fail(label, to_json(diff));
  return false;
}

template <class F>
bool expect_zero(Report& r, const std::string& label, const NCPoly<F>& x) {
  return expect_equal(r, label, x, NCPoly<F>(x.presentation()));
}

template <class F>
bool expect_equal_scalar(Report& r, const std::string& label, const F& field, const typename F::Scalar& a,
                         const typename F::Scalar& b) {
  ++r.identities;
  if (agree_scalar(field, a, b)) return true;
  r.fail(label, to_json(typename F::Scalar(a - b)));
  return false;
}

/// Entrywise comparison of polynomial matrices.
template <class F>
bool expect_equal_matrix(Report& r, const std::string& label, const Matrix<NCPoly<F>>& a,
                         const Matrix<NCPoly<F>>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    ++r.identities;
    r.fail(label + " shape", Json("dimension mismatch"));
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      ok &= expect_equal(r, label + "(" + std::to_string(i) + "," + std::to_string(j) + ")", a(i, j), b(i, j));
  return ok;
}

template <class F>
bool expect_equal_scalar_matrix(Report& r, const std::string& label, const F& field,
                                const Matrix<typename F::Scalar>& a, const Matrix<typename F::Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    ++r.identities;
    r.fail(label + " shape", Json("dimension mismatch"));
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      ok &= expect_equal_scalar(r, label + "(" + std::to_string(i) + "," + std::to_string(j) + ")", field, a(i, j),
                                b(i, j));
  return ok;
}

/// Matrix equality without recording anything.
template <class F>
bool scalar_matrices_agree(const F& field, const Matrix<typename F::Scalar>& a, const Matrix<typename F::Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!agree_scalar(field, a(i, j), b(i, j))) return false;
  return true;
}

}  // namespace qexpmap
