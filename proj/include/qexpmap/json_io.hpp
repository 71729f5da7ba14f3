#pragma once

// JSON encodings.
//
//   HalfLaurent  [{"num": n, "den": d, "qhalf": u, "lhalf": v}, ...]
//   FracScalar   {"num": <HalfLaurent>, "den": <HalfLaurent>}
//   RadScalar    [{"coeff": <FracScalar>, "rad": [n, ...]}, ...]
//   NCPoly       [{"dpow": "r/s", "word": [["gen", e], ...], "coeff": <scalar>}, ...]
//
// Presentations with several scaling generators write "dpow" as an array
// with one entry per scaling generator.

#include <string>

#include "json.hpp"
#include "qexpmap/matrix.hpp"
#include "qexpmap/ncrewrite.hpp"
#include "qexpmap/qscalar.hpp"

namespace qexpmap {

using Json = nlohmann::ordered_json;

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

inline mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw JsonFormatError("expected an integer");
}

}  // namespace detail

/// "r/s" text for a half-unit count.
inline std::string half_units_string(int h) {
  if (h % 2 == 0) return std::to_string(h / 2);
  return std::to_string(h) + "/2";
}

int half_units_from_string(const std::string& s);

inline Json to_json(const HalfLaurent& h) {
  Json a = Json::array();
  for (const auto& t : h.terms()) {
    Json o;
    o["num"] = detail::integer_json(t.coeff.get_num());
    o["den"] = detail::integer_json(t.coeff.get_den());
    o["qhalf"] = t.qhalf;
    o["lhalf"] = t.lhalf;
    a.push_back(std::move(o));
  }
  return a;
}

inline Json to_json(const FracScalar& f) {
  Json o;
  o["num"] = to_json(f.num());
  o["den"] = to_json(f.den());
  return o;
}

inline Json to_json(const RadScalar& r) {
  Json a = Json::array();
  for (const auto& t : r.terms()) {
    Json o;
    o["coeff"] = to_json(t.coeff);
    o["rad"] = t.radicand;
    a.push_back(std::move(o));
  }
  return a;
}

inline Json to_json(const Real& x) { return Json(static_cast<double>(x)); }

HalfLaurent half_laurent_from_json(const Json& j);
FracScalar frac_from_json(const Json& j);
RadScalar rad_from_json(const Json& j);

template <class S>
S scalar_from_json(const Json& j) {
  if constexpr (std::is_same_v<S, FracScalar>) {
    return frac_from_json(j);
  } else if constexpr (std::is_same_v<S, RadScalar>) {
    return rad_from_json(j);
  } else {
    if (!j.is_number()) throw JsonFormatError("expected a number");
    return S(j.get<double>());
  }
}

template <class F>
Json to_json(const NCPoly<F>& x) {
  Json a = Json::array();
  const auto& p = *x.presentation();
  for (const auto& [w, c] : x.terms()) {
    Json o;
    if (w.scaling.size() == 1) {
      o["dpow"] = half_units_string(w.scaling[0]);
    } else {
      Json d = Json::array();
      for (int h : w.scaling) d.push_back(half_units_string(h));
      o["dpow"] = d;
    }
    Json word = Json::array();
    for (const auto& [g, e] : w.body) word.push_back(Json::array({p.display_name(p.gens[g]), e}));
    o["word"] = word;
    o["coeff"] = to_json(c);
    a.push_back(std::move(o));
  }
  return a;
}

template <class F>
NCPoly<F> poly_from_json(const Json& j, const PresentationPtr<F>& p) {
  if (!j.is_array()) throw JsonFormatError("polynomial must be an array");
  NCPoly<F> r(p);
  for (const auto& t : j) {
    Word w = p->empty_word();
    const Json& d = t.at("dpow");
    if (d.is_string()) {
      if (w.scaling.size() != 1) throw JsonFormatError("dpow arity mismatch");
      w.scaling[0] = half_units_from_string(d.get<std::string>());
    } else {
      if (d.size() != w.scaling.size()) throw JsonFormatError("dpow arity mismatch");
      for (std::size_t i = 0; i < d.size(); ++i) w.scaling[i] = half_units_from_string(d[i].get<std::string>());
    }
    for (const auto& run : t.at("word")) {
      const int g = p->gen_index(run.at(0).get<std::string>());
      if (g < 0) throw JsonFormatError("unknown generator " + run.at(0).get<std::string>());
      push_run(w.body, g, run.at(1).get<int>());
    }
    r.add_term(w, scalar_from_json<typename F::Scalar>(t.at("coeff")));
  }
  return r;
}

template <class T, class Fn>
Json matrix_json(const Matrix<T>& m, Fn&& entry) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
Json to_json(const Matrix<NCPoly<F>>& m) {
  return matrix_json(m, [](const NCPoly<F>& e) { return to_json(e); });
}

template <class S>
Json scalar_matrix_json(const Matrix<S>& m) {
  return matrix_json(m, [](const S& e) { return to_json(e); });
}

}  // namespace qexpmap
