#include "qexpmap/json_io.hpp"

namespace qexpmap {

int half_units_from_string(const std::string& s) {
  mpq_class r;
  try {
    r = mpq_class(s);
  } catch (const std::invalid_argument&) {
    throw JsonFormatError("bad rational '" + s + "'");
  }
  r.canonicalize();
  const mpq_class h = r * 2;
  if (h.get_den() != 1) throw JsonFormatError("exponent '" + s + "' is not a multiple of 1/2");
  return static_cast<int>(h.get_num().get_si());
}

HalfLaurent half_laurent_from_json(const Json& j) {
  if (!j.is_array()) throw JsonFormatError("HalfLaurent must be an array");
  HalfLaurent h;
  for (const auto& t : j) {
    mpq_class c(detail::integer_from_json(t.at("num")), detail::integer_from_json(t.at("den")));
    c.canonicalize();
    h += HalfLaurent::monomial(t.at("qhalf").get<int>(), t.at("lhalf").get<int>(), c);
  }
  return h;
}

FracScalar frac_from_json(const Json& j) {
  if (!j.is_object()) throw JsonFormatError("FracScalar must be an object");
  return FracScalar(half_laurent_from_json(j.at("num")), half_laurent_from_json(j.at("den")));
}

RadScalar rad_from_json(const Json& j) {
  if (!j.is_array()) throw JsonFormatError("RadScalar must be an array");
  RadScalar r;
  for (const auto& t : j) r += RadScalar(frac_from_json(t.at("coeff")), t.at("rad").get<std::vector<int>>());
  return r;
}

}  // namespace qexpmap
