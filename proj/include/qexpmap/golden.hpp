#pragma once

// Golden document: the printed matrices as computed by the kernel, in the
// JSON encoding. Recorded once and byte-compared afterwards.

#include <string>
#include <vector>

#include "qexpmap/expmap.hpp"

namespace qexpmap {

inline Json golden_document() {
  Json doc;
  const AAlgebra<RadicalField> A(RadicalField{}, false);
  const AAlgebra<RadicalField> Au(RadicalField{}, true);
  const UAlgebra<RadicalField> U(RadicalField{});
  doc["T(1/2;1/2)"] = to_json(t_matrix_closed(A, {1, 1}, Normalization::symmetric).entries);
  doc["T(1;1/2)"] = to_json(t_matrix_closed(A, {2, 1}, Normalization::symmetric).entries);
  doc["L+(1/2)"] = to_json(l_matrix(1, 1, Normalization::symmetric, Au, U).entries);
  doc["L-(1/2)"] = to_json(l_matrix(-1, 1, Normalization::symmetric, Au, U).entries);
  doc["L+(1)"] = to_json(l_matrix(1, 2, Normalization::symmetric, Au, U).entries);
  doc["L-(1)"] = to_json(l_matrix(-1, 2, Normalization::symmetric, Au, U).entries);
  const ScalarContext<ExactField> ctx{};
  doc["R(1/2,1/2;1/2,1/2)"] = scalar_matrix_json(r_matrix_rep({1, 1}, {1, 1}, Normalization::rational, ctx));
  return doc;
}

inline std::string golden_text() { return golden_document().dump(1) + "\n"; }

/// Entry-level differences between two golden documents.
inline std::vector<std::string> golden_differences(const Json& expected, const Json& actual) {
  std::vector<std::string> out;
  for (const auto& [key, m] : expected.items()) {
    if (!actual.contains(key)) {
      out.push_back(key + ": missing");
      continue;
    }
    const Json& a = actual.at(key);
    if (!m.is_array() || !a.is_array() || m.size() != a.size()) {
      out.push_back(key + ": shape differs");
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_array() || !a[i].is_array() || m[i].size() != a[i].size()) {
        out.push_back(key + " row " + std::to_string(i) + ": shape differs");
        continue;
      }
      for (std::size_t k = 0; k < m[i].size(); ++k)
        if (m[i][k] != a[i][k]) out.push_back(key + "(" + std::to_string(i) + "," + std::to_string(k) + ")");
    }
  }
  for (const auto& [key, m] : actual.items())
    if (!expected.contains(key)) out.push_back(key + ": unexpected");
  return out;
}

}  // namespace qexpmap
