#include "qexpmap/ncrewrite.hpp"

#include <cstdlib>

namespace qexpmap {

bool Word::is_empty() const {
  return body.empty() && std::all_of(scaling.begin(), scaling.end(), [](int s) { return s == 0; });
}

int Word::degree() const {
  int d = 0;
  for (const auto& [g, e] : body) d += std::abs(e);
  return d;
}

bool Word::has_negative_exponent() const {
  return std::any_of(body.begin(), body.end(), [](const auto& r) { return r.second < 0; });
}

void push_run(std::vector<std::pair<int, int>>& body, int gen, int exp) {
  if (exp == 0) return;
  if (!body.empty() && body.back().first == gen) {
    body.back().second += exp;
    if (body.back().second == 0) body.pop_back();
    return;
  }
  body.emplace_back(gen, exp);
}

}  // namespace qexpmap
