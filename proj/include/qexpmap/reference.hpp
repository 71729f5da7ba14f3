#pragma once

// Reference matrices as printed: the defining T, T^{(1;1/2)}, L^{+-} and
// L^{+-(1)} (symmetric normalization), and the 4x4 R-matrix. Each entry is
// a radical factor times an expression in the parser grammar, so the data
// is independent of the routines that compute the same matrices.

#include <vector>

#include "qexpmap/matrix.hpp"
#include "qexpmap/ncrewrite.hpp"
#include "qexpmap/parser.hpp"
#include "qexpmap/qalg_u.hpp"
#include "qexpmap/qgroup_a.hpp"

namespace qexpmap {

struct RefEntry {
  std::vector<int> rad;  // radicand of the leading square root, empty for none
  const char* expr;
};

using RefTable = std::vector<std::vector<RefEntry>>;

inline const RefTable& ref_t_defining() {
  static const RefTable t = {{{{}, "a"}, {{}, "b"}}, {{{}, "c"}, {{}, "d"}}};
  return t;
}

inline const RefTable& ref_t_one_half() {
  static const RefTable t = {
      {{{}, "D^(-1/2)*a^2"}, {{2}, "D^(-1/2)*Q^(-1/2)*a*b"}, {{}, "D^(-1/2)*lambda^-1*b^2"}},
      {{{2}, "D^(-1/2)*Q^(-1/2)*a*c"},
       {{}, "D^(-1/2)*(a*d + Q^-1*lambda^-1*b*c)"},
       {{2}, "D^(-1/2)*Q^(-1/2)*lambda^-1*b*d"}},
      {{{}, "D^(-1/2)*lambda*c^2"}, {{2}, "D^(-1/2)*Q^(-1/2)*lambda*c*d"}, {{}, "D^(-1/2)*d^2"}},
  };
  return t;
}

/// q^{J0} = k, J+ = e, J- = f.
inline const RefTable& ref_l(int sign, int j2) {
  static const RefTable lp = {{{{}, "k^-1"}, {{}, "0"}}, {{{}, "q^(1/2)*(q^-1 - q)*e"}, {{}, "k"}}};
  static const RefTable lm = {{{{}, "k"}, {{}, "q^(-1/2)*(q - q^-1)*f"}}, {{{}, "0"}, {{}, "k^-1"}}};
  static const RefTable lp1 = {
      {{{}, "k^-2"}, {{}, "0"}, {{}, "0"}},
      {{{2}, "(1 - q^2)*k^-1*e"}, {{}, "1"}, {{}, "0"}},
      {{{}, "q^-1*(1 - q^2)^2*e^2"}, {{2}, "q^-1*(1 - q^2)*k*e"}, {{}, "k^2"}},
  };
  static const RefTable lm1 = {
      {{{}, "k^2"}, {{2}, "q*(1 - q^-2)*k*f"}, {{}, "q*(1 - q^-2)^2*f^2"}},
      {{{}, "0"}, {{}, "1"}, {{2}, "(1 - q^-2)*k^-1*f"}},
      {{{}, "0"}, {{}, "0"}, {{}, "k^-2"}},
  };
  if (j2 == 1) return sign > 0 ? lp : lm;
  if (j2 == 2) return sign > 0 ? lp1 : lm1;
  throw UsageError("no reference L-matrix for this spin");
}

/// Rows and columns ordered (1/2,1/2), (1/2,-1/2), (-1/2,1/2), (-1/2,-1/2).
inline const RefTable& ref_r_half() {
  static const RefTable t = {
      {{{}, "Q^(1/2)*Q^-1"}, {{}, "0"}, {{}, "0"}, {{}, "0"}},
      {{{}, "0"}, {{}, "Q^(1/2)*lambda^-1"}, {{}, "Q^(1/2)*(Q^-1 - Q)"}, {{}, "0"}},
      {{{}, "0"}, {{}, "0"}, {{}, "Q^(1/2)*lambda"}, {{}, "0"}},
      {{{}, "0"}, {{}, "0"}, {{}, "0"}, {{}, "Q^(1/2)*Q^-1"}},
  };
  return t;
}

template <class F>
Matrix<NCPoly<F>> reference_matrix(const RefTable& t, const PresentationPtr<F>& p) {
  Matrix<NCPoly<F>> m(t.size(), t.size(), NCPoly<F>(p));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto& e = t[i][k];
      NCPoly<F> x = normal_order(parse(e.expr, p));
      if (!e.rad.empty()) x = x.scaled(p->lift(RadScalar(FracScalar(1), e.rad)));
      m(i, k) = std::move(x);
    }
  return m;
}

template <class F>
Matrix<typename F::Scalar> reference_scalar_matrix(const RefTable& t, const ScalarContext<F>& ctx) {
  const auto p = scalar_presentation(ctx.field, ctx.unit_lambda);
  const auto m = reference_matrix(t, p);
  return m.map([](const NCPoly<F>& x) { return x.constant_term(); });
}

}  // namespace qexpmap
