#pragma once

// Text and LaTeX rendering of scalars, polynomials and matrices.
//
// Text output uses the parser's grammar, so rational-coefficient
// polynomials read back to themselves. Radicals print as sqrt([n]*[m]),
// which the parser does not accept; JSON is the lossless format.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qexpmap/matrix.hpp"
#include "qexpmap/ncrewrite.hpp"
#include "qexpmap/qscalar.hpp"

namespace qexpmap {

enum class Format { text, json, latex };

struct RenderStyle {
  Format format = Format::text;
  // lambda = 1 sector: Q prints as q and radicals as \sqrt{..}
  bool unit_lambda = false;
};

namespace detail {

struct CoeffText {
  bool negative = false;
  std::string body;       // magnitude, empty when it is exactly 1
  bool compound = false;  // a sum; needs parentheses inside a product
};

inline bool is_latex(const RenderStyle& s) { return s.format == Format::latex; }

inline std::string half_text(int h, const RenderStyle& s) {
  if (h % 2 == 0) return std::to_string(h / 2);
  if (is_latex(s)) return std::string(h < 0 ? "-" : "") + "\\frac{" + std::to_string(std::abs(h)) + "}{2}";
  return std::to_string(h) + "/2";
}

/// base^{h/2}
inline std::string power(const std::string& base, int h, const RenderStyle& s) {
  if (h == 0) return "";
  if (h == 2) return base;
  if (is_latex(s)) return base + "^{" + half_text(h, s) + "}";
  if (h % 2 == 0) return base + "^" + std::to_string(h / 2);
  return base + "^(" + std::to_string(h) + "/2)";
}

inline std::string join_product(const std::vector<std::string>& parts, const RenderStyle& s) {
  std::string r;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!r.empty() && !is_latex(s)) r += "*";
    if (!r.empty() && is_latex(s) && std::isalpha(static_cast<unsigned char>(p.front()))) {
      // keep a trailing control word such as \lambda apart from the next letter
      std::size_t i = r.size();
      while (i > 0 && std::isalpha(static_cast<unsigned char>(r[i - 1]))) --i;
      if (i > 0 && i < r.size() && r[i - 1] == '\\') r += " ";
    }
    r += p;
  }
  return r;
}

inline std::string monomial_text(int u, int v, const RenderStyle& s) {
  const bool tex = is_latex(s);
  const std::string Qs = s.unit_lambda ? "q" : "Q";
  const std::string Ls = tex ? "\\lambda" : "lambda";
  if (v == 0) return power(Qs, u, s);
  if (u == 0) return power(Ls, v, s);
  if (!tex && (u + v) % 4 == 0 && (u - v) % 4 == 0) {
    return join_product({power("p", (u + v) / 2, s), power("q", (u - v) / 2, s)}, s);
  }
  return join_product({power(Qs, u, s), power(Ls, v, s)}, s);
}

inline std::string rational_text(const mpq_class& r, const RenderStyle& s) {
  if (is_latex(s) && r.get_den() != 1) return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
  return to_string(r);
}

inline std::vector<HalfLaurent::Term> display_order(const HalfLaurent& h) {
  std::vector<HalfLaurent::Term> t(h.terms().begin(), h.terms().end());
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return a.qhalf != b.qhalf ? a.qhalf > b.qhalf : a.lhalf > b.lhalf;
  });
  return t;
}

inline std::string sum_text(const std::vector<std::pair<bool, std::string>>& items, const RenderStyle& s) {
  std::string r;
  const std::string plus = is_latex(s) ? "+" : " + ", minus = is_latex(s) ? "-" : " - ";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [neg, body] = items[i];
    if (i == 0) {
      r += neg ? "-" : "";
    } else {
      r += neg ? minus : plus;
    }
    r += body;
  }
  return r;
}

inline CoeffText coeff_text(const HalfLaurent& h, const RenderStyle& s) {
  CoeffText out;
  if (h.is_zero()) {
    out.body = "0";
    return out;
  }
  const auto terms = display_order(h);
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& t : terms) {
    const mpq_class mag = abs(t.coeff);
    const std::string m = monomial_text(t.qhalf, t.lhalf, s);
    std::string body;
    if (m.empty()) {
      body = rational_text(mag, s);
    } else if (mag == 1) {
      body = m;
    } else {
      body = join_product({rational_text(mag, s), m}, s);
    }
    items.emplace_back(sgn(t.coeff) < 0, body);
  }
  if (items.size() == 1) {
    out.negative = items[0].first;
    out.body = (items[0].second == "1") ? "" : items[0].second;
    return out;
  }
  out.negative = items[0].first;
  if (out.negative)
    for (auto& it : items) it.first = !it.first;
  out.body = sum_text(items, s);
  out.compound = true;
  return out;
}

inline std::string wrap(const CoeffText& c, const RenderStyle& s) {
  if (!c.compound) return c.body;
  return is_latex(s) ? "\\left(" + c.body + "\\right)" : "(" + c.body + ")";
}

inline std::string standalone(const CoeffText& c) {
  std::string b = c.body.empty() ? "1" : c.body;
  if (!c.negative) return b;
  return c.compound ? "-(" + b + ")" : "-" + b;
}

inline CoeffText coeff_text(const FracScalar& f, const RenderStyle& s) {
  if (f.is_polynomial()) return coeff_text(f.num(), s);
  CoeffText n = coeff_text(f.num(), s);
  CoeffText d = coeff_text(f.den(), s);
  CoeffText out;
  out.negative = n.negative != d.negative;
  const std::string nb = n.body.empty() ? "1" : n.body;
  const std::string db = d.body.empty() ? "1" : d.body;
  if (is_latex(s)) {
    out.body = "\\frac{" + nb + "}{" + db + "}";
  } else {
    out.body = (n.compound ? "(" + nb + ")" : nb) + "/(" + db + ")";
  }
  return out;
}

inline std::string radical_text(const std::vector<int>& rad, const RenderStyle& s) {
  if (rad.empty()) return "";
  std::string inner;
  for (int n : rad) {
    if (!inner.empty() && !is_latex(s)) inner += "*";
    inner += "[" + std::to_string(n) + "]";
  }
  if (!is_latex(s)) return "sqrt(" + inner + ")";
  if (s.unit_lambda || rad.size() > 1) return "\\sqrt{" + inner + "}";
  return inner + "^{\\frac{1}{2}}";
}

inline CoeffText coeff_text(const RadScalar& r, const RenderStyle& s) {
  if (r.is_zero()) return {false, "0", false};
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& t : r.terms()) {
    CoeffText c = coeff_text(t.coeff, s);
    const std::string rad = radical_text(t.radicand, s);
    std::string body = join_product({rad, wrap(c, s)}, s);
    items.emplace_back(c.negative, body);
  }
  CoeffText out;
  if (items.size() == 1) {
    if (r.terms()[0].radicand.empty()) return coeff_text(r.terms()[0].coeff, s);
    out.negative = items[0].first;
    out.body = items[0].second;
    return out;
  }
  out.negative = items[0].first;
  if (out.negative)
    for (auto& it : items) it.first = !it.first;
  out.body = sum_text(items, s);
  out.compound = true;
  return out;
}

inline CoeffText coeff_text(const Real& x, const RenderStyle&) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(abs(x)));
  CoeffText out;
  out.negative = x < 0;
  out.body = std::string(buf) == "1" ? "" : buf;
  return out;
}

inline std::optional<HalfLaurent> denominator_of(const FracScalar& f) {
  if (f.is_polynomial()) return std::nullopt;
  return f.den();
}
template <class T>
std::optional<HalfLaurent> denominator_of(const T&) {
  return std::nullopt;
}

}  // namespace detail

inline std::string render_scalar(const HalfLaurent& x, const RenderStyle& s = {}) {
  return detail::standalone(detail::coeff_text(x, s));
}
inline std::string render_scalar(const FracScalar& x, const RenderStyle& s = {}) {
  return detail::standalone(detail::coeff_text(x, s));
}
inline std::string render_scalar(const RadScalar& x, const RenderStyle& s = {}) {
  return detail::standalone(detail::coeff_text(x, s));
}
inline std::string render_scalar(const Real& x, const RenderStyle& s = {}) {
  return detail::standalone(detail::coeff_text(x, s));
}

template <class F>
std::string render_word(const Presentation<F>& p, const Word& w, const RenderStyle& s) {
  const bool tex = detail::is_latex(s);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < w.scaling.size(); ++i) {
    const int h = w.scaling[i];
    if (h == 0) continue;
    const auto& g = p.scalings[i];
    if (!tex) {
      parts.push_back(detail::power(p.display_name(g), h, s));
      continue;
    }
    // LaTeX templates: $e -> exponent as r/s, $c -> coefficient of the exponent
    std::string t = g.latex;
    const std::string e = h % 2 == 0 ? std::to_string(h / 2) : std::to_string(h) + "/2";
    const std::string c = h == 2 ? "" : h == -2 ? "-" : detail::half_text(h, s);
    if (auto pos = t.find("$e"); pos != std::string::npos) t.replace(pos, 2, e);
    if (auto pos = t.find("$c"); pos != std::string::npos) t.replace(pos, 2, c);
    if (p.legs > 1) t = "{" + t + "}_{" + std::to_string(g.leg + 1) + "}";
    parts.push_back(t);
  }
  for (const auto& [g, e] : w.body) {
    const auto& gen = p.gens[g];
    std::string base = tex ? gen.latex : p.display_name(gen);
    if (tex && p.legs > 1) base = "{" + base + "}_{" + std::to_string(gen.leg + 1) + "}";
    parts.push_back(detail::power(base, 2 * e, s));
  }
  return detail::join_product(parts, s);
}

/// Terms are ordered by descending degree, then by word; terms sharing a
/// non-trivial denominator are written over it once.
template <class F>
std::string render(const NCPoly<F>& x, const RenderStyle& s = {}) {
  if (x.is_zero()) return "0";
  const auto& p = *x.presentation();
  RenderStyle st = s;
  st.unit_lambda = st.unit_lambda || p.unit_lambda;
  const bool tex = detail::is_latex(st);

  std::vector<std::pair<Word, typename F::Scalar>> terms(x.terms().begin(), x.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.degree(), db = b.first.degree();
    return da != db ? da > db : a.first < b.first;
  });

  std::vector<std::pair<bool, std::string>> items;
  std::vector<bool> used(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    const auto den = detail::denominator_of(terms[i].second);
    if (den) {
      std::vector<std::size_t> group;
      for (std::size_t k = i; k < terms.size(); ++k) {
        if (used[k]) continue;
        const auto dk = detail::denominator_of(terms[k].second);
        if (dk && *dk == *den) group.push_back(k);
      }
      if (group.size() > 1) {
        std::vector<std::pair<bool, std::string>> inner;
        for (std::size_t k : group) {
          used[k] = true;
          if constexpr (std::is_same_v<typename F::Scalar, FracScalar>) {
            detail::CoeffText c = detail::coeff_text(terms[k].second.num(), st);
            const std::string w = render_word(p, terms[k].first, st);
            std::string body = detail::join_product({detail::wrap(c, st), w}, st);
            if (body.empty()) body = "1";
            inner.emplace_back(c.negative, body);
          }
        }
        std::stable_partition(inner.begin(), inner.end(), [](const auto& it) { return !it.first; });
        bool neg = inner.front().first;
        if (neg)
          for (auto& it : inner) it.first = !it.first;
        detail::CoeffText d = detail::coeff_text(*den, st);
        if (d.negative) neg = !neg;
        const std::string db = d.body.empty() ? "1" : d.body;
        const std::string num = detail::sum_text(inner, st);
        items.emplace_back(neg, tex ? "\\frac{" + num + "}{" + db + "}" : "(" + num + ")/(" + db + ")");
        continue;
      }
    }
    used[i] = true;
    detail::CoeffText c = detail::coeff_text(terms[i].second, st);
    const std::string w = render_word(p, terms[i].first, st);
    std::string body;
    if (w.empty()) {
      body = c.body.empty() ? "1" : (c.negative || terms.size() > 1) ? detail::wrap(c, st) : c.body;
    } else if (den && !tex) {
      // n/(d) * w reads back as (n*w)/(d)
      if constexpr (std::is_same_v<typename F::Scalar, FracScalar>) {
        const detail::CoeffText n = detail::coeff_text(terms[i].second.num(), st);
        const detail::CoeffText d = detail::coeff_text(*den, st);
        body = detail::join_product({detail::wrap(n, st), w}, st) + "/(" + (d.body.empty() ? "1" : d.body) + ")";
      }
    } else {
      body = detail::join_product({detail::wrap(c, st), w}, st);
    }
    items.emplace_back(c.negative, body);
  }
  return detail::sum_text(items, st);
}

template <class T, class Fn>
std::string render_matrix_with(const Matrix<T>& m, const RenderStyle& s, Fn&& entry, const std::string& prefix = {}) {
  std::string r;
  if (detail::is_latex(s)) {
    r = prefix.empty() ? "" : prefix + " ";
    r += "\\left(\\begin{array}{" + std::string(m.cols(), 'c') + "}\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) r += " & ";
        r += entry(m(i, j));
      }
      r += i + 1 < m.rows() ? " \\\\\n" : "\n";
    }
    r += "\\end{array}\\right)";
    return r;
  }
  if (!prefix.empty()) r = prefix + " * ";
  r += "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) r += ",\n ";
    r += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) r += ", ";
      r += entry(m(i, j));
    }
    r += "]";
  }
  r += "]";
  return r;
}

/// Matrix of polynomials. When every nonzero entry carries the same scaling
/// part, LaTeX output pulls it out in front of the matrix.
template <class F>
std::string render_matrix(const Matrix<NCPoly<F>>& m, const RenderStyle& s = {}) {
  if (!detail::is_latex(s) || m.rows() == 0) {
    return render_matrix_with(m, s, [&](const NCPoly<F>& e) { return render(e, s); });
  }
  std::optional<std::vector<int>> common;
  bool uniform = true;
  PresentationPtr<F> pres;
  for (std::size_t i = 0; i < m.rows() && uniform; ++i)
    for (std::size_t j = 0; j < m.cols() && uniform; ++j)
      for (const auto& [w, c] : m(i, j).terms()) {
        pres = m(i, j).presentation();
        if (!common) {
          common = w.scaling;
        } else if (*common != w.scaling) {
          uniform = false;
          break;
        }
      }
  if (!uniform || !common || std::all_of(common->begin(), common->end(), [](int h) { return h == 0; })) {
    return render_matrix_with(m, s, [&](const NCPoly<F>& e) { return render(e, s); });
  }
  Word lead = pres->empty_word();
  lead.scaling = *common;
  const std::string prefix = render_word(*pres, lead, s);
  return render_matrix_with(
      m, s,
      [&](const NCPoly<F>& e) {
        // strip the common scaling part; it commutes out to the left unchanged
        NCPoly<F> stripped(e.presentation());
        for (const auto& [w, c] : e.terms()) {
          Word nw = w;
          std::fill(nw.scaling.begin(), nw.scaling.end(), 0);
          stripped.add_term(nw, c);
        }
        return render(stripped, s);
      },
      prefix);
}

template <class S>
std::string render_scalar_matrix(const Matrix<S>& m, const RenderStyle& s = {}) {
  return render_matrix_with(m, s, [&](const S& e) { return render_scalar(e, s); });
}

}  // namespace qexpmap
