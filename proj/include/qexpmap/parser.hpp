#pragma once

// Expression parser for presented algebras.
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := atom ('^' rational)?
//   atom     := generator | integer | 'Q' | 'lambda' | 'p' | 'q' | '(' expr ')'
//   rational := ['-'] integer ['/' integer]  |  '(' rational ')'
//
// '/' divides by a factor that evaluates to a nonzero scalar. The result is
// returned unnormalized.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qexpmap/ncrewrite.hpp"

namespace qexpmap {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& msg)
      : std::runtime_error("syntax error at offset " + std::to_string(column) + ": " + msg), column_(column) {}
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

template <class F>
class Parser {
 public:
  using Terms = std::map<Word, FracScalar>;

  Parser(std::string_view text, const Presentation<F>& p) : s_(text), p_(p) {}

  Terms parse() {
    Terms r = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  enum class AtomKind { generator, scaling, symbol, number, group };

  struct Atom {
    AtomKind kind;
    Terms value;
    int gen = -1;           // generator / scaling index
    int qhalf = 0, lhalf = 0;  // for symbols
    std::size_t column = 0;
  };

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const { throw ParseError(pos + 1, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Terms constant(const FracScalar& c) const {
    Terms t;
    if (!c.is_zero()) t.emplace(p_.empty_word(), c);
    return t;
  }

  static void add_into(Terms& acc, const Word& w, const FracScalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = acc.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }

  Terms product(const Terms& a, const Terms& b) const {
    Terms r;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        auto [w, e] = concat_words(p_, wa, wb);
        FracScalar c = ca * cb;
        if (e.first != 0 || e.second != 0) c *= FracScalar(HalfLaurent::monomial(e.first, e.second));
        add_into(r, w, c);
      }
    return r;
  }

  bool is_scalar(const Terms& t) const {
    for (const auto& [w, c] : t)
      if (!w.is_empty()) return false;
    return true;
  }
  FracScalar scalar_of(const Terms& t) const {
    auto it = t.find(p_.empty_word());
    return it == t.end() ? FracScalar() : it->second;
  }

  Terms expr() {
    Terms acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Terms t = term();
    for (const auto& [w, c] : t) add_into(acc, w, negate ? -c : c);
    while (true) {
      if (accept('+')) {
        for (const auto& [w, c] : term()) add_into(acc, w, c);
      } else if (accept('-')) {
        for (const auto& [w, c] : term()) add_into(acc, w, -c);
      } else {
        break;
      }
    }
    return acc;
  }

  Terms term() {
    Terms acc = factor();
    while (true) {
      if (accept('*')) {
        acc = product(acc, factor());
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        Terms d = factor();
        if (!is_scalar(d)) fail_at(at, "division by a non-scalar expression");
        const FracScalar v = scalar_of(d);
        if (v.is_zero()) fail_at(at, "division by zero");
        acc = product(acc, constant(v.inverse()));
      } else {
        break;
      }
    }
    return acc;
  }

  long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  mpq_class rational() {
    if (accept('(')) {
      mpq_class r = rational();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    const bool neg = accept('-');
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an exponent");
    mpq_class r(integer());
    skip_ws();
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      const long d = integer();
      if (d == 0) fail("zero denominator in exponent");
      r /= d;
      r.canonicalize();
    }
    return neg ? mpq_class(-r) : r;
  }

  Terms factor() {
    Atom a = atom();
    if (!accept('^')) return std::move(a.value);
    const std::size_t at = pos_;
    const mpq_class r = rational();
    const bool integral = r.get_den() == 1;
    switch (a.kind) {
      case AtomKind::generator: {
        if (!integral) fail_at(at, "fractional power on non-scaling generator '" + p_.gens[a.gen].name + "'");
        const long n = r.get_num().get_si();
        if (n < 0 && p_.gens[a.gen].kind != GenKind::invertible)
          fail_at(at, "negative power of non-invertible generator '" + p_.gens[a.gen].name + "'");
        Word w = p_.empty_word();
        push_run(w.body, a.gen, static_cast<int>(n));
        Terms t;
        t.emplace(w, FracScalar(1));
        return t;
      }
      case AtomKind::scaling: {
        const mpq_class h = r * 2;
        if (h.get_den() != 1) fail_at(at, "scaling exponents must be multiples of 1/2");
        Word w = p_.empty_word();
        w.scaling[a.gen] = static_cast<int>(h.get_num().get_si());
        Terms t;
        t.emplace(w, FracScalar(1));
        return t;
      }
      case AtomKind::symbol: {
        const mpq_class u = r * a.qhalf, v = r * a.lhalf;
        if (u.get_den() != 1 || v.get_den() != 1) fail_at(at, "exponent leaves the half-integer lattice");
        return constant(HalfLaurent::monomial(static_cast<int>(u.get_num().get_si()),
                                              static_cast<int>(v.get_num().get_si())));
      }
      case AtomKind::number:
      case AtomKind::group: {
        if (!integral) fail_at(at, "fractional power of an expression");
        const long n = r.get_num().get_si();
        if (is_scalar(a.value)) {
          FracScalar base = scalar_of(a.value);
          if (n < 0) {
            if (base.is_zero()) fail_at(at, "negative power of zero");
            base = base.inverse();
          }
          FracScalar acc(1);
          for (long i = 0; i < std::abs(n); ++i) acc *= base;
          return constant(acc);
        }
        if (n < 0) fail_at(at, "negative power of a non-scalar expression");
        Terms acc = constant(FracScalar(1));
        for (long i = 0; i < n; ++i) acc = product(acc, a.value);
        return acc;
      }
    }
    fail("unreachable");
  }

  Atom atom() {
    skip_ws();
    Atom a{AtomKind::number, {}, -1, 0, 0, pos_ + 1};
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      a.kind = AtomKind::group;
      a.value = expr();
      if (!accept(')')) fail("expected ')'");
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      a.value = constant(FracScalar(mpq_class(integer())));
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (const int g = p_.gen_index(id); g >= 0) {
        a.kind = AtomKind::generator;
        a.gen = g;
        Word w = p_.empty_word();
        w.body.emplace_back(g, 1);
        a.value.emplace(w, FracScalar(1));
        return a;
      }
      if (const int s = p_.scaling_index(id); s >= 0) {
        a.kind = AtomKind::scaling;
        a.gen = s;
        Word w = p_.empty_word();
        w.scaling[s] = 2;
        a.value.emplace(w, FracScalar(1));
        return a;
      }
      a.kind = AtomKind::symbol;
      if (id == "Q") {
        a.qhalf = 2;
      } else if (id == "lambda") {
        a.lhalf = 2;
      } else if (id == "p") {
        a.qhalf = 2;
        a.lhalf = 2;
      } else if (id == "q") {
        a.qhalf = 2;
        a.lhalf = -2;
      } else {
        fail_at(start, "unknown identifier '" + id + "'");
      }
      a.value = constant(HalfLaurent::monomial(a.qhalf, a.lhalf));
      return a;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  const Presentation<F>& p_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse into raw (FracScalar) terms against a presentation.
template <class F>
std::map<Word, FracScalar> parse_terms(std::string_view text, const Presentation<F>& p) {
  return detail::Parser<F>(text, p).parse();
}

/// Parse into an unnormalized polynomial.
template <class F>
NCPoly<F> parse(std::string_view text, const PresentationPtr<F>& p) {
  NCPoly<F> r(p);
  for (const auto& [w, c] : parse_terms(text, *p)) r.add_term(w, p->lift(c));
  return r;
}

/// Rule correction written as an expression, lifted into the field.
template <class F>
std::vector<std::pair<Word, typename F::Scalar>> parse_correction(std::string_view text, const Presentation<F>& p) {
  std::vector<std::pair<Word, typename F::Scalar>> out;
  for (const auto& [w, c] : parse_terms(text, p)) out.emplace_back(w, p.lift(c));
  return out;
}

}  // namespace qexpmap
