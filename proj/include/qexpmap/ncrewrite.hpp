#pragma once

// Noncommutative normal ordering over a presented algebra.
//
// A presentation is an ordered list of ordinary generators (some of them
// invertible), a set of scaling generators G^s with s in (1/2)Z, one swap
// rule per out-of-order adjacent letter pair, and for every scaling
// generator G and ordinary generator x a monomial mu with
//
//     G^{1/2} x = mu * x G^{1/2}.
//
// Words are kept in "scaling-left" form: the scaling part stands in front
// of the ordinary body, so a term (w, c) denotes c * G_1^{s_1}...G_r^{s_r} *
// body. The body is a list of runs (generator, exponent).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qexpmap/field.hpp"
#include "qexpmap/qscalar.hpp"

namespace qexpmap {

enum class GenKind { ordinary, invertible, scaling };

struct Letter {
  int gen = 0;
  int sign = 1;
};

struct Word {
  std::vector<int> scaling;                 // half-unit exponents, one slot per scaling generator
  std::vector<std::pair<int, int>> body;    // runs (generator, exponent)

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

  bool is_empty() const;
  int degree() const;
  bool has_negative_exponent() const;
};

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Push a run onto a body, merging with (and cancelling against) the last run.
void push_run(std::vector<std::pair<int, int>>& body, int gen, int exp);

template <class F>
struct Presentation {
  using Scalar = typename F::Scalar;

  struct Generator {
    std::string name;
    GenKind kind = GenKind::ordinary;
    int leg = 0;
    std::string latex;
  };

  struct Rule {
    bool defined = false;
    Scalar kappa{};
    std::vector<std::pair<Word, Scalar>> correction;
  };

  std::string name;
  F field;
  std::vector<Generator> gens;
  std::vector<Generator> scalings;
  std::vector<std::vector<std::pair<int, int>>> mu;  // [scaling][gen] -> (qhalf, lhalf) per half unit
  std::vector<Rule> rules;                           // dense [letter x][letter y]
  bool unit_lambda = false;
  std::size_t guard = 1'000'000;
  int legs = 1;

  std::size_t letter_count() const { return 2 * gens.size(); }
  std::size_t letter_index(Letter l) const { return 2 * static_cast<std::size_t>(l.gen) + (l.sign < 0 ? 1 : 0); }
  const Rule& rule(Letter x, Letter y) const { return rules[letter_index(x) * letter_count() + letter_index(y)]; }
  Rule& rule(Letter x, Letter y) { return rules[letter_index(x) * letter_count() + letter_index(y)]; }

  int gen_index(const std::string& n) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (display_name(gens[i]) == n) return static_cast<int>(i);
    return -1;
  }
  int scaling_index(const std::string& n) const {
    for (std::size_t i = 0; i < scalings.size(); ++i)
      if (display_name(scalings[i]) == n) return static_cast<int>(i);
    return -1;
  }
  std::string display_name(const Generator& g) const {
    return legs > 1 ? g.name + "_" + std::to_string(g.leg + 1) : g.name;
  }

  Scalar lift(const HalfLaurent& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar lift(const FracScalar& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar lift(const RadScalar& h) const { return field.lift(unit_lambda ? h.at_unit_lambda() : h); }
  Scalar one() const { return field.lift(HalfLaurent(1)); }
  Scalar zero() const { return Scalar{}; }
  Scalar monomial(int qhalf, int lhalf) const {
    if (qhalf == 0 && lhalf == 0) return one();
    return lift(HalfLaurent::monomial(qhalf, lhalf));
  }

  /// Exponent of the monomial picked up when the scaling part `scaling`
  /// moves from the right of `body` to its left.
  std::pair<int, int> shift_exponent(const std::vector<int>& scaling,
                                     const std::vector<std::pair<int, int>>& body) const {
    int eq = 0, el = 0;
    for (std::size_t s = 0; s < scaling.size(); ++s) {
      if (scaling[s] == 0) continue;
      for (const auto& [g, e] : body) {
        eq -= scaling[s] * e * mu[s][g].first;
        el -= scaling[s] * e * mu[s][g].second;
      }
    }
    return {eq, el};
  }

  Word empty_word() const { return Word{std::vector<int>(scalings.size(), 0), {}}; }
};

template <class F>
using PresentationPtr = std::shared_ptr<const Presentation<F>>;

/// Concatenate two scaling-left words; returns the word and the exponent
/// of the monomial factor.
template <class F>
std::pair<Word, std::pair<int, int>> concat_words(const Presentation<F>& p, const Word& a, const Word& b) {
  Word w;
  w.scaling = a.scaling;
  for (std::size_t i = 0; i < b.scaling.size(); ++i) w.scaling[i] += b.scaling[i];
  w.body = a.body;
  for (const auto& [g, e] : b.body) push_run(w.body, g, e);
  return {std::move(w), p.shift_exponent(b.scaling, a.body)};
}

/// Finite linear combination of words over a presentation. Terms are not
/// required to be normal; normal_order() and operator* produce normal forms.
template <class F>
class NCPoly {
 public:
  using Scalar = typename F::Scalar;
  using Pres = Presentation<F>;
  using Terms = std::map<Word, Scalar>;

  NCPoly() = default;
  explicit NCPoly(PresentationPtr<F> p) : pres_(std::move(p)) {}

  static NCPoly constant(PresentationPtr<F> p, const Scalar& c) {
    NCPoly r(p);
    r.add_term(r.pres_->empty_word(), c);
    return r;
  }
  static NCPoly one(PresentationPtr<F> p) { return constant(p, p->one()); }
  static NCPoly word(PresentationPtr<F> p, Word w, const Scalar& c) {
    NCPoly r(std::move(p));
    r.add_term(std::move(w), c);
    return r;
  }
  static NCPoly generator(PresentationPtr<F> p, const std::string& name, int exp = 1) {
    const int g = p->gen_index(name);
    if (g < 0) throw UsageError("unknown generator '" + name + "'");
    Word w = p->empty_word();
    if (exp != 0) {
      if (exp < 0 && p->gens[g].kind != GenKind::invertible)
        throw UsageError("negative power of non-invertible generator '" + name + "'");
      w.body.emplace_back(g, exp);
    }
    return word(p, std::move(w), p->one());
  }
  /// G^{half_units/2}.
  static NCPoly scaling(PresentationPtr<F> p, const std::string& name, int half_units) {
    const int s = p->scaling_index(name);
    if (s < 0) throw UsageError("unknown scaling generator '" + name + "'");
    Word w = p->empty_word();
    w.scaling[s] = half_units;
    return word(p, std::move(w), p->one());
  }

  const PresentationPtr<F>& presentation() const { return pres_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const Scalar& c) {
    if (pres_->field.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (pres_->field.is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Coefficient of `w` (zero if absent).
  Scalar coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar{} : it->second;
  }
  /// Coefficient of the empty word.
  Scalar constant_term() const { return coeff(pres_->empty_word()); }

  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) {
    if (!pres_) pres_ = o.pres_;
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    if (!pres_) pres_ = o.pres_;
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

  NCPoly scaled(const Scalar& s) const {
    NCPoly r(pres_);
    for (const auto& [w, c] : terms_) r.add_term(w, s * c);
    return r;
  }
  friend NCPoly operator*(const Scalar& s, const NCPoly& x) { return x.scaled(s); }

  /// Product without normal ordering.
  friend NCPoly concat(const NCPoly& a, const NCPoly& b) {
    NCPoly r(a.pres_ ? a.pres_ : b.pres_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        auto [w, e] = concat_words(*r.pres_, wa, wb);
        Scalar c = ca * cb;
        if (e.first != 0 || e.second != 0) c = c * r.pres_->monomial(e.first, e.second);
        r.add_term(w, c);
      }
    return r;
  }

  /// Normal-ordered product.
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) { return normal_order(concat(a, b)); }

  bool is_normal() const;

 private:
  PresentationPtr<F> pres_;
  Terms terms_;
};

namespace detail {

template <class F>
int first_disorder(const Presentation<F>&, const std::vector<std::pair<int, int>>& body) {
  for (std::size_t i = 0; i + 1 < body.size(); ++i)
    if (body[i].first > body[i + 1].first) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

template <class F>
bool NCPoly<F>::is_normal() const {
  for (const auto& [w, c] : terms_)
    if (detail::first_disorder(*pres_, w.body) >= 0) return false;
  return true;
}

/// Leftmost-innermost normal ordering with immediate like-term collection.
template <class F>
NCPoly<F> normal_order(const NCPoly<F>& x) {
  using Scalar = typename F::Scalar;
  const auto& pres = x.presentation();
  if (!pres) return x;
  const Presentation<F>& p = *pres;
  std::map<Word, Scalar> pending = x.terms();
  NCPoly<F> result(pres);
  std::size_t generated = 0;

  auto emit = [&](Word w, Scalar c) {
    if (p.field.is_zero(c)) return;
    ++generated;
    auto [it, inserted] = pending.try_emplace(std::move(w), std::move(c));
    if (!inserted) {
      it->second += c;
      if (p.field.is_zero(it->second)) pending.erase(it);
    }
  };

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    Word w = std::move(node.key());
    Scalar c = std::move(node.mapped());
    if (p.field.is_zero(c)) continue;
    const int i = detail::first_disorder(p, w.body);
    if (i < 0) {
      result.add_term(w, c);
      continue;
    }
    if (generated > p.guard)
      throw GuardExceeded("normal ordering exceeded the term-count guard of " + std::to_string(p.guard));

    const auto [xg, xe] = w.body[i];
    const auto [yg, ye] = w.body[i + 1];
    const int sx = xe > 0 ? 1 : -1;
    const int sy = ye > 0 ? 1 : -1;
    const auto& rule = p.rule(Letter{xg, sx}, Letter{yg, sy});
    if (!rule.defined)
      throw UsageError("presentation '" + p.name + "' has no rule for " + p.gens[xg].name + "," + p.gens[yg].name);

    std::vector<std::pair<int, int>> prefix(w.body.begin(), w.body.begin() + i);
    if (xe - sx != 0) prefix.emplace_back(xg, xe - sx);
    std::vector<std::pair<int, int>> suffix;
    if (ye - sy != 0) suffix.emplace_back(yg, ye - sy);
    suffix.insert(suffix.end(), w.body.begin() + i + 2, w.body.end());

    {
      Word swapped;
      swapped.scaling = w.scaling;
      swapped.body = prefix;
      push_run(swapped.body, yg, sy);
      push_run(swapped.body, xg, sx);
      for (const auto& [g, e] : suffix) push_run(swapped.body, g, e);
      emit(std::move(swapped), c * rule.kappa);
    }
    for (const auto& [cw, cc] : rule.correction) {
      Word nw;
      nw.scaling = w.scaling;
      for (std::size_t s = 0; s < nw.scaling.size(); ++s) nw.scaling[s] += cw.scaling[s];
      nw.body = prefix;
      for (const auto& [g, e] : cw.body) push_run(nw.body, g, e);
      for (const auto& [g, e] : suffix) push_run(nw.body, g, e);
      const auto [eq, el] = p.shift_exponent(cw.scaling, prefix);
      Scalar coeff = c * cc;
      if (eq != 0 || el != 0) coeff = coeff * p.monomial(eq, el);
      emit(std::move(nw), std::move(coeff));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Building presentations

template <class F>
class PresentationBuilder {
 public:
  using Scalar = typename F::Scalar;

  PresentationBuilder(std::string name, F field, bool unit_lambda = false) {
    p_.name = std::move(name);
    p_.field = std::move(field);
    p_.unit_lambda = unit_lambda;
  }

  PresentationBuilder& generator(std::string name, GenKind kind = GenKind::ordinary, std::string latex = {}) {
    if (latex.empty()) latex = name;
    if (kind == GenKind::scaling) {
      p_.scalings.push_back({std::move(name), kind, 0, std::move(latex)});
    } else {
      p_.gens.push_back({std::move(name), kind, 0, std::move(latex)});
    }
    return *this;
  }

  /// G^{1/2} x = Q^{qhalf/2} lambda^{lhalf/2} x G^{1/2}.
  PresentationBuilder& scaling_factor(const std::string& scaling, const std::string& gen, int qhalf, int lhalf) {
    ensure_tables();
    const int s = index_of(p_.scalings, scaling);
    const int g = index_of(p_.gens, gen);
    p_.mu[s][g] = {qhalf, lhalf};
    return *this;
  }

  /// x y -> kappa * y x + correction, where x and y are letters.
  PresentationBuilder& rule(Letter x, Letter y, Scalar kappa, std::vector<std::pair<Word, Scalar>> correction = {}) {
    ensure_tables();
    auto& r = p_.rule(x, y);
    r.defined = true;
    r.kappa = std::move(kappa);
    r.correction = std::move(correction);
    return *this;
  }

  Letter letter(const std::string& name, int sign = 1) const { return Letter{index_of(p_.gens, name), sign}; }

  /// Presentation under construction; usable by the parser for rule bodies.
  const Presentation<F>& current() {
    ensure_tables();
    return p_;
  }

  PresentationPtr<F> build() {
    ensure_tables();
    for (std::size_t x = 0; x < p_.gens.size(); ++x)
      for (std::size_t y = 0; y < x; ++y)
        for (int sx : signs(x))
          for (int sy : signs(y)) {
            const Letter lx{static_cast<int>(x), sx}, ly{static_cast<int>(y), sy};
            if (!p_.rule(lx, ly).defined)
              throw UsageError("presentation '" + p_.name + "': missing swap rule for (" + p_.gens[x].name +
                               (sx < 0 ? "^-1" : "") + ", " + p_.gens[y].name + (sy < 0 ? "^-1" : "") + ")");
          }
    return std::make_shared<const Presentation<F>>(p_);
  }

 private:
  std::vector<int> signs(std::size_t g) const {
    return p_.gens[g].kind == GenKind::invertible ? std::vector<int>{1, -1} : std::vector<int>{1};
  }
  static int index_of(const std::vector<typename Presentation<F>::Generator>& v, const std::string& n) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].name == n) return static_cast<int>(i);
    throw UsageError("unknown generator '" + n + "'");
  }
  void ensure_tables() {
    const std::size_t n = p_.letter_count();
    if (p_.rules.size() != n * n) p_.rules.assign(n * n, {});
    if (p_.mu.size() != p_.scalings.size()) p_.mu.resize(p_.scalings.size());
    for (auto& row : p_.mu) row.resize(p_.gens.size(), {0, 0});
  }

  Presentation<F> p_;
};

// ---------------------------------------------------------------------------
// Tensor square

/// Presentation of P (x) P: two copies of the generators, each copy with
/// the original rules, and copies commuting with each other.
template <class F>
PresentationPtr<F> tensor_square(const PresentationPtr<F>& base) {
  const auto& b = *base;
  Presentation<F> t;
  t.name = b.name + "^(x)2";
  t.field = b.field;
  t.unit_lambda = b.unit_lambda;
  t.guard = b.guard;
  t.legs = 2 * b.legs;
  const int n = static_cast<int>(b.gens.size());
  const int ns = static_cast<int>(b.scalings.size());
  for (int copy = 0; copy < 2; ++copy) {
    for (auto g : b.gens) {
      g.leg += copy * b.legs;
      t.gens.push_back(g);
    }
    for (auto g : b.scalings) {
      g.leg += copy * b.legs;
      t.scalings.push_back(g);
    }
  }
  t.mu.assign(2 * ns, std::vector<std::pair<int, int>>(2 * n, {0, 0}));
  for (int copy = 0; copy < 2; ++copy)
    for (int s = 0; s < ns; ++s)
      for (int g = 0; g < n; ++g) t.mu[s + copy * ns][g + copy * n] = b.mu[s][g];

  auto shift_word = [&](const Word& w, int copy) {
    Word r = t.empty_word();
    for (int s = 0; s < ns; ++s) r.scaling[s + copy * ns] = w.scaling[s];
    for (const auto& [g, e] : w.body) r.body.emplace_back(g + copy * n, e);
    return r;
  };

  const std::size_t nl = t.letter_count();
  t.rules.assign(nl * nl, {});
  for (int copy = 0; copy < 2; ++copy)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int sx : {1, -1})
          for (int sy : {1, -1}) {
            const auto& src = b.rule(Letter{x, sx}, Letter{y, sy});
            if (!src.defined) continue;
            auto& dst = t.rule(Letter{x + copy * n, sx}, Letter{y + copy * n, sy});
            dst.defined = true;
            dst.kappa = src.kappa;
            for (const auto& [w, c] : src.correction) dst.correction.emplace_back(shift_word(w, copy), c);
          }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int sx : {1, -1})
        for (int sy : {1, -1}) {
          auto& r = t.rule(Letter{x + n, sx}, Letter{y, sy});
          r.defined = true;
          r.kappa = t.one();
        }
  return std::make_shared<const Presentation<F>>(std::move(t));
}

/// Copy of a single-leg element into block `block` of a presentation made
/// of contiguous copies of `x`'s presentation (a tensor square or a square
/// of squares).
template <class F>
NCPoly<F> embed_block(const NCPoly<F>& x, const PresentationPtr<F>& target, int block) {
  const auto& b = *x.presentation();
  const int n = static_cast<int>(b.gens.size());
  const int ns = static_cast<int>(b.scalings.size());
  if (static_cast<int>(target->gens.size()) < n * (block + 1))
    throw UsageError("embed_block: target has too few generator copies");
  NCPoly<F> r(target);
  for (const auto& [w, c] : x.terms()) {
    Word nw = target->empty_word();
    for (int s = 0; s < ns; ++s) nw.scaling[s + block * ns] = w.scaling[s];
    for (const auto& [g, e] : w.body) nw.body.emplace_back(g + block * n, e);
    r.add_term(nw, c);
  }
  return r;
}

/// Copy of an element of a tensor power into another tensor power built
/// from the same base presentation; block b of `x` goes to block
/// `blocks[b]` of `target`. The base presentation has `n` ordinary and `ns`
/// scaling generators.
template <class F>
NCPoly<F> remap_blocks(const NCPoly<F>& x, const PresentationPtr<F>& target, int n, int ns,
                       const std::vector<int>& blocks) {
  NCPoly<F> r(target);
  for (const auto& [w, c] : x.terms()) {
    Word nw = target->empty_word();
    for (std::size_t s = 0; s < w.scaling.size(); ++s) {
      const int b = static_cast<int>(s) / ns;
      nw.scaling[s % ns + blocks.at(b) * ns] += w.scaling[s];
    }
    for (const auto& [g, e] : w.body) nw.body.emplace_back(g % n + blocks.at(g / n) * n, e);
    r.add_term(nw, c);
  }
  return r;
}

/// x (x) y in the tensor square; normal when x and y are.
template <class F>
NCPoly<F> tensor(const NCPoly<F>& x, const NCPoly<F>& y, const PresentationPtr<F>& square) {
  return concat(embed_block(x, square, 0), embed_block(y, square, 1));
}

// ---------------------------------------------------------------------------
// Algebra homomorphisms defined on generators

template <class F>
class Homomorphism {
 public:
  using Scalar = typename F::Scalar;
  using ScalingImage = std::function<NCPoly<F>(int half_units)>;

  Homomorphism(PresentationPtr<F> source, PresentationPtr<F> target)
      : source_(std::move(source)), target_(std::move(target)) {
    pos_.resize(source_->gens.size());
    neg_.resize(source_->gens.size());
    scaling_.resize(source_->scalings.size());
  }

  Homomorphism& set(const std::string& gen, NCPoly<F> image, std::optional<NCPoly<F>> inverse_image = {}) {
    const int g = source_->gen_index(gen);
    if (g < 0) throw UsageError("unknown generator '" + gen + "'");
    pos_[g] = std::move(image);
    neg_[g] = std::move(inverse_image);
    return *this;
  }
  Homomorphism& set_scaling(const std::string& name, ScalingImage image) {
    const int s = source_->scaling_index(name);
    if (s < 0) throw UsageError("unknown scaling generator '" + name + "'");
    scaling_[s] = std::move(image);
    return *this;
  }

  const PresentationPtr<F>& target() const { return target_; }

  NCPoly<F> image_of(int gen, int exp) const {
    NCPoly<F> r = NCPoly<F>::one(target_);
    const auto& base = exp > 0 ? pos_[gen] : neg_[gen];
    if (!base) throw DomainError(undefined_message(gen, exp));
    for (int i = 0; i < std::abs(exp); ++i) r = r * *base;
    return r;
  }

  NCPoly<F> apply(const NCPoly<F>& x) const {
    NCPoly<F> result(target_);
    for (const auto& [w, c] : x.terms()) {
      NCPoly<F> t = NCPoly<F>::constant(target_, c);
      for (std::size_t s = 0; s < w.scaling.size(); ++s) {
        if (w.scaling[s] == 0) continue;
        if (!scaling_[s]) throw DomainError("homomorphism undefined on scaling generator " + source_->scalings[s].name);
        t = t * scaling_[s](w.scaling[s]);
      }
      for (const auto& [g, e] : w.body) t = t * image_of(g, e);
      result += t;
    }
    return result;
  }

 private:
  std::string undefined_message(int gen, int exp) const {
    if (exp < 0) return "homomorphism undefined on localized generator " + source_->gens[gen].name + "^-1";
    return "homomorphism undefined on generator " + source_->gens[gen].name;
  }

  PresentationPtr<F> source_, target_;
  std::vector<std::optional<NCPoly<F>>> pos_, neg_;
  std::vector<ScalingImage> scaling_;
};

/// The presentation with no generators; its elements are scalars.
template <class F>
PresentationPtr<F> scalar_presentation(const F& field, bool unit_lambda = false) {
  return PresentationBuilder<F>("scalars", field, unit_lambda).build();
}

// ---------------------------------------------------------------------------
// Confluence

struct ConfluenceReport {
  int max_len = 0;
  std::size_t words_checked = 0;
  std::vector<std::string> counterexamples;
  bool confluent() const { return counterexamples.empty(); }
};

namespace detail {

struct CLetter {
  int gen = 0;
  int exp = 0;  // +-1 for ordinary letters, half units for scaling letters
  bool scaling = false;
  auto operator<=>(const CLetter&) const = default;
};

template <class F>
class ConfluenceChecker {
 public:
  using Scalar = typename F::Scalar;
  using Result = std::optional<std::map<Word, Scalar>>;
  using LWord = std::vector<CLetter>;

  explicit ConfluenceChecker(const Presentation<F>& p) : p_(p) {}

  Result normal_forms(const LWord& w, int depth = 0) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    if (depth > 4096) throw GuardExceeded("confluence check: rewrite depth exceeded");
    std::vector<std::map<Word, Scalar>> candidates;
    std::vector<std::size_t> positions;
    bool failed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      auto step = reduce_at(w, i);
      if (!step) continue;
      std::map<Word, Scalar> acc;
      for (const auto& [lw, c] : *step) {
        auto sub = normal_forms(lw, depth + 1);
        if (!sub) {
          failed = true;
          continue;
        }
        for (const auto& [nw, nc] : *sub) accumulate(acc, nw, c * nc);
      }
      candidates.push_back(std::move(acc));
      positions.push_back(i);
    }
    Result out;
    if (candidates.empty()) {
      out = std::map<Word, Scalar>{{to_word(w), p_.one()}};
    } else if (!failed) {
      for (std::size_t k = 1; k < candidates.size(); ++k)
        if (!same(candidates[0], candidates[k])) {
          failed = true;
          counterexamples.push_back(describe(w) + " (reductions at positions " + std::to_string(positions[0]) +
                                    " and " + std::to_string(positions[k]) + " disagree)");
          break;
        }
      if (!failed) out = std::move(candidates[0]);
    }
    memo_.emplace(w, out);
    return out;
  }

  std::vector<std::string> counterexamples;

 private:
  void accumulate(std::map<Word, Scalar>& acc, const Word& w, const Scalar& c) const {
    if (p_.field.is_zero(c)) return;
    auto [it, ins] = acc.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (p_.field.is_zero(it->second)) acc.erase(it);
    }
  }

  bool same(const std::map<Word, Scalar>& a, const std::map<Word, Scalar>& b) const {
    std::map<Word, Scalar> d = a;
    for (const auto& [w, c] : b) accumulate(d, w, -c);
    return d.empty();
  }

  LWord letters_of(const Word& w) const {
    LWord r;
    for (std::size_t s = 0; s < w.scaling.size(); ++s)
      if (w.scaling[s] != 0) r.push_back({static_cast<int>(s), w.scaling[s], true});
    for (const auto& [g, e] : w.body)
      for (int k = 0; k < std::abs(e); ++k) r.push_back({g, e > 0 ? 1 : -1, false});
    return r;
  }

  Word to_word(const LWord& lw) const {
    Word w = p_.empty_word();
    for (const auto& l : lw) {
      if (l.scaling) {
        w.scaling[l.gen] += l.exp;
      } else {
        push_run(w.body, l.gen, l.exp);
      }
    }
    return w;
  }

  std::optional<std::vector<std::pair<LWord, Scalar>>> reduce_at(const LWord& w, std::size_t i) const {
    const CLetter& x = w[i];
    const CLetter& y = w[i + 1];
    auto splice = [&](const LWord& middle) {
      LWord r(w.begin(), w.begin() + i);
      r.insert(r.end(), middle.begin(), middle.end());
      r.insert(r.end(), w.begin() + i + 2, w.end());
      return r;
    };
    std::vector<std::pair<LWord, Scalar>> out;
    if (!x.scaling && !y.scaling) {
      if (x.gen == y.gen) {
        if (x.exp != -y.exp) return std::nullopt;
        out.emplace_back(splice({}), p_.one());
        return out;
      }
      if (x.gen < y.gen) return std::nullopt;
      const auto& r = p_.rule(Letter{x.gen, x.exp}, Letter{y.gen, y.exp});
      out.emplace_back(splice({y, x}), r.kappa);
      for (const auto& [cw, cc] : r.correction) out.emplace_back(splice(letters_of(cw)), cc);
      return out;
    }
    if (!x.scaling && y.scaling) {
      const auto [mq, ml] = p_.mu[y.gen][x.gen];
      out.emplace_back(splice({y, x}), p_.monomial(-y.exp * x.exp * mq, -y.exp * x.exp * ml));
      return out;
    }
    if (x.scaling && y.scaling) {
      if (x.gen == y.gen) {
        if (x.exp + y.exp == 0) {
          out.emplace_back(splice({}), p_.one());
        } else {
          out.emplace_back(splice({CLetter{x.gen, x.exp + y.exp, true}}), p_.one());
        }
        return out;
      }
      if (x.gen > y.gen) {
        out.emplace_back(splice({y, x}), p_.one());
        return out;
      }
    }
    return std::nullopt;
  }

  std::string describe(const LWord& w) const {
    std::string s;
    for (const auto& l : w) {
      if (!s.empty()) s += "*";
      if (l.scaling) {
        s += p_.display_name(p_.scalings[l.gen]) + "^" + (l.exp % 2 ? std::to_string(l.exp) + "/2" : std::to_string(l.exp / 2));
      } else {
        s += p_.display_name(p_.gens[l.gen]) + (l.exp < 0 ? "^-1" : "");
      }
    }
    return s.empty() ? "1" : s;
  }

  const Presentation<F>& p_;
  std::map<LWord, Result> memo_;
};

}  // namespace detail

/// Exhaustive diamond check: every word of length <= max_len over the
/// letters (generators, inverses, and scaling generators to the power
/// +-1/2) must reach one normal form under every order of reductions.
template <class F>
ConfluenceReport confluence_check(const Presentation<F>& p, int max_len) {
  if (max_len < 3) throw UsageError("confluence_check requires max_len >= 3");
  using detail::CLetter;
  std::vector<CLetter> alphabet;
  for (std::size_t g = 0; g < p.gens.size(); ++g) {
    alphabet.push_back({static_cast<int>(g), 1, false});
    if (p.gens[g].kind == GenKind::invertible) alphabet.push_back({static_cast<int>(g), -1, false});
  }
  for (std::size_t s = 0; s < p.scalings.size(); ++s) {
    alphabet.push_back({static_cast<int>(s), 1, true});
    alphabet.push_back({static_cast<int>(s), -1, true});
  }
  detail::ConfluenceChecker<F> checker(p);
  ConfluenceReport report;
  report.max_len = max_len;
  std::vector<CLetter> w;
  std::function<void(int)> rec = [&](int remaining) {
    if (!w.empty()) {
      checker.normal_forms(w);
      ++report.words_checked;
    }
    if (remaining == 0) return;
    for (const auto& l : alphabet) {
      w.push_back(l);
      rec(remaining - 1);
      w.pop_back();
    }
  };
  rec(max_len);
  report.counterexamples = std::move(checker.counterexamples);
  return report;
}

}  // namespace qexpmap
