#include "qexpmap/qscalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace qexpmap {

std::string to_string(const mpq_class& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// HalfLaurent

HalfLaurent::HalfLaurent(const mpq_class& c) {
  if (c != 0) terms_.push_back({0, 0, c});
}

HalfLaurent HalfLaurent::monomial(int qhalf, int lhalf, const mpq_class& c) {
  HalfLaurent r;
  if (c != 0) r.terms_.push_back({qhalf, lhalf, c});
  return r;
}

bool HalfLaurent::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].qhalf == 0 && terms_[0].lhalf == 0);
}

bool HalfLaurent::lambda_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.lhalf == 0; });
}

mpq_class HalfLaurent::constant_term() const {
  for (const auto& t : terms_)
    if (t.qhalf == 0 && t.lhalf == 0) return t.coeff;
  return 0;
}

void HalfLaurent::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return std::tie(a.qhalf, a.lhalf) < std::tie(b.qhalf, b.lhalf);
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().qhalf == t.qhalf && out.back().lhalf == t.lhalf) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two sorted term lists with a sign on the second.
std::vector<HalfLaurent::Term> merge_terms(std::span<const HalfLaurent::Term> a,
                                           std::span<const HalfLaurent::Term> b, bool negate_b) {
  std::vector<HalfLaurent::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto key = [](const HalfLaurent::Term& t) { return std::make_pair(t.qhalf, t.lhalf); };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && key(a[i]) < key(b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || key(b[j]) < key(a[i])) {
      out.push_back(b[j]);
      if (negate_b) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      mpq_class c = negate_b ? mpq_class(a[i].coeff - b[j].coeff) : mpq_class(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].qhalf, a[i].lhalf, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) {
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<HalfLaurent::Term> t;
  t.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({x.qhalf + y.qhalf, x.lhalf + y.lhalf, x.coeff * y.coeff});
  HalfLaurent r(std::move(t));
  r.canonicalize();
  return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& o) { return *this = *this * o; }

bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.qhalf != y.qhalf || x.lhalf != y.lhalf || x.coeff != y.coeff) return false;
  }
  return true;
}

HalfLaurent HalfLaurent::pow(int n) const {
  if (n < 0) {
    if (!is_monomial()) throw DomainError("negative power of a non-monomial Laurent polynomial");
    const auto& t = terms_[0];
    mpq_class c = 1 / t.coeff;
    mpq_class r = 1;
    for (int i = 0; i < -n; ++i) r *= c;
    return monomial(t.qhalf * n, t.lhalf * n, r);
  }
  HalfLaurent result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

HalfLaurent HalfLaurent::shifted(int dq, int dl) const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) {
    t.qhalf += dq;
    t.lhalf += dl;
  }
  return r;
}

HalfLaurent HalfLaurent::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

HalfLaurent HalfLaurent::at_unit_lambda() const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.lhalf = 0;
  r.canonicalize();
  return r;
}

namespace {

Real to_real(const mpq_class& c) { return Real(c.get_num().get_str()) / Real(c.get_den().get_str()); }

}  // namespace

Real HalfLaurent::eval(const Real& Q, const Real& lambda) const {
  Real s = 0;
  const Real sq = sqrt(Q), sl = sqrt(lambda);
  for (const auto& t : terms_) s += to_real(t.coeff) * boost::multiprecision::pow(sq, t.qhalf) * boost::multiprecision::pow(sl, t.lhalf);
  return s;
}

// ---------------------------------------------------------------------------
// Univariate helpers over Q[x], x = Q^{1/2}; used to cancel common factors.

namespace {

using UPoly = std::vector<mpq_class>;  // coefficient of x^i at index i

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

// Remainder of a / b; b nonzero.
UPoly urem(UPoly a, const UPoly& b, UPoly* quotient = nullptr) {
  trim(a);
  UPoly q;
  const int db = degree(b);
  if (quotient && degree(a) >= db) q.assign(degree(a) - db + 1, 0);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    mpq_class f = a.back() / b.back();
    if (quotient) q[shift] = f;
    for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  if (quotient) *quotient = std::move(q);
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = urem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Terms of `h` with the given lhalf, as a polynomial in x shifted so the
// lowest exponent is 0. Returns the shift.
int to_upoly(const HalfLaurent& h, int lhalf, UPoly& out) {
  out.clear();
  int lo = 0;
  bool first = true;
  for (const auto& t : h.terms())
    if (t.lhalf == lhalf) {
      if (first) lo = t.qhalf;
      first = false;
      lo = std::min(lo, t.qhalf);
    }
  for (const auto& t : h.terms())
    if (t.lhalf == lhalf) {
      const auto i = static_cast<std::size_t>(t.qhalf - lo);
      if (out.size() <= i) out.resize(i + 1, 0);
      out[i] = t.coeff;
    }
  return lo;
}

HalfLaurent from_upoly(const UPoly& p, int shift, int lhalf) {
  HalfLaurent r;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) r += HalfLaurent::monomial(static_cast<int>(i) + shift, lhalf, p[i]);
  return r;
}

std::vector<int> lambda_exponents(const HalfLaurent& h) {
  std::vector<int> out;
  for (const auto& t : h.terms()) out.push_back(t.lhalf);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FracScalar

FracScalar::FracScalar(HalfLaurent num, HalfLaurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("FracScalar with zero denominator");
  normalize();
}

void FracScalar::normalize() {
  if (num_.is_zero()) {
    den_ = HalfLaurent(1);
    return;
  }
  if (den_.is_monomial()) {
    num_ *= den_.pow(-1);
    den_ = HalfLaurent(1);
    return;
  }
  if (den_.lambda_free()) {
    UPoly d;
    const int dshift = to_upoly(den_, 0, d);
    UPoly g = d;
    const auto lams = lambda_exponents(num_);
    for (int l : lams) {
      UPoly part;
      to_upoly(num_, l, part);
      g = ugcd(g, part);
      if (degree(g) <= 0) break;
    }
    if (degree(g) > 0) {
      HalfLaurent new_num;
      for (int l : lams) {
        UPoly part, quot;
        const int s = to_upoly(num_, l, part);
        urem(part, g, &quot);
        new_num += from_upoly(quot, s, l);
      }
      UPoly dq;
      urem(d, g, &dq);
      num_ = std::move(new_num);
      den_ = from_upoly(dq, dshift, 0);
      if (den_.is_monomial()) {
        num_ *= den_.pow(-1);
        den_ = HalfLaurent(1);
        return;
      }
    }
  }
  // Fix the representative: leading denominator coefficient 1 and exponent
  // ranges centered on zero.
  const auto dt = den_.terms();
  int qlo = dt.front().qhalf, qhi = dt.back().qhalf;
  int llo = dt.front().lhalf, lhi = dt.front().lhalf;
  for (const auto& t : dt) {
    llo = std::min(llo, t.lhalf);
    lhi = std::max(lhi, t.lhalf);
  }
  auto floor_half = [](int s) { return s >= 0 ? s / 2 : -((-s + 1) / 2); };
  const int sq = -floor_half(qlo + qhi);
  const int sl = -floor_half(llo + lhi);
  const mpq_class lead = dt.back().coeff;
  if (sq != 0 || sl != 0 || lead != 1) {
    const mpq_class inv = 1 / lead;
    den_ = den_.shifted(sq, sl).scaled(inv);
    num_ = num_.shifted(sq, sl).scaled(inv);
  }
}

FracScalar FracScalar::operator-() const {
  FracScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

FracScalar& FracScalar::operator+=(const FracScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

FracScalar& FracScalar::operator-=(const FracScalar& o) { return *this += -o; }

FracScalar& FracScalar::operator*=(const FracScalar& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_ = HalfLaurent(1);
    return *this;
  }
  if (!o.is_polynomial()) den_ *= o.den_;
  if (!is_polynomial()) normalize();
  return *this;
}

FracScalar& FracScalar::operator/=(const FracScalar& o) { return *this *= o.inverse(); }

bool operator==(const FracScalar& a, const FracScalar& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

FracScalar FracScalar::inverse() const {
  if (num_.is_zero()) throw DomainError("division by zero scalar");
  return FracScalar(den_, num_);
}

FracScalar FracScalar::at_unit_lambda() const {
  HalfLaurent d = den_.at_unit_lambda();
  if (d.is_zero()) throw DomainError("denominator vanishes at lambda = 1");
  return FracScalar(num_.at_unit_lambda(), d);
}

Real FracScalar::eval(const Real& Q, const Real& lambda) const {
  const Real d = den_.eval(Q, lambda);
  Real scale = 0;
  for (const auto& t : den_.terms()) scale += abs(to_real(t.coeff)) * pow(sqrt(Q), t.qhalf) * pow(sqrt(lambda), t.lhalf);
  if (d == 0 || abs(d) < 1e-13 * scale) {
    std::ostringstream os;
    os << "denominator vanishes at Q=" << Q << ", lambda=" << lambda << ": ";
    bool first = true;
    for (const auto& t : den_.terms()) {
      os << (first ? "" : " + ") << t.coeff.get_str() << "*Q^(" << t.qhalf << "/2)*lambda^(" << t.lhalf << "/2)";
      first = false;
    }
    throw EvaluationError(os.str());
  }
  return num_.eval(Q, lambda) / d;
}

// ---------------------------------------------------------------------------
// RadScalar

RadScalar::RadScalar(const FracScalar& c) {
  if (!c.is_zero()) terms_.push_back({c, {}});
}

RadScalar::RadScalar(FracScalar c, std::vector<int> radicand) {
  if (!c.is_zero()) terms_.push_back({std::move(c), std::move(radicand)});
  normalize();
}

RadScalar RadScalar::raw(std::vector<Term> terms) {
  RadScalar r;
  r.terms_ = std::move(terms);
  return r;
}

void RadScalar::normalize() {
  std::vector<Term> work;
  for (auto& t : terms_) {
    std::sort(t.radicand.begin(), t.radicand.end());
    if (!t.radicand.empty() && t.radicand.front() < 0)
      throw DomainError("radicand index must be non-negative");
    if (std::find(t.radicand.begin(), t.radicand.end(), 0) != t.radicand.end()) continue;  // [0] = 0
    Term nt{t.coeff, {}};
    for (std::size_t i = 0; i < t.radicand.size(); ++i) {
      const int n = t.radicand[i];
      if (n == 1) continue;
      if (i + 1 < t.radicand.size() && t.radicand[i + 1] == n) {
        nt.coeff *= FracScalar(qint(n));
        ++i;
      } else {
        nt.radicand.push_back(n);
      }
    }
    if (!nt.coeff.is_zero()) work.push_back(std::move(nt));
  }
  std::stable_sort(work.begin(), work.end(), [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  std::vector<Term> out;
  for (auto& t : work) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(out);
}

RadScalar rad_normalize(const RadScalar& x) {
  RadScalar r = x;
  r.normalize();
  return r;
}

bool RadScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand.empty());
}

FracScalar RadScalar::rational_part() const {
  for (const auto& t : terms_)
    if (t.radicand.empty()) return t.coeff;
  return {};
}

RadScalar RadScalar::operator-() const {
  RadScalar r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

RadScalar& RadScalar::operator+=(const RadScalar& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

RadScalar& RadScalar::operator-=(const RadScalar& o) { return *this += -o; }

RadScalar operator*(const RadScalar& a, const RadScalar& b) {
  RadScalar r;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      std::vector<int> rad = x.radicand;
      rad.insert(rad.end(), y.radicand.begin(), y.radicand.end());
      r.terms_.push_back({x.coeff * y.coeff, std::move(rad)});
    }
  r.normalize();
  return r;
}

RadScalar& RadScalar::operator*=(const RadScalar& o) { return *this = *this * o; }

bool operator==(const RadScalar& a, const RadScalar& b) { return (a - b).is_zero(); }

RadScalar RadScalar::at_unit_lambda() const {
  RadScalar r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff.at_unit_lambda();
  r.normalize();
  return r;
}

Real RadScalar::eval(const Real& Q, const Real& lambda) const {
  Real s = 0;
  for (const auto& t : terms_) {
    Real rad = 1;
    for (int n : t.radicand) rad *= qint(n).eval(Q, lambda);
    if (rad < 0) throw EvaluationError("negative radicand at the requested parameters");
    s += t.coeff.eval(Q, lambda) * sqrt(rad);
  }
  return s;
}

// ---------------------------------------------------------------------------

HalfLaurent qint(int n, QVariable var) {
  if (n < 0) return -qint(-n, var);
  HalfLaurent r;
  for (int i = 0; i < n; ++i) {
    const int e = n - 1 - 2 * i;
    r += var == QVariable::Q ? HalfLaurent::monomial(2 * e, 0) : HalfLaurent::monomial(2 * e, -2 * e);
  }
  return r;
}

HalfLaurent qfact(int n) {
  if (n < 0) throw DomainError("q-factorial of a negative integer");
  HalfLaurent r(1);
  for (int k = 2; k <= n; ++k) r *= qint(k);
  return r;
}

NumericParams NumericParams::from_pq(const Real& p, const Real& q) {
  if (!(p > 0) || !(q > 0)) throw DomainError("numeric parameters must satisfy p > 0 and q > 0");
  NumericParams r{p, q, sqrt(p * q), sqrt(p / q)};
  if (abs(r.Q - 1 / r.Q) < 1e-9)
    throw DomainError("non-generic parameters: Q - 1/Q vanishes (Q = sqrt(pq) = 1)");
  return r;
}

NumericParams NumericParams::from_pq(const mpq_class& p, const mpq_class& q) {
  return from_pq(to_real(p), to_real(q));
}

Real eval_numeric(const HalfLaurent& x, const NumericParams& at) { return x.eval(at.Q, at.lambda); }
Real eval_numeric(const FracScalar& x, const NumericParams& at) { return x.eval(at.Q, at.lambda); }
Real eval_numeric(const RadScalar& x, const NumericParams& at) { return x.eval(at.Q, at.lambda); }

}  // namespace qexpmap
