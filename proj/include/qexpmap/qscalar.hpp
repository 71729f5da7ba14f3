#pragma once

// Exact coefficient arithmetic for the two-parameter quantum group.
//
// Every scalar in the kernel lives in the tower
//
//   HalfLaurent  ->  FracScalar  ->  RadScalar
//
// HalfLaurent is a Laurent polynomial over the rationals in Q^{1/2} and
// lambda^{1/2}; exponents are stored as integers counting half-powers.
// p and q are the monomials Q*lambda and Q/lambda.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qexpmap {

/// Floating type of the numeric field: 50 decimal digits, so that the
/// cancellations inside normal ordering stay far below the comparison
/// tolerance.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial in Q^{1/2}, lambda^{1/2} with rational coefficients.
class HalfLaurent {
 public:
  struct Term {
    int qhalf = 0;
    int lhalf = 0;
    mpq_class coeff;
  };

  HalfLaurent() = default;
  HalfLaurent(const mpq_class& c);  // NOLINT: constants convert implicitly
  HalfLaurent(long c) : HalfLaurent(mpq_class(c)) {}  // NOLINT

  static HalfLaurent monomial(int qhalf, int lhalf, const mpq_class& c = 1);
  static HalfLaurent Q() { return monomial(2, 0); }
  static HalfLaurent lambda() { return monomial(0, 2); }
  static HalfLaurent p() { return monomial(2, 2); }
  static HalfLaurent q() { return monomial(2, -2); }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  bool lambda_free() const;
  /// Coefficient of Q^{0}lambda^{0}.
  mpq_class constant_term() const;

  HalfLaurent operator-() const;
  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent& operator-=(const HalfLaurent& o);
  HalfLaurent& operator*=(const HalfLaurent& o);
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b);

  /// Non-negative powers for any element, negative powers for monomials.
  HalfLaurent pow(int n) const;
  /// Multiply every exponent pair by the monomial Q^{dq/2} lambda^{dl/2}.
  HalfLaurent shifted(int dq, int dl) const;
  HalfLaurent scaled(const mpq_class& c) const;
  /// Substitute lambda = 1.
  HalfLaurent at_unit_lambda() const;

  /// Evaluation at numeric Q and lambda.
  Real eval(const Real& Q, const Real& lambda) const;

 private:
  explicit HalfLaurent(std::vector<Term> t) : terms_(std::move(t)) {}
  void canonicalize();

  // sorted ascending by (qhalf, lhalf); no zero coefficients
  std::vector<Term> terms_;
};

/// Quotient of two HalfLaurents. Equality is cross-multiplication; a
/// best-effort reduction runs when the denominator is lambda-free, so most
/// values produced by the kernel print in lowest terms.
class FracScalar {
 public:
  FracScalar() : num_(), den_(1) {}
  FracScalar(const HalfLaurent& n) : num_(n), den_(1) {}  // NOLINT
  FracScalar(const mpq_class& c) : num_(c), den_(1) {}   // NOLINT
  FracScalar(long c) : num_(c), den_(1) {}               // NOLINT
  FracScalar(HalfLaurent num, HalfLaurent den);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == HalfLaurent(1); }

  FracScalar operator-() const;
  FracScalar& operator+=(const FracScalar& o);
  FracScalar& operator-=(const FracScalar& o);
  FracScalar& operator*=(const FracScalar& o);
  FracScalar& operator/=(const FracScalar& o);
  friend FracScalar operator+(FracScalar a, const FracScalar& b) { return a += b; }
  friend FracScalar operator-(FracScalar a, const FracScalar& b) { return a -= b; }
  friend FracScalar operator*(FracScalar a, const FracScalar& b) { return a *= b; }
  friend FracScalar operator/(FracScalar a, const FracScalar& b) { return a /= b; }
  friend bool operator==(const FracScalar& a, const FracScalar& b);

  FracScalar inverse() const;
  FracScalar at_unit_lambda() const;
  Real eval(const Real& Q, const Real& lambda) const;

 private:
  void normalize();

  HalfLaurent num_;
  HalfLaurent den_;
};

/// Sum of terms c * sqrt([n1]_Q ... [nk]_Q).
class RadScalar {
 public:
  struct Term {
    FracScalar coeff;
    std::vector<int> radicand;  // sorted, square-free as a multiset
  };

  RadScalar() = default;
  RadScalar(const FracScalar& c);        // NOLINT
  RadScalar(const HalfLaurent& c) : RadScalar(FracScalar(c)) {}  // NOLINT
  RadScalar(long c) : RadScalar(FracScalar(c)) {}                // NOLINT
  RadScalar(FracScalar c, std::vector<int> radicand);

  /// Build without normalizing; used to exercise rad_normalize directly.
  static RadScalar raw(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the only radicand is the empty one.
  bool is_rational() const;
  FracScalar rational_part() const;

  RadScalar operator-() const;
  RadScalar& operator+=(const RadScalar& o);
  RadScalar& operator-=(const RadScalar& o);
  RadScalar& operator*=(const RadScalar& o);
  friend RadScalar operator+(RadScalar a, const RadScalar& b) { return a += b; }
  friend RadScalar operator-(RadScalar a, const RadScalar& b) { return a -= b; }
  friend RadScalar operator*(const RadScalar& a, const RadScalar& b);
  friend bool operator==(const RadScalar& a, const RadScalar& b);

  RadScalar at_unit_lambda() const;
  Real eval(const Real& Q, const Real& lambda) const;

  friend RadScalar rad_normalize(const RadScalar& x);

 private:
  void normalize();
  std::vector<Term> terms_;
};

RadScalar rad_normalize(const RadScalar& x);

enum class QVariable { Q, q };

/// q-integer [n]_t = (t^n - t^{-n}) / (t - t^{-1}), t = Q or q = Q/lambda.
HalfLaurent qint(int n, QVariable var = QVariable::Q);
/// [n]_Q! for n >= 0.
HalfLaurent qfact(int n);

/// Numeric parameter point (p, q) with derived Q = sqrt(pq), lambda = sqrt(p/q).
struct NumericParams {
  Real p = 0;
  Real q = 0;
  Real Q = 0;
  Real lambda = 0;

  /// Rejects non-positive parameters and points with |Q - 1/Q| < 1e-9.
  static NumericParams from_pq(const Real& p, const Real& q);
  static NumericParams from_pq(double p, double q) { return from_pq(Real(p), Real(q)); }
  static NumericParams from_pq(const mpq_class& p, const mpq_class& q);
};

Real eval_numeric(const HalfLaurent& x, const NumericParams& at);
Real eval_numeric(const FracScalar& x, const NumericParams& at);
Real eval_numeric(const RadScalar& x, const NumericParams& at);

std::string to_string(const mpq_class& r);

}  // namespace qexpmap
