// Exact arithmetic in cyclotomic fields Q(zeta_M) and q-combinatorics.
#pragma once

#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <nlohmann/json_fwd.hpp>

#include "hopflift/rational.hpp"

namespace hopflift {

/// Largest cyclotomic order we are willing to build reduction tables for.
inline constexpr int kMaxCyclotomicOrder = 4096;

int euler_phi(int m);

/// Element of Q(zeta_M), stored as a polynomial in zeta_M of degree < phi(M),
/// reduced modulo the M-th cyclotomic polynomial. Rationals have order 1.
class CycNum {
 public:
  using Coeffs = boost::container::small_vector<Rational, 6>;

  CycNum() : coeffs_(1) {}
  CycNum(const Rational& r) : coeffs_{r} {}  // NOLINT(google-explicit-constructor)
  CycNum(long long n) : coeffs_{Rational(n)} {}  // NOLINT(google-explicit-constructor)
  /// Coefficients must have length phi(order).
  CycNum(int order, Coeffs coeffs);

  /// zeta_M^k, k taken mod M.
  static CycNum root_of_unity(int order, long long k);

  int order() const { return order_; }
  const Coeffs& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in Q (only the constant coefficient is set).
  bool is_rational() const;

  /// Same value viewed in Q(zeta_target); order() must divide target.
  CycNum embed(int target) const;

  CycNum inv() const;
  CycNum pow(long long e) const;
  CycNum operator-() const;

  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& b);
  CycNum& operator-=(const CycNum& b);
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }

  /// Values are compared in the common field, so ζ_3 == ζ_6^2.
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const Rational& r);

  /// Human-readable form, e.g. "1 + 2*z3 - 1/2*z3^2" (z3 = zeta_3).
  std::string str() const;

 private:
  int order_ = 1;
  Coeffs coeffs_;
};

/// {"order": M, "coeffs": ["p/q", ...]}. Parsing also accepts a bare integer
/// or rational string for a rational value, and integer coefficients.
void to_json(nlohmann::json& j, const CycNum& x);
void from_json(const nlohmann::json& j, CycNum& x);

/// 1 + q + ... + q^{n-1}.
CycNum q_int(int n, const CycNum& q);
/// Product of q_int(k) for k = 1..n.
CycNum q_factorial(int n, const CycNum& q);
/// Gaussian binomial via binom(n+1,r) = binom(n,r) + q^{n+1-r} binom(n,r-1).
CycNum q_binomial(int n, int r, const CycNum& q);

/// Pascal table of Gaussian binomials for one q, rows 0..max_n.
class QBinomialTable {
 public:
  QBinomialTable(const CycNum& q, int max_n);
  const CycNum& operator()(int n, int r) const;
  int max_n() const { return static_cast<int>(rows_.size()) - 1; }

 private:
  std::vector<std::vector<CycNum>> rows_;
  CycNum zero_;
};

}  // namespace hopflift
