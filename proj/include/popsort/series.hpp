#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace popsort {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Truncated formal power series c_0 + c_1 x + ... + c_N x^N with exact
/// rational coefficients; N is the truncation order. Binary operations
/// truncate to the smaller order.
class PowerSeries {
 public:
  /// The zero series to order 0.
  PowerSeries() : coeffs_(1) {}
  /// Order is coeffs.size() - 1; coeffs must be nonempty.
  explicit PowerSeries(std::vector<Rational> coeffs);

  static PowerSeries zero(int order);
  static PowerSeries constant(const Rational& c, int order);
  /// c * x^k to the given order.
  static PowerSeries monomial(int k, const Rational& c, int order);
  static PowerSeries x(int order) { return monomial(1, 1, order); }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_.at(k); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  PowerSeries truncated(int order) const;
  /// Number of leading zero coefficients (order + 1 for the zero series).
  int valuation() const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const Rational& c, const PowerSeries& a);
  /// Cancels a common factor x^k first; throws SeriesError when the
  /// quotient would need negative powers or b is zero.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
};

/// Square root with constant term 1; throws SeriesError otherwise.
PowerSeries sqrt(const PowerSeries& a);

/// (1 - 3x + 2x^2 - sqrt(1 - 6x + 5x^2)) / (2x(2 - x)) to order N. Throws
/// SeriesError if a coefficient is not a nonnegative integer.
PowerSeries ps_closed_form(int order);

/// f = x + f^2/(1+f) + xf/(1-x) + (xf)^2/((1-x)(1-x-xf)) iterated from 0.
PowerSeries ps_fixed_point(int order);

struct PsComponents {
  PowerSeries sum_decomposable;   // f^2 / (1 + f)
  PowerSeries skew_decomposable;  // x f / (1 - x)
  PowerSeries alternation;        // (x f)^2 / ((1 - x)(1 - x - x f))
};

PsComponents ps_components(int order);

/// Coefficients 1..order as integers; throws SeriesError if any is not one.
std::vector<BigInt> integer_coefficients(const PowerSeries& f);

}  // namespace popsort
