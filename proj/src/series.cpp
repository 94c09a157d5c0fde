#include "popsort/series.hpp"

#include <algorithm>

namespace popsort {

namespace {

bool integral(const std::vector<Rational>& c, int n) {
  for (int i = 0; i <= n; ++i) {
    if (boost::multiprecision::denominator(c[i]) != 1) return false;
  }
  return true;
}

std::vector<BigInt> numerators(const std::vector<Rational>& c, int from, int to) {
  std::vector<BigInt> out;
  out.reserve(to - from + 1);
  for (int i = from; i <= to; ++i) out.push_back(boost::multiprecision::numerator(c[i]));
  return out;
}

std::vector<Rational> to_rationals(std::vector<BigInt> c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (auto& v : c) out.emplace_back(std::move(v));
  return out;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("PowerSeries needs at least one coefficient");
}

PowerSeries PowerSeries::zero(int order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  return PowerSeries(std::vector<Rational>(order + 1));
}

PowerSeries PowerSeries::constant(const Rational& c, int order) {
  PowerSeries s = zero(order);
  s.coeffs_[0] = c;
  return s;
}

PowerSeries PowerSeries::monomial(int k, const Rational& c, int order) {
  PowerSeries s = zero(order);
  if (k >= 0 && k <= order) s.coeffs_[k] = c;
  return s;
}

PowerSeries PowerSeries::truncated(int order) const {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1);
  c.resize(order + 1);
  return PowerSeries(std::move(c));
}

int PowerSeries::valuation() const {
  int k = 0;
  while (k <= order() && coeffs_[k] == 0) ++k;
  return k;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Rational> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
  return PowerSeries(std::move(c));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Rational> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a.coeffs_[i] - b.coeffs_[i];
  return PowerSeries(std::move(c));
}

PowerSeries operator-(const PowerSeries& a) {
  std::vector<Rational> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs_[i];
  return PowerSeries(std::move(c));
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  if (integral(a.coeffs_, n) && integral(b.coeffs_, n)) {
    // gcd normalization dominates rational products; skip it when possible
    const auto x = numerators(a.coeffs_, 0, n);
    const auto y = numerators(b.coeffs_, 0, n);
    std::vector<BigInt> c(n + 1);
    for (int i = 0; i <= n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (y[j] != 0) c[i + j] += x[i] * y[j];
      }
    }
    return PowerSeries(to_rationals(std::move(c)));
  }
  std::vector<Rational> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.coeffs_[j] != 0) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return PowerSeries(std::move(c));
}

PowerSeries operator*(const Rational& k, const PowerSeries& a) {
  std::vector<Rational> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.coeffs_[i];
  return PowerSeries(std::move(c));
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  const int shift = b.truncated(n).valuation();
  if (shift > n) {
    throw SeriesError("division by a series that vanishes to order " + std::to_string(n));
  }
  if (a.truncated(n).valuation() < shift) {
    throw SeriesError("division needs negative powers: numerator has order-" +
                      std::to_string(a.truncated(n).valuation()) +
                      " leading term, denominator has order-" + std::to_string(shift));
  }
  const int m = n - shift;
  const Rational& lead = b.coeffs_[shift];
  if ((lead == 1 || lead == -1) && integral(a.coeffs_, n) && integral(b.coeffs_, n)) {
    const auto x = numerators(a.coeffs_, shift, n);
    const auto y = numerators(b.coeffs_, shift, n);
    const bool negate = lead == -1;
    std::vector<BigInt> q(m + 1);
    for (int k = 0; k <= m; ++k) {
      BigInt acc = x[k];
      for (int i = 1; i <= k; ++i) {
        if (y[i] != 0 && q[k - i] != 0) acc -= y[i] * q[k - i];
      }
      q[k] = negate ? BigInt(-acc) : acc;
    }
    return PowerSeries(to_rationals(std::move(q)));
  }
  std::vector<Rational> q(m + 1);
  for (int k = 0; k <= m; ++k) {
    Rational acc = a.coeffs_[k + shift];
    for (int i = 1; i <= k; ++i) {
      const Rational& bi = b.coeffs_[i + shift];
      if (bi != 0 && q[k - i] != 0) acc -= bi * q[k - i];
    }
    q[k] = acc / lead;
  }
  return PowerSeries(std::move(q));
}

std::string PowerSeries::to_string() const {
  std::string out;
  for (int k = 0; k <= order(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[k].str() + ")";
    if (k) out += "x^" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out + " + O(x^" + std::to_string(order() + 1) + ")";
}

PowerSeries sqrt(const PowerSeries& a) {
  if (a[0] != 1) throw SeriesError("sqrt needs constant term 1, got " + a[0].str());
  const int n = a.order();
  std::vector<Rational> s(n + 1);
  s[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational acc = a[k];
    for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
    s[k] = acc / 2;
  }
  return PowerSeries(std::move(s));
}

std::vector<BigInt> integer_coefficients(const PowerSeries& f) {
  std::vector<BigInt> out;
  for (int k = 1; k <= f.order(); ++k) {
    if (boost::multiprecision::denominator(f[k]) != 1) {
      throw SeriesError("coefficient " + std::to_string(k) + " is not an integer: " + f[k].str());
    }
    out.push_back(boost::multiprecision::numerator(f[k]));
  }
  return out;
}

PowerSeries ps_closed_form(int order) {
  if (order < 1) throw std::invalid_argument("ps_closed_form: order must be >= 1");
  // one extra term: dividing by 2x(2 - x) costs one order
  const int m = order + 1;
  const PowerSeries one = PowerSeries::constant(1, m);
  const PowerSeries x = PowerSeries::x(m);
  const PowerSeries x2 = x * x;
  const PowerSeries root = sqrt(one - Rational(6) * x + Rational(5) * x2);
  const PowerSeries numerator = one - Rational(3) * x + Rational(2) * x2 - root;
  const PowerSeries denominator = Rational(4) * x - Rational(2) * x2;
  if (numerator.valuation() < 1) {
    throw SeriesError("closed form numerator does not vanish at 0");
  }
  PowerSeries f = numerator / denominator;
  if (f.order() != order) throw SeriesError("closed form lost precision");
  if (f[0] != 0) throw SeriesError("closed form has nonzero constant term " + f[0].str());
  for (const BigInt& c : integer_coefficients(f)) {
    if (c < 0) throw SeriesError("closed form has a negative coefficient");
  }
  return f;
}

namespace {

PowerSeries functional_rhs(const PowerSeries& f) {
  const int n = f.order();
  const PowerSeries one = PowerSeries::constant(1, n);
  const PowerSeries x = PowerSeries::x(n);
  const PowerSeries xf = x * f;
  return x + f * f / (one + f) + xf / (one - x) + xf * xf / ((one - x) * (one - x - xf));
}

}  // namespace

PowerSeries ps_fixed_point(int order) {
  if (order < 1) throw std::invalid_argument("ps_fixed_point: order must be >= 1");
  PowerSeries f = PowerSeries::zero(order);
  for (int iteration = 1; iteration <= order + 1; ++iteration) {
    PowerSeries next = functional_rhs(f);
    if (next == f) return f;
    f = std::move(next);
  }
  throw SeriesError("fixed-point iteration did not converge within " + std::to_string(order + 1) +
                    " iterations");
}

PsComponents ps_components(int order) {
  const PowerSeries f = ps_closed_form(order);
  const PowerSeries one = PowerSeries::constant(1, order);
  const PowerSeries x = PowerSeries::x(order);
  const PowerSeries xf = x * f;
  return {f * f / (one + f), xf / (one - x), xf * xf / ((one - x) * (one - x - xf))};
}

}  // namespace popsort
