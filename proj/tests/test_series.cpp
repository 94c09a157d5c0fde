#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "popsort/classes.hpp"
#include "popsort/series.hpp"

using namespace popsort;

namespace {

PowerSeries S(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return PowerSeries(std::move(v));
}

PowerSeries random_series(std::mt19937_64& rng, int order, bool unit_constant) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<Rational> c(order + 1);
  for (auto& v : c) v = Rational(num(rng), den(rng));
  if (unit_constant) c[0] = 1;
  return PowerSeries(std::move(c));
}

// Brute-force count of Av(2431,3142,3241) by subsequence scanning.
std::uint64_t brute_ps(int n) {
  std::uint64_t c = 0;
  for (const auto& v : oracle::all_perms(n)) {
    c += !oracle::contains({2, 4, 3, 1}, v) && !oracle::contains({3, 1, 4, 2}, v) &&
         !oracle::contains({3, 2, 4, 1}, v);
  }
  return c;
}

}  // namespace

TEST(PowerSeries, Arithmetic) {
  EXPECT_EQ(S({1, 1}) * S({1, -1}), S({1, 0}));
  EXPECT_EQ(S({1, 1, 0}) * S({1, -1, 0}), S({1, 0, -1}));
  EXPECT_EQ(S({3, 1, 4}) + PowerSeries::zero(2), S({3, 1, 4}));
  EXPECT_EQ(PowerSeries::x(3) * PowerSeries::x(3), S({0, 0, 1, 0}));
  // mixed orders truncate to the smaller one
  EXPECT_EQ((S({1, 2, 3}) + S({1, 1})).order(), 1);
  EXPECT_EQ(S({1, 2}) - S({1, 2}), S({0, 0}));
  EXPECT_EQ(-S({1, -2}), S({-1, 2}));
  EXPECT_EQ(Rational(1, 2) * S({2, 4}), S({1, 2}));
}

TEST(PowerSeries, IntegerPathsMatchRationalPaths) {
  // halving one operand forces the general rational code
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-50, 50);
  const Rational half(1, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> a(16), b(16);
    for (auto& v : a) v = coef(rng);
    for (auto& v : b) v = coef(rng);
    b[0] = trial % 2 ? 1 : -1;
    const PowerSeries u(a), w(b);
    EXPECT_EQ(u * w, Rational(2) * ((half * u) * w));
    EXPECT_EQ(u / w, Rational(2) * ((half * u) / w));
  }
}

TEST(PowerSeries, Division) {
  EXPECT_EQ(S({0, 1, 1, 0}) / S({0, 1, 0, 0}), S({1, 1, 0}));
  EXPECT_EQ(S({1, 0, 0, 0, 0}) / S({1, -1, 0, 0, 0}), S({1, 1, 1, 1, 1}));
  const auto q = S({0, 1, 0, 0, 0}) / S({1, 1, 0, 0, 0});
  EXPECT_EQ(q, S({0, 1, -1, 1, -1}));
  EXPECT_EQ(q * S({1, 1, 0, 0, 0}), S({0, 1, 0, 0, 0}));
  EXPECT_THROW(S({1, 0}) / S({0, 1}), SeriesError);
  EXPECT_THROW(S({1, 0}) / S({0, 0}), SeriesError);
}

TEST(PowerSeries, SquareRoot) {
  EXPECT_EQ(sqrt(S({1, 2, 1, 0})), S({1, 1, 0, 0}));
  EXPECT_EQ(sqrt(S({1})), S({1}));
  EXPECT_EQ(sqrt(S({1, -6, 5, 0})), S({1, -3, -2, -6}));
  EXPECT_THROW(sqrt(S({2, 1})), SeriesError);
}

TEST(PowerSeries, RandomizedInverses) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    const int order = 1 + trial % 32;
    const auto a = random_series(rng, order, false);
    auto b = random_series(rng, order, false);
    if (b[0] == 0) b = b + PowerSeries::constant(1, order);
    EXPECT_EQ((a / b) * b, a) << trial;
    const auto u = random_series(rng, order, true);
    const auto r = sqrt(u);
    EXPECT_EQ(r * r, u) << trial;
    EXPECT_EQ(r[0], 1);
  }
}

TEST(PowerSeries, RandomizedDivisionWithCancellation) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int order = 4 + trial % 20;
    const auto u = random_series(rng, order, true);
    const auto v = random_series(rng, order, false);
    const auto x = PowerSeries::x(order);
    // (v x^3) / (u x^2) cancels x^2 and loses two orders
    const auto q = (v * x * x * x) / (u * x * x);
    ASSERT_EQ(q.order(), order - 2);
    const int m = order - 2;
    EXPECT_EQ(q * u.truncated(m), v.truncated(m) * PowerSeries::x(m)) << trial;
  }
}

TEST(GeneratingFunction, ClosedFormCoefficients) {
  const auto c = integer_coefficients(ps_closed_form(4));
  EXPECT_EQ(c, (std::vector<BigInt>{1, 2, 6, 21}));
  EXPECT_EQ(ps_closed_form(10)[0], 0);
}

TEST(GeneratingFunction, ClosedFormMatchesBruteForce) {
  const auto c = integer_coefficients(ps_closed_form(9));
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(c[n - 1], BigInt(brute_ps(n))) << n;
  for (int n = 1; n <= 9; ++n) {
    EXPECT_EQ(c[n - 1], BigInt(count_members(ClassSpec::from_machine(MachineKind::PS), n))) << n;
  }
}

TEST(GeneratingFunction, NonnegativeIntegersToForty) {
  const auto c = integer_coefficients(ps_closed_form(40));
  for (const auto& v : c) EXPECT_GE(v, 0);
  // the ratio of consecutive coefficients tends to 5
  EXPECT_GT(c[39] * 10, c[38] * 45);
  EXPECT_LT(c[39], c[38] * 5);
}

TEST(GeneratingFunction, FixedPoint) {
  EXPECT_EQ(integer_coefficients(ps_fixed_point(4)), (std::vector<BigInt>{1, 2, 6, 21}));
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(ps_fixed_point(n), ps_closed_form(n)) << n;
}

TEST(GeneratingFunction, Components) {
  const int n = 12;
  const auto f = ps_closed_form(n);
  const auto c = ps_components(n);
  const auto x = PowerSeries::x(n);
  EXPECT_EQ(x + c.sum_decomposable + c.skew_decomposable + c.alternation, f);
  EXPECT_EQ(c.sum_decomposable[2], 1);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(c.alternation[k], 0);

  const auto one = PowerSeries::constant(1, n);
  const auto r = x * f / (one - x);
  auto power = r;
  auto sum = PowerSeries::zero(n);
  for (int m = 2; m <= n; ++m) {
    power = power * r;
    sum = sum + power;
  }
  EXPECT_EQ(sum, c.alternation);
}

TEST(GeneratingFunction, ComponentsCountDecomposables) {
  for (int n = 1; n <= 7; ++n) {
    std::uint64_t sum = 0, skew = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      if (!is_sortable_ps_via_basis(p)) return;
      sum += is_sum_decomposable(p);
      skew += is_skew_decomposable(p);
    });
    const auto c = ps_components(7);
    EXPECT_EQ(c.sum_decomposable[n], Rational(sum)) << n;
    EXPECT_EQ(c.skew_decomposable[n], Rational(skew)) << n;
  }
}
