#include <gtest/gtest.h>

#include "oracles.hpp"
#include "popsort/antichain.hpp"

using namespace popsort;

namespace {

Permutation P(const char* text) { return parse_permutation(text); }

}  // namespace

TEST(Antichain, Elements) {
  EXPECT_EQ(antichain_element(1), P("2351674"));
  EXPECT_EQ(antichain_element(2), P("235174896"));
  EXPECT_EQ(antichain_element(3), P("2,3,5,1,7,4,9,6,10,11,8"));
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(antichain_element(k).size(), 2 * k + 5);
  EXPECT_THROW(antichain_element(0), std::invalid_argument);
}

TEST(Antichain, Patterns) {
  const auto& pats = antichain_patterns();
  ASSERT_EQ(pats.size(), 8u);
  EXPECT_NE(std::find(pats.begin(), pats.end(), parse_divided("2341")), pats.end());
  const auto it = std::find(pats.begin(), pats.end(), parse_divided("31|42"));
  ASSERT_NE(it, pats.end());
  EXPECT_EQ(it->dividers().size(), 1u);
}

TEST(Antichain, Membership) {
  EXPECT_FALSE(in_antichain_class(antichain_element(1)));
  for (int n = 0; n <= 10; ++n) EXPECT_TRUE(in_antichain_class(Permutation::identity(n)));
}

TEST(Antichain, DeletingTheThreeFromU5) {
  const auto u5 = antichain_element(5);
  const auto q = delete_entry(u5, 2);
  EXPECT_TRUE(in_antichain_class(q));
  // the division 2,5 | 1 | 7 | 4 | 9 | 6 | 11 | 8 | 13 | 10,14,15,12 on the
  // original values, normalized
  const DividedPermutation shown(q, {2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(shown.base(), P("2,4,1,6,3,8,5,10,7,12,9,13,14,11"));
  for (const auto& pat : antichain_patterns()) {
    EXPECT_FALSE(oracle::div_contains(pat, shown)) << pat.to_string();
    EXPECT_FALSE(div_contains(pat, shown)) << pat.to_string();
  }
}

TEST(Antichain, BasisElementReports) {
  for (int k = 1; k <= 4; ++k) {
    const auto r = verify_basis_element(k);
    EXPECT_TRUE(r.passed()) << k;
    EXPECT_FALSE(r.member);
    ASSERT_EQ(r.deletions.size(), static_cast<std::size_t>(2 * k + 5));
    for (const auto& d : r.deletions) {
      ASSERT_TRUE(d.member);
      ASSERT_TRUE(d.witness.has_value());
      EXPECT_EQ(d.witness->base(), delete_entry(r.element, d.position));
      for (const auto& pat : antichain_patterns()) ASSERT_FALSE(oracle::div_contains(pat, *d.witness));
      // the raw witness drops exactly the removed value
      EXPECT_EQ(d.witness_raw.find("|" + std::to_string(d.removed_value) + "|"), std::string::npos);
    }
  }
  EXPECT_EQ(verify_basis_element(1).deletions.size(), 7u);
  EXPECT_THROW(verify_basis_element(5), BoundError);
  EXPECT_THROW(verify_basis_element(0), BoundError);
}

TEST(Antichain, RawWitnessFormat) {
  const auto r = verify_basis_element(1);
  // deleting the largest entry leaves the other values unchanged
  const auto& d = r.deletions[5];
  EXPECT_EQ(d.removed_value, 7);
  ASSERT_TRUE(d.witness.has_value());
  std::string digits;
  for (char c : d.witness_raw) {
    if (c != ',') digits += c;
  }
  EXPECT_EQ(digits, d.witness->to_digits());
}

TEST(Antichain, PairwiseIncomparable) {
  const auto r = verify_antichain(5);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.pairs_checked, 10u);
  EXPECT_EQ(r.occurrences_2341, (std::vector<std::uint64_t>{2, 2, 2, 2, 2}));
  EXPECT_EQ(count_occurrences(P("2341"), antichain_element(2)), 2u);
  EXPECT_TRUE(contains(antichain_element(1), antichain_element(1)));
  EXPECT_THROW(verify_antichain(6), BoundError);
  for (int j = 1; j <= 4; ++j) {
    for (int k = j + 1; k <= 4; ++k) {
      EXPECT_FALSE(oracle::contains(oracle::values(antichain_element(j)), oracle::values(antichain_element(k))));
    }
  }
}

TEST(Antichain, ClassClosedUnderDeletion) {
  for (int n = 1; n <= 8; ++n) {
    for_each_permutation(n, [](const Permutation& p) {
      if (!in_antichain_class(p)) return;
      for (int i = 1; i <= p.size(); ++i) ASSERT_TRUE(in_antichain_class(delete_entry(p, i))) << p.to_string();
    });
  }
}
