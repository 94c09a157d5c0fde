#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "popsort/permutation.hpp"

using namespace popsort;

namespace {

Permutation P(const char* text) { return parse_permutation(text); }

}  // namespace

TEST(Parse, DigitAndCommaForms) {
  EXPECT_EQ(P("24513"), Permutation({2, 4, 5, 1, 3}));
  EXPECT_EQ(P("1"), Permutation({1}));
  EXPECT_EQ(P("2,4,5,1,3"), P("24513"));
  EXPECT_EQ(P("10,1,2,3,4,5,6,7,8,9").size(), 10);
  EXPECT_TRUE(P("").empty());
}

TEST(Parse, Rejections) {
  EXPECT_THROW(P("1123"), ParseError);
  EXPECT_THROW(P("1,3"), ParseError);
  EXPECT_THROW(P("12a"), ParseError);
  EXPECT_THROW(P("1234567890"), ParseError);
}

TEST(Parse, Lists) {
  const auto a = parse_permutation_list("2431,3142,3241");
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[1], P("3142"));
  const auto b = parse_permutation_list("2,4,3,1; 3,1,4,2");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], P("2431"));
}

TEST(Containment, Examples) {
  EXPECT_TRUE(contains(P("3241"), P("35241")));
  EXPECT_TRUE(contains(P("1"), P("312")));
  EXPECT_TRUE(contains(P("2341"), P("235174896")));
  EXPECT_EQ(count_occurrences(P("2341"), P("2351674")), 2u);
  EXPECT_EQ(count_occurrences(P("21"), P("12")), 0u);
  EXPECT_EQ(count_occurrences(P("2341"), P("235174896")), 2u);
}

TEST(Containment, AgreesWithSubsequenceOracle) {
  std::vector<Permutation> patterns;
  for (int k = 1; k <= 4; ++k) for_each_permutation(k, [&](const Permutation& p) { patterns.push_back(p); });
  for (int n = 1; n <= 7; ++n) {
    for (const auto& h : oracle::all_perms(n)) {
      const Permutation host(h);
      for (const auto& s : patterns) {
        ASSERT_EQ(contains(s, host), oracle::contains(oracle::values(s), h)) << s.to_string() << " in " << host.to_string();
      }
    }
  }
}

TEST(Containment, OccurrenceCountsAgreeWithOracle) {
  const Permutation pat = P("231");
  for (const auto& h : oracle::all_perms(6)) {
    ASSERT_EQ(count_occurrences(pat, Permutation(h)), static_cast<std::uint64_t>(oracle::occurrences({2, 3, 1}, h)));
  }
}

TEST(Containment, ReflexiveAndTransitiveOnSamples) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> v(7);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    const Permutation c(v);
    EXPECT_TRUE(contains(c, c));
    const Permutation b = delete_entry(delete_entry(c, 1 + trial % 7), 1 + trial % 6);
    const Permutation a = delete_entry(b, 1 + trial % 5);
    ASSERT_TRUE(contains(a, b));
    ASSERT_TRUE(contains(b, c));
    ASSERT_TRUE(contains(a, c));
  }
}

TEST(Symmetries, Examples) {
  EXPECT_EQ(reverse(P("231")), P("132"));
  EXPECT_EQ(complement(Permutation::identity(5)), P("54321"));
  EXPECT_EQ(inverse(P("312")), P("231"));
  EXPECT_EQ(dual(Permutation::identity(6)), Permutation::identity(6));
  EXPECT_EQ(dual(P("231")), P("231"));
}

TEST(Symmetries, InvolutionsAndDualFormula) {
  for (int n = 0; n <= 8; ++n) {
    for_each_permutation(n, [](const Permutation& p) {
      ASSERT_EQ(reverse(reverse(p)), p);
      ASSERT_EQ(complement(complement(p)), p);
      ASSERT_EQ(inverse(inverse(p)), p);
      ASSERT_EQ(dual(dual(p)), p);
      ASSERT_EQ(dual(p), reverse(inverse(reverse(p))));
    });
  }
}

TEST(Sums, Examples) {
  EXPECT_EQ(direct_sum(P("12"), P("1")), P("123"));
  EXPECT_EQ(skew_sum(P("1"), P("1")), P("21"));
  EXPECT_EQ(direct_sum(P("21"), P("21")), P("2143"));
  EXPECT_EQ(direct_sum(Permutation(), P("21")), P("21"));
}

TEST(Inflation, Examples) {
  const std::vector<Permutation> parts{P("1"), P("132"), P("321"), P("12")};
  EXPECT_EQ(inflate(P("2413"), parts), P("479832156"));
  EXPECT_EQ(inflate(P("1"), std::vector<Permutation>{P("3142")}), P("3142"));
  EXPECT_EQ(inflate(P("12"), std::vector<Permutation>{P("1"), P("1")}), P("12"));
  EXPECT_THROW(inflate(P("12"), std::vector<Permutation>{P("1")}), std::invalid_argument);
  EXPECT_THROW(inflate(P("12"), std::vector<Permutation>{P("1"), Permutation()}), std::invalid_argument);
}

TEST(Simplicity, Examples) {
  EXPECT_FALSE(is_simple(P("31542")));
  EXPECT_TRUE(is_simple(P("25314")));
  EXPECT_TRUE(is_simple(P("1")));
  EXPECT_TRUE(is_simple(P("12")));
  EXPECT_FALSE(is_simple(P("123")));
  EXPECT_FALSE(is_simple(Permutation()));
}

TEST(Simplicity, AgreesWithOracle) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& v : oracle::all_perms(n)) ASSERT_EQ(is_simple(Permutation(v)), oracle::is_simple(v));
  }
}

TEST(Decomposition, Examples) {
  const auto d = substitution_decompose(P("479832156"));
  EXPECT_EQ(d.quotient, P("2413"));
  EXPECT_EQ(d.parts, (std::vector<Permutation>{P("1"), P("132"), P("321"), P("12")}));

  const auto e = substitution_decompose(P("123"));
  EXPECT_EQ(e.quotient, P("12"));
  EXPECT_EQ(e.parts, (std::vector<Permutation>{P("1"), P("12")}));

  const auto f = substitution_decompose(P("25314"));
  EXPECT_EQ(f.quotient, P("25314"));
  EXPECT_EQ(f.parts.size(), 5u);
}

TEST(Decomposition, RoundTripWithSimpleQuotient) {
  for (int n = 1; n <= 8; ++n) {
    for_each_permutation(n, [](const Permutation& p) {
      const auto d = substitution_decompose(p);
      ASSERT_TRUE(is_simple(d.quotient)) << p.to_string();
      ASSERT_EQ(inflate(d.quotient, d.parts), p);
      if (d.quotient == Permutation{1, 2}) ASSERT_FALSE(is_sum_decomposable(d.parts[0]));
      if (d.quotient == Permutation{2, 1}) ASSERT_FALSE(is_skew_decomposable(d.parts[0]));
    });
  }
}

TEST(ParallelAlternation, Examples) {
  EXPECT_EQ(parallel_alternation(2), P("2413"));
  EXPECT_EQ(parallel_alternation(3), P("246135"));
  for (int m = 2; m <= 6; ++m) EXPECT_TRUE(is_simple(parallel_alternation(m)));
  EXPECT_THROW(parallel_alternation(1), std::invalid_argument);
}

TEST(DeleteEntry, Examples) {
  // 2,4,5,3 after removing the 1 normalizes to 1,3,4,2
  EXPECT_EQ(delete_entry(P("24513"), 4), P("1342"));
  EXPECT_TRUE(delete_entry(P("1"), 1).empty());
  EXPECT_EQ(delete_entry(P("2351674"), 2), P("241563"));
  EXPECT_THROW(delete_entry(P("12"), 3), std::out_of_range);
}

TEST(Ranking, LexRankRoundTrip) {
  for (int n = 0; n <= 6; ++n) {
    std::uint64_t expected = 0;
    for (const auto& v : oracle::all_perms(n)) {
      const Permutation p(v);
      ASSERT_EQ(lex_rank(p), expected);
      ASSERT_EQ(lex_unrank(n, expected), p);
      ++expected;
    }
  }
}
