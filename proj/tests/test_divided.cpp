#include <gtest/gtest.h>

#include "oracles.hpp"
#include "popsort/divided.hpp"
#include "popsort/machines.hpp"

using namespace popsort;

namespace {

DividedPermutation D(const char* text) { return parse_divided(text); }
Permutation P(const char* text) { return parse_permutation(text); }

bool avoids_231(const Permutation& p) { return avoids(p, Permutation{2, 3, 1}); }

}  // namespace

TEST(Divided, ParseAndPrint) {
  const auto d = D("513|4|2");
  EXPECT_EQ(d.base(), P("51342"));
  EXPECT_EQ(d.dividers(), (std::vector<int>{3, 4}));
  EXPECT_EQ(d.block_count(), 3);
  EXPECT_EQ(d.to_digits(), "513|4|2");
  EXPECT_EQ(d.to_string(), "5,1,3|4|2");
  EXPECT_EQ(D("5,1,3|4|2"), d);
  EXPECT_THROW(DividedPermutation(P("12"), {2}), std::invalid_argument);
}

TEST(Divided, ContainmentExamples) {
  EXPECT_TRUE(div_contains(D("32|1"), D("513|4|2")));
  EXPECT_FALSE(div_contains(D("32|1"), D("51|34|2")));
  EXPECT_FALSE(div_contains(D("21"), D("2|1")));
}

TEST(Divided, ContainmentAgreesWithOracle) {
  std::vector<DividedPermutation> patterns;
  for (int k = 1; k <= 4; ++k) {
    for_each_permutation(k, [&](const Permutation& p) {
      for (const auto& d : all_divisions(p)) patterns.push_back(d);
    });
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& h : oracle::all_perms(n)) {
      for (const auto& host : all_divisions(Permutation(h))) {
        for (const auto& pat : patterns) {
          ASSERT_EQ(div_contains(pat, host), oracle::div_contains(pat, host))
              << pat.to_string() << " in " << host.to_string();
        }
      }
    }
  }
}

TEST(Divided, ContainmentOracleAtLengthSeven) {
  // a sampled sweep at the stated host length
  const std::vector<DividedPermutation> patterns{D("2341"), D("31|42"), D("2|3|4|1"), D("32|1"), D("2|13")};
  int checked = 0;
  for (const auto& h : oracle::all_perms(7)) {
    const Permutation base(h);
    if (lex_rank(base) % 37 != 0) continue;
    for (const auto& host : all_divisions(base)) {
      for (const auto& pat : patterns) {
        ASSERT_EQ(div_contains(pat, host), oracle::div_contains(pat, host));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Divided, UndividedDegeneratesToPlainContainment) {
  for (int n = 1; n <= 6; ++n) {
    for_each_permutation(n, [](const Permutation& host) {
      for (int k = 1; k <= 4; ++k) {
        for_each_permutation(k, [&](const Permutation& s) {
          ASSERT_EQ(div_contains(DividedPermutation(s), DividedPermutation(host)), contains(s, host));
        });
      }
    });
  }
}

TEST(Divisions, CountsAndOrder) {
  EXPECT_EQ(all_divisions(P("123")).size(), 4u);
  EXPECT_EQ(all_divisions(P("1")).size(), 1u);
  EXPECT_EQ(all_divisions(P("31425")).size(), 16u);
  const auto divisions = all_divisions(P("312"));
  std::vector<DividedPermutation> seen(divisions.begin(), divisions.end());
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[0], D("312"));
  EXPECT_EQ(seen[3], D("3|1|2"));
}

TEST(Divisions, AvoidingExamples) {
  const auto a = exists_division_avoiding(P("3142"), pqs_division_patterns());
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, D("31|42"));
  EXPECT_FALSE(exists_division_avoiding(P("2431"), ps_division_patterns()).has_value());
  const auto id = exists_division_avoiding(Permutation::identity(5), ps_division_patterns());
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(id->dividers().empty());
}

TEST(LocalReversals, Examples) {
  EXPECT_EQ(blockwise_reverse(D("31|42")), P("1324"));
  EXPECT_EQ(blockwise_reverse(D("3142")), P("2413"));
  EXPECT_EQ(blockwise_reverse(D("3|1|4|2")), P("3142"));
  EXPECT_TRUE(obtainable_by_local_reversals_from(P("3142"), avoids_231));
  EXPECT_TRUE(obtainable_by_local_reversals_from(Permutation::identity(5), avoids_231));
  EXPECT_FALSE(obtainable_by_local_reversals_from(P("465132"), avoids_231));
}

TEST(Divisions, CharacterizationsUpToEight) {
  for (int n = 1; n <= 8; ++n) {
    for_each_permutation(n, [](const Permutation& p) {
      const bool ps = exists_division_avoiding(p, ps_division_patterns()).has_value();
      ASSERT_EQ(ps, is_sortable(MachineKind::PS, p)) << p.to_string();
      const bool pqs = exists_division_avoiding(p, pqs_division_patterns()).has_value();
      ASSERT_EQ(pqs, is_sortable(MachineKind::PQS, p)) << p.to_string();
      ASSERT_EQ(pqs, obtainable_by_local_reversals_from(p, avoids_231)) << p.to_string();
    });
  }
}
