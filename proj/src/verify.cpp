#include "popsort/verify.hpp"

#include <optional>
#include <random>

#include "popsort/antichain.hpp"
#include "popsort/classes.hpp"
#include "popsort/divided.hpp"
#include "popsort/machines.hpp"
#include "popsort/permutation.hpp"
#include "popsort/series.hpp"

namespace popsort {

namespace {

using Outcome = std::optional<std::string>;  // nullopt means the check held

// First permutation (shortlex) of length 1..max_n failing `ok`.
Outcome first_failure(int max_n, const std::function<bool(const Permutation&)>& ok) {
  for (int n = 1; n <= max_n; ++n) {
    Outcome found;
    for_each_permutation(n, [&](const Permutation& p) {
      if (!found && !ok(p)) found = p.to_string();
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool subsequence_match(const Permutation& pattern, const Permutation& host) {
  const int k = pattern.size();
  const int n = host.size();
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> values;
    for (int i : idx) values.push_back(host[i]);
    if (Permutation::standardize(values) == pattern) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Permutation> all_up_to(int max_n) {
  std::vector<Permutation> out;
  for (int n = 1; n <= max_n; ++n) for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

Outcome expect_counts(const char* what, const std::vector<std::uint64_t>& got,
                      const std::vector<std::uint64_t>& want) {
  for (std::size_t i = 0; i < got.size() && i < want.size(); ++i) {
    if (got[i] != want[i]) {
      return std::string(what) + " at n=" + std::to_string(i + 1) + ": got " +
             std::to_string(got[i]) + ", expected " + std::to_string(want[i]);
    }
  }
  return std::nullopt;
}

PowerSeries random_series(std::mt19937_64& rng, int order, bool unit_constant) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> c(order + 1);
  for (auto& v : c) v = Rational(num(rng), den(rng));
  if (unit_constant) c[0] = 1;
  return PowerSeries(std::move(c));
}

struct Bounds {
  int core;       // permcore checks
  int machines8;  // invariants stated at n <= 8
  int machines7;  // invariants stated at n <= 7
  int pruning;    // pruned vs unpruned
  int classes9;   // structural recognizer, Wilf, PS counts
  int simples;
  int pqs;        // PQS counts and basis
  int series_eq;
  int series_rand;
  int series_int;
  int basis_k;
  int antichain_k;
  int closure;
};

Bounds bounds_for(Suite suite) {
  if (suite == Suite::Fast) return {6, 6, 6, 6, 6, 6, 6, 10, 8, 20, 2, 3, 6};
  return {8, 8, 7, 6, 9, 10, 9, 20, 32, 40, 4, 5, 8};
}

}  // namespace

std::vector<InvariantResult> run_suite(Suite suite, int jobs,
                                       const std::function<void(const InvariantResult&)>& on_result) {
  const Bounds b = bounds_for(suite);
  std::vector<InvariantResult> results;
  auto record = [&](std::string name, const std::function<Outcome()>& check,
                    const std::function<void(InvariantResult&)>& annotate = {}) {
    InvariantResult r;
    r.name = std::move(name);
    try {
      if (auto bad = check()) {
        r.passed = false;
        r.detail = *bad;
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (r.passed && annotate) annotate(r);
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  const std::string core_n = " (n<=" + std::to_string(b.core) + ")";

  record("symmetries are involutions" + core_n, [&] {
    return first_failure(b.core, [](const Permutation& p) {
      return reverse(reverse(p)) == p && complement(complement(p)) == p &&
             inverse(inverse(p)) == p && dual(dual(p)) == p;
    });
  });
  record("dual equals reverse-inverse-reverse" + core_n, [&] {
    return first_failure(b.core, [](const Permutation& p) { return dual(p) == reverse(inverse(reverse(p))); });
  });
  record("decomposition inflates back with a simple quotient" + core_n, [&] {
    return first_failure(b.core, [](const Permutation& p) {
      const auto d = substitution_decompose(p);
      return is_simple(d.quotient) && inflate(d.quotient, d.parts) == p;
    });
  });
  record("containment is reflexive and transitive" + core_n, [&] {
    const auto small = all_up_to(3);
    return first_failure(b.core - 1, [&](const Permutation& p) {
      if (!contains(p, p)) return false;
      for (int i = 1; i <= p.size(); ++i) {
        const Permutation q = delete_entry(p, i);
        if (!contains(q, p)) return false;
        for (const auto& r : small) {
          if (contains(r, q) && !contains(r, p)) return false;
        }
      }
      return true;
    });
  });
  record("containment agrees with subsequence scan (|pattern|<=4, n<=" +
             std::to_string(b.core - 1) + ")",
         [&] {
           const auto patterns = all_up_to(4);
           return first_failure(b.core - 1, [&](const Permutation& host) {
             for (const auto& s : patterns) {
               if (contains(s, host) != subsequence_match(s, host)) return false;
             }
             return true;
           });
         });

  const std::string m8 = " (n<=" + std::to_string(b.machines8) + ")";
  const std::string m7 = " (n<=" + std::to_string(b.machines7) + ")";
  record("S sorts exactly Av(231)" + m8, [&] {
    const Permutation p231{2, 3, 1};
    return first_failure(b.machines8, [&](const Permutation& p) {
      return is_sortable(MachineKind::S, p) == avoids(p, p231);
    });
  });
  record("PS: machine, basis and division criteria agree" + m8, [&] {
    return first_failure(b.machines8, [](const Permutation& p) {
      const bool m = is_sortable(MachineKind::PS, p);
      return m == is_sortable_ps_via_basis(p) &&
             m == exists_division_avoiding(p, ps_division_patterns()).has_value();
    });
  });
  record("PQS: machine and division criteria agree" + m8, [&] {
    return first_failure(b.machines8, [](const Permutation& p) {
      return is_sortable(MachineKind::PQS, p) ==
             exists_division_avoiding(p, pqs_division_patterns()).has_value();
    });
  });
  record("PQS division criterion equals local reversals of Av(231)" + m8, [&] {
    const Permutation p231{2, 3, 1};
    auto av231 = [&](const Permutation& q) { return avoids(q, p231); };
    return first_failure(b.machines8, [&](const Permutation& p) {
      return exists_division_avoiding(p, pqs_division_patterns()).has_value() ==
             obtainable_by_local_reversals_from(p, av231);
    });
  });
  record("undivided block containment is plain containment (n<=" +
             std::to_string(std::min(b.core, 6)) + ")",
         [&] {
           const auto patterns = all_up_to(4);
           return first_failure(std::min(b.core, 6), [&](const Permutation& host) {
             const DividedPermutation h(host);
             for (const auto& s : patterns) {
               if (div_contains(DividedPermutation(s), h) != contains(s, host)) return false;
             }
             return true;
           });
         });
  record("SP and SQP sort the same permutations" + m7, [&] {
    return first_failure(b.machines7, [](const Permutation& p) {
      return is_sortable(MachineKind::SP, p) == is_sortable(MachineKind::SQP, p);
    });
  });
  record("PQS sorts p iff SP sorts dual(p)" + m7, [&] {
    return first_failure(b.machines7, [](const Permutation& p) {
      return is_sortable(MachineKind::PQS, p) == is_sortable(MachineKind::SP, dual(p));
    });
  });
  record("PS-sortable implies PQS- and DI-sortable" + m7, [&] {
    return first_failure(b.machines7, [](const Permutation& p) {
      if (!is_sortable(MachineKind::PS, p)) return true;
      return is_sortable(MachineKind::PQS, p) && is_sortable(MachineKind::DI, p);
    });
  });
  record("PS-sortable permutations are closed under direct sum" + m8, [&]() -> Outcome {
    std::vector<Permutation> members;
    for (const auto& p : all_up_to(b.machines8 - 1)) {
      if (is_sortable(MachineKind::PS, p)) members.push_back(p);
    }
    for (const auto& a : members) {
      for (const auto& c : members) {
        if (a.size() + c.size() > b.machines8) continue;
        if (!is_sortable(MachineKind::PS, direct_sum(a, c))) {
          return a.to_string() + " + " + c.to_string();
        }
      }
    }
    return std::nullopt;
  });
  record("pruned and unpruned searches agree (n<=" + std::to_string(b.pruning) + ")", [&]() -> Outcome {
    for (MachineKind kind : kAllMachineKinds) {
      auto bad = first_failure(b.pruning, [&](const Permutation& p) {
        return is_sortable(kind, p) == is_sortable(kind, p, SearchOptions::unpruned());
      });
      if (bad) return std::string(to_string(kind)) + ": " + *bad;
    }
    return std::nullopt;
  });
  record("sorting witnesses replay to the identity" + m7, [&]() -> Outcome {
    for (MachineKind kind : kAllMachineKinds) {
      auto bad = first_failure(b.machines7, [&](const Permutation& p) {
        const auto w = sorting_witness(kind, p);
        return !w || replay(kind, p, *w) == Permutation::identity(p.size());
      });
      if (bad) return std::string(to_string(kind)) + ": " + *bad;
    }
    const Permutation fig{3, 5, 6, 1, 2, 4};
    const auto moves = parse_moves(MachineKind::PS, "I,I,I,F,I,I,F,O,O,O,I,F,O,O,O");
    if (replay(MachineKind::PS, fig, moves) != Permutation::identity(6)) return "356124 trace";
    return std::nullopt;
  });
  record("DI and PQS separate 3142 and 465132", [&]() -> Outcome {
    const Permutation a{3, 1, 4, 2};
    const Permutation c{4, 6, 5, 1, 3, 2};
    if (!is_sortable(MachineKind::PQS, a)) return "PQS should sort 3142";
    if (is_sortable(MachineKind::DI, a)) return "DI should not sort 3142";
    if (!is_sortable(MachineKind::DI, c)) return "DI should sort 465132";
    if (is_sortable(MachineKind::PQS, c)) return "PQS should not sort 465132";
    return std::nullopt;
  });

  const std::string c9 = " (n<=" + std::to_string(b.classes9) + ")";
  record("structural recognizer equals Av(2431,3142,3241)" + c9, [&] {
    return first_failure(b.classes9, [](const Permutation& p) {
      return structural_member(p) == avoids_all(p, ps_basis());
    });
  });
  record("basis mining recovers {231} and {2431,3142,3241}", [&]() -> Outcome {
    const int len = std::min(b.machines8, 7);
    const std::vector<Permutation> s_basis{Permutation{2, 3, 1}};
    if (compute_basis(ClassSpec::from_basis(s_basis), len, jobs) != s_basis) return "Av(231)";
    if (compute_basis(ClassSpec::from_basis(ps_basis()), len, jobs) != ps_basis()) return "Av(2431,3142,3241)";
    if (compute_basis(ClassSpec::from_machine(MachineKind::PS), 6, jobs) != ps_basis()) return "PS machine";
    return std::nullopt;
  });
  record("simples in Av(2431,3142) are 1, 12, 21 and parallel alternations (n<=" +
             std::to_string(b.simples) + ")",
         [&]() -> Outcome {
           const std::vector<Permutation> basis{Permutation{2, 4, 3, 1}, Permutation{3, 1, 4, 2}};
           std::vector<Permutation> want{Permutation{1}, Permutation{1, 2}, Permutation{2, 1}};
           for (int m = 2; 2 * m <= b.simples; ++m) want.push_back(parallel_alternation(m));
           const auto got = simples_in_class(basis, b.simples);
           if (got != want) {
             std::string out = "got";
             for (const auto& p : got) out += " " + p.to_string();
             return out;
           }
           return std::nullopt;
         });
  record("PS counts equal series coefficients" + c9, [&]() -> Outcome {
    const auto f = integer_coefficients(ps_closed_form(b.classes9));
    for (int n = 1; n <= b.classes9; ++n) {
      const auto c = count_members(ClassSpec::from_machine(MachineKind::PS), n, jobs);
      if (BigInt(c) != f[n - 1]) return "n=" + std::to_string(n) + ": " + std::to_string(c) + " vs " + f[n - 1].str();
    }
    return std::nullopt;
  });
  record("Wilf-equivalent classes have equal counts" + c9, [&]() -> Outcome {
    const std::vector<ClassSpec> specs{
        ClassSpec::from_basis(parse_permutation_list("2431,3142,3241")),
        ClassSpec::from_basis(parse_permutation_list("2431,4231,4321")),
        ClassSpec::from_basis(parse_permutation_list("2143,2413,3142"))};
    const auto t = wilf_table(specs, b.classes9, jobs);
    for (std::size_t i = 0; i < t.all_equal.size(); ++i) {
      if (!t.all_equal[i]) return "n=" + std::to_string(i + 1);
    }
    return std::nullopt;
  });
  {
    std::vector<std::vector<std::uint8_t>> tables(b.pqs + 1);
    record("PQS counts 1, 2, 6, 24, 120, 685, ... (n<=" + std::to_string(b.pqs) + ")", [&] {
      std::vector<std::uint64_t> got;
      const auto spec = ClassSpec::from_machine(MachineKind::PQS);
      for (int n = 1; n <= b.pqs; ++n) {
        tables[n] = membership_table(spec, n, jobs);
        std::uint64_t c = 0;
        for (auto v : tables[n]) c += v;
        got.push_back(c);
      }
      return expect_counts("PQS", got, {1, 2, 6, 24, 120, 685, 4148, 25661, 159829});
    });
    std::size_t basis_size = 0;
    record(
        "PQS basis to length " + std::to_string(b.pqs),
        [&]() -> Outcome {
          basis_size = basis_from_tables(tables, b.pqs).size();
          return std::nullopt;
        },
        [&](InvariantResult& r) {
          r.detail = std::to_string(basis_size) + " elements";
          // the 108 figure is conjectural, so a mismatch is reported but not failed
          if (b.pqs == 9 && basis_size != 108) {
            r.mismatch_note = true;
            r.detail = "CONJECTURE-MISMATCH: " + r.detail + ", expected 108";
          }
        });
  }

  const std::string s_eq = " (N<=" + std::to_string(b.series_eq) + ")";
  record("closed form equals functional-equation fixed point" + s_eq, [&]() -> Outcome {
    for (int n = 1; n <= b.series_eq; ++n) {
      if (ps_closed_form(n) != ps_fixed_point(n)) return "N=" + std::to_string(n);
    }
    return std::nullopt;
  });
  record("closed form has nonnegative integer coefficients (N<=" + std::to_string(b.series_int) + ")",
         [&]() -> Outcome {
           ps_closed_form(b.series_int);  // throws on a bad coefficient
           return std::nullopt;
         });
  record("series division and square root invert multiplication (N<=" +
             std::to_string(b.series_rand) + ")",
         [&]() -> Outcome {
           std::mt19937_64 rng(20240501);
           for (int trial = 0; trial < 20; ++trial) {
             const int order = 1 + trial % b.series_rand;
             const auto a = random_series(rng, order, false);
             const auto d = random_series(rng, order, true);
             if ((a / d) * d != a) return "division trial " + std::to_string(trial);
             const auto s = sqrt(d);
             if (s * s != d) return "sqrt trial " + std::to_string(trial);
           }
           return std::nullopt;
         });
  record("alternation component equals its geometric partial sum" + s_eq, [&]() -> Outcome {
    const int n = b.series_eq;
    const auto comp = ps_components(n);
    const auto f = ps_closed_form(n);
    const auto one = PowerSeries::constant(1, n);
    const auto x = PowerSeries::x(n);
    const auto r = x * f / (one - x);
    auto power = r;
    auto sum = PowerSeries::zero(n);
    for (int m = 2; m <= n; ++m) {
      power = power * r;
      sum = sum + power;
    }
    if (sum != comp.alternation) return "partial sum differs";
    if (x + comp.sum_decomposable + comp.skew_decomposable + comp.alternation != f) return "components do not add up";
    return std::nullopt;
  });

  record("u_k is a basis element (k<=" + std::to_string(b.basis_k) + ")", [&]() -> Outcome {
    for (int k = 1; k <= b.basis_k; ++k) {
      const auto report = verify_basis_element(k);
      if (!report.passed()) return report.failures.front();
    }
    return std::nullopt;
  });
  record("u_1..u_" + std::to_string(b.antichain_k) + " form an antichain with two copies of 2341 each",
         [&]() -> Outcome {
           const auto report = verify_antichain(b.antichain_k);
           if (!report.passed()) return report.failures.front();
           return std::nullopt;
         });
  record("antichain pattern class is closed under deletion (n<=" + std::to_string(b.closure) + ")", [&] {
    return first_failure(b.closure, [](const Permutation& p) {
      if (!in_antichain_class(p)) return true;
      for (int i = 1; i <= p.size(); ++i) {
        if (!in_antichain_class(delete_entry(p, i))) return false;
      }
      return true;
    });
  });
  return results;
}

}  // namespace popsort
