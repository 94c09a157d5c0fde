#include "popsort/classes.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace popsort {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Runs `work(first_entry)` for first_entry = 1..n on up to `jobs` threads.
template <class Work>
void for_each_first_entry(int n, int jobs, Work&& work) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int v = 1; v <= n; ++v) work(v);
    return;
  }
  std::atomic<int> next{1};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (int v = next++; v <= n; v = next++) work(v);
    });
  }
  for (auto& t : pool) t.join();
}

// Visits, in lexicographic order, every permutation of length n >= 1 whose
// first entry is `first`.
template <class Visit>
void for_each_with_first(int n, int first, Visit&& visit) {
  std::vector<int> v;
  v.reserve(n);
  v.push_back(first);
  for (int x = 1; x <= n; ++x) {
    if (x != first) v.push_back(x);
  }
  do {
    visit(Permutation(v));
  } while (std::next_permutation(v.begin() + 1, v.end()));
}

}  // namespace

ClassSpec ClassSpec::from_basis(std::vector<Permutation> basis) {
  std::sort(basis.begin(), basis.end(), ShortlexLess());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return ClassSpec(Basis{std::move(basis)});
}

ClassSpec ClassSpec::from_machine(MachineKind kind) { return ClassSpec(kind); }

ClassSpec ClassSpec::from_predicate(std::string name,
                                    std::function<bool(const Permutation&)> test) {
  return ClassSpec(Predicate{std::move(name), std::move(test)});
}

bool ClassSpec::contains(const Permutation& p) const {
  return std::visit(Overloaded{
                        [&](const Basis& b) { return avoids_all(p, b.patterns); },
                        [&](MachineKind k) { return is_sortable(k, p); },
                        [&](const Predicate& pr) { return pr.test(p); },
                    },
                    source_);
}

std::string ClassSpec::canonical_text() const {
  return std::visit(Overloaded{
                        [](const Basis& b) {
                          std::string out = "basis:";
                          for (std::size_t i = 0; i < b.patterns.size(); ++i) {
                            if (i) out += ';';
                            out += b.patterns[i].to_string();
                          }
                          return out;
                        },
                        [](MachineKind k) { return "machine:" + std::string(to_string(k)); },
                        [](const Predicate& pr) { return "predicate:" + pr.name; },
                    },
                    source_);
}

std::string ClassSpec::fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::uint8_t> membership_table(const ClassSpec& spec, int n, int jobs) {
  if (n < 0 || n > kMaxTableLength) {
    throw std::out_of_range("membership_table: n must be in 0.." + std::to_string(kMaxTableLength));
  }
  if (n == 0) return {static_cast<std::uint8_t>(spec.contains(Permutation()))};
  const std::uint64_t block = factorial(n - 1);
  std::vector<std::uint8_t> table(factorial(n), 0);
  for_each_first_entry(n, jobs, [&](int first) {
    std::uint64_t r = static_cast<std::uint64_t>(first - 1) * block;
    for_each_with_first(n, first, [&](const Permutation& p) { table[r++] = spec.contains(p); });
  });
  return table;
}

std::uint64_t count_members(const ClassSpec& spec, int n, int jobs) {
  if (n < 0) throw std::invalid_argument("count_members: n must be >= 0");
  if (n == 0) return spec.contains(Permutation()) ? 1 : 0;
  std::vector<std::uint64_t> partial(n + 1, 0);
  for_each_first_entry(n, jobs, [&](int first) {
    std::uint64_t c = 0;
    for_each_with_first(n, first, [&](const Permutation& p) { c += spec.contains(p) ? 1 : 0; });
    partial[first] = c;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::vector<Permutation> basis_from_tables(const std::vector<std::vector<std::uint8_t>>& tables,
                                           int max_len) {
  if (static_cast<int>(tables.size()) <= max_len) {
    throw std::invalid_argument("basis_from_tables: missing membership tables");
  }
  std::vector<Permutation> basis;
  for (int n = 1; n <= max_len; ++n) {
    const auto& table = tables[n];
    if (table.size() != factorial(n)) {
      throw std::invalid_argument("basis_from_tables: table " + std::to_string(n) +
                                  " has the wrong size");
    }
    if (n == 1 && !table[0]) {
      throw std::domain_error(
          "malformed membership oracle: the permutation 1 is rejected, so the set is not a "
          "nonempty downward-closed class");
    }
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::uint64_t rank = 0;
    do {
      if (!table[rank]) {
        const Permutation p(v);
        bool minimal = true;
        for (int i = 1; i <= n && minimal; ++i) {
          if (n == 1) break;  // the empty permutation is always a member
          minimal = tables[n - 1][lex_rank(delete_entry(p, i))] != 0;
        }
        if (minimal) basis.push_back(p);
      }
      ++rank;
    } while (std::next_permutation(v.begin(), v.end()));
  }
  return basis;
}

std::vector<Permutation> compute_basis(const ClassSpec& spec, int max_len, int jobs) {
  std::vector<std::vector<std::uint8_t>> tables(max_len + 1);
  for (int n = 1; n <= max_len; ++n) tables[n] = membership_table(spec, n, jobs);
  return basis_from_tables(tables, max_len);
}

WilfTable wilf_table(std::span<const ClassSpec> specs, int max_n, int jobs) {
  WilfTable table;
  for (const auto& s : specs) table.names.push_back(s.canonical_text());
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::uint64_t> row;
    for (const auto& s : specs) row.push_back(count_members(s, n, jobs));
    table.all_equal.push_back(std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) ==
                              row.end());
    table.counts.push_back(std::move(row));
  }
  return table;
}

std::vector<Permutation> simples_in_class(std::span<const Permutation> basis, int max_len) {
  std::vector<Permutation> out;
  for (int n = 1; n <= max_len; ++n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      const Permutation p(v);
      if (is_simple(p) && avoids_all(p, basis)) out.push_back(p);
    } while (std::next_permutation(v.begin(), v.end()));
  }
  return out;
}

bool is_reverse_layered(const Permutation& p) {
  int prev_run_min = p.size() + 1;
  int i = 0;
  while (i < p.size()) {
    int j = i;
    while (j + 1 < p.size() && p[j + 1] == p[j] + 1) ++j;
    if (p[j] >= prev_run_min) return false;
    prev_run_min = p[i];
    i = j + 1;
  }
  return true;
}

namespace {

using Memo = std::unordered_map<Permutation, bool, PermutationHash>;

bool is_increasing(const Permutation& p) { return std::is_sorted(p.begin(), p.end()); }

bool structural_rec(const Permutation& p, Memo& memo) {
  const int n = p.size();
  if (n <= 1) return true;
  if (auto it = memo.find(p); it != memo.end()) return it->second;

  auto piece = [&](int from, int to) {
    return Permutation::standardize(std::span<const int>(p.values()).subspan(from, to - from));
  };

  bool member = false;
  // (a) direct sums
  int hi = 0;
  for (int k = 1; k < n && !member; ++k) {
    hi = std::max(hi, p[k - 1]);
    if (hi == k) member = structural_rec(piece(0, k), memo) && structural_rec(piece(k, n), memo);
  }
  // (b) reverse layered skew-summed onto a member
  int lo = n + 1;
  for (int k = 1; k < n && !member; ++k) {
    lo = std::min(lo, p[k - 1]);
    if (lo == n - k + 1) {
      member = is_reverse_layered(piece(0, k)) && structural_rec(piece(k, n), memo);
    }
  }
  // (c) inflated parallel alternations
  if (!member) {
    const Decomposition d = substitution_decompose(p);
    const int len = d.quotient.size();
    if (len >= 4 && len % 2 == 0 && d.quotient == parallel_alternation(len / 2)) {
      member = true;
      for (int i = 0; i < len && member; ++i) {
        member = i < len / 2 ? is_increasing(d.parts[i]) : structural_rec(d.parts[i], memo);
      }
    }
  }
  memo.emplace(p, member);
  return member;
}

}  // namespace

bool structural_member(const Permutation& p) {
  Memo memo;
  return structural_rec(p, memo);
}

}  // namespace popsort
