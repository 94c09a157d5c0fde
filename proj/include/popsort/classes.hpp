#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "popsort/machines.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

/// A set of permutations given by a finite basis, a machine's sortability,
/// or an arbitrary membership predicate. Basis mining only makes sense when
/// the set is downward closed.
class ClassSpec {
 public:
  struct Basis {
    std::vector<Permutation> patterns;
  };
  struct Predicate {
    std::string name;
    std::function<bool(const Permutation&)> test;
  };

  static ClassSpec from_basis(std::vector<Permutation> basis);
  static ClassSpec from_machine(MachineKind kind);
  static ClassSpec from_predicate(std::string name, std::function<bool(const Permutation&)> test);

  bool contains(const Permutation& p) const;

  /// "basis:2,4,3,1;3,1,4,2", "machine:pqs", "predicate:<name>".
  std::string canonical_text() const;
  /// 16 hex digits, FNV-1a of canonical_text().
  std::string fingerprint() const;

  const std::variant<Basis, MachineKind, Predicate>& source() const { return source_; }

 private:
  explicit ClassSpec(std::variant<Basis, MachineKind, Predicate> source)
      : source_(std::move(source)) {}
  std::variant<Basis, MachineKind, Predicate> source_;
};

/// Largest n for which membership tables are materialized.
inline constexpr int kMaxTableLength = 11;

/// Membership of every permutation of length n, indexed by lex_rank. Work is
/// split by first entry across `jobs` threads; the result does not depend on
/// `jobs`.
std::vector<std::uint8_t> membership_table(const ClassSpec& spec, int n, int jobs = 1);

std::uint64_t count_members(const ClassSpec& spec, int n, int jobs = 1);

/// Minimal non-members up to `max_len`, shortlex ordered. Throws
/// std::domain_error when the oracle rejects the permutation 1, which no
/// downward-closed nonempty class can do.
std::vector<Permutation> compute_basis(const ClassSpec& spec, int max_len, int jobs = 1);

/// Same as compute_basis, reusing precomputed tables; tables[n] must cover
/// length n for 1 <= n <= max_len (tables[0] is ignored).
std::vector<Permutation> basis_from_tables(const std::vector<std::vector<std::uint8_t>>& tables,
                                           int max_len);

struct WilfTable {
  std::vector<std::string> names;
  /// counts[n - 1][i]: members of specs[i] of length n.
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<bool> all_equal;
};

WilfTable wilf_table(std::span<const ClassSpec> specs, int max_n, int jobs = 1);

/// Simple permutations of length <= max_len avoiding `basis`, shortlex.
std::vector<Permutation> simples_in_class(std::span<const Permutation> basis, int max_len);

/// Skew sum of increasing runs, i.e. a member of Av(132, 213).
bool is_reverse_layered(const Permutation& p);

/// Recursive recognizer for the sum / skew / parallel-alternation-inflation
/// decomposition of Av(2431, 3142, 3241).
bool structural_member(const Permutation& p);

}  // namespace popsort
