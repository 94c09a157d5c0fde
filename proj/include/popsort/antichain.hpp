#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popsort/divided.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

inline constexpr int kMaxBasisElementK = 4;
inline constexpr int kMaxAntichainK = 5;

class BoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// u_k = 2,3,5,1, then (2j+3, 2j) for j = 2..k, then 2k+4, 2k+5, 2k+2.
/// Length 2k+5. Throws std::invalid_argument for k < 1.
Permutation antichain_element(int k);

/// 2341; 234|1, 23|4|1, 2|34|1, 2|3|4|1; 314|2, 31|42, 31|4|2.
const std::vector<DividedPattern>& antichain_patterns();

/// Some division of p avoids every antichain pattern.
bool in_antichain_class(const Permutation& p);

struct DeletionCheck {
  int position = 0;       // 1-based position removed from u_k
  int removed_value = 0;  // value at that position in u_k
  bool member = false;
  /// Witness on the original values of u_k ("2,5|1|7|..."), as in a proof
  /// written without relabeling.
  std::string witness_raw;
  /// Same witness after rank normalization.
  std::optional<DividedPermutation> witness;
};

struct BasisElementReport {
  int k = 0;
  Permutation element;
  bool member = true;  // expected false
  std::vector<DeletionCheck> deletions;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// u_k is outside the class and every one-entry deletion is inside.
/// Throws BoundError for k outside 1..kMaxBasisElementK.
BasisElementReport verify_basis_element(int k);

struct AntichainReport {
  int max_k = 0;
  std::uint64_t pairs_checked = 0;
  /// occurrences_2341[k - 1] = copies of 2341 in u_k
  std::vector<std::uint64_t> occurrences_2341;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// u_j is not contained in u_k for 1 <= j < k <= max_k, and each u_k holds
/// exactly two copies of 2341. Throws BoundError for max_k outside
/// 1..kMaxAntichainK.
AntichainReport verify_antichain(int max_k);

}  // namespace popsort
