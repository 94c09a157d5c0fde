#pragma once

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "popsort/permutation.hpp"

namespace popsort {

/// A permutation split into consecutive nonempty blocks. A divider at
/// position i sits between entries i and i+1 (1 <= i <= n-1). The empty
/// divider set (one block) is allowed.
class DividedPermutation {
 public:
  DividedPermutation() = default;
  explicit DividedPermutation(Permutation base, std::vector<int> dividers = {});

  /// Bit i-1 of `mask` set means a divider after position i.
  static DividedPermutation from_mask(Permutation base, std::uint64_t mask);

  const Permutation& base() const { return base_; }
  const std::vector<int>& dividers() const { return dividers_; }
  int size() const { return base_.size(); }
  int block_count() const { return static_cast<int>(dividers_.size()) + (base_.empty() ? 0 : 1); }

  /// 0-based block index of every position.
  std::vector<int> block_ids() const;

  /// Block contents as raw values of the base.
  std::vector<std::vector<int>> blocks() const;

  /// "3,1|4,2"
  std::string to_string() const;
  /// "31|42" (falls back to to_string() when n > 9)
  std::string to_digits() const;

  friend bool operator==(const DividedPermutation&, const DividedPermutation&) = default;

 private:
  Permutation base_;
  std::vector<int> dividers_;
};

using DividedPattern = DividedPermutation;

/// Blocks joined by '|', each block in comma form ("3,1|4,2") or, when the
/// whole permutation has n <= 9 and no commas appear, digit form ("31|42").
DividedPermutation parse_divided(std::string_view text);

/// Block-respecting containment: the entries of each pattern block come from
/// a single host block and distinct pattern blocks use distinct host blocks.
bool div_contains(const DividedPattern& pattern, const DividedPermutation& host);

/// Lazy range over all 2^(n-1) divisions of a permutation. Divisions are
/// produced in binary-counter order of their divider masks (bit i-1 means a
/// divider after position i), so the undivided permutation comes first.
class Divisions {
 public:
  explicit Divisions(Permutation base);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DividedPermutation;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const Permutation* base, std::uint64_t mask) : base_(base), mask_(mask) {}

    DividedPermutation operator*() const { return DividedPermutation::from_mask(*base_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++mask_;
      return tmp;
    }
    bool operator==(const iterator& other) const { return mask_ == other.mask_; }

   private:
    const Permutation* base_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return iterator(&base_, 0); }
  iterator end() const { return iterator(&base_, count_); }
  std::uint64_t size() const { return count_; }

 private:
  Permutation base_;
  std::uint64_t count_;
};

Divisions all_divisions(const Permutation& p);

/// First division of `p` (in all_divisions order) avoiding every pattern.
std::optional<DividedPermutation> exists_division_avoiding(const Permutation& p,
                                                           std::span<const DividedPattern> patterns);

/// Concatenation of the reversed blocks.
Permutation blockwise_reverse(const DividedPermutation& d);

bool obtainable_by_local_reversals_from(const Permutation& p,
                                        const std::function<bool(const Permutation&)>& membership);

/// {21, 2|13, 2|3|1}
const std::vector<DividedPattern>& ps_division_patterns();
/// {132, 2|13, 32|1, 2|3|1}
const std::vector<DividedPattern>& pqs_division_patterns();

}  // namespace popsort
