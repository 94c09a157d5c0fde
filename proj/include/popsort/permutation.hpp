#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace popsort {

/// Raised when permutation (or divided permutation) text cannot be parsed.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A permutation of {1..n} in one-line notation. The empty permutation is
/// a legal value and is the identity for direct and skew sums.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `values` is a bijection onto 1..n.
  explicit Permutation(std::vector<int> values);
  Permutation(std::initializer_list<int> values);

  static Permutation identity(int n);

  /// Rank-normalizes a sequence of distinct integers onto 1..k.
  static Permutation standardize(std::span<const int> values);

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  /// 0-based access: (*this)[i] is the value at position i+1.
  int operator[](std::size_t i) const { return values_[i]; }

  const std::vector<int>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Canonical comma-separated form, e.g. "2,4,5,1,3".
  std::string to_string() const;

  /// Digit form ("24513"), only meaningful when n <= 9.
  std::string to_digits() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

/// Orders by length first, then lexicographically.
struct ShortlexLess {
  bool operator()(const Permutation& a, const Permutation& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Accepts "2,4,5,1,3" or, for n <= 9, "24513". The empty string is the
/// empty permutation.
Permutation parse_permutation(std::string_view text);

/// Parses a list of permutations. If the text contains ';' or whitespace,
/// those separate items and each item may use either form
/// ("2,4,3,1; 3,1,4,2"). Otherwise commas separate digit-form items
/// ("2431,3142,3241").
std::vector<Permutation> parse_permutation_list(std::string_view text);

bool contains(const Permutation& pattern, const Permutation& host);
inline bool avoids(const Permutation& host, const Permutation& pattern) {
  return !contains(pattern, host);
}
bool avoids_all(const Permutation& host, std::span<const Permutation> patterns);

std::uint64_t count_occurrences(const Permutation& pattern,
                                const Permutation& host);

Permutation reverse(const Permutation& p);
Permutation complement(const Permutation& p);
Permutation inverse(const Permutation& p);

/// Two-stack dual: d(i) = n + 1 - p^{-1}(n + 1 - i).
Permutation dual(const Permutation& p);

Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

/// Replaces each entry of `quotient` by an interval order-isomorphic to the
/// matching part. Throws std::invalid_argument on arity mismatch or an
/// empty part.
Permutation inflate(const Permutation& quotient,
                    std::span<const Permutation> parts);

bool is_simple(const Permutation& p);
bool is_sum_decomposable(const Permutation& p);
bool is_skew_decomposable(const Permutation& p);

struct Decomposition {
  Permutation quotient;
  std::vector<Permutation> parts;
};

/// Simple quotient plus inflating intervals. For quotients 12 and 21 the
/// first part is the shortest sum (skew) indecomposable prefix, which makes
/// the decomposition unique.
Decomposition substitution_decompose(const Permutation& p);

/// 2,4,...,2m,1,3,...,2m-1. Throws std::invalid_argument when m < 2.
Permutation parallel_alternation(int m);

/// Removes the entry at 1-based `position` and rank-normalizes the rest.
Permutation delete_entry(const Permutation& p, int position);

/// n! (throws std::overflow_error past 20).
std::uint64_t factorial(int n);

/// Position of `p` among all permutations of its length in lexicographic
/// order, starting from 0.
std::uint64_t lex_rank(const Permutation& p);
Permutation lex_unrank(int n, std::uint64_t rank);

/// Calls `visit` on each permutation of length n in lexicographic order.
void for_each_permutation(int n,
                          const std::function<void(const Permutation&)>& visit);

}  // namespace popsort
