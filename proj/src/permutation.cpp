#include "popsort/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "pattern_matcher.hpp"

namespace popsort {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

int parse_int_token(std::string_view token) {
  token = trim(token);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("invalid permutation entry '" + std::string(token) + "'");
  }
  return value;
}

void check_bijection(const std::vector<int>& values, bool as_parse) {
  const int n = static_cast<int>(values.size());
  std::vector<char> seen(n + 1, 0);
  for (int v : values) {
    if (v < 1 || v > n) {
      std::string msg = "value " + std::to_string(v) + " outside 1.." + std::to_string(n);
      if (as_parse) throw ParseError(msg);
      throw std::invalid_argument(msg);
    }
    if (seen[v]) {
      std::string msg = "value " + std::to_string(v) + " repeated";
      if (as_parse) throw ParseError(msg);
      throw std::invalid_argument(msg);
    }
    seen[v] = 1;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  check_bijection(values_, false);
}

Permutation::Permutation(std::initializer_list<int> values)
    : Permutation(std::vector<int>(values)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::standardize(std::span<const int> values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> out(n);
  for (int r = 0; r < n; ++r) out[order[r]] = r + 1;
  return Permutation(std::move(out));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out;
}

std::string Permutation::to_digits() const {
  if (size() > 9) return to_string();
  std::string out;
  for (int v : values_) out += static_cast<char>('0' + v);
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

Permutation parse_permutation(std::string_view text) {
  text = trim(text);
  std::vector<int> values;
  if (text.empty()) return Permutation();
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      std::size_t comma = text.find(',', start);
      values.push_back(parse_int_token(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw ParseError(std::string("invalid character '") + c + "' in permutation '" +
                         std::string(text) + "'");
      }
      values.push_back(c - '0');
    }
    if (values.size() >= 10) {
      throw ParseError("digit form is ambiguous for n >= 10, use commas: '" + std::string(text) +
                       "'");
    }
  }
  check_bijection(values, true);
  return Permutation(std::move(values));
}

std::vector<Permutation> parse_permutation_list(std::string_view text) {
  std::vector<Permutation> out;
  const bool item_separated =
      text.find(';') != std::string_view::npos ||
      std::any_of(trim(text).begin(), trim(text).end(), is_space);
  auto is_sep = [&](char c) { return item_separated ? (c == ';' || is_space(c)) : c == ','; };
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) out.push_back(parse_permutation(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

bool contains(const Permutation& pattern, const Permutation& host) {
  if (pattern.size() > host.size()) return false;
  detail::PatternMatcher matcher(pattern.values());
  return matcher.search(
      host.values(), [](int, int, std::span<const int>) { return true; },
      [](std::span<const int>) { return true; });
}

bool avoids_all(const Permutation& host, std::span<const Permutation> patterns) {
  return std::none_of(patterns.begin(), patterns.end(),
                      [&](const Permutation& p) { return contains(p, host); });
}

std::uint64_t count_occurrences(const Permutation& pattern, const Permutation& host) {
  if (pattern.size() > host.size()) return 0;
  detail::PatternMatcher matcher(pattern.values());
  std::uint64_t count = 0;
  matcher.search(
      host.values(), [](int, int, std::span<const int>) { return true; },
      [&](std::span<const int>) {
        ++count;
        return false;
      });
  return count;
}

Permutation reverse(const Permutation& p) {
  std::vector<int> v(p.values().rbegin(), p.values().rend());
  return Permutation(std::move(v));
}

Permutation complement(const Permutation& p) {
  std::vector<int> v(p.size());
  for (int i = 0; i < p.size(); ++i) v[i] = p.size() + 1 - p[i];
  return Permutation(std::move(v));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> v(p.size());
  for (int i = 0; i < p.size(); ++i) v[p[i] - 1] = i + 1;
  return Permutation(std::move(v));
}

Permutation dual(const Permutation& p) {
  const int n = p.size();
  std::vector<int> inv(n + 1);
  for (int i = 0; i < n; ++i) inv[p[i]] = i + 1;
  std::vector<int> v(n);
  for (int i = 1; i <= n; ++i) v[i - 1] = n + 1 - inv[n + 1 - i];
  return Permutation(std::move(v));
}

Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> v(a.begin(), a.end());
  for (int x : b) v.push_back(x + a.size());
  return Permutation(std::move(v));
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> v;
  v.reserve(a.size() + b.size());
  for (int x : a) v.push_back(x + b.size());
  for (int x : b) v.push_back(x);
  return Permutation(std::move(v));
}

Permutation inflate(const Permutation& quotient, std::span<const Permutation> parts) {
  const int m = quotient.size();
  if (static_cast<int>(parts.size()) != m) {
    throw std::invalid_argument("inflate: quotient has length " + std::to_string(m) + " but " +
                                std::to_string(parts.size()) + " parts were given");
  }
  // offset[v] = number of entries in intervals whose quotient value is < v
  std::vector<int> size_by_value(m + 2, 0);
  for (int i = 0; i < m; ++i) {
    if (parts[i].empty()) {
      throw std::invalid_argument("inflate: part " + std::to_string(i + 1) + " is empty");
    }
    size_by_value[quotient[i]] = parts[i].size();
  }
  std::vector<int> offset(m + 2, 0);
  for (int v = 2; v <= m; ++v) offset[v] = offset[v - 1] + size_by_value[v - 1];
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    for (int x : parts[i]) out.push_back(x + offset[quotient[i]]);
  }
  return Permutation(std::move(out));
}

bool is_simple(const Permutation& p) {
  const int n = p.size();
  if (n == 0) return false;
  for (int i = 0; i < n; ++i) {
    int lo = p[i], hi = p[i];
    for (int j = i + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      if (j - i + 1 == n) break;
      if (hi - lo == j - i) return false;
    }
  }
  return true;
}

namespace {

// Length of the shortest nonempty proper prefix occupying the lowest values,
// or 0 if none.
int sum_split(const Permutation& p) {
  int hi = 0;
  for (int k = 1; k < p.size(); ++k) {
    hi = std::max(hi, p[k - 1]);
    if (hi == k) return k;
  }
  return 0;
}

int skew_split(const Permutation& p) {
  const int n = p.size();
  int lo = n + 1;
  for (int k = 1; k < n; ++k) {
    lo = std::min(lo, p[k - 1]);
    if (lo == n - k + 1) return k;
  }
  return 0;
}

Permutation standardize_range(const Permutation& p, int from, int to) {
  return Permutation::standardize(std::span<const int>(p.values()).subspan(from, to - from));
}

}  // namespace

bool is_sum_decomposable(const Permutation& p) { return sum_split(p) != 0; }
bool is_skew_decomposable(const Permutation& p) { return skew_split(p) != 0; }

Decomposition substitution_decompose(const Permutation& p) {
  const int n = p.size();
  if (n == 0) throw std::invalid_argument("substitution_decompose: empty permutation");
  if (n == 1) return {Permutation{1}, {Permutation{1}}};
  if (int k = sum_split(p)) {
    return {Permutation{1, 2}, {standardize_range(p, 0, k), standardize_range(p, k, n)}};
  }
  if (int k = skew_split(p)) {
    return {Permutation{2, 1}, {standardize_range(p, 0, k), standardize_range(p, k, n)}};
  }
  // Sum and skew indecomposable: the maximal proper intervals partition the
  // positions, so greedily take the longest proper interval at each start.
  std::vector<std::pair<int, int>> blocks;
  int start = 0;
  while (start < n) {
    int lo = p[start], hi = p[start], end = start;
    for (int j = start + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      if (start == 0 && j == n - 1) break;
      if (hi - lo == j - start) end = j;
    }
    blocks.emplace_back(start, end + 1);
    start = end + 1;
  }
  std::vector<int> representatives;
  Decomposition d;
  for (auto [from, to] : blocks) {
    representatives.push_back(*std::min_element(p.begin() + from, p.begin() + to));
    d.parts.push_back(standardize_range(p, from, to));
  }
  d.quotient = Permutation::standardize(representatives);
  return d;
}

Permutation parallel_alternation(int m) {
  if (m < 2) throw std::invalid_argument("parallel_alternation requires m >= 2");
  std::vector<int> v;
  for (int i = 1; i <= m; ++i) v.push_back(2 * i);
  for (int i = 1; i <= m; ++i) v.push_back(2 * i - 1);
  return Permutation(std::move(v));
}

Permutation delete_entry(const Permutation& p, int position) {
  if (position < 1 || position > p.size()) {
    throw std::out_of_range("delete_entry: position " + std::to_string(position) +
                            " outside 1.." + std::to_string(p.size()));
  }
  const int removed = p[position - 1];
  std::vector<int> v;
  v.reserve(p.size() - 1);
  for (int i = 0; i < p.size(); ++i) {
    if (i == position - 1) continue;
    v.push_back(p[i] > removed ? p[i] - 1 : p[i]);
  }
  return Permutation(std::move(v));
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial: n outside 0..20");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t lex_rank(const Permutation& p) {
  const int n = p.size();
  std::uint64_t rank = 0;
  std::vector<char> used(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    int smaller_unused = 0;
    for (int v = 1; v < p[i]; ++v) smaller_unused += used[v] ? 0 : 1;
    rank += static_cast<std::uint64_t>(smaller_unused) * factorial(n - 1 - i);
    used[p[i]] = 1;
  }
  return rank;
}

Permutation lex_unrank(int n, std::uint64_t rank) {
  if (rank >= factorial(n)) throw std::out_of_range("lex_unrank: rank out of range");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(out));
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    visit(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace popsort
