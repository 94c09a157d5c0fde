#include "popsort/divided.hpp"

#include <algorithm>
#include <stdexcept>

#include "pattern_matcher.hpp"

namespace popsort {

DividedPermutation::DividedPermutation(Permutation base, std::vector<int> dividers)
    : base_(std::move(base)), dividers_(std::move(dividers)) {
  std::sort(dividers_.begin(), dividers_.end());
  if (std::adjacent_find(dividers_.begin(), dividers_.end()) != dividers_.end()) {
    throw std::invalid_argument("duplicate divider");
  }
  for (int d : dividers_) {
    if (d < 1 || d > base_.size() - 1) {
      throw std::invalid_argument("divider " + std::to_string(d) + " outside 1.." +
                                  std::to_string(base_.size() - 1));
    }
  }
}

DividedPermutation DividedPermutation::from_mask(Permutation base, std::uint64_t mask) {
  std::vector<int> dividers;
  for (int i = 1; i < base.size(); ++i) {
    if (mask >> (i - 1) & 1u) dividers.push_back(i);
  }
  return DividedPermutation(std::move(base), std::move(dividers));
}

std::vector<int> DividedPermutation::block_ids() const {
  std::vector<int> ids(base_.size());
  std::size_t next = 0;
  int block = 0;
  for (int i = 0; i < base_.size(); ++i) {
    ids[i] = block;
    if (next < dividers_.size() && dividers_[next] == i + 1) {
      ++block;
      ++next;
    }
  }
  return ids;
}

std::vector<std::vector<int>> DividedPermutation::blocks() const {
  std::vector<std::vector<int>> out;
  if (base_.empty()) return out;
  out.emplace_back();
  std::size_t next = 0;
  for (int i = 0; i < base_.size(); ++i) {
    out.back().push_back(base_[i]);
    if (next < dividers_.size() && dividers_[next] == i + 1) {
      out.emplace_back();
      ++next;
    }
  }
  return out;
}

std::string DividedPermutation::to_string() const {
  std::string out;
  std::size_t next = 0;
  for (int i = 0; i < base_.size(); ++i) {
    if (i) out += (next < dividers_.size() && dividers_[next] == i) ? '|' : ',';
    if (next < dividers_.size() && dividers_[next] == i) ++next;
    out += std::to_string(base_[i]);
  }
  return out;
}

std::string DividedPermutation::to_digits() const {
  if (base_.size() > 9) return to_string();
  std::string out;
  std::size_t next = 0;
  for (int i = 0; i < base_.size(); ++i) {
    if (next < dividers_.size() && dividers_[next] == i) {
      out += '|';
      ++next;
    }
    out += static_cast<char>('0' + base_[i]);
  }
  return out;
}

DividedPermutation parse_divided(std::string_view text) {
  const bool comma_form = text.find(',') != std::string_view::npos;
  std::vector<int> values;
  std::vector<int> dividers;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    const std::string_view block = text.substr(start, bar - start);
    std::vector<int> block_values;
    if (comma_form) {
      std::size_t s = 0;
      while (true) {
        const std::size_t c = block.find(',', s);
        std::string_view tok = block.substr(s, c - s);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos) {
          throw ParseError("invalid entry '" + std::string(tok) + "' in divided permutation '" +
                           std::string(text) + "'");
        }
        block_values.push_back(std::stoi(std::string(tok)));
        if (c == std::string_view::npos) break;
        s = c + 1;
      }
    } else {
      for (char ch : block) {
        if (ch == ' ') continue;
        if (ch < '0' || ch > '9') {
          throw ParseError(std::string("invalid character '") + ch +
                           "' in divided permutation '" + std::string(text) + "'");
        }
        block_values.push_back(ch - '0');
      }
    }
    if (block_values.empty()) {
      throw ParseError("empty block in divided permutation '" + std::string(text) + "'");
    }
    values.insert(values.end(), block_values.begin(), block_values.end());
    if (bar == std::string_view::npos) break;
    dividers.push_back(static_cast<int>(values.size()));
    start = bar + 1;
  }
  if (!comma_form && values.size() >= 10) {
    throw ParseError("digit form is ambiguous for n >= 10, use commas: '" + std::string(text) +
                     "'");
  }
  Permutation base;
  try {
    base = Permutation(values);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in divided permutation '" + std::string(text) +
                     "'");
  }
  return DividedPermutation(std::move(base), std::move(dividers));
}

namespace {

struct CompiledPattern {
  explicit CompiledPattern(const DividedPattern& p)
      : matcher(p.base().values()), blocks(p.block_ids()) {}
  detail::PatternMatcher matcher;
  std::vector<int> blocks;
};

bool contains_compiled(const CompiledPattern& pattern, std::span<const int> host,
                       std::span<const int> host_blocks) {
  if (pattern.matcher.size() > static_cast<int>(host.size())) return false;
  const auto& pb = pattern.blocks;
  return pattern.matcher.search(
      host,
      [&](int k, int pos, std::span<const int> chosen) {
        if (k == 0) return true;
        const int prev = host_blocks[chosen[k - 1]];
        return pb[k] == pb[k - 1] ? host_blocks[pos] == prev : host_blocks[pos] > prev;
      },
      [](std::span<const int>) { return true; });
}

}  // namespace

bool div_contains(const DividedPattern& pattern, const DividedPermutation& host) {
  const CompiledPattern compiled(pattern);
  const auto host_blocks = host.block_ids();
  return contains_compiled(compiled, host.base().values(), host_blocks);
}

Divisions::Divisions(Permutation base) : base_(std::move(base)) {
  if (base_.size() > 63) throw std::length_error("too many division points");
  count_ = base_.empty() ? 1 : std::uint64_t{1} << (base_.size() - 1);
}

Divisions all_divisions(const Permutation& p) { return Divisions(p); }

std::optional<DividedPermutation> exists_division_avoiding(
    const Permutation& p, std::span<const DividedPattern> patterns) {
  std::vector<CompiledPattern> compiled;
  compiled.reserve(patterns.size());
  for (const auto& pattern : patterns) compiled.emplace_back(pattern);

  const int n = p.size();
  const std::uint64_t count = n == 0 ? 1 : std::uint64_t{1} << (n - 1);
  std::vector<int> host_blocks(n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    int block = 0;
    for (int i = 0; i < n; ++i) {
      host_blocks[i] = block;
      if (i + 1 < n && (mask >> i & 1u)) ++block;
    }
    const bool avoided = std::none_of(compiled.begin(), compiled.end(), [&](const auto& c) {
      return contains_compiled(c, p.values(), host_blocks);
    });
    if (avoided) return DividedPermutation::from_mask(p, mask);
  }
  return std::nullopt;
}

Permutation blockwise_reverse(const DividedPermutation& d) {
  std::vector<int> out;
  out.reserve(d.size());
  for (const auto& block : d.blocks()) out.insert(out.end(), block.rbegin(), block.rend());
  return Permutation(std::move(out));
}

bool obtainable_by_local_reversals_from(const Permutation& p,
                                        const std::function<bool(const Permutation&)>& membership) {
  for (const auto& d : all_divisions(p)) {
    if (membership(blockwise_reverse(d))) return true;
  }
  return false;
}

const std::vector<DividedPattern>& ps_division_patterns() {
  static const std::vector<DividedPattern> patterns = {
      parse_divided("21"), parse_divided("2|13"), parse_divided("2|3|1")};
  return patterns;
}

const std::vector<DividedPattern>& pqs_division_patterns() {
  static const std::vector<DividedPattern> patterns = {
      parse_divided("132"), parse_divided("2|13"), parse_divided("32|1"), parse_divided("2|3|1")};
  return patterns;
}

}  // namespace popsort
