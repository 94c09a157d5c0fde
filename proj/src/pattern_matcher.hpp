#pragma once

#include <span>
#include <vector>

namespace popsort::detail {

// Backtracking embedding search. For each pattern index k we remember which
// earlier pattern entries are its nearest neighbours in value; a host entry
// extends a partial embedding iff it sits strictly between the host images of
// those two neighbours.
class PatternMatcher {
 public:
  explicit PatternMatcher(std::span<const int> pattern) : size_(static_cast<int>(pattern.size())) {
    lower_.assign(size_, -1);
    upper_.assign(size_, -1);
    for (int k = 0; k < size_; ++k) {
      for (int j = 0; j < k; ++j) {
        if (pattern[j] < pattern[k]) {
          if (lower_[k] < 0 || pattern[j] > pattern[lower_[k]]) lower_[k] = j;
        } else {
          if (upper_[k] < 0 || pattern[j] < pattern[upper_[k]]) upper_[k] = j;
        }
      }
    }
  }

  int size() const { return size_; }

  // `filter(k, pos, chosen)` may veto placing pattern index k at host
  // position pos given the already chosen positions. `on_match(chosen)`
  // returns true to stop the search. Returns true iff stopped early.
  template <class Filter, class OnMatch>
  bool search(std::span<const int> host, Filter&& filter, OnMatch&& on_match) const {
    std::vector<int> chosen(size_);
    if (size_ == 0) return on_match(std::span<const int>(chosen));
    return extend(host, 0, 0, chosen, filter, on_match);
  }

 private:
  template <class Filter, class OnMatch>
  bool extend(std::span<const int> host, int k, int start, std::vector<int>& chosen,
              Filter& filter, OnMatch& on_match) const {
    const int n = static_cast<int>(host.size());
    const int last = n - (size_ - k);
    const int lo = lower_[k] < 0 ? 0 : host[chosen[lower_[k]]];
    const int hi = upper_[k] < 0 ? n + 1 : host[chosen[upper_[k]]];
    for (int pos = start; pos <= last; ++pos) {
      const int v = host[pos];
      if (v <= lo || v >= hi) continue;
      if (!filter(k, pos, std::span<const int>(chosen.data(), k))) continue;
      chosen[k] = pos;
      if (k + 1 == size_) {
        if (on_match(std::span<const int>(chosen))) return true;
      } else if (extend(host, k + 1, pos + 1, chosen, filter, on_match)) {
        return true;
      }
    }
    return false;
  }

  int size_;
  std::vector<int> lower_;
  std::vector<int> upper_;
};

}  // namespace popsort::detail
