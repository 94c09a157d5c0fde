#include "popsort/antichain.hpp"

namespace popsort {

Permutation antichain_element(int k) {
  if (k < 1) throw std::invalid_argument("antichain_element: k must be >= 1");
  std::vector<int> v = {2, 3, 5, 1};
  for (int j = 2; j <= k; ++j) {
    v.push_back(2 * j + 3);
    v.push_back(2 * j);
  }
  v.push_back(2 * k + 4);
  v.push_back(2 * k + 5);
  v.push_back(2 * k + 2);
  return Permutation(std::move(v));
}

const std::vector<DividedPattern>& antichain_patterns() {
  static const std::vector<DividedPattern> patterns = [] {
    std::vector<DividedPattern> out;
    for (const char* text :
         {"2341", "234|1", "23|4|1", "2|34|1", "2|3|4|1", "314|2", "31|42", "31|4|2"}) {
      out.push_back(parse_divided(text));
    }
    return out;
  }();
  return patterns;
}

bool in_antichain_class(const Permutation& p) {
  return exists_division_avoiding(p, antichain_patterns()).has_value();
}

namespace {

// Renders a division of delete_entry(u, position) using u's original values.
std::string raw_witness(const Permutation& u, int position, const DividedPermutation& d) {
  std::vector<int> raw;
  for (int i = 0; i < u.size(); ++i) {
    if (i != position - 1) raw.push_back(u[i]);
  }
  std::string out;
  std::size_t next = 0;
  const auto& dividers = d.dividers();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i) {
      const bool bar = next < dividers.size() && dividers[next] == static_cast<int>(i);
      out += bar ? '|' : ',';
      if (bar) ++next;
    }
    out += std::to_string(raw[i]);
  }
  return out;
}

}  // namespace

BasisElementReport verify_basis_element(int k) {
  if (k < 1 || k > kMaxBasisElementK) {
    throw BoundError("verify_basis_element: k must be in 1.." + std::to_string(kMaxBasisElementK));
  }
  BasisElementReport report;
  report.k = k;
  report.element = antichain_element(k);
  const auto& u = report.element;
  if (auto d = exists_division_avoiding(u, antichain_patterns())) {
    report.member = true;
    report.failures.push_back("u_" + std::to_string(k) + " is in the class via division " +
                              d->to_string());
  } else {
    report.member = false;
  }
  for (int pos = 1; pos <= u.size(); ++pos) {
    DeletionCheck check;
    check.position = pos;
    check.removed_value = u[pos - 1];
    auto d = exists_division_avoiding(delete_entry(u, pos), antichain_patterns());
    check.member = d.has_value();
    if (d) {
      check.witness_raw = raw_witness(u, pos, *d);
      check.witness = std::move(d);
    } else {
      report.failures.push_back("deleting position " + std::to_string(pos) + " (value " +
                                std::to_string(check.removed_value) + ") from u_" +
                                std::to_string(k) + " leaves " +
                                delete_entry(u, pos).to_string() + ", which has no avoiding division");
    }
    report.deletions.push_back(std::move(check));
  }
  return report;
}

AntichainReport verify_antichain(int max_k) {
  if (max_k < 1 || max_k > kMaxAntichainK) {
    throw BoundError("verify_antichain: max_k must be in 1.." + std::to_string(kMaxAntichainK));
  }
  AntichainReport report;
  report.max_k = max_k;
  const Permutation pattern{2, 3, 4, 1};
  std::vector<Permutation> u;
  for (int k = 1; k <= max_k; ++k) u.push_back(antichain_element(k));
  for (int k = 1; k <= max_k; ++k) {
    const auto copies = count_occurrences(pattern, u[k - 1]);
    report.occurrences_2341.push_back(copies);
    if (copies != 2) {
      report.failures.push_back("u_" + std::to_string(k) + " has " + std::to_string(copies) +
                                " copies of 2341, expected 2");
    }
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int j = 1; j < k; ++j) {
      ++report.pairs_checked;
      if (contains(u[j - 1], u[k - 1])) {
        report.failures.push_back("u_" + std::to_string(j) + " is contained in u_" +
                                  std::to_string(k));
      }
    }
  }
  return report;
}

}  // namespace popsort
