#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "popsort/classes.hpp"

namespace popsort::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kMaxSeriesTerms = 200;
inline constexpr int kMaxBasisLength = 10;
inline constexpr int kMaxPqsBasisLength = 9;

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts keyed by (spec fingerprint, n), persisted as
/// {"format_version": "1", "entries": {fp: {"spec": text, "counts": {"n": c}}}}.
class CountCache {
 public:
  static constexpr const char* kFormatVersion = "1";

  /// A missing file gives an empty cache; a malformed file or a different
  /// format_version throws CacheError.
  static CountCache load(const std::filesystem::path& path);
  /// Writes via a temporary file and rename.
  void save(const std::filesystem::path& path) const;

  std::optional<std::uint64_t> lookup(const ClassSpec& spec, int n) const;
  void store(const ClassSpec& spec, int n, std::uint64_t count);

 private:
  struct Entry {
    std::string spec_text;
    std::map<int, std::uint64_t> counts;
  };
  std::map<std::string, Entry> entries_;
};

struct EnumerateResult {
  std::vector<std::uint64_t> counts;  // counts[n - 1]
  int cache_hits = 0;
};

/// Counts for n = 1..max_len, consulting and updating `cache` when given.
EnumerateResult enumerate_counts(const ClassSpec& spec, int max_len, int jobs,
                                 CountCache* cache = nullptr);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace popsort::cli
