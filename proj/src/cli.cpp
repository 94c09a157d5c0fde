#include "popsort/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "popsort/antichain.hpp"
#include "popsort/machines.hpp"
#include "popsort/series.hpp"
#include "popsort/verify.hpp"

namespace popsort::cli {

using ojson = nlohmann::ordered_json;

CountCache CountCache::load(const std::filesystem::path& path) {
  CountCache cache;
  std::ifstream in(path);
  if (!in) return cache;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CacheError("cache file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") || doc["format_version"] != kFormatVersion) {
    throw CacheError("cache file " + path.string() + " has an unsupported format_version (want \"" +
                     kFormatVersion + "\")");
  }
  try {
    for (const auto& [fp, entry] : doc.at("entries").items()) {
      Entry e;
      e.spec_text = entry.at("spec").get<std::string>();
      for (const auto& [n, count] : entry.at("counts").items()) {
        e.counts[std::stoi(n)] = count.get<std::uint64_t>();
      }
      cache.entries_[fp] = std::move(e);
    }
  } catch (const std::exception& e) {
    throw CacheError("cache file " + path.string() + " is malformed: " + e.what());
  }
  return cache;
}

void CountCache::save(const std::filesystem::path& path) const {
  ojson entries = ojson::object();
  for (const auto& [fp, e] : entries_) {
    ojson counts = ojson::object();
    for (const auto& [n, c] : e.counts) counts[std::to_string(n)] = c;
    entries[fp] = {{"spec", e.spec_text}, {"counts", counts}};
  }
  const ojson doc = {{"format_version", kFormatVersion}, {"entries", entries}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::uint64_t> CountCache::lookup(const ClassSpec& spec, int n) const {
  auto it = entries_.find(spec.fingerprint());
  if (it == entries_.end() || it->second.spec_text != spec.canonical_text()) return std::nullopt;
  auto c = it->second.counts.find(n);
  if (c == it->second.counts.end()) return std::nullopt;
  return c->second;
}

void CountCache::store(const ClassSpec& spec, int n, std::uint64_t count) {
  auto& e = entries_[spec.fingerprint()];
  e.spec_text = spec.canonical_text();
  e.counts[n] = count;
}

EnumerateResult enumerate_counts(const ClassSpec& spec, int max_len, int jobs, CountCache* cache) {
  EnumerateResult result;
  for (int n = 1; n <= max_len; ++n) {
    if (cache) {
      if (auto hit = cache->lookup(spec, n)) {
        result.counts.push_back(*hit);
        ++result.cache_hits;
        continue;
      }
    }
    const auto c = count_members(spec, n, jobs);
    if (cache) cache->store(spec, n, c);
    result.counts.push_back(c);
  }
  return result;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_range(const char* flag, int value, int lo, int hi) {
  if (value < lo || value > hi) {
    throw UsageError(std::string(flag) + " must be in " + std::to_string(lo) + ".." +
                     std::to_string(hi) + ", got " + std::to_string(value));
  }
}

MachineKind machine_from(const std::string& name) {
  auto kind = parse_machine_kind(name);
  if (!kind) throw UsageError("unknown machine '" + name + "' (expected s, ps, pqs, sp, sqp or di)");
  return *kind;
}

std::string csv_quote(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

struct Options {
  std::string machine;
  std::string basis;
  std::string permutation;
  std::string format = "json";
  std::string verify_format = "text";
  std::string method = "closed";
  std::string suite = "fast";
  std::string cache;
  int max_len = 0;
  int terms = 0;
  int max_k = kMaxBasisElementK;
  int pairs_max_k = kMaxAntichainK;
  int jobs = 1;
};

int cmd_sortable(const Options& o, std::ostream& out) {
  const MachineKind kind = machine_from(o.machine);
  const Permutation p = parse_permutation(o.permutation);
  const auto witness = sorting_witness(kind, p);
  if (o.format == "json") {
    ojson doc = {{"machine", to_string(kind)}, {"permutation", p.to_string()}, {"sortable", witness.has_value()}};
    if (witness) doc["witness"] = format_moves(*witness);
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "machine,permutation,sortable,witness\n"
        << to_string(kind) << ',' << csv_quote(p.to_string()) << ',' << (witness ? "true" : "false") << ','
        << (witness ? csv_quote(format_moves(*witness)) : "") << '\n';
  } else {
    out << p.to_string() << (witness ? " is " : " is not ") << to_string(kind) << "-sortable\n";
    if (witness) out << "witness: " << format_moves(*witness) << '\n';
  }
  return kExitOk;
}

ClassSpec spec_from(const Options& o) {
  if (!o.machine.empty() == !o.basis.empty()) throw UsageError("give exactly one of --machine or --basis");
  if (!o.machine.empty()) return ClassSpec::from_machine(machine_from(o.machine));
  return ClassSpec::from_basis(parse_permutation_list(o.basis));
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  require_range("--max-len", o.max_len, 1, kMaxTableLength);
  const ClassSpec spec = spec_from(o);
  std::optional<CountCache> cache;
  if (!o.cache.empty()) cache = CountCache::load(o.cache);
  const auto result = enumerate_counts(spec, o.max_len, o.jobs, cache ? &*cache : nullptr);
  if (cache) {
    cache->save(o.cache);
    err << "cache: " << result.cache_hits << " of " << o.max_len << " counts reused\n";
  }
  if (o.format == "json") {
    ojson doc = {{"spec", spec.canonical_text()},
                 {"fingerprint", spec.fingerprint()},
                 {"max_len", o.max_len},
                 {"counts", result.counts}};
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "n,count\n";
    for (int n = 1; n <= o.max_len; ++n) out << n << ',' << result.counts[n - 1] << '\n';
  } else {
    out << spec.canonical_text() << '\n';
    for (int n = 1; n <= o.max_len; ++n) out << std::setw(3) << n << "  " << result.counts[n - 1] << '\n';
  }
  return kExitOk;
}

int cmd_basis(const Options& o, std::ostream& out, std::ostream& err) {
  const MachineKind kind = machine_from(o.machine);
  require_range("--max-len", o.max_len, 1, kind == MachineKind::PQS ? kMaxPqsBasisLength : kMaxBasisLength);
  const auto spec = ClassSpec::from_machine(kind);
  std::vector<std::vector<std::uint8_t>> tables(o.max_len + 1);
  for (int n = 1; n <= o.max_len; ++n) tables[n] = membership_table(spec, n, o.jobs);
  const auto basis = basis_from_tables(tables, o.max_len);
  if (kind == MachineKind::PQS && o.max_len == kMaxPqsBasisLength && basis.size() != 108) {
    err << "CONJECTURE-MISMATCH: found " << basis.size()
        << " minimal unsortable permutations of length <= 9 for pqs, conjectured 108\n";
  }
  if (o.format == "json") {
    ojson list = ojson::array();
    for (const auto& p : basis) list.push_back(p.to_string());
    ojson doc = {{"count", basis.size()}, {"machine", to_string(kind)}, {"max_len", o.max_len}, {"basis", list}};
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "length,permutation\n";
    for (const auto& p : basis) out << p.size() << ',' << csv_quote(p.to_string()) << '\n';
  } else {
    out << "count: " << basis.size() << '\n';
    for (const auto& p : basis) out << p.to_string() << '\n';
  }
  return kExitOk;
}

// Coefficients can exceed 64 bits, so the JSON is written by hand.
std::string json_int_array(const std::vector<BigInt>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += values[i].str();
  }
  return s + "]";
}

int cmd_series(const Options& o, std::ostream& out, std::ostream& err) {
  require_range("--terms", o.terms, 1, kMaxSeriesTerms);
  if (o.method != "closed" && o.method != "fixpoint" && o.method != "both") {
    throw UsageError("--method must be closed, fixpoint or both");
  }
  std::vector<BigInt> coeffs;
  std::optional<bool> agreement;
  if (o.method == "closed" || o.method == "both") coeffs = integer_coefficients(ps_closed_form(o.terms));
  if (o.method == "fixpoint" || o.method == "both") {
    auto fix = integer_coefficients(ps_fixed_point(o.terms));
    if (o.method == "both") {
      agreement = fix == coeffs;
    } else {
      coeffs = std::move(fix);
    }
  }
  if (o.format == "json") {
    out << "{\n  \"method\": \"" << o.method << "\",\n  \"terms\": " << o.terms
        << ",\n  \"coefficients\": " << json_int_array(coeffs);
    if (agreement) out << ",\n  \"agreement\": " << (*agreement ? "true" : "false");
    out << "\n}\n";
  } else if (o.format == "csv") {
    out << "n,coefficient\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) out << i + 1 << ',' << coeffs[i] << '\n';
    if (agreement) out << "# agreement," << (*agreement ? "true" : "false") << '\n';
  } else {
    for (std::size_t i = 0; i < coeffs.size(); ++i) out << std::setw(4) << i + 1 << "  " << coeffs[i] << '\n';
    if (agreement) out << "agreement: " << (*agreement ? "true" : "false") << '\n';
  }
  if (agreement && !*agreement) {
    err << "closed form and fixed point disagree\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_antichain(const Options& o, std::ostream& out, std::ostream& err) {
  require_range("--max-k", o.max_k, 1, kMaxBasisElementK);
  require_range("--pairs-max-k", o.pairs_max_k, 1, kMaxAntichainK);
  std::vector<BasisElementReport> elements;
  for (int k = 1; k <= o.max_k; ++k) elements.push_back(verify_basis_element(k));
  const auto pairs = verify_antichain(o.pairs_max_k);
  std::vector<std::string> failures;
  for (const auto& e : elements) failures.insert(failures.end(), e.failures.begin(), e.failures.end());
  failures.insert(failures.end(), pairs.failures.begin(), pairs.failures.end());
  const bool passed = failures.empty();

  if (o.format == "json") {
    ojson list = ojson::array();
    for (const auto& e : elements) {
      ojson deletions = ojson::array();
      for (const auto& d : e.deletions) {
        ojson item = {{"position", d.position}, {"removed_value", d.removed_value}, {"member", d.member}};
        if (d.witness) {
          item["witness_division"] = d.witness->to_string();
          item["witness_raw"] = d.witness_raw;
        }
        deletions.push_back(item);
      }
      list.push_back({{"k", e.k},
                      {"permutation", e.element.to_string()},
                      {"member", e.member},
                      {"deletions", deletions}});
    }
    ojson doc = {{"passed", passed},
                 {"max_k", o.max_k},
                 {"elements", list},
                 {"antichain_max_k", pairs.max_k},
                 {"antichain_pairs_checked", pairs.pairs_checked},
                 {"occurrences_2341", pairs.occurrences_2341},
                 {"failures", failures}};
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "k,position,removed_value,member,witness_raw\n";
    for (const auto& e : elements) {
      out << e.k << ",0,0," << (e.member ? "true" : "false") << ",\n";
      for (const auto& d : e.deletions) {
        out << e.k << ',' << d.position << ',' << d.removed_value << ',' << (d.member ? "true" : "false") << ','
            << csv_quote(d.witness_raw) << '\n';
      }
    }
  } else {
    for (const auto& e : elements) {
      out << "u_" << e.k << " = " << e.element.to_string() << (e.member ? "  in the class\n" : "  not in the class\n");
      for (const auto& d : e.deletions) {
        out << "  delete position " << d.position << " (" << d.removed_value << "): "
            << (d.member ? d.witness_raw : std::string("NO WITNESS")) << '\n';
      }
    }
    out << "antichain pairs checked: " << pairs.pairs_checked << '\n';
    out << (passed ? "pass\n" : "FAIL\n");
  }
  for (const auto& f : failures) err << "FAIL: " << f << '\n';
  return passed ? kExitOk : kExitPropertyFailure;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.suite != "fast" && o.suite != "all") throw UsageError("--suite must be fast or all");
  const Suite suite = o.suite == "fast" ? Suite::Fast : Suite::All;
  const std::string& format = o.verify_format;
  const bool text = format == "text";
  const auto results = run_suite(suite, o.jobs, [&](const InvariantResult& r) {
    if (text) {
      out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
      if (!r.detail.empty()) out << (r.passed ? "  [" + r.detail + "]" : ": " + r.detail);
      out << std::endl;
    }
    if (r.mismatch_note) err << r.detail << '\n';
  });
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  if (format == "json") {
    ojson list = ojson::array();
    for (const auto& r : results) list.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    out << ojson{{"suite", o.suite}, {"passed", failed == 0}, {"results", list}}.dump(2) << '\n';
  } else if (format == "csv") {
    out << "name,passed,detail\n";
    for (const auto& r : results) out << csv_quote(r.name) << ',' << (r.passed ? "true" : "false") << ','
                                      << csv_quote(r.detail) << '\n';
  } else {
    out << results.size() - failed << " passed, " << failed << " failed\n";
  }
  return failed == 0 ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sorting machines built from pop stacks, stacks and queues"};
  app.name("popsort");
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"json", "csv", "text"};

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "json (default), csv or text")->check(CLI::IsMember(formats));
  };
  auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* sortable = app.add_subcommand("sortable", "Decide sortability and print a move sequence");
  sortable->add_option("--machine", o.machine, "s, ps, pqs, sp, sqp or di")->required();
  sortable->add_option("permutation", o.permutation, "e.g. 24513 or 2,4,5,1,3")->required();
  add_format(sortable);

  auto* enumerate = app.add_subcommand("enumerate", "Count members of a class for n = 1..max-len");
  enumerate->add_option("--machine", o.machine, "Count sortable permutations");
  enumerate->add_option("--basis", o.basis, "Count avoiders, e.g. 2431,3142,3241");
  enumerate->add_option("--max-len", o.max_len)->required();
  enumerate->add_option("--cache", o.cache, "JSON cache of computed counts");
  add_jobs(enumerate);
  add_format(enumerate);

  auto* basis = app.add_subcommand("basis", "Minimal unsortable permutations up to max-len");
  basis->add_option("--machine", o.machine)->required();
  basis->add_option("--max-len", o.max_len)->required();
  add_jobs(basis);
  add_format(basis);

  auto* series = app.add_subcommand("series", "Coefficients of the PS generating function");
  series->add_option("--terms", o.terms)->required();
  series->add_option("--method", o.method, "closed, fixpoint or both");
  add_format(series);

  auto* antichain = app.add_subcommand("antichain", "Check the antichain u_1, u_2, ...");
  antichain->add_option("--max-k", o.max_k, "Basis-element checks for k <= max-k");
  antichain->add_option("--pairs-max-k", o.pairs_max_k, "Pairwise incomparability up to this k");
  add_format(antichain);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--suite", o.suite, "fast or all");
  add_jobs(verify);
  verify->add_option("--format", o.verify_format, "Output format (default text)")->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sortable) return cmd_sortable(o, out);
    if (*enumerate) return cmd_enumerate(o, out, err);
    if (*basis) return cmd_basis(o, out, err);
    if (*series) return cmd_series(o, out, err);
    if (*antichain) return cmd_antichain(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace popsort::cli
