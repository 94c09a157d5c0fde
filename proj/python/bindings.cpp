#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "popsort/antichain.hpp"
#include "popsort/classes.hpp"
#include "popsort/cli.hpp"
#include "popsort/divided.hpp"
#include "popsort/machines.hpp"
#include "popsort/permutation.hpp"
#include "popsort/series.hpp"

namespace py = pybind11;

// Permutations cross the boundary as lists of ints; strings such as "24513"
// or "2,4,5,1,3" are accepted on the way in.
namespace pybind11::detail {
template <>
struct type_caster<popsort::Permutation> {
  PYBIND11_TYPE_CASTER(popsort::Permutation, const_name("Permutation"));

  bool load(handle src, bool) {
    if (py::isinstance<py::str>(src)) {
      value = popsort::parse_permutation(src.cast<std::string>());
      return true;
    }
    if (!py::isinstance<py::sequence>(src)) return false;
    value = popsort::Permutation(src.cast<std::vector<int>>());
    return true;
  }

  static handle cast(const popsort::Permutation& p, return_value_policy, handle) {
    py::list out;
    for (int v : p) out.append(v);
    return out.release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace popsort;

MachineKind kind_of(const std::string& name) {
  auto k = parse_machine_kind(name);
  if (!k) throw std::invalid_argument("unknown machine '" + name + "'");
  return *k;
}

ClassSpec spec_of(const std::optional<std::string>& machine, const std::optional<std::vector<Permutation>>& basis) {
  if (machine.has_value() == basis.has_value()) throw std::invalid_argument("give exactly one of machine or basis");
  if (machine) return ClassSpec::from_machine(kind_of(*machine));
  return ClassSpec::from_basis(*basis);
}

std::vector<DividedPattern> patterns_of(const std::vector<std::string>& texts) {
  std::vector<DividedPattern> out;
  for (const auto& t : texts) out.push_back(parse_divided(t));
  return out;
}

py::list big_ints(const std::vector<BigInt>& values) {
  py::list out;
  for (const auto& v : values) {
    const std::string s = v.str();
    out.append(py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10)));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings for popsort";

  py::register_exception<IllegalMove>(m, "IllegalMoveError", PyExc_ValueError);
  py::register_exception<BoundError>(m, "BoundError", PyExc_ValueError);
  py::register_exception<SeriesError>(m, "SeriesError", PyExc_ArithmeticError);

  m.def("parse", &parse_permutation, py::arg("text"));
  m.def("contains", &contains, py::arg("pattern"), py::arg("host"));
  m.def("count_occurrences", &count_occurrences, py::arg("pattern"), py::arg("host"));
  m.def("avoids_all", [](const Permutation& p, const std::vector<Permutation>& basis) { return avoids_all(p, basis); },
        py::arg("permutation"), py::arg("basis"));
  m.def("reverse", &reverse);
  m.def("complement", &complement);
  m.def("inverse", &inverse);
  m.def("dual", &dual);
  m.def("direct_sum", &direct_sum);
  m.def("skew_sum", &skew_sum);
  m.def("inflate", [](const Permutation& q, const std::vector<Permutation>& parts) { return inflate(q, parts); },
        py::arg("quotient"), py::arg("parts"));
  m.def("is_simple", &is_simple);
  m.def("substitution_decompose", [](const Permutation& p) {
    auto d = substitution_decompose(p);
    return py::make_tuple(d.quotient, d.parts);
  });
  m.def("parallel_alternation", &parallel_alternation, py::arg("m"));
  m.def("delete_entry", &delete_entry, py::arg("permutation"), py::arg("position"));

  m.def("div_contains",
        [](const std::string& pattern, const std::string& host) {
          return div_contains(parse_divided(pattern), parse_divided(host));
        },
        py::arg("pattern"), py::arg("host"), "Both arguments use the '31|42' notation.");
  m.def("exists_division_avoiding",
        [](const Permutation& p, const std::vector<std::string>& patterns) -> std::optional<std::string> {
          auto d = exists_division_avoiding(p, patterns_of(patterns));
          if (!d) return std::nullopt;
          return d->to_string();
        },
        py::arg("permutation"), py::arg("patterns"));

  m.def("machine_kinds", [] {
    std::vector<std::string> out;
    for (auto k : kAllMachineKinds) out.emplace_back(to_string(k));
    return out;
  });
  m.def("is_sortable", [](const std::string& machine, const Permutation& p) { return is_sortable(kind_of(machine), p); },
        py::arg("machine"), py::arg("permutation"));
  m.def("sorting_witness",
        [](const std::string& machine, const Permutation& p) -> std::optional<std::string> {
          auto w = sorting_witness(kind_of(machine), p);
          if (!w) return std::nullopt;
          return format_moves(*w);
        },
        py::arg("machine"), py::arg("permutation"));
  m.def("replay",
        [](const std::string& machine, const Permutation& p, const std::string& moves) {
          const auto kind = kind_of(machine);
          return replay(kind, p, parse_moves(kind, moves));
        },
        py::arg("machine"), py::arg("permutation"), py::arg("moves"));

  m.def("count_members",
        [](int n, std::optional<std::string> machine, std::optional<std::vector<Permutation>> basis, int jobs) {
          const auto spec = spec_of(machine, basis);
          py::gil_scoped_release release;
          return count_members(spec, n, jobs);
        },
        py::arg("n"), py::kw_only(), py::arg("machine") = py::none(), py::arg("basis") = py::none(),
        py::arg("jobs") = 1);
  m.def("compute_basis",
        [](int max_len, std::optional<std::string> machine, std::optional<std::vector<Permutation>> basis, int jobs) {
          const auto spec = spec_of(machine, basis);
          py::gil_scoped_release release;
          return compute_basis(spec, max_len, jobs);
        },
        py::arg("max_len"), py::kw_only(), py::arg("machine") = py::none(), py::arg("basis") = py::none(),
        py::arg("jobs") = 1);
  m.def("simples_in_class",
        [](const std::vector<Permutation>& basis, int max_len) { return simples_in_class(basis, max_len); },
        py::arg("basis"), py::arg("max_len"));
  m.def("structural_member", &structural_member);

  m.def("ps_closed_form", [](int terms) { return big_ints(integer_coefficients(ps_closed_form(terms))); },
        py::arg("terms"), "Coefficients of x^1..x^terms.");
  m.def("ps_fixed_point", [](int terms) { return big_ints(integer_coefficients(ps_fixed_point(terms))); },
        py::arg("terms"));

  m.def("antichain_element", &antichain_element, py::arg("k"));
  m.def("in_antichain_class", &in_antichain_class);
  m.def("verify_basis_element", [](int k) {
    const auto r = verify_basis_element(k);
    py::list deletions;
    for (const auto& d : r.deletions) {
      py::dict item;
      item["position"] = d.position;
      item["removed_value"] = d.removed_value;
      item["member"] = d.member;
      item["witness_division"] = d.witness ? py::object(py::str(d.witness->to_string())) : py::object(py::none());
      item["witness_raw"] = d.witness_raw;
      deletions.append(item);
    }
    py::dict out;
    out["k"] = r.k;
    out["permutation"] = r.element;
    out["member"] = r.member;
    out["deletions"] = deletions;
    out["passed"] = r.passed();
    out["failures"] = r.failures;
    return out;
  });
  m.def("verify_antichain", [](int max_k) {
    const auto r = verify_antichain(max_k);
    py::dict out;
    out["max_k"] = r.max_k;
    out["pairs_checked"] = r.pairs_checked;
    out["occurrences_2341"] = r.occurrences_2341;
    out["passed"] = r.passed();
    out["failures"] = r.failures;
    return out;
  });

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
