#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "fusionlab/json_io.hpp"

namespace py = pybind11;
using namespace fusionlab;

namespace {

GroupInput group_from_arg(const std::string& name) {
  GroupInput g;
  g.name = name;
  g.group = named_group(name);
  return g;
}

GroupInput group_from_cycles(int degree, const std::vector<std::vector<std::vector<int>>>& gens) {
  std::vector<Perm> perms;
  for (const auto& cycles : gens) perms.push_back(Perm::from_cycles(degree, cycles));
  GroupInput g;
  g.name = "custom";
  g.group = PermGroup::from_generators(degree, perms);
  return g;
}

std::vector<py::object> dims_to_py(const std::vector<DegreeDim>& dims) {
  std::vector<py::object> out;
  for (const auto& d : dims) {
    if (d.skipped())
      out.push_back(py::none());
    else
      out.push_back(py::int_(*d.dim));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fusionlab, m) {
  m.doc() = "fusion systems of finite groups, twisted cohomology and stable elements";

  py::class_<GroupInput>(m, "Group")
      .def_property_readonly("name", [](const GroupInput& g) { return g.name; })
      .def_property_readonly("order", [](const GroupInput& g) { return g.group->order(); })
      .def_property_readonly("degree", [](const GroupInput& g) { return g.group->degree(); })
      .def("sylow_order",
           [](const GroupInput& g, int p) { return sylow_subgroup(g.group, p).order(); })
      .def("is_p_solvable", [](const GroupInput& g, int p) { return is_p_solvable(g.group, p); })
      .def("__repr__", [](const GroupInput& g) {
        return "<Group " + g.name + " order " + std::to_string(g.group->order()) + ">";
      });

  m.def("group", &group_from_arg, py::arg("name"),
        "built-in group by name, e.g. 'S4', 'C6', 'wreath:S3:3'");
  m.def("group_from_cycles", &group_from_cycles, py::arg("degree"), py::arg("generators"),
        "permutation group from generators given as lists of 1-based cycles");

  m.def(
      "cohomology",
      [](const GroupInput& g, int p, const std::string& module_name, int max_degree) {
        GModule mod = named_module(g.group, g.name, p, module_name);
        return dims_to_py(bar_cohomology_dims(g.group, mod, max_degree, Budget::from_env()));
      },
      py::arg("group"), py::arg("prime"), py::arg("module") = "trivial:1",
      py::arg("max_degree") = 3,
      "H^0..H^n dimensions; None marks a budget skip");

  m.def(
      "classify",
      [](const GroupInput& g, int p) {
        FusionSystem f = FusionSystem::build(g.group, p);
        py::list out;
        for (std::size_t c = 0; c < f.classes().size(); ++c) {
          int rep = f.class_rep(static_cast<int>(c));
          const SubgroupFlags& fl = f.flags(rep);
          py::dict d;
          d["order"] = f.subgroups()[rep].order();
          d["class_size"] = f.classes()[c].size();
          d["centric"] = fl.centric;
          d["radical"] = fl.radical;
          d["quasicentric"] = fl.quasicentric;
          d["essential"] = fl.essential;
          out.append(d);
        }
        return out;
      },
      py::arg("group"), py::arg("prime"), "fusion classes with classification flags");

  m.def(
      "stable_dims",
      [](const GroupInput& g, int p, const std::string& module_name, int max_degree,
         const std::string& family) {
        GModule mod = named_module(g.group, g.name, p, module_name);
        Budget b = Budget::from_env();
        FusionSystem f = FusionSystem::build(g.group, p, b);
        StableWorkspace ws(f, mod, b);
        std::vector<int> fam = family == "all"      ? all_family(f)
                               : family == "grodal" ? grodal_family(f, mod)
                                                    : centric_family(f);
        std::vector<py::object> out;
        for (int n = 0; n <= max_degree; ++n) {
          StableSubspace ss = stable_subspace(ws, n, fam);
          if (ss.skipped())
            out.push_back(py::none());
          else
            out.push_back(py::int_(ss.dim));
        }
        return out;
      },
      py::arg("group"), py::arg("prime"), py::arg("module") = "trivial:1",
      py::arg("max_degree") = 3, py::arg("family") = "centric",
      "stable-element subspace dimensions inside H^n(S, M)");

  m.def(
      "nerve_dims",
      [](const GroupInput& g, int p, const std::string& module_name,
         const std::string& collection, int max_degree, bool linking) {
        GModule mod = named_module(g.group, g.name, p, module_name);
        Budget b = Budget::from_env();
        FusionSystem f = FusionSystem::build(g.group, p, b);
        std::vector<int> coll = collection == "cr"          ? f.centric_radical_upclosed()
                                : collection == "constrained" ? f.constrained_collection()
                                : collection == "all"         ? f.all_collection()
                                                              : f.centric_collection();
        NerveCohomology nc = nerve_cohomology(f, mod, coll, linking, b);
        std::vector<py::object> out;
        for (int n = 0; n <= max_degree; ++n) {
          DegreeDim d = nc.calc->h_dim(n);
          if (d.skipped())
            out.push_back(py::none());
          else
            out.push_back(py::int_(*d.dim));
        }
        return out;
      },
      py::arg("group"), py::arg("prime"), py::arg("module") = "trivial:1",
      py::arg("collection") = "centric", py::arg("max_degree") = 2, py::arg("linking") = false,
      "cohomology of the transporter or linking nerve with local coefficients");

  m.def(
      "run_check",
      [](const std::string& check, const std::string& group, int prime,
         const std::string& module_name, int max_degree) {
        CheckSpec s = make_spec(check, group, prime, module_name, max_degree);
        CheckReport rep = run_check(s);
        return py::module_::import("json").attr("loads")(report_to_json(rep).dump());
      },
      py::arg("check"), py::arg("group"), py::arg("prime"), py::arg("module") = "trivial:1",
      py::arg("max_degree") = 3, "run one named theorem check; returns the JSON report");

  m.def("builtin_suite", []() {
    SuiteReport rep = run_suite(builtin_manifest());
    return py::module_::import("json").attr("loads")(suite_to_json(rep).dump());
  });

  m.attr("__version__") = "0.1.0";
}
