#include "fusionlab/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace fusionlab {

GroupInput parse_group(const Json& j) {
  GroupInput out;
  if (j.contains("name")) {
    out.name = j["name"].get<std::string>();
    out.group = named_group(out.name);
    return out;
  }
  int degree = j.at("degree").get<int>();
  std::vector<Perm> gens;
  for (const auto& jg : j.at("generators")) {
    std::vector<std::vector<int>> cycles;
    for (const auto& jc : jg) cycles.push_back(jc.get<std::vector<int>>());
    gens.push_back(Perm::from_cycles(degree, cycles));
  }
  out.name = "custom";
  out.group = PermGroup::from_generators(degree, gens);
  return out;
}

GroupInput load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open group file " + path);
  Json j = Json::parse(in);
  return parse_group(j);
}

GModule parse_module(const Json& j, const GroupInput& g, int default_prime) {
  int p = j.contains("prime") ? j["prime"].get<int>() : default_prime;
  if (j.contains("name"))
    return named_module(g.group, g.name, p, j["name"].get<std::string>());
  if (j.contains("trivial")) return GModule::trivial(g.group, p, j["trivial"].get<int>());
  int dim = j.at("dim").get<int>();
  std::vector<FpMat> mats;
  for (const auto& jm : j.at("action")) {
    FpMat m(dim, dim);
    auto flat = jm.get<std::vector<long long>>();
    if (static_cast<int>(flat.size()) != dim * dim)
      throw Error("BadModule", "action matrix has wrong size");
    for (int i = 0; i < dim * dim; ++i) {
      long long v = flat[i] % p;
      if (v < 0) v += p;
      m.a[i] = static_cast<std::uint8_t>(v);
    }
    mats.push_back(std::move(m));
  }
  return GModule::from_generator_action(g.group, p, dim, mats);
}

GModule load_module_file(const std::string& path, const GroupInput& g, int default_prime) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open module file " + path);
  Json j = Json::parse(in);
  return parse_module(j, g, default_prime);
}

Json report_to_json(const CheckReport& rep, bool include_timing) {
  Json j;
  j["check"] = rep.check;
  j["instance"] = rep.instance;
  Json degs = Json::array();
  for (const auto& d : rep.degrees) {
    Json jd;
    jd["n"] = d.n;
    if (d.skipped) {
      jd["skipped"] = "budget";
      jd["cells"] = d.cells;
    } else {
      jd["lhs_dim"] = d.lhs;
      jd["rhs_dim"] = d.rhs;
      jd["equal"] = d.equal;
      jd["contained"] = d.contained;
    }
    if (!d.label.empty()) jd["label"] = d.label;
    degs.push_back(jd);
  }
  j["degrees"] = degs;
  j["verdict"] = rep.verdict;
  Json tel;
  tel["cells"] = rep.cells;
  if (include_timing) tel["wall_ms"] = static_cast<std::int64_t>(rep.wall_ms);
  j["telemetry"] = tel;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

Json suite_to_json(const SuiteReport& rep, bool include_timing) {
  Json j;
  Json arr = Json::array();
  int pass = 0;
  for (const auto& c : rep.checks) {
    arr.push_back(report_to_json(c, include_timing));
    if (c.verdict == "pass") ++pass;
  }
  j["checks"] = arr;
  j["passed"] = pass;
  j["total"] = static_cast<int>(rep.checks.size());
  j["exit_code"] = rep.exit_code();
  return j;
}

}  // namespace fusionlab
