#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "fusionlab/json_io.hpp"

using namespace fusionlab;

namespace {

GroupInput resolve_group(const std::string& arg) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return load_group_file(arg);
  if (!arg.empty() && arg.front() == '{') return parse_group(Json::parse(arg));
  GroupInput g;
  g.name = arg;
  g.group = named_group(arg);
  return g;
}

GModule resolve_module(const std::string& arg, const GroupInput& g, int prime) {
  if (arg.empty()) return GModule::trivial(g.group, prime, 1);
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json")
    return load_module_file(arg, g, prime);
  if (!arg.empty() && arg.front() == '{') return parse_module(Json::parse(arg), g, prime);
  return named_module(g.group, g.name, prime, arg);
}

Budget budget_with_cap(std::uint64_t cap) {
  Budget b = Budget::from_env();
  if (cap > 0) b.cell_cap = cap;
  return b;
}

int cmd_classify(const std::string& garg, int prime, const std::string& marg) {
  GroupInput g = resolve_group(garg);
  FusionSystem f = FusionSystem::build(g.group, prime);
  std::vector<int> mess;
  if (!marg.empty()) {
    GModule m = resolve_module(marg, g, prime);
    mess = f.m_essential_classes(m);
  }
  Json out;
  out["group"] = g.name;
  out["prime"] = prime;
  out["sylow_order"] = f.sylow().order();
  out["subgroups"] = f.subgroup_count();
  Json classes = Json::array();
  for (std::size_t c = 0; c < f.classes().size(); ++c) {
    int rep = f.class_rep(static_cast<int>(c));
    const SubgroupFlags& fl = f.flags(rep);
    Json jc;
    jc["order"] = f.subgroups()[rep].order();
    jc["class_size"] = f.classes()[c].size();
    jc["centric"] = fl.centric;
    jc["radical"] = fl.radical;
    jc["quasicentric"] = fl.quasicentric;
    jc["essential"] = fl.essential;
    jc["aut_order"] = f.automizer(rep).aut->order();
    jc["out_order"] = f.automizer(rep).out.group->order();
    if (!marg.empty())
      jc["m_essential"] =
          std::find(mess.begin(), mess.end(), static_cast<int>(c)) != mess.end();
    classes.push_back(jc);
  }
  out["classes"] = classes;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_cohomology(const std::string& garg, int prime, const std::string& marg, int max_degree,
                   std::uint64_t cap, bool dump_reps) {
  GroupInput g = resolve_group(garg);
  GModule m = resolve_module(marg, g, prime);
  Budget b = budget_with_cap(cap);
  Json out;
  out["group"] = g.name;
  out["prime"] = prime;
  Json dims = Json::array();
  auto cx = std::make_shared<BarComplex>(g.group, m);
  ComplexCohomology calc(cx, b);
  for (int n = 0; n <= max_degree; ++n) {
    DegreeDim d = calc.h_dim(n);
    Json jd;
    jd["n"] = n;
    if (d.skipped()) {
      jd["skipped"] = "budget";
      jd["cells"] = d.cells;
    } else {
      jd["dim"] = *d.dim;
      if (dump_reps && *d.dim > 0) {
        const HBasis& hb = calc.h_basis(n);
        Json reps = Json::array();
        for (const auto& r : hb.reps) {
          Json entries = Json::array();
          for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i]) entries.push_back(Json::array({i, r[i]}));
          reps.push_back(entries);
        }
        jd["representatives"] = reps;
      }
    }
    dims.push_back(jd);
  }
  out["cohomology"] = dims;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_nerve(const std::string& garg, int prime, const std::string& marg,
              const std::string& collection, int max_degree, bool linking, std::uint64_t cap) {
  GroupInput g = resolve_group(garg);
  GModule m = resolve_module(marg, g, prime);
  Budget b = budget_with_cap(cap);
  FusionSystem f = FusionSystem::build(g.group, prime, b);
  std::vector<int> coll;
  if (collection == "centric") coll = f.centric_collection();
  else if (collection == "cr") coll = f.centric_radical_upclosed();
  else if (collection == "constrained") coll = f.constrained_collection();
  else if (collection == "all") coll = f.all_collection();
  else throw invalid_collection("unknown collection: " + collection);

  NerveCohomology nc = nerve_cohomology(f, m, coll, linking, b);
  StableWorkspace ws(f, m, b);
  Json out;
  out["group"] = g.name;
  out["prime"] = prime;
  out["collection"] = collection;
  out["objects"] = nc.cat->object_count();
  out["morphisms"] = nc.cat->morphism_count();
  Json census = Json::array();
  for (auto c : chain_census(*nc.cat, max_degree)) census.push_back(c);
  out["chain_census"] = census;
  Json dims = Json::array();
  for (int n = 0; n <= max_degree; ++n) {
    DegreeDim d = nc.calc->h_dim(n);
    Json jd;
    jd["n"] = n;
    if (d.skipped()) {
      jd["skipped"] = "budget";
      jd["cells"] = d.cells;
    } else {
      jd["dim"] = *d.dim;
      try {
        const HBasis& hn = nc.calc->h_basis(n);
        SiteCohomology& ssc = ws.sylow_site();
        const HBasis& hb = ssc.calc->h_basis(n);
        FpMat delta = delta_comparison(*nc.cx, hn, ssc.site, hb);
        jd["delta_image_rank"] = fp_rank(Fp(prime), delta);
      } catch (const Error& e) {
        jd["delta_image_rank"] = nullptr;
      }
    }
    dims.push_back(jd);
  }
  out["cohomology"] = dims;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_stable(const std::string& garg, int prime, const std::string& marg, int degree,
               const std::string& collection, bool family_oracle, bool dump_basis,
               std::uint64_t cap) {
  GroupInput g = resolve_group(garg);
  GModule m = resolve_module(marg, g, prime);
  Budget b = budget_with_cap(cap);
  FusionSystem f = FusionSystem::build(g.group, prime, b);
  StableWorkspace ws(f, m, b);
  std::vector<int> fam;
  if (collection == "centric") fam = centric_family(f);
  else if (collection == "all") fam = all_family(f);
  else if (collection == "grodal") fam = grodal_family(f, m);
  else throw invalid_collection("unknown family: " + collection);
  StableOptions opts;
  opts.full_pairs = family_oracle;
  opts.require_compatible = (collection == "centric");
  StableSubspace ss = stable_subspace(ws, degree, fam, opts);
  Json out;
  out["group"] = g.name;
  out["prime"] = prime;
  out["degree"] = degree;
  out["family"] = collection;
  if (ss.skipped()) {
    out["skipped"] = "budget";
    out["cells"] = ss.cells;
  } else {
    out["dim"] = ss.dim;
    if (dump_basis) {
      Json basis = Json::array();
      for (const auto& v : ss.basis) {
        Json jv = Json::array();
        for (auto x : v) jv.push_back(static_cast<int>(x));
        basis.push_back(jv);
      }
      out["basis"] = basis;
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

CheckSpec spec_from_json(const Json& j) {
  CheckSpec s;
  s.check = j.at("check").get<std::string>();
  GroupInput g;
  if (j.at("group").is_string())
    g = resolve_group(j["group"].get<std::string>());
  else
    g = parse_group(j["group"]);
  s.group_name = g.name;
  s.group = g.group;
  s.prime = j.at("prime").get<int>();
  if (j.contains("module")) {
    if (j["module"].is_string()) {
      s.module_name = j["module"].get<std::string>();
      s.module = resolve_module(s.module_name, g, s.prime);
    } else {
      s.module_name = "custom";
      s.module = parse_module(j["module"], g, s.prime);
    }
  } else {
    s.module_name = "trivial:1";
    s.module = GModule::trivial(g.group, s.prime, 1);
  }
  if (j.contains("max_degree")) s.max_degree = j["max_degree"].get<int>();
  if (j.contains("collection")) s.collection = j["collection"].get<std::string>();
  s.budget = Budget::from_env();
  return s;
}

int cmd_check(const std::string& name, const std::string& garg, int prime,
              const std::string& marg, int max_degree, const std::string& collection,
              std::uint64_t cap, bool timing) {
  GroupInput g = resolve_group(garg);
  CheckSpec s;
  s.check = name;
  s.group_name = g.name;
  s.group = g.group;
  s.prime = prime;
  s.module_name = marg.empty() ? "trivial:1" : marg;
  s.module = resolve_module(marg, g, prime);
  s.max_degree = max_degree;
  s.collection = collection;
  s.budget = budget_with_cap(cap);
  CheckReport rep = run_check(s);
  std::cout << report_to_json(rep, timing).dump(2) << "\n";
  return rep.exit_code();
}

int cmd_suite(const std::string& manifest, std::uint64_t cap, bool timing) {
  std::vector<CheckSpec> specs;
  if (manifest == "builtin" || manifest == "acceptance") {
    specs = builtin_manifest();
    if (cap > 0)
      for (auto& s : specs) s.budget.cell_cap = cap;
  } else {
    std::ifstream in(manifest);
    if (!in) throw Error("FileError", "cannot open manifest " + manifest);
    Json j = Json::parse(in);
    for (const auto& item : j) {
      CheckSpec s = spec_from_json(item);
      if (cap > 0) s.budget.cell_cap = cap;
      specs.push_back(std::move(s));
    }
  }
  SuiteReport rep = run_suite(specs);
  std::cout << suite_to_json(rep, timing).dump(2) << "\n";
  std::cerr << rep.checks.size() << " checks, "
            << std::count_if(rep.checks.begin(), rep.checks.end(),
                             [](const CheckReport& c) { return c.verdict == "pass"; })
            << " passed\n";
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusion systems, twisted group cohomology and stable elements"};
  app.require_subcommand(1);

  std::string garg, marg, collection = "centric", check_name, manifest;
  int prime = 2, max_degree = 3, degree = 0;
  std::uint64_t cap = 0;
  bool family_oracle = false, dump = false, linking = false, timing = false;

  auto* classify = app.add_subcommand("classify", "subgroup classes of the fusion system");
  classify->add_option("--group", garg)->required();
  classify->add_option("--prime", prime)->required();
  classify->add_option("--module", marg);

  auto* cohom = app.add_subcommand("cohomology", "bar-complex cohomology dimensions");
  cohom->add_option("--group", garg)->required();
  cohom->add_option("--prime", prime)->required();
  cohom->add_option("--module", marg);
  cohom->add_option("--max-degree", max_degree);
  cohom->add_option("--cell-cap", cap);
  cohom->add_flag("--dump-reps", dump);

  auto* nerve = app.add_subcommand("nerve", "nerve cohomology with local coefficients");
  nerve->add_option("--group", garg)->required();
  nerve->add_option("--prime", prime)->required();
  nerve->add_option("--module", marg);
  nerve->add_option("--collection", collection);
  nerve->add_option("--max-degree", max_degree);
  nerve->add_option("--cell-cap", cap);
  nerve->add_flag("--linking", linking);

  auto* stable = app.add_subcommand("stable", "stable-element subspace of H^n(S,M)");
  stable->add_option("--group", garg)->required();
  stable->add_option("--prime", prime)->required();
  stable->add_option("--module", marg);
  stable->add_option("--degree", degree)->required();
  stable->add_option("--collection", collection);
  stable->add_flag("--family-oracle", family_oracle);
  stable->add_flag("--dump-basis", dump);
  stable->add_option("--cell-cap", cap);

  auto* check = app.add_subcommand("check", "run one named theorem check");
  check->add_option("name", check_name)->required();
  check->add_option("--group", garg)->required();
  check->add_option("--prime", prime)->required();
  check->add_option("--module", marg);
  check->add_option("--max-degree", max_degree);
  check->add_option("--collection", collection);
  check->add_option("--cell-cap", cap);
  check->add_flag("--telemetry", timing);

  auto* suite = app.add_subcommand("suite", "run a manifest of checks");
  suite->add_option("--manifest", manifest)->required();
  suite->add_option("--cell-cap", cap);
  suite->add_flag("--telemetry", timing);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(garg, prime, marg);
    if (cohom->parsed()) return cmd_cohomology(garg, prime, marg, max_degree, cap, dump);
    if (nerve->parsed()) return cmd_nerve(garg, prime, marg, collection, max_degree, linking, cap);
    if (stable->parsed())
      return cmd_stable(garg, prime, marg, degree, collection, family_oracle, dump, cap);
    if (check->parsed())
      return cmd_check(check_name, garg, prime, marg, max_degree, collection, cap, timing);
    if (suite->parsed()) return cmd_suite(manifest, cap, timing);
  } catch (const Error& e) {
    Json err;
    err["error"] = e.code();
    err["what"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 4;
  }
  return 0;
}
