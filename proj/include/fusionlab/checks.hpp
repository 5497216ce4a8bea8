#pragma once

#include <string>

#include "fusionlab/names.hpp"
#include "fusionlab/stable.hpp"

namespace fusionlab {

struct CheckSpec {
  std::string check;
  std::string group_name;      // named form; used by the wreath/product checks
  GroupPtr group;              // resolved group
  int prime = 2;
  std::string module_name = "trivial:1";
  GModule module;              // over `group`
  int max_degree = 3;
  std::string collection = "centric";  // centric | cr | constrained | all
  Budget budget = Budget::from_env();
};

CheckSpec make_spec(const std::string& check, const std::string& group_name, int prime,
                    const std::string& module_name, int max_degree,
                    const std::string& collection = "centric");

struct DegreeLine {
  int n = 0;
  std::int64_t lhs = -1, rhs = -1;
  bool equal = false;
  bool contained = true;
  bool skipped = false;
  std::uint64_t cells = 0;
  std::string label;
};

struct CheckReport {
  std::string check;
  std::string instance;
  std::vector<DegreeLine> degrees;
  std::vector<std::string> notes;
  std::string verdict;  // pass | theorem-violated | hypothesis-failed | budget-skipped
  std::uint64_t cells = 0;
  double wall_ms = 0;

  int exit_code() const {
    if (verdict == "pass") return 0;
    if (verdict == "theorem-violated") return 1;
    if (verdict == "hypothesis-failed") return 2;
    return 3;
  }
};

// name in { cartan-eilenberg, theorem-a, constrained, coprime, pnilpotent,
// psolvable, grodal, fixed-point-lemma, wreath, shapiro, homofunctor,
// collection-independence, subpessential, product-essentials }
CheckReport run_check(const CheckSpec& spec);

struct SuiteReport {
  std::vector<CheckReport> checks;
  int exit_code() const {
    int code = 0;
    for (const auto& c : checks) code = std::max(code, c.exit_code());
    return code;
  }
};
SuiteReport run_suite(const std::vector<CheckSpec>& manifest);

// the built-in corpus manifest at check granularity
std::vector<CheckSpec> builtin_manifest();

}  // namespace fusionlab
