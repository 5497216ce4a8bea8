#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "fusionlab/checks.hpp"

namespace fusionlab {

using Json = nlohmann::ordered_json;

struct GroupInput {
  GroupPtr group;
  std::string name;  // named form when given, else "custom"
};

// {"degree": n, "generators": [[[1,2],[3,4]], ...]} with 1-based cycles, or
// {"name": "S4"} for a built-in
GroupInput parse_group(const Json& j);
GroupInput load_group_file(const std::string& path);

// {"prime": p, "dim": d, "action": [row-major matrix per generator]},
// {"prime": p, "trivial": d}, or {"prime": p, "name": "sign"}
GModule parse_module(const Json& j, const GroupInput& g, int default_prime);
GModule load_module_file(const std::string& path, const GroupInput& g, int default_prime);

// timing is excluded by default so reports are byte-identical across runs
Json report_to_json(const CheckReport& rep, bool include_timing = false);
Json suite_to_json(const SuiteReport& rep, bool include_timing = false);

}  // namespace fusionlab
