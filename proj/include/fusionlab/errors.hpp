#pragma once

#include <stdexcept>
#include <string>

namespace fusionlab {

// One exception type for the whole library; `code` is a stable machine
// readable tag surfaced in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Error malformed_permutation(const std::string& w) { return Error("MalformedPermutation", w); }
inline Error order_cap_exceeded(const std::string& w) { return Error("OrderCapExceeded", w); }
inline Error not_a_p_group(const std::string& w) { return Error("NotAPGroup", w); }
inline Error subgroup_cap_exceeded(const std::string& w) { return Error("SubgroupCapExceeded", w); }
inline Error not_normal(const std::string& w) { return Error("NotNormal", w); }
inline Error not_a_subgroup(const std::string& w) { return Error("NotASubgroup", w); }
inline Error index_cap_exceeded(const std::string& w) { return Error("IndexCapExceeded", w); }
inline Error cell_cap_exceeded(const std::string& w) { return Error("CellCapExceeded", w); }
inline Error incompatible_action(const std::string& w) { return Error("IncompatibleAction", w); }
inline Error not_constrained(const std::string& w) { return Error("NotConstrained", w); }
inline Error invalid_collection(const std::string& w) { return Error("InvalidCollection", w); }
inline Error closure_cap_exceeded(const std::string& w) { return Error("ClosureCapExceeded", w); }
inline Error not_a_homomorphism(const std::string& w) { return Error("NotAHomomorphism", w); }

}  // namespace fusionlab
