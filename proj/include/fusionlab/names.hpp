#pragma once

#include <string>

#include "fusionlab/gmodule.hpp"
#include "fusionlab/group.hpp"

namespace fusionlab {

// Built-in groups: "S3" "S4" "S5" "A4" "A5" "D8" "Q8" "C<n>" "SL23"
// "wreath:<base>:<p>" "prod:<a>:<b>".
GroupPtr named_group(const std::string& name);

// Built-in modules over a named group:
//   "trivial:<d>"  identity action in dimension d
//   "sign"         1-dim parity character (p odd)
//   "natural2"     S3: the 2-dim F_2 module through S3 = GL_2(F_2)
//   "quo6"         S4: the 2-dim F_2 module through S4 -> S4/V = S3 = GL_2(F_2)
//   "a4c3"         A4: 2-dim F_2 through A4 -> C3 < GL_2(F_2)
//   "unip2"        D8: 2-dim F_2 unipotent through D8 -> C2
//   "adjoint3"     SL23: 3-dim F_3 conjugation action on trace-zero matrices
GModule named_module(GroupPtr g, const std::string& group_name, int p,
                     const std::string& module_name);

}  // namespace fusionlab
