#pragma once

#include <optional>
#include <vector>

#include "fusionlab/fplinalg.hpp"
#include "fusionlab/group.hpp"

namespace fusionlab {

// Finite-dimensional F_p vector space with a group action, stored as one
// invertible matrix per group element (id-aligned with group->elements()).
// Construction from generator matrices walks the closure and checks
// consistency on every (element, generator) edge, which verifies that the
// assignment is a homomorphism on the full multiplication table.
class GModule {
 public:
  GModule() = default;
  static GModule from_generator_action(GroupPtr g, int p, int dim,
                                       const std::vector<FpMat>& gen_mats);
  static GModule from_element_action(GroupPtr g, int p, int dim, std::vector<FpMat> elem_mats);
  static GModule trivial(GroupPtr g, int p, int dim);
  // 1-dim character by permutation parity (p odd; trivial for p = 2)
  static GModule sign(GroupPtr g, int p);

  int prime() const { return p_; }
  int dim() const { return dim_; }
  const GroupPtr& group() const { return group_; }
  const FpMat& action(int elem_id) const { return act_[elem_id]; }
  const FpMat& action_inv(int elem_id) const { return act_[group_->inv(elem_id)]; }
  bool is_trivial_action() const;

  // subgroup of elements acting as the identity
  Subgroup action_kernel() const;

 private:
  int p_ = 2, dim_ = 0;
  GroupPtr group_;
  std::vector<FpMat> act_;
};

// A subgroup materialized for cohomology work: its own PermGroup plus the
// restricted module, with the ambient-id correspondence kept around for
// conjugation maps.
struct Site {
  GroupPtr ambient;
  Subgroup sub;
  GroupPtr local;
  GModule mod;                    // over local
  std::vector<int> from_ambient;  // ambient elem id -> local id or -1

  int to_ambient(int local_id) const { return sub.elems[local_id]; }
};
Site make_site(const GModule& ambient_mod, const Subgroup& sub);

GModule restrict_module(const GModule& m, const Subgroup& h);  // module over materialize(h)

// induced / coinduced modules along a subgroup inclusion; `m` must be a
// module over materialize(h)
GModule induce(const GModule& m, const Subgroup& h, std::uint64_t index_cap = 1 << 20);
GModule coinduce(const GModule& m, const Subgroup& h, std::uint64_t index_cap = 1 << 20);
// the canonical intertwiner Ind -> coInd at finite index; checked invertible
// and equivariant
FpMat ind_coind_isomorphism(const GModule& ind, const GModule& coind, const GModule& m,
                            const Subgroup& h);

// canonical basis (reduced echelon kernel) of the simultaneous fixed space of
// the listed elements
std::vector<std::vector<std::uint8_t>> fixed_points(const GModule& m,
                                                    const std::vector<int>& elem_ids);
std::vector<std::vector<std::uint8_t>> fixed_points_subgroup(const GModule& m,
                                                             const Subgroup& h);

struct CompatibilityWitness {
  int subgroup_index;  // position in the collection
  int element;         // ambient element acting nontrivially
};
// true iff every element of O^p(C_G(P)) acts as the identity for every P in
// the collection; otherwise a witness
std::optional<CompatibilityWitness> pilocal_incompatibility(
    const GModule& m, int p, const std::vector<Subgroup>& collection);

}  // namespace fusionlab
