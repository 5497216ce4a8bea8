#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fusionlab/config.hpp"
#include "fusionlab/perm.hpp"

namespace fusionlab {

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

// Finite permutation group with a fully enumerated, canonically ordered
// element list. Element ids are indices into elements(); id 0 is the
// identity. Immutable after construction.
class PermGroup {
 public:
  static GroupPtr from_generators(int degree, std::vector<Perm> gens,
                                  std::uint64_t order_cap = Budget{}.order_cap);
  // `elems` must be a subgroup, sorted canonically.
  static GroupPtr from_elements(int degree, std::vector<Perm> elems,
                                std::vector<Perm> gens);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(int id) const { return elements_[id]; }
  const std::vector<int>& generator_ids() const { return generator_ids_; }

  int index_of(const Perm& p) const;  // -1 if not a member
  int mul(int a, int b) const {
    if (!mult_.empty()) return mult_[static_cast<std::size_t>(a) * order() + b];
    return index_of(elements_[a] * elements_[b]);
  }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }  // g x g^-1
  int element_order(int a) const;
  bool is_p_element(int a, int p) const;

 private:
  PermGroup() = default;
  void finish();  // inverse + multiplication tables

  int degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<int> generator_ids_;
  std::vector<int> inv_;
  std::vector<std::int32_t> mult_;  // built when order <= kMultTableLimit
  static constexpr std::size_t kMultTableLimit = 4096;
};

// Subgroup of a parent group, stored as a sorted list of parent element ids.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elems;  // sorted, closed under mul/inv
  std::vector<int> gens;   // element ids generating the subgroup

  std::size_t order() const { return elems.size(); }
  bool contains(int id) const;
  bool contains_all(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
};

// Group homomorphism recorded on every source element; `verified` is set by
// a full multiplication-table check.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> images;  // source element id -> target element id
  bool verified = false;
  bool injective = false;
};

// -- construction -----------------------------------------------------------

std::vector<int> closure_ids(const PermGroup& g, std::vector<int> seed);
Subgroup subgroup_from_gens(GroupPtr g, std::vector<int> gen_ids);
Subgroup subgroup_from_elems(GroupPtr g, std::vector<int> elems);
Subgroup trivial_subgroup(GroupPtr g);
Subgroup full_subgroup(GroupPtr g);
GroupPtr materialize(const Subgroup& s);  // subgroup as its own PermGroup

// hom from generator images (BFS over source closure; throws NotAHomomorphism
// when the assignment is inconsistent)
GroupHom hom_from_gen_images(GroupPtr src, GroupPtr tgt, const std::vector<int>& src_gen_ids,
                             const std::vector<int>& images);

// -- elementary operations --------------------------------------------------

Subgroup sylow_subgroup(GroupPtr g, int p);
Subgroup normalizer(const Subgroup& h);            // N_{parent}(h)
Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& h);
Subgroup centralizer(const Subgroup& h);           // C_{parent}(h)
Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& h);
Subgroup center(const Subgroup& h);                // Z(h) inside parent ids
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup conjugate_subgroup(const Subgroup& h, int g);

// All subgroups of a p-group, deterministic order (by order, then element
// list). Throws NotAPGroup / SubgroupCapExceeded.
std::vector<Subgroup> all_subgroups(const Subgroup& s, int p,
                                    std::uint64_t cap = Budget{}.subgroup_cap);

struct Residuals {
  Subgroup core_p;            // O_p: largest normal p-subgroup
  Subgroup residual_p;        // O^p: smallest normal subgroup with p-group quotient
  Subgroup residual_p_prime;  // O^{p'}: smallest normal subgroup with p'-quotient
  Subgroup core_p_prime;      // O_{p'}: largest normal p'-subgroup
};
Residuals residuals(GroupPtr g, int p);

bool is_p_solvable(GroupPtr g, int p);
bool is_strongly_p_embedded(GroupPtr g, const Subgroup& h, int p);
// scan over overgroups of a Sylow p-subgroup (any strongly p-embedded
// subgroup contains one up to conjugacy); returns a witness if found
std::optional<Subgroup> find_strongly_p_embedded(GroupPtr g, int p);

struct Quotient {
  GroupPtr group;             // G/N as permutation group on cosets of N
  std::vector<int> hom;       // G element id -> quotient element id
  std::vector<int> coset_of;  // G element id -> coset index (point of the action)
};
Quotient quotient_group(GroupPtr g, const Subgroup& n);
Subgroup preimage(GroupPtr g, const Quotient& q, const Subgroup& sub_of_quotient);

struct WreathProduct {
  GroupPtr group;                 // G0 wr C_p on p disjoint copies of G0's domain
  Subgroup base;                  // G0^p
  Subgroup diagonal;              // diagonal copy of G0
  int cycle;                      // element id of the p-cycle permuting the copies
  std::vector<GroupHom> copy_embeddings;  // G0 -> G, one per copy
  GroupHom diagonal_embedding;
};
WreathProduct wreath_product_cp(GroupPtr g0, int p,
                                std::uint64_t order_cap = Budget{}.order_cap);

struct DirectProduct {
  GroupPtr group;
  Subgroup factor1, factor2;  // images of the two factors
  GroupHom emb1, emb2;
};
DirectProduct direct_product(GroupPtr a, GroupPtr b);

// p-part of n
std::uint64_t p_part(std::uint64_t n, int p);

// rank r of the largest elementary abelian p-quotient H/([H,H] H^p) = p^r
int elementary_p_rank(const Subgroup& h, int p);

// nontrivial p-subgroup poset of g: empty-or-disconnected test (Quillen poset
// connectivity via inclusion edges)
bool p_subgroup_poset_disconnected_or_empty(GroupPtr g, int p);

// normal subgroups of index exactly p (preimages of hyperplanes in the
// elementary abelian p-quotient)
std::vector<Subgroup> index_p_normal_subgroups(GroupPtr g, int p);

}  // namespace fusionlab
