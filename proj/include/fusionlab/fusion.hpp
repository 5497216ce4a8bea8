#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fusionlab/gmodule.hpp"
#include "fusionlab/group.hpp"

namespace fusionlab {

struct SubgroupFlags {
  bool centric = false;
  bool radical = false;
  bool quasicentric = false;
  bool essential = false;
  bool fully_normalized = false;
};

// Aut_F(P) realized as a permutation group on P's elements, with minimal
// transporter lifts per automorphism.
struct Automizer {
  GroupPtr aut;               // subgroup of Sym(P) induced by N_G(P)
  std::vector<int> lift;      // aut element id -> minimal g in N_G(P) inducing it
  Subgroup inn;               // Inn(P) <= aut
  Quotient out;               // aut/inn with the projection
  Subgroup opprime_aut;       // O^{p'}(aut)
  Subgroup p_residual_aut;    // O^p(aut)
};

// The fusion system of a finite group at p: the subgroup lattice of a Sylow
// p-subgroup with conjugacy classes, classification flags and automizers.
class FusionSystem {
 public:
  static FusionSystem build(GroupPtr g, int p, const Budget& budget = Budget{});

  const GroupPtr& group() const { return g_; }
  int prime() const { return p_; }
  const Subgroup& sylow() const { return sylow_; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  int subgroup_count() const { return static_cast<int>(subs_.size()); }
  int sylow_index() const { return sylow_idx_; }

  int index_of(const std::vector<int>& elems) const;  // -1 when absent
  int class_of(int idx) const { return class_of_[idx]; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  // fully normalized representative, canonical
  int class_rep(int cls) const { return class_rep_[cls]; }

  const SubgroupFlags& flags(int idx) const { return flags_[idx]; }
  const Automizer& automizer(int idx) const;

  // transporter T_G(P, Q) = { g : g P g^{-1} <= Q }
  std::vector<int> transporter(int p_idx, int q_idx) const;
  // minimal transporter lift per C_G(P)-coset (one per fusion morphism)
  std::vector<int> hom_reps(int p_idx, int q_idx) const;
  Subgroup centralizer_of(int idx) const;
  Subgroup normalizer_of(int idx) const;

  // collections, as subgroup index lists closed under F-conjugacy/overgroups
  std::vector<int> centric_collection() const;
  std::vector<int> quasicentric_collection() const;
  std::vector<int> centric_radical_upclosed() const;
  std::vector<int> constrained_collection() const;  // { P >= O_p(G) }
  std::vector<int> all_collection() const;
  bool collection_is_valid(const std::vector<int>& idxs) const;

  std::vector<int> essential_classes() const;  // class ids, deterministic

  bool normal_in_f(int idx) const;
  int o_p_index() const;        // subgroup index of O_p(F)
  bool is_constrained() const;

  Subgroup hyp() const;

  std::vector<int> m_essential_classes(const GModule& m) const;

 private:
  GroupPtr g_;
  int p_ = 2;
  Budget budget_;
  Subgroup sylow_;
  int sylow_idx_ = -1;
  std::vector<Subgroup> subs_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_rep_;
  std::vector<SubgroupFlags> flags_;
  mutable std::vector<std::optional<Automizer>> automizers_;
  mutable std::optional<int> o_p_cache_;

  void classify();
};

struct ModelResult {
  GroupPtr model;                  // N_G(Q)/O^p(C_G(Q)) for Q = O_p(F)
  bool sylow_order_matches = false;     // |Syl_p(model)| == |S|
  bool centralizer_contained = false;   // C_model(O_p(model)) <= O_p(model)
  bool fusion_signature_matches = false;  // class-count signature agrees
};
ModelResult model_of(const FusionSystem& f);

// Explicit morphism closure for generated fusion subsystems. A morphism from
// subgroup P is stored as the image vector over P's elements (targets are
// ambient element ids); the target subgroup is the image.
class GeneratedFusion {
 public:
  // seeds: per subgroup index, a list of image vectors
  GeneratedFusion(const FusionSystem& f,
                  const std::map<int, std::vector<std::vector<int>>>& seeds,
                  std::uint64_t cap);

  // number of closed morphisms P -> S with image inside Q
  std::int64_t hom_size(int p_idx, int q_idx) const;
  std::int64_t total() const { return total_; }
  const std::set<std::vector<int>>& maps_from(int p_idx) const;

 private:
  const FusionSystem& f_;
  std::vector<std::set<std::vector<int>>> maps_;  // per source subgroup
  std::int64_t total_ = 0;
};

struct OpPrimeFusion {
  // seeds: O^{p'}(Aut_F(Q)) as image vectors per subgroup
  std::map<int, std::vector<std::vector<int>>> seeds;
  // Aut_{O^{p'}(F)}(S) = O^{p'}(Aut_F(S)) and the induced Out^0 <= Out_F(S)
  Subgroup aut_opprime_sylow;  // subgroup of automizer(S).aut
  Subgroup out0;               // image in Out_F(S)
};
OpPrimeFusion opprime_fusion_data(const FusionSystem& f);

// full closure of the O^{p'} seeds plus inclusions (heavy; capped)
GeneratedFusion opprime_closure(const FusionSystem& f, std::uint64_t cap = Budget{}.closure_cap);
// verifies F = <Aut_F(S), O^{p'}(F)> by comparing all hom-set sizes
bool verify_p_prime_generation(const FusionSystem& f, std::uint64_t cap = Budget{}.closure_cap);

}  // namespace fusionlab
