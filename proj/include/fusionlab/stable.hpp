#pragma once

#include "fusionlab/nerve.hpp"

namespace fusionlab {

// Basis of a stability-cut subspace of H^n(S, M); dim < 0 marks a budget skip
// (census in `cells`).
struct StableSubspace {
  int degree = 0;
  std::int64_t dim = -1;
  std::uint64_t cells = 0;
  std::vector<std::vector<std::uint8_t>> basis;  // canonical echelon vectors
  bool skipped() const { return dim < 0; }
};

// Shared per-(F, M) caches: the Sylow site and per-subgroup site cohomology.
class StableWorkspace {
 public:
  StableWorkspace(const FusionSystem& f, const GModule& mod, Budget budget);
  const FusionSystem& fusion() const { return *f_; }
  const GModule& module() const { return mod_; }
  const Budget& budget() const { return budget_; }
  SiteCohomology& site(int subgroup_idx);
  SiteCohomology& sylow_site() { return site(f_->sylow_index()); }

 private:
  const FusionSystem* f_;
  GModule mod_;
  Budget budget_;
  std::map<int, SiteCohomology> sites_;
};

struct StableOptions {
  bool full_pairs = false;   // impose every (member, lift) instead of class reps
  bool require_compatible = false;  // refuse twisted incompatible coefficients
};

// Stable subspace of H^n(S,M) under the conditions kappa_g = Res for every
// subgroup class in `family_classes` and every transporter-coset lift into S.
StableSubspace stable_subspace(StableWorkspace& ws, int n,
                               const std::vector<int>& family_classes,
                               const StableOptions& opts = {});

// family helpers (class id lists)
std::vector<int> all_family(const FusionSystem& f);
std::vector<int> centric_family(const FusionSystem& f);
std::vector<int> grodal_family(const FusionSystem& f, const GModule& m);

struct OpPrimeStable {
  StableSubspace stable;        // H^n stability under the O^{p'} seeds
  StableSubspace fixed;         // fixed points of Aut_F(S)/Aut_{O^{p'}(F)}(S)
};
OpPrimeStable opprime_stable_and_fixed(StableWorkspace& ws, int n);

enum class FamilyVerdict { Equal, FirstInSecond, SecondInFirst, Incomparable, Skipped };
struct FamilyComparison {
  StableSubspace first, second;
  FamilyVerdict verdict = FamilyVerdict::Skipped;
};
FamilyComparison family_equality(StableWorkspace& ws, int n,
                                 const std::vector<int>& family_a,
                                 const std::vector<int>& family_b);

// containment of canonical subspace bases (vectors over the same coordinates)
bool subspace_contained(int p, const std::vector<std::vector<std::uint8_t>>& a,
                        const std::vector<std::vector<std::uint8_t>>& b);

// restriction-image comparison for the full-family route: the matrix of
// Res: H^n(G,M) -> H^n(S,M) in canonical bases
FpMat group_to_sylow_restriction(StableWorkspace& ws, ComplexCohomology& group_calc, int n);

}  // namespace fusionlab
