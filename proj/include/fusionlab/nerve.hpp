#pragma once

#include <unordered_map>

#include "fusionlab/cohomology.hpp"
#include "fusionlab/fusion.hpp"

namespace fusionlab {

struct Morphism {
  int src = 0, tgt = 0;  // object positions
  int label = 0;         // ambient element id (transporter) or canonical coset rep
};

// Transporter or linking category over a collection of subgroups of S.
// Mor(P,Q) = T_G(P,Q) for the transporter; T_G(P,Q)/O^p(C_G(P)) for the
// linking category, with canonical (minimal) coset representatives as labels.
class FiniteCategory {
 public:
  static FiniteCategory transporter(const FusionSystem& f, std::vector<int> collection);
  static FiniteCategory linking(const FusionSystem& f, std::vector<int> collection);

  const FusionSystem& fusion() const { return *f_; }
  bool linking_category() const { return linking_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::vector<int>& objects() const { return objects_; }  // subgroup indices
  int object_of_subgroup(int sub_idx) const;

  int morphism_count() const { return static_cast<int>(mors_.size()); }
  const Morphism& morphism(int id) const { return mors_[id]; }
  const std::vector<int>& morphisms_from(int obj) const { return from_[obj]; }
  const std::vector<int>& morphisms_into(int obj) const { return into_[obj]; }
  int morphism_id(int src_obj, int tgt_obj, int label) const;
  std::int64_t hom_size(int src_obj, int tgt_obj) const;

  bool is_identity(int id) const { return identity_[id]; }
  int identity_at(int obj) const;
  // canonical label of the coset of g at the source object
  int rep_label(int src_obj, int g) const;
  // a: x -> y after b: z -> x, giving z -> y
  int compose(int a, int b) const;
  // image of a transporter morphism in the linking category over the same
  // collection (label projection)
  int project_label(int src_obj, int transporter_label) const { return rep_label(src_obj, transporter_label); }

 private:
  const FusionSystem* f_ = nullptr;
  bool linking_ = false;
  std::vector<int> objects_;
  std::vector<Morphism> mors_;
  std::vector<char> identity_;
  std::vector<std::vector<int>> from_, into_;
  std::vector<std::vector<int>> coset_rep_;  // per object: ambient elem -> rep
  std::map<std::pair<int, int>, std::map<int, int>> by_pair_;  // (src,tgt) -> label -> id

  static FiniteCategory build(const FusionSystem& f, std::vector<int> collection, bool linking);
};

// Normalized nerve cochain complex with local coefficients: chains are
// composable strings of non-identity morphisms f_i : x_i -> x_{i-1}; the
// twisted differential applies the module action of the first morphism's
// label along face 0, so a one-object category reproduces the bar complex of
// its endomorphism group on the nose.
class NerveComplex : public CochainComplex {
 public:
  NerveComplex(const FiniteCategory& cat, const GModule& ambient_mod);

  int prime() const override { return mod_.prime(); }
  std::int64_t dim(int n) const override;
  std::uint64_t census(int n) const override;
  void stream_rows_subset(int n, int part, int nparts,
                          const std::function<bool(const SparseVec&)>& sink) const override;
  void stream_cols(int n, const std::function<bool(const SparseVec&)>& sink) const override;
  int row_parts(int n) const override;

  const FiniteCategory& category() const { return *cat_; }
  int coeff_dim() const;
  std::int64_t chain_count(int k) const;  // normalized k-chains
  // index of a k-chain (by morphism ids) in the canonical order
  std::int64_t chain_index(const std::vector<int>& chain) const;
  const std::vector<int>& chain_at(std::int64_t idx, int k) const;

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  void ensure_chains(int k) const;

  const FiniteCategory* cat_;
  GModule mod_;
  mutable std::vector<std::vector<std::vector<int>>> chains_;  // per degree
  mutable std::vector<std::unordered_map<std::vector<int>, std::int64_t, VecHash>> chain_idx_;
};

// chain counts for budgeting (exact)
std::vector<std::int64_t> chain_census(const FiniteCategory& cat, int n_max);

// H^n(|C|, M) for the nerve with local coefficients; for linking categories
// the module must pass the compatibility check over the collection.
struct NerveCohomology {
  std::shared_ptr<FiniteCategory> cat;
  std::shared_ptr<NerveComplex> cx;
  std::shared_ptr<ComplexCohomology> calc;
};
NerveCohomology nerve_cohomology(const FusionSystem& f, const GModule& ambient_mod,
                                 std::vector<int> collection, bool linking,
                                 const Budget& budget);

// matrix of the comparison H^n(|C|, M) -> H^n(S, M) induced by the canonical
// functor from the one-object category of S (columns: nerve reps; rows: bar
// reps at S)
FpMat delta_comparison(const NerveComplex& nerve, const HBasis& h_nerve,
                       const Site& s_site, const HBasis& h_bar);

// matrix of the map H^n(|L|,M) -> H^n(|T|,M) induced by the projection
// functor T -> L over the same collection
FpMat projection_pullback(const NerveComplex& transporter_cx, const HBasis& h_t,
                          const NerveComplex& linking_cx, const HBasis& h_l);

}  // namespace fusionlab
