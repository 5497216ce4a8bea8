#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "fusionlab/config.hpp"
#include "fusionlab/gmodule.hpp"

namespace fusionlab {

// Degree-wise result: a computed dimension, or a budget skip with the census
// that triggered it.
struct DegreeDim {
  std::optional<std::int64_t> dim;
  std::uint64_t cells = 0;
  bool skipped() const { return !dim.has_value(); }
};

// Abstract normalized cochain complex over F_p. Row r of d^n is the r-th
// coordinate functional of the degree-(n+1) space applied to d of a degree-n
// cochain; rows stream in canonical order.
class CochainComplex {
 public:
  virtual ~CochainComplex() = default;
  virtual int prime() const = 0;
  virtual std::int64_t dim(int n) const = 0;
  // upper bound for the nonzero entries of d^n (used for the cell gate)
  virtual std::uint64_t census(int n) const = 0;
  // stream the rows of d^n whose partition class (by the trailing face
  // coordinate) is `part`; part = 0, nparts = 1 streams everything. Return
  // false from the sink to abort.
  virtual void stream_rows_subset(int n, int part, int nparts,
                                  const std::function<bool(const SparseVec&)>& sink) const = 0;
  // stream columns of d^n (one per degree-n coordinate)
  virtual void stream_cols(int n, const std::function<bool(const SparseVec&)>& sink) const = 0;
  // number of partition classes rows split into at degree n
  virtual int row_parts(int n) const = 0;

  void stream_rows(int n, const std::function<bool(const SparseVec&)>& sink) const {
    stream_rows_subset(n, 0, 1, sink);
  }
};

// Normalized bar complex of a finite group with coefficients in a module over
// the same group. dim C^n = (|P|-1)^n * dim M.
class BarComplex : public CochainComplex {
 public:
  BarComplex(GroupPtr grp, GModule mod);
  int prime() const override { return mod_.prime(); }
  std::int64_t dim(int n) const override;
  std::uint64_t census(int n) const override;
  void stream_rows_subset(int n, int part, int nparts,
                          const std::function<bool(const SparseVec&)>& sink) const override;
  void stream_cols(int n, const std::function<bool(const SparseVec&)>& sink) const override;
  int row_parts(int) const override { return std::max<int>(1, static_cast<int>(grp_->order()) - 1); }

  const GroupPtr& group() const { return grp_; }
  const GModule& module() const { return mod_; }
  // index of the cochain coordinate at (tuple of non-identity element ids, v)
  std::int64_t coord(const std::vector<int>& tuple, int v) const;

 private:
  GroupPtr grp_;
  GModule mod_;
};

// Canonical cohomology basis in one degree: representative cocycles plus an
// augmented echelon that expresses any cocycle in their span modulo
// coboundaries.
struct HBasis {
  int degree = 0;
  int prime = 2;
  std::int64_t dim = 0;
  std::int64_t space_dim = 0;  // dim C^n
  std::vector<std::vector<std::uint8_t>> reps;  // dense cochain vectors
  std::shared_ptr<Echelon> span;                // image rows + rep rows (aug), RREF

  // coefficients of a cocycle in the representative basis; throws if the
  // vector is not a cocycle modulo the stored span
  std::vector<std::uint8_t> coordinates(const std::vector<std::uint8_t>& cocycle) const;
  std::vector<std::uint8_t> coordinates_sparse(const SparseVec& cocycle) const;
};

// Per-complex calculator with rank caching and budget gates.
class ComplexCohomology {
 public:
  ComplexCohomology(std::shared_ptr<const CochainComplex> cx, Budget budget);

  DegreeDim h_dim(int n);
  // throws CellCapExceeded when over budget
  const HBasis& h_basis(int n);
  const CochainComplex& complex() const { return *cx_; }
  const Budget& budget() const { return budget_; }

 private:
  // verified cocycle space: kernel of a structured row subset, checked
  // against every row by a streaming pass and escalated until exact
  const std::vector<SparseVec>& cocycles(int n);  // gated
  std::int64_t rank_d(int n) { return cx_->dim(n) - static_cast<std::int64_t>(cocycles(n).size()); }

  std::shared_ptr<const CochainComplex> cx_;
  Budget budget_;
  std::map<int, std::vector<SparseVec>> kernel_;
  std::map<int, HBasis> basis_;
};

// -- convenience entry points -------------------------------------------------

// H^0..H^{n_max}(P, M) dimensions with budget gates (H^0 is the fixed space)
std::vector<DegreeDim> bar_cohomology_dims(GroupPtr grp, const GModule& mod, int n_max,
                                           const Budget& budget);

// A subgroup site prepared for cohomology, with a cached calculator.
struct SiteCohomology {
  Site site;
  std::shared_ptr<BarComplex> cx;
  std::shared_ptr<ComplexCohomology> calc;
};
SiteCohomology site_cohomology(const GModule& ambient_mod, const Subgroup& sub,
                               const Budget& budget);

// Matrix of the pullback H^n(S,M) -> H^n(P,M) along conjugation by the
// ambient element g (g P g^{-1} <= S required); g = 0 gives plain
// restriction. Columns are indexed by hs reps, rows by hp reps.
FpMat conjugation_pullback(const GModule& ambient_mod, const Site& s_site, const HBasis& hs,
                           const Site& p_site, const HBasis& hp, int g);

// Fusion-level kappa: refuses (IncompatibleAction) unless every element of
// O^p(C_G(P)) acts as the identity on M, which makes the map independent of
// the transporter lift.
FpMat kappa_map(const GModule& ambient_mod, int p, const Site& s_site, const HBasis& hs,
                const Site& p_site, const HBasis& hp, int g);

}  // namespace fusionlab
