#include "fusionlab/stable.hpp"

#include <algorithm>

namespace fusionlab {

StableWorkspace::StableWorkspace(const FusionSystem& f, const GModule& mod, Budget budget)
    : f_(&f), mod_(mod), budget_(budget) {}

SiteCohomology& StableWorkspace::site(int idx) {
  auto it = sites_.find(idx);
  if (it != sites_.end()) return it->second;
  return sites_.emplace(idx, site_cohomology(mod_, f_->subgroups()[idx], budget_)).first->second;
}

std::vector<int> all_family(const FusionSystem& f) {
  std::vector<int> out(f.classes().size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = static_cast<int>(c);
  return out;
}

std::vector<int> centric_family(const FusionSystem& f) {
  std::vector<int> out;
  for (std::size_t c = 0; c < f.classes().size(); ++c)
    if (f.flags(f.class_rep(static_cast<int>(c))).centric) out.push_back(static_cast<int>(c));
  return out;
}

std::vector<int> grodal_family(const FusionSystem& f, const GModule& m) {
  std::vector<int> out;
  std::vector<int> mess = f.m_essential_classes(m);
  for (int c : mess)
    if (f.flags(f.class_rep(c)).radical) out.push_back(c);
  int s_cls = f.class_of(f.sylow_index());
  if (std::find(out.begin(), out.end(), s_cls) == out.end()) out.push_back(s_cls);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// rows (kappa_g - Res) for one subgroup and lift, stacked into an echelon in
// H^n(S,M) coordinates
void add_condition(Echelon& ech, const Fp& fp, const FpMat& kappa, const FpMat& res) {
  for (int r = 0; r < kappa.rows; ++r) {
    SparseVec row;
    for (int c = 0; c < kappa.cols; ++c) {
      std::uint8_t v = fp.sub(kappa.at(r, c), res.at(r, c));
      if (v) row.emplace_back(c, v);
    }
    ech.add_row(row);
  }
}

std::vector<std::vector<std::uint8_t>> kernel_as_dense(Echelon& ech, std::int64_t ncols) {
  ech.finalize_rref();
  auto ker = ech.kernel_basis();
  std::vector<std::vector<std::uint8_t>> out;
  for (auto& k : ker) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(ncols), 0);
    for (auto& [c, val] : k) v[c] = val;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

StableSubspace stable_subspace(StableWorkspace& ws, int n,
                               const std::vector<int>& family_classes,
                               const StableOptions& opts) {
  const FusionSystem& f = ws.fusion();
  StableSubspace out;
  out.degree = n;

  if (opts.require_compatible && !ws.module().is_trivial_action()) {
    std::vector<Subgroup> coll;
    for (int c : family_classes)
      for (int idx : f.classes()[c]) coll.push_back(f.subgroups()[idx]);
    if (pilocal_incompatibility(ws.module(), f.prime(), coll))
      throw incompatible_action("stability conditions are lift-dependent for this module");
  }

  SiteCohomology& s_sc = ws.sylow_site();
  const HBasis* hs = nullptr;
  try {
    hs = &s_sc.calc->h_basis(n);
  } catch (const Error& e) {
    if (e.code() != "CellCapExceeded") throw;
    out.cells = s_sc.cx->census(n);
    return out;
  }

  Fp fp(ws.module().prime());
  Echelon cond(ws.module().prime(), hs->dim);
  const int s_idx = f.sylow_index();
  for (int cls : family_classes) {
    std::vector<int> members;
    if (opts.full_pairs)
      members = f.classes()[cls];
    else
      members = {f.class_rep(cls)};
    for (int p_idx : members) {
      SiteCohomology& p_sc = ws.site(p_idx);
      const HBasis* hp = nullptr;
      try {
        hp = &p_sc.calc->h_basis(n);
      } catch (const Error& e) {
        if (e.code() != "CellCapExceeded") throw;
        out.cells = p_sc.cx->census(n);
        return out;
      }
      if (hp->dim == 0) continue;  // conditions land in a zero space
      FpMat res = conjugation_pullback(ws.module(), s_sc.site, *hs, p_sc.site, *hp, 0);
      // transporter-coset lifts
      for (int g : f.hom_reps(p_idx, s_idx)) {
        if (g == 0) continue;  // the inclusion itself: kappa = Res
        FpMat kap = conjugation_pullback(ws.module(), s_sc.site, *hs, p_sc.site, *hp, g);
        add_condition(cond, fp, kap, res);
      }
      // centralizer twists: conditions per element follow from coset reps
      // plus generators of C_G(P) by functoriality of the pullbacks
      Subgroup cg = centralizer(f.subgroups()[p_idx]);
      for (int c : cg.gens) {
        if (c == 0) continue;
        FpMat kap = conjugation_pullback(ws.module(), s_sc.site, *hs, p_sc.site, *hp, c);
        add_condition(cond, fp, kap, res);
      }
    }
  }
  out.basis = kernel_as_dense(cond, hs->dim);
  out.dim = static_cast<std::int64_t>(out.basis.size());
  return out;
}

OpPrimeStable opprime_stable_and_fixed(StableWorkspace& ws, int n) {
  const FusionSystem& f = ws.fusion();
  OpPrimeStable out;
  out.stable.degree = out.fixed.degree = n;

  SiteCohomology& s_sc = ws.sylow_site();
  const HBasis* hs = nullptr;
  try {
    hs = &s_sc.calc->h_basis(n);
  } catch (const Error& e) {
    if (e.code() != "CellCapExceeded") throw;
    out.stable.cells = out.fixed.cells = s_sc.cx->census(n);
    return out;
  }

  Fp fp(ws.module().prime());
  Echelon cond(ws.module().prime(), hs->dim);

  // stability under restrictions of the O^{p'} automizer seeds to centric
  // subgroups (one condition per Out-class of the seed, minimal lifts)
  for (int q_idx = 0; q_idx < f.subgroup_count(); ++q_idx) {
    const Automizer& a = f.automizer(q_idx);
    std::map<int, int> out_reps;  // out element -> minimal aut element
    for (int alpha : a.opprime_aut.elems) {
      int o = a.out.hom[alpha];
      if (!out_reps.count(o)) out_reps[o] = alpha;
    }
    const Subgroup& q = f.subgroups()[q_idx];
    for (auto& [o, alpha] : out_reps) {
      if (o == 0) continue;  // inner class: trivial conditions
      int g = a.lift[alpha];
      for (int p_idx = 0; p_idx < f.subgroup_count(); ++p_idx) {
        if (!f.flags(p_idx).centric) continue;
        if (!q.contains_all(f.subgroups()[p_idx])) continue;
        SiteCohomology& p_sc = ws.site(p_idx);
        const HBasis* hp = nullptr;
        try {
          hp = &p_sc.calc->h_basis(n);
        } catch (const Error& e) {
          if (e.code() != "CellCapExceeded") throw;
          out.stable.cells = out.fixed.cells = p_sc.cx->census(n);
          return out;
        }
        if (hp->dim == 0) continue;
        FpMat res = conjugation_pullback(ws.module(), s_sc.site, *hs, p_sc.site, *hp, 0);
        FpMat kap = conjugation_pullback(ws.module(), s_sc.site, *hs, p_sc.site, *hp, g);
        add_condition(cond, fp, kap, res);
      }
    }
  }
  out.stable.basis = kernel_as_dense(cond, hs->dim);
  out.stable.dim = static_cast<std::int64_t>(out.stable.basis.size());

  // fixed points of Aut_F(S)/O^{p'}(Aut_F(S)) on the stable subspace
  const Automizer& as = f.automizer(f.sylow_index());
  std::vector<int> coset_reps;
  {
    std::set<std::vector<int>> seen;
    for (std::size_t alpha = 0; alpha < as.aut->order(); ++alpha) {
      // coset alpha * O^{p'}(Aut) as a sorted element list
      std::vector<int> coset;
      for (int x : as.opprime_aut.elems) coset.push_back(as.aut->mul(static_cast<int>(alpha), x));
      std::sort(coset.begin(), coset.end());
      if (seen.insert(coset).second) coset_reps.push_back(coset.front());
    }
  }
  const std::size_t k = out.stable.basis.size();
  if (k == 0) {
    out.fixed.dim = 0;
    return out;
  }
  Echelon fixcond(ws.module().prime(), static_cast<std::int64_t>(k));
  for (int alpha : coset_reps) {
    if (alpha == 0) continue;
    int g = as.lift[alpha];
    FpMat kap = conjugation_pullback(ws.module(), s_sc.site, *hs, s_sc.site, *hs, g);
    // rows: (kap - I) * basis, in basis coordinates of the stable subspace?
    // Work in ambient H^n coordinates: condition vectors (kap - I) b_j must
    // vanish, solved for combinations of basis vectors.
    for (int r = 0; r < kap.rows; ++r) {
      SparseVec row;
      for (std::size_t j = 0; j < k; ++j) {
        int acc = 0;
        for (int c = 0; c < kap.cols; ++c) acc += kap.at(r, c) * out.stable.basis[j][c];
        acc += (fp.p - 1) * out.stable.basis[j][r];  // minus identity
        std::uint8_t v = static_cast<std::uint8_t>(acc % fp.p);
        if (v) row.emplace_back(static_cast<std::int64_t>(j), v);
      }
      fixcond.add_row(row);
    }
  }
  auto combo = kernel_as_dense(fixcond, static_cast<std::int64_t>(k));
  // map combinations back to H^n coordinates and canonicalize
  Echelon canon(ws.module().prime(), hs->dim);
  for (const auto& cvec : combo) {
    SparseVec v;
    for (std::int64_t c = 0; c < hs->dim; ++c) {
      int acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += cvec[j] * out.stable.basis[j][c];
      std::uint8_t val = static_cast<std::uint8_t>(acc % fp.p);
      if (val) v.emplace_back(c, val);
    }
    canon.add_row(v);
  }
  canon.finalize_rref();
  for (const auto& row : canon.rows()) {
    std::vector<std::uint8_t> dense(static_cast<std::size_t>(hs->dim), 0);
    for (auto& [c, val] : row) dense[c] = val;
    out.fixed.basis.push_back(std::move(dense));
  }
  out.fixed.dim = static_cast<std::int64_t>(out.fixed.basis.size());
  return out;
}

bool subspace_contained(int p, const std::vector<std::vector<std::uint8_t>>& a,
                        const std::vector<std::vector<std::uint8_t>>& b) {
  if (a.empty()) return true;
  const std::int64_t ncols = static_cast<std::int64_t>(a.front().size());
  Echelon ech(p, ncols);
  for (const auto& v : b) {
    SparseVec sv;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) sv.emplace_back(static_cast<std::int64_t>(i), v[i]);
    ech.add_row(sv);
  }
  for (const auto& v : a) {
    SparseVec sv;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) sv.emplace_back(static_cast<std::int64_t>(i), v[i]);
    if (!ech.reduce(sv).zero) return false;
  }
  return true;
}

FamilyComparison family_equality(StableWorkspace& ws, int n, const std::vector<int>& family_a,
                                 const std::vector<int>& family_b) {
  FamilyComparison out;
  out.first = stable_subspace(ws, n, family_a);
  out.second = stable_subspace(ws, n, family_b);
  if (out.first.skipped() || out.second.skipped()) {
    out.verdict = FamilyVerdict::Skipped;
    return out;
  }
  const int p = ws.module().prime();
  bool ab = subspace_contained(p, out.first.basis, out.second.basis);
  bool ba = subspace_contained(p, out.second.basis, out.first.basis);
  out.verdict = ab && ba   ? FamilyVerdict::Equal
                : ab       ? FamilyVerdict::FirstInSecond
                : ba       ? FamilyVerdict::SecondInFirst
                           : FamilyVerdict::Incomparable;
  return out;
}

FpMat group_to_sylow_restriction(StableWorkspace& ws, ComplexCohomology& group_calc, int n) {
  const GModule& mod = ws.module();
  SiteCohomology& s_sc = ws.sylow_site();
  const HBasis& hs = s_sc.calc->h_basis(n);
  const HBasis& hg = group_calc.h_basis(n);
  Site g_site;
  g_site.ambient = mod.group();
  g_site.sub = full_subgroup(mod.group());
  g_site.local = mod.group();
  g_site.mod = mod;
  g_site.from_ambient.resize(mod.group()->order());
  for (std::size_t i = 0; i < mod.group()->order(); ++i)
    g_site.from_ambient[i] = static_cast<int>(i);
  return conjugation_pullback(mod, g_site, hg, s_sc.site, hs, 0);
}

}  // namespace fusionlab
