#include "fusionlab/checks.hpp"

#include <algorithm>
#include <chrono>

namespace fusionlab {

namespace {

using Clock = std::chrono::steady_clock;

std::string instance_string(const CheckSpec& s) {
  return s.group_name + "/p=" + std::to_string(s.prime) + "/" + s.module_name;
}

std::vector<int> collection_by_name(const FusionSystem& f, const std::string& name) {
  if (name == "centric") return f.centric_collection();
  if (name == "cr") return f.centric_radical_upclosed();
  if (name == "constrained") return f.constrained_collection();
  if (name == "all") return f.all_collection();
  if (name == "quasicentric") return f.quasicentric_collection();
  throw invalid_collection("unknown collection name: " + name);
}

void finish_verdict(CheckReport& rep, bool hypotheses_ok) {
  if (!hypotheses_ok) {
    rep.verdict = "hypothesis-failed";
    return;
  }
  bool any_skip = false, any_bad = false, any_run = false;
  for (const auto& d : rep.degrees) {
    if (d.skipped) {
      any_skip = true;
      continue;
    }
    any_run = true;
    if (!d.equal || !d.contained) any_bad = true;
  }
  if (any_bad)
    rep.verdict = "theorem-violated";
  else if (any_skip || !any_run)
    rep.verdict = "budget-skipped";
  else
    rep.verdict = "pass";
}

DegreeLine compare_line(int n, std::int64_t lhs, std::int64_t rhs, const std::string& label) {
  DegreeLine d;
  d.n = n;
  d.lhs = lhs;
  d.rhs = rhs;
  d.equal = (lhs == rhs);
  d.label = label;
  return d;
}

DegreeLine skipped_line(int n, std::uint64_t cells, const std::string& label) {
  DegreeLine d;
  d.n = n;
  d.skipped = true;
  d.cells = cells;
  d.label = label;
  return d;
}

// image of the group G in Aut(M): the quotient by the action kernel
Quotient action_image(const GModule& m) {
  return quotient_group(m.group(), m.action_kernel());
}

// -- individual checks -----------------------------------------------------------

CheckReport check_cartan_eilenberg(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  StableWorkspace ws(f, s.module, s.budget);
  auto cx = std::make_shared<BarComplex>(s.group, s.module);
  ComplexCohomology group_calc(cx, s.budget);

  for (int n = 0; n <= s.max_degree; ++n) {
    DegreeDim lhs = group_calc.h_dim(n);
    StableSubspace rhs = stable_subspace(ws, n, all_family(f));
    if (lhs.skipped() || rhs.skipped()) {
      rep.degrees.push_back(skipped_line(n, std::max(lhs.cells, rhs.cells), "H^n(G) vs stable(all)"));
      continue;
    }
    DegreeLine d = compare_line(n, *lhs.dim, rhs.dim, "H^n(G) vs stable(all)");
    // restriction from H^n(G,M) must be injective with image the stable space
    FpMat res = group_to_sylow_restriction(ws, group_calc, n);
    Fp fp(s.prime);
    bool injective = fp_rank(fp, res) == res.cols;
    std::vector<std::vector<std::uint8_t>> image;
    for (int c = 0; c < res.cols; ++c) {
      std::vector<std::uint8_t> v(res.rows);
      for (int r = 0; r < res.rows; ++r) v[r] = res.at(r, c);
      image.push_back(std::move(v));
    }
    bool img_in_stable = res.rows == 0 || subspace_contained(s.prime, image, rhs.basis);
    bool stable_in_img = res.rows == 0 || subspace_contained(s.prime, rhs.basis, image);
    d.contained = injective && img_in_stable && stable_in_img;
    rep.degrees.push_back(d);
  }
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_theorem_a(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  GModule triv = GModule::trivial(s.group, s.prime, 1);
  StableWorkspace ws(f, triv, s.budget);
  NerveCohomology nc = nerve_cohomology(f, triv, f.centric_collection(), false, s.budget);
  Fp fp(s.prime);

  for (int n = 0; n <= s.max_degree; ++n) {
    DegreeDim lhs = nc.calc->h_dim(n);
    StableSubspace rhs = stable_subspace(ws, n, centric_family(f));
    if (lhs.skipped() || rhs.skipped()) {
      rep.degrees.push_back(skipped_line(n, std::max(lhs.cells, rhs.cells), "nerve(T^c) vs stable(centric)"));
      continue;
    }
    DegreeLine d = compare_line(n, *lhs.dim, rhs.dim, "nerve(T^c) vs stable(centric)");
    // the comparison map must be an isomorphism onto the stable subspace
    const HBasis& hn = nc.calc->h_basis(n);
    SiteCohomology& ssc = ws.sylow_site();
    const HBasis& hb = ssc.calc->h_basis(n);
    FpMat delta = delta_comparison(*nc.cx, hn, ssc.site, hb);
    bool inj = fp_rank(fp, delta) == delta.cols;
    std::vector<std::vector<std::uint8_t>> image;
    for (int c = 0; c < delta.cols; ++c) {
      std::vector<std::uint8_t> v(delta.rows);
      for (int r = 0; r < delta.rows; ++r) v[r] = delta.at(r, c);
      image.push_back(std::move(v));
    }
    bool onto = subspace_contained(s.prime, image, rhs.basis) &&
                subspace_contained(s.prime, rhs.basis, image);
    d.contained = inj && onto;
    rep.degrees.push_back(d);
  }
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_constrained(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  bool hyp_ok = f.is_constrained();
  if (hyp_ok) {
    ModelResult mr = model_of(f);
    rep.notes.push_back("model order " + std::to_string(mr.model->order()));
    hyp_ok = mr.sylow_order_matches && mr.centralizer_contained && mr.fusion_signature_matches;
    if (!hyp_ok) rep.notes.push_back("model verification failed");
  } else {
    rep.notes.push_back("fusion system is not constrained");
  }
  if (hyp_ok) {
    StableWorkspace ws(f, s.module, s.budget);
    auto cx = std::make_shared<BarComplex>(s.group, s.module);
    ComplexCohomology group_calc(cx, s.budget);
    NerveCohomology nc =
        nerve_cohomology(f, s.module, f.constrained_collection(), false, s.budget);
    for (int n = 0; n <= s.max_degree; ++n) {
      DegreeDim hg = group_calc.h_dim(n);
      StableSubspace st = stable_subspace(ws, n, centric_family(f));
      DegreeDim hn = nc.calc->h_dim(n);
      if (hg.skipped() || st.skipped() || hn.skipped()) {
        rep.degrees.push_back(
            skipped_line(n, std::max({hg.cells, st.cells, hn.cells}), "three-way"));
        continue;
      }
      DegreeLine d = compare_line(n, *hg.dim, st.dim, "H^n(G) vs stable(centric)");
      d.contained = (*hn.dim == *hg.dim);
      if (!d.contained)
        rep.notes.push_back("nerve over the constrained collection differs at n=" +
                            std::to_string(n));
      rep.degrees.push_back(d);
    }
  }
  finish_verdict(rep, hyp_ok);
  return rep;
}

CheckReport check_coprime_or_pnilpotent(const CheckSpec& s, bool pnilpotent) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  Quotient im = action_image(s.module);
  bool hyp_ok;
  if (pnilpotent) {
    // extension of a p-group by a p'-group: the p'-core has p-power index
    Residuals r = residuals(im.group, s.prime);
    hyp_ok = p_part(im.group->order() / r.core_p_prime.order(), s.prime) ==
             im.group->order() / r.core_p_prime.order();
    rep.notes.push_back("action image order " + std::to_string(im.group->order()));
  } else {
    hyp_ok = (im.group->order() % s.prime != 0);
    rep.notes.push_back("action image order " + std::to_string(im.group->order()));
  }
  if (hyp_ok) {
    StableWorkspace ws(f, s.module, s.budget);
    NerveCohomology nc = nerve_cohomology(f, s.module, f.centric_collection(), false, s.budget);
    for (int n = 0; n <= s.max_degree; ++n) {
      DegreeDim lhs = nc.calc->h_dim(n);
      StableSubspace rhs = stable_subspace(ws, n, centric_family(f));
      if (lhs.skipped() || rhs.skipped())
        rep.degrees.push_back(skipped_line(n, std::max(lhs.cells, rhs.cells), "nerve vs stable"));
      else
        rep.degrees.push_back(compare_line(n, *lhs.dim, rhs.dim, "nerve(T^c) vs stable(centric)"));
    }
  }
  finish_verdict(rep, hyp_ok);
  return rep;
}

CheckReport check_psolvable(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  Quotient im = action_image(s.module);
  bool hyp_ok = is_p_solvable(im.group, s.prime);
  rep.notes.push_back("action image order " + std::to_string(im.group->order()) +
                      (hyp_ok ? ", p-solvable" : ", not p-solvable"));
  if (hyp_ok) {
    auto cx = std::make_shared<BarComplex>(s.group, s.module);
    ComplexCohomology group_calc(cx, s.budget);
    NerveCohomology nc = nerve_cohomology(f, s.module, f.centric_collection(), false, s.budget);
    for (int n = 0; n <= s.max_degree; ++n) {
      DegreeDim lhs = nc.calc->h_dim(n);
      DegreeDim rhs = group_calc.h_dim(n);
      if (lhs.skipped() || rhs.skipped())
        rep.degrees.push_back(
            skipped_line(n, std::max(lhs.cells, rhs.cells), "nerve vs H^n(G)"));
      else
        rep.degrees.push_back(compare_line(n, *lhs.dim, *rhs.dim, "nerve(T^c) vs H^n(G)"));
    }
  }
  finish_verdict(rep, hyp_ok);
  return rep;
}

CheckReport check_grodal(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  StableWorkspace ws(f, s.module, s.budget);
  std::vector<int> fam_b = grodal_family(f, s.module);
  rep.notes.push_back("reduced family classes: " + std::to_string(fam_b.size()));
  for (int n = 0; n <= s.max_degree; ++n) {
    FamilyComparison cmp = family_equality(ws, n, all_family(f), fam_b);
    if (cmp.verdict == FamilyVerdict::Skipped) {
      rep.degrees.push_back(
          skipped_line(n, std::max(cmp.first.cells, cmp.second.cells), "family equality"));
      continue;
    }
    DegreeLine d = compare_line(n, cmp.first.dim, cmp.second.dim, "full vs reduced family");
    d.contained = (cmp.verdict == FamilyVerdict::Equal);
    rep.degrees.push_back(d);
  }
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_fixed_point_lemma(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  StableWorkspace ws(f, s.module, s.budget);
  for (int n = 0; n <= s.max_degree; ++n) {
    StableSubspace lhs = stable_subspace(ws, n, centric_family(f));
    OpPrimeStable rhs = opprime_stable_and_fixed(ws, n);
    if (lhs.skipped() || rhs.fixed.skipped()) {
      rep.degrees.push_back(
          skipped_line(n, std::max(lhs.cells, rhs.fixed.cells), "stable vs fixed points"));
      continue;
    }
    DegreeLine d = compare_line(n, lhs.dim, rhs.fixed.dim, "stable(F) vs fixed(O^{p'})");
    d.contained = subspace_contained(s.prime, lhs.basis, rhs.fixed.basis) &&
                  subspace_contained(s.prime, rhs.fixed.basis, lhs.basis);
    rep.degrees.push_back(d);
  }
  finish_verdict(rep, true);
  return rep;
}

// structural description of essentials of F_{S0 wr Cp}(G0 wr Cp)
CheckReport check_wreath(const CheckSpec& s) {
  CheckReport rep;
  GroupPtr g0 = s.group;  // the base group
  const int p = s.prime;
  WreathProduct w = wreath_product_cp(g0, p);
  FusionSystem f = FusionSystem::build(w.group, p, s.budget);
  FusionSystem f0 = FusionSystem::build(g0, p, s.budget);

  GroupPtr base_grp = materialize(w.base);
  FusionSystem fbase = FusionSystem::build(base_grp, p, s.budget);

  const int d0 = g0->degree();
  auto project_to_copy = [&](int amb, int copy) -> int {
    const Perm& perm = w.group->element(amb);
    std::vector<std::uint16_t> img(d0);
    for (int i = 0; i < d0; ++i) {
      int q = perm[copy * d0 + i];
      if (q < copy * d0 || q >= (copy + 1) * d0) return -1;
      img[i] = static_cast<std::uint16_t>(q - copy * d0);
    }
    return g0->index_of(Perm(std::move(img)));
  };

  bool all_classified = true;
  int e1 = 0, e2 = 0;
  std::vector<int> f0_essentials = f0.essential_classes();
  for (int cls : f.essential_classes()) {
    int rep_idx = f.class_rep(cls);
    const Subgroup& pe = f.subgroups()[rep_idx];
    bool inside_base = w.base.contains_all(pe);
    bool classified = false;
    if (inside_base) {
      // type E1: the base Sylow product itself or an essential of the base
      Subgroup base_syl = sylow_subgroup(base_grp, p);
      std::vector<int> local;
      for (int e : pe.elems)
        local.push_back(static_cast<int>(
            std::lower_bound(w.base.elems.begin(), w.base.elems.end(), e) - w.base.elems.begin()));
      std::sort(local.begin(), local.end());
      int bidx = fbase.index_of(local);
      bool is_base_sylow = false;
      {
        Subgroup sw = f.sylow();
        Subgroup sp = intersect(sw, w.base);
        is_base_sylow = (pe.elems == sp.elems);
      }
      if (is_base_sylow || (bidx >= 0 && fbase.flags(bidx).essential)) {
        classified = true;
        ++e1;
      }
    } else {
      // type E2: some F-conjugate is Q wr Cp with Q essential in F0
      for (int member : f.classes()[cls]) {
        const Subgroup& pm = f.subgroups()[member];
        Subgroup inter = intersect(pm, w.base);
        if (inter.order() == pm.order()) continue;
        if (pm.order() != inter.order() * static_cast<std::size_t>(p)) continue;
        // the base part must be a full product Q x ... x Q of one subgroup Q
        std::vector<std::vector<int>> proj(p);
        bool ok = true;
        for (int e : inter.elems) {
          for (int c = 0; c < p && ok; ++c) {
            int q = project_to_copy(e, c);
            if (q < 0) ok = false;
            else proj[c].push_back(q);
          }
          if (!ok) break;
        }
        if (!ok) continue;
        for (int c = 0; c < p; ++c) {
          std::sort(proj[c].begin(), proj[c].end());
          proj[c].erase(std::unique(proj[c].begin(), proj[c].end()), proj[c].end());
        }
        for (int c = 1; c < p; ++c)
          if (proj[c] != proj[0]) ok = false;
        if (!ok) continue;
        std::uint64_t qsize = proj[0].size();
        std::uint64_t full = 1;
        for (int c = 0; c < p; ++c) full *= qsize;
        if (inter.order() != full) continue;
        int q_idx = f0.index_of(proj[0]);
        if (q_idx < 0 || !f0.flags(q_idx).essential) continue;
        // normalizer quotients agree
        Subgroup np = normalizer(pm);
        Subgroup nq = normalizer(f0.subgroups()[q_idx]);
        if (np.order() / pm.order() != nq.order() / f0.subgroups()[q_idx].order()) continue;
        classified = true;
        ++e2;
        break;
      }
    }
    if (!classified) all_classified = false;
  }
  DegreeLine d;
  d.n = 0;
  d.lhs = static_cast<std::int64_t>(f.essential_classes().size());
  d.rhs = e1 + e2;
  d.equal = all_classified && (d.lhs == d.rhs);
  d.label = "essential classes of E1/E2 shape";
  rep.degrees.push_back(d);
  rep.notes.push_back("E1 classes: " + std::to_string(e1) + ", E2 classes: " + std::to_string(e2));
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_shapiro(const CheckSpec& s) {
  CheckReport rep;
  GroupPtr g0 = s.group;
  const int p = s.prime;
  WreathProduct w = wreath_product_cp(g0, p);

  // Sylow containing the diagonal Sylow: generated by per-copy Sylows and the cycle
  Subgroup s0 = sylow_subgroup(g0, p);
  std::vector<int> sw_gens;
  for (int k = 0; k < p; ++k)
    for (int gid : s0.gens) sw_gens.push_back(w.copy_embeddings[k].images[gid]);
  sw_gens.push_back(w.cycle);
  Subgroup sw = subgroup_from_gens(w.group, sw_gens);
  GroupPtr swm = materialize(sw);

  // diagonal Sylow inside sw
  std::vector<int> diag_local;
  for (int gid : s0.elems) {
    int amb = w.diagonal_embedding.images[gid];
    diag_local.push_back(static_cast<int>(
        std::lower_bound(sw.elems.begin(), sw.elems.end(), amb) - sw.elems.begin()));
  }
  std::sort(diag_local.begin(), diag_local.end());
  Subgroup diag_sw = subgroup_from_elems(swm, diag_local);

  // coefficients on the diagonal Sylow (trivial of the requested dimension)
  const int d0 = std::max(1, s.module.dim());
  GModule m0_s0 = GModule::trivial(materialize(diag_sw), p, d0);
  GModule coind = coinduce(m0_s0, diag_sw);
  {
    DegreeLine d;
    d.n = 0;
    d.lhs = coind.dim();
    d.rhs = static_cast<std::int64_t>(sw.order() / s0.order()) * d0;
    d.equal = d.lhs == d.rhs;
    d.label = "coinduced dimension = index * dim";
    rep.degrees.push_back(d);
  }

  // Shapiro: H^n(S, coInd) vs H^n(S0, M0)
  auto coind_calc = ComplexCohomology(std::make_shared<BarComplex>(swm, coind), s.budget);
  GroupPtr s0m = materialize(s0);
  auto s0_calc =
      ComplexCohomology(std::make_shared<BarComplex>(s0m, GModule::trivial(s0m, p, d0)), s.budget);
  for (int n = 0; n <= s.max_degree; ++n) {
    DegreeDim lhs = coind_calc.h_dim(n);
    DegreeDim rhs = s0_calc.h_dim(n);
    if (lhs.skipped() || rhs.skipped())
      rep.degrees.push_back(skipped_line(n, std::max(lhs.cells, rhs.cells), "Shapiro"));
    else
      rep.degrees.push_back(compare_line(n, *lhs.dim, *rhs.dim, "Shapiro"));
  }

  // endpoint comparison: stable elements with coinduced coefficients against
  // the transporter nerve, at whatever degrees fit the budget
  {
    GModule m0_diag = GModule::trivial(materialize(w.diagonal), p, d0);
    GModule n_full = coinduce(m0_diag, w.diagonal);
    FusionSystem f = FusionSystem::build(w.group, p, s.budget);
    StableWorkspace ws(f, n_full, s.budget);
    NerveCohomology nc =
        nerve_cohomology(f, n_full, f.centric_radical_upclosed(), false, s.budget);
    for (int n = 0; n <= s.max_degree; ++n) {
      DegreeDim lhs = nc.calc->h_dim(n);
      StableSubspace rhs = stable_subspace(ws, n, centric_family(f));
      if (lhs.skipped() || rhs.skipped())
        rep.degrees.push_back(
            skipped_line(n, std::max(lhs.cells, rhs.cells), "endpoint"));
      else
        rep.degrees.push_back(
            compare_line(n, *lhs.dim, rhs.dim, "nerve(T^cr, coInd) vs stable"));
    }
  }

  // restriction-of-induction dimension identity over a normal subgroup
  Subgroup h = (normalizer(s0).order() == g0->order())
                   ? subgroup_from_elems(w.group, intersect(sw, w.base).elems)
                   : w.base;
  GroupPtr hm = materialize(h);
  GModule mh = GModule::trivial(hm, p, d0);
  GModule ind = induce(mh, h);
  GModule res_ind = restrict_module(ind, h);
  auto lhs_calc = ComplexCohomology(std::make_shared<BarComplex>(hm, res_ind), s.budget);
  auto rhs_calc = ComplexCohomology(std::make_shared<BarComplex>(hm, mh), s.budget);
  const std::int64_t index = static_cast<std::int64_t>(w.group->order() / h.order());
  for (int n = 0; n <= s.max_degree; ++n) {
    DegreeDim lhs = lhs_calc.h_dim(n);
    DegreeDim rhs = rhs_calc.h_dim(n);
    if (lhs.skipped() || rhs.skipped())
      rep.degrees.push_back(skipped_line(n, std::max(lhs.cells, rhs.cells), "Res-Ind"));
    else
      rep.degrees.push_back(
          compare_line(n, *lhs.dim, index * *rhs.dim, "dim H^n(H,Res Ind) = [G:H] dim H^n(H)"));
  }
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_homofunctor(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  std::vector<int> coll = collection_by_name(f, s.collection);
  bool hyp_ok = true;
  try {
    NerveCohomology nt = nerve_cohomology(f, s.module, coll, false, s.budget);
    NerveCohomology nl = nerve_cohomology(f, s.module, coll, true, s.budget);
    Fp fp(s.prime);
    for (int n = 0; n <= s.max_degree; ++n) {
      DegreeDim lt = nt.calc->h_dim(n);
      DegreeDim ll = nl.calc->h_dim(n);
      if (lt.skipped() || ll.skipped()) {
        rep.degrees.push_back(skipped_line(n, std::max(lt.cells, ll.cells), "nerve(T) vs nerve(L)"));
        continue;
      }
      DegreeLine d = compare_line(n, *lt.dim, *ll.dim, "nerve(T) vs nerve(L)");
      if (d.equal && *lt.dim > 0) {
        const HBasis& ht = nt.calc->h_basis(n);
        const HBasis& hl = nl.calc->h_basis(n);
        FpMat m = projection_pullback(*nt.cx, ht, *nl.cx, hl);
        d.contained = (fp_rank(fp, m) == m.cols) && (m.rows == m.cols);
      }
      rep.degrees.push_back(d);
    }
  } catch (const Error& e) {
    if (e.code() == "IncompatibleAction") {
      hyp_ok = false;
      rep.notes.push_back("module incompatible with the linking quotient");
    } else {
      throw;
    }
  }
  finish_verdict(rep, hyp_ok);
  return rep;
}

CheckReport check_collection_independence(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  std::vector<std::pair<std::string, std::vector<int>>> colls;
  colls.emplace_back("centric", f.centric_collection());
  colls.emplace_back("cr", f.centric_radical_upclosed());
  if (f.is_constrained()) colls.emplace_back("constrained", f.constrained_collection());
  // the realization-space transport needs the coefficients to be constant on
  // linking classes over each collection; drop collections where they are not
  {
    std::vector<std::pair<std::string, std::vector<int>>> usable;
    for (auto& [nm, c] : colls) {
      std::vector<Subgroup> subs;
      for (int i : c) subs.push_back(f.subgroups()[i]);
      if (pilocal_incompatibility(s.module, s.prime, subs))
        rep.notes.push_back("collection " + nm + " dropped: incompatible coefficients");
      else
        usable.emplace_back(nm, c);
    }
    colls = std::move(usable);
  }
  if (colls.size() < 2) {
    rep.notes.push_back("fewer than two compatible collections");
    rep.verdict = "pass";
    return rep;
  }
  std::vector<NerveCohomology> nerves;
  for (auto& [nm, c] : colls) nerves.push_back(nerve_cohomology(f, s.module, c, false, s.budget));
  for (int n = 0; n <= s.max_degree; ++n) {
    std::vector<std::int64_t> dims;
    std::uint64_t cells = 0;
    bool skip = false;
    for (auto& nc : nerves) {
      DegreeDim dd = nc.calc->h_dim(n);
      cells = std::max(cells, dd.cells);
      if (dd.skipped()) skip = true;
      else dims.push_back(*dd.dim);
    }
    if (skip) {
      rep.degrees.push_back(skipped_line(n, cells, "collection independence"));
      continue;
    }
    bool all_equal = std::all_of(dims.begin(), dims.end(),
                                 [&](std::int64_t v) { return v == dims[0]; });
    DegreeLine d = compare_line(n, dims.front(), dims.back(), "collections agree");
    d.equal = all_equal;
    rep.degrees.push_back(d);
  }
  rep.notes.push_back(std::to_string(colls.size()) + " collections compared");
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_subpessential(const CheckSpec& s) {
  CheckReport rep;
  FusionSystem f = FusionSystem::build(s.group, s.prime, s.budget);
  int checked = 0, nonvacuous = 0;
  bool ok = true;
  for (const Subgroup& h : index_p_normal_subgroups(s.group, s.prime)) {
    Subgroup s1 = intersect(f.sylow(), h);
    if (p_part(h.order(), s.prime) != s1.order()) continue;  // S cap H not Sylow in H
    GroupPtr hm = materialize(h);
    FusionSystem fh = FusionSystem::build(hm, s.prime, s.budget);
    for (int cls : f.essential_classes()) {
      for (int idx : f.classes()[cls]) {
        const Subgroup& pe = f.subgroups()[idx];
        if (!(s1.contains_all(pe)) || pe.order() == s1.order()) continue;
        ++nonvacuous;
        // map into the subgroup fusion system
        std::vector<int> local;
        for (int e : pe.elems)
          local.push_back(static_cast<int>(
              std::lower_bound(h.elems.begin(), h.elems.end(), e) - h.elems.begin()));
        std::sort(local.begin(), local.end());
        int hidx = fh.index_of(local);
        bool is_ess = false;
        if (hidx >= 0) {
          int hcls = fh.class_of(hidx);
          is_ess = fh.flags(fh.class_rep(hcls)).essential;
        }
        if (!is_ess) ok = false;
      }
    }
    ++checked;
  }
  DegreeLine d;
  d.n = 0;
  d.lhs = nonvacuous;
  d.rhs = nonvacuous;
  d.equal = ok;
  d.label = "essentials inside index-p subgroups stay essential";
  rep.degrees.push_back(d);
  rep.notes.push_back(std::to_string(checked) + " index-p normal subgroups, " +
                      std::to_string(nonvacuous) + " nonvacuous cases");
  finish_verdict(rep, true);
  return rep;
}

CheckReport check_product_essentials(const CheckSpec& s) {
  CheckReport rep;
  if (s.group_name.rfind("prod:", 0) != 0) {
    rep.notes.push_back("group is not a named direct product");
    finish_verdict(rep, false);
    return rep;
  }
  auto rest = s.group_name.substr(5);
  auto colon = rest.find(':');
  GroupPtr a = named_group(rest.substr(0, colon));
  GroupPtr b = named_group(rest.substr(colon + 1));
  DirectProduct dp = direct_product(a, b);
  FusionSystem f = FusionSystem::build(dp.group, s.prime, s.budget);
  FusionSystem fa = FusionSystem::build(a, s.prime, s.budget);
  FusionSystem fb = FusionSystem::build(b, s.prime, s.budget);

  // predicted essentials: Q1 x S2 with Q1 essential, or S1 x Q2
  std::set<std::vector<int>> predicted;
  Subgroup sa = sylow_subgroup(a, s.prime);
  Subgroup sb = sylow_subgroup(b, s.prime);
  auto embed = [&](const Subgroup& xa, const Subgroup& xb) {
    std::vector<int> gens;
    for (int g : xa.gens) gens.push_back(dp.emb1.images[g]);
    for (int g : xb.gens) gens.push_back(dp.emb2.images[g]);
    return subgroup_from_gens(dp.group, gens);
  };
  for (int cls : fa.essential_classes())
    predicted.insert(embed(fa.subgroups()[fa.class_rep(cls)], sb).elems);
  for (int cls : fb.essential_classes())
    predicted.insert(embed(sa, fb.subgroups()[fb.class_rep(cls)]).elems);

  // computed essentials, mapped to predicted shape through class members
  int matched = 0;
  bool ok = true;
  std::vector<int> ess = f.essential_classes();
  for (int cls : ess) {
    bool hit = false;
    for (int idx : f.classes()[cls])
      if (predicted.count(f.subgroups()[idx].elems)) { hit = true; break; }
    if (hit) ++matched;
    else ok = false;
  }
  DegreeLine d;
  d.n = 0;
  d.lhs = static_cast<std::int64_t>(ess.size());
  d.rhs = static_cast<std::int64_t>(predicted.size());
  d.equal = ok && ess.size() == predicted.size();
  d.label = "essential classes match the product rule";
  rep.degrees.push_back(d);
  rep.notes.push_back("matched " + std::to_string(matched) + " classes");
  finish_verdict(rep, true);
  return rep;
}

}  // namespace

CheckSpec make_spec(const std::string& check, const std::string& group_name, int prime,
                    const std::string& module_name, int max_degree,
                    const std::string& collection) {
  CheckSpec s;
  s.check = check;
  s.group_name = group_name;
  s.group = named_group(group_name);
  s.prime = prime;
  s.module_name = module_name;
  s.module = named_module(s.group, group_name, prime, module_name);
  s.max_degree = max_degree;
  s.collection = collection;
  return s;
}

CheckReport run_check(const CheckSpec& spec) {
  auto t0 = Clock::now();
  CheckReport rep;
  if (spec.check == "cartan-eilenberg") rep = check_cartan_eilenberg(spec);
  else if (spec.check == "theorem-a") rep = check_theorem_a(spec);
  else if (spec.check == "constrained") rep = check_constrained(spec);
  else if (spec.check == "coprime") rep = check_coprime_or_pnilpotent(spec, false);
  else if (spec.check == "pnilpotent") rep = check_coprime_or_pnilpotent(spec, true);
  else if (spec.check == "psolvable") rep = check_psolvable(spec);
  else if (spec.check == "grodal") rep = check_grodal(spec);
  else if (spec.check == "fixed-point-lemma") rep = check_fixed_point_lemma(spec);
  else if (spec.check == "wreath") rep = check_wreath(spec);
  else if (spec.check == "shapiro") rep = check_shapiro(spec);
  else if (spec.check == "homofunctor") rep = check_homofunctor(spec);
  else if (spec.check == "collection-independence") rep = check_collection_independence(spec);
  else if (spec.check == "subpessential") rep = check_subpessential(spec);
  else if (spec.check == "product-essentials") rep = check_product_essentials(spec);
  else throw Error("UnknownCheck", "unknown check name: " + spec.check);
  rep.check = spec.check;
  rep.instance = instance_string(spec);
  for (const auto& d : rep.degrees) rep.cells = std::max(rep.cells, d.cells);
  rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

SuiteReport run_suite(const std::vector<CheckSpec>& manifest) {
  SuiteReport out;
  for (const auto& spec : manifest) out.checks.push_back(run_check(spec));
  return out;
}

std::vector<CheckSpec> builtin_manifest() {
  std::vector<CheckSpec> m;
  // the corpus: (group, prime, twisted module)
  const struct {
    const char* g;
    int p;
    const char* tw;
  } corpus[] = {
      {"S3", 2, "natural2"}, {"S3", 3, "sign"},     {"S4", 2, "quo6"},
      {"A4", 2, "a4c3"},     {"D8", 2, "unip2"},    {"wreath:S3:3", 3, "sign"},
      {"SL23", 3, "adjoint3"},
  };
  for (const auto& c : corpus) {
    m.push_back(make_spec("cartan-eilenberg", c.g, c.p, "trivial:1", 3));
    m.push_back(make_spec("cartan-eilenberg", c.g, c.p, c.tw, 3));
    m.push_back(make_spec("fixed-point-lemma", c.g, c.p, c.tw, 3));
  }
  m.push_back(make_spec("theorem-a", "S3", 3, "trivial:1", 2));
  m.push_back(make_spec("theorem-a", "S4", 2, "trivial:1", 2));
  m.push_back(make_spec("theorem-a", "A4", 2, "trivial:1", 2));
  m.push_back(make_spec("constrained", "S4", 2, "quo6", 2));
  m.push_back(make_spec("constrained", "S3", 3, "sign", 2));
  m.push_back(make_spec("coprime", "S3", 3, "sign", 3));
  m.push_back(make_spec("pnilpotent", "S4", 2, "quo6", 2));
  m.push_back(make_spec("pnilpotent", "D8", 2, "unip2", 3));
  m.push_back(make_spec("psolvable", "S4", 2, "quo6", 2));
  m.push_back(make_spec("grodal", "S3", 3, "sign", 3));
  m.push_back(make_spec("grodal", "S4", 2, "trivial:1", 3));
  m.push_back(make_spec("grodal", "S4", 2, "quo6", 3));
  m.push_back(make_spec("wreath", "S3", 3, "trivial:1", 2));
  m.push_back(make_spec("shapiro", "S3", 3, "trivial:1", 2));
  m.push_back(make_spec("homofunctor", "S4", 2, "trivial:1", 2));
  m.push_back(make_spec("homofunctor", "S3", 3, "sign", 2));
  m.push_back(make_spec("collection-independence", "S4", 2, "trivial:1", 2));
  m.push_back(make_spec("collection-independence", "S3", 3, "sign", 2));
  m.push_back(make_spec("subpessential", "S4", 2, "trivial:1", 2));
  m.push_back(make_spec("product-essentials", "prod:S4:S3", 2, "trivial:1", 2));
  return m;
}

}  // namespace fusionlab
