#include "fusionlab/fusion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fusionlab {

FusionSystem FusionSystem::build(GroupPtr g, int p, const Budget& budget) {
  FusionSystem f;
  f.g_ = g;
  f.p_ = p;
  f.budget_ = budget;
  f.sylow_ = sylow_subgroup(g, p);
  f.subs_ = all_subgroups(f.sylow_, p, budget.subgroup_cap);
  for (std::size_t i = 0; i < f.subs_.size(); ++i)
    f.index_[f.subs_[i].elems] = static_cast<int>(i);
  f.sylow_idx_ = f.index_[f.sylow_.elems];
  f.classify();
  f.automizers_.assign(f.subs_.size(), std::nullopt);
  return f;
}

int FusionSystem::index_of(const std::vector<int>& elems) const {
  auto it = index_.find(elems);
  return it == index_.end() ? -1 : it->second;
}

void FusionSystem::classify() {
  const int n = static_cast<int>(subs_.size());
  class_of_.assign(n, -1);
  flags_.assign(n, SubgroupFlags{});

  // F-conjugacy classes: G-orbit of each subgroup intersected with the lattice
  for (int i = 0; i < n; ++i) {
    if (class_of_[i] >= 0) continue;
    const int cls = static_cast<int>(classes_.size());
    std::set<std::vector<int>> orbit{subs_[i].elems};
    std::vector<Subgroup> work{subs_[i]};
    std::vector<int> members;
    std::size_t head = 0;
    while (head < work.size()) {
      Subgroup cur = work[head++];
      int idx = index_of(cur.elems);
      if (idx >= 0 && class_of_[idx] < 0) {
        class_of_[idx] = cls;
        members.push_back(idx);
      }
      for (int s : g_->generator_ids()) {
        Subgroup c = conjugate_subgroup(cur, s);
        if (orbit.insert(c.elems).second) work.push_back(std::move(c));
      }
    }
    std::sort(members.begin(), members.end());
    classes_.push_back(std::move(members));
  }

  // fully normalized members and canonical representatives
  std::vector<std::size_t> ns_order(n);
  Subgroup s_full = sylow_;
  for (int i = 0; i < n; ++i) ns_order[i] = normalizer_in(s_full, subs_[i]).order();
  class_rep_.assign(classes_.size(), -1);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::size_t best = 0;
    for (int idx : classes_[c]) best = std::max(best, ns_order[idx]);
    for (int idx : classes_[c]) {
      flags_[idx].fully_normalized = (ns_order[idx] == best);
      if (class_rep_[c] < 0 && ns_order[idx] == best) class_rep_[c] = idx;
    }
  }

  // centric: every class member satisfies C_S(Q) = Z(Q)
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    bool centric = true;
    for (int idx : classes_[c]) {
      Subgroup cs = centralizer_in(s_full, subs_[idx]);
      Subgroup z = center(subs_[idx]);
      if (!(cs.elems == z.elems)) { centric = false; break; }
    }
    for (int idx : classes_[c]) flags_[idx].centric = centric;
  }

  // quasicentric (realizable criterion) and radical, on representatives
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const int rep = class_rep_[c];
    Subgroup cg = centralizer(subs_[rep]);
    GroupPtr cgrp = materialize(cg);
    Residuals r = residuals(cgrp, p_);
    const bool quasicentric = (r.residual_p.order() % p_ != 0);
    for (int idx : classes_[c]) flags_[idx].quasicentric = quasicentric;

    const Automizer& a = automizer(rep);
    Residuals ra = residuals(a.aut, p_);
    bool radical = (ra.core_p.elems == a.inn.elems);
    for (int idx : classes_[c]) flags_[idx].radical = radical;
  }

  // essential: proper, centric, fully normalized, strongly p-embedded in Out
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const int rep = class_rep_[c];
    if (!flags_[rep].centric || subs_[rep].order() == sylow_.order()) continue;
    const Automizer& a = automizer(rep);
    bool ess = find_strongly_p_embedded(a.out.group, p_).has_value();
    if (!ess) continue;
    for (int idx : classes_[c])
      flags_[idx].essential = flags_[idx].fully_normalized;
  }
}

const Automizer& FusionSystem::automizer(int idx) const {
  if (automizers_.empty()) automizers_.assign(subs_.size(), std::nullopt);
  if (automizers_[idx]) return *automizers_[idx];
  const Subgroup& sub = subs_[idx];
  Subgroup ng = normalizer(sub);

  const int deg = static_cast<int>(sub.order());
  auto induced = [&](int g) {
    std::vector<std::uint16_t> img(deg);
    for (int i = 0; i < deg; ++i) {
      int y = g_->conj(g, sub.elems[i]);
      img[i] = static_cast<std::uint16_t>(
          std::lower_bound(sub.elems.begin(), sub.elems.end(), y) - sub.elems.begin());
    }
    return Perm(std::move(img));
  };

  Automizer a;
  std::vector<Perm> gens;
  for (int g : ng.gens) gens.push_back(induced(g));
  a.aut = PermGroup::from_generators(std::max(deg, 1), gens);

  // minimal transporter lift per automorphism
  a.lift.assign(a.aut->order(), -1);
  for (int g : ng.elems) {
    int id = a.aut->index_of(induced(g));
    if (a.lift[id] < 0) a.lift[id] = g;
  }

  std::vector<int> inn_gens;
  for (int x : sub.gens) inn_gens.push_back(a.aut->index_of(induced(x)));
  a.inn = subgroup_from_gens(a.aut, inn_gens);
  a.out = quotient_group(a.aut, a.inn);
  Residuals r = residuals(a.aut, p_);
  a.opprime_aut = r.residual_p_prime;
  a.p_residual_aut = r.residual_p;
  automizers_[idx] = std::move(a);
  return *automizers_[idx];
}

std::vector<int> FusionSystem::transporter(int p_idx, int q_idx) const {
  const Subgroup& p = subs_[p_idx];
  const Subgroup& q = subs_[q_idx];
  std::vector<int> out;
  for (std::size_t g = 0; g < g_->order(); ++g) {
    bool ok = true;
    for (int x : p.gens)
      if (!q.contains(g_->conj(static_cast<int>(g), x))) { ok = false; break; }
    if (ok) out.push_back(static_cast<int>(g));
  }
  return out;
}

std::vector<int> FusionSystem::hom_reps(int p_idx, int q_idx) const {
  const Subgroup& p = subs_[p_idx];
  std::map<std::vector<int>, int> by_map;  // image vector -> minimal lift
  for (int g : transporter(p_idx, q_idx)) {
    std::vector<int> img(p.elems.size());
    for (std::size_t i = 0; i < p.elems.size(); ++i) img[i] = g_->conj(g, p.elems[i]);
    by_map.emplace(std::move(img), g);  // first hit is minimal: g ascending
  }
  std::vector<int> reps;
  reps.reserve(by_map.size());
  for (auto& [img, g] : by_map) reps.push_back(g);
  std::sort(reps.begin(), reps.end());
  return reps;
}

Subgroup FusionSystem::centralizer_of(int idx) const { return centralizer(subs_[idx]); }
Subgroup FusionSystem::normalizer_of(int idx) const { return normalizer(subs_[idx]); }

std::vector<int> FusionSystem::centric_collection() const {
  std::vector<int> out;
  for (int i = 0; i < subgroup_count(); ++i)
    if (flags_[i].centric) out.push_back(i);
  return out;
}

std::vector<int> FusionSystem::quasicentric_collection() const {
  std::vector<int> out;
  for (int i = 0; i < subgroup_count(); ++i)
    if (flags_[i].quasicentric) out.push_back(i);
  return out;
}

std::vector<int> FusionSystem::centric_radical_upclosed() const {
  std::vector<char> keep(subs_.size(), 0);
  for (int i = 0; i < subgroup_count(); ++i)
    if (flags_[i].centric && flags_[i].radical) keep[i] = 1;
  // close upward
  for (int i = 0; i < subgroup_count(); ++i) {
    if (keep[i]) continue;
    for (int j = 0; j < subgroup_count(); ++j)
      if (keep[j] && subs_[i].contains_all(subs_[j])) { keep[i] = 1; break; }
  }
  std::vector<int> out;
  for (int i = 0; i < subgroup_count(); ++i)
    if (keep[i]) out.push_back(i);
  return out;
}

std::vector<int> FusionSystem::constrained_collection() const {
  Residuals r = residuals(g_, p_);
  std::vector<int> out;
  for (int i = 0; i < subgroup_count(); ++i)
    if (subs_[i].contains_all(r.core_p)) out.push_back(i);
  return out;
}

std::vector<int> FusionSystem::all_collection() const {
  std::vector<int> out(subs_.size());
  for (std::size_t i = 0; i < subs_.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

bool FusionSystem::collection_is_valid(const std::vector<int>& idxs) const {
  std::vector<char> in(subs_.size(), 0);
  for (int i : idxs) in[i] = 1;
  for (int i : idxs) {
    // closed under F-conjugacy
    for (int j : classes_[class_of_[i]])
      if (!in[j]) return false;
    // closed under overgroups
    for (int j = 0; j < subgroup_count(); ++j)
      if (!in[j] && subs_[j].contains_all(subs_[i])) return false;
  }
  return true;
}

std::vector<int> FusionSystem::essential_classes() const {
  std::vector<int> out;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (flags_[class_rep_[c]].essential) out.push_back(static_cast<int>(c));
  return out;
}

bool FusionSystem::normal_in_f(int idx) const {
  const Subgroup& q = subs_[idx];
  // normal in S
  for (int s : sylow_.gens)
    for (int x : q.gens)
      if (!q.contains(g_->conj(s, x))) return false;
  // every morphism extends to one fixing q setwise
  Subgroup qn = q;
  for (int p_idx = 0; p_idx < subgroup_count(); ++p_idx) {
    Subgroup c = centralizer(subs_[p_idx]);
    for (int g : hom_reps(p_idx, sylow_idx_)) {
      bool found = false;
      for (int cc : c.elems) {
        int h = g_->mul(g, cc);
        bool fixes = true;
        for (int x : qn.gens)
          if (!qn.contains(g_->conj(h, x))) { fixes = false; break; }
        if (fixes) { found = true; break; }
      }
      if (!found) return false;
    }
  }
  return true;
}

int FusionSystem::o_p_index() const {
  if (o_p_cache_) return *o_p_cache_;
  // candidates normal in S, largest first, canonical tie-break
  std::vector<int> cand;
  for (int i = 0; i < subgroup_count(); ++i) {
    bool normal_in_s = true;
    for (int s : sylow_.gens) {
      for (int x : subs_[i].gens)
        if (!subs_[i].contains(g_->conj(s, x))) { normal_in_s = false; break; }
      if (!normal_in_s) break;
    }
    if (normal_in_s) cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    if (subs_[a].order() != subs_[b].order()) return subs_[a].order() > subs_[b].order();
    return subs_[a].elems < subs_[b].elems;
  });
  for (int i : cand)
    if (normal_in_f(i)) { o_p_cache_ = i; return i; }
  o_p_cache_ = index_of({0});
  return *o_p_cache_;
}

bool FusionSystem::is_constrained() const { return flags_[o_p_index()].centric; }

Subgroup FusionSystem::hyp() const {
  std::vector<int> seed;
  for (int i = 0; i < subgroup_count(); ++i) {
    const Subgroup& p = subs_[i];
    const Automizer& a = automizer(i);
    for (int alpha : a.p_residual_aut.elems) {
      const Perm& ap = a.aut->element(alpha);
      for (std::size_t k = 0; k < p.elems.size(); ++k) {
        int g = p.elems[k];
        int image = p.elems[ap[k]];
        seed.push_back(g_->mul(g_->inv(g), image));
      }
    }
  }
  // normal closure inside S
  std::vector<int> closed = closure_ids(*g_, seed);
  while (true) {
    std::vector<int> bigger = closed;
    for (int s : sylow_.gens)
      for (int x : closed) bigger.push_back(g_->conj(s, x));
    bigger = closure_ids(*g_, bigger);
    if (bigger.size() == closed.size()) break;
    closed = std::move(bigger);
  }
  return subgroup_from_elems(g_, std::move(closed));
}

std::vector<int> FusionSystem::m_essential_classes(const GModule& m) const {
  Subgroup kernel = m.action_kernel();
  std::vector<int> out;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const int rep = class_rep_[c];
    const Subgroup& p = subs_[rep];
    Subgroup ng = normalizer(p);
    GroupPtr ngm = materialize(ng);

    // (i) nontrivial p-subgroup poset of N_G(P)/P empty or disconnected
    std::vector<int> p_local;
    for (int e : p.elems)
      p_local.push_back(static_cast<int>(
          std::lower_bound(ng.elems.begin(), ng.elems.end(), e) - ng.elems.begin()));
    Quotient w = quotient_group(ngm, subgroup_from_elems(ngm, p_local));
    if (!p_subgroup_poset_disconnected_or_empty(w.group, p_)) continue;

    // (ii) Z(P) cap K is a Sylow p-subgroup of C_G(P) cap K
    Subgroup z = center(p);
    Subgroup cg = centralizer(p);
    Subgroup zk = intersect(z, kernel);
    Subgroup ck = intersect(cg, kernel);
    if (zk.order() != p_part(ck.order(), p_)) continue;

    // (iii) O_p(N_G(P) / (P (C_G(P) cap K))) = 1
    Subgroup pck = join(subgroup_from_elems(g_, p.elems), ck);
    std::vector<int> pck_local;
    for (int e : pck.elems) {
      auto it = std::lower_bound(ng.elems.begin(), ng.elems.end(), e);
      if (it == ng.elems.end() || *it != e) { pck_local.clear(); break; }
      pck_local.push_back(static_cast<int>(it - ng.elems.begin()));
    }
    if (pck_local.empty() && pck.order() > 1) continue;  // not inside N_G(P): cannot happen
    Quotient w2 = quotient_group(ngm, subgroup_from_elems(ngm, pck_local));
    Residuals r2 = residuals(w2.group, p_);
    if (r2.core_p.order() != 1) continue;

    out.push_back(static_cast<int>(c));
  }
  return out;
}

// -- model ---------------------------------------------------------------------

ModelResult model_of(const FusionSystem& f) {
  if (!f.is_constrained()) throw not_constrained("fusion system is not constrained");
  const int q_idx = f.o_p_index();
  const Subgroup& q = f.subgroups()[q_idx];
  GroupPtr g = f.group();

  Subgroup ng = normalizer(q);
  Subgroup cg = centralizer(q);
  GroupPtr cgm = materialize(cg);
  Residuals rc = residuals(cgm, f.prime());
  // O^p(C_G(Q)) back in ambient ids
  std::vector<int> k_ambient;
  for (int lid : rc.residual_p.elems) k_ambient.push_back(cg.elems[lid]);

  GroupPtr ngm = materialize(ng);
  std::vector<int> k_local;
  for (int e : k_ambient)
    k_local.push_back(static_cast<int>(
        std::lower_bound(ng.elems.begin(), ng.elems.end(), e) - ng.elems.begin()));
  Quotient model_q = quotient_group(ngm, subgroup_from_elems(ngm, k_local));

  ModelResult res;
  res.model = model_q.group;
  res.sylow_order_matches =
      p_part(res.model->order(), f.prime()) == f.sylow().order();
  {
    Residuals rm = residuals(res.model, f.prime());
    Subgroup cm = centralizer(rm.core_p);
    res.centralizer_contained = rm.core_p.contains_all(cm);
  }
  {
    FusionSystem fm = FusionSystem::build(res.model, f.prime());
    auto signature = [](const FusionSystem& fs) {
      std::vector<std::vector<std::int64_t>> sig;
      for (std::size_t c = 0; c < fs.classes().size(); ++c) {
        int rep = fs.class_rep(static_cast<int>(c));
        const SubgroupFlags& fl = fs.flags(rep);
        sig.push_back({static_cast<std::int64_t>(fs.subgroups()[rep].order()),
                       static_cast<std::int64_t>(fs.classes()[c].size()), fl.centric,
                       fl.radical, fl.quasicentric, fl.essential,
                       static_cast<std::int64_t>(fs.automizer(rep).aut->order())});
      }
      std::sort(sig.begin(), sig.end());
      return sig;
    };
    res.fusion_signature_matches = signature(f) == signature(fm);
  }
  return res;
}

// -- generated fusion closure ----------------------------------------------------

GeneratedFusion::GeneratedFusion(const FusionSystem& f,
                                 const std::map<int, std::vector<std::vector<int>>>& seeds,
                                 std::uint64_t cap)
    : f_(f) {
  const int n = f.subgroup_count();
  maps_.assign(n, {});

  // subgroup positions and maximal-subgroup lists
  std::vector<std::vector<int>> maximal(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> below;
    for (int j = 0; j < n; ++j)
      if (j != i && f.subgroups()[i].contains_all(f.subgroups()[j])) below.push_back(j);
    for (int j : below) {
      bool is_max = true;
      for (int k : below)
        if (k != j && f.subgroups()[k].contains_all(f.subgroups()[j])) { is_max = false; break; }
      if (is_max) maximal[i].push_back(j);
    }
  }

  // map storage keyed by source; worklist closure
  std::vector<std::pair<int, std::vector<int>>> work;
  std::map<std::vector<int>, std::vector<std::pair<int, std::vector<int>>>> by_image;

  auto image_subgroup = [&](const std::vector<int>& img) {
    std::vector<int> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  };
  auto add = [&](int src, std::vector<int> img) {
    if (maps_[src].insert(img).second) {
      ++total_;
      if (static_cast<std::uint64_t>(total_) > cap)
        throw closure_cap_exceeded("generated fusion closure exceeds cap");
      work.emplace_back(src, img);
      by_image[image_subgroup(img)].emplace_back(src, std::move(img));
    }
  };

  // inclusions
  for (int i = 0; i < n; ++i) add(i, f.subgroups()[i].elems);
  for (auto& [src, vecs] : seeds)
    for (auto& v : vecs) add(src, v);

  std::size_t head = 0;
  while (head < work.size()) {
    auto [src, img] = work[head++];
    const Subgroup& p = f.subgroups()[src];
    // restrictions to maximal subgroups
    for (int j : maximal[src]) {
      const Subgroup& pj = f.subgroups()[j];
      std::vector<int> rimg(pj.elems.size());
      for (std::size_t k = 0; k < pj.elems.size(); ++k) {
        auto it = std::lower_bound(p.elems.begin(), p.elems.end(), pj.elems[k]);
        rimg[k] = img[it - p.elems.begin()];
      }
      add(j, std::move(rimg));
    }
    // post-compose: maps with source equal to this image
    std::vector<int> isg = image_subgroup(img);
    int img_idx = f.index_of(isg);
    if (img_idx >= 0) {
      const Subgroup& q = f.subgroups()[img_idx];
      // copy to avoid iterator invalidation during add()
      std::vector<std::vector<int>> psis(maps_[img_idx].begin(), maps_[img_idx].end());
      for (const auto& psi : psis) {
        std::vector<int> comp(img.size());
        for (std::size_t k = 0; k < img.size(); ++k) {
          auto it = std::lower_bound(q.elems.begin(), q.elems.end(), img[k]);
          comp[k] = psi[it - q.elems.begin()];
        }
        add(src, std::move(comp));
      }
      // pre-compose: maps whose image equals this source
      std::vector<std::pair<int, std::vector<int>>> phis = by_image[p.elems];
      for (const auto& [psrc, pimg] : phis) {
        std::vector<int> comp(pimg.size());
        for (std::size_t k = 0; k < pimg.size(); ++k) {
          auto it = std::lower_bound(p.elems.begin(), p.elems.end(), pimg[k]);
          comp[k] = img[it - p.elems.begin()];
        }
        add(psrc, std::move(comp));
      }
    }
  }
}

std::int64_t GeneratedFusion::hom_size(int p_idx, int q_idx) const {
  const Subgroup& q = f_.subgroups()[q_idx];
  std::int64_t count = 0;
  for (const auto& img : maps_[p_idx]) {
    bool inside = true;
    for (int e : img)
      if (!q.contains(e)) { inside = false; break; }
    if (inside) ++count;
  }
  return count;
}

const std::set<std::vector<int>>& GeneratedFusion::maps_from(int p_idx) const {
  return maps_[p_idx];
}

OpPrimeFusion opprime_fusion_data(const FusionSystem& f) {
  OpPrimeFusion o;
  const int n = f.subgroup_count();
  for (int i = 0; i < n; ++i) {
    const Automizer& a = f.automizer(i);
    const Subgroup& p = f.subgroups()[i];
    std::vector<std::vector<int>> vecs;
    for (int alpha : a.opprime_aut.elems) {
      const Perm& ap = a.aut->element(alpha);
      std::vector<int> img(p.elems.size());
      for (std::size_t k = 0; k < p.elems.size(); ++k) img[k] = p.elems[ap[k]];
      vecs.push_back(std::move(img));
    }
    o.seeds[i] = std::move(vecs);
  }
  const Automizer& as = f.automizer(f.sylow_index());
  o.aut_opprime_sylow = as.opprime_aut;
  std::vector<int> out_elems;
  for (int alpha : as.opprime_aut.elems) out_elems.push_back(as.out.hom[alpha]);
  std::sort(out_elems.begin(), out_elems.end());
  out_elems.erase(std::unique(out_elems.begin(), out_elems.end()), out_elems.end());
  o.out0 = subgroup_from_elems(as.out.group, std::move(out_elems));
  return o;
}

GeneratedFusion opprime_closure(const FusionSystem& f, std::uint64_t cap) {
  OpPrimeFusion o = opprime_fusion_data(f);
  return GeneratedFusion(f, o.seeds, cap);
}

bool verify_p_prime_generation(const FusionSystem& f, std::uint64_t cap) {
  OpPrimeFusion o = opprime_fusion_data(f);
  // add all of Aut_F(S) to the seeds
  const Automizer& as = f.automizer(f.sylow_index());
  const Subgroup& s = f.sylow();
  auto& sylow_seeds = o.seeds[f.sylow_index()];
  for (std::size_t alpha = 0; alpha < as.aut->order(); ++alpha) {
    const Perm& ap = as.aut->element(static_cast<int>(alpha));
    std::vector<int> img(s.elems.size());
    for (std::size_t k = 0; k < s.elems.size(); ++k) img[k] = s.elems[ap[k]];
    sylow_seeds.push_back(std::move(img));
  }
  GeneratedFusion closure(f, o.seeds, cap);
  for (int i = 0; i < f.subgroup_count(); ++i)
    for (int j = 0; j < f.subgroup_count(); ++j) {
      std::int64_t expected = static_cast<std::int64_t>(f.hom_reps(i, j).size());
      if (closure.hom_size(i, j) != expected) return false;
    }
  return true;
}

}  // namespace fusionlab
