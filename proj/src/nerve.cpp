#include "fusionlab/nerve.hpp"

#include <algorithm>

namespace fusionlab {

// -- FiniteCategory ---------------------------------------------------------------

FiniteCategory FiniteCategory::build(const FusionSystem& f, std::vector<int> collection,
                                     bool linking) {
  std::sort(collection.begin(), collection.end());
  collection.erase(std::unique(collection.begin(), collection.end()), collection.end());
  if (!f.collection_is_valid(collection))
    throw invalid_collection("collection is not closed under F-conjugacy and overgroups");

  FiniteCategory c;
  c.f_ = &f;
  c.linking_ = linking;
  c.objects_ = collection;

  const GroupPtr& g = f.group();
  const int nobj = static_cast<int>(collection.size());

  // canonical coset representatives per object
  c.coset_rep_.assign(nobj, {});
  for (int o = 0; o < nobj; ++o) {
    if (!linking) continue;
    Subgroup cg = centralizer(f.subgroups()[collection[o]]);
    GroupPtr cgm = materialize(cg);
    Residuals r = residuals(cgm, f.prime());
    std::vector<int> kernel;  // O^p(C_G(P)) in ambient ids
    for (int lid : r.residual_p.elems) kernel.push_back(cg.elems[lid]);
    auto& rep = c.coset_rep_[o];
    rep.assign(g->order(), -1);
    for (std::size_t e = 0; e < g->order(); ++e) {
      if (rep[e] >= 0) continue;
      int mn = static_cast<int>(g->order());
      std::vector<int> coset;
      for (int k : kernel) {
        int x = g->mul(static_cast<int>(e), k);
        coset.push_back(x);
        mn = std::min(mn, x);
      }
      for (int x : coset) rep[x] = mn;
    }
  }

  c.from_.assign(nobj, {});
  c.into_.assign(nobj, {});
  for (int src = 0; src < nobj; ++src) {
    for (int tgt = 0; tgt < nobj; ++tgt) {
      std::vector<int> labels;
      for (int t : f.transporter(collection[src], collection[tgt]))
        labels.push_back(linking ? c.coset_rep_[src][t] : t);
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      for (int l : labels) {
        int id = static_cast<int>(c.mors_.size());
        c.mors_.push_back(Morphism{src, tgt, l});
        c.by_pair_[{src, tgt}][l] = id;
        c.from_[src].push_back(id);
        c.into_[tgt].push_back(id);
      }
    }
  }
  c.identity_.assign(c.mors_.size(), 0);
  for (int o = 0; o < nobj; ++o) {
    int l = linking ? c.coset_rep_[o][0] : 0;
    c.identity_[c.by_pair_[{o, o}][l]] = 1;
  }
  return c;
}

FiniteCategory FiniteCategory::transporter(const FusionSystem& f, std::vector<int> collection) {
  return build(f, std::move(collection), false);
}

FiniteCategory FiniteCategory::linking(const FusionSystem& f, std::vector<int> collection) {
  return build(f, std::move(collection), true);
}

int FiniteCategory::object_of_subgroup(int sub_idx) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), sub_idx);
  if (it == objects_.end() || *it != sub_idx) return -1;
  return static_cast<int>(it - objects_.begin());
}

int FiniteCategory::morphism_id(int src_obj, int tgt_obj, int label) const {
  auto pit = by_pair_.find({src_obj, tgt_obj});
  if (pit == by_pair_.end()) return -1;
  auto it = pit->second.find(label);
  return it == pit->second.end() ? -1 : it->second;
}

std::int64_t FiniteCategory::hom_size(int src_obj, int tgt_obj) const {
  auto pit = by_pair_.find({src_obj, tgt_obj});
  return pit == by_pair_.end() ? 0 : static_cast<std::int64_t>(pit->second.size());
}

int FiniteCategory::identity_at(int obj) const {
  int l = linking_ ? coset_rep_[obj][0] : 0;
  return morphism_id(obj, obj, l);
}

int FiniteCategory::rep_label(int src_obj, int g) const {
  return linking_ ? coset_rep_[src_obj][g] : g;
}

int FiniteCategory::compose(int a, int b) const {
  const Morphism& ma = mors_[a];
  const Morphism& mb = mors_[b];
  const GroupPtr& g = f_->group();
  int label = rep_label(mb.src, g->mul(ma.label, mb.label));
  return morphism_id(mb.src, ma.tgt, label);
}

// -- NerveComplex ------------------------------------------------------------------

NerveComplex::NerveComplex(const FiniteCategory& cat, const GModule& ambient_mod)
    : cat_(&cat), mod_(ambient_mod) {}

void NerveComplex::ensure_chains(int k) const {
  while (static_cast<int>(chains_.size()) <= k) {
    const int deg = static_cast<int>(chains_.size());
    std::vector<std::vector<int>> cur;
    if (deg == 0) {
      // degree-0 chains are the objects, encoded as 1-vectors {~obj}
      for (int o = 0; o < cat_->object_count(); ++o) cur.push_back({~o});
    } else if (deg == 1) {
      for (int m = 0; m < cat_->morphism_count(); ++m)
        if (!cat_->is_identity(m)) cur.push_back({m});
    } else {
      const auto& prev = chains_[deg - 1];
      for (const auto& ch : prev) {
        // extend on the right: f_deg : x_deg -> x_{deg-1} = src of the last
        int tail_src = cat_->morphism(ch.back()).src;
        for (int m : cat_->morphisms_into(tail_src)) {
          if (cat_->is_identity(m)) continue;
          std::vector<int> ext = ch;
          ext.push_back(m);
          cur.push_back(std::move(ext));
        }
      }
    }
    std::unordered_map<std::vector<int>, std::int64_t, VecHash> idx;
    idx.reserve(cur.size() * 2);
    for (std::size_t i = 0; i < cur.size(); ++i) idx[cur[i]] = static_cast<std::int64_t>(i);
    chains_.push_back(std::move(cur));
    chain_idx_.push_back(std::move(idx));
  }
}

std::int64_t NerveComplex::chain_count(int k) const {
  ensure_chains(k);
  return static_cast<std::int64_t>(chains_[k].size());
}

std::int64_t NerveComplex::chain_index(const std::vector<int>& chain) const {
  int k = static_cast<int>(chain.size());
  ensure_chains(k);
  auto it = chain_idx_[k].find(chain);
  return it == chain_idx_[k].end() ? -1 : it->second;
}

int NerveComplex::coeff_dim() const { return mod_.dim(); }

const std::vector<int>& NerveComplex::chain_at(std::int64_t idx, int k) const {
  ensure_chains(k);
  return chains_[k][static_cast<std::size_t>(idx)];
}

std::int64_t NerveComplex::dim(int n) const { return chain_count(n) * mod_.dim(); }

std::uint64_t NerveComplex::census(int n) const {
  // gate bound before materializing degree-(n+1) chains: extend counts
  ensure_chains(n);
  std::uint64_t next = 0;
  if (n == 0) {
    for (int m = 0; m < cat_->morphism_count(); ++m)
      if (!cat_->is_identity(m)) ++next;
  } else {
    // chains extend by non-identity morphisms into their tail source
    std::vector<std::uint64_t> into_count(cat_->object_count(), 0);
    for (int m = 0; m < cat_->morphism_count(); ++m)
      if (!cat_->is_identity(m)) ++into_count[cat_->morphism(m).tgt];
    for (const auto& ch : chains_[n]) next += into_count[cat_->morphism(ch.back()).src];
  }
  return next * static_cast<std::uint64_t>(mod_.dim() + n + 2);
}

int NerveComplex::row_parts(int) const {
  int nonid = 0;
  for (int m = 0; m < cat_->morphism_count(); ++m)
    if (!cat_->is_identity(m)) ++nonid;
  return std::max(1, nonid);
}

void NerveComplex::stream_rows_subset(int n, int part, int nparts,
                                      const std::function<bool(const SparseVec&)>& sink) const {
  ensure_chains(n);
  ensure_chains(n + 1);
  const int d = mod_.dim();
  Fp fp(mod_.prime());
  SparseVec row;
  std::vector<int> face;
  // map non-identity morphism ids to a dense numbering for partitioning
  std::vector<int> part_of(cat_->morphism_count(), 0);
  {
    int k = 0;
    for (int m = 0; m < cat_->morphism_count(); ++m)
      if (!cat_->is_identity(m)) part_of[m] = k++ % std::max(1, nparts);
  }
  for (const auto& ch : chains_[n + 1]) {
    if (nparts > 1 && part_of[ch.back()] != part) continue;
    // face indices
    const std::int64_t f0 = [&] {
      if (n == 0) return static_cast<std::int64_t>(cat_->morphism(ch[0]).src);
      face.assign(ch.begin() + 1, ch.end());
      return chain_index(face);
    }();
    const std::int64_t flast = [&] {
      if (n == 0) return static_cast<std::int64_t>(cat_->morphism(ch[0]).tgt);
      face.assign(ch.begin(), ch.end() - 1);
      return chain_index(face);
    }();
    std::vector<std::int64_t> fmid(n, -1);
    for (int i = 1; i <= n; ++i) {
      int comp = cat_->compose(ch[i - 1], ch[i]);
      if (cat_->is_identity(comp)) continue;
      face.clear();
      for (int k = 0; k < i - 1; ++k) face.push_back(ch[k]);
      face.push_back(comp);
      for (int k = i + 1; k <= n; ++k) face.push_back(ch[k]);
      fmid[i - 1] = chain_index(face);
    }
    const FpMat& act = mod_.action(cat_->morphism(ch[0]).label);
    for (int v = 0; v < d; ++v) {
      row.clear();
      for (int w = 0; w < d; ++w) {
        std::uint8_t a = act.at(v, w);
        if (a) row.emplace_back(f0 * d + w, a);
      }
      std::uint8_t sgn = 1;
      for (int i = 1; i <= n; ++i) {
        sgn = fp.neg(sgn);
        if (fmid[i - 1] >= 0) row.emplace_back(fmid[i - 1] * d + v, sgn);
      }
      sgn = fp.neg(sgn);
      row.emplace_back(flast * d + v, sgn);
      std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec out;
      for (auto& [c, val] : row) {
        if (!out.empty() && out.back().first == c)
          out.back().second = fp.add(out.back().second, val);
        else
          out.emplace_back(c, val);
      }
      out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
                out.end());
      if (!sink(out)) return;
    }
  }
}

void NerveComplex::stream_cols(int n, const std::function<bool(const SparseVec&)>& sink) const {
  ensure_chains(n);
  ensure_chains(n + 1);
  const int d = mod_.dim();
  Fp fp(mod_.prime());
  const std::uint8_t sgn_last = (n + 1) % 2 ? fp.neg(1) : 1;

  // factorizations of each non-identity morphism into non-identity pairs
  std::vector<std::vector<std::pair<int, int>>> factors(cat_->morphism_count());
  for (int a = 0; a < cat_->morphism_count(); ++a) {
    if (cat_->is_identity(a)) continue;
    const Morphism& ma = cat_->morphism(a);
    for (int b : cat_->morphisms_into(ma.src)) {
      if (cat_->is_identity(b)) continue;
      int comp = cat_->compose(a, b);
      if (comp >= 0 && !cat_->is_identity(comp)) factors[comp].emplace_back(a, b);
    }
  }

  SparseVec col;
  std::vector<int> parent;
  const auto& chains_n = chains_[n];
  for (std::size_t ci = 0; ci < chains_n.size(); ++ci) {
    const auto& ch = chains_n[ci];
    const bool is_object_chain = (n == 0);
    const int head_obj = is_object_chain ? ~ch[0] : cat_->morphism(ch[0]).tgt;
    const int tail_obj = is_object_chain ? ~ch[0] : cat_->morphism(ch.back()).src;
    for (int v = 0; v < d; ++v) {
      col.clear();
      // face-0 parents: prepend a non-identity morphism with src = head object
      for (int m : cat_->morphisms_from(head_obj)) {
        if (cat_->is_identity(m)) continue;
        parent.clear();
        parent.push_back(m);
        if (!is_object_chain) parent.insert(parent.end(), ch.begin(), ch.end());
        std::int64_t r = chain_index(parent);
        const FpMat& act = mod_.action(cat_->morphism(m).label);
        for (int w = 0; w < d; ++w) {
          std::uint8_t a = act.at(w, v);
          if (a) col.emplace_back(r * d + w, a);
        }
      }
      // middle-face parents: factor chain entry i
      std::uint8_t sgn = 1;
      for (int i = 1; i <= n; ++i) {
        sgn = fp.neg(sgn);
        for (auto& [a, b] : factors[ch[i - 1]]) {
          parent.clear();
          for (int k = 0; k < i - 1; ++k) parent.push_back(ch[k]);
          parent.push_back(a);
          parent.push_back(b);
          for (int k = i; k < n; ++k) parent.push_back(ch[k]);
          std::int64_t r = chain_index(parent);
          if (r >= 0) col.emplace_back(r * d + v, sgn);
        }
      }
      // last-face parents: append a non-identity morphism into the tail object
      for (int m : cat_->morphisms_into(tail_obj)) {
        if (cat_->is_identity(m)) continue;
        parent.clear();
        if (!is_object_chain) parent.insert(parent.end(), ch.begin(), ch.end());
        parent.push_back(m);
        std::int64_t r = chain_index(parent);
        col.emplace_back(r * d + v, sgn_last);
      }
      std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec out;
      for (auto& [c, val] : col) {
        if (!out.empty() && out.back().first == c)
          out.back().second = fp.add(out.back().second, val);
        else
          out.emplace_back(c, val);
      }
      out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
                out.end());
      if (!sink(out)) return;
    }
  }
}

// -- public helpers -----------------------------------------------------------------

std::vector<std::int64_t> chain_census(const FiniteCategory& cat, int n_max) {
  GModule unit = GModule::trivial(cat.fusion().group(), cat.fusion().prime(), 1);
  NerveComplex cx(cat, unit);
  std::vector<std::int64_t> out;
  for (int k = 0; k <= n_max; ++k) out.push_back(cx.chain_count(k));
  return out;
}

NerveCohomology nerve_cohomology(const FusionSystem& f, const GModule& ambient_mod,
                                 std::vector<int> collection, bool linking,
                                 const Budget& budget) {
  if (linking) {
    std::vector<Subgroup> subs;
    for (int i : collection) subs.push_back(f.subgroups()[i]);
    if (pilocal_incompatibility(ambient_mod, f.prime(), subs))
      throw incompatible_action(
          "module action is not constant on linking morphism classes over this collection");
  }
  NerveCohomology nc;
  nc.cat = std::make_shared<FiniteCategory>(
      linking ? FiniteCategory::linking(f, std::move(collection))
              : FiniteCategory::transporter(f, std::move(collection)));
  nc.cx = std::make_shared<NerveComplex>(*nc.cat, ambient_mod);
  nc.calc = std::make_shared<ComplexCohomology>(nc.cx, budget);
  return nc;
}

FpMat delta_comparison(const NerveComplex& nerve, const HBasis& h_nerve,
                       const Site& s_site, const HBasis& h_bar) {
  const FiniteCategory& cat = nerve.category();
  const GModule& mod = s_site.mod;
  const int n = h_nerve.degree;
  const int d = mod.dim();
  Fp fp(mod.prime());
  const int s_obj = cat.object_of_subgroup(
      cat.fusion().index_of(s_site.sub.elems));
  if (s_obj < 0) throw invalid_collection("Sylow subgroup is not an object of the category");

  FpMat out(static_cast<int>(h_bar.dim), static_cast<int>(h_nerve.dim));
  if (h_bar.dim == 0 || h_nerve.dim == 0) return out;

  // delta on morphisms: s -> (S -> S with label s)
  const std::size_t m = s_site.local->order();
  std::vector<int> delta_mor(m, -1);
  for (std::size_t i = 1; i < m; ++i) {
    int amb = s_site.to_ambient(static_cast<int>(i));
    int id = cat.morphism_id(s_obj, s_obj, cat.rep_label(s_obj, amb));
    delta_mor[i] = (id >= 0 && !cat.is_identity(id)) ? id : -1;  // identity: normalized to 0
  }

  std::vector<std::uint8_t> target(static_cast<std::size_t>(h_bar.space_dim));
  std::vector<int> tup(n, 1);
  std::vector<int> chain(n);
  for (std::size_t colv = 0; colv < h_nerve.reps.size(); ++colv) {
    const auto& rep = h_nerve.reps[colv];
    std::fill(target.begin(), target.end(), 0);
    if (n == 0) {
      for (int v = 0; v < d; ++v) target[v] = rep[static_cast<std::size_t>(s_obj) * d + v];
    } else {
      std::fill(tup.begin(), tup.end(), 1);
      std::int64_t bar_idx = 0;
      const std::int64_t m1 = static_cast<std::int64_t>(m) - 1;
      while (true) {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          chain[i] = delta_mor[tup[i]];
          if (chain[i] < 0) { ok = false; break; }
        }
        if (ok) {
          std::int64_t ci = nerve.chain_index(chain);
          if (ci >= 0)
            for (int v = 0; v < d; ++v) target[bar_idx * d + v] = rep[ci * d + v];
        }
        ++bar_idx;
        int pos = n - 1;
        while (pos >= 0) {
          if (++tup[pos] <= m1) break;
          tup[pos] = 1;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    auto coords = h_bar.coordinates(target);
    for (std::size_t r = 0; r < coords.size(); ++r)
      out.at(static_cast<int>(r), static_cast<int>(colv)) = coords[r];
  }
  (void)fp;
  return out;
}

FpMat projection_pullback(const NerveComplex& transporter_cx, const HBasis& h_t,
                          const NerveComplex& linking_cx, const HBasis& h_l) {
  const FiniteCategory& tc = transporter_cx.category();
  const FiniteCategory& lc = linking_cx.category();
  const int n = h_l.degree;
  const int d = linking_cx.coeff_dim();

  FpMat out(static_cast<int>(h_t.dim), static_cast<int>(h_l.dim));
  if (h_t.dim == 0 || h_l.dim == 0) return out;

  std::vector<std::uint8_t> target(static_cast<std::size_t>(h_t.space_dim));
  std::vector<int> image(n);
  for (std::size_t colv = 0; colv < h_l.reps.size(); ++colv) {
    const auto& rep = h_l.reps[colv];
    std::fill(target.begin(), target.end(), 0);
    if (n == 0) {
      for (std::int64_t i = 0; i < h_t.space_dim; ++i) target[i] = rep[i];
    } else {
      const std::int64_t tchains = transporter_cx.chain_count(n);
      for (std::int64_t ci = 0; ci < tchains; ++ci) {
        const std::vector<int>& ch = transporter_cx.chain_at(ci, n);
        bool ok = true;
        for (int k = 0; k < n; ++k) {
          const Morphism& mo = tc.morphism(ch[k]);
          int lid = lc.morphism_id(mo.src, mo.tgt, lc.rep_label(mo.src, mo.label));
          if (lid < 0 || lc.is_identity(lid)) { ok = false; break; }
          image[k] = lid;
        }
        if (!ok) continue;
        std::int64_t li = linking_cx.chain_index(image);
        if (li >= 0)
          for (int v = 0; v < d; ++v) target[ci * d + v] = rep[li * d + v];
      }
    }
    auto coords = h_t.coordinates(target);
    for (std::size_t r = 0; r < coords.size(); ++r)
      out.at(static_cast<int>(r), static_cast<int>(colv)) = coords[r];
  }
  return out;
}

}  // namespace fusionlab
