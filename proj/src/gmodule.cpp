#include "fusionlab/gmodule.hpp"

#include <algorithm>

namespace fusionlab {

GModule GModule::from_generator_action(GroupPtr g, int p, int dim,
                                       const std::vector<FpMat>& gen_mats) {
  if (gen_mats.size() != g->generator_ids().size())
    throw not_a_homomorphism("one action matrix per generator required");
  for (const auto& m : gen_mats) {
    if (m.rows != dim || m.cols != dim)
      throw not_a_homomorphism("action matrix has wrong shape");
    for (auto v : m.a)
      if (v >= p) throw not_a_homomorphism("matrix entry out of field range");
  }
  Fp fp(p);
  GModule mod;
  mod.p_ = p;
  mod.dim_ = dim;
  mod.group_ = g;
  mod.act_.assign(g->order(), FpMat());
  std::vector<char> known(g->order(), 0);
  mod.act_[0] = FpMat::identity(dim);
  known[0] = 1;
  std::vector<int> work{0};
  std::size_t head = 0;
  const auto& gens = g->generator_ids();
  while (head < work.size()) {
    int x = work[head++];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = g->mul(x, gens[i]);
      FpMat m = fp_mul(fp, mod.act_[x], gen_mats[i]);
      if (!known[y]) {
        mod.act_[y] = std::move(m);
        known[y] = 1;
        work.push_back(y);
      } else if (!(mod.act_[y] == m)) {
        throw not_a_homomorphism("generator matrices are inconsistent on the group");
      }
    }
  }
  for (char k : known)
    if (!k) throw not_a_homomorphism("generators do not generate the group");
  return mod;
}

GModule GModule::from_element_action(GroupPtr g, int p, int dim, std::vector<FpMat> elem_mats) {
  GModule mod;
  mod.p_ = p;
  mod.dim_ = dim;
  mod.group_ = std::move(g);
  mod.act_ = std::move(elem_mats);
  return mod;
}

GModule GModule::trivial(GroupPtr g, int p, int dim) {
  GModule mod;
  mod.p_ = p;
  mod.dim_ = dim;
  mod.group_ = g;
  mod.act_.assign(g->order(), FpMat::identity(dim));
  return mod;
}

GModule GModule::sign(GroupPtr g, int p) {
  GModule mod;
  mod.p_ = p;
  mod.dim_ = 1;
  mod.group_ = g;
  mod.act_.reserve(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) {
    FpMat m(1, 1);
    m.at(0, 0) = g->element(static_cast<int>(i)).parity_odd()
                     ? static_cast<std::uint8_t>(p - 1)
                     : 1;
    mod.act_.push_back(std::move(m));
  }
  return mod;
}

bool GModule::is_trivial_action() const {
  for (const auto& m : act_)
    if (!m.is_identity()) return false;
  return true;
}

Subgroup GModule::action_kernel() const {
  std::vector<int> elems;
  for (std::size_t i = 0; i < group_->order(); ++i)
    if (act_[i].is_identity()) elems.push_back(static_cast<int>(i));
  return subgroup_from_elems(group_, std::move(elems));
}

Site make_site(const GModule& ambient_mod, const Subgroup& sub) {
  Site s;
  s.ambient = ambient_mod.group();
  s.sub = sub;
  s.local = materialize(sub);
  std::vector<FpMat> mats;
  mats.reserve(sub.elems.size());
  for (int id : sub.elems) mats.push_back(ambient_mod.action(id));
  s.mod = GModule::from_element_action(s.local, ambient_mod.prime(), ambient_mod.dim(),
                                       std::move(mats));
  s.from_ambient.assign(s.ambient->order(), -1);
  for (std::size_t i = 0; i < sub.elems.size(); ++i)
    s.from_ambient[sub.elems[i]] = static_cast<int>(i);
  return s;
}

GModule restrict_module(const GModule& m, const Subgroup& h) {
  if (h.parent != m.group()) throw not_a_subgroup("subgroup belongs to a different group");
  return make_site(m, h).mod;
}

namespace {

// canonical left-coset representatives rH and right-coset representatives Hx
std::vector<int> left_coset_reps(const PermGroup& g, const Subgroup& h, std::vector<int>& coset_of) {
  coset_of.assign(g.order(), -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (coset_of[i] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(i));
    for (int x : h.elems) coset_of[g.mul(static_cast<int>(i), x)] = c;
  }
  return reps;
}

std::vector<int> right_coset_reps(const PermGroup& g, const Subgroup& h, std::vector<int>& coset_of) {
  coset_of.assign(g.order(), -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (coset_of[i] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(i));
    for (int x : h.elems) coset_of[g.mul(x, static_cast<int>(i))] = c;
  }
  return reps;
}

int local_id_in(const Subgroup& h, int ambient_id) {
  auto it = std::lower_bound(h.elems.begin(), h.elems.end(), ambient_id);
  return static_cast<int>(it - h.elems.begin());
}

}  // namespace

GModule induce(const GModule& m, const Subgroup& h, std::uint64_t index_cap) {
  const PermGroup& g = *h.parent;
  const int d = m.dim();
  Fp fp(m.prime());
  std::vector<int> coset_of;
  std::vector<int> reps = left_coset_reps(g, h, coset_of);
  const int k = static_cast<int>(reps.size());
  if (static_cast<std::uint64_t>(k) * d > index_cap)
    throw index_cap_exceeded("induced module dimension exceeds cap");
  std::vector<FpMat> mats;
  mats.reserve(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) {
    FpMat big(k * d, k * d);
    for (int i = 0; i < k; ++i) {
      int t = g.mul(static_cast<int>(e), reps[i]);  // e*rep_i = rep_s * h0
      int s = coset_of[t];
      int h0 = g.mul(g.inv(reps[s]), t);
      const FpMat& a = m.action(local_id_in(h, h0));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (a.at(r, c)) big.at(s * d + r, i * d + c) = a.at(r, c);
    }
    mats.push_back(std::move(big));
  }
  (void)fp;
  return GModule::from_element_action(h.parent, m.prime(), k * d, std::move(mats));
}

GModule coinduce(const GModule& m, const Subgroup& h, std::uint64_t index_cap) {
  const PermGroup& g = *h.parent;
  const int d = m.dim();
  std::vector<int> coset_of;
  std::vector<int> reps = right_coset_reps(g, h, coset_of);
  const int k = static_cast<int>(reps.size());
  if (static_cast<std::uint64_t>(k) * d > index_cap)
    throw index_cap_exceeded("coinduced module dimension exceeds cap");
  std::vector<FpMat> mats;
  mats.reserve(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) {
    FpMat big(k * d, k * d);
    for (int kk = 0; kk < k; ++kk) {
      int t = g.mul(reps[kk], static_cast<int>(e));  // rep_k * e = h0 * rep_l
      int l = coset_of[t];
      int h0 = g.mul(t, g.inv(reps[l]));
      const FpMat& a = m.action(local_id_in(h, h0));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (a.at(r, c)) big.at(kk * d + r, l * d + c) = a.at(r, c);
    }
    mats.push_back(std::move(big));
  }
  return GModule::from_element_action(h.parent, m.prime(), k * d, std::move(mats));
}

FpMat ind_coind_isomorphism(const GModule& ind, const GModule& coind, const GModule& m,
                            const Subgroup& h) {
  const PermGroup& g = *h.parent;
  Fp fp(m.prime());
  const int d = m.dim();
  std::vector<int> lco, rco;
  std::vector<int> lreps = left_coset_reps(g, h, lco);
  std::vector<int> rreps = right_coset_reps(g, h, rco);
  const int k = static_cast<int>(lreps.size());
  // nu(rep_i (x) v)(x_k) = [x_k rep_i in H] (x_k rep_i) v
  FpMat nu(k * d, k * d);
  for (int i = 0; i < k; ++i)
    for (int kk = 0; kk < k; ++kk) {
      int t = g.mul(rreps[kk], lreps[i]);
      if (!h.contains(t)) continue;
      const FpMat& a = m.action(local_id_in(h, t));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (a.at(r, c)) nu.at(kk * d + r, i * d + c) = a.at(r, c);
    }
  // check equivariance on generators and invertibility
  for (int s : g.generator_ids()) {
    FpMat lhs = fp_mul(fp, coind.action(s), nu);
    FpMat rhs = fp_mul(fp, nu, ind.action(s));
    if (!(lhs == rhs)) throw not_a_homomorphism("canonical Ind->coInd map is not equivariant");
  }
  if (fp_rank(fp, nu) != k * d)
    throw not_a_homomorphism("canonical Ind->coInd map is singular");
  return nu;
}

std::vector<std::vector<std::uint8_t>> fixed_points(const GModule& m,
                                                    const std::vector<int>& elem_ids) {
  const int d = m.dim();
  Fp fp(m.prime());
  Echelon ech(m.prime(), d);
  for (int e : elem_ids) {
    const FpMat& a = m.action(e);
    for (int r = 0; r < d; ++r) {
      SparseVec row;
      for (int c = 0; c < d; ++c) {
        std::uint8_t v = a.at(r, c);
        if (r == c) v = fp.sub(v, 1);
        if (v) row.emplace_back(c, v);
      }
      ech.add_row(row);
    }
  }
  ech.finalize_rref();
  auto ker = ech.kernel_basis();
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& k : ker) {
    std::vector<std::uint8_t> v(d, 0);
    for (auto& [c, val] : k) v[c] = val;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> fixed_points_subgroup(const GModule& m,
                                                             const Subgroup& h) {
  std::vector<int> gens = h.gens;
  if (gens.empty()) gens.push_back(0);
  return fixed_points(m, gens);
}

std::optional<CompatibilityWitness> pilocal_incompatibility(
    const GModule& m, int p, const std::vector<Subgroup>& collection) {
  for (std::size_t i = 0; i < collection.size(); ++i) {
    Subgroup c = centralizer(collection[i]);
    GroupPtr cg = materialize(c);
    Residuals r = residuals(cg, p);
    for (int local : r.residual_p.elems) {
      int ambient = c.elems[local];
      if (!m.action(ambient).is_identity())
        return CompatibilityWitness{static_cast<int>(i), ambient};
    }
  }
  return std::nullopt;
}

}  // namespace fusionlab
