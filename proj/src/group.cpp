#include "fusionlab/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fusionlab/errors.hpp"

namespace fusionlab {

std::string Perm::to_cycle_string() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) os << ' ';
      os << (j + 1);
      first = false;
      j = img_[j];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

// -- PermGroup ---------------------------------------------------------------

GroupPtr PermGroup::from_generators(int degree, std::vector<Perm> gens,
                                    std::uint64_t order_cap) {
  if (degree < 1) throw malformed_permutation("degree must be positive");
  for (const auto& g : gens) {
    if (g.degree() != degree) throw malformed_permutation("generator degree mismatch");
    if (!g.is_bijection()) throw malformed_permutation("generator is not a bijection");
  }
  std::set<Perm> closed;
  closed.insert(Perm::identity(degree));
  std::vector<Perm> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = x * g;
        if (closed.insert(y).second) {
          if (closed.size() > order_cap)
            throw order_cap_exceeded("group closure exceeds element cap");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  auto grp = std::shared_ptr<PermGroup>(new PermGroup());
  grp->degree_ = degree;
  grp->elements_.assign(closed.begin(), closed.end());
  for (const auto& g : gens) {
    auto it = std::lower_bound(grp->elements_.begin(), grp->elements_.end(), g);
    grp->generator_ids_.push_back(static_cast<int>(it - grp->elements_.begin()));
  }
  grp->finish();
  return grp;
}

GroupPtr PermGroup::from_elements(int degree, std::vector<Perm> elems,
                                  std::vector<Perm> gens) {
  auto grp = std::shared_ptr<PermGroup>(new PermGroup());
  grp->degree_ = degree;
  grp->elements_ = std::move(elems);
  for (const auto& g : gens) {
    auto it = std::lower_bound(grp->elements_.begin(), grp->elements_.end(), g);
    grp->generator_ids_.push_back(static_cast<int>(it - grp->elements_.begin()));
  }
  grp->finish();
  return grp;
}

void PermGroup::finish() {
  const std::size_t n = elements_.size();
  inv_.resize(n);
  for (std::size_t i = 0; i < n; ++i) inv_[i] = index_of(elements_[i].inverse());
  if (n <= kMultTableLimit) {
    mult_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        mult_[a * n + b] = index_of(elements_[a] * elements_[b]);
  }
}

int PermGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - elements_.begin());
}

int PermGroup::element_order(int a) const {
  int x = a, n = 1;
  while (x != 0) { x = mul(x, a); ++n; }
  return n;
}

bool PermGroup::is_p_element(int a, int p) const {
  int n = element_order(a);
  while (n % p == 0) n /= p;
  return n == 1;
}

// -- Subgroup basics ---------------------------------------------------------

bool Subgroup::contains(int id) const {
  return std::binary_search(elems.begin(), elems.end(), id);
}

bool Subgroup::contains_all(const Subgroup& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(), other.elems.end());
}

std::vector<int> closure_ids(const PermGroup& g, std::vector<int> seed) {
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  std::vector<char> in(g.order(), 0);
  std::vector<int> out;
  out.push_back(0);
  in[0] = 1;
  for (int s : seed)
    if (!in[s]) { in[s] = 1; out.push_back(s); }
  std::size_t head = 0;
  while (head < out.size()) {
    int x = out[head++];
    for (int s : seed) {
      int y = g.mul(x, s);
      if (!in[y]) { in[y] = 1; out.push_back(y); }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// greedy small generating set for a closed element list
std::vector<int> reduce_generators(const PermGroup& g, const std::vector<int>& elems) {
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int e : elems) {
    if (std::binary_search(cur.begin(), cur.end(), e)) continue;
    gens.push_back(e);
    std::vector<int> seed = gens;
    cur = closure_ids(g, seed);
    if (cur.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace

Subgroup subgroup_from_gens(GroupPtr g, std::vector<int> gen_ids) {
  Subgroup s;
  s.parent = g;
  s.elems = closure_ids(*g, gen_ids);
  s.gens = std::move(gen_ids);
  return s;
}

Subgroup subgroup_from_elems(GroupPtr g, std::vector<int> elems) {
  Subgroup s;
  s.parent = g;
  std::sort(elems.begin(), elems.end());
  s.gens = reduce_generators(*g, elems);
  s.elems = std::move(elems);
  return s;
}

Subgroup trivial_subgroup(GroupPtr g) {
  Subgroup s;
  s.parent = g;
  s.elems = {0};
  return s;
}

Subgroup full_subgroup(GroupPtr g) {
  Subgroup s;
  s.parent = g;
  s.elems.resize(g->order());
  std::iota(s.elems.begin(), s.elems.end(), 0);
  for (int id : g->generator_ids()) s.gens.push_back(id);
  if (s.gens.empty() && g->order() > 1) s.gens = reduce_generators(*g, s.elems);
  return s;
}

GroupPtr materialize(const Subgroup& s) {
  std::vector<Perm> elems, gens;
  elems.reserve(s.elems.size());
  for (int id : s.elems) elems.push_back(s.parent->element(id));
  for (int id : s.gens) gens.push_back(s.parent->element(id));
  return PermGroup::from_elements(s.parent->degree(), std::move(elems), std::move(gens));
}

GroupHom hom_from_gen_images(GroupPtr src, GroupPtr tgt, const std::vector<int>& src_gen_ids,
                             const std::vector<int>& images) {
  GroupHom h;
  h.source = src;
  h.target = tgt;
  h.images.assign(src->order(), -1);
  h.images[0] = 0;
  std::vector<int> work{0};
  std::size_t head = 0;
  while (head < work.size()) {
    int x = work[head++];
    for (std::size_t i = 0; i < src_gen_ids.size(); ++i) {
      int y = src->mul(x, src_gen_ids[i]);
      int im = tgt->mul(h.images[x], images[i]);
      if (h.images[y] < 0) {
        h.images[y] = im;
        work.push_back(y);
      } else if (h.images[y] != im) {
        throw not_a_homomorphism("generator images do not define a homomorphism");
      }
    }
  }
  for (int v : h.images)
    if (v < 0) throw not_a_homomorphism("generators do not generate the source");
  h.verified = true;
  std::size_t kernel = 0;
  for (int v : h.images)
    if (v == 0) ++kernel;
  h.injective = (kernel == 1);
  return h;
}

// -- arithmetic helpers ------------------------------------------------------

std::uint64_t p_part(std::uint64_t n, int p) {
  std::uint64_t q = 1;
  while (n % p == 0) { n /= p; q *= p; }
  return q;
}

// -- Sylow / normalizer / centralizer ---------------------------------------

Subgroup sylow_subgroup(GroupPtr g, int p) {
  const std::uint64_t target = p_part(g->order(), p);
  Subgroup cur = trivial_subgroup(g);
  while (cur.order() < target) {
    Subgroup n = normalizer(cur);
    bool grew = false;
    for (int x : n.elems) {
      if (cur.contains(x)) continue;
      // order of x modulo cur
      int m = 1, y = x;
      while (!cur.contains(y)) { y = g->mul(y, x); ++m; }
      std::uint64_t mm = m;
      while (mm % p == 0) mm /= p;
      if (mm != 1) continue;
      std::vector<int> gens = cur.gens;
      gens.push_back(x);
      cur = subgroup_from_gens(g, gens);
      grew = true;
      break;
    }
    if (!grew) break;  // p does not divide |G|
  }
  return cur;
}

Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& h) {
  const PermGroup& g = *h.parent;
  std::vector<int> elems;
  for (int x : ambient.elems) {
    bool ok = true;
    for (int s : h.gens)
      if (!h.contains(g.conj(x, s))) { ok = false; break; }
    if (ok) elems.push_back(x);
  }
  return subgroup_from_elems(h.parent, std::move(elems));
}

Subgroup normalizer(const Subgroup& h) { return normalizer_in(full_subgroup(h.parent), h); }

Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& h) {
  const PermGroup& g = *h.parent;
  std::vector<int> elems;
  std::vector<int> test = h.gens.empty() ? h.elems : h.gens;
  for (int x : ambient.elems) {
    bool ok = true;
    for (int s : test)
      if (g.conj(x, s) != s) { ok = false; break; }
    if (ok) elems.push_back(x);
  }
  return subgroup_from_elems(h.parent, std::move(elems));
}

Subgroup centralizer(const Subgroup& h) { return centralizer_in(full_subgroup(h.parent), h); }

Subgroup center(const Subgroup& h) { return centralizer_in(h, h); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> elems;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(elems));
  return subgroup_from_elems(a.parent, std::move(elems));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<int> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return subgroup_from_gens(a.parent, std::move(gens));
}

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  const PermGroup& grp = *h.parent;
  std::vector<int> elems, gens;
  elems.reserve(h.elems.size());
  for (int x : h.elems) elems.push_back(grp.conj(g, x));
  for (int x : h.gens) gens.push_back(grp.conj(g, x));
  std::sort(elems.begin(), elems.end());
  Subgroup s;
  s.parent = h.parent;
  s.elems = std::move(elems);
  s.gens = std::move(gens);
  return s;
}

// -- subgroup lattice of a p-group -------------------------------------------

std::vector<Subgroup> all_subgroups(const Subgroup& s, int p, std::uint64_t cap) {
  {
    std::uint64_t n = s.order();
    while (n % p == 0) n /= p;
    if (n != 1) throw not_a_p_group("subgroup enumeration requires a p-group");
  }
  const PermGroup& g = *s.parent;

  std::map<std::vector<int>, std::vector<int>> found;  // elems -> gens
  found[{0}] = {};
  std::vector<std::pair<std::vector<int>, int>> cyclics;  // (elems, generator)
  for (int x : s.elems) {
    if (x == 0) continue;
    auto c = closure_ids(g, {x});
    if (found.emplace(c, std::vector<int>{x}).second) cyclics.emplace_back(c, x);
  }

  std::vector<std::pair<std::vector<int>, std::vector<int>>> work(found.begin(), found.end());
  std::size_t head = 0;
  while (head < work.size()) {
    auto [elems, gens] = work[head++];
    for (const auto& [c, cgen] : cyclics) {
      if (std::includes(elems.begin(), elems.end(), c.begin(), c.end())) continue;
      std::vector<int> seed = gens;
      seed.push_back(cgen);
      auto j = closure_ids(g, seed);
      auto it = found.emplace(j, seed);
      if (it.second) {
        if (found.size() > cap) throw subgroup_cap_exceeded("subgroup lattice exceeds cap");
        work.emplace_back(j, seed);
      }
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& [elems, gens] : found) {
    Subgroup h;
    h.parent = s.parent;
    h.elems = elems;
    h.gens = gens;
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elems < b.elems;
  });
  return out;
}

// -- residual subgroups ------------------------------------------------------

namespace {

std::vector<std::vector<int>> conjugacy_classes(const PermGroup& g) {
  std::vector<int> cls(g.order(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(out.size());
    std::vector<int> members{static_cast<int>(i)};
    cls[i] = c;
    std::size_t head = 0;
    while (head < members.size()) {
      int x = members[head++];
      for (int s : g.generator_ids()) {
        int y = g.conj(s, x);
        if (cls[y] < 0) { cls[y] = c; members.push_back(y); }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool order_prime_to(std::uint64_t n, int p) { return n % p != 0; }

}  // namespace

Residuals residuals(GroupPtr g, int p) {
  Residuals r;
  // O_p: intersection of the Sylow p-subgroups
  Subgroup syl = sylow_subgroup(g, p);
  {
    Subgroup acc = syl;
    std::set<std::vector<int>> seen{syl.elems};
    std::vector<Subgroup> orbit{syl};
    std::size_t head = 0;
    while (head < orbit.size()) {
      Subgroup cur = orbit[head++];
      for (int s : g->generator_ids()) {
        Subgroup c = conjugate_subgroup(cur, s);
        if (seen.insert(c.elems).second) {
          acc = intersect(acc, c);
          orbit.push_back(std::move(c));
        }
      }
    }
    r.core_p = acc;
  }
  // O^p: generated by all p'-elements; O^{p'}: generated by all p-elements
  {
    std::vector<int> pprime_elems, p_elems;
    for (std::size_t i = 1; i < g->order(); ++i) {
      int n = g->element_order(static_cast<int>(i));
      if (n % p != 0)
        pprime_elems.push_back(static_cast<int>(i));
      std::uint64_t q = n;
      while (q % p == 0) q /= p;
      if (q == 1) p_elems.push_back(static_cast<int>(i));
    }
    r.residual_p = subgroup_from_elems(g, closure_ids(*g, pprime_elems));
    r.residual_p_prime = subgroup_from_elems(g, closure_ids(*g, p_elems));
  }
  // O_{p'}: generated by p'-elements whose normal closure is a p'-group
  {
    std::vector<int> pool;
    for (const auto& cls : conjugacy_classes(*g)) {
      if (cls[0] == 0) continue;
      if (g->element_order(cls[0]) % p == 0) continue;
      auto nc = closure_ids(*g, cls);
      if (order_prime_to(nc.size(), p))
        pool.insert(pool.end(), cls.begin(), cls.end());
    }
    r.core_p_prime = subgroup_from_elems(g, closure_ids(*g, pool));
  }
  return r;
}

// -- quotients ---------------------------------------------------------------

namespace {

bool is_normal(const PermGroup& g, const Subgroup& n) {
  for (int s : g.generator_ids())
    for (int x : n.gens.empty() ? n.elems : n.gens)
      if (!n.contains(g.conj(s, x))) return false;
  return true;
}

}  // namespace

Quotient quotient_group(GroupPtr g, const Subgroup& n) {
  if (!is_normal(*g, n)) throw not_normal("quotient by a non-normal subgroup");
  const std::size_t m = g->order();
  Quotient q;
  q.coset_of.assign(m, -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < m; ++i) {
    if (q.coset_of[i] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(i));
    for (int x : n.elems) q.coset_of[g->mul(static_cast<int>(i), x)] = c;
  }
  const int deg = static_cast<int>(reps.size());
  auto perm_of = [&](int e) {
    std::vector<std::uint16_t> img(deg);
    for (int c = 0; c < deg; ++c)
      img[c] = static_cast<std::uint16_t>(q.coset_of[g->mul(e, reps[c])]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (int s : g->generator_ids()) gens.push_back(perm_of(s));
  q.group = PermGroup::from_generators(std::max(deg, 1), gens);
  q.hom.resize(m);
  for (std::size_t e = 0; e < m; ++e) q.hom[e] = q.group->index_of(perm_of(static_cast<int>(e)));
  return q;
}

Subgroup preimage(GroupPtr g, const Quotient& q, const Subgroup& sub_of_quotient) {
  std::vector<int> elems;
  for (std::size_t e = 0; e < g->order(); ++e)
    if (sub_of_quotient.contains(q.hom[e])) elems.push_back(static_cast<int>(e));
  return subgroup_from_elems(g, std::move(elems));
}

// -- p-solvability ------------------------------------------------------------

bool is_p_solvable(GroupPtr g, int p) {
  Subgroup cur = trivial_subgroup(g);
  while (true) {
    if (cur.order() == g->order()) return true;
    Quotient q = quotient_group(g, cur);
    Residuals r = residuals(q.group, p);
    Subgroup next = preimage(g, q, r.core_p_prime);
    if (next.order() == cur.order()) {
      // no p'-growth; try the p-core
      Subgroup next2 = preimage(g, q, r.core_p);
      if (next2.order() == cur.order()) return false;
      cur = next2;
    } else {
      cur = next;
    }
  }
}

// -- strongly p-embedded -------------------------------------------------------

bool is_strongly_p_embedded(GroupPtr g, const Subgroup& h, int p) {
  if (h.order() >= g->order()) return false;
  if (h.order() % p != 0) return false;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (h.contains(static_cast<int>(x))) continue;
    Subgroup c = conjugate_subgroup(h, static_cast<int>(x));
    std::size_t common = 0;
    for (int e : c.elems)
      if (h.contains(e)) ++common;
    if (common % p == 0) return false;
  }
  return true;
}

std::optional<Subgroup> find_strongly_p_embedded(GroupPtr g, int p) {
  if (g->order() % p != 0) return std::nullopt;
  Subgroup syl = sylow_subgroup(g, p);
  // overgroups of the Sylow, BFS by single-element extensions
  std::map<std::vector<int>, Subgroup> over;
  over.emplace(syl.elems, syl);
  std::vector<Subgroup> work{syl};
  std::size_t head = 0;
  constexpr std::size_t kOvergroupCap = 20000;
  while (head < work.size()) {
    Subgroup cur = work[head++];
    for (std::size_t x = 0; x < g->order(); ++x) {
      if (cur.contains(static_cast<int>(x))) continue;
      std::vector<int> gens = cur.gens;
      gens.push_back(static_cast<int>(x));
      Subgroup j = subgroup_from_gens(g, std::move(gens));
      if (over.emplace(j.elems, j).second) {
        if (over.size() > kOvergroupCap)
          throw subgroup_cap_exceeded("overgroup scan exceeded cap");
        work.push_back(std::move(j));
      }
    }
  }
  std::vector<const Subgroup*> cand;
  for (const auto& [k, v] : over)
    if (v.order() < g->order()) cand.push_back(&v);
  std::sort(cand.begin(), cand.end(), [](const Subgroup* a, const Subgroup* b) {
    if (a->order() != b->order()) return a->order() < b->order();
    return a->elems < b->elems;
  });
  for (const Subgroup* s : cand)
    if (is_strongly_p_embedded(g, *s, p)) return *s;
  return std::nullopt;
}

// -- wreath and direct products ------------------------------------------------

WreathProduct wreath_product_cp(GroupPtr g0, int p, std::uint64_t order_cap) {
  const int d0 = g0->degree();
  const int deg = d0 * p;
  {
    // |G0|^p * p against the cap
    std::uint64_t o = p;
    for (int i = 0; i < p; ++i) {
      if (o > order_cap / std::max<std::uint64_t>(g0->order(), 1))
        throw order_cap_exceeded("wreath product exceeds order cap");
      o *= g0->order();
    }
    if (o > order_cap) throw order_cap_exceeded("wreath product exceeds order cap");
  }
  auto on_copy = [&](const Perm& s, int k) {
    std::vector<std::uint16_t> img(deg);
    for (int i = 0; i < deg; ++i) img[i] = static_cast<std::uint16_t>(i);
    for (int i = 0; i < d0; ++i) img[k * d0 + i] = static_cast<std::uint16_t>(k * d0 + s[i]);
    return Perm(std::move(img));
  };
  std::vector<std::uint16_t> cyc(deg);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < d0; ++i)
      cyc[k * d0 + i] = static_cast<std::uint16_t>(((k + 1) % p) * d0 + i);
  Perm c(std::move(cyc));

  std::vector<Perm> gens;
  for (int id : g0->generator_ids()) gens.push_back(on_copy(g0->element(id), 0));
  gens.push_back(c);

  WreathProduct w;
  w.group = PermGroup::from_generators(deg, gens, order_cap);
  w.cycle = w.group->index_of(c);

  std::vector<int> base_gens, diag_gens;
  for (int id : g0->generator_ids()) {
    const Perm& s = g0->element(id);
    for (int k = 0; k < p; ++k) base_gens.push_back(w.group->index_of(on_copy(s, k)));
    std::vector<std::uint16_t> img(deg);
    for (int k = 0; k < p; ++k)
      for (int i = 0; i < d0; ++i) img[k * d0 + i] = static_cast<std::uint16_t>(k * d0 + s[i]);
    diag_gens.push_back(w.group->index_of(Perm(std::move(img))));
  }
  w.base = subgroup_from_gens(w.group, base_gens);
  w.diagonal = subgroup_from_gens(w.group, diag_gens);

  for (int k = 0; k < p; ++k) {
    std::vector<int> imgs;
    for (int id : g0->generator_ids()) imgs.push_back(w.group->index_of(on_copy(g0->element(id), k)));
    w.copy_embeddings.push_back(hom_from_gen_images(g0, w.group, g0->generator_ids(), imgs));
  }
  w.diagonal_embedding = hom_from_gen_images(g0, w.group, g0->generator_ids(), diag_gens);
  return w;
}

DirectProduct direct_product(GroupPtr a, GroupPtr b) {
  const int da = a->degree(), db = b->degree();
  auto lift_a = [&](const Perm& s) {
    std::vector<std::uint16_t> img(da + db);
    for (int i = 0; i < da; ++i) img[i] = s[i];
    for (int i = 0; i < db; ++i) img[da + i] = static_cast<std::uint16_t>(da + i);
    return Perm(std::move(img));
  };
  auto lift_b = [&](const Perm& s) {
    std::vector<std::uint16_t> img(da + db);
    for (int i = 0; i < da; ++i) img[i] = static_cast<std::uint16_t>(i);
    for (int i = 0; i < db; ++i) img[da + i] = static_cast<std::uint16_t>(da + s[i]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (int id : a->generator_ids()) gens.push_back(lift_a(a->element(id)));
  for (int id : b->generator_ids()) gens.push_back(lift_b(b->element(id)));
  DirectProduct d;
  d.group = PermGroup::from_generators(da + db, gens);
  std::vector<int> ga, gb;
  for (int id : a->generator_ids()) ga.push_back(d.group->index_of(lift_a(a->element(id))));
  for (int id : b->generator_ids()) gb.push_back(d.group->index_of(lift_b(b->element(id))));
  d.factor1 = subgroup_from_gens(d.group, ga);
  d.factor2 = subgroup_from_gens(d.group, gb);
  d.emb1 = hom_from_gen_images(a, d.group, a->generator_ids(), ga);
  d.emb2 = hom_from_gen_images(b, d.group, b->generator_ids(), gb);
  return d;
}

// -- abelian p-quotients -------------------------------------------------------

int elementary_p_rank(const Subgroup& h, int p) {
  const PermGroup& g = *h.parent;
  // commutators over all pairs and all p-th powers: conjugation-closed seed,
  // so the closure is normal in h and the quotient is elementary abelian
  std::vector<int> seed;
  for (int a : h.elems) {
    int y = a;
    for (int i = 1; i < p; ++i) y = g.mul(y, a);
    seed.push_back(y);
  }
  for (int a : h.elems)
    for (int b : h.elems)
      seed.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  std::vector<int> k = closure_ids(g, seed);
  std::uint64_t idx = h.order() / k.size();
  int r = 0;
  while (idx % p == 0) { idx /= p; ++r; }
  return r;
}

std::vector<Subgroup> index_p_normal_subgroups(GroupPtr g, int p) {
  // kernel of the elementary abelian p-quotient
  std::vector<int> seed;
  for (std::size_t a = 0; a < g->order(); ++a) {
    int y = static_cast<int>(a);
    for (int i = 1; i < p; ++i) y = g->mul(y, static_cast<int>(a));
    seed.push_back(y);
  }
  for (std::size_t a = 0; a < g->order(); ++a)
    for (std::size_t b = 0; b < g->order(); ++b)
      seed.push_back(g->mul(g->mul(g->inv(static_cast<int>(a)), g->inv(static_cast<int>(b))),
                            g->mul(static_cast<int>(a), static_cast<int>(b))));
  Subgroup frat = subgroup_from_elems(g, closure_ids(*g, seed));
  Quotient q = quotient_group(g, frat);
  GroupPtr Q = q.group;
  // independent generators of the elementary abelian quotient
  std::vector<int> basis;
  std::vector<int> span{0};
  for (std::size_t e = 1; e < Q->order(); ++e) {
    if (std::binary_search(span.begin(), span.end(), static_cast<int>(e))) continue;
    basis.push_back(static_cast<int>(e));
    std::vector<int> s = basis;
    span = closure_ids(*Q, s);
    if (span.size() == Q->order()) break;
  }
  const int r = static_cast<int>(basis.size());
  if (r == 0) return {};
  // coordinates of every quotient element
  std::map<int, std::vector<int>> coords;
  std::vector<int> tuple(r, 0);
  std::function<void(int, int)> rec = [&](int i, int elem) {
    if (i == r) { coords[elem] = tuple; return; }
    int cur = elem;
    for (int c = 0; c < p; ++c) {
      tuple[i] = c;
      rec(i + 1, cur);
      cur = Q->mul(cur, basis[i]);
    }
  };
  rec(0, 0);
  // hyperplane kernels: one functional per projective point
  std::vector<Subgroup> out;
  std::vector<int> f(r, 0);
  std::function<void(int, bool)> emit = [&](int i, bool lead) {
    if (i == r) {
      if (!lead) return;
      std::vector<int> ker_q;
      for (auto& [e, co] : coords) {
        int v = 0;
        for (int j = 0; j < r; ++j) v = (v + f[j] * co[j]) % p;
        if (v == 0) ker_q.push_back(e);
      }
      Subgroup kq = subgroup_from_elems(Q, std::move(ker_q));
      out.push_back(preimage(g, q, kq));
      return;
    }
    if (!lead) {
      f[i] = 0; emit(i + 1, false);
      f[i] = 1; emit(i + 1, true);
    } else {
      for (int c = 0; c < p; ++c) { f[i] = c; emit(i + 1, true); }
    }
  };
  emit(0, false);
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.elems < b.elems; });
  return out;
}

// -- p-subgroup poset ----------------------------------------------------------

bool p_subgroup_poset_disconnected_or_empty(GroupPtr g, int p) {
  if (g->order() % p != 0) return true;  // empty poset
  Subgroup syl = sylow_subgroup(g, p);
  std::vector<Subgroup> subs = all_subgroups(syl, p);
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> nodes;
  std::vector<Subgroup> work;
  for (auto& s : subs)
    if (s.order() > 1 && seen.insert(s.elems).second) work.push_back(s);
  std::size_t head = 0;
  while (head < work.size()) {
    Subgroup cur = work[head++];
    nodes.push_back(cur);
    for (int s : g->generator_ids()) {
      Subgroup c = conjugate_subgroup(cur, s);
      if (seen.insert(c.elems).second) work.push_back(std::move(c));
    }
  }
  if (nodes.empty()) return true;
  std::vector<int> uf(nodes.size());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      if (nodes[j].contains_all(nodes[i])) uf[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  int root = find(0);
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (find(static_cast<int>(i)) != root) return true;
  return false;
}

}  // namespace fusionlab
