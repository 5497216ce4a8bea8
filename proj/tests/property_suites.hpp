// Randomized structural property suites shared by the properties test binary
// and the acceptance runner. Plain counters, no test-framework macros.
#pragma once

#include <optional>
#include <random>
#include <sstream>

#include "fusionlab/checks.hpp"

namespace property_suites {

using namespace fusionlab;

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string note;
  bool ok() const { return failures == 0; }
};

namespace detail {

inline std::mt19937 fresh_rng() { return std::mt19937(20240817u); }

struct Instance {
  const char* group;
  int p;
  const char* twisted;
};
constexpr Instance kSmall[] = {
    {"S3", 2, "natural2"}, {"S3", 3, "sign"},      {"S4", 2, "quo6"},
    {"A4", 2, "a4c3"},     {"D8", 2, "unip2"},     {"C4", 2, "trivial:2"},
    {"Q8", 2, "trivial:1"}, {"C6", 3, "sign"},
};

inline std::vector<std::uint8_t> apply_d(const BarComplex& cx, int n,
                                         const std::vector<std::uint8_t>& v) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(cx.dim(n + 1)), 0);
  Fp fp(cx.prime());
  std::int64_t r = 0;
  cx.stream_rows(n, [&](const SparseVec& row) {
    int acc = 0;
    for (auto& [c, val] : row) acc += val * v[c];
    out[r++] = static_cast<std::uint8_t>(acc % fp.p);
    return true;
  });
  return out;
}

}  // namespace detail

inline SuiteResult suite_dd_zero() {
  using namespace detail;
  SuiteResult res{"d after d vanishes"};
  auto gen = fresh_rng();
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); };
  for (const auto& inst : kSmall) {
    auto g = named_group(inst.group);
    for (const char* mn : {"trivial:1", inst.twisted}) {
      GModule m = named_module(g, inst.group, inst.p, mn);
      BarComplex cx(g, m);
      for (int n = 0; n <= 1; ++n)
        for (int trial = 0; trial < 4; ++trial) {
          std::vector<std::uint8_t> v(static_cast<std::size_t>(cx.dim(n)), 0);
          for (auto& x : v) x = static_cast<std::uint8_t>(pick(inst.p));
          auto ddv = apply_d(cx, n + 1, apply_d(cx, n, v));
          for (auto x : ddv)
            if (x) { ++res.failures; break; }
          ++res.instances;
        }
    }
  }
  return res;
}

inline SuiteResult suite_h0_fixed() {
  using namespace detail;
  SuiteResult res{"H^0 equals the fixed space"};
  Budget b;
  auto gen = fresh_rng();
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); };
  for (const auto& inst : kSmall) {
    auto g = named_group(inst.group);
    FusionSystem f = FusionSystem::build(g, inst.p);
    auto subs = all_subgroups(f.sylow(), inst.p);
    for (const char* mn : {"trivial:1", "trivial:3", inst.twisted}) {
      GModule m = named_module(g, inst.group, inst.p, mn);
      for (int trial = 0; trial < 5; ++trial) {
        const Subgroup& sub = subs[pick(static_cast<int>(subs.size()))];
        SiteCohomology sc = site_cohomology(m, sub, b);
        auto fix = fixed_points_subgroup(m, sub);
        DegreeDim d0 = sc.calc->h_dim(0);
        if (d0.skipped() || *d0.dim != static_cast<std::int64_t>(fix.size())) ++res.failures;
        ++res.instances;
      }
    }
  }
  return res;
}

inline SuiteResult suite_kappa() {
  using namespace detail;
  SuiteResult res{"kappa lift independence and functoriality"};
  Budget b;
  auto gen = fresh_rng();
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); };
  for (const auto& inst : kSmall) {
    auto g = named_group(inst.group);
    FusionSystem f = FusionSystem::build(g, inst.p);
    for (const char* mn : {"trivial:1", inst.twisted}) {
      GModule m = named_module(g, inst.group, inst.p, mn);
      std::vector<Subgroup> coll;
      for (int i : f.centric_collection()) coll.push_back(f.subgroups()[i]);
      if (pilocal_incompatibility(m, inst.p, coll)) continue;
      StableWorkspace ws(f, m, b);
      for (int n = 1; n <= 2; ++n) {
        const HBasis& hs = ws.sylow_site().calc->h_basis(n);
        if (hs.dim == 0) continue;
        for (int ci : f.centric_collection()) {
          if (!f.flags(ci).fully_normalized) continue;
          SiteCohomology& psc = ws.site(ci);
          const HBasis& hp = psc.calc->h_basis(n);
          if (hp.dim == 0) continue;
          Subgroup cg = centralizer(f.subgroups()[ci]);
          auto reps = f.hom_reps(ci, f.sylow_index());
          for (int trial = 0; trial < 3; ++trial) {
            int gl = reps[pick(static_cast<int>(reps.size()))];
            int c = cg.elems[pick(static_cast<int>(cg.elems.size()))];
            FpMat k1 = conjugation_pullback(m, ws.sylow_site().site, hs, psc.site, hp, gl);
            FpMat k2 =
                conjugation_pullback(m, ws.sylow_site().site, hs, psc.site, hp, g->mul(gl, c));
            if (!(k1 == k2)) ++res.failures;
            ++res.instances;
          }
          Subgroup ns = normalizer(f.sylow());
          for (int trial = 0; trial < 2; ++trial) {
            int h = ns.elems[pick(static_cast<int>(ns.elems.size()))];
            int gl = reps[pick(static_cast<int>(reps.size()))];
            FpMat kh =
                conjugation_pullback(m, ws.sylow_site().site, hs, ws.sylow_site().site, hs, h);
            FpMat kg = conjugation_pullback(m, ws.sylow_site().site, hs, psc.site, hp, gl);
            FpMat lhs =
                conjugation_pullback(m, ws.sylow_site().site, hs, psc.site, hp, g->mul(h, gl));
            if (!(lhs == fp_mul(Fp(inst.p), kg, kh))) ++res.failures;
            ++res.instances;
          }
        }
      }
    }
  }
  return res;
}

inline SuiteResult suite_delta_stable() {
  using namespace detail;
  SuiteResult res{"delta image lies in the stable subspace"};
  Budget b;
  for (const auto& inst : kSmall) {
    auto g = named_group(inst.group);
    if (sylow_subgroup(g, inst.p).order() == 1) continue;
    FusionSystem f = FusionSystem::build(g, inst.p);
    for (const char* mn : {"trivial:1", "trivial:2", inst.twisted}) {
      GModule m = named_module(g, inst.group, inst.p, mn);
      NerveCohomology nc = nerve_cohomology(f, m, f.centric_collection(), false, b);
      StableWorkspace ws(f, m, b);
      for (int n = 0; n <= 2; ++n) {
        const HBasis& hn = nc.calc->h_basis(n);
        StableSubspace st = stable_subspace(ws, n, centric_family(f));
        if (st.skipped()) { ++res.failures; continue; }
        ++res.instances;
        if (hn.dim == 0) continue;
        const HBasis& hb = ws.sylow_site().calc->h_basis(n);
        FpMat delta = delta_comparison(*nc.cx, hn, ws.sylow_site().site, hb);
        std::vector<std::vector<std::uint8_t>> image;
        for (int c = 0; c < delta.cols; ++c) {
          std::vector<std::uint8_t> v(delta.rows);
          for (int r = 0; r < delta.rows; ++r) v[r] = delta.at(r, c);
          image.push_back(std::move(v));
        }
        if (!subspace_contained(inst.p, image, st.basis)) ++res.failures;
        res.instances += delta.cols;
      }
    }
  }
  return res;
}

inline SuiteResult suite_monotone() {
  using namespace detail;
  SuiteResult res{"stable subspaces shrink as the family grows"};
  Budget b;
  auto gen = fresh_rng();
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); };
  for (const auto& inst : kSmall) {
    auto g = named_group(inst.group);
    FusionSystem f = FusionSystem::build(g, inst.p);
    for (const char* mn : {"trivial:1", inst.twisted}) {
      GModule m = named_module(g, inst.group, inst.p, mn);
      StableWorkspace ws(f, m, b);
      std::vector<int> all = all_family(f);
      for (int n = 0; n <= 2; ++n)
        for (int trial = 0; trial < 3; ++trial) {
          std::vector<int> fam_b, fam_a;
          for (int c : all) {
            int r = pick(3);
            if (r > 0) fam_b.push_back(c);
            if (r > 1) fam_a.push_back(c);
          }
          StableSubspace sa = stable_subspace(ws, n, fam_a);
          StableSubspace sb = stable_subspace(ws, n, fam_b);
          if (!subspace_contained(inst.p, sb.basis, sa.basis) || sb.dim > sa.dim)
            ++res.failures;
          ++res.instances;
        }
    }
  }
  return res;
}

inline SuiteResult suite_homofunctor() {
  using namespace detail;
  SuiteResult res{"transporter and linking nerves agree"};
  for (const auto& inst : kSmall) {
    if (sylow_subgroup(named_group(inst.group), inst.p).order() == 1) continue;
    for (const char* mn : {"trivial:1", inst.twisted}) {
      CheckSpec s = make_spec("homofunctor", inst.group, inst.p, mn, 2);
      CheckReport rep = run_check(s);
      if (rep.verdict == "hypothesis-failed") continue;
      if (rep.verdict != "pass") ++res.failures;
      res.instances += 2 * static_cast<int>(rep.degrees.size());
    }
  }
  {
    CheckSpec s = make_spec("homofunctor", "SL23", 3, "adjoint3", 2);
    CheckReport rep = run_check(s);
    if (rep.verdict == "theorem-violated") ++res.failures;
    res.instances += static_cast<int>(rep.degrees.size());
  }
  for (const char* coll : {"cr", "quasicentric"})
    for (const auto& inst : {kSmall[2], kSmall[4]}) {
      CheckSpec s = make_spec("homofunctor", inst.group, inst.p, "trivial:1", 2, coll);
      if (run_check(s).verdict != "pass") ++res.failures;
      res.instances += 6;
    }
  for (const char* gn : {"C2", "C3", "C4", "D8", "Q8", "C9"}) {
    int p = (std::string(gn) == "C3" || std::string(gn) == "C9") ? 3 : 2;
    CheckSpec s = make_spec("homofunctor", gn, p, "trivial:1", 3);
    if (run_check(s).verdict != "pass") ++res.failures;
    res.instances += 8;
  }
  return res;
}

inline SuiteResult suite_collection_independence() {
  using namespace detail;
  SuiteResult res{"collection independence of nerve dimensions"};
  for (const auto& inst : kSmall) {
    if (sylow_subgroup(named_group(inst.group), inst.p).order() == 1) continue;
    for (const char* mn : {"trivial:1", "trivial:2", inst.twisted}) {
      CheckSpec s = make_spec("collection-independence", inst.group, inst.p, mn, 2);
      CheckReport rep = run_check(s);
      if (rep.verdict != "pass") ++res.failures;
      res.instances += 3 * static_cast<int>(rep.degrees.size());
    }
  }
  {
    CheckSpec s = make_spec("collection-independence", "SL23", 3, "trivial:1", 2);
    if (run_check(s).verdict != "pass") ++res.failures;
    res.instances += 6;
  }
  return res;
}

inline SuiteResult suite_strongly_p_embedded() {
  using namespace detail;
  SuiteResult res{"strongly p-embedded subgroups pass to index-p subgroups"};
  auto gen = fresh_rng();
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); };
  int nonvacuous = 0;
  std::vector<std::pair<const char*, int>> groups = {
      {"S3", 2}, {"S3", 3}, {"S4", 2}, {"A4", 2}, {"A4", 3}, {"D8", 2},
      {"Q8", 2}, {"SL23", 3}, {"C6", 2}, {"C6", 3}, {"A5", 2}, {"A5", 5},
      {"prod:S3:S3", 3}, {"prod:A4:C2", 2}, {"wreath:C2:2", 2}, {"wreath:S3:3", 3},
  };
  for (auto& [gn, p] : groups) {
    auto g = named_group(gn);
    auto spe = find_strongly_p_embedded(g, p);
    std::vector<Subgroup> subs = index_p_normal_subgroups(g, p);
    subs.push_back(full_subgroup(g));
    for (const auto& h : subs) {
      ++res.instances;
      if (!spe || h.order() % p != 0) continue;
      ++nonvacuous;
      if (!find_strongly_p_embedded(materialize(h), p).has_value()) ++res.failures;
    }
  }
  for (int trial = 0; trial < 90; ++trial) {
    int degree = 4 + pick(3);
    std::vector<std::uint16_t> a(degree), b2(degree);
    for (int i = 0; i < degree; ++i) a[i] = b2[i] = static_cast<std::uint16_t>(i);
    for (int i = degree - 1; i > 0; --i) std::swap(a[i], a[pick(i + 1)]);
    for (int i = degree - 1; i > 0; --i) std::swap(b2[i], b2[pick(i + 1)]);
    GroupPtr g;
    try {
      g = PermGroup::from_generators(degree, {Perm(a), Perm(b2)}, 5000);
    } catch (const Error&) {
      continue;
    }
    int p = pick(2) ? 2 : 3;
    if (g->order() % p != 0) continue;
    ++res.instances;
    std::optional<Subgroup> spe;
    try {
      spe = find_strongly_p_embedded(g, p);
    } catch (const Error&) {
      continue;
    }
    if (!spe) continue;
    for (const auto& h : index_p_normal_subgroups(g, p)) {
      if (h.order() % p != 0) continue;
      ++nonvacuous;
      if (!find_strongly_p_embedded(materialize(h), p).has_value()) ++res.failures;
    }
  }
  if (nonvacuous < 1) ++res.failures;
  std::ostringstream os;
  os << nonvacuous << " nonvacuous";
  res.note = os.str();
  return res;
}

inline SuiteResult suite_spot_checks() {
  using namespace detail;
  SuiteResult res{"subsystem and product essential spot checks"};
  int nonvacuous_total = 0;
  for (auto& [gn, p] : std::vector<std::pair<const char*, int>>{
           {"S4", 2}, {"A4", 2}, {"D8", 2}, {"SL23", 3}, {"wreath:S4:2", 2}}) {
    CheckSpec s = make_spec("subpessential", gn, p, "trivial:1", 2);
    CheckReport rep = run_check(s);
    if (rep.verdict != "pass") ++res.failures;
    ++res.instances;
    for (auto& note : rep.notes) {
      auto comma = note.find(", ");
      if (note.find("nonvacuous") != std::string::npos && comma != std::string::npos)
        nonvacuous_total += std::atoi(note.c_str() + comma + 2);
    }
  }
  if (nonvacuous_total < 1) ++res.failures;
  for (const char* a : {"S3", "S4", "A4", "D8", "C2", "C4"})
    for (const char* b2 : {"S3", "S4", "A4", "C2", "C6"})
      for (int p : {2, 3}) {
        std::string name = std::string("prod:") + a + ":" + b2;
        auto g = named_group(name);
        if (g->order() % p != 0 || g->order() > 600) continue;
        CheckSpec s = make_spec("product-essentials", name, p, "trivial:1", 2);
        if (run_check(s).verdict != "pass") ++res.failures;
        ++res.instances;
      }
  std::ostringstream os;
  os << nonvacuous_total << " nonvacuous subsystem cases";
  res.note = os.str();
  return res;
}

inline std::vector<SuiteResult> run_all() {
  return {suite_dd_zero(),       suite_h0_fixed(),
          suite_kappa(),         suite_delta_stable(),
          suite_monotone(),      suite_homofunctor(),
          suite_collection_independence(), suite_strongly_p_embedded(),
          suite_spot_checks()};
}

}  // namespace property_suites
