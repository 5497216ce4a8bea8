#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionlab/cohomology.hpp"
#include "fusionlab/fusion.hpp"
#include "fusionlab/names.hpp"
#include "oracles.hpp"

using namespace fusionlab;

namespace {

std::vector<long long> dims_of(GroupPtr g, const GModule& m, int nmax,
                               std::uint64_t cap = Budget{}.cell_cap) {
  Budget b;
  b.cell_cap = cap;
  std::vector<long long> out;
  for (auto& d : bar_cohomology_dims(g, m, nmax, b)) out.push_back(d.dim ? *d.dim : -1);
  return out;
}

}  // namespace

TEST_CASE("cyclic group dimensions") {
  auto c2 = named_group("C2");
  CHECK(dims_of(c2, GModule::trivial(c2, 2, 1), 3) == std::vector<long long>{1, 1, 1, 1});
  {
    auto t = oracle::close(2, oracle::gens_cyclic(2));
    CHECK(oracle::cohomology_dims(t, oracle::trivial_action(t, 1), 1, 2, 3) ==
          std::vector<int>{1, 1, 1, 1});
  }
  auto c3 = named_group("C3");
  CHECK(dims_of(c3, GModule::trivial(c3, 3, 1), 3) == std::vector<long long>{1, 1, 1, 1});
  // coprime coefficients vanish in positive degrees
  CHECK(dims_of(c3, GModule::trivial(c3, 2, 1), 3) == std::vector<long long>{1, 0, 0, 0});
}

TEST_CASE("symmetric group dimensions against the oracle") {
  auto s3 = named_group("S3");
  CHECK(dims_of(s3, GModule::trivial(s3, 3, 1), 3) == std::vector<long long>{1, 0, 0, 1});
  CHECK(dims_of(s3, GModule::sign(s3, 3), 3) == std::vector<long long>{0, 1, 1, 0});
  {
    auto t = oracle::close(3, oracle::gens_s3());
    CHECK(oracle::cohomology_dims(t, oracle::trivial_action(t, 1), 1, 3, 3) ==
          std::vector<int>{1, 0, 0, 1});
    // sign action from the stored permutations
    std::vector<std::vector<int>> sgn;
    for (const auto& e : t.elems) {
      int inversions = 0;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
          if (e[i] > e[j]) ++inversions;
      sgn.push_back({inversions % 2 ? 2 : 1});
    }
    CHECK(oracle::cohomology_dims(t, sgn, 1, 3, 3) == std::vector<int>{0, 1, 1, 0});
  }
}

TEST_CASE("dihedral group") {
  auto d8 = named_group("D8");
  auto dims = dims_of(d8, GModule::trivial(d8, 2, 1), 3);
  // H^1 equals the rank of the elementary abelian quotient
  CHECK(dims[1] == elementary_p_rank(full_subgroup(d8), 2));
  CHECK(dims[1] == 2);
  {
    auto t = oracle::close(4, oracle::gens_d8());
    auto odims = oracle::cohomology_dims(t, oracle::trivial_action(t, 1), 1, 2, 2);
    CHECK(dims[0] == odims[0]);
    CHECK(dims[1] == odims[1]);
    CHECK(dims[2] == odims[2]);
  }
}

TEST_CASE("quaternion group has period four") {
  auto q8 = named_group("Q8");
  REQUIRE(q8->order() == 8);
  // exactly one involution
  int invol = 0;
  for (std::size_t e = 1; e < q8->order(); ++e)
    if (q8->element_order(static_cast<int>(e)) == 2) ++invol;
  CHECK(invol == 1);
  auto dims = dims_of(q8, GModule::trivial(q8, 2, 1), 3);
  CHECK(dims == std::vector<long long>{1, 2, 2, 1});
}

TEST_CASE("degree-one dimensions equal abelianization ranks") {
  for (auto name : {"S4", "A4", "Q8", "C4", "C9", "wreath:C2:2"}) {
    auto g = named_group(name);
    for (int p : {2, 3}) {
      if (g->order() % p != 0) continue;
      auto dims = dims_of(g, GModule::trivial(g, p, 1), 1);
      CHECK(dims[1] == elementary_p_rank(full_subgroup(g), p));
    }
  }
}

TEST_CASE("restriction is natural in the subgroup") {
  // Res^P_{P'} . kappa_g^{(P)} = kappa_g^{(P')} for P' <= P
  Budget b;
  auto s4 = named_group("S4");
  GModule m = named_module(s4, "S4", 2, "quo6");
  FusionSystem f = FusionSystem::build(s4, 2);
  Fp fp(2);
  SiteCohomology s_sc = site_cohomology(m, f.sylow(), b);
  Subgroup v = residuals(s4, 2).core_p;
  SiteCohomology p_sc = site_cohomology(m, v, b);
  Subgroup z = center(f.sylow());  // inside V
  REQUIRE(v.contains_all(z));
  SiteCohomology z_sc = site_cohomology(m, z, b);
  for (int n = 1; n <= 2; ++n) {
    const HBasis& hs = s_sc.calc->h_basis(n);
    const HBasis& hp = p_sc.calc->h_basis(n);
    const HBasis& hz = z_sc.calc->h_basis(n);
    if (hs.dim == 0 || hz.dim == 0) continue;
    for (int g : f.hom_reps(f.index_of(v.elems), f.sylow_index())) {
      FpMat kap_p = conjugation_pullback(m, s_sc.site, hs, p_sc.site, hp, g);
      FpMat res = conjugation_pullback(m, p_sc.site, hp, z_sc.site, hz, 0);
      FpMat kap_z = conjugation_pullback(m, s_sc.site, hs, z_sc.site, hz, g);
      CHECK(kap_z == fp_mul(fp, res, kap_p));
    }
  }
}

TEST_CASE("H^0 is the fixed space") {
  for (auto name : {"S3", "S4", "A4", "D8"}) {
    auto g = named_group(name);
    for (const char* mn : {"trivial:2", "sign"}) {
      GModule m = named_module(g, name, 3, mn);
      auto dims = dims_of(g, m, 0);
      CHECK(dims[0] ==
            static_cast<long long>(fixed_points_subgroup(m, full_subgroup(g)).size()));
    }
  }
}

TEST_CASE("budget gate") {
  auto s4 = named_group("S4");
  auto dims = dims_of(s4, GModule::trivial(s4, 2, 1), 3, 1000);
  CHECK(dims[0] == 1);   // fixed points still cheap
  CHECK(dims[3] == -1);  // skipped
  Budget tiny;
  tiny.cell_cap = 1000;
  auto cx = std::make_shared<BarComplex>(s4, GModule::trivial(s4, 2, 1));
  ComplexCohomology calc(cx, tiny);
  CHECK_THROWS_AS(calc.h_basis(3), Error);
}

TEST_CASE("restriction and conjugation pullbacks") {
  Budget b;
  auto c4 = named_group("C4");
  GModule t4 = GModule::trivial(c4, 2, 1);
  SiteCohomology full = site_cohomology(t4, full_subgroup(c4), b);
  // Res to the whole group is the identity
  const HBasis& h1 = full.calc->h_basis(1);
  FpMat res_self = conjugation_pullback(t4, full.site, h1, full.site, h1, 0);
  CHECK(res_self.is_identity());
  // Res^{C4}_{C2} kills H^1 with trivial F_2 coefficients
  int sq = -1;
  for (std::size_t e = 1; e < c4->order(); ++e)
    if (c4->element_order(static_cast<int>(e)) == 2) sq = static_cast<int>(e);
  Subgroup c2 = subgroup_from_gens(c4, {sq});
  SiteCohomology sub = site_cohomology(t4, c2, b);
  FpMat res = conjugation_pullback(t4, full.site, h1, sub.site, sub.calc->h_basis(1), 0);
  CHECK(fp_rank(Fp(2), res) == 0);
  // restriction to the trivial subgroup kills positive degrees
  SiteCohomology triv = site_cohomology(t4, trivial_subgroup(c4), b);
  CHECK(triv.calc->h_basis(1).dim == 0);
}

TEST_CASE("kappa examples") {
  Budget b;
  auto s3 = named_group("S3");
  GModule sgn = GModule::sign(s3, 3);
  Subgroup c3 = sylow_subgroup(s3, 3);
  SiteCohomology sc = site_cohomology(sgn, c3, b);
  const HBasis& h1 = sc.calc->h_basis(1);
  REQUIRE(h1.dim == 1);
  // g = (1 2): inversion pullback combined with the sign twist is the identity
  int g12 = s3->index_of(Perm::from_cycles(3, {{1, 2}}));
  FpMat kap = kappa_map(sgn, 3, sc.site, h1, sc.site, h1, g12);
  CHECK(kap.is_identity());
  // the identity lift gives the restriction
  FpMat kap_e = conjugation_pullback(sgn, sc.site, h1, sc.site, h1, 0);
  CHECK(kap_e.is_identity());
  // inner conjugation paired with the module action is trivial on H^n(S, M)
  auto d8 = named_group("D8");
  GModule t2 = GModule::trivial(d8, 2, 1);
  SiteCohomology sd = site_cohomology(t2, full_subgroup(d8), b);
  const HBasis& h2 = sd.calc->h_basis(2);
  for (int g : {1, 2, 5}) {
    FpMat k = conjugation_pullback(t2, sd.site, h2, sd.site, h2, g);
    CHECK(k.is_identity());
  }
}

TEST_CASE("kappa refuses incompatible modules") {
  auto c6 = named_group("C6");
  FpMat bmat(2, 2);
  bmat.at(0, 1) = bmat.at(1, 0) = bmat.at(1, 1) = 1;
  GModule m = GModule::from_generator_action(c6, 2, 2, {bmat});
  Budget b;
  Subgroup c2 = sylow_subgroup(c6, 2);
  SiteCohomology s_site = site_cohomology(m, full_subgroup(c6), b);
  SiteCohomology p_site = site_cohomology(m, c2, b);
  const HBasis& hs = s_site.calc->h_basis(1);
  const HBasis& hp = p_site.calc->h_basis(1);
  CHECK_THROWS_AS(kappa_map(m, 2, s_site.site, hs, p_site.site, hp, 0), Error);
}

TEST_CASE("coordinates round-trip") {
  Budget b;
  auto d8 = named_group("D8");
  GModule t2 = GModule::trivial(d8, 2, 1);
  auto cx = std::make_shared<BarComplex>(d8, t2);
  ComplexCohomology calc(cx, b);
  const HBasis& h = calc.h_basis(2);
  REQUIRE(h.dim >= 2);
  for (std::size_t i = 0; i < h.reps.size(); ++i) {
    auto coords = h.coordinates(h.reps[i]);
    for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1 : 0));
  }
}
