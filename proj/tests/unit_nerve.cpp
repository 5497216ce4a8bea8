#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionlab/names.hpp"
#include "fusionlab/stable.hpp"

using namespace fusionlab;

namespace {

std::vector<long long> nerve_dims(const NerveCohomology& nc, int nmax) {
  std::vector<long long> out;
  for (int n = 0; n <= nmax; ++n) {
    DegreeDim d = nc.calc->h_dim(n);
    out.push_back(d.skipped() ? -1 : *d.dim);
  }
  return out;
}

}  // namespace

TEST_CASE("transporter category structure") {
  auto s3 = named_group("S3");
  FusionSystem f = FusionSystem::build(s3, 3);
  FiniteCategory t = FiniteCategory::transporter(f, f.centric_collection());
  CHECK(t.object_count() == 1);
  CHECK(t.morphism_count() == 6);
  // identities present, composition closes
  CHECK(t.identity_at(0) >= 0);
  for (int a = 0; a < t.morphism_count(); ++a)
    for (int b = 0; b < t.morphism_count(); ++b) CHECK(t.compose(a, b) >= 0);
  // associativity on a sample
  for (int a = 0; a < t.morphism_count(); ++a)
    for (int b = 0; b < t.morphism_count(); ++b)
      for (int c = 0; c < t.morphism_count(); ++c)
        CHECK(t.compose(t.compose(a, b), c) == t.compose(a, t.compose(b, c)));

  auto s4 = named_group("S4");
  FusionSystem f4 = FusionSystem::build(s4, 2);
  FiniteCategory t4 = FiniteCategory::transporter(f4, f4.centric_collection());
  CHECK(t4.object_count() == 4);
  // |Mor(V, V)| = |T_{S4}(V, V)| = 24 for the normal Klein four
  int v_sub = f4.index_of(residuals(s4, 2).core_p.elems);
  int v_obj = t4.object_of_subgroup(v_sub);
  REQUIRE(v_obj >= 0);
  CHECK(t4.hom_size(v_obj, v_obj) == 24);
  // not closed under overgroups
  CHECK_THROWS_AS(FiniteCategory::transporter(f4, std::vector<int>{v_sub}), Error);
}

TEST_CASE("linking category structure") {
  auto s3 = named_group("S3");
  FusionSystem f = FusionSystem::build(s3, 3);
  FiniteCategory l = FiniteCategory::linking(f, f.centric_collection());
  CHECK(l.morphism_count() == 6);  // O^3(C_{S3}(C3)) = 1
  auto s4 = named_group("S4");
  FusionSystem f4 = FusionSystem::build(s4, 2);
  FiniteCategory l4 = FiniteCategory::linking(f4, f4.centric_collection());
  int v_obj = l4.object_of_subgroup(f4.index_of(residuals(s4, 2).core_p.elems));
  CHECK(l4.hom_size(v_obj, v_obj) == 24);  // O^2(C(V)) = O^2(V) = 1
}

TEST_CASE("one-object nerve equals the bar complex") {
  Budget b;
  for (auto name : {"C2", "C3", "C4", "S3"}) {
    auto g = named_group(name);
    int p = (std::string(name) == "C3" || std::string(name) == "S3") ? 3 : 2;
    FusionSystem f = FusionSystem::build(g, p);
    GModule m = GModule::trivial(g, p, 1);
    // collection {S} alone: valid only if S has no proper centrics; use the
    // full-subgroup collection of the p-group S itself
    if (sylow_subgroup(g, p).order() != g->order()) continue;
    std::vector<int> coll{f.sylow_index()};
    if (!f.collection_is_valid(coll)) continue;
    NerveCohomology nc = nerve_cohomology(f, m, coll, false, b);
    auto bar = bar_cohomology_dims(g, m, 3, b);
    for (int n = 0; n <= 3; ++n) {
      DegreeDim nd = nc.calc->h_dim(n);
      REQUIRE_FALSE(nd.skipped());
      CHECK(*nd.dim == *bar[n].dim);
    }
  }
}

TEST_CASE("chain census") {
  auto s3 = named_group("S3");
  FusionSystem f = FusionSystem::build(s3, 3);
  FiniteCategory t = FiniteCategory::transporter(f, f.centric_collection());
  auto census = chain_census(t, 3);
  CHECK(census == std::vector<std::int64_t>{1, 5, 25, 125});
  // point category: a p-group S with the collection {S} has |S| morphisms;
  // with the trivial group the normalized chains vanish
  auto c1 = PermGroup::from_generators(1, {});
  FusionSystem f1 = FusionSystem::build(c1, 2);
  FiniteCategory point = FiniteCategory::transporter(f1, f1.all_collection());
  auto pc = chain_census(point, 2);
  CHECK(pc == std::vector<std::int64_t>{1, 0, 0});
  GModule m1 = GModule::trivial(c1, 2, 3);
  NerveComplex cx(point, m1);
  Budget b;
  ComplexCohomology calc(std::make_shared<NerveComplex>(point, m1), b);
  CHECK(*calc.h_dim(0).dim == 3);  // H^0 = M
  CHECK(*calc.h_dim(1).dim == 0);
}

TEST_CASE("nerve dims over the centric collection") {
  Budget b;
  auto s3 = named_group("S3");
  FusionSystem f = FusionSystem::build(s3, 3);
  auto nc = nerve_cohomology(f, GModule::trivial(s3, 3, 1), f.centric_collection(), false, b);
  CHECK(nerve_dims(nc, 3) == std::vector<long long>{1, 0, 0, 1});
  auto ns = nerve_cohomology(f, GModule::sign(s3, 3), f.centric_collection(), false, b);
  CHECK(nerve_dims(ns, 3) == std::vector<long long>{0, 1, 1, 0});
}

TEST_CASE("delta comparison") {
  Budget b;
  auto d8 = named_group("D8");
  FusionSystem f = FusionSystem::build(d8, 2);
  GModule m = GModule::trivial(d8, 2, 1);
  // one-object category of S: the comparison map is the identity
  std::vector<int> coll{f.sylow_index()};
  NerveCohomology nc = nerve_cohomology(f, m, coll, false, b);
  StableWorkspace ws(f, m, b);
  for (int n = 1; n <= 2; ++n) {
    const HBasis& hn = nc.calc->h_basis(n);
    SiteCohomology& sc = ws.sylow_site();
    FpMat delta = delta_comparison(*nc.cx, hn, sc.site, sc.calc->h_basis(n));
    CHECK(delta.rows == delta.cols);
    CHECK(delta.is_identity());
  }
}

TEST_CASE("incompatible local systems on linking nerves") {
  auto c6 = named_group("C6");
  FpMat bm(2, 2);
  bm.at(0, 1) = bm.at(1, 0) = bm.at(1, 1) = 1;
  GModule m = GModule::from_generator_action(c6, 2, 2, {bm});
  FusionSystem f = FusionSystem::build(c6, 2);
  Budget b;
  CHECK_THROWS_AS(nerve_cohomology(f, m, f.centric_collection(), true, b), Error);
  // the transporter nerve carries any coefficients
  CHECK_NOTHROW(nerve_cohomology(f, m, f.centric_collection(), false, b));
}
