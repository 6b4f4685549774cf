#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qdp4/error.hpp"
#include "qdp4/groupoidsep.hpp"
#include "qdp4/hyperoct.hpp"

using namespace qdp4;

namespace {

using Table = std::vector<std::vector<int>>;

Table cyclic(int n) {
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

Table klein() {
  Table t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

// n objects, exactly |G| morphisms (a, b, k) between any two of them.
int pmor(int n, int order, int a, int b, int k) { return (a * n + b) * order + k; }

FiniteGroupoid pair_groupoid(int n, const Table& g) {
  const int order = static_cast<int>(g.size());
  const int m = n * n * order;
  std::vector<int> src(m), tgt(m), id(n), comp(std::size_t(m) * m, -1);
  for (int a = 0; a < n; ++a) {
    id[a] = pmor(n, order, a, a, 0);
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < order; ++k) {
        const int f = pmor(n, order, a, b, k);
        src[f] = a;
        tgt[f] = b;
        for (int c = 0; c < n; ++c)
          for (int l = 0; l < order; ++l) comp[std::size_t(pmor(n, order, b, c, l)) * m + f] = pmor(n, order, a, c, g[l][k]);
      }
  }
  return FiniteGroupoid(n, src, tgt, id, comp);
}

// (s2) over every pair (a, b) of morphisms.
bool s2_oracle(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi, const PsiFamily& psi) {
  const auto& om = phi.object_map;
  const auto& mm = phi.morphism_map;
  for (int a = 0; a < c.morphisms(); ++a)
    for (int b = 0; b < c.morphisms(); ++b) {
      const int x = c.tgt(a), y = c.src(b);
      for (int u : d.hom(om[x], om[y])) {
        const int lhs = psi(c.src(a), c.tgt(b), d.compose(mm[b], d.compose(u, mm[a])));
        const int inner = psi(x, y, u);
        if (inner < 0 || lhs != c.compose(b, c.compose(inner, a))) return false;
      }
    }
  return true;
}

std::vector<Splitting> class_bases(const GroupoidInstance& inst) {
  const auto cls = iso_classes(inst.c);
  std::vector<Splitting> out;
  for (const auto& s : inst.splittings)
    if (cls[s.object] == s.object) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("groupoid tables and validation") {
  auto z3 = FiniteGroupoid::from_group(cyclic(3));
  CHECK(z3.objects() == 1);
  CHECK(z3.morphisms() == 3);
  CHECK(validate(z3));
  CHECK(z3.inverse(1) == 2);
  CHECK(generators(z3).size() == 1);

  auto pg = pair_groupoid(3, klein());
  CHECK(validate(pg));
  CHECK(pg.hom(0, 2).size() == 4);
  CHECK(iso_classes(pg) == std::vector<int>{0, 0, 0});

  SUBCASE("non-invertible morphism") {
    auto monoid = FiniteGroupoid::from_group({{0, 1}, {1, 1}});
    auto w = validate(monoid);
    CHECK_FALSE(w);
    CHECK(w.data == std::vector<int>{1});
  }
  SUBCASE("malformed shapes throw") {
    CHECK_THROWS_AS(FiniteGroupoid(1, {0}, {0, 0}, {0}, {0}), Error);
    CHECK_THROWS_AS(FiniteGroupoid(1, {0}, {0}, {0}, {5}), Error);
    CHECK_THROWS_AS(FiniteGroupoid::from_group({{1, 0}, {0, 0}}), Error);
  }
  SUBCASE("composability mismatch") {
    auto bad = pair_groupoid(2, cyclic(1));
    auto comp = bad.compose_table();
    comp[0 * 4 + 3] = 0;  // id_0 after the morphism 1 -> 1
    FiniteGroupoid g(2, {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 3}, comp);
    CHECK_FALSE(validate(g));
  }
}

TEST_CASE("associativity check agrees with brute force on random loops") {
  std::mt19937_64 rng(11);
  int non_assoc = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    Table t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = a == 0 ? b : b == 0 ? a : static_cast<int>(rng() % n);
    bool assoc = true, inv = true;
    for (int a = 0; a < n; ++a) {
      bool has = false;
      for (int b = 0; b < n; ++b) {
        has = has || (t[a][b] == 0 && t[b][a] == 0);
        for (int c = 0; c < n; ++c) assoc = assoc && t[t[a][b]][c] == t[a][t[b][c]];
      }
      inv = inv && has;
    }
    non_assoc += !assoc;
    CHECK(static_cast<bool>(validate(FiniteGroupoid::from_group(t))) == (assoc && inv));
  }
  CHECK(non_assoc > 0);
}

TEST_CASE("functors") {
  auto z2 = FiniteGroupoid::from_group(cyclic(2));
  auto z4 = FiniteGroupoid::from_group(cyclic(4));
  CHECK(validate_functor(z2, z4, {{0}, {0, 2}}));
  auto w = validate_functor(z2, z4, {{0}, {0, 1}});
  CHECK_FALSE(w);
  CHECK(w.data == std::vector<int>{1, 1});
  CHECK_FALSE(validate_functor(z2, z4, {{0}, {1, 2}}));
  CHECK_FALSE(validate_functor(z2, z4, {{0}, {0}}));
}

TEST_CASE("injectivity on isomorphism classes") {
  // two disconnected points
  FiniteGroupoid two(2, {0, 1}, {0, 1}, {0, 1}, {0, -1, -1, 1});
  REQUIRE(validate(two));
  auto point = FiniteGroupoid::from_group(cyclic(1));
  CHECK(injective_on_iso_classes(two, two, {{0, 1}, {0, 1}}));
  auto w = injective_on_iso_classes(two, point, {{0, 0}, {0, 0}});
  CHECK_FALSE(w);
  CHECK(w.data == std::vector<int>{0, 1});
  CHECK_THROWS_AS(build_psi(two, point, {{0, 0}, {0, 0}}, {}), Error);

  // full subgroupoid on object 0 of a connected groupoid
  auto pg = pair_groupoid(2, cyclic(2));
  auto sub = FiniteGroupoid::from_group(cyclic(2));
  GroupoidFunctor incl{{0}, {pmor(2, 2, 0, 0, 0), pmor(2, 2, 0, 0, 1)}};
  CHECK(validate_functor(sub, pg, incl));
  CHECK(injective_on_iso_classes(sub, pg, incl));
}

TEST_CASE("identity functor with identity splittings") {
  auto pg = pair_groupoid(3, cyclic(3));
  GroupoidFunctor id{{0, 1, 2}, {}};
  for (int f = 0; f < pg.morphisms(); ++f) id.morphism_map.push_back(f);
  Splitting s{0, std::vector<int>(pg.morphisms(), -1)};
  for (int u : pg.hom(0, 0)) s.map[u] = u;
  auto psi = build_psi(pg, pg, id, {s});
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int u : pg.hom(x, y)) CHECK(psi(x, y, u) == u);
  CHECK(verify_heavy_separability(pg, pg, id, psi));
  CHECK(verify_s2(pg, pg, id, psi));
  CHECK(verify_left_inverse_functor(pg, pg, id, psi));
}

TEST_CASE("hyperoctahedral retraction") {
  auto inst = hyperoct_instance();
  CHECK(inst.c.morphisms() == 1920);
  CHECK(inst.d.morphisms() == 3840);
  REQUIRE(validate(inst.d));
  REQUIRE(validate(inst.c));
  REQUIRE(validate_functor(inst.c, inst.d, inst.phi));
  REQUIRE(verify_splitting(inst.c, inst.d, inst.phi, inst.splittings[0]));
  auto psi = build_psi(inst.c, inst.d, inst.phi, inst.splittings);
  const auto& all = SignedPerm::all();
  for (int u = 0; u < 3840; ++u)
    CHECK(inst.phi.morphism_map[psi(0, 0, u)] == retract(all[u]).index());
  CHECK(verify_heavy_separability(inst.c, inst.d, inst.phi, psi));
  CHECK(verify_s2(inst.c, inst.d, inst.phi, psi));
  auto found = find_splitting(inst.c, inst.d, inst.phi, 0, 100000000);
  REQUIRE(found);
  CHECK(verify_splitting(inst.c, inst.d, inst.phi, *found));
  CHECK_THROWS_AS(find_splitting(inst.c, inst.d, inst.phi, 0, 1000), Error);
}

TEST_CASE("isomorphic objects collapsed to one object") {
  auto pg = pair_groupoid(2, cyclic(2));
  auto z2 = FiniteGroupoid::from_group(cyclic(2));
  GroupoidFunctor collapse{{0, 0}, std::vector<int>(pg.morphisms())};
  for (int f = 0; f < pg.morphisms(); ++f) collapse.morphism_map[f] = f % 2;
  REQUIRE(validate_functor(pg, z2, collapse));
  auto s = find_splitting(pg, z2, collapse, 0);
  REQUIRE(s);
  auto psi = build_psi(pg, z2, collapse, {*s});
  CHECK(verify_heavy_separability(pg, z2, collapse, psi));
  CHECK(verify_s2(pg, z2, collapse, psi));
  CHECK(s2_oracle(pg, z2, collapse, psi));
  CHECK(verify_left_inverse_functor(pg, z2, collapse, psi));
  // Psi_{0,1}(u) is the morphism 0 -> 1 carrying u
  CHECK(psi(0, 1, 1) == pmor(2, 2, 0, 1, 1));
}

TEST_CASE("group without a splitting") {
  auto inst = nonsplit_instance();
  REQUIRE(validate(inst.c));
  REQUIRE(validate(inst.d));
  REQUIRE(validate_functor(inst.c, inst.d, inst.phi));
  CHECK_FALSE(find_splitting(inst.c, inst.d, inst.phi, 0).has_value());
  Splitting fake{0, {0, 1, 0, 1}};
  CHECK_FALSE(verify_splitting(inst.c, inst.d, inst.phi, fake));
  try {
    build_psi(inst.c, inst.d, inst.phi, {fake});
    FAIL("expected InvalidSplitting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSplitting);
  }
}

TEST_CASE("random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_instance(rng);
    CAPTURE(trial);
    REQUIRE(validate(inst.c));
    REQUIRE(validate(inst.d));
    REQUIRE(validate_functor(inst.c, inst.d, inst.phi));
    REQUIRE(injective_on_iso_classes(inst.c, inst.d, inst.phi));
    for (const auto& s : inst.splittings) REQUIRE(verify_splitting(inst.c, inst.d, inst.phi, s));
    for (int x = 0; x < inst.c.objects(); ++x) {
      auto found = find_splitting(inst.c, inst.d, inst.phi, x);
      REQUIRE(found);
      CHECK(verify_splitting(inst.c, inst.d, inst.phi, *found));
    }

    auto psi = build_psi(inst.c, inst.d, inst.phi, class_bases(inst));
    CHECK(verify_heavy_separability(inst.c, inst.d, inst.phi, psi));
    CHECK(verify_s2(inst.c, inst.d, inst.phi, psi));
    CHECK(s2_oracle(inst.c, inst.d, inst.phi, psi));
    CHECK(verify_left_inverse_functor(inst.c, inst.d, inst.phi, psi));

    // Psi_{X,X} restricted to the image of phi is a retraction
    for (int x = 0; x < inst.c.objects(); ++x) {
      const int o = inst.phi.object_map[x];
      for (int u : inst.d.hom(o, o)) {
        const int r = psi(x, x, u);
        CHECK(psi(x, x, inst.phi.morphism_map[r]) == r);
      }
    }

    auto report = independence_check(inst.c, inst.d, inst.phi, inst.splittings);
    CHECK(report.precondition_ok);
    CHECK(report.independent);
    CHECK(report.exhaustive);

    auto moved = transport_splittings(inst.c, inst.d, inst.phi, class_bases(inst));
    CHECK(independence_check(inst.c, inst.d, inst.phi, moved).independent);
  }
}

TEST_CASE("perturbed families are caught") {
  std::mt19937_64 rng(77);
  int caught = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = random_instance(rng);
    const auto& c = inst.c;
    const auto& d = inst.d;
    auto psi = build_psi(c, d, inst.phi, class_bases(inst));
    const int x = static_cast<int>(rng() % c.objects());
    const int y = static_cast<int>(rng() % c.objects());
    const auto& us = d.hom(inst.phi.object_map[x], inst.phi.object_map[y]);
    const auto& fs = c.hom(x, y);
    if (us.empty() || fs.size() < 2) continue;
    const int u = us[rng() % us.size()];
    const int old = psi(x, y, u);
    int f = fs[rng() % fs.size()];
    if (f == old) f = fs[(std::find(fs.begin(), fs.end(), f) - fs.begin() + 1) % fs.size()];
    psi.set(x, y, u, f);
    const bool s13 = static_cast<bool>(verify_heavy_separability(c, d, inst.phi, psi));
    CHECK(static_cast<bool>(verify_s2(c, d, inst.phi, psi)) == s2_oracle(c, d, inst.phi, psi));
    CHECK_FALSE((s13 && s2_oracle(c, d, inst.phi, psi)));
    CHECK_FALSE(s13);
    ++caught;
  }
  CHECK(caught > 10);
}

TEST_CASE("independence precondition") {
  // C: two isomorphic objects with group Z2; D: one object with Z2 x Z2
  // (encoded a ^ b), phi(g) = (g, 0). Both (g, h) -> g and (g, h) -> g + h
  // split, and mixing them breaks the conjugation squares.
  auto c = pair_groupoid(2, cyclic(2));
  auto d = FiniteGroupoid::from_group(klein());
  GroupoidFunctor phi{{0, 0}, std::vector<int>(c.morphisms())};
  for (int f = 0; f < c.morphisms(); ++f) phi.morphism_map[f] = (f % 2) * 2;
  REQUIRE(validate_functor(c, d, phi));
  auto split = [&](int object, bool twisted) {
    Splitting s{object, std::vector<int>(4)};
    for (int u = 0; u < 4; ++u) {
      const int g = u >> 1, h = u & 1;
      s.map[u] = pmor(2, 2, object, object, twisted ? g ^ h : g);
    }
    return s;
  };
  for (bool t : {false, true}) REQUIRE(verify_splitting(c, d, phi, split(0, t)));
  auto good = independence_check(c, d, phi, {split(0, true), split(1, true)});
  CHECK(good.precondition_ok);
  CHECK(good.independent);
  auto bad = independence_check(c, d, phi, {split(0, false), split(1, true)});
  CHECK_FALSE(bad.precondition_ok);
  CHECK_FALSE(bad.witness);
  CHECK_THROWS_AS(independence_check(c, d, phi, {split(0, false)}), Error);
}
