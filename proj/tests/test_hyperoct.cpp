#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qdp4/hyperoct.hpp"

using namespace qdp4;

namespace {

// Parity of the 10-point permutation, computed by counting inversions.
bool parity_by_inversions(const SignedPerm& a) {
  std::array<int, 10> img{};
  for (int i = 0; i < 5; ++i)
    for (int s : {1, -1}) {
      auto [j, t] = a.apply(i, s);
      img[2 * i + (s < 0)] = 2 * j + (t < 0);
    }
  int inv = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) inv += img[i] > img[j];
  return inv % 2 == 0;
}

SignedPerm random_element(std::mt19937_64& rng) { return SignedPerm::from_index(static_cast<int>(rng() % 3840)); }

}  // namespace

TEST_CASE("group axioms") {
  const SignedPerm e;
  const SignedPerm c = SignedPerm::central();
  CHECK(c * c == e);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    auto a = random_element(rng), b = random_element(rng), d = random_element(rng);
    CHECK(e * a == a);
    CHECK(a * e == a);
    CHECK(a * a.inverse() == e);
    CHECK(a.inverse() * a == e);
    CHECK((a * b) * d == a * (b * d));
    // composition is composition of actions
    for (int i = 0; i < 5; ++i)
      for (int s : {1, -1}) {
        auto [j, u] = b.apply(i, s);
        CHECK((a * b).apply(i, s) == a.apply(j, u));
      }
    CHECK(c * a == a * c);
  }
}

TEST_CASE("enumeration and indexing") {
  const auto& all = SignedPerm::all();
  CHECK(all.size() == 3840);
  std::set<SignedPerm> distinct(all.begin(), all.end());
  CHECK(distinct.size() == 3840);
  for (int i = 0; i < 3840; ++i) CHECK(all[i].index() == i);
  int even = 0;
  for (const auto& a : all) even += a.is_even();
  CHECK(even == 1920);
}

TEST_CASE("parity") {
  CHECK(SignedPerm().is_even());
  CHECK_FALSE(SignedPerm({0, 1, 2, 3, 4}, {1, 1, -1, 1, 1}).is_even());
  CHECK(SignedPerm({1, 0, 2, 3, 4}, {1, 1, 1, 1, 1}).is_even());
  CHECK_FALSE(SignedPerm::central().is_even());
  for (const auto& a : SignedPerm::all()) {
    CHECK(a.is_even() == parity_by_inversions(a));
    CHECK(a.is_even() == (a.minus_count() % 2 == 0));
  }
}

TEST_CASE("retract") {
  const SignedPerm e;
  CHECK(retract(SignedPerm::central()) == e);
  std::mt19937_64 rng(2);
  for (const auto& a : SignedPerm::all()) {
    CHECK(retract(a).is_even());
    CHECK(retract(a).perm() == a.perm());
    if (a.is_even()) CHECK(retract(a) == a);
  }
  for (int t = 0; t < 20000; ++t) {
    auto a = random_element(rng), b = random_element(rng);
    CHECK(retract(a * b) == retract(a) * retract(b));
  }
}

TEST_CASE("D5 -> S5 is onto with kernel of order 16") {
  std::set<Perm5> image;
  int kernel = 0;
  for (const auto& a : SignedPerm::all()) {
    if (!a.is_even()) continue;
    image.insert(a.perm());
    kernel += a.perm() == Perm5{0, 1, 2, 3, 4};
  }
  CHECK(image.size() == 120);
  CHECK(kernel == 16);
}

TEST_CASE("cycle signatures") {
  auto sig = CycleSignature::of(SignedPerm({1, 2, 3, 4, 0}, {1, 1, -1, 1, 1}));
  CHECK(sig.cycles() == std::vector<std::pair<int, int>>{{5, -1}});
  CHECK(sig.trace_power(1) == 0);
  CHECK(sig.trace_power(5) == -5);
  CHECK(sig.trace_power(10) == 5);
  CycleSignature mixed({{1, -1}, {2, 1}, {2, -1}});
  CHECK(mixed.cycles() == std::vector<std::pair<int, int>>{{2, 1}, {2, -1}, {1, -1}});
  CHECK(mixed.plus_count() == 1);
  CHECK_THROWS_AS(CycleSignature({{0, 1}}), Error);
  CHECK_THROWS_AS(CycleSignature({{2, 3}}), Error);
  // representatives recover their signature, and conjugates share it
  std::mt19937_64 rng(4);
  for (const auto& a : SignedPerm::all()) {
    auto s = CycleSignature::of(a);
    CHECK(CycleSignature::of(s.representative5()) == s);
    auto g = random_element(rng);
    CHECK(CycleSignature::of(g * a * g.inverse()) == s);
  }
}

TEST_CASE("trace of powers matches the signed permutation matrix") {
  for (const auto& a : SignedPerm::all()) {
    auto sig = CycleSignature::of(a);
    SignedPerm pw;
    for (int k = 1; k <= 6; ++k) {
      pw = pw * a;
      long long tr = 0;
      for (int i = 0; i < 5; ++i)
        if (pw.perm()[i] == i) tr += pw.signs()[i];
      CHECK(sig.trace_power(k) == tr);
    }
  }
}

TEST_CASE("fiber product") {
  auto q = Field::rationals();
  std::vector<AutElement> trivial{{Moebius::identity(q), {0, 1, 2, 3, 4}}};
  auto fp = fiber_product(trivial);
  CHECK(fp.size() == 16);
  for (const auto& x : fp) {
    CHECK(x.signed_perm.is_even());
    CHECK(x.signed_perm.perm() == Perm5{0, 1, 2, 3, 4});
  }

  std::vector<ProjPoint> pts{ProjPoint::infinity(q)};
  for (int z = 0; z < 4; ++z) pts.push_back(ProjPoint::affine(Scalar::from_int(q, z)));
  auto aut = aut_group(PointConfiguration(pts));
  fp = fiber_product(aut);
  CHECK(fp.size() == 32);
  // lift count: even signed perms over each image, counted directly
  std::size_t lifts = 0;
  for (const auto& a : aut)
    for (const auto& s : SignedPerm::all()) lifts += s.is_even() && s.perm() == a.perm;
  CHECK(lifts == 32);
  for (const auto& x : fp)
    for (const auto& y : fp) {
      auto z = x * y;
      bool found = false;
      for (const auto& w : fp) found |= w.signed_perm == z.signed_perm && w.aut.moebius == z.aut.moebius;
      CHECK(found);
    }

  std::vector<AutElement> broken{aut[1]};
  CHECK_THROWS_AS(fiber_product(broken), Error);
}

TEST_CASE("retract_fiber") {
  auto q = Field::rationals();
  AutElement id{Moebius::identity(q), {0, 1, 2, 3, 4}};
  auto r = retract_fiber(SignedPerm::central(), id);
  CHECK(r.signed_perm == SignedPerm());
  CHECK(r.aut.moebius.is_identity());
  try {
    retract_fiber(SignedPerm({1, 0, 2, 3, 4}, {1, 1, 1, 1, 1}), id);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FiberMismatch);
  }
  std::vector<ProjPoint> pts{ProjPoint::infinity(q)};
  for (int z = 0; z < 4; ++z) pts.push_back(ProjPoint::affine(Scalar::from_int(q, z)));
  auto aut = aut_group(PointConfiguration(pts));
  std::mt19937_64 rng(5);
  std::vector<std::pair<SignedPerm, AutElement>> pairs;
  for (const auto& a : aut)
    for (const auto& s : SignedPerm::all())
      if (s.perm() == a.perm) pairs.push_back({s, a});
  for (int t = 0; t < 10000; ++t) {
    const auto& [s1, a1] = pairs[rng() % pairs.size()];
    const auto& [s2, a2] = pairs[rng() % pairs.size()];
    FiberElement prod{s1 * s2, (FiberElement{s1, a1} * FiberElement{s2, a2}).aut};
    auto lhs = retract_fiber(prod.signed_perm, prod.aut);
    auto rhs = retract_fiber(s1, a1) * retract_fiber(s2, a2);
    CHECK(lhs.signed_perm == rhs.signed_perm);
    CHECK(lhs.aut.moebius == rhs.aut.moebius);
    if (s1.is_even()) CHECK(retract_fiber(s1, a1).signed_perm == s1);
  }
}

TEST_CASE("aut0 matrices") {
  auto q = Field::rationals();
  auto ms = aut0_matrices(q);
  CHECK(ms.size() == 16);
  CHECK(ms[0] == Mat::identity(q, 5));
  std::set<std::string> seen;
  auto a = Mat::from_ints(q, {{1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 2, 0}, {0, 0, 0, 0, 3}});
  auto b = Mat::from_ints(q, {{0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
  for (const auto& m : ms) {
    CHECK(m.transpose() * a * m == a);
    CHECK(m.transpose() * b * m == b);
    std::string key;
    for (int i = 0; i < 5; ++i) key += m(i, i).to_string();
    seen.insert(key);
  }
  CHECK(seen.size() == 16);
  // diag(1,1,1,1,-1) is projectively diag(-1,-1,-1,-1,1)
  bool has = false;
  for (const auto& m : ms) has |= m == Mat::diagonal(q, {Scalar::one(q), Scalar::one(q), Scalar::one(q), Scalar::one(q), -Scalar::one(q)});
  CHECK(has);
}
