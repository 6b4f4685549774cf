#include "qdp4/selftest.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "qdp4/error.hpp"
#include "qdp4/groupoidsep.hpp"
#include "qdp4/hyperoct.hpp"
#include "qdp4/kgroups.hpp"
#include "qdp4/pencil.hpp"
#include "qdp4/picard.hpp"

namespace qdp4 {

namespace {

struct Tally {
  SuiteResult& r;
  void check(bool ok, const std::string& what) {
    ++r.checks;
    if (ok) return;
    ++r.failures;
    if (r.detail.empty()) r.detail = what;
  }
};

void weyl_order(Tally& t) {
  const auto& w = weyl_group();
  t.check(w.size() == 1920, "Weyl group has order " + std::to_string(w.size()));
  std::set<int> images;
  for (const auto& g : w) {
    const auto a = to_signed_perm(g);
    t.check(a.is_even(), "odd image " + a.to_string());
    images.insert(a.index());
  }
  t.check(images.size() == 1920, "images are not distinct");
}

void zero_class_census(Tally& t) {
  const PicClass k = canonical_class();
  std::set<PicClass> found;
  PicClass h{};
  std::function<void(int)> box = [&](int i) {
    if (i == 6) {
      if (intersect(h, h) == 0 && intersect(h, k) == -2) found.insert(h);
      return;
    }
    for (long long v = -3; v <= 3; ++v) {
      h[i] = v;
      box(i + 1);
    }
  };
  box(0);
  const std::set<PicClass> listed(zero_classes().begin(), zero_classes().end());
  t.check(found == listed, "box search found " + std::to_string(found.size()) + " zero-classes");
  std::set<std::set<PicClass>> pairs;
  for (const auto& x : found) {
    const PicClass y = -k - x;
    t.check(found.count(y) == 1, "partner of a zero-class is missing");
    t.check(intersect(x, y) == 2, "partners do not meet twice");
    t.check(pair_of(x) == y, "pair_of disagrees with -K - h");
    pairs.insert({x, y});
  }
  t.check(pairs.size() == 5, "expected 5 pairs");
}

void retract_homomorphism(Tally& t) {
  const auto& all = SignedPerm::all();
  std::vector<SignedPerm> r;
  for (const auto& a : all) {
    r.push_back(retract(a));
    t.check(r.back().is_even(), "retract leaves D5 at " + a.to_string());
    t.check(r.back().perm() == a.perm(), "retract changes the permutation of " + a.to_string());
    if (a.is_even()) t.check(r.back() == a, "retract moves the even element " + a.to_string());
  }
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      if (!(r[(all[i] * all[j]).index()] == r[i] * r[j])) ++bad;
  t.r.checks += all.size() * all.size() - 1;
  t.check(bad == 0, std::to_string(bad) + " products break the homomorphism property");
}

void rank_formulas(Tally& t) {
  for (const auto& a : SignedPerm::all()) {
    const auto sig = CycleSignature::of(a);
    const auto act = action_of(a);
    for (auto sp : {RankSpace::Picard, RankSpace::Wpl, RankSpace::SurfaceK0, RankSpace::TorsionPart})
      t.check(kernel_invariant_rank(sp, act) == g_invariant_rank(sp, sig),
              std::string("rank mismatch on ") + to_string(sp) + " at " + a.to_string());
  }
  for (const auto& sig : {CycleSignature({{5, -1}}), CycleSignature({{3, -1}, {2, -1}})}) {
    t.check(invariant_rank(sig) == 1 && g_invariant_rank(RankSpace::Wpl, sig) == 2 &&
                g_invariant_rank(RankSpace::TorsionPart, sig) == 1,
            "minimal triple is not (1, 2, 1) for " + sig.to_string());
  }
  for (int n : {4, 5}) {
    const auto r = conic_bundle_ranks(n, CycleSignature({{n, -1}}), true);
    t.check(r.k0x_rank == 4 && r.atom_rank == 2, "conic bundle ranks at n = " + std::to_string(n));
  }
}

std::size_t lift_count(const std::vector<AutElement>& aut) {
  std::size_t n = 0;
  for (const auto& a : aut)
    for (const auto& s : SignedPerm::all()) n += s.is_even() && s.perm() == a.perm;
  return n;
}

void fiber_product_order(Tally& t) {
  std::vector<PointConfiguration> configs;
  const auto q = Field::rationals();
  std::vector<ProjPoint> special{ProjPoint::infinity(q)};
  for (int z = 0; z < 4; ++z) special.push_back(ProjPoint::affine(Scalar::from_int(q, z)));
  configs.emplace_back(special);
  std::mt19937_64 rng(5);
  for (auto f : {Field::prime(101), Field::prime(13), Field::prime(7)})
    for (int i = 0; i < 8; ++i) {
      std::vector<ProjPoint> pts;
      while (pts.size() < 5) {
        auto z = ProjPoint::affine(Scalar::from_int(f, static_cast<long long>(rng() % f->characteristic())));
        if (std::find(pts.begin(), pts.end(), z) == pts.end()) pts.push_back(z);
      }
      configs.emplace_back(pts);
    }
  int trivial = 0;
  for (const auto& c : configs) {
    const auto aut = aut_group(c);
    trivial += aut.size() == 1;
    const auto fp = fiber_product(aut);
    t.check(fp.size() == 16 * aut.size(), "fiber product order " + std::to_string(fp.size()) + " for |Aut P| = " +
                                              std::to_string(aut.size()));
    t.check(fp.size() == lift_count(aut), "fiber product misses lifts");
  }
  t.check(aut_group(configs[0]).size() == 2, "{inf, 0, 1, 2, 3} should have Aut of order 2");
  t.check(trivial > 0, "no generic configuration with trivial Aut");
}

void serre_lemma_hh(Tally& t) {
  const auto qf = Field::rationals();
  auto to_q = [&](const std::vector<long long>& v) {
    std::vector<Scalar> out;
    for (long long x : v) out.push_back(Scalar::from_int(qf, x));
    return out;
  };
  const Mat sa = atom_serre();
  for (const auto& h : zero_classes()) {
    const auto x = to_q(atom_coords(class_of(-h)));
    t.check(sa * x == to_q(atom_coords(-class_of(-pair_of(h)))), "Serre image of O(-h) is not O(-h')[1]");
    t.check(sa * (sa * x) == x, "Serre operator does not square to the identity on O(-h)");
  }
  std::vector<PicClass> hs;
  for (int i = 0; i < 5; ++i) hs.push_back(pair_representative(i));
  for (int i = 0; i < 5; ++i) hs.push_back(pair_of(pair_representative(i)));
  const Mat e = wpl_gram(5);
  auto simple = [&](int i) {
    std::vector<Scalar> v(7, Scalar::zero(qf));
    if (i < 5) {
      v[2 + i] = Scalar::one(qf);
    } else {
      v[1] = Scalar::one(qf);
      v[2 + i - 5] = Scalar::from_int(qf, -1);
    }
    return v;
  };
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      Scalar w = Scalar::zero(qf);
      const auto si = simple(i), sj = simple(j);
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) w += si[a] * e(a, b) * sj[b];
      t.check(Scalar::from_rational(qf, euler_x(class_of(-hs[i]), class_of(-hs[j]))) == w,
              "Gram entries differ at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
}

void heavy_separability(Tally& t) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    auto inst = random_instance(rng);
    const auto cls = iso_classes(inst.c);
    std::vector<Splitting> bases;
    for (const auto& s : inst.splittings)
      if (cls[s.object] == s.object) bases.push_back(s);
    const auto psi = build_psi(inst.c, inst.d, inst.phi, bases);
    const std::string tag = "random instance " + std::to_string(i);
    auto w = verify_heavy_separability(inst.c, inst.d, inst.phi, psi);
    t.check(w.ok, tag + ": " + w.message);
    w = verify_s2(inst.c, inst.d, inst.phi, psi);
    t.check(w.ok, tag + ": " + w.message);
    const auto ind = independence_check(inst.c, inst.d, inst.phi, inst.splittings);
    t.check(ind.precondition_ok && ind.independent, tag + ": Psi depends on choices");
  }
  auto inst = hyperoct_instance();
  const auto psi = build_psi(inst.c, inst.d, inst.phi, inst.splittings);
  t.check(verify_heavy_separability(inst.c, inst.d, inst.phi, psi).ok, "hyperoctahedral instance fails (s1)/(s3)");
  t.check(verify_s2(inst.c, inst.d, inst.phi, psi).ok, "hyperoctahedral instance fails (s2)");
  auto bad = nonsplit_instance();
  t.check(!find_splitting(bad.c, bad.d, bad.phi, 0).has_value(), "Z/2 -> Z/4 should not split");
}

QuadricPencil random_smooth(const FieldPtr& f, std::mt19937_64& rng) {
  for (;;) {
    Mat a(f, 5, 5), b(f, 5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        a(i, j) = a(j, i) = Scalar::from_int(f, static_cast<long long>(rng() % f->characteristic()));
        b(i, j) = b(j, i) = Scalar::from_int(f, static_cast<long long>(rng() % f->characteristic()));
      }
    try {
      QuadricPencil p(a, b);
      if (is_smooth(p)) return p;
    } catch (const Error&) {
    }
  }
}

void lefschetz_consistency(Tally& t) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {3, 5}) {
    const auto f = Field::prime(p);
    for (int i = 0; i < 5; ++i) {
      const auto pencil = random_smooth(f, rng);
      const auto sig = galois_signature(pencil);
      for (unsigned k = 1; k <= 3; ++k) {
        const auto n = count_points(pencil, k, 250);
        const auto expect = predicted_count(sig, f->order(), k);
        t.check(n == expect, "F_" + std::to_string(p) + " k = " + std::to_string(k) + ": counted " + n.get_str() +
                                 ", predicted " + expect.get_str());
      }
    }
  }
}

const std::map<std::string, void (*)(Tally&)>& registry() {
  static const std::map<std::string, void (*)(Tally&)> r{
      {"weyl-order-1920", weyl_order},
      {"zero-class-census", zero_class_census},
      {"retract-homomorphism", retract_homomorphism},
      {"rank-formulas", rank_formulas},
      {"fiber-product-order", fiber_product_order},
      {"serre-lemma-hh", serre_lemma_hh},
      {"heavy-separability", heavy_separability},
      {"lefschetz-consistency", lefschetz_consistency},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names{"weyl-order-1920",  "zero-class-census",   "retract-homomorphism",
                                              "rank-formulas",    "fiber-product-order", "serre-lemma-hh",
                                              "heavy-separability", "lefschetz-consistency"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::InvalidInput, "unknown selftest suite '" + name + "'");
  SuiteResult r;
  r.name = name;
  Tally t{r};
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(t);
  } catch (const Error& e) {
    t.check(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = r.failures == 0;
  return r;
}

std::vector<SuiteResult> run_selftest(const std::vector<std::string>& names) {
  std::vector<SuiteResult> out;
  for (const auto& n : names.empty() ? selftest_suites() : names) out.push_back(run_suite(n));
  return out;
}

}  // namespace qdp4
