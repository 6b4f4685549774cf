#include "qdp4/groupoidsep.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "qdp4/error.hpp"
#include "qdp4/hyperoct.hpp"

namespace qdp4 {

namespace {

std::string str(int v) { return std::to_string(v); }

std::vector<std::vector<int>> by_src(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out(g.objects());
  for (int f = 0; f < g.morphisms(); ++f) out[g.src(f)].push_back(f);
  return out;
}

std::vector<std::vector<int>> by_tgt(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out(g.objects());
  for (int f = 0; f < g.morphisms(); ++f) out[g.tgt(f)].push_back(f);
  return out;
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(int objects, std::vector<int> src, std::vector<int> tgt, std::vector<int> identity,
                               std::vector<int> compose)
    : objects_(objects), src_(std::move(src)), tgt_(std::move(tgt)), identity_(std::move(identity)),
      compose_(std::move(compose)) {
  const int m = static_cast<int>(src_.size());
  if (objects_ < 0 || tgt_.size() != src_.size() || identity_.size() != static_cast<std::size_t>(objects_) ||
      compose_.size() != static_cast<std::size_t>(m) * m)
    throw Error(ErrorCode::InvalidInput, "groupoid table sizes are inconsistent");
  for (int f = 0; f < m; ++f)
    if (src_[f] < 0 || src_[f] >= objects_ || tgt_[f] < 0 || tgt_[f] >= objects_)
      throw Error(ErrorCode::InvalidInput, "morphism " + str(f) + " has an out-of-range endpoint");
  for (int i : identity_)
    if (i < 0 || i >= m) throw Error(ErrorCode::InvalidInput, "identity morphism out of range");
  for (int h : compose_)
    if (h < -1 || h >= m) throw Error(ErrorCode::InvalidInput, "composition entry out of range");
  homs_.resize(static_cast<std::size_t>(objects_) * objects_);
  for (int f = 0; f < m; ++f) homs_[static_cast<std::size_t>(src_[f]) * objects_ + tgt_[f]].push_back(f);
  inverse_.assign(m, -1);
  for (int f = 0; f < m; ++f)
    for (int g : hom(tgt_[f], src_[f]))
      if (this->compose(g, f) == identity_[src_[f]] && this->compose(f, g) == identity_[tgt_[f]]) {
        inverse_[f] = g;
        break;
      }
}

FiniteGroupoid FiniteGroupoid::from_group(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  std::vector<int> comp(static_cast<std::size_t>(n) * n);
  int e = -1;
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(table[g].size()) != n) throw Error(ErrorCode::InvalidInput, "group table is not square");
    for (int f = 0; f < n; ++f) comp[static_cast<std::size_t>(g) * n + f] = table[g][f];
  }
  for (int g = 0; g < n && e < 0; ++g) {
    bool is_e = true;
    for (int f = 0; f < n && is_e; ++f) is_e = table[g][f] == f && table[f][g] == f;
    if (is_e) e = g;
  }
  if (e < 0) throw Error(ErrorCode::InvalidInput, "group table has no identity");
  return FiniteGroupoid(1, std::vector<int>(n, 0), std::vector<int>(n, 0), {e}, std::move(comp));
}

std::vector<int> generators(const FiniteGroupoid& g) {
  const int m = g.morphisms();
  std::vector<int> gens;
  for (;;) {
    std::vector<char> reached(m, 0);
    std::deque<int> queue;
    for (int i : g.identities())
      if (!reached[i]) {
        reached[i] = 1;
        queue.push_back(i);
      }
    while (!queue.empty()) {
      const int b = queue.front();
      queue.pop_front();
      for (int s : gens) {
        const int c = g.compose(s, b);
        if (c >= 0 && !reached[c]) {
          reached[c] = 1;
          queue.push_back(c);
        }
      }
    }
    const auto it = std::find(reached.begin(), reached.end(), 0);
    if (it == reached.end()) return gens;
    gens.push_back(static_cast<int>(it - reached.begin()));
  }
}

Witness validate(const FiniteGroupoid& g) {
  const int m = g.morphisms();
  for (int x = 0; x < g.objects(); ++x) {
    const int i = g.identity(x);
    if (g.src(i) != x || g.tgt(i) != x) return Witness::fail("identity of object " + str(x) + " is not an endomorphism", {x, i});
  }
  for (int h = 0; h < m; ++h)
    for (int f = 0; f < m; ++f) {
      const int c = g.compose(h, f);
      if ((c >= 0) != (g.tgt(f) == g.src(h)))
        return Witness::fail("composition of " + str(h) + " after " + str(f) + " is defined exactly when it should not be", {h, f});
      if (c >= 0 && (g.src(c) != g.src(f) || g.tgt(c) != g.tgt(h)))
        return Witness::fail("composite of " + str(h) + " after " + str(f) + " has the wrong endpoints", {h, f});
    }
  for (int f = 0; f < m; ++f) {
    if (g.compose(g.identity(g.tgt(f)), f) != f || g.compose(f, g.identity(g.src(f))) != f)
      return Witness::fail("identity law fails for morphism " + str(f), {f});
  }
  // Light's test: associativity for triples whose middle term is a generator
  const auto into = by_tgt(g), out = by_src(g);
  for (int s : generators(g))
    for (int a : into[g.src(s)])
      for (int b : out[g.tgt(s)])
        if (g.compose(g.compose(b, s), a) != g.compose(b, g.compose(s, a)))
          return Witness::fail("associativity fails for (" + str(b) + ", " + str(s) + ", " + str(a) + ")", {b, s, a});
  for (int f = 0; f < m; ++f)
    if (g.inverse(f) < 0) return Witness::fail("morphism " + str(f) + " is not invertible", {f});
  return Witness::pass();
}

std::vector<int> iso_classes(const FiniteGroupoid& g) {
  std::vector<int> parent(g.objects());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int f = 0; f < g.morphisms(); ++f) {
    int a = find(g.src(f)), b = find(g.tgt(f));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> out(g.objects());
  for (int x = 0; x < g.objects(); ++x) out[x] = find(x);
  return out;
}

Witness validate_functor(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi) {
  if (phi.object_map.size() != static_cast<std::size_t>(c.objects()) ||
      phi.morphism_map.size() != static_cast<std::size_t>(c.morphisms()))
    return Witness::fail("functor maps have the wrong sizes");
  for (int x = 0; x < c.objects(); ++x)
    if (phi.object_map[x] < 0 || phi.object_map[x] >= d.objects())
      return Witness::fail("object " + str(x) + " maps out of range", {x});
  for (int f = 0; f < c.morphisms(); ++f) {
    const int u = phi.morphism_map[f];
    if (u < 0 || u >= d.morphisms()) return Witness::fail("morphism " + str(f) + " maps out of range", {f});
    if (d.src(u) != phi.object_map[c.src(f)] || d.tgt(u) != phi.object_map[c.tgt(f)])
      return Witness::fail("morphism " + str(f) + " is not sent between the images of its endpoints", {f});
  }
  for (int x = 0; x < c.objects(); ++x)
    if (phi.morphism_map[c.identity(x)] != d.identity(phi.object_map[x]))
      return Witness::fail("identity of object " + str(x) + " is not preserved", {x});
  const auto out = by_src(c);
  for (int f = 0; f < c.morphisms(); ++f)
    for (int h : out[c.tgt(f)]) {
      const int lhs = phi.morphism_map[c.compose(h, f)];
      const int rhs = d.compose(phi.morphism_map[h], phi.morphism_map[f]);
      if (lhs != rhs) return Witness::fail("composition of " + str(h) + " after " + str(f) + " is not preserved", {h, f});
    }
  return Witness::pass();
}

Witness injective_on_iso_classes(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi) {
  const auto cc = iso_classes(c), dc = iso_classes(d);
  std::map<int, int> seen;  // class in d -> class in c
  for (int x = 0; x < c.objects(); ++x) {
    const int target = dc[phi.object_map[x]];
    auto [it, fresh] = seen.emplace(target, x);
    if (!fresh && cc[it->second] != cc[x])
      return Witness::fail("objects " + str(it->second) + " and " + str(x) +
                               " are not isomorphic but their images are",
                           {it->second, x});
  }
  return Witness::pass();
}

Witness verify_splitting(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                         const Splitting& psi) {
  const int x0 = psi.object;
  if (x0 < 0 || x0 >= c.objects()) return Witness::fail("splitting object out of range");
  if (psi.map.size() != static_cast<std::size_t>(d.morphisms()))
    return Witness::fail("splitting map has the wrong size");
  const int o = phi.object_map[x0];
  const auto& units = d.hom(o, o);
  for (int u : units) {
    const int a = psi.map[u];
    if (a < 0 || a >= c.morphisms() || c.src(a) != x0 || c.tgt(a) != x0)
      return Witness::fail("splitting is not defined at " + str(u) + " or leaves Aut(" + str(x0) + ")", {u});
  }
  for (int a : c.hom(x0, x0))
    if (psi.map[phi.morphism_map[a]] != a)
      return Witness::fail("splitting is not a left inverse at " + str(a), {a});
  for (int u : units)
    for (int v : units)
      if (psi.map[d.compose(v, u)] != c.compose(psi.map[v], psi.map[u]))
        return Witness::fail("splitting is not multiplicative at (" + str(v) + ", " + str(u) + ")", {v, u});
  return Witness::pass();
}

std::optional<Splitting> find_splitting(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                        int object, std::uint64_t bound) {
  const int o = phi.object_map.at(object);
  const auto& units = d.hom(o, o);
  const auto& targets = c.hom(object, object);
  std::uint64_t work = 0;

  std::vector<int> start(d.morphisms(), -1);
  for (int a : targets) {
    const int u = phi.morphism_map[a];
    if (start[u] >= 0 && start[u] != a) return std::nullopt;
    start[u] = a;
  }

  // Closes the assignment under products; false on a conflict.
  auto propagate = [&](std::vector<int>& map, std::vector<int> fresh) {
    std::vector<int> known;
    for (int u : units)
      if (map[u] >= 0) known.push_back(u);
    while (!fresh.empty()) {
      const int w = fresh.back();
      fresh.pop_back();
      for (std::size_t i = 0; i < known.size(); ++i) {
        const int k = known[i];
        for (auto [l, r] : {std::pair{w, k}, std::pair{k, w}}) {
          if (++work > bound) throw Error(ErrorCode::ResourceLimit, "splitting search exceeded its bound");
          const int p = d.compose(l, r);
          const int img = c.compose(map[l], map[r]);
          if (map[p] < 0) {
            map[p] = img;
            known.push_back(p);
            fresh.push_back(p);
          } else if (map[p] != img) {
            return false;
          }
        }
      }
    }
    return true;
  };

  std::vector<int> seed;
  for (int u : units)
    if (start[u] >= 0) seed.push_back(u);
  if (!propagate(start, seed)) return std::nullopt;

  std::optional<Splitting> found;
  auto search = [&](auto&& self, const std::vector<int>& map) -> bool {
    const auto it = std::find_if(units.begin(), units.end(), [&](int u) { return map[u] < 0; });
    if (it == units.end()) {
      Splitting s{object, map};
      if (!verify_splitting(c, d, phi, s)) return false;
      found = std::move(s);
      return true;
    }
    for (int a : targets) {
      std::vector<int> next = map;
      next[*it] = a;
      if (propagate(next, {*it}) && self(self, next)) return true;
    }
    return false;
  };
  search(search, start);
  return found;
}

void PsiFamily::set(int x, int y, int u, int f) {
  auto& m = maps_[static_cast<std::size_t>(x) * objects_ + y];
  if (m.empty()) m.assign(d_morphisms_, -1);
  m[u] = f;
}

namespace {

// y psi(phi(y)^-1 u phi(x)) x^-1
int psi_formula(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi, const Splitting& s,
                int x, int y, int u) {
  const int w = d.compose(d.inverse(phi.morphism_map[y]), d.compose(u, phi.morphism_map[x]));
  return c.compose(y, c.compose(s.map[w], c.inverse(x)));
}

}  // namespace

PsiFamily build_psi(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                    const std::vector<Splitting>& splittings, const std::vector<int>& iso_from_base) {
  if (auto w = injective_on_iso_classes(c, d, phi); !w)
    throw Error(ErrorCode::InvalidInput, "functor is not injective on isomorphism classes: " + w.message);
  const auto cls = iso_classes(c);
  std::map<int, const Splitting*> per_class;
  for (const auto& s : splittings) {
    if (auto w = verify_splitting(c, d, phi, s); !w)
      throw Error(ErrorCode::InvalidSplitting, "splitting at object " + str(s.object) + ": " + w.message);
    if (!per_class.emplace(cls[s.object], &s).second)
      throw Error(ErrorCode::InvalidInput, "two splittings given for one isomorphism class");
  }
  if (iso_from_base.size() != static_cast<std::size_t>(c.objects()))
    throw Error(ErrorCode::InvalidInput, "one isomorphism per object is required");
  for (int x = 0; x < c.objects(); ++x) {
    auto it = per_class.find(cls[x]);
    if (it == per_class.end()) throw Error(ErrorCode::InvalidInput, "no splitting for the class of object " + str(x));
    const int i = iso_from_base[x];
    if (i < 0 || i >= c.morphisms() || c.src(i) != it->second->object || c.tgt(i) != x)
      throw Error(ErrorCode::InvalidInput, "morphism " + str(i) + " does not go from the base object to " + str(x));
  }
  PsiFamily psi(c.objects(), d.morphisms());
  for (int x = 0; x < c.objects(); ++x)
    for (int y = 0; y < c.objects(); ++y) {
      if (cls[x] != cls[y]) continue;
      const Splitting& s = *per_class.at(cls[x]);
      for (int u : d.hom(phi.object_map[x], phi.object_map[y]))
        psi.set(x, y, u, psi_formula(c, d, phi, s, iso_from_base[x], iso_from_base[y], u));
    }
  return psi;
}

PsiFamily build_psi(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                    const std::vector<Splitting>& splittings) {
  const auto cls = iso_classes(c);
  std::vector<int> isos(c.objects(), -1);
  for (int x = 0; x < c.objects(); ++x)
    for (const auto& s : splittings)
      if (s.object >= 0 && s.object < c.objects() && cls[s.object] == cls[x] && !c.hom(s.object, x).empty())
        isos[x] = c.hom(s.object, x).front();
  return build_psi(c, d, phi, splittings, isos);
}

Witness verify_heavy_separability(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                  const PsiFamily& psi) {
  const int n = c.objects();
  const auto& om = phi.object_map;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int u : d.hom(om[x], om[y])) {
        const int f = psi(x, y, u);
        if (f < 0 || f >= c.morphisms() || c.src(f) != x || c.tgt(f) != y)
          return Witness::fail("Psi(" + str(x) + ", " + str(y) + ") is not defined at " + str(u), {x, y, u});
      }
  for (int f = 0; f < c.morphisms(); ++f)
    if (psi(c.src(f), c.tgt(f), phi.morphism_map[f]) != f) return Witness::fail("(s1) fails at " + str(f), {f});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& us = d.hom(om[x], om[y]);
      if (us.empty()) continue;
      for (int z = 0; z < n; ++z)
        for (int v : d.hom(om[y], om[z]))
          for (int u : us)
            if (psi(x, z, d.compose(v, u)) != c.compose(psi(y, z, v), psi(x, y, u)))
              return Witness::fail("(s3) fails at objects (" + str(x) + ", " + str(y) + ", " + str(z) +
                                       ") and morphisms (" + str(v) + ", " + str(u) + ")",
                                   {x, y, z, v, u});
    }
  return Witness::pass();
}

Witness verify_s2(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi, const PsiFamily& psi) {
  // s2 for a = a1 a2 follows from a1 and a2, and likewise for b
  const auto gens = generators(c);
  const auto& om = phi.object_map;
  const auto& mm = phi.morphism_map;
  for (int x = 0; x < c.objects(); ++x)
    for (int y = 0; y < c.objects(); ++y)
      for (int u : d.hom(om[x], om[y]))
        for (int g : gens) {
          if (c.tgt(g) == x && psi(c.src(g), y, d.compose(u, mm[g])) != c.compose(psi(x, y, u), g))
            return Witness::fail("(s2) fails on the source side at " + str(u) + " with " + str(g), {x, y, u, g});
          if (c.src(g) == y && psi(x, c.tgt(g), d.compose(mm[g], u)) != c.compose(g, psi(x, y, u)))
            return Witness::fail("(s2) fails on the target side at " + str(u) + " with " + str(g), {x, y, u, g});
        }
  return Witness::pass();
}

Witness verify_left_inverse_functor(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                    const PsiFamily& psi) {
  const auto& om = phi.object_map;
  std::map<int, int> rep;  // image object -> smallest preimage
  for (int x = 0; x < c.objects(); ++x) rep.emplace(om[x], x);
  for (auto [o1, x0] : rep) {
    if (psi(x0, x0, d.identity(o1)) != c.identity(x0))
      return Witness::fail("Psi does not preserve the identity of " + str(o1), {o1});
    for (auto [o2, y0] : rep)
      for (auto [o3, z0] : rep)
        for (int u : d.hom(o1, o2))
          for (int v : d.hom(o2, o3))
            if (psi(x0, z0, d.compose(v, u)) != c.compose(psi(y0, z0, v), psi(x0, y0, u)))
              return Witness::fail("Psi is not a functor at (" + str(v) + ", " + str(u) + ")", {v, u});
  }
  // eta_X = Psi_{X, X0}(id) with X0 the representative of phi(X)
  std::vector<int> eta(c.objects());
  for (int x = 0; x < c.objects(); ++x) {
    eta[x] = psi(x, rep.at(om[x]), d.identity(om[x]));
    if (eta[x] < 0) return Witness::fail("eta is undefined at object " + str(x), {x});
  }
  for (int f = 0; f < c.morphisms(); ++f) {
    const int x = c.src(f), y = c.tgt(f);
    const int psiphi = psi(rep.at(om[x]), rep.at(om[y]), phi.morphism_map[f]);
    if (x == rep.at(om[x]) && y == rep.at(om[y]) && psiphi != f)
      return Witness::fail("Psi Phi is not the identity on the representatives at " + str(f), {f});
    if (c.compose(psiphi, eta[x]) != c.compose(eta[y], f))
      return Witness::fail("eta is not natural at " + str(f), {f});
  }
  return Witness::pass();
}

std::vector<Splitting> transport_splittings(const FiniteGroupoid& c, const FiniteGroupoid& d,
                                            const GroupoidFunctor& phi, const std::vector<Splitting>& per_class) {
  const auto cls = iso_classes(c);
  std::vector<Splitting> out;
  for (int x = 0; x < c.objects(); ++x) {
    const auto it = std::find_if(per_class.begin(), per_class.end(),
                                 [&](const Splitting& s) { return cls[s.object] == cls[x]; });
    if (it == per_class.end()) throw Error(ErrorCode::InvalidInput, "no splitting for the class of object " + str(x));
    const int a = c.hom(it->object, x).front();
    const int pa = phi.morphism_map[a];
    const int o = phi.object_map[x];
    Splitting s{x, std::vector<int>(d.morphisms(), -1)};
    for (int u : d.hom(o, o)) {
      const int w = d.compose(d.inverse(pa), d.compose(u, pa));
      s.map[u] = c.compose(a, c.compose(it->map[w], c.inverse(a)));
    }
    out.push_back(std::move(s));
  }
  return out;
}

IndependenceReport independence_check(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                      const std::vector<Splitting>& family, std::uint64_t budget) {
  IndependenceReport rep;
  if (family.size() != static_cast<std::size_t>(c.objects()))
    throw Error(ErrorCode::InvalidInput, "independence check needs one splitting per object");
  for (int x = 0; x < c.objects(); ++x) {
    if (family[x].object != x) throw Error(ErrorCode::InvalidInput, "splitting " + str(x) + " is for another object");
    if (auto w = verify_splitting(c, d, phi, family[x]); !w) {
      rep.precondition_ok = false;
      rep.witness = w;
      return rep;
    }
  }
  const auto& om = phi.object_map;
  const auto& mm = phi.morphism_map;
  for (int a = 0; a < c.morphisms(); ++a) {
    const int x = c.src(a), x2 = c.tgt(a);
    const int pa = mm[a];
    for (int u : d.hom(om[x], om[x])) {
      const int lhs = family[x2].map[d.compose(pa, d.compose(u, d.inverse(pa)))];
      const int rhs = c.compose(a, c.compose(family[x].map[u], c.inverse(a)));
      if (lhs != rhs) {
        rep.precondition_ok = false;
        rep.witness = Witness::fail("compatibility square fails for " + str(a) + " at " + str(u), {a, u});
        return rep;
      }
    }
  }

  const auto cls = iso_classes(c);
  std::vector<Splitting> bases;
  for (int x = 0; x < c.objects(); ++x)
    if (cls[x] == x) bases.push_back(family[x]);
  const PsiFamily ref = build_psi(c, d, phi, bases);

  std::uint64_t total = 0;
  for (int b = 0; b < c.objects(); ++b)
    for (int x = 0; x < c.objects(); ++x)
      for (int y = 0; y < c.objects(); ++y)
        total += std::uint64_t(c.hom(b, x).size()) * c.hom(b, y).size() * d.hom(om[x], om[y]).size();
  rep.exhaustive = total <= budget;

  for (int b = 0; b < c.objects(); ++b)
    for (int x = 0; x < c.objects(); ++x)
      for (int y = 0; y < c.objects(); ++y) {
        const auto& xs = c.hom(b, x);
        const auto& ys = c.hom(b, y);
        if (xs.empty() || ys.empty()) continue;
        auto check = [&](int xi, int yi) {
          for (int u : d.hom(om[x], om[y]))
            if (psi_formula(c, d, phi, family[b], xi, yi, u) != ref(x, y, u)) {
              rep.independent = false;
              rep.witness = Witness::fail("Psi(" + str(x) + ", " + str(y) + ") at " + str(u) + " changes with base " +
                                              str(b) + " and isomorphisms (" + str(xi) + ", " + str(yi) + ")",
                                          {b, xi, yi, u});
              return false;
            }
          return true;
        };
        if (rep.exhaustive) {
          for (int xi : xs)
            for (int yi : ys)
              if (!check(xi, yi)) return rep;
        } else {
          for (int xi : xs)
            if (!check(xi, ys.front())) return rep;
          for (int yi : ys)
            if (!check(xs.front(), yi)) return rep;
        }
      }
  return rep;
}

namespace {

struct SmallGroup {
  int n = 1;
  std::vector<int> mul{0};
  int op(int a, int b) const { return mul[a * n + b]; }
  int inv(int a) const {
    for (int b = 0; b < n; ++b)
      if (op(a, b) == 0) return b;
    return -1;
  }
};

SmallGroup cyclic(int n) {
  SmallGroup g{n, std::vector<int>(n * n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
  return g;
}

SmallGroup product(const SmallGroup& g, const SmallGroup& h) {
  SmallGroup p{g.n * h.n, std::vector<int>(g.n * h.n * g.n * h.n)};
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b)
      p.mul[a * p.n + b] = g.op(a / h.n, b / h.n) * h.n + h.op(a % h.n, b % h.n);
  return p;
}

// Closure of permutation generators; element 0 is the identity.
SmallGroup perm_group(const std::vector<std::vector<int>>& gens) {
  const int deg = static_cast<int>(gens[0].size());
  std::vector<std::vector<int>> elems;
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  elems.push_back(id);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      std::vector<int> p(deg);
      for (int k = 0; k < deg; ++k) p[k] = s[elems[i][k]];
      if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
    }
  const int n = static_cast<int>(elems.size());
  SmallGroup g{n, std::vector<int>(n * n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> p(deg);
      for (int k = 0; k < deg; ++k) p[k] = elems[a][elems[b][k]];
      g.mul[a * n + b] = static_cast<int>(std::find(elems.begin(), elems.end(), p) - elems.begin());
    }
  return g;
}

const std::vector<SmallGroup>& small_groups() {
  static const std::vector<SmallGroup> groups = [] {
    std::vector<SmallGroup> v{cyclic(1), cyclic(2), cyclic(3), cyclic(4), product(cyclic(2), cyclic(2))};
    v.push_back(perm_group({{1, 0, 2}, {1, 2, 0}}));        // S3
    v.push_back(perm_group({{1, 2, 3, 0}, {3, 2, 1, 0}}));  // D4
    return v;
  }();
  return groups;
}

std::vector<std::vector<int>> homomorphisms(const SmallGroup& g, const SmallGroup& h) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(g.n, 0);
  for (;;) {
    bool ok = f[0] == 0;
    for (int a = 0; a < g.n && ok; ++a)
      for (int b = 0; b < g.n && ok; ++b) ok = f[g.op(a, b)] == h.op(f[a], f[b]);
    if (ok) out.push_back(f);
    int i = 0;
    while (i < g.n && ++f[i] == h.n) f[i++] = 0;
    if (i == g.n) return out;
  }
}

// Connected components, each a set of objects with one automorphism group;
// morphism (a, b, k): a -> b within a component.
struct Components {
  struct Part {
    int objects;
    SmallGroup group;
    int first_object = 0, first_morphism = 0;
  };
  std::vector<Part> parts;

  int add(int objects, SmallGroup g) {
    Part p{objects, std::move(g)};
    if (!parts.empty()) {
      const auto& q = parts.back();
      p.first_object = q.first_object + q.objects;
      p.first_morphism = q.first_morphism + q.objects * q.objects * q.group.n;
    }
    parts.push_back(std::move(p));
    return static_cast<int>(parts.size()) - 1;
  }
  int morphism(int part, int a, int b, int k) const {
    const auto& p = parts[part];
    return p.first_morphism + (a * p.objects + b) * p.group.n + k;
  }
  FiniteGroupoid build() const {
    int objects = 0, morphisms = 0;
    for (const auto& p : parts) {
      objects += p.objects;
      morphisms += p.objects * p.objects * p.group.n;
    }
    std::vector<int> src(morphisms), tgt(morphisms), ident(objects), comp(std::size_t(morphisms) * morphisms, -1);
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
      const auto& p = parts[i];
      for (int a = 0; a < p.objects; ++a) {
        ident[p.first_object + a] = morphism(i, a, a, 0);
        for (int b = 0; b < p.objects; ++b)
          for (int k = 0; k < p.group.n; ++k) {
            const int f = morphism(i, a, b, k);
            src[f] = p.first_object + a;
            tgt[f] = p.first_object + b;
            for (int e = 0; e < p.objects; ++e)
              for (int l = 0; l < p.group.n; ++l)
                comp[std::size_t(morphism(i, b, e, l)) * morphisms + f] = morphism(i, a, e, p.group.op(l, k));
          }
      }
    }
    return FiniteGroupoid(objects, src, tgt, ident, comp);
  }
};

}  // namespace

GroupoidInstance random_instance(std::mt19937_64& rng) {
  const auto& groups = small_groups();
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  Components cs, ds;
  struct Plan {
    int c_part, d_part;
    SmallGroup g, h;
    std::vector<int> chi, fobj, twist;
  };
  std::vector<Plan> plans;
  int remaining = 4;
  const int components = 1 + pick(2);
  for (int i = 0; i < components && remaining > 0; ++i) {
    const int n = 1 + pick(i + 1 == components ? remaining : std::max(1, remaining - 1));
    remaining -= n;
    Plan pl;
    pl.g = groups[pick(static_cast<int>(groups.size()))];
    std::vector<int> hs;
    for (int j = 0; j < static_cast<int>(groups.size()); ++j)
      if (pl.g.n * groups[j].n <= 16) hs.push_back(j);
    pl.h = groups[hs[pick(static_cast<int>(hs.size()))]];
    const auto homs = homomorphisms(pl.g, pl.h);
    pl.chi = homs[pick(static_cast<int>(homs.size()))];
    const int m = 1 + pick(n);
    pl.c_part = cs.add(n, pl.g);
    pl.d_part = ds.add(m, product(pl.g, pl.h));
    for (int a = 0; a < n; ++a) {
      pl.fobj.push_back(a < m ? a : pick(m));
      pl.twist.push_back(pick(pl.g.n * pl.h.n));
    }
    plans.push_back(std::move(pl));
  }
  if (pick(2)) ds.add(1, groups[pick(static_cast<int>(groups.size()))]);

  GroupoidInstance inst;
  inst.name = "random";
  inst.c = cs.build();
  inst.d = ds.build();
  inst.phi.object_map.resize(inst.c.objects());
  inst.phi.morphism_map.resize(inst.c.morphisms());
  for (const auto& pl : plans) {
    const auto& cp = cs.parts[pl.c_part];
    const auto& dp = ds.parts[pl.d_part];
    const SmallGroup& k = dp.group;
    auto iota = [&](int g) { return g * pl.h.n + pl.chi[g]; };
    for (int a = 0; a < cp.objects; ++a) {
      inst.phi.object_map[cp.first_object + a] = dp.first_object + pl.fobj[a];
      for (int b = 0; b < cp.objects; ++b)
        for (int g = 0; g < cp.group.n; ++g) {
          const int img = k.op(pl.twist[b], k.op(iota(g), k.inv(pl.twist[a])));
          inst.phi.morphism_map[cs.morphism(pl.c_part, a, b, g)] = ds.morphism(pl.d_part, pl.fobj[a], pl.fobj[b], img);
        }
      // psi_a(k) = projection of t_a^-1 k t_a to G
      Splitting s{cp.first_object + a, std::vector<int>(inst.d.morphisms(), -1)};
      for (int e = 0; e < k.n; ++e) {
        const int conj = k.op(k.inv(pl.twist[a]), k.op(e, pl.twist[a]));
        s.map[ds.morphism(pl.d_part, pl.fobj[a], pl.fobj[a], e)] = cs.morphism(pl.c_part, a, a, conj / pl.h.n);
      }
      inst.splittings.push_back(std::move(s));
    }
  }
  return inst;
}

GroupoidInstance hyperoct_instance() {
  const auto& all = SignedPerm::all();
  const int n = static_cast<int>(all.size());
  std::vector<int> even, even_index(n, -1);
  for (int i = 0; i < n; ++i)
    if (all[i].is_even()) {
      even_index[i] = static_cast<int>(even.size());
      even.push_back(i);
    }
  const int m = static_cast<int>(even.size());
  std::vector<int> dcomp(std::size_t(n) * n), ccomp(std::size_t(m) * m);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) dcomp[std::size_t(g) * n + f] = (all[g] * all[f]).index();
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) ccomp[std::size_t(g) * m + f] = even_index[dcomp[std::size_t(even[g]) * n + even[f]]];
  const int id = SignedPerm().index();
  GroupoidInstance inst;
  inst.name = "hyperoctahedral";
  inst.d = FiniteGroupoid(1, std::vector<int>(n, 0), std::vector<int>(n, 0), {id}, std::move(dcomp));
  inst.c = FiniteGroupoid(1, std::vector<int>(m, 0), std::vector<int>(m, 0), {even_index[id]}, std::move(ccomp));
  inst.phi.object_map = {0};
  inst.phi.morphism_map = even;
  Splitting s{0, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) s.map[i] = even_index[retract(all[i]).index()];
  inst.splittings.push_back(std::move(s));
  return inst;
}

GroupoidInstance nonsplit_instance() {
  GroupoidInstance inst;
  inst.name = "nonsplit";
  Components cs, ds;
  cs.add(1, cyclic(2));
  ds.add(1, cyclic(4));
  inst.c = cs.build();
  inst.d = ds.build();
  inst.phi.object_map = {0};
  inst.phi.morphism_map = {0, 2};
  return inst;
}

}  // namespace qdp4
