#include "qdp4/io.hpp"

#include <random>

#include "qdp4/error.hpp"
#include "qdp4/kgroups.hpp"
#include "qdp4/picard.hpp"

namespace qdp4 {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_error(std::string("bad value for ") + what);
  }
}

Json number(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Mat matrix_from_json(const FieldPtr& f, const Json& j, const char* name) {
  if (!j.is_array() || j.size() != 5) parse_error(std::string(name) + " must be a 5x5 array");
  Mat m(f, 5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    if (!j[i].is_array() || j[i].size() != 5) parse_error(std::string(name) + " must be a 5x5 array");
    for (std::size_t k = 0; k < 5; ++k) m(i, k) = scalar_from_json(f, j[i][k]);
  }
  return m;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  return get_as<std::vector<int>>(j, what);
}

Json ranks_json(const CycleSignature& sig) {
  Json r;
  r["picard"] = g_invariant_rank(RankSpace::Picard, sig);
  r["wpl"] = g_invariant_rank(RankSpace::Wpl, sig);
  r["surface_k0"] = g_invariant_rank(RankSpace::SurfaceK0, sig);
  r["torsion"] = g_invariant_rank(RankSpace::TorsionPart, sig);
  const bool minimal = sig.plus_count() == 0;
  const auto cb = conic_bundle_ranks(sig.total(), sig, minimal);
  r["conic_bundle"] = {{"relatively_minimal", minimal}, {"k0x", cb.k0x_rank}, {"atom", cb.atom_rank}};
  return r;
}

Json aut_json(const PencilSplitting& s, bool with_elements) {
  const auto aut = aut_group(s.configuration());
  const mpz_class q = s.base->order();
  std::size_t rational = 0;
  Json elements = Json::array();
  for (const auto& a : aut) {
    const bool r = a.moebius.defined_over(q);
    rational += r;
    if (with_elements)
      elements.push_back({{"moebius", moebius_to_json(a.moebius)}, {"perm", a.perm}, {"base_rational", r}});
  }
  Json j;
  j["field"] = field_to_json(s.working);
  j["aut_p_order"] = aut.size();
  j["aut_x_order"] = fiber_product(aut).size();
  j["base_rational_aut_p_order"] = rational;
  if (with_elements) j["elements"] = std::move(elements);
  return j;
}

void require_smooth(const QuadricPencil& p) {
  if (!is_smooth(p))
    throw Error(ErrorCode::NotSmooth, "the pencil is singular: its discriminant quintic has a repeated root");
}

}  // namespace

Json field_to_json(const FieldPtr& f) {
  switch (f->kind()) {
    case FieldKind::Rationals: return {{"kind", "rationals"}};
    case FieldKind::Prime: return {{"kind", "prime"}, {"p", f->characteristic()}};
    case FieldKind::Extension:
      return {{"kind", "extension"}, {"p", f->characteristic()}, {"k", f->degree()}, {"modulus", f->modulus()}};
  }
  return {};
}

FieldPtr field_from_json(const Json& j) {
  const auto kind = get_as<std::string>(member(j, "kind"), "field kind");
  if (kind == "rationals") return Field::rationals();
  const auto p = get_as<std::uint64_t>(member(j, "p"), "p");
  if (kind == "prime") return Field::prime(p);
  if (kind != "extension") parse_error("unknown field kind '" + kind + "'");
  if (j.contains("modulus")) return Field::extension(p, get_as<std::vector<std::uint64_t>>(j["modulus"], "modulus"));
  const auto k = get_as<unsigned>(member(j, "k"), "k");
  if (k == 0) parse_error("extension degree must be positive");
  return Field::canonical(p, k);
}

Json scalar_to_json(const Scalar& s) {
  if (s.field()->kind() == FieldKind::Prime) return s.coeffs()[0];
  return s.to_string();
}

Scalar scalar_from_json(const FieldPtr& f, const Json& j) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<long long>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  if (j.is_array() && f->kind() == FieldKind::Extension) {
    std::vector<std::uint64_t> c;
    for (const auto& x : j) {
      const long long v = get_as<long long>(x, "coefficient");
      const long long p = static_cast<long long>(f->characteristic());
      c.push_back(static_cast<std::uint64_t>(((v % p) + p) % p));
    }
    if (c.size() > f->degree()) parse_error("coefficient vector longer than the field degree");
    return Scalar::from_coeffs(f, c);
  }
  parse_error("scalar must be an integer or a string");
}

Json poly_to_json(const Poly& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(scalar_to_json(c));
  return j;
}

Json point_to_json(const ProjPoint& p) { return {scalar_to_json(p.x()), scalar_to_json(p.y())}; }

Json moebius_to_json(const Moebius& m) {
  const auto& e = m.entries();
  return {{scalar_to_json(e[0]), scalar_to_json(e[1])}, {scalar_to_json(e[2]), scalar_to_json(e[3])}};
}

Json normal_form_to_json(const NormalForm& nf) {
  return {{"lambda", scalar_to_json(nf.lambda)}, {"mu", scalar_to_json(nf.mu)}};
}

Json signature_to_json(const CycleSignature& s) {
  Json j = Json::array();
  for (auto [len, sign] : s.cycles()) j.push_back({len, sign});
  return j;
}

CycleSignature signature_from_json(const Json& j) {
  if (!j.is_array()) parse_error("signature must be an array of [length, sign] pairs");
  std::vector<std::pair<int, int>> cycles;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2) parse_error("signature entries are [length, sign]");
    cycles.emplace_back(get_as<int>(c[0], "cycle length"), get_as<int>(c[1], "cycle sign"));
  }
  return CycleSignature(std::move(cycles));
}

Json signed_perm_to_json(const SignedPerm& a) { return {{"perm", a.perm()}, {"signs", a.signs()}}; }

SignedPerm signed_perm_from_json(const Json& j) {
  const auto perm = get_as<std::vector<int>>(member(j, "perm"), "perm");
  const auto signs = get_as<std::vector<int>>(member(j, "signs"), "signs");
  if (perm.size() != 5 || signs.size() != 5) parse_error("signed permutations have 5 entries");
  Perm5 p;
  std::array<int, 5> s;
  std::copy(perm.begin(), perm.end(), p.begin());
  std::copy(signs.begin(), signs.end(), s.begin());
  return SignedPerm(p, s);
}

Json pencil_to_json(const QuadricPencil& p) {
  return {{"field", field_to_json(p.field())}, {"A", matrix_to_json(p.A())}, {"B", matrix_to_json(p.B())}};
}

QuadricPencil pencil_from_json(const Json& j) {
  const FieldPtr f = field_from_json(member(j, "field"));
  return QuadricPencil(matrix_from_json(f, member(j, "A"), "A"), matrix_from_json(f, member(j, "B"), "B"));
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json mors = Json::array();
  for (int f = 0; f < g.morphisms(); ++f) mors.push_back({g.src(f), g.tgt(f)});
  Json comp = Json::array();
  for (int h = 0; h < g.morphisms(); ++h) {
    Json row = Json::array();
    for (int f = 0; f < g.morphisms(); ++f) row.push_back(g.compose(h, f));
    comp.push_back(std::move(row));
  }
  return {{"objects", g.objects()}, {"morphisms", std::move(mors)}, {"identities", g.identities()},
          {"compose", std::move(comp)}};
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  const int n = get_as<int>(member(j, "objects"), "objects");
  const Json& mors = member(j, "morphisms");
  if (!mors.is_array()) parse_error("morphisms must be an array of [src, tgt] pairs");
  std::vector<int> src, tgt;
  for (const auto& m : mors) {
    if (!m.is_array() || m.size() != 2) parse_error("morphisms must be [src, tgt] pairs");
    src.push_back(get_as<int>(m[0], "source"));
    tgt.push_back(get_as<int>(m[1], "target"));
  }
  const Json& rows = member(j, "compose");
  if (!rows.is_array() || rows.size() != src.size()) parse_error("compose must have one row per morphism");
  std::vector<int> comp;
  for (const auto& r : rows) {
    const auto row = int_list(r, "compose row");
    if (row.size() != src.size()) parse_error("compose rows must have one entry per morphism");
    comp.insert(comp.end(), row.begin(), row.end());
  }
  return FiniteGroupoid(n, src, tgt, int_list(member(j, "identities"), "identities"), comp);
}

Json functor_to_json(const GroupoidFunctor& f) {
  return {{"objects", f.object_map}, {"morphisms", f.morphism_map}};
}

GroupoidFunctor functor_from_json(const Json& j) {
  return {int_list(member(j, "objects"), "functor objects"), int_list(member(j, "morphisms"), "functor morphisms")};
}

Json witness_to_json(const Witness& w) {
  if (w.ok) return {{"ok", true}};
  return {{"ok", false}, {"message", w.message}, {"data", w.data}};
}

Json analyze_report(const QuadricPencil& p) {
  Json r;
  r["field"] = field_to_json(p.field());
  Json quintic = Json::array();
  for (const auto& c : discriminant_quintic(p).coeffs) quintic.push_back(scalar_to_json(c));
  r["quintic"] = std::move(quintic);
  require_smooth(p);
  r["smooth"] = true;
  const auto s = split(p);
  r["splitting"] = {{"field", field_to_json(s.working)}, {"degree", s.splitting_degree}};
  Json orbits = Json::array();
  for (const auto& o : s.orbits) {
    Json e;
    e["degree"] = o.degree;
    e["at_infinity"] = o.at_infinity;
    e["factor"] = o.at_infinity ? Json() : poly_to_json(o.factor);
    orbits.push_back(std::move(e));
  }
  r["orbits"] = std::move(orbits);
  Json pts = Json::array();
  for (const auto& d : s.points)
    pts.push_back({{"point", point_to_json(d.point)},
                   {"residue_degree", d.residue_degree},
                   {"orbit", d.orbit},
                   {"discriminant", scalar_to_json(d.discriminant())}});
  r["degenerate_points"] = std::move(pts);
  Json inv = Json::array();
  for (const auto& nf : canonical_invariant(s)) inv.push_back(normal_form_to_json(nf));
  r["canonical_invariant"] = std::move(inv);
  r["aut"] = aut_json(s, false);
  if (p.field()->is_finite()) {
    const auto sig = galois_signature(s);
    r["signature"] = signature_to_json(sig);
    r["picard_rank"] = invariant_rank(sig);
    r["minimal"] = is_minimal(sig);
    r["ranks"] = ranks_json(sig);
  } else {
    r["signature"] = nullptr;
    r["minimal"] = nullptr;
  }
  return r;
}

Json iso_report(const QuadricPencil& a, const QuadricPencil& b) {
  require_same_field(a.field(), b.field());
  require_smooth(a);
  require_smooth(b);
  const auto cert = isomorphic(a, b);
  Json r;
  r["isomorphic"] = cert.has_value();
  if (cert)
    r["certificate"] = {{"field", field_to_json(cert->moebius.field())},
                        {"moebius", moebius_to_json(cert->moebius)},
                        {"base_rational", cert->base_rational}};
  return r;
}

Json aut_report(const QuadricPencil& p) {
  require_smooth(p);
  return aut_json(split(p), true);
}

Json minimal_report(const QuadricPencil& p) {
  require_smooth(p);
  const auto sig = galois_signature(p);
  return {{"signature", signature_to_json(sig)},
          {"picard_rank", invariant_rank(sig)},
          {"minimal", is_minimal(sig)},
          {"ranks", ranks_json(sig)}};
}

Json count_report(const QuadricPencil& p, unsigned k) {
  require_smooth(p);
  if (!p.field()->is_finite()) throw Error(ErrorCode::UnsupportedField, "point counts need a finite field");
  if (k == 0) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
  const mpz_class q = p.field()->order();
  const auto count = count_points(p, k);
  const auto sig = galois_signature(p);
  const auto predicted = predicted_count(sig, q, k);
  return {{"q", number(q)},
          {"k", k},
          {"count", number(count)},
          {"signature", signature_to_json(sig)},
          {"predicted", number(predicted)},
          {"agrees", count == predicted}};
}

Json kgroups_ranks_report(const Json& input) {
  CycleSignature sig;
  std::optional<SignedPerm> perm;
  if (input.is_object() && input.contains("signature")) {
    sig = signature_from_json(input["signature"]);
  } else if (input.is_object() && input.contains("signed_perm")) {
    perm = signed_perm_from_json(input["signed_perm"]);
    sig = CycleSignature::of(*perm);
  } else if (input.is_object() && input.contains("field")) {
    const auto p = pencil_from_json(input);
    require_smooth(p);
    sig = galois_signature(p);
  } else {
    parse_error("expected a signature, a signed permutation or a pencil");
  }
  Json r;
  r["signature"] = signature_to_json(sig);
  r["ranks"] = ranks_json(sig);
  if (sig.total() == 5) {
    const auto act = perm ? action_of(*perm) : action_of(sig);
    Json k;
    k["picard"] = kernel_invariant_rank(RankSpace::Picard, act);
    k["wpl"] = kernel_invariant_rank(RankSpace::Wpl, act);
    k["surface_k0"] = kernel_invariant_rank(RankSpace::SurfaceK0, act);
    k["torsion"] = kernel_invariant_rank(RankSpace::TorsionPart, act);
    r["kernel_ranks"] = std::move(k);
    r["minimal"] = is_minimal(sig);
  }
  return r;
}

Json groupoid_verify_report(const Json& input) {
  GroupoidInstance inst;
  bool given = false;
  if (input.is_object() && input.contains("instance")) {
    const auto name = get_as<std::string>(input["instance"], "instance");
    if (name == "hyperoct") {
      inst = hyperoct_instance();
    } else if (name == "nonsplit") {
      inst = nonsplit_instance();
    } else if (name == "random") {
      std::mt19937_64 rng(input.contains("seed") ? get_as<std::uint64_t>(input["seed"], "seed") : 1);
      inst = random_instance(rng);
    } else {
      parse_error("unknown instance '" + name + "'");
    }
    given = !inst.splittings.empty();
  } else {
    inst.name = "input";
    inst.c = groupoid_from_json(member(input, "c"));
    inst.d = groupoid_from_json(member(input, "d"));
    inst.phi = functor_from_json(member(input, "functor"));
    if (input.contains("splittings")) {
      for (const auto& s : input["splittings"])
        inst.splittings.push_back({get_as<int>(member(s, "object"), "object"), int_list(member(s, "map"), "map")});
      given = true;
    }
  }
  const std::uint64_t bound =
      input.is_object() && input.contains("bound") ? get_as<std::uint64_t>(input["bound"], "bound") : 1000000;

  Json r;
  r["instance"] = inst.name;
  r["c_objects"] = inst.c.objects();
  r["c_morphisms"] = inst.c.morphisms();
  r["d_objects"] = inst.d.objects();
  r["d_morphisms"] = inst.d.morphisms();
  auto fail = [&](const char* key, const Witness& w) {
    r[key] = witness_to_json(w);
    r["heavily_separable"] = false;
    return r;
  };
  if (auto w = validate(inst.c); !w) return fail("c_valid", w);
  if (auto w = validate(inst.d); !w) return fail("d_valid", w);
  r["c_valid"] = witness_to_json(Witness::pass());
  r["d_valid"] = witness_to_json(Witness::pass());
  if (auto w = validate_functor(inst.c, inst.d, inst.phi); !w) return fail("functor_valid", w);
  r["functor_valid"] = witness_to_json(Witness::pass());
  if (auto w = injective_on_iso_classes(inst.c, inst.d, inst.phi); !w) return fail("injective_on_classes", w);
  r["injective_on_classes"] = witness_to_json(Witness::pass());

  const auto cls = iso_classes(inst.c);
  std::vector<Splitting> bases;
  Json sp = Json::array();
  for (int x = 0; x < inst.c.objects(); ++x) {
    if (cls[x] != x) continue;
    const auto it = std::find_if(inst.splittings.begin(), inst.splittings.end(),
                                 [&](const Splitting& s) { return cls[s.object] == x; });
    if (it != inst.splittings.end()) {
      const auto w = verify_splitting(inst.c, inst.d, inst.phi, *it);
      sp.push_back({{"object", it->object}, {"source", "given"}, {"check", witness_to_json(w)}});
      if (!w) {
        r["splittings"] = std::move(sp);
        r["heavily_separable"] = false;
        return r;
      }
      bases.push_back(*it);
      continue;
    }
    auto found = find_splitting(inst.c, inst.d, inst.phi, x, bound);
    sp.push_back({{"object", x}, {"source", "search"}, {"found", found.has_value()}});
    if (!found) {
      r["splittings"] = std::move(sp);
      r["heavily_separable"] = false;
      return r;
    }
    bases.push_back(std::move(*found));
  }
  r["splittings"] = std::move(sp);

  const auto psi = build_psi(inst.c, inst.d, inst.phi, bases);
  const auto s13 = verify_heavy_separability(inst.c, inst.d, inst.phi, psi);
  const auto s2 = verify_s2(inst.c, inst.d, inst.phi, psi);
  const auto left = verify_left_inverse_functor(inst.c, inst.d, inst.phi, psi);
  r["s1_s3"] = witness_to_json(s13);
  r["s2"] = witness_to_json(s2);
  r["left_inverse_functor"] = witness_to_json(left);

  std::vector<Splitting> family;
  if (given && inst.splittings.size() == static_cast<std::size_t>(inst.c.objects())) {
    family = inst.splittings;
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) { return a.object < b.object; });
  } else {
    family = transport_splittings(inst.c, inst.d, inst.phi, bases);
  }
  bool family_ok = true;
  for (int x = 0; x < inst.c.objects(); ++x) family_ok = family_ok && family[x].object == x;
  if (family_ok) {
    const auto ind = independence_check(inst.c, inst.d, inst.phi, family);
    r["independence"] = {{"precondition_ok", ind.precondition_ok},
                         {"independent", ind.independent},
                         {"exhaustive", ind.exhaustive},
                         {"witness", witness_to_json(ind.witness)}};
  }
  r["heavily_separable"] = s13.ok && s2.ok;
  return r;
}

}  // namespace qdp4
