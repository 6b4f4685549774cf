#pragma once

// Finite groupoids given by explicit tables, functors between them, and the
// construction of heavily separable structure from splittings of
// automorphism groups.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qdp4 {

// Outcome of an exhaustive check; on failure, a message plus the offending
// objects or morphisms.
struct Witness {
  bool ok = true;
  std::string message;
  std::vector<int> data;

  static Witness pass() { return {}; }
  static Witness fail(std::string message, std::vector<int> data = {}) {
    return {false, std::move(message), std::move(data)};
  }
  explicit operator bool() const { return ok; }
};

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  // Objects are 0..objects-1. compose[g * morphisms + f] is g o f, or -1 when
  // the pair is not composable. Throws InvalidInput on malformed shapes; the
  // category axioms are checked by validate().
  FiniteGroupoid(int objects, std::vector<int> src, std::vector<int> tgt, std::vector<int> identity,
                 std::vector<int> compose);
  // One object, morphisms = group elements, compose(g, f) = table[g][f].
  static FiniteGroupoid from_group(const std::vector<std::vector<int>>& table);

  int objects() const { return objects_; }
  int morphisms() const { return static_cast<int>(src_.size()); }
  int src(int f) const { return src_[f]; }
  int tgt(int f) const { return tgt_[f]; }
  int identity(int x) const { return identity_[x]; }
  int compose(int g, int f) const { return compose_[static_cast<std::size_t>(g) * src_.size() + f]; }
  // Two-sided inverse, or -1 when there is none.
  int inverse(int f) const { return inverse_[f]; }
  const std::vector<int>& hom(int x, int y) const { return homs_[static_cast<std::size_t>(x) * objects_ + y]; }
  const std::vector<int>& compose_table() const { return compose_; }
  const std::vector<int>& identities() const { return identity_; }

 private:
  int objects_ = 0;
  std::vector<int> src_, tgt_, identity_, compose_, inverse_;
  std::vector<std::vector<int>> homs_;
};

// Category axioms and invertibility. Associativity uses Light's test over a
// generating set, which is exact.
Witness validate(const FiniteGroupoid& g);

// A set of morphisms from which every morphism is a composite, chosen greedily.
std::vector<int> generators(const FiniteGroupoid& g);

// Class label per object: the smallest isomorphic object.
std::vector<int> iso_classes(const FiniteGroupoid& g);

struct GroupoidFunctor {
  std::vector<int> object_map;
  std::vector<int> morphism_map;
};

Witness validate_functor(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi);
// Objects in different classes of c land in different classes of d.
Witness injective_on_iso_classes(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi);

// psi: Aut_d(phi(object)) -> Aut_c(object); map is indexed by morphisms of d
// and holds -1 outside Aut_d(phi(object)).
struct Splitting {
  int object = 0;
  std::vector<int> map;
};

// psi is a homomorphism with psi o phi = id on Aut_c(object).
Witness verify_splitting(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                         const Splitting& psi);
// Brute-force search; images forced on the image of phi, free generators
// enumerated. Throws ResourceLimit after `bound` candidate assignments.
std::optional<Splitting> find_splitting(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                        int object, std::uint64_t bound = 1000000);

// Psi_{X,Y}: Hom_d(phi X, phi Y) -> Hom_c(X, Y) for every pair of objects.
class PsiFamily {
 public:
  PsiFamily() = default;
  PsiFamily(int c_objects, int d_morphisms) : objects_(c_objects), d_morphisms_(d_morphisms), maps_(c_objects * c_objects) {}

  int objects() const { return objects_; }
  // -1 when undefined
  int operator()(int x, int y, int u) const {
    const auto& m = maps_[static_cast<std::size_t>(x) * objects_ + y];
    return m.empty() ? -1 : m[u];
  }
  void set(int x, int y, int u, int f);

 private:
  int objects_ = 0;
  int d_morphisms_ = 0;
  std::vector<std::vector<int>> maps_;
};

// One splitting per isomorphism class (its object is the chosen base X0) and,
// per object X, an isomorphism x: X0 -> X. Throws InvalidInput when phi is
// not injective on classes and InvalidSplitting when a splitting fails.
PsiFamily build_psi(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                    const std::vector<Splitting>& splittings, const std::vector<int>& iso_from_base);
// Same, with x the smallest morphism X0 -> X.
PsiFamily build_psi(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                    const std::vector<Splitting>& splittings);

// (s1) and (s3), exhaustively, together with totality of every Psi_{X,Y}.
Witness verify_heavy_separability(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                  const PsiFamily& psi);
// (s2). It suffices to check a and b running over generators of c (one side
// at a time), which keeps the check exact on large groupoids.
Witness verify_s2(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi, const PsiFamily& psi);

// The left-inverse functor on the image: a full subcategory c0 hit once per
// image object, Psi restricted to it is a functor with Psi Phi = id on c0, and
// eta_X = Psi_{X,X0}(id) is a natural isomorphism id => Psi Phi.
Witness verify_left_inverse_functor(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                    const PsiFamily& psi);

// psi_X(u) = x psi_X0(phi(x)^-1 u phi(x)) x^-1 for every object X, from one
// splitting per class.
std::vector<Splitting> transport_splittings(const FiniteGroupoid& c, const FiniteGroupoid& d,
                                            const GroupoidFunctor& phi, const std::vector<Splitting>& per_class);

struct IndependenceReport {
  bool precondition_ok = true;  // every psi_X splits and the conjugation squares commute
  bool independent = true;
  bool exhaustive = true;       // false when only one-sided sweeps over (x, y) fit the budget
  Witness witness;
};

// family holds psi_X for every object X. Compares Psi over choices of base
// objects X0 and isomorphisms x, y.
IndependenceReport independence_check(const FiniteGroupoid& c, const FiniteGroupoid& d, const GroupoidFunctor& phi,
                                      const std::vector<Splitting>& family, std::uint64_t budget = 50000000);

// Ready-made instances.
struct GroupoidInstance {
  std::string name;
  FiniteGroupoid c, d;
  GroupoidFunctor phi;
  std::vector<Splitting> splittings;  // one per object of c, compatible
};

// Disjoint unions of connected groupoids (at most 4 objects in c) with
// automorphism groups G into G x H, |G||H| <= 16, twisted object by object.
GroupoidInstance random_instance(std::mt19937_64& rng);
// One object: D5 into B5 with the retraction as splitting.
GroupoidInstance hyperoct_instance();
// One object: Z/2 into Z/4, which admits no splitting.
GroupoidInstance nonsplit_instance();

}  // namespace qdp4
