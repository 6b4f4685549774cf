#pragma once

// JSON encodings of the library's values and the reports behind the
// command-line front end. Parse problems throw Error(Parse).

#include <json.hpp>

#include "qdp4/groupoidsep.hpp"
#include "qdp4/hyperoct.hpp"
#include "qdp4/pencil.hpp"

namespace qdp4 {

using Json = nlohmann::ordered_json;

// {"kind": "rationals"}, {"kind": "prime", "p": 5}, and
// {"kind": "extension", "p": 3, "modulus": [1, 0, 1]} (or "k": 2 for the
// canonical modulus).
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

// Integers for prime fields, "3/4" over Q, "[2,0,1]" for extensions.
// Input also accepts integers in any field and coefficient arrays.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const FieldPtr& f, const Json& j);

Json poly_to_json(const Poly& p);
Json point_to_json(const ProjPoint& p);  // [x, y], infinity is [1, 0]
Json moebius_to_json(const Moebius& m);  // [[a, b], [c, d]]
Json normal_form_to_json(const NormalForm& nf);
Json signature_to_json(const CycleSignature& s);  // [[length, sign], ...]
CycleSignature signature_from_json(const Json& j);
Json signed_perm_to_json(const SignedPerm& a);  // {"perm": [...], "signs": [...]}
SignedPerm signed_perm_from_json(const Json& j);

// {"field": {...}, "A": 5x5, "B": 5x5}
Json pencil_to_json(const QuadricPencil& p);
QuadricPencil pencil_from_json(const Json& j);

// {"objects": n, "morphisms": [[src, tgt], ...], "identities": [...],
//  "compose": m x m rows, entry [g][f] = g o f or -1}
Json groupoid_to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const Json& j);
// {"objects": [...], "morphisms": [...]}
Json functor_to_json(const GroupoidFunctor& f);
GroupoidFunctor functor_from_json(const Json& j);
Json witness_to_json(const Witness& w);

Json analyze_report(const QuadricPencil& p);
// "isomorphic" plus a certificate when there is one.
Json iso_report(const QuadricPencil& a, const QuadricPencil& b);
Json aut_report(const QuadricPencil& p);
// Finite fields only.
Json minimal_report(const QuadricPencil& p);
Json count_report(const QuadricPencil& p, unsigned k);
// Ranks for a signature: {"signature": ...}, {"signed_perm": ...} or a pencil.
Json kgroups_ranks_report(const Json& input);
// Input: {"c", "d", "functor", "splittings"?} or {"instance": "hyperoct" |
// "nonsplit" | "random", "seed"?}. Reports "heavily_separable".
Json groupoid_verify_report(const Json& input);

}  // namespace qdp4
