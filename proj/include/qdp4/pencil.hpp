#pragma once

// Pencils of quadrics t0 A - t1 B in P^4 and the invariants of the quartic
// del Pezzo surface they cut out. A pencil member is parametrized by
// z = t1 / t0, so the member at z is A - z B and the member at infinity is B.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "qdp4/hyperoct.hpp"
#include "qdp4/matrix.hpp"
#include "qdp4/poly.hpp"
#include "qdp4/wpline.hpp"

namespace qdp4 {

class QuadricPencil {
 public:
  // Throws InvalidInput on shape, symmetry or field problems and
  // DegeneratePencil when A and B are proportional.
  QuadricPencil(Mat a, Mat b);

  const FieldPtr& field() const { return a_.field(); }
  const Mat& A() const { return a_; }
  const Mat& B() const { return b_; }

  // (M^T A M, M^T B M)
  QuadricPencil congruence(const Mat& m) const;
  // (alpha A + beta B, gamma A + delta B)
  QuadricPencil basis_change(const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                             const Scalar& delta) const;

 private:
  Mat a_, b_;
};

// det(t0 A - t1 B) as coefficients c_i of t0^(5-i) t1^i.
struct BinaryQuintic {
  std::vector<Scalar> coeffs;
  // det(A - z B) = sum c_i z^i
  Poly affine() const;
};

BinaryQuintic discriminant_quintic(const QuadricPencil& p);
// The binary quintic is nonzero and squarefree, counting the point at infinity.
bool is_smooth(const QuadricPencil& p);

// Frobenius orbit of degenerate members: an irreducible factor of det(A - zB)
// over the base field, or the single point at infinity.
struct DegenerateOrbit {
  Poly factor;
  bool at_infinity = false;
  unsigned degree = 1;
};

struct DegeneratePoint {
  ProjPoint point;                     // z in the working field
  unsigned residue_degree = 1;
  int orbit = 0;
  std::vector<Scalar> diagonal_entries;  // the 4 nonzero entries of the diagonalized member
  Scalar discriminant() const;           // their product
};

struct PencilSplitting {
  FieldPtr base;
  FieldPtr working;
  unsigned splitting_degree = 1;  // lcm of the orbit sizes
  std::vector<DegenerateOrbit> orbits;
  std::vector<DegeneratePoint> points;  // sorted by point

  PointConfiguration configuration() const;
};

// Degenerate points over the smallest splitting field (canonical modulus
// unless the base field already splits the quintic). Throws NotSmooth, or
// UnsupportedSplitting over Q when some root is irrational.
PencilSplitting split(const QuadricPencil& p);
// Same, with points computed in the given field, which must contain a
// splitting field of the quintic.
PencilSplitting split_in(const QuadricPencil& p, const FieldPtr& working);

struct Diagonalization {
  Mat m;  // columns: kernel vectors of the degenerate members, in point order
  std::vector<std::pair<Scalar, Scalar>> pairs;  // (v^T A v, v^T B v)
};
Diagonalization simultaneous_diagonalize(const QuadricPencil& p);

struct NormalForm {
  Scalar lambda, mu;

  bool operator==(const NormalForm& o) const { return lambda == o.lambda && mu == o.mu; }
  std::strong_ordering operator<=>(const NormalForm& o) const;
};

// ordering[i] is the index (into the sorted degenerate points) of the i-th
// chosen point; points 1, 2, 3 go to infinity, 0, 1.
NormalForm normal_form(const QuadricPencil& p, const Perm5& ordering);
NormalForm normal_form(const PencilSplitting& s, const Perm5& ordering);
// Sorted distinct normal forms over all 120 orderings.
std::vector<NormalForm> canonical_invariant(const QuadricPencil& p);
std::vector<NormalForm> canonical_invariant(const PencilSplitting& s);

struct IsoCertificate {
  Moebius moebius;     // carries the degenerate points of the first pencil onto the second
  bool base_rational;  // all entries lie in the base field
};

// Both pencils must be over the same field descriptor (DescriptorMismatch).
std::optional<IsoCertificate> isomorphic(const QuadricPencil& p1, const QuadricPencil& p2);

// Finite base fields only (UnsupportedField over Q).
CycleSignature galois_signature(const QuadricPencil& p);
CycleSignature galois_signature(const PencilSplitting& s);

// Default q^k <= 250, overridden by QDP4_POINTCOUNT_GUARD.
std::uint64_t pointcount_guard();
// Number of points of the surface over the degree-k extension of the base
// field. Throws ResourceLimit when q^k exceeds the guard.
mpz_class count_points(const QuadricPencil& p, unsigned k, std::uint64_t guard = pointcount_guard());
// q^(2k) + q^k (1 + tr(sigma^k)) + 1.
mpz_class predicted_count(const CycleSignature& sig, const mpz_class& q, unsigned k);

// A = diag(1, 0, 1, lambda, mu), B = diag(0, 1, 1, 1, 1); InvalidNormalForm
// when lambda or mu lies in {0, 1} or lambda = mu.
QuadricPencil reconstruct(const NormalForm& nf);

}  // namespace qdp4
