#pragma once

// Five-point configurations on P^1 and the projective linear maps between them.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qdp4/field.hpp"

namespace qdp4 {

// (x:y) in P^1, kept normalized: y = 1 for finite points, (1:0) for infinity.
class ProjPoint {
 public:
  ProjPoint() = default;
  ProjPoint(Scalar x, Scalar y);
  static ProjPoint affine(const Scalar& z);
  static ProjPoint infinity(const FieldPtr& f);

  const FieldPtr& field() const { return x_.field(); }
  const Scalar& x() const { return x_; }
  const Scalar& y() const { return y_; }
  bool is_infinity() const { return y_.is_zero(); }
  // Affine coordinate x/y; throws on infinity.
  Scalar value() const;

  bool operator==(const ProjPoint& o) const { return x_ == o.x_ && y_ == o.y_; }
  // Infinity first, then the Scalar order on the affine coordinate.
  std::strong_ordering operator<=>(const ProjPoint& o) const;
  std::string to_string() const;

 private:
  Scalar x_, y_;
};

// z -> (a z + b) / (c z + d), kept with first nonzero entry equal to 1.
class Moebius {
 public:
  Moebius(Scalar a, Scalar b, Scalar c, Scalar d);
  static Moebius identity(const FieldPtr& f);
  // The unique map sending p1, p2, p3 to infinity, 0, 1.
  static Moebius to_standard(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3);
  // The unique map sending p_i to q_i.
  static Moebius through(const std::array<ProjPoint, 3>& p, const std::array<ProjPoint, 3>& q);

  const FieldPtr& field() const { return m_[0].field(); }
  const std::array<Scalar, 4>& entries() const { return m_; }
  ProjPoint operator()(const ProjPoint& p) const;
  Moebius operator*(const Moebius& o) const;  // composition, o applied first
  Moebius inverse() const;
  bool is_identity() const;
  // True when all entries lie in the subfield with q elements.
  bool defined_over(const mpz_class& q) const;

  bool operator==(const Moebius& o) const { return m_ == o.m_; }
  std::string to_string() const;

 private:
  void normalize();
  std::array<Scalar, 4> m_;
};

class PointConfiguration {
 public:
  // Points are sorted; throws InvalidInput unless there are 5 distinct points
  // over one field.
  explicit PointConfiguration(std::vector<ProjPoint> points);

  const FieldPtr& field() const { return pts_[0].field(); }
  const std::vector<ProjPoint>& points() const { return pts_; }
  // Index of p in the sorted list, or -1.
  int index_of(const ProjPoint& p) const;
  bool contains(const ProjPoint& p) const { return index_of(p) >= 0; }

 private:
  std::vector<ProjPoint> pts_;
};

using Perm5 = std::array<int, 5>;

struct AutElement {
  Moebius moebius;
  Perm5 perm;  // moebius(points[i]) = points[perm[i]]
};

// Image of c under m as a permutation of c's labels, if m preserves c.
std::optional<Perm5> induced_perm(const Moebius& m, const PointConfiguration& c);

// Some Moebius map with m(c1) = c2, trying the 60 ordered target triples.
std::optional<Moebius> pgl2_match(const PointConfiguration& c1, const PointConfiguration& c2);

// Full stabilizer of the point set, identity first.
std::vector<AutElement> aut_group(const PointConfiguration& c);

}  // namespace qdp4
