#pragma once

// Exact scalars over Q, F_p and F_{p^k}.
//
// A Field is an immutable descriptor shared by all of its elements. Finite
// extension fields are presented as F_p[t]/(modulus) with a monic irreducible
// modulus; Field::canonical picks the lexicographically smallest such modulus
// (coefficients compared from the constant term upward), so two runs always
// produce identical coordinates.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "qdp4/error.hpp"

namespace qdp4 {

enum class FieldKind { Rationals, Prime, Extension };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static FieldPtr rationals();
  static FieldPtr prime(std::uint64_t p);
  // modulus is low degree first and must be monic irreducible of degree >= 2.
  static FieldPtr extension(std::uint64_t p, std::vector<std::uint64_t> modulus);
  // F_{p^degree} with the canonical modulus; degree 1 gives the prime field.
  static FieldPtr canonical(std::uint64_t p, unsigned degree);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FieldKind::Rationals; }
  std::uint64_t characteristic() const { return p_; }
  // Degree over the prime field (1 for Q and F_p).
  unsigned degree() const { return degree_; }
  // Number of elements; zero for Q.
  mpz_class order() const;
  // Monic modulus, low degree first; {0, 1} (i.e. t) for prime fields.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool is_canonical() const;

  bool operator==(const Field& other) const;
  std::string describe() const;

 private:
  Field(FieldKind kind, std::uint64_t p, std::vector<std::uint64_t> modulus);

  FieldKind kind_;
  std::uint64_t p_ = 0;
  unsigned degree_ = 1;
  std::vector<std::uint64_t> modulus_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b);

class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(FieldPtr f);
  static Scalar one(FieldPtr f);
  static Scalar from_int(FieldPtr f, long long v);
  static Scalar from_rational(FieldPtr f, const mpq_class& q);
  // Coefficient vector in the power basis 1, t, ..., t^{k-1}; entries reduced mod p.
  static Scalar from_coeffs(FieldPtr f, std::vector<std::uint64_t> coeffs);
  // The class of t in an extension field (or 0 in a prime field).
  static Scalar generator(FieldPtr f);
  // "3/4", "-2", "[2,0,1]" (extension coefficient vector), "4".
  static Scalar parse(FieldPtr f, std::string_view text);

  const FieldPtr& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return q_; }
  const std::vector<std::uint64_t>& coeffs() const { return v_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inv() const;
  Scalar pow(const mpz_class& e) const;
  Scalar pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }

  bool operator==(const Scalar& o) const;
  // Fixed total order: numeric on Q, lexicographic on coefficient vectors
  // (constant term first) on finite fields.
  std::strong_ordering operator<=>(const Scalar& o) const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  mpq_class q_;
  std::vector<std::uint64_t> v_;
};

// a^(|F|-1)/2 == 1; zero input throws DegenerateInput. Finite fields only.
bool is_square(const Scalar& a);
// True when a lies in the subfield with q elements (a^q == a).
bool in_subfield(const Scalar& a, const mpz_class& q);

// Field homomorphism between finite fields of equal characteristic, chosen
// deterministically: identity when the descriptors coincide, otherwise t maps
// to the smallest root of the source modulus in the target.
class Embedding {
 public:
  Embedding() = default;
  static Embedding between(FieldPtr from, FieldPtr to);

  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }
  Scalar operator()(const Scalar& a) const;

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<Scalar> powers_;  // images of 1, t, ..., t^{k-1}
};

bool is_prime(std::uint64_t n);

}  // namespace qdp4
