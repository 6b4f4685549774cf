#pragma once

#include <string>
#include <vector>

#include "qdp4/field.hpp"

namespace qdp4 {

// Univariate polynomial, coefficients low degree first. The zero polynomial
// has no coefficients; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  explicit Poly(FieldPtr f) : field_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Scalar> coeffs);
  static Poly from_ints(FieldPtr f, const std::vector<long long>& coeffs);
  static Poly constant(const Scalar& c);
  static Poly x(FieldPtr f);  // the variable

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const;
  const Scalar& lead() const;

  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& s) const;
  Poly operator%(const Poly& m) const;
  Poly operator/(const Poly& m) const;  // quotient
  bool operator==(const Poly& o) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();

  FieldPtr field_;
  std::vector<Scalar> c_;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b);  // monic, or zero if both zero
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m);

// gcd(f, f') is constant. Throws DegenerateInput on the zero polynomial.
bool squarefree(const Poly& f);

struct Factor {
  Poly poly;                 // monic irreducible
  unsigned multiplicity = 1;
};

// Complete factorization over a finite field; factors sorted by degree then
// coefficients. The leading coefficient of f is not included.
// Throws UnsupportedField over Q.
std::vector<Factor> factor(const Poly& f);

// Distinct roots in the coefficient field, sorted. Over Q this is rational
// root extraction.
std::vector<Scalar> roots(const Poly& f);
std::vector<Scalar> rational_roots(const Poly& f);

Poly map_coeffs(const Poly& f, const Embedding& e);

}  // namespace qdp4
