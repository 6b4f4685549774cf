#pragma once

// The hyperoctahedral group B5 of signed permutations of five pairs, its
// even subgroup D5, and the fiber product with a group of Moebius maps.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdp4/matrix.hpp"
#include "qdp4/wpline.hpp"

namespace qdp4 {

// Acts on labelled pairs by (sigma, eps) . (i, s) = (sigma(i), s * eps[sigma(i)]).
// Product a * b means "b first, then a".
class SignedPerm {
 public:
  SignedPerm();  // identity
  SignedPerm(Perm5 perm, std::array<int, 5> signs);
  static SignedPerm central();  // (id, all -1)
  // 0 <= index < 3840: permutation rank * 32 + sign mask (bit j set means eps[j] = -1).
  static SignedPerm from_index(int index);
  static const std::vector<SignedPerm>& all();  // B5 in index order

  const Perm5& perm() const { return perm_; }
  const std::array<int, 5>& signs() const { return signs_; }
  int index() const;

  SignedPerm operator*(const SignedPerm& b) const;
  SignedPerm inverse() const;
  // Image of the labelled element (i, s).
  std::pair<int, int> apply(int i, int s) const;

  int minus_count() const;
  // Parity of the induced permutation of the 10 labelled elements.
  bool is_even() const;

  bool operator==(const SignedPerm& o) const { return perm_ == o.perm_ && signs_ == o.signs_; }
  auto operator<=>(const SignedPerm& o) const = default;
  std::string to_string() const;

 private:
  Perm5 perm_;
  std::array<int, 5> signs_;
};

// a if a is even, otherwise c * a.
SignedPerm retract(const SignedPerm& a);

// Per-cycle sign data of a signed permutation: conjugacy invariant in B_n.
// Canonical order: length descending, then +1 before -1.
class CycleSignature {
 public:
  CycleSignature() = default;
  // Throws InvalidInput on lengths < 1 or signs other than +-1.
  explicit CycleSignature(std::vector<std::pair<int, int>> cycles);
  static CycleSignature of(const SignedPerm& a);
  static CycleSignature trivial(int n);

  const std::vector<std::pair<int, int>>& cycles() const { return cycles_; }
  int total() const;
  int plus_count() const;
  // Trace of the k-th power on the signed permutation representation.
  long long trace_power(long long k) const;
  // A signed permutation of {0..n-1} with this signature: cycles laid out on
  // consecutive labels, the cycle sign carried by its first label.
  std::pair<std::vector<int>, std::vector<int>> representative() const;
  SignedPerm representative5() const;

  bool operator==(const CycleSignature& o) const { return cycles_ == o.cycles_; }
  std::string to_string() const;

 private:
  std::vector<std::pair<int, int>> cycles_;
};

// Element of Aut^ev(H, Q) x_{S5} Aut(P).
struct FiberElement {
  SignedPerm signed_perm;
  AutElement aut;

  FiberElement operator*(const FiberElement& o) const;
};

// All pairs (even signed perm over rho, Moebius with image rho). Throws
// InvalidGroup when aut_p is not closed under composition.
std::vector<FiberElement> fiber_product(const std::vector<AutElement>& aut_p);

// Throws FiberMismatch unless the underlying permutations agree.
FiberElement retract_fiber(const SignedPerm& b, const AutElement& m);

// The 16 diagonal sign matrices with first entry +1 (2^5 modulo global sign).
std::vector<Mat> aut0_matrices(const FieldPtr& f);

}  // namespace qdp4
