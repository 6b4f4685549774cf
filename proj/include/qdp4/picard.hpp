#pragma once

// The Picard lattice Z^6 = <H, E1..E5> of a quartic del Pezzo surface with
// form diag(1, -1, -1, -1, -1, -1) and K = -3H + E1 + ... + E5.

#include <array>
#include <cstddef>
#include <vector>

#include "qdp4/hyperoct.hpp"
#include "qdp4/matrix.hpp"

namespace qdp4 {

using PicClass = std::array<long long, 6>;

PicClass operator+(const PicClass& a, const PicClass& b);
PicClass operator-(const PicClass& a, const PicClass& b);
PicClass operator-(const PicClass& a);
PicClass operator*(long long k, const PicClass& a);

long long intersect(const PicClass& a, const PicClass& b);
PicClass canonical_class();
PicClass hyperplane();
PicClass exceptional(int i);  // E_{i+1}, 0 <= i < 5

// H - E_i for i = 1..5, then 2H - sum_{j != i} E_j for i = 1..5.
const std::vector<PicClass>& zero_classes();
bool is_zero_class(const PicClass& h);
// -K - h; throws InvalidClass unless h is a zero-class.
PicClass pair_of(const PicClass& h);
// Representative h_i of the i-th pair (the lexicographically smaller class).
PicClass pair_representative(int i);
// 2 h_i + K, twice the orthonormal vector attached to pair i.
PicClass doubled_hbar(int i);

// All r with r.r = -2, r.K = 0 (box search over [-3, 3]^6).
const std::vector<PicClass>& roots();
bool is_root(const PicClass& r);
// x + (x.r) r; throws InvalidRoot unless r is a root.
PicClass reflect(const PicClass& r, const PicClass& x);

// Integer 6x6 matrix acting on column vectors.
class LatticeAut {
 public:
  LatticeAut();  // identity
  static LatticeAut reflection(const PicClass& r);

  long long operator()(int i, int j) const { return m_[i * 6 + j]; }
  long long& operator()(int i, int j) { return m_[i * 6 + j]; }
  PicClass apply(const PicClass& x) const;
  LatticeAut operator*(const LatticeAut& o) const;
  bool preserves_form() const;
  bool fixes_canonical() const;

  bool operator==(const LatticeAut& o) const { return m_ == o.m_; }
  auto operator<=>(const LatticeAut& o) const = default;

 private:
  std::array<long long, 36> m_;
};

// Closure of the 40 root reflections, identity first.
const std::vector<LatticeAut>& weyl_group();

// Signed permutation of hbar_1..hbar_5 induced by w. Throws InvalidAut when
// w moves K, breaks the form, or does not permute the hbar up to sign.
SignedPerm to_signed_perm(const LatticeAut& w);

// The rational 6x6 matrix in the basis H, E1..E5 acting by the identity on
// K and by a on the hbar_i.
Mat pic_action_matrix(const SignedPerm& a);

// rank Pic^G = 1 + number of +1 cycles.
int invariant_rank(const CycleSignature& sig);
bool is_minimal(const CycleSignature& sig);

}  // namespace qdp4
