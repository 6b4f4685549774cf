#pragma once

// Numerical K-theory: K0(X) in the (rank, c1, 2 ch2) chart with its Euler
// form, the orthogonal to [O], the Grothendieck group of a weighted line with
// n weight-2 points, Serre operators and invariant ranks.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdp4/hyperoct.hpp"
#include "qdp4/matrix.hpp"
#include "qdp4/picard.hpp"

namespace qdp4 {

struct K0ClassX {
  long long r = 0;
  PicClass c1{};
  long long s2 = 0;  // 2 ch2

  std::vector<long long> coords() const;  // r, c1[0..5], s2
  static K0ClassX from_coords(const std::vector<long long>& v);
  K0ClassX operator+(const K0ClassX& o) const;
  K0ClassX operator-() const;
  bool operator==(const K0ClassX& o) const = default;
};

mpq_class euler_x(const K0ClassX& u, const K0ClassX& v);
K0ClassX class_of(const PicClass& d);  // (1, D, D.D)

// 8x8 Gram matrix of euler_x in the coordinate basis.
Mat k0x_gram();
// S = E^{-1} E^T, so that chi(x, y) = chi(y, S x). Throws DegenerateForm.
Mat serre_from_gram(const Mat& e);
// The tensor-by-K class map (r, D, s2) -> (r, D + rK, s2 + 2 D.K + r K^2).
Mat tensor_canonical_matrix();

// Integral basis of {v : chi([O], v) = 0}; 7 vectors in K0(X) coordinates.
// A kernel vector is determined by its first seven coordinates.
std::vector<K0ClassX> atom_sublattice();
// Coordinates of v in atom_sublattice(); throws InvalidClass if v is outside.
std::vector<long long> atom_coords(const K0ClassX& v);
Mat atom_gram();
Mat atom_serre();

// Basis ([O], [O_pt], [S_1..S_n]).
Mat wpl_gram(int n);

enum class RankSpace { Picard, Wpl, SurfaceK0, TorsionPart };

struct SignedAction {
  std::vector<int> perm;   // i -> perm[i]
  std::vector<int> signs;  // sign attached to the target label
};

SignedAction action_of(const SignedPerm& a);
SignedAction action_of(const CycleSignature& sig);

// Matrix of the action on the chosen space; n = number of labels.
Mat space_action_matrix(RankSpace space, const SignedAction& a);
// dim ker(M - I), exact.
int kernel_invariant_rank(RankSpace space, const SignedAction& a);
// Picard 1 + plus, Wpl 2 + plus, TorsionPart 1 + plus, SurfaceK0 3 + plus.
int g_invariant_rank(RankSpace space, const CycleSignature& sig);

struct ConicBundleRanks {
  int k0x_rank;
  int atom_rank;
};
// Throws InvalidInput if the cycles do not sum to n, or relatively_minimal
// is claimed with a +1 cycle present.
ConicBundleRanks conic_bundle_ranks(int n, const CycleSignature& sig, bool relatively_minimal);

const char* to_string(RankSpace space);

}  // namespace qdp4
