#include "qdp4/picard.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qdp4 {

PicClass operator+(const PicClass& a, const PicClass& b) {
  PicClass r{};
  for (int i = 0; i < 6; ++i) r[i] = a[i] + b[i];
  return r;
}

PicClass operator-(const PicClass& a, const PicClass& b) {
  PicClass r{};
  for (int i = 0; i < 6; ++i) r[i] = a[i] - b[i];
  return r;
}

PicClass operator-(const PicClass& a) { return PicClass{} - a; }

PicClass operator*(long long k, const PicClass& a) {
  PicClass r{};
  for (int i = 0; i < 6; ++i) r[i] = k * a[i];
  return r;
}

long long intersect(const PicClass& a, const PicClass& b) {
  long long s = a[0] * b[0];
  for (int i = 1; i < 6; ++i) s -= a[i] * b[i];
  return s;
}

PicClass canonical_class() { return {-3, 1, 1, 1, 1, 1}; }
PicClass hyperplane() { return {1, 0, 0, 0, 0, 0}; }

PicClass exceptional(int i) {
  PicClass e{};
  e[i + 1] = 1;
  return e;
}

const std::vector<PicClass>& zero_classes() {
  static const std::vector<PicClass> list = [] {
    std::vector<PicClass> out;
    for (int i = 0; i < 5; ++i) out.push_back(hyperplane() - exceptional(i));
    for (int i = 0; i < 5; ++i) {
      PicClass c = 2 * hyperplane();
      for (int j = 0; j < 5; ++j)
        if (j != i) c = c - exceptional(j);
      out.push_back(c);
    }
    return out;
  }();
  return list;
}

bool is_zero_class(const PicClass& h) {
  return intersect(h, h) == 0 && intersect(h, canonical_class()) == -2;
}

PicClass pair_of(const PicClass& h) {
  if (!is_zero_class(h)) throw Error(ErrorCode::InvalidClass, "not a zero-class");
  return -canonical_class() - h;
}

PicClass pair_representative(int i) {
  const PicClass a = zero_classes()[i], b = pair_of(a);
  return std::min(a, b);
}

PicClass doubled_hbar(int i) { return 2 * pair_representative(i) + canonical_class(); }

const std::vector<PicClass>& roots() {
  static const std::vector<PicClass> list = [] {
    std::vector<PicClass> out;
    const PicClass k = canonical_class();
    PicClass x{};
    for (long long n = 0; n < 7 * 7 * 7 * 7 * 7 * 7; ++n) {
      long long t = n;
      for (int i = 5; i >= 0; --i, t /= 7) x[i] = t % 7 - 3;
      if (intersect(x, x) == -2 && intersect(x, k) == 0) out.push_back(x);
    }
    return out;
  }();
  return list;
}

bool is_root(const PicClass& r) { return intersect(r, r) == -2 && intersect(r, canonical_class()) == 0; }

PicClass reflect(const PicClass& r, const PicClass& x) {
  if (!is_root(r)) throw Error(ErrorCode::InvalidRoot, "reflection vector is not a root");
  return x + intersect(x, r) * r;
}

LatticeAut::LatticeAut() : m_{} {
  for (int i = 0; i < 6; ++i) m_[i * 6 + i] = 1;
}

LatticeAut LatticeAut::reflection(const PicClass& r) {
  LatticeAut w;
  for (int j = 0; j < 6; ++j) {
    PicClass e{};
    e[j] = 1;
    const PicClass img = reflect(r, e);
    for (int i = 0; i < 6; ++i) w(i, j) = img[i];
  }
  return w;
}

PicClass LatticeAut::apply(const PicClass& x) const {
  PicClass r{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i] += (*this)(i, j) * x[j];
  return r;
}

LatticeAut LatticeAut::operator*(const LatticeAut& o) const {
  LatticeAut r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      long long s = 0;
      for (int k = 0; k < 6; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

bool LatticeAut::preserves_form() const {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      PicClass a{}, b{};
      a[i] = 1;
      b[j] = 1;
      if (intersect(apply(a), apply(b)) != intersect(a, b)) return false;
    }
  return true;
}

bool LatticeAut::fixes_canonical() const { return apply(canonical_class()) == canonical_class(); }

const std::vector<LatticeAut>& weyl_group() {
  static const std::vector<LatticeAut> group = [] {
    std::vector<LatticeAut> gens;
    for (const auto& r : roots()) gens.push_back(LatticeAut::reflection(r));
    std::vector<LatticeAut> out{LatticeAut()};
    std::set<LatticeAut> seen{LatticeAut()};
    for (std::size_t head = 0; head < out.size(); ++head)
      for (const auto& g : gens) {
        LatticeAut w = g * out[head];
        if (seen.insert(w).second) out.push_back(w);
      }
    return out;
  }();
  return group;
}

SignedPerm to_signed_perm(const LatticeAut& w) {
  if (!w.preserves_form() || !w.fixes_canonical())
    throw Error(ErrorCode::InvalidAut, "lattice map does not preserve the form and K");
  Perm5 perm{};
  std::array<int, 5> signs{};
  for (int i = 0; i < 5; ++i) {
    const PicClass img = w.apply(doubled_hbar(i));
    bool found = false;
    for (int j = 0; j < 5 && !found; ++j) {
      if (img == doubled_hbar(j)) {
        perm[i] = j;
        signs[j] = 1;
        found = true;
      } else if (img == -doubled_hbar(j)) {
        perm[i] = j;
        signs[j] = -1;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::InvalidAut, "lattice map does not permute the hbar classes");
  }
  return SignedPerm(perm, signs);
}

Mat pic_action_matrix(const SignedPerm& a) {
  auto q = Field::rationals();
  // columns of t: K, 2hbar_1..2hbar_5 in H,E coordinates
  Mat t(q, 6, 6);
  for (int i = 0; i < 6; ++i) t(i, 0) = Scalar::from_int(q, canonical_class()[i]);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) t(i, j + 1) = Scalar::from_int(q, doubled_hbar(j)[i]);
  Mat d(q, 6, 6);
  d(0, 0) = Scalar::one(q);
  for (int i = 0; i < 5; ++i) d(a.perm()[i] + 1, i + 1) = Scalar::from_int(q, a.signs()[a.perm()[i]]);
  return t * d * inverse(t);
}

int invariant_rank(const CycleSignature& sig) { return 1 + sig.plus_count(); }

bool is_minimal(const CycleSignature& sig) { return invariant_rank(sig) == 1; }

}  // namespace qdp4
