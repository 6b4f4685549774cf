#include "qdp4/hyperoct.hpp"

#include <algorithm>
#include <set>

namespace qdp4 {

namespace {

const std::vector<Perm5>& all_perms() {
  static const std::vector<Perm5> perms = [] {
    std::vector<Perm5> out;
    Perm5 p{0, 1, 2, 3, 4};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

int perm_rank(const Perm5& p) {
  static const int fact[5] = {24, 6, 2, 1, 1};
  int r = 0;
  for (int i = 0; i < 5; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 5; ++j) smaller += p[j] < p[i];
    r += smaller * fact[i];
  }
  return r;
}

bool is_perm(const Perm5& p) {
  std::array<bool, 5> seen{};
  for (int x : p) {
    if (x < 0 || x > 4 || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

SignedPerm::SignedPerm() : perm_{0, 1, 2, 3, 4}, signs_{1, 1, 1, 1, 1} {}

SignedPerm::SignedPerm(Perm5 perm, std::array<int, 5> signs) : perm_(perm), signs_(signs) {
  if (!is_perm(perm_)) throw Error(ErrorCode::InvalidInput, "not a permutation of {0..4}");
  for (int s : signs_)
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidInput, "signs must be +1 or -1");
}

SignedPerm SignedPerm::central() { return SignedPerm({0, 1, 2, 3, 4}, {-1, -1, -1, -1, -1}); }

SignedPerm SignedPerm::from_index(int index) {
  if (index < 0 || index >= 3840) throw Error(ErrorCode::InvalidInput, "B5 index out of range");
  std::array<int, 5> s{};
  for (int j = 0; j < 5; ++j) s[j] = (index >> j) & 1 ? -1 : 1;
  return SignedPerm(all_perms()[index / 32], s);
}

const std::vector<SignedPerm>& SignedPerm::all() {
  static const std::vector<SignedPerm> elems = [] {
    std::vector<SignedPerm> out;
    for (int i = 0; i < 3840; ++i) out.push_back(from_index(i));
    return out;
  }();
  return elems;
}

int SignedPerm::index() const {
  int mask = 0;
  for (int j = 0; j < 5; ++j)
    if (signs_[j] < 0) mask |= 1 << j;
  return perm_rank(perm_) * 32 + mask;
}

SignedPerm SignedPerm::operator*(const SignedPerm& b) const {
  SignedPerm r;
  std::array<int, 5> inv_a{};
  for (int i = 0; i < 5; ++i) inv_a[perm_[i]] = i;
  for (int i = 0; i < 5; ++i) r.perm_[i] = perm_[b.perm_[i]];
  for (int j = 0; j < 5; ++j) r.signs_[j] = signs_[j] * b.signs_[inv_a[j]];
  return r;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm r;
  for (int i = 0; i < 5; ++i) r.perm_[perm_[i]] = i;
  for (int i = 0; i < 5; ++i) r.signs_[i] = signs_[perm_[i]];
  return r;
}

std::pair<int, int> SignedPerm::apply(int i, int s) const { return {perm_[i], s * signs_[perm_[i]]}; }

int SignedPerm::minus_count() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

bool SignedPerm::is_even() const {
  // labelled element (i, s) is point 2i + (s < 0)
  std::array<int, 10> img{};
  for (int i = 0; i < 5; ++i)
    for (int s : {1, -1}) {
      auto [j, t] = apply(i, s);
      img[2 * i + (s < 0)] = 2 * j + (t < 0);
    }
  std::array<bool, 10> seen{};
  int cycles = 0;
  for (int i = 0; i < 10; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = img[j]) seen[j] = true;
  }
  return (10 - cycles) % 2 == 0;
}

std::string SignedPerm::to_string() const {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(perm_[i]);
  s += ";";
  for (int i = 0; i < 5; ++i) s += signs_[i] > 0 ? "+" : "-";
  return s + ")";
}

SignedPerm retract(const SignedPerm& a) { return a.is_even() ? a : SignedPerm::central() * a; }

CycleSignature::CycleSignature(std::vector<std::pair<int, int>> cycles) : cycles_(std::move(cycles)) {
  for (const auto& [len, sign] : cycles_) {
    if (len < 1) throw Error(ErrorCode::InvalidInput, "cycle length must be positive");
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidInput, "cycle sign must be +1 or -1");
  }
  std::sort(cycles_.begin(), cycles_.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
}

CycleSignature CycleSignature::of(const SignedPerm& a) {
  std::vector<std::pair<int, int>> cyc;
  std::array<bool, 5> seen{};
  for (int i = 0; i < 5; ++i) {
    if (seen[i]) continue;
    int len = 0, sign = 1;
    for (int j = i; !seen[j]; j = a.perm()[j]) {
      seen[j] = true;
      ++len;
      sign *= a.signs()[j];
    }
    cyc.push_back({len, sign});
  }
  return CycleSignature(std::move(cyc));
}

CycleSignature CycleSignature::trivial(int n) {
  return CycleSignature(std::vector<std::pair<int, int>>(static_cast<std::size_t>(n), {1, 1}));
}

int CycleSignature::total() const {
  int t = 0;
  for (const auto& c : cycles_) t += c.first;
  return t;
}

int CycleSignature::plus_count() const {
  return static_cast<int>(std::count_if(cycles_.begin(), cycles_.end(), [](const auto& c) { return c.second > 0; }));
}

long long CycleSignature::trace_power(long long k) const {
  long long tr = 0;
  for (const auto& [len, sign] : cycles_)
    if (k % len == 0) tr += len * ((sign < 0 && (k / len) % 2 == 1) ? -1 : 1);
  return tr;
}

std::pair<std::vector<int>, std::vector<int>> CycleSignature::representative() const {
  const int n = total();
  std::vector<int> perm(n), signs(n, 1);
  int start = 0;
  for (const auto& [len, sign] : cycles_) {
    for (int j = 0; j < len; ++j) perm[start + j] = start + (j + 1) % len;
    signs[start] = sign;
    start += len;
  }
  return {perm, signs};
}

SignedPerm CycleSignature::representative5() const {
  if (total() != 5) throw Error(ErrorCode::InvalidInput, "signature does not act on 5 points");
  auto [perm, signs] = representative();
  Perm5 p{};
  std::array<int, 5> s{};
  for (int i = 0; i < 5; ++i) {
    p[i] = perm[i];
    s[i] = signs[i];
  }
  return SignedPerm(p, s);
}

std::string CycleSignature::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < cycles_.size(); ++i)
    s += (i ? "," : "") + std::string("(") + std::to_string(cycles_[i].first) + "," +
         (cycles_[i].second > 0 ? "+1" : "-1") + ")";
  return s + "]";
}

FiberElement FiberElement::operator*(const FiberElement& o) const {
  Perm5 p{};
  for (int i = 0; i < 5; ++i) p[i] = aut.perm[o.aut.perm[i]];
  return {signed_perm * o.signed_perm, {aut.moebius * o.aut.moebius, p}};
}

std::vector<FiberElement> fiber_product(const std::vector<AutElement>& aut_p) {
  if (aut_p.empty()) throw Error(ErrorCode::InvalidGroup, "empty automorphism list");
  std::set<Perm5> perms;
  for (const auto& a : aut_p) perms.insert(a.perm);
  if (perms.size() != aut_p.size())
    throw Error(ErrorCode::InvalidGroup, "two Moebius maps induce the same permutation");
  for (const auto& a : aut_p)
    for (const auto& b : aut_p) {
      Perm5 ab{};
      for (int i = 0; i < 5; ++i) ab[i] = a.perm[b.perm[i]];
      auto it = std::find_if(aut_p.begin(), aut_p.end(), [&](const AutElement& c) { return c.perm == ab; });
      if (it == aut_p.end() || !(it->moebius == a.moebius * b.moebius))
        throw Error(ErrorCode::InvalidGroup, "automorphism list is not closed under composition");
    }
  std::vector<FiberElement> out;
  for (const auto& a : aut_p)
    for (int mask = 0; mask < 32; ++mask) {
      if (__builtin_popcount(mask) % 2) continue;
      std::array<int, 5> s{};
      for (int j = 0; j < 5; ++j) s[j] = (mask >> j) & 1 ? -1 : 1;
      out.push_back({SignedPerm(a.perm, s), a});
    }
  return out;
}

FiberElement retract_fiber(const SignedPerm& b, const AutElement& m) {
  if (b.perm() != m.perm)
    throw Error(ErrorCode::FiberMismatch, "signed permutation " + b.to_string() +
                                              " does not lie over the Moebius permutation");
  return {retract(b), m};
}

std::vector<Mat> aut0_matrices(const FieldPtr& f) {
  std::vector<Mat> out;
  for (int mask = 0; mask < 16; ++mask) {
    Mat m = Mat::identity(f, 5);
    for (int j = 0; j < 4; ++j)
      if ((mask >> j) & 1) m(j + 1, j + 1) = -Scalar::one(f);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace qdp4
