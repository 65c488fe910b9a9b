#include "excverify/cayley.hpp"

#include <stdexcept>
#include <vector>

namespace excv {

namespace {

using IVec = std::vector<int>;

IVec cd_conj(const IVec& a) {
  IVec r(a.size());
  if (a.size() == 1) return a;
  std::size_t h = a.size() / 2;
  IVec lo(a.begin(), a.begin() + h);
  lo = cd_conj(lo);
  for (std::size_t k = 0; k < h; ++k) {
    r[k] = lo[k];
    r[h + k] = -a[h + k];
  }
  return r;
}

IVec cd_add(const IVec& a, const IVec& b, int s = 1) {
  IVec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + s * b[k];
  return r;
}

IVec cd_mul(const IVec& x, const IVec& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  std::size_t h = x.size() / 2;
  IVec a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  IVec c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  IVec lo = cd_add(cd_mul(a, c), cd_mul(cd_conj(d), b), -1);
  IVec hi = cd_add(cd_mul(d, a), cd_mul(b, cd_conj(c)));
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

constexpr std::array<int, 8> kRelabel = {1, -1, 1, -1, -1, 1, 1, 1};

std::array<std::array<OctProduct, 8>, 8> build_table() {
  std::array<std::array<OctProduct, 8>, 8> t{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      IVec x(8, 0), y(8, 0);
      x[i] = 1;
      y[j] = 1;
      IVec p = cd_mul(x, y);
      int nz = 0;
      for (int k = 0; k < 8; ++k)
        if (p[k] != 0) {
          t[i][j] = {p[k] * kRelabel[i] * kRelabel[j] * kRelabel[k], k};
          ++nz;
        }
      if (nz != 1) throw std::logic_error("Cayley-Dickson table is not monomial");
    }
  return t;
}

}  // namespace

const std::array<std::array<OctProduct, 8>, 8>& oct_table() {
  static const auto t = build_table();
  return t;
}

Octonion Octonion::basis(int i, const CycNum& s) {
  Octonion o;
  o.c.at(i) = s;
  return o;
}

bool Octonion::is_real() const {
  for (const auto& x : c)
    if (!x.is_real()) return false;
  return true;
}

bool Octonion::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

SparseVec Octonion::to_sparse() const {
  SparseVec v;
  for (int k = 0; k < 8; ++k)
    if (!c[k].is_zero()) v.emplace_back(k, c[k]);
  return v;
}

Octonion Octonion::from_sparse(const SparseVec& v, int offset) {
  Octonion o;
  for (const auto& [i, x] : v)
    if (i >= offset && i < offset + 8) o.c[i - offset] = x;
  return o;
}

Octonion operator+(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int k = 0; k < 8; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Octonion operator-(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int k = 0; k < 8; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Octonion operator-(const Octonion& a) {
  Octonion r;
  for (int k = 0; k < 8; ++k) r.c[k] = -a.c[k];
  return r;
}

Octonion operator*(const CycNum& s, const Octonion& a) {
  Octonion r;
  for (int k = 0; k < 8; ++k) r.c[k] = s * a.c[k];
  return r;
}

Octonion oct_mul(const Octonion& x, const Octonion& y) {
  const auto& t = oct_table();
  Octonion r;
  for (int i = 0; i < 8; ++i) {
    if (x.c[i].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (y.c[j].is_zero()) continue;
      const OctProduct& p = t[i][j];
      CycNum v = x.c[i] * y.c[j];
      if (p.sign > 0) r.c[p.index] += v;
      else r.c[p.index] -= v;
    }
  }
  return r;
}

Octonion oct_conj(const Octonion& x) {
  Octonion r = -x;
  r.c[0] = x.c[0];
  return r;
}

CycNum oct_inner(const Octonion& x, const Octonion& y) {
  CycNum s;
  for (int k = 0; k < 8; ++k)
    if (!x.c[k].is_zero() && !y.c[k].is_zero()) s += x.c[k] * y.c[k];
  return s;
}

CycNum oct_norm(const Octonion& x) { return oct_inner(x, x); }

Octonion apply(const OctOperator& l, const Octonion& x) {
  return Octonion::from_sparse(l.apply(x.to_sparse()));
}

OctOperator oct_operator_from_images(const std::array<Octonion, 8>& images, bool conj) {
  std::vector<SparseVec> cols;
  for (const auto& o : images) cols.push_back(o.to_sparse());
  return OctOperator(ExactMatrix::from_columns(8, cols), conj);
}

bool is_g2_automorphism(const OctOperator& l, G2Violation* violation) {
  if (l.dim() != 8) throw std::invalid_argument("octonion operator must be 8x8");
  if (!l.invertible()) throw std::domain_error("singular operator");
  if (!l.matrix().is_real()) {
    if (violation) *violation = {-1, -1};
    return false;
  }
  std::array<Octonion, 8> img;
  for (int i = 0; i < 8; ++i) img[i] = apply(l, Octonion::basis(i));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      Octonion lhs = apply(l, oct_mul(Octonion::basis(i), Octonion::basis(j)));
      if (!(lhs == oct_mul(img[i], img[j]))) {
        if (violation) *violation = {i, j};
        return false;
      }
    }
  return true;
}

namespace {

// images given as signed basis indices: +k -> e_k, -k -> -e_k (k >= 1)
OctOperator signed_permutation(const std::array<int, 8>& img) {
  std::array<Octonion, 8> im;
  for (int i = 0; i < 8; ++i) {
    int k = img[i] < 0 ? -img[i] : img[i];
    im[i] = Octonion::basis(k, CycNum(img[i] < 0 ? -1 : 1));
  }
  return oct_operator_from_images(im);
}

}  // namespace

OctOperator named_oct_map(const std::string& name) {
  if (name == "gamma") return signed_permutation({0, 1, 2, 3, -4, -5, -6, -7});
  if (name == "gamma_H") return signed_permutation({0, 1, -2, -3, 4, 5, -6, -7});
  if (name == "gamma_C") return signed_permutation({0, -1, 2, -3, 4, -5, 6, -7});
  if (name == "delta1") return signed_permutation({0, 1, 4, 5, 2, 3, -6, -7});
  if (name == "delta2") return signed_permutation({0, 1, -6, -7, -4, -5, -2, -3});
  if (name == "delta3") return signed_permutation({0, 4, 2, 6, 1, -5, 3, -7});
  if (name == "delta4") return signed_permutation({0, 5, 2, -7, -4, 1, -6, -3});
  if (name == "w") {
    // a + m -> a + omega m on C + C^3, C = span{1, e1} acting by left multiplication
    CycNum re(-1, 2), im = CycNum::sqrt3() * CycNum(1, 2);
    std::array<Octonion, 8> img;
    img[0] = Octonion::basis(0);
    img[1] = Octonion::basis(1);
    for (int k = 2; k < 8; ++k) {
      Octonion e = Octonion::basis(k);
      img[k] = re * e + im * oct_mul(Octonion::basis(1), e);
    }
    return oct_operator_from_images(img);
  }
  throw std::invalid_argument("unknown octonion map: " + name);
}

}  // namespace excv
