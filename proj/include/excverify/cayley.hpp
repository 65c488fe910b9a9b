#pragma once

#include <array>
#include <string>
#include <utility>

#include "excverify/linalg.hpp"

namespace excv {

// Element of the complexified Cayley algebra over the basis e0 = 1, e1..e7.
struct Octonion {
  std::array<CycNum, 8> c;

  static Octonion basis(int i, const CycNum& s = CycNum(1));
  bool is_real() const;
  bool is_zero() const;
  SparseVec to_sparse() const;
  static Octonion from_sparse(const SparseVec& v, int offset = 0);

  friend Octonion operator+(const Octonion& a, const Octonion& b);
  friend Octonion operator-(const Octonion& a, const Octonion& b);
  friend Octonion operator-(const Octonion& a);
  friend Octonion operator*(const CycNum& s, const Octonion& a);
  friend bool operator==(const Octonion& a, const Octonion& b) { return a.c == b.c; }
};

// e_i e_j = sign * e_index
struct OctProduct {
  int sign;
  int index;
};

// Cayley-Dickson doubling R -> C -> H -> O with
// (a + b e)(c + d e) = (ac - conj(d) b) + (d a + b conj(c)) e,
// then e1, e3, e4 replaced by their negatives. Hence
// e1 e2 = e3, e1 e4 = e5, e2 e4 = -e6, e3 e4 = e7, e1 e6 = e7, e2 e5 = e7.
const std::array<std::array<OctProduct, 8>, 8>& oct_table();

Octonion oct_mul(const Octonion& x, const Octonion& y);
Octonion oct_conj(const Octonion& x);
CycNum oct_inner(const Octonion& x, const Octonion& y);
CycNum oct_norm(const Octonion& x);

using OctOperator = SemilinearOp;

Octonion apply(const OctOperator& l, const Octonion& x);
// matrix whose columns are the images of e0..e7
OctOperator oct_operator_from_images(const std::array<Octonion, 8>& images, bool conj = false);

struct G2Violation {
  int i, j;
};
// L(e_i e_j) = L(e_i) L(e_j) on all basis pairs and L real; throws if singular
bool is_g2_automorphism(const OctOperator& l, G2Violation* violation = nullptr);

// gamma, gamma_H, gamma_C, delta1..delta4, w
OctOperator named_oct_map(const std::string& name);

}  // namespace excv
