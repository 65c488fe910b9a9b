#pragma once

#include <array>
#include <string>

#include "excverify/cayley.hpp"

namespace excv {

inline constexpr int kJordanDim = 27;

// X = [[xi1, x3, conj(x2)], [conj(x3), xi2, x1], [x2, conj(x1), xi3]]
// Coordinates: 0..2 are xi1..xi3, F_k(e_i) sits at 3 + 8(k-1) + i.
struct JordanElem {
  std::array<CycNum, 3> xi;
  std::array<Octonion, 3> x;

  static JordanElem E();
  static JordanElem E(int k);
  static JordanElem F(int k, const Octonion& o);
  static JordanElem basis(int idx);
  bool is_real() const;
  bool is_zero() const;
  CycNum trace() const { return xi[0] + xi[1] + xi[2]; }
  SparseVec to_sparse(int offset = 0) const;
  static JordanElem from_sparse(const SparseVec& v, int offset = 0);

  friend JordanElem operator+(const JordanElem& a, const JordanElem& b);
  friend JordanElem operator-(const JordanElem& a, const JordanElem& b);
  friend JordanElem operator-(const JordanElem& a);
  friend JordanElem operator*(const CycNum& s, const JordanElem& a);
  friend bool operator==(const JordanElem& a, const JordanElem& b) {
    return a.xi == b.xi && a.x == b.x;
  }
};

inline int jordan_index(int k, int i) { return 3 + 8 * (k - 1) + i; }

// (b_i, b_i): 1 on E_k, 2 on F_k(e_i)
int jordan_gram(int idx);

JordanElem jordan_mul(const JordanElem& a, const JordanElem& b);
JordanElem cross(const JordanElem& a, const JordanElem& b);
CycNum jordan_inner(const JordanElem& a, const JordanElem& b);
CycNum trilinear(const JordanElem& a, const JordanElem& b, const JordanElem& c);
CycNum det(const JordanElem& a);

// bilinear products on coordinate vectors through cached basis tables
SparseVec jordan_mul(const SparseVec& a, const SparseVec& b);
SparseVec cross(const SparseVec& a, const SparseVec& b);
CycNum jordan_inner(const SparseVec& a, const SparseVec& b);
// basis products b_i o b_j and b_i x b_j
const SparseVec& jordan_mul_table(int i, int j);
const SparseVec& cross_table(int i, int j);

using JordanOp = SemilinearOp;

JordanElem apply(const JordanOp& l, const JordanElem& x);
// x_k -> l x_k on all three off-diagonal entries, diagonal fixed
JordanOp lift_oct_map(const OctOperator& l);
// tL with (tL X, Y) = (X, L Y); throws for conjugate-linear L
JordanOp transpose_op(const JordanOp& l);
// T~ X = T o X
JordanOp tilde(const JordanElem& t);
JordanOp phi1(const CycNum& theta);
JordanOp phi2(const CycNum& nu);
JordanOp jordan_tau();

struct JordanViolation {
  int i = -1, j = -1, k = -1;
};
bool is_f4_elem(const JordanOp& l, JordanViolation* violation = nullptr);
bool is_e6_elem(const JordanOp& l, JordanViolation* violation = nullptr);

// sigma, sigma_prime, gamma, gamma_H, gamma_C, delta1..delta7, delta9, rho2, tau
JordanOp named_jordan_map(const std::string& name);

}  // namespace excv
