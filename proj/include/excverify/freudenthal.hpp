#pragma once

#include <optional>
#include <string>

#include "excverify/jordan.hpp"

namespace excv {

inline constexpr int kFDim = 56;

// P = (X, Y, xi, eta); coordinates X at 0..26, Y at 27..53, xi 54, eta 55
struct FVector {
  JordanElem X, Y;
  CycNum xi, eta;

  static FVector basis(int idx);
  bool is_zero() const;
  SparseVec to_sparse(int offset = 0) const;
  static FVector from_sparse(const SparseVec& v, int offset = 0);

  friend FVector operator+(const FVector& a, const FVector& b);
  friend FVector operator-(const FVector& a, const FVector& b);
  friend FVector operator*(const CycNum& s, const FVector& a);
  friend bool operator==(const FVector& a, const FVector& b) {
    return a.X == b.X && a.Y == b.Y && a.xi == b.xi && a.eta == b.eta;
  }
};

// Phi(phi, A, B, nu) with phi a 27x27 linear operator in e6^C
struct E7AlgElem {
  JordanOp phi = JordanOp(ExactMatrix(kJordanDim, kJordanDim));
  JordanElem A, B;
  CycNum nu;

  friend E7AlgElem operator+(const E7AlgElem& a, const E7AlgElem& b);
  friend E7AlgElem operator*(const CycNum& s, const E7AlgElem& a);
  friend bool operator==(const E7AlgElem& a, const E7AlgElem& b) {
    return a.phi == b.phi && a.A == b.A && a.B == b.B && a.nu == b.nu;
  }
};

using FOperator = SemilinearOp;

FVector phi_apply(const E7AlgElem& e, const FVector& p);
// 56x56 matrix of Phi(phi, A, B, nu)
ExactMatrix e7_operator(const E7AlgElem& e);
// recovers (phi, A, B, nu) from a 56x56 operator; nullopt unless the operator
// is exactly of that form with phi a derivation of the trilinear form
std::optional<E7AlgElem> e7_params(const ExactMatrix& m);
// (phi X, Y, Z) + (X, phi Y, Z) + (X, Y, phi Z) = 0 on all basis triples
bool is_e6_derivation(const ExactMatrix& phi);

// (X v W) U = 1/2 (W, U) X + 1/6 (X, W) U - 2 W x (X x U)
JordanOp vee(const JordanElem& x, const JordanElem& w);
SparseVec vee_apply(const SparseVec& x, const SparseVec& w, const SparseVec& u);
E7AlgElem cross_pq(const FVector& p, const FVector& q);
// (P x Q) R on coordinate vectors without materializing P x Q
SparseVec cross_pq_apply(const SparseVec& p, const SparseVec& q, const SparseVec& r);
// Hermitian form <P, Q> = <X, Z> + <Y, W> + conj(xi) zeta + conj(eta) omega
CycNum hermitian(const SparseVec& p, const SparseVec& q);

FVector apply(const FOperator& l, const FVector& p);
// (X, Y, xi, eta) -> (a X, ta^{-1} Y, xi, eta) for linear a in E6
FOperator lift_e6(const JordanOp& a);
// throws std::invalid_argument unless theta is a root of unity
FOperator phi_theta(const CycNum& theta);

struct E7Violation {
  int p = -1, q = -1, r = -1;
};
// sample = 0 checks every unordered basis pair; otherwise `sample` pairs drawn
// from a generator seeded with `seed`
bool is_e7_group_elem(const FOperator& l, int sample = 0, unsigned long long seed = 0,
                      E7Violation* violation = nullptr);

// lambda, iota, gamma, sigma, sigma_prime, gamma_H, gamma_C, delta1..delta4, delta_lambda,
// delta_iota, delta10, tau, and phi_k for phi(zeta24^k)
FOperator named_f_map(const std::string& name);

}  // namespace excv
