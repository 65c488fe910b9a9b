#pragma once

#include <random>
#include <string>
#include <vector>

#include "excverify/freudenthal.hpp"

namespace excv {

inline constexpr int kE7Dim = 133;
inline constexpr int kE8Dim = 248;

// coordinates: Phi at 0..132 (e6^C coordinates 0..77, A 78..104, B 105..131,
// nu 132), P at 133..188, Q at 189..244, r 245, s 246, t 247
struct E8Elem {
  E7AlgElem Phi;
  FVector P, Q;
  CycNum r, s, t;

  SparseVec to_coords() const;
  static E8Elem from_coords(const SparseVec& v);
  friend bool operator==(const E8Elem& a, const E8Elem& b) {
    return a.Phi == b.Phi && a.P == b.P && a.Q == b.Q && a.r == b.r && a.s == b.s && a.t == b.t;
  }
};

namespace e8slot {
inline constexpr int kP = kE7Dim, kQ = kE7Dim + kFDim, kR = kE7Dim + 2 * kFDim, kS = kR + 1, kT = kR + 2;
}

// {P, Q} = (X, W) - (Y, Z) + xi omega - eta zeta
CycNum sympl(const FVector& p, const FVector& q);
CycNum sympl(const SparseVec& p, const SparseVec& q);

// Which output slot receives the row built from Phi1 P2 - Phi2 P1 + ...
// by_input: the P slot (adopted); as_displayed: the Q slot, as the rows are
// labelled in the printed formula.
enum class BracketRows { by_input, as_displayed };

SparseVec bracket(const SparseVec& a, const SparseVec& b, BracketRows rows = BracketRows::by_input);
E8Elem bracket(const E8Elem& a, const E8Elem& b);
bool jacobi_check(const SparseVec& a, const SparseVec& b, const SparseVec& c,
                  BracketRows rows = BracketRows::by_input);

using E8Operator = SemilinearOp;

// (Phi, P, Q, r, s, t) -> (a Phi a^{-1}, a P, a Q, r, s, t)
E8Operator lift_e7(const FOperator& a);
// tau, lambda_omega, upsilon, iota_omega, upsilon_iota_omega, sigma,
// sigma_prime, gamma, delta_upsilon
E8Operator named_e8_map(const std::string& name);

struct E8Violation {
  SparseVec a, b;
};
// checks L[R1, R2] = [L R1, L R2] on all pairs from a generating set (the
// r, s, t slots, 10 random P/Q-slot vectors, 10 random Phi-slot elements)
// plus `sample` random pairs
bool is_e8_automorphism(const E8Operator& l, int sample = 500, unsigned long long seed = 0,
                        E8Violation* violation = nullptr);

// sparse random element supported on `terms` coordinates inside [lo, hi)
SparseVec random_e8_coords(std::mt19937_64& rng, int lo, int hi, int terms);

}  // namespace excv
