#pragma once

#include <optional>
#include <string>
#include <vector>

#include "excverify/e8.hpp"

namespace excv {

enum class AlgebraId { g2, f4, e6, e7, e8 };

std::string algebra_name(AlgebraId id);
std::optional<AlgebraId> parse_algebra(const std::string& s);
// 14, 52, 78, 133, 248
int algebra_dim(AlgebraId id);

// Complexified algebras in canonical coordinates.
//   g2^C, f4^C: derivations of the octonion / Jordan product
//   e6^C: derivations of the trilinear form (phi X, Y, Z) + ... = 0
//   e7^C: (e6^C coordinates, A, B, nu)
//   e8^C: (e7^C, P, Q, r, s, t)
// For g2, f4, e6 the coordinates are read off a reduced basis of flattened
// n x n matrices (row-major).
const FreeBasis& derivation_basis(AlgebraId id);
int rep_dim(AlgebraId id);  // 8, 27, 27, 56, 248

ExactMatrix coords_to_matrix(AlgebraId id, const SparseVec& x);
// nullopt if m is not in the algebra
std::optional<SparseVec> matrix_to_coords(AlgebraId id, const ExactMatrix& m);

ExactMatrix e7c_operator(const SparseVec& x);
std::optional<SparseVec> e7c_coords(const ExactMatrix& m);
SparseVec e7c_from_params(const E7AlgElem& e);
E7AlgElem e7c_params(const SparseVec& x);
std::optional<SparseVec> e6c_coords(const ExactMatrix& phi);

SparseVec coord_bracket(AlgebraId id, const SparseVec& a, const SparseVec& b);
// induced action of a (semilinear) map: conjugation x -> op x op^{-1} on
// g2 .. e7, application on e8; throws std::domain_error if the image leaves
// the algebra
SparseVec coord_act(AlgebraId id, const SemilinearOp& op, const SparseVec& x);

// the conjugate-linear involution whose fixed points form the compact real
// form: complex conjugation on g2, f4; X -> -X^dagger on e6, e7 (adjoint for
// the Hermitian forms); tau lambda_omega on e8
SemilinearOp compact_conjugation(AlgebraId id);

// named maps on the defining space of each algebra, composed with '*' and an
// optional leading '-', e.g. "lambda*gamma", "-sigma", "iota*gamma_C"
SemilinearOp resolve_map(AlgebraId id, const std::string& expr);

struct LieBasis {
  AlgebraId id = AlgebraId::g2;
  // basis of the compact form in complex coordinates
  std::vector<SparseVec> vectors;
  // free columns of the basis in the (real part, imaginary part) splitting
  std::vector<int> free;
  // [b_i, b_j] in basis coordinates for i < j, stored at i * dim + j
  std::vector<SparseVec> table;

  int dim() const { return static_cast<int>(vectors.size()); }
  int coord_dim() const { return algebra_dim(id); }
  // real coefficients of x, nullopt if x is not in the real span
  std::optional<SparseVec> express(const SparseVec& x) const;
  SparseVec combine(const SparseVec& coeffs) const;
  bool has_table() const { return !table.empty(); }
  // structure constants; requires the table
  SparseVec bracket(const SparseVec& u, const SparseVec& v) const;
};

// throws std::runtime_error on a dimension mismatch or if the bracket table
// does not close
LieBasis compute_basis(AlgebraId id, bool with_table = true);
// recomputes and checks closure of a table loaded from elsewhere
bool verify_table(const LieBasis& b);

struct InvolutionAction {
  std::string source;
  ExactMatrix matrix;
  bool involutive = false;
};

// throws std::domain_error("map does not normalize algebra")
InvolutionAction act_in_basis(const LieBasis& b, const std::string& source, const SemilinearOp& op);
bool pair_commutes_ad(const InvolutionAction& a, const InvolutionAction& b);

struct SubalgebraReport {
  int dim = 0;
  int center_dim = -1;
  int derived_dim = -1;
  // own trace form negative definite on the derived algebra and
  // center + derived = whole; only evaluated up to kKillingMaxDim
  std::optional<bool> killing_negdef;
  // basis in LieBasis coordinates
  std::vector<SparseVec> basis;
};

inline constexpr int kKillingMaxDim = 80;

// joint +1 eigenspace; requires involutive actions
SubalgebraReport fixed_subalgebra(const LieBasis& b, const std::vector<InvolutionAction>& acts);
// simultaneous eigenspace with the given signs (+1 / -1) per action
std::vector<SparseVec> joint_eigenspace(const LieBasis& b, const std::vector<InvolutionAction>& acts,
                                        const std::vector<int>& signs);
// real solutions c of sum_j c_j rows(b_j) = 0 where `images[j]` is a complex
// vector attached to basis vector j (e.g. b_j applied to a fixed element)
std::vector<SparseVec> annihilator(const LieBasis& b, const std::vector<SparseVec>& images, int n);
// intersection of the spans of two subspaces of the basis coordinates
std::vector<SparseVec> intersect(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int n);
// fills center_dim, derived_dim, killing_negdef; checks closure
SubalgebraReport subalgebra_invariants(const LieBasis& b, std::vector<SparseVec> basis);

}  // namespace excv
