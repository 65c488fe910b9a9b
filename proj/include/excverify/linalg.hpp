#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "excverify/cycnum.hpp"

namespace excv {

// sorted by index, no stored zeros
using SparseVec = std::vector<std::pair<int, CycNum>>;
using DenseVec = std::vector<CycNum>;

SparseVec sv_from_dense(const DenseVec& v);
DenseVec sv_to_dense(const SparseVec& v, int n);
SparseVec sv_unit(int i, const CycNum& c = CycNum(1));
// a + s*b
SparseVec sv_axpy(const SparseVec& a, const CycNum& s, const SparseVec& b);
SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_sub(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(const SparseVec& a, const CycNum& s);
SparseVec sv_conj(const SparseVec& a);
CycNum sv_get(const SparseVec& a, int i);
CycNum sv_dot(const SparseVec& a, const SparseVec& b);
bool sv_is_real(const SparseVec& a);

// accumulates sums of sparse vectors into a dense buffer
class Accumulator {
 public:
  explicit Accumulator(int n) : val_(n), hit_(n, 0) {}
  void add(int i, const CycNum& c);
  void axpy(const CycNum& s, const SparseVec& v);
  // returns the sparse contents and resets the buffer
  SparseVec take();
  int size() const { return static_cast<int>(val_.size()); }

 private:
  std::vector<CycNum> val_;
  std::vector<char> hit_;
  std::vector<int> touched_;
};

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}
  static ExactMatrix identity(int n);
  static ExactMatrix from_rows(int cols, std::vector<SparseVec> rows);
  static ExactMatrix from_columns(int rows, const std::vector<SparseVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CycNum get(int r, int c) const { return sv_get(data_[r], c); }
  void set(int r, int c, const CycNum& v);
  void add_to(int r, int c, const CycNum& v);
  const SparseVec& row(int r) const { return data_[r]; }
  SparseVec column(int c) const;
  std::size_t nnz() const;

  SparseVec apply(const SparseVec& v) const;
  DenseVec apply(const DenseVec& v) const;
  ExactMatrix transpose() const;
  ExactMatrix conj() const;
  ExactMatrix scaled(const CycNum& s) const;
  bool is_zero() const;
  bool is_real() const;
  CycNum trace() const;
  // row-major flattening, index r*cols + c
  SparseVec flatten() const;
  static ExactMatrix unflatten(int rows, int cols, const SparseVec& v);

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
};

CycNum trace_of_product(const ExactMatrix& a, const ExactMatrix& b);

struct FreeBasis;

// Incremental Gauss-Jordan elimination.  Stored rows are kept fully reduced
// with unit pivots, so reducing a new vector is a single pass over its pivot
// entries.  Optionally tracks each stored row as a combination of the inputs.
class RowReducer {
 public:
  explicit RowReducer(int ncols, bool track = false);
  // returns true if v was independent of the rows added so far
  bool add(const SparseVec& v);
  SparseVec reduce(const SparseVec& v) const;
  bool in_span(const SparseVec& v) const { return reduce(v).empty(); }
  // coefficients of v over the added inputs (track mode); nullopt if not in span
  std::optional<SparseVec> solve(const SparseVec& v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  int inputs() const { return inputs_; }
  // basis of {x : r.x = 0 for all added rows r}
  std::vector<SparseVec> nullspace() const;
  // the nullspace basis together with its free columns
  FreeBasis free_basis() const;
  const std::vector<int>& pivot_columns() const { return pivots_; }

 private:
  int ncols_;
  bool track_;
  int inputs_ = 0;
  std::vector<int> pivot_row_;  // per column, -1 if free
  std::vector<int> pivots_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> combos_;
};

// Basis of a subspace in reduced form: vectors[k] has a 1 at free[k] and a 0
// at every other free column, so coordinates are read off directly.
struct FreeBasis {
  int ambient = 0;
  std::vector<SparseVec> vectors;
  std::vector<int> free;

  int dim() const { return static_cast<int>(vectors.size()); }
  SparseVec coords(const SparseVec& v) const;
  SparseVec combine(const SparseVec& coeffs) const;
  // coords(v) if v lies in the span, else nullopt
  std::optional<SparseVec> express(const SparseVec& v) const;
};

std::vector<SparseVec> nullspace(const ExactMatrix& m);
int rank(const ExactMatrix& m);
int rank(const std::vector<SparseVec>& vecs, int n);

struct DependentBasis : std::invalid_argument {
  DependentBasis() : std::invalid_argument("basis vectors are linearly dependent") {}
};

// Precomputed solver for repeated express_in_span queries.
class SpanSolver {
 public:
  SpanSolver() : red_(0, true) {}
  SpanSolver(const std::vector<SparseVec>& basis, int n);
  std::optional<SparseVec> express(const SparseVec& v) const { return red_.solve(v); }
  int dim() const { return red_.rank(); }
  int ambient() const { return red_.ncols(); }

 private:
  RowReducer red_;
};

std::optional<SparseVec> express_in_span(const SparseVec& v, const std::vector<SparseVec>& basis, int n);

// real solutions x of a system whose rows may have non-real entries:
// stacks the real and imaginary parts of every row
std::vector<SparseVec> real_nullspace(const std::vector<SparseVec>& rows, int ncols);
FreeBasis real_null_basis(const std::vector<SparseVec>& rows, int ncols);
CycNum re_part(const CycNum& z);
CycNum im_part(const CycNum& z);

// x -> A x (conj = false) or x -> A conj(x) (conj = true)
class SemilinearOp {
 public:
  SemilinearOp() = default;
  explicit SemilinearOp(ExactMatrix m, bool conj = false) : m_(std::move(m)), conj_(conj) {}
  static SemilinearOp identity(int n) { return SemilinearOp(ExactMatrix::identity(n)); }
  static SemilinearOp conjugation(int n) { return SemilinearOp(ExactMatrix::identity(n), true); }

  int dim() const { return m_.rows(); }
  const ExactMatrix& matrix() const { return m_; }
  bool conjugates_scalars() const { return conj_; }

  SparseVec apply(const SparseVec& v) const { return m_.apply(conj_ ? sv_conj(v) : v); }
  DenseVec apply(const DenseVec& v) const;
  SemilinearOp inverse() const;  // throws std::domain_error if singular
  bool invertible() const;
  SemilinearOp operator-() const { return SemilinearOp(m_.scaled(CycNum(-1)), conj_); }
  SemilinearOp scaled(const CycNum& s) const { return SemilinearOp(m_.scaled(s), conj_); }
  SemilinearOp pow(int k) const;
  bool is_identity() const { return !conj_ && m_ == ExactMatrix::identity(dim()); }

  friend SemilinearOp operator*(const SemilinearOp& a, const SemilinearOp& b);
  friend bool operator==(const SemilinearOp& a, const SemilinearOp& b) {
    return a.conj_ == b.conj_ && a.m_ == b.m_;
  }
  friend bool operator!=(const SemilinearOp& a, const SemilinearOp& b) { return !(a == b); }

 private:
  ExactMatrix m_;
  bool conj_ = false;
};

ExactMatrix inverse_matrix(const ExactMatrix& m);

}  // namespace excv
