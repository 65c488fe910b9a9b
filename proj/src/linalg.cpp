#include "excverify/linalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace excv {

SparseVec sv_from_dense(const DenseVec& v) {
  SparseVec r;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

DenseVec sv_to_dense(const SparseVec& v, int n) {
  DenseVec r(n);
  for (const auto& [i, c] : v) r.at(i) = c;
  return r;
}

SparseVec sv_unit(int i, const CycNum& c) {
  if (c.is_zero()) return {};
  return {{i, c}};
}

SparseVec sv_axpy(const SparseVec& a, const CycNum& s, const SparseVec& b) {
  if (s.is_zero() || b.empty()) return a;
  SparseVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      CycNum c = a[i].second + s * b[j].second;
      if (!c.is_zero()) r.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, CycNum(1), b); }
SparseVec sv_sub(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, CycNum(-1), b); }

SparseVec sv_scale(const SparseVec& a, const CycNum& s) {
  if (s.is_zero()) return {};
  SparseVec r = a;
  if (s.is_one()) return r;
  for (auto& e : r) e.second = e.second * s;
  return r;
}

SparseVec sv_conj(const SparseVec& a) {
  SparseVec r = a;
  for (auto& e : r) e.second = e.second.conj();
  return r;
}

CycNum sv_get(const SparseVec& a, int i) {
  auto it = std::lower_bound(a.begin(), a.end(), i, [](const auto& e, int k) { return e.first < k; });
  if (it != a.end() && it->first == i) return it->second;
  return CycNum();
}

CycNum sv_dot(const SparseVec& a, const SparseVec& b) {
  CycNum s;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else {
      s += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

bool sv_is_real(const SparseVec& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& e) { return e.second.is_real(); });
}

void Accumulator::add(int i, const CycNum& c) {
  if (c.is_zero()) return;
  if (!hit_[i]) {
    hit_[i] = 1;
    touched_.push_back(i);
    val_[i] = c;
  } else {
    val_[i] += c;
  }
}

void Accumulator::axpy(const CycNum& s, const SparseVec& v) {
  if (s.is_zero()) return;
  if (s.is_one()) {
    for (const auto& [i, c] : v) add(i, c);
  } else {
    for (const auto& [i, c] : v) add(i, s * c);
  }
}

SparseVec Accumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec r;
  r.reserve(touched_.size());
  for (int i : touched_) {
    if (!val_[i].is_zero()) r.emplace_back(i, std::move(val_[i]));
    val_[i] = CycNum();
    hit_[i] = 0;
  }
  touched_.clear();
  return r;
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i] = sv_unit(i);
  return m;
}

ExactMatrix ExactMatrix::from_rows(int cols, std::vector<SparseVec> rows) {
  ExactMatrix m(static_cast<int>(rows.size()), cols);
  m.data_ = std::move(rows);
  return m;
}

ExactMatrix ExactMatrix::from_columns(int rows, const std::vector<SparseVec>& cols) {
  ExactMatrix m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (const auto& [r, v] : cols[c]) m.data_[r].emplace_back(c, v);
  return m;
}

void ExactMatrix::set(int r, int c, const CycNum& v) {
  auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    if (v.is_zero()) row.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void ExactMatrix::add_to(int r, int c, const CycNum& v) { set(r, c, get(r, c) + v); }

SparseVec ExactMatrix::column(int c) const {
  SparseVec r;
  for (int i = 0; i < rows_; ++i) {
    CycNum v = get(i, c);
    if (!v.is_zero()) r.emplace_back(i, v);
  }
  return r;
}

std::size_t ExactMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

SparseVec ExactMatrix::apply(const SparseVec& v) const {
  SparseVec r;
  for (int i = 0; i < rows_; ++i) {
    CycNum s = sv_dot(data_[i], v);
    if (!s.is_zero()) r.emplace_back(i, std::move(s));
  }
  return r;
}

DenseVec ExactMatrix::apply(const DenseVec& v) const {
  DenseVec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, a] : data_[i])
      if (!v[c].is_zero()) r[i] += a * v[c];
  return r;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, a] : data_[i]) t.data_[c].emplace_back(i, a);
  return t;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix t = *this;
  for (auto& r : t.data_) r = sv_conj(r);
  return t;
}

ExactMatrix ExactMatrix::scaled(const CycNum& s) const {
  ExactMatrix t = *this;
  for (auto& r : t.data_) r = sv_scale(r, s);
  return t;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
}

bool ExactMatrix::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return sv_is_real(r); });
}

CycNum ExactMatrix::trace() const {
  CycNum t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += get(i, i);
  return t;
}

SparseVec ExactMatrix::flatten() const {
  SparseVec r;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, a] : data_[i]) r.emplace_back(i * cols_ + c, a);
  return r;
}

ExactMatrix ExactMatrix::unflatten(int rows, int cols, const SparseVec& v) {
  ExactMatrix m(rows, cols);
  for (const auto& [k, a] : v) m.data_.at(k / cols).emplace_back(k % cols, a);
  return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  ExactMatrix r(a.rows_, b.cols_);
  Accumulator acc(b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (const auto& [k, v] : a.data_[i]) acc.axpy(v, b.data_[k]);
    r.data_[i] = acc.take();
  }
  return r;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
  ExactMatrix r(a.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i) r.data_[i] = sv_add(a.data_[i], b.data_[i]);
  return r;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return a + b.scaled(CycNum(-1)); }

CycNum trace_of_product(const ExactMatrix& a, const ExactMatrix& b) {
  CycNum t;
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [k, v] : a.row(i)) {
      CycNum w = b.get(k, i);
      if (!w.is_zero()) t += v * w;
    }
  return t;
}

namespace {

Accumulator& scratch(int n) {
  thread_local std::unordered_map<int, Accumulator> pool;
  auto it = pool.find(n);
  if (it == pool.end()) it = pool.emplace(n, Accumulator(n)).first;
  return it->second;
}

int bucket(int n) {
  int b = 64;
  while (b < n) b *= 2;
  return b;
}

}  // namespace

RowReducer::RowReducer(int ncols, bool track) : ncols_(ncols), track_(track), pivot_row_(ncols, -1) {}

SparseVec RowReducer::reduce(const SparseVec& v) const {
  bool any = false;
  for (const auto& [i, c] : v) any = any || pivot_row_[i] >= 0;
  if (!any) return v;
  Accumulator& acc = scratch(ncols_);
  for (const auto& [i, c] : v) {
    acc.add(i, c);
    int p = pivot_row_[i];
    if (p >= 0) acc.axpy(-c, rows_[p]);
  }
  return acc.take();
}

std::optional<SparseVec> RowReducer::solve(const SparseVec& v) const {
  if (!track_) throw std::logic_error("RowReducer::solve needs tracking");
  if (!reduce(v).empty()) return std::nullopt;
  Accumulator& acc = scratch(bucket(inputs_));
  for (const auto& [i, c] : v) {
    int p = pivot_row_[i];
    if (p >= 0) acc.axpy(c, combos_[p]);
  }
  return acc.take();
}

namespace {

bool better_pivot(const CycNum& a, int ia, const CycNum& b, int ib) {
  bool ma = a.is_rational(), mb = b.is_rational();
  if (ma != mb) return ma;
  ma = a.is_monomial();
  mb = b.is_monomial();
  if (ma != mb) return ma;
  auto ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return ia < ib;
}

}  // namespace

bool RowReducer::add(const SparseVec& v) {
  SparseVec r = reduce(v);
  int input = inputs_++;
  if (r.empty()) return false;
  SparseVec combo;
  if (track_) {
    Accumulator& acc = scratch(bucket(inputs_));
    acc.add(input, CycNum(1));
    for (const auto& [i, c] : v) {
      int p = pivot_row_[i];
      if (p >= 0) acc.axpy(-c, combos_[p]);
    }
    combo = acc.take();
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < r.size(); ++k)
    if (better_pivot(r[k].second, r[k].first, r[best].second, r[best].first)) best = k;
  int q = r[best].first;
  CycNum s = r[best].second.inv();
  r = sv_scale(r, s);
  if (track_) combo = sv_scale(combo, s);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    CycNum f = sv_get(rows_[i], q);
    if (f.is_zero()) continue;
    rows_[i] = sv_axpy(rows_[i], -f, r);
    if (track_) combos_[i] = sv_axpy(combos_[i], -f, combo);
  }
  pivot_row_[q] = static_cast<int>(rows_.size());
  pivots_.push_back(q);
  rows_.push_back(std::move(r));
  if (track_) combos_.push_back(std::move(combo));
  return true;
}

std::vector<SparseVec> RowReducer::nullspace() const {
  std::vector<SparseVec> out(ncols_);
  for (std::size_t p = 0; p < rows_.size(); ++p) {
    int pc = pivots_[p];
    for (const auto& [c, v] : rows_[p])
      if (c != pc) out[c].emplace_back(pc, -v);
  }
  std::vector<SparseVec> basis;
  for (int c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] >= 0) continue;
    SparseVec x = std::move(out[c]);
    x.emplace_back(c, CycNum(1));
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(x));
  }
  return basis;
}

FreeBasis RowReducer::free_basis() const {
  FreeBasis b;
  b.ambient = ncols_;
  b.vectors = nullspace();
  for (int c = 0; c < ncols_; ++c)
    if (pivot_row_[c] < 0) b.free.push_back(c);
  return b;
}

SparseVec FreeBasis::coords(const SparseVec& v) const {
  SparseVec out;
  auto it = v.begin();
  for (int k = 0; k < dim(); ++k) {
    while (it != v.end() && it->first < free[k]) ++it;
    if (it == v.end()) break;
    if (it->first == free[k]) out.emplace_back(k, it->second);
  }
  return out;
}

SparseVec FreeBasis::combine(const SparseVec& coeffs) const {
  Accumulator acc(ambient);
  for (const auto& [k, c] : coeffs) acc.axpy(c, vectors[k]);
  return acc.take();
}

std::optional<SparseVec> FreeBasis::express(const SparseVec& v) const {
  SparseVec c = coords(v);
  if (combine(c) != v) return std::nullopt;
  return c;
}

std::vector<SparseVec> nullspace(const ExactMatrix& m) {
  RowReducer r(m.cols());
  for (int i = 0; i < m.rows(); ++i) r.add(m.row(i));
  return r.nullspace();
}

int rank(const ExactMatrix& m) {
  RowReducer r(m.cols());
  for (int i = 0; i < m.rows(); ++i) r.add(m.row(i));
  return r.rank();
}

int rank(const std::vector<SparseVec>& vecs, int n) {
  RowReducer r(n);
  for (const auto& v : vecs) r.add(v);
  return r.rank();
}

SpanSolver::SpanSolver(const std::vector<SparseVec>& basis, int n) : red_(n, true) {
  for (const auto& b : basis)
    if (!red_.add(b)) throw DependentBasis();
}

std::optional<SparseVec> express_in_span(const SparseVec& v, const std::vector<SparseVec>& basis, int n) {
  SpanSolver s(basis, n);
  return s.express(v);
}

CycNum re_part(const CycNum& z) { return (z + z.conj()) * CycNum(1, 2); }

CycNum im_part(const CycNum& z) { return (z - z.conj()) * (CycNum::imag_unit() * CycNum(-1, 2)); }

std::vector<SparseVec> real_nullspace(const std::vector<SparseVec>& rows, int ncols) {
  return real_null_basis(rows, ncols).vectors;
}

FreeBasis real_null_basis(const std::vector<SparseVec>& rows, int ncols) {
  RowReducer red(ncols);
  for (const auto& row : rows) {
    SparseVec re, im;
    for (const auto& [i, c] : row) {
      if (c.is_real()) {
        re.emplace_back(i, c);
        continue;
      }
      CycNum a = re_part(c), b = im_part(c);
      if (!a.is_zero()) re.emplace_back(i, a);
      if (!b.is_zero()) im.emplace_back(i, b);
    }
    if (!re.empty()) red.add(re);
    if (!im.empty()) red.add(im);
  }
  return red.free_basis();
}

ExactMatrix inverse_matrix(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  int n = m.rows();
  RowReducer red(n, true);
  for (int i = 0; i < n; ++i) red.add(m.row(i));
  if (red.rank() != n) throw std::domain_error("singular operator");
  std::vector<SparseVec> rows(n);
  for (int j = 0; j < n; ++j) rows[j] = *red.solve(sv_unit(j));
  return ExactMatrix::from_rows(n, std::move(rows));
}

DenseVec SemilinearOp::apply(const DenseVec& v) const {
  if (!conj_) return m_.apply(v);
  DenseVec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
  return m_.apply(c);
}

SemilinearOp SemilinearOp::inverse() const {
  ExactMatrix inv = inverse_matrix(m_);
  return SemilinearOp(conj_ ? inv.conj() : inv, conj_);
}

bool SemilinearOp::invertible() const { return rank(m_) == dim(); }

SemilinearOp SemilinearOp::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  SemilinearOp r = identity(dim());
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

SemilinearOp operator*(const SemilinearOp& a, const SemilinearOp& b) {
  return SemilinearOp(a.m_ * (a.conj_ ? b.m_.conj() : b.m_), a.conj_ != b.conj_);
}

}  // namespace excv
