#include "excverify/jordan.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace excv {

namespace {

using OMat = std::array<std::array<Octonion, 3>, 3>;

OMat to_matrix(const JordanElem& a) {
  OMat m;
  for (int k = 0; k < 3; ++k) m[k][k] = Octonion::basis(0, a.xi[k]);
  m[1][2] = a.x[0];
  m[2][1] = oct_conj(a.x[0]);
  m[2][0] = a.x[1];
  m[0][2] = oct_conj(a.x[1]);
  m[0][1] = a.x[2];
  m[1][0] = oct_conj(a.x[2]);
  return m;
}

JordanElem from_matrix(const OMat& m) {
  JordanElem r;
  for (int k = 0; k < 3; ++k) r.xi[k] = m[k][k].c[0];
  r.x[0] = m[1][2];
  r.x[1] = m[2][0];
  r.x[2] = m[0][1];
  return r;
}

OMat mat_mul(const OMat& a, const OMat& b) {
  OMat r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] = r[i][j] + oct_mul(a[i][k], b[k][j]);
  return r;
}

JordanElem direct_mul(const JordanElem& a, const JordanElem& b) {
  OMat p = mat_mul(to_matrix(a), to_matrix(b)), q = mat_mul(to_matrix(b), to_matrix(a));
  OMat s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = CycNum(1, 2) * (p[i][j] + q[i][j]);
  return from_matrix(s);
}

JordanElem direct_cross(const JordanElem& a, const JordanElem& b) {
  CycNum ta = a.trace(), tb = b.trace();
  CycNum ab = direct_mul(a, b).trace();
  JordanElem r = CycNum(2) * direct_mul(a, b) - ta * b - tb * a + (ta * tb - ab) * JordanElem::E();
  return CycNum(1, 2) * r;
}

using Table = std::vector<std::vector<SparseVec>>;

Table build_table(const std::function<JordanElem(const JordanElem&, const JordanElem&)>& f) {
  Table t(kJordanDim, std::vector<SparseVec>(kJordanDim));
  for (int i = 0; i < kJordanDim; ++i)
    for (int j = i; j < kJordanDim; ++j) {
      t[i][j] = f(JordanElem::basis(i), JordanElem::basis(j)).to_sparse();
      t[j][i] = t[i][j];
    }
  return t;
}

const Table& mul_table() {
  static const Table t = build_table(direct_mul);
  return t;
}

const Table& cross_tab() {
  static const Table t = build_table(direct_cross);
  return t;
}

SparseVec bilinear(const Table& t, const SparseVec& a, const SparseVec& b) {
  Accumulator acc(kJordanDim);
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) acc.axpy(x * y, t[i][j]);
  return acc.take();
}

JordanOp diagonal_op(const std::array<CycNum, 3>& xi, const std::array<CycNum, 3>& x) {
  ExactMatrix m(kJordanDim, kJordanDim);
  for (int k = 0; k < 3; ++k) {
    m.set(k, k, xi[k]);
    for (int i = 0; i < 8; ++i) m.set(jordan_index(k + 1, i), jordan_index(k + 1, i), x[k]);
  }
  return JordanOp(m);
}

// columns are images of the basis under f
JordanOp op_from_fn(const std::function<JordanElem(const JordanElem&)>& f) {
  std::vector<SparseVec> cols;
  for (int i = 0; i < kJordanDim; ++i) cols.push_back(f(JordanElem::basis(i)).to_sparse());
  return JordanOp(ExactMatrix::from_columns(kJordanDim, cols));
}

Octonion lmul(int k, const Octonion& x) { return oct_mul(Octonion::basis(k), x); }
Octonion rmul(const Octonion& x, int k) { return oct_mul(x, Octonion::basis(k)); }

}  // namespace

JordanElem JordanElem::E() {
  JordanElem r;
  r.xi = {CycNum(1), CycNum(1), CycNum(1)};
  return r;
}

JordanElem JordanElem::E(int k) {
  JordanElem r;
  r.xi.at(k - 1) = CycNum(1);
  return r;
}

JordanElem JordanElem::F(int k, const Octonion& o) {
  JordanElem r;
  r.x.at(k - 1) = o;
  return r;
}

JordanElem JordanElem::basis(int idx) {
  if (idx < 0 || idx >= kJordanDim) throw std::out_of_range("Jordan basis index");
  if (idx < 3) return E(idx + 1);
  return F((idx - 3) / 8 + 1, Octonion::basis((idx - 3) % 8));
}

bool JordanElem::is_real() const {
  for (const auto& v : xi)
    if (!v.is_real()) return false;
  for (const auto& o : x)
    if (!o.is_real()) return false;
  return true;
}

bool JordanElem::is_zero() const {
  for (const auto& v : xi)
    if (!v.is_zero()) return false;
  for (const auto& o : x)
    if (!o.is_zero()) return false;
  return true;
}

SparseVec JordanElem::to_sparse(int offset) const {
  SparseVec v;
  for (int k = 0; k < 3; ++k)
    if (!xi[k].is_zero()) v.emplace_back(offset + k, xi[k]);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 8; ++i)
      if (!x[k].c[i].is_zero()) v.emplace_back(offset + jordan_index(k + 1, i), x[k].c[i]);
  return v;
}

JordanElem JordanElem::from_sparse(const SparseVec& v, int offset) {
  JordanElem r;
  for (const auto& [idx, c] : v) {
    int j = idx - offset;
    if (j < 0 || j >= kJordanDim) continue;
    if (j < 3) r.xi[j] = c;
    else r.x[(j - 3) / 8].c[(j - 3) % 8] = c;
  }
  return r;
}

JordanElem operator+(const JordanElem& a, const JordanElem& b) {
  JordanElem r;
  for (int k = 0; k < 3; ++k) {
    r.xi[k] = a.xi[k] + b.xi[k];
    r.x[k] = a.x[k] + b.x[k];
  }
  return r;
}

JordanElem operator-(const JordanElem& a, const JordanElem& b) {
  JordanElem r;
  for (int k = 0; k < 3; ++k) {
    r.xi[k] = a.xi[k] - b.xi[k];
    r.x[k] = a.x[k] - b.x[k];
  }
  return r;
}

JordanElem operator-(const JordanElem& a) {
  JordanElem r;
  for (int k = 0; k < 3; ++k) {
    r.xi[k] = -a.xi[k];
    r.x[k] = -a.x[k];
  }
  return r;
}

JordanElem operator*(const CycNum& s, const JordanElem& a) {
  JordanElem r;
  for (int k = 0; k < 3; ++k) {
    r.xi[k] = s * a.xi[k];
    r.x[k] = s * a.x[k];
  }
  return r;
}

int jordan_gram(int idx) { return idx < 3 ? 1 : 2; }

const SparseVec& jordan_mul_table(int i, int j) { return mul_table()[i][j]; }
const SparseVec& cross_table(int i, int j) { return cross_tab()[i][j]; }

SparseVec jordan_mul(const SparseVec& a, const SparseVec& b) { return bilinear(mul_table(), a, b); }
SparseVec cross(const SparseVec& a, const SparseVec& b) { return bilinear(cross_tab(), a, b); }

CycNum jordan_inner(const SparseVec& a, const SparseVec& b) {
  CycNum s;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else {
      CycNum p = ia->second * ib->second;
      s += jordan_gram(ia->first) == 1 ? p : p + p;
      ++ia;
      ++ib;
    }
  }
  return s;
}

JordanElem jordan_mul(const JordanElem& a, const JordanElem& b) {
  return JordanElem::from_sparse(jordan_mul(a.to_sparse(), b.to_sparse()));
}

JordanElem cross(const JordanElem& a, const JordanElem& b) {
  return JordanElem::from_sparse(cross(a.to_sparse(), b.to_sparse()));
}

CycNum jordan_inner(const JordanElem& a, const JordanElem& b) {
  return jordan_inner(a.to_sparse(), b.to_sparse());
}

CycNum trilinear(const JordanElem& a, const JordanElem& b, const JordanElem& c) {
  return jordan_inner(a.to_sparse(), cross(b.to_sparse(), c.to_sparse()));
}

CycNum det(const JordanElem& a) { return CycNum(1, 3) * trilinear(a, a, a); }

JordanElem apply(const JordanOp& l, const JordanElem& x) {
  return JordanElem::from_sparse(l.apply(x.to_sparse()));
}

JordanOp lift_oct_map(const OctOperator& l) {
  ExactMatrix m(kJordanDim, kJordanDim);
  for (int k = 0; k < 3; ++k) m.set(k, k, CycNum(1));
  for (int k = 1; k <= 3; ++k)
    for (int r = 0; r < 8; ++r)
      for (const auto& [c, v] : l.matrix().row(r)) m.set(jordan_index(k, r), jordan_index(k, c), v);
  return JordanOp(m, l.conjugates_scalars());
}

JordanOp transpose_op(const JordanOp& l) {
  if (l.conjugates_scalars()) throw std::invalid_argument("transpose of a conjugate-linear map");
  ExactMatrix t(kJordanDim, kJordanDim);
  for (int r = 0; r < kJordanDim; ++r)
    for (const auto& [c, v] : l.matrix().row(r))
      t.set(c, r, v * CycNum(jordan_gram(r), jordan_gram(c)));
  return JordanOp(t);
}

JordanOp tilde(const JordanElem& t) {
  SparseVec ts = t.to_sparse();
  std::vector<SparseVec> cols;
  for (int i = 0; i < kJordanDim; ++i) cols.push_back(jordan_mul(ts, sv_unit(i)));
  return JordanOp(ExactMatrix::from_columns(kJordanDim, cols));
}

JordanOp phi1(const CycNum& theta) {
  CycNum ti = theta.inv();
  CycNum t2 = theta * theta, ti2 = ti * ti;
  ExactMatrix m(kJordanDim, kJordanDim);
  m.set(0, 0, t2 * t2);
  m.set(1, 1, ti2);
  m.set(2, 2, ti2);
  const std::array<CycNum, 3> s = {ti2, theta, theta};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 8; ++i) m.set(jordan_index(k + 1, i), jordan_index(k + 1, i), s[k]);
  return JordanOp(m);
}

JordanOp phi2(const CycNum& nu) {
  CycNum ni = nu.inv();
  return diagonal_op({CycNum(1), nu * nu, ni * ni}, {CycNum(1), ni, nu});
}

JordanOp jordan_tau() { return JordanOp::conjugation(kJordanDim); }

bool is_f4_elem(const JordanOp& l, JordanViolation* violation) {
  if (l.dim() != kJordanDim) throw std::invalid_argument("Jordan operator must be 27x27");
  if (!l.invertible()) throw std::domain_error("singular operator");
  if (l.conjugates_scalars() || !l.matrix().is_real()) {
    if (violation) *violation = {};
    return false;
  }
  std::vector<SparseVec> img(kJordanDim);
  for (int i = 0; i < kJordanDim; ++i) img[i] = l.matrix().column(i);
  for (int i = 0; i < kJordanDim; ++i)
    for (int j = i; j < kJordanDim; ++j)
      if (l.apply(jordan_mul_table(i, j)) != jordan_mul(img[i], img[j])) {
        if (violation) *violation = {i, j, -1};
        return false;
      }
  return true;
}

bool is_e6_elem(const JordanOp& l, JordanViolation* violation) {
  if (l.dim() != kJordanDim) throw std::invalid_argument("Jordan operator must be 27x27");
  if (!l.invertible()) throw std::domain_error("singular operator");
  if (l.conjugates_scalars()) {
    if (violation) *violation = {};
    return false;
  }
  std::vector<SparseVec> img(kJordanDim);
  for (int i = 0; i < kJordanDim; ++i) img[i] = l.matrix().column(i);
  for (int i = 0; i < kJordanDim; ++i)
    for (int j = i; j < kJordanDim; ++j) {
      CycNum h = jordan_inner(sv_conj(img[i]), img[j]);
      if (h != (i == j ? CycNum(jordan_gram(i)) : CycNum())) {
        if (violation) *violation = {i, j, -1};
        return false;
      }
    }
  for (int j = 0; j < kJordanDim; ++j)
    for (int k = j; k < kJordanDim; ++k) {
      SparseVec c = cross(img[j], img[k]);
      const SparseVec& c0 = cross_table(j, k);
      for (int i = 0; i <= j; ++i)
        if (jordan_inner(img[i], c) != jordan_inner(sv_unit(i), c0)) {
          if (violation) *violation = {i, j, k};
          return false;
        }
    }
  return true;
}

JordanOp named_jordan_map(const std::string& name) {
  const CycNum one(1), m1(-1), i = CycNum::imag_unit();
  if (name == "sigma") return diagonal_op({one, one, one}, {one, m1, m1});
  if (name == "sigma_prime") return diagonal_op({one, one, one}, {m1, m1, one});
  for (const char* g : {"gamma", "gamma_H", "gamma_C", "delta1", "delta2", "delta3", "delta4"})
    if (name == g) return lift_oct_map(named_oct_map(name));
  if (name == "delta5")
    return op_from_fn([](const JordanElem& a) {
      JordanElem r;
      r.xi = a.xi;
      r.x[0] = -rmul(lmul(4, a.x[0]), 4);
      r.x[1] = -lmul(4, a.x[1]);
      r.x[2] = rmul(a.x[2], 4);
      return r;
    });
  if (name == "delta6")
    return op_from_fn([](const JordanElem& a) {
      JordanElem r;
      r.xi = {a.xi[2], a.xi[1], a.xi[0]};
      r.x = {oct_conj(a.x[2]), oct_conj(a.x[1]), oct_conj(a.x[0])};
      return r;
    });
  if (name == "delta7")
    return op_from_fn([](const JordanElem& a) {
      JordanElem r;
      r.xi = {a.xi[1], a.xi[0], a.xi[2]};
      r.x = {oct_conj(a.x[1]), oct_conj(a.x[0]), oct_conj(a.x[2])};
      return r;
    });
  if (name == "delta9") return diagonal_op({one, m1, m1}, {m1, i, i});
  if (name == "rho2")
    return op_from_fn([i](const JordanElem& a) {
      JordanElem r;
      r.xi = {a.xi[0], -a.xi[1], -a.xi[2]};
      r.x[0] = rmul(lmul(1, a.x[0]), 1);
      r.x[1] = i * lmul(1, a.x[1]);
      r.x[2] = -i * rmul(a.x[2], 1);
      return r;
    });
  if (name == "tau") return jordan_tau();
  throw std::invalid_argument("unknown Jordan map: " + name);
}

}  // namespace excv
