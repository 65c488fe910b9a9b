#include "excverify/freudenthal.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace excv {

namespace {

constexpr int kY = kJordanDim, kXi = 2 * kJordanDim, kEta = 2 * kJordanDim + 1;

// splits a 56-vector into its X, Y parts (as 27-vectors) and xi, eta
struct Parts {
  SparseVec x, y;
  CycNum xi, eta;
};

Parts split(const SparseVec& v) {
  Parts p;
  for (const auto& [i, c] : v) {
    if (i < kY) p.x.emplace_back(i, c);
    else if (i < kXi) p.y.emplace_back(i - kY, c);
    else if (i == kXi) p.xi = c;
    else p.eta = c;
  }
  return p;
}

SparseVec join(const SparseVec& x, const SparseVec& y, const CycNum& xi, const CycNum& eta) {
  SparseVec v = x;
  for (const auto& [i, c] : y) v.emplace_back(i + kY, c);
  if (!xi.is_zero()) v.emplace_back(kXi, xi);
  if (!eta.is_zero()) v.emplace_back(kEta, eta);
  return v;
}

const SparseVec& unit_e() {
  static const SparseVec e = JordanElem::E().to_sparse();
  return e;
}

const SparseVec& unit_e1() {
  static const SparseVec e = JordanElem::E(1).to_sparse();
  return e;
}

CycNum jtrace(const SparseVec& x) {
  CycNum t;
  for (const auto& [i, c] : x)
    if (i < 3) t += c;
  return t;
}

FOperator op_from_fn(const std::function<SparseVec(const SparseVec&)>& f) {
  std::vector<SparseVec> cols;
  for (int i = 0; i < kFDim; ++i) cols.push_back(f(sv_unit(i)));
  return FOperator(ExactMatrix::from_columns(kFDim, cols));
}

JordanOp inverse_transpose(const JordanOp& a) { return transpose_op(a).inverse(); }

}  // namespace

FVector FVector::basis(int idx) {
  if (idx < 0 || idx >= kFDim) throw std::out_of_range("Freudenthal basis index");
  return from_sparse(sv_unit(idx));
}

bool FVector::is_zero() const { return X.is_zero() && Y.is_zero() && xi.is_zero() && eta.is_zero(); }

SparseVec FVector::to_sparse(int offset) const {
  SparseVec v = X.to_sparse(offset);
  for (const auto& e : Y.to_sparse(offset + kY)) v.push_back(e);
  if (!xi.is_zero()) v.emplace_back(offset + kXi, xi);
  if (!eta.is_zero()) v.emplace_back(offset + kEta, eta);
  return v;
}

FVector FVector::from_sparse(const SparseVec& v, int offset) {
  FVector p;
  p.X = JordanElem::from_sparse(v, offset);
  p.Y = JordanElem::from_sparse(v, offset + kY);
  p.xi = sv_get(v, offset + kXi);
  p.eta = sv_get(v, offset + kEta);
  return p;
}

FVector operator+(const FVector& a, const FVector& b) {
  return {a.X + b.X, a.Y + b.Y, a.xi + b.xi, a.eta + b.eta};
}

FVector operator-(const FVector& a, const FVector& b) {
  return {a.X - b.X, a.Y - b.Y, a.xi - b.xi, a.eta - b.eta};
}

FVector operator*(const CycNum& s, const FVector& a) { return {s * a.X, s * a.Y, s * a.xi, s * a.eta}; }

E7AlgElem operator+(const E7AlgElem& a, const E7AlgElem& b) {
  return {JordanOp(a.phi.matrix() + b.phi.matrix()), a.A + b.A, a.B + b.B, a.nu + b.nu};
}

E7AlgElem operator*(const CycNum& s, const E7AlgElem& a) {
  return {a.phi.scaled(s), s * a.A, s * a.B, s * a.nu};
}

FVector phi_apply(const E7AlgElem& e, const FVector& p) {
  return FVector::from_sparse(e7_operator(e).apply(p.to_sparse()));
}

ExactMatrix e7_operator(const E7AlgElem& e) {
  const ExactMatrix& phi = e.phi.matrix();
  ExactMatrix tphi = transpose_op(e.phi).matrix();
  SparseVec a = e.A.to_sparse(), b = e.B.to_sparse();
  CycNum third = e.nu * CycNum(1, 3);
  std::vector<SparseVec> cols;
  for (int i = 0; i < kFDim; ++i) {
    Parts p = split(sv_unit(i));
    SparseVec x = sv_axpy(phi.apply(p.x), -third, p.x);
    x = sv_axpy(x, CycNum(2), cross(b, p.y));
    x = sv_axpy(x, p.eta, a);
    SparseVec y = sv_axpy(sv_scale(tphi.apply(p.y), CycNum(-1)), third, p.y);
    y = sv_axpy(y, CycNum(2), cross(a, p.x));
    y = sv_axpy(y, p.xi, b);
    CycNum xi = jordan_inner(a, p.y) + e.nu * p.xi;
    CycNum eta = jordan_inner(b, p.x) - e.nu * p.eta;
    cols.push_back(join(x, y, xi, eta));
  }
  return ExactMatrix::from_columns(kFDim, cols);
}

bool is_e6_derivation(const ExactMatrix& phi) {
  std::vector<SparseVec> img(kJordanDim);
  for (int i = 0; i < kJordanDim; ++i) img[i] = phi.column(i);
  for (int i = 0; i < kJordanDim; ++i)
    for (int j = i; j < kJordanDim; ++j)
      for (int k = j; k < kJordanDim; ++k) {
        CycNum s = jordan_inner(img[i], cross_table(j, k)) + jordan_inner(img[j], cross_table(i, k)) +
                   jordan_inner(img[k], cross_table(i, j));
        if (!s.is_zero()) return false;
      }
  return true;
}

std::optional<E7AlgElem> e7_params(const ExactMatrix& m) {
  if (m.rows() != kFDim || m.cols() != kFDim) return std::nullopt;
  E7AlgElem e;
  e.nu = m.get(kXi, kXi);
  SparseVec ca = m.column(kEta), cb = m.column(kXi);
  SparseVec a, b;
  for (const auto& [i, c] : ca)
    if (i < kY) a.emplace_back(i, c);
  for (const auto& [i, c] : cb)
    if (i >= kY && i < kXi) b.emplace_back(i - kY, c);
  e.A = JordanElem::from_sparse(a);
  e.B = JordanElem::from_sparse(b);
  ExactMatrix phi(kJordanDim, kJordanDim);
  CycNum third = e.nu * CycNum(1, 3);
  for (int r = 0; r < kJordanDim; ++r) {
    for (const auto& [c, v] : m.row(r))
      if (c < kJordanDim) phi.set(r, c, v);
    phi.add_to(r, r, third);
  }
  e.phi = JordanOp(phi);
  if (!is_e6_derivation(phi)) return std::nullopt;
  if (!(e7_operator(e) == m)) return std::nullopt;
  return e;
}

SparseVec vee_apply(const SparseVec& x, const SparseVec& w, const SparseVec& u) {
  SparseVec r = sv_scale(x, CycNum(1, 2) * jordan_inner(w, u));
  r = sv_axpy(r, CycNum(1, 6) * jordan_inner(x, w), u);
  return sv_axpy(r, CycNum(-2), cross(w, cross(x, u)));
}

JordanOp vee(const JordanElem& x, const JordanElem& w) {
  SparseVec xs = x.to_sparse(), ws = w.to_sparse();
  std::vector<SparseVec> cols;
  for (int i = 0; i < kJordanDim; ++i) cols.push_back(vee_apply(xs, ws, sv_unit(i)));
  return JordanOp(ExactMatrix::from_columns(kJordanDim, cols));
}

E7AlgElem cross_pq(const FVector& p, const FVector& q) {
  const JordanElem &X = p.X, &Y = p.Y, &Z = q.X, &W = q.Y;
  E7AlgElem e;
  e.phi = JordanOp((vee(X, W).matrix() + vee(Z, Y).matrix()).scaled(CycNum(-1, 2)));
  e.A = CycNum(-1, 4) * (CycNum(2) * cross(Y, W) - p.xi * Z - q.xi * X);
  e.B = CycNum(1, 4) * (CycNum(2) * cross(X, Z) - p.eta * W - q.eta * Y);
  e.nu = CycNum(1, 8) * (jordan_inner(X, W) + jordan_inner(Z, Y) - CycNum(3) * (p.xi * q.eta + q.xi * p.eta));
  return e;
}

SparseVec cross_pq_apply(const SparseVec& p, const SparseVec& q, const SparseVec& r) {
  Parts P = split(p), Q = split(q), R = split(r);
  const SparseVec &X = P.x, &Y = P.y, &Z = Q.x, &W = Q.y;
  SparseVec a = sv_axpy(sv_axpy(sv_scale(cross(Y, W), CycNum(2)), -P.xi, Z), -Q.xi, X);
  a = sv_scale(a, CycNum(-1, 4));
  SparseVec b = sv_axpy(sv_axpy(sv_scale(cross(X, Z), CycNum(2)), -P.eta, W), -Q.eta, Y);
  b = sv_scale(b, CycNum(1, 4));
  CycNum nu = CycNum(1, 8) * (jordan_inner(X, W) + jordan_inner(Z, Y) - CycNum(3) * (P.xi * Q.eta + Q.xi * P.eta));
  CycNum third = nu * CycNum(1, 3);
  // phi U = -1/2 (X v W + Z v Y) U, tphi U = -1/2 (W v X + Y v Z) U
  SparseVec phix = sv_scale(sv_add(vee_apply(X, W, R.x), vee_apply(Z, Y, R.x)), CycNum(-1, 2));
  SparseVec tphiy = sv_scale(sv_add(vee_apply(W, X, R.y), vee_apply(Y, Z, R.y)), CycNum(-1, 2));
  SparseVec x = sv_axpy(phix, -third, R.x);
  x = sv_axpy(x, CycNum(2), cross(b, R.y));
  x = sv_axpy(x, R.eta, a);
  SparseVec y = sv_axpy(sv_scale(tphiy, CycNum(-1)), third, R.y);
  y = sv_axpy(y, CycNum(2), cross(a, R.x));
  y = sv_axpy(y, R.xi, b);
  CycNum xi = jordan_inner(a, R.y) + nu * R.xi;
  CycNum eta = jordan_inner(b, R.x) - nu * R.eta;
  return join(x, y, xi, eta);
}

CycNum hermitian(const SparseVec& p, const SparseVec& q) {
  CycNum s;
  auto ia = p.begin(), ib = q.begin();
  while (ia != p.end() && ib != q.end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else {
      int j = ia->first < kXi ? ia->first % kJordanDim : 0;
      CycNum v = ia->second.conj() * ib->second;
      s += jordan_gram(j) == 1 ? v : v + v;
      ++ia;
      ++ib;
    }
  }
  return s;
}

FVector apply(const FOperator& l, const FVector& p) { return FVector::from_sparse(l.apply(p.to_sparse())); }

FOperator lift_e6(const JordanOp& a) {
  if (a.conjugates_scalars()) throw std::invalid_argument("lift of a conjugate-linear map");
  ExactMatrix m(kFDim, kFDim);
  ExactMatrix b = inverse_transpose(a).matrix();
  for (int r = 0; r < kJordanDim; ++r) {
    for (const auto& [c, v] : a.matrix().row(r)) m.set(r, c, v);
    for (const auto& [c, v] : b.row(r)) m.set(r + kY, c + kY, v);
  }
  m.set(kXi, kXi, CycNum(1));
  m.set(kEta, kEta, CycNum(1));
  return FOperator(m);
}

FOperator phi_theta(const CycNum& theta) {
  CycNum p = theta;
  for (int k = 0; k < 3; ++k) p = p * p * p;  // theta^27
  if (theta.is_zero() || !(p == theta * theta * theta)) throw std::invalid_argument("theta must be a root of unity");
  CycNum ti = theta.inv();
  ExactMatrix m(kFDim, kFDim);
  for (int i = 0; i < kJordanDim; ++i) {
    m.set(i, i, theta);
    m.set(i + kY, i + kY, ti);
  }
  m.set(kXi, kXi, ti * ti * ti);
  m.set(kEta, kEta, theta * theta * theta);
  return FOperator(m);
}

bool is_e7_group_elem(const FOperator& l, int sample, unsigned long long seed, E7Violation* violation) {
  if (l.dim() != kFDim) throw std::invalid_argument("Freudenthal operator must be 56x56");
  if (!l.invertible()) throw std::domain_error("singular operator");
  if (l.conjugates_scalars()) {
    if (violation) *violation = {};
    return false;
  }
  std::vector<SparseVec> img(kFDim);
  for (int i = 0; i < kFDim; ++i) img[i] = l.matrix().column(i);
  for (int i = 0; i < kFDim; ++i)
    for (int j = i; j < kFDim; ++j) {
      CycNum h = hermitian(img[i], img[j]);
      CycNum h0 = i != j ? CycNum() : CycNum(i < kXi ? jordan_gram(i % kJordanDim) : 1);
      if (h != h0) {
        if (violation) *violation = {i, j, -1};
        return false;
      }
    }
  auto check_pair = [&](int i, int j) {
    for (int r = 0; r < kFDim; ++r) {
      SparseVec lhs = l.apply(cross_pq_apply(sv_unit(i), sv_unit(j), sv_unit(r)));
      if (lhs != cross_pq_apply(img[i], img[j], img[r])) {
        if (violation) *violation = {i, j, r};
        return false;
      }
    }
    return true;
  };
  if (sample <= 0) {
    for (int i = 0; i < kFDim; ++i)
      for (int j = i; j < kFDim; ++j)
        if (!check_pair(i, j)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, kFDim - 1);
  for (int t = 0; t < sample; ++t)
    if (!check_pair(d(rng), d(rng))) return false;
  return true;
}

FOperator named_f_map(const std::string& name) {
  const CycNum i = CycNum::imag_unit();
  if (name == "lambda")
    return op_from_fn([](const SparseVec& v) {
      Parts p = split(v);
      return join(p.y, sv_scale(p.x, CycNum(-1)), p.eta, -p.xi);
    });
  if (name == "iota")
    return op_from_fn([i](const SparseVec& v) {
      Parts p = split(v);
      return join(sv_scale(p.x, -i), sv_scale(p.y, i), -i * p.xi, i * p.eta);
    });
  for (const char* g : {"gamma", "sigma", "sigma_prime", "gamma_H", "gamma_C", "delta1", "delta2", "delta3", "delta4"})
    if (name == g) return lift_e6(named_jordan_map(name));
  if (name == "delta_iota") return phi_theta(CycNum::zeta8());
  if (name.rfind("phi_", 0) == 0) return phi_theta(CycNum::zeta(std::stoll(name.substr(4))));
  if (name == "delta_lambda")
    return op_from_fn([i](const SparseVec& v) {
      Parts p = split(v);
      const SparseVec& e = unit_e();
      SparseVec tx = sv_axpy(sv_scale(e, jtrace(p.x)), CycNum(-2), p.x);
      SparseVec ty = sv_axpy(sv_scale(e, jtrace(p.y)), CycNum(-2), p.y);
      CycNum s = CycNum::sqrt2() * CycNum(1, 4);
      SparseVec x = sv_axpy(sv_scale(tx, CycNum(-1)), i, ty);
      x = sv_axpy(x, -p.xi + i * p.eta, e);
      SparseVec y = sv_axpy(sv_scale(tx, i), CycNum(-1), ty);
      y = sv_axpy(y, i * p.xi - p.eta, e);
      CycNum xi = -jtrace(p.x) + i * jtrace(p.y) + p.xi - i * p.eta;
      CycNum eta = i * jtrace(p.x) - jtrace(p.y) - i * p.xi + p.eta;
      return join(sv_scale(x, s), sv_scale(y, s), s * xi, s * eta);
    });
  if (name == "delta10")
    return op_from_fn([](const SparseVec& v) {
      Parts p = split(v);
      const SparseVec& e1 = unit_e1();
      auto p1 = [&e1](const SparseVec& u) {
        return sv_axpy(sv_scale(e1, jordan_inner(u, e1)), CycNum(4), cross(e1, cross(e1, u)));
      };
      SparseVec x = sv_sub(p.x, p1(p.x));
      x = sv_axpy(x, CycNum(-2), cross(e1, p.y));
      x = sv_axpy(x, p.eta, e1);
      SparseVec y = sv_sub(p.y, p1(p.y));
      y = sv_axpy(y, CycNum(2), cross(e1, p.x));
      y = sv_axpy(y, -p.xi, e1);
      return join(x, y, jordan_inner(e1, p.y), -jordan_inner(e1, p.x));
    });
  if (name == "tau") return FOperator::conjugation(kFDim);
  throw std::invalid_argument("unknown Freudenthal map: " + name);
}

}  // namespace excv
