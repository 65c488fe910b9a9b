#include "excverify/liealg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace excv {

namespace {

constexpr int kXi = 2 * kJordanDim, kEta = 2 * kJordanDim + 1;
const CycNum kI = CycNum::imag_unit();

// unknown D[r][c] sits at r * n + c
FreeBasis product_derivations(int n, const std::function<const SparseVec&(int, int)>& t, bool commutative) {
  RowReducer red(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = commutative ? i : 0; j < n; ++j) {
      // D(b_i b_j) - (D b_i) b_j - b_i (D b_j), component m
      Accumulator acc(n * n);
      for (int m = 0; m < n; ++m) {
        for (const auto& [s, v] : t(i, j)) acc.add(m * n + s, v);
        for (int r = 0; r < n; ++r) {
          CycNum a = sv_get(t(r, j), m);
          if (!a.is_zero()) acc.add(r * n + i, -a);
          CycNum b = sv_get(t(i, r), m);
          if (!b.is_zero()) acc.add(r * n + j, -b);
        }
        SparseVec row = acc.take();
        if (!row.empty()) red.add(row);
      }
    }
  return red.free_basis();
}

FreeBasis trilinear_derivations() {
  const int n = kJordanDim;
  RowReducer red(n * n);
  Accumulator acc(n * n);
  // (phi b_i, c) = sum_r phi[r][i] c_r gram(r)
  auto add_term = [&](int i, const SparseVec& c) {
    for (const auto& [r, v] : c) acc.add(r * n + i, jordan_gram(r) == 1 ? v : v + v);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        add_term(i, cross_table(j, k));
        add_term(j, cross_table(i, k));
        add_term(k, cross_table(i, j));
        SparseVec row = acc.take();
        if (!row.empty()) red.add(row);
      }
  return red.free_basis();
}

const SparseVec& oct_product(int i, int j) {
  static const std::vector<SparseVec> t = [] {
    std::vector<SparseVec> r(64);
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        OctProduct p = oct_table()[a][b];
        r[a * 8 + b] = sv_unit(p.index, CycNum(p.sign));
      }
    return r;
  }();
  return t[i * 8 + j];
}

void check_dim(AlgebraId id, int got) {
  if (got != algebra_dim(id)) {
    std::ostringstream os;
    os << algebra_name(id) << ": expected dimension " << algebra_dim(id) << ", computed " << got;
    throw std::runtime_error(os.str());
  }
}

const std::vector<SparseVec>& e7_basis_ops() {
  static const std::vector<SparseVec> ops = [] {
    const FreeBasis& e6 = derivation_basis(AlgebraId::e6);
    std::vector<SparseVec> r;
    for (int k = 0; k < kE7Dim; ++k) {
      E7AlgElem e;
      if (k < 78) e.phi = JordanOp(ExactMatrix::unflatten(kJordanDim, kJordanDim, e6.vectors[k]));
      else if (k < 105) e.A = JordanElem::basis(k - 78);
      else if (k < 132) e.B = JordanElem::basis(k - 105);
      else e.nu = CycNum(1);
      r.push_back(e7_operator(e).flatten());
    }
    return r;
  }();
  return ops;
}

int matrix_side(AlgebraId id) { return id == AlgebraId::g2 ? 8 : kJordanDim; }

ExactMatrix gram_adjoint(const ExactMatrix& m, const std::vector<int>& h) {
  // H^{-1} m^T H
  int n = m.rows();
  ExactMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : m.row(i)) r.set(j, i, v * CycNum(h[i], h[j]));
  return r;
}

std::vector<int> jordan_grams() {
  std::vector<int> h(kJordanDim);
  for (int i = 0; i < kJordanDim; ++i) h[i] = jordan_gram(i);
  return h;
}

std::vector<int> freudenthal_grams() {
  std::vector<int> h(kFDim, 1);
  for (int i = 0; i < kXi; ++i) h[i] = jordan_gram(i % kJordanDim);
  return h;
}

SparseVec act_with(AlgebraId id, const SemilinearOp& op, const SemilinearOp& inv, const SparseVec& x) {
  if (id == AlgebraId::e8) return op.apply(x);
  SemilinearOp c = op * SemilinearOp(coords_to_matrix(id, x)) * inv;
  auto y = c.conjugates_scalars() ? std::nullopt : matrix_to_coords(id, c.matrix());
  if (!y) throw std::domain_error("map does not normalize algebra");
  return *y;
}

SparseVec split_real(const SparseVec& x, int n) {
  SparseVec re, im;
  for (const auto& [k, c] : x) {
    if (c.is_real()) {
      re.emplace_back(k, c);
      continue;
    }
    CycNum a = re_part(c), b = im_part(c);
    if (!a.is_zero()) re.emplace_back(k, a);
    if (!b.is_zero()) im.emplace_back(k + n, b);
  }
  re.insert(re.end(), im.begin(), im.end());
  return re;
}

std::vector<SparseVec> matrix_rows_minus(const ExactMatrix& m, int sign) {
  std::vector<SparseVec> rows;
  for (int r = 0; r < m.rows(); ++r) {
    SparseVec row = sv_axpy(m.row(r), CycNum(-sign), sv_unit(r));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

// negative definite via symmetric elimination without pivoting
bool negative_definite(std::vector<std::vector<CycNum>> k) {
  int n = static_cast<int>(k.size());
  for (int p = 0; p < n; ++p) {
    if (k[p][p].real_sign() >= 0) return false;
    CycNum inv = k[p][p].inv();
    for (int i = p + 1; i < n; ++i) {
      if (k[i][p].is_zero()) continue;
      CycNum f = k[i][p] * inv;
      for (int j = p + 1; j < n; ++j)
        if (!k[p][j].is_zero()) k[i][j] -= f * k[p][j];
    }
  }
  return true;
}

}  // namespace

std::string algebra_name(AlgebraId id) {
  switch (id) {
    case AlgebraId::g2: return "g2";
    case AlgebraId::f4: return "f4";
    case AlgebraId::e6: return "e6";
    case AlgebraId::e7: return "e7";
    case AlgebraId::e8: return "e8";
  }
  return "?";
}

std::optional<AlgebraId> parse_algebra(const std::string& s) {
  for (AlgebraId id : {AlgebraId::g2, AlgebraId::f4, AlgebraId::e6, AlgebraId::e7, AlgebraId::e8})
    if (algebra_name(id) == s) return id;
  return std::nullopt;
}

int algebra_dim(AlgebraId id) {
  switch (id) {
    case AlgebraId::g2: return 14;
    case AlgebraId::f4: return 52;
    case AlgebraId::e6: return 78;
    case AlgebraId::e7: return kE7Dim;
    case AlgebraId::e8: return kE8Dim;
  }
  return 0;
}

int rep_dim(AlgebraId id) {
  switch (id) {
    case AlgebraId::g2: return 8;
    case AlgebraId::f4:
    case AlgebraId::e6: return kJordanDim;
    case AlgebraId::e7: return kFDim;
    case AlgebraId::e8: return kE8Dim;
  }
  return 0;
}

const FreeBasis& derivation_basis(AlgebraId id) {
  static std::once_flag once[3];
  static FreeBasis basis[3];
  switch (id) {
    case AlgebraId::g2:
      std::call_once(once[0], [] {
        basis[0] = product_derivations(8, oct_product, false);
        check_dim(AlgebraId::g2, basis[0].dim());
      });
      return basis[0];
    case AlgebraId::f4:
      std::call_once(once[1], [] {
        basis[1] = product_derivations(kJordanDim, jordan_mul_table, true);
        check_dim(AlgebraId::f4, basis[1].dim());
      });
      return basis[1];
    case AlgebraId::e6:
      std::call_once(once[2], [] {
        basis[2] = trilinear_derivations();
        check_dim(AlgebraId::e6, basis[2].dim());
      });
      return basis[2];
    default: throw std::invalid_argument("no derivation basis for " + algebra_name(id));
  }
}

ExactMatrix coords_to_matrix(AlgebraId id, const SparseVec& x) {
  if (id == AlgebraId::e7) return e7c_operator(x);
  if (id == AlgebraId::e8) throw std::invalid_argument("e8 has no matrix model");
  int n = matrix_side(id);
  return ExactMatrix::unflatten(n, n, derivation_basis(id).combine(x));
}

std::optional<SparseVec> matrix_to_coords(AlgebraId id, const ExactMatrix& m) {
  if (id == AlgebraId::e7) return e7c_coords(m);
  if (id == AlgebraId::e8) throw std::invalid_argument("e8 has no matrix model");
  int n = matrix_side(id);
  if (m.rows() != n || m.cols() != n) return std::nullopt;
  return derivation_basis(id).express(m.flatten());
}

std::optional<SparseVec> e6c_coords(const ExactMatrix& phi) { return matrix_to_coords(AlgebraId::e6, phi); }

ExactMatrix e7c_operator(const SparseVec& x) {
  const auto& ops = e7_basis_ops();
  Accumulator acc(kFDim * kFDim);
  for (const auto& [k, c] : x) acc.axpy(c, ops.at(k));
  return ExactMatrix::unflatten(kFDim, kFDim, acc.take());
}

std::optional<SparseVec> e7c_coords(const ExactMatrix& m) {
  if (m.rows() != kFDim || m.cols() != kFDim) return std::nullopt;
  CycNum nu = m.get(kXi, kXi);
  CycNum third = nu * CycNum(1, 3);
  SparseVec phi;
  for (int r = 0; r < kJordanDim; ++r) {
    bool diag = false;
    for (const auto& [c, v] : m.row(r)) {
      if (c >= kJordanDim) break;
      if (c == r) {
        diag = true;
        CycNum w = v + third;
        if (!w.is_zero()) phi.emplace_back(r * kJordanDim + c, w);
      } else {
        phi.emplace_back(r * kJordanDim + c, v);
      }
    }
    if (!diag && !third.is_zero()) {
      auto pos = std::lower_bound(phi.begin(), phi.end(), r * kJordanDim + r,
                                  [](const auto& e, int k) { return e.first < k; });
      phi.insert(pos, {r * kJordanDim + r, third});
    }
  }
  SparseVec x = derivation_basis(AlgebraId::e6).coords(phi);
  for (int r = 0; r < kJordanDim; ++r) {
    CycNum a = m.get(r, kEta);
    if (!a.is_zero()) x.emplace_back(78 + r, a);
  }
  for (int r = 0; r < kJordanDim; ++r) {
    CycNum b = m.get(kJordanDim + r, kXi);
    if (!b.is_zero()) x.emplace_back(105 + r, b);
  }
  if (!nu.is_zero()) x.emplace_back(132, nu);
  if (!(e7c_operator(x) == m)) return std::nullopt;
  return x;
}

SparseVec e7c_from_params(const E7AlgElem& e) {
  auto x = e6c_coords(e.phi.matrix());
  if (!x) throw std::domain_error("phi is not in e6^C");
  for (const auto& [k, c] : e.A.to_sparse()) x->emplace_back(78 + k, c);
  for (const auto& [k, c] : e.B.to_sparse()) x->emplace_back(105 + k, c);
  if (!e.nu.is_zero()) x->emplace_back(132, e.nu);
  return *x;
}

E7AlgElem e7c_params(const SparseVec& x) {
  E7AlgElem e;
  SparseVec phi, a, b;
  for (const auto& [k, c] : x) {
    if (k < 78) phi.emplace_back(k, c);
    else if (k < 105) a.emplace_back(k - 78, c);
    else if (k < 132) b.emplace_back(k - 105, c);
    else if (k == 132) e.nu = c;
  }
  e.phi = JordanOp(coords_to_matrix(AlgebraId::e6, phi));
  e.A = JordanElem::from_sparse(a);
  e.B = JordanElem::from_sparse(b);
  return e;
}

SparseVec coord_bracket(AlgebraId id, const SparseVec& a, const SparseVec& b) {
  if (id == AlgebraId::e8) return bracket(a, b);
  if (a.empty() || b.empty()) return {};
  ExactMatrix x = coords_to_matrix(id, a), y = coords_to_matrix(id, b);
  auto c = matrix_to_coords(id, x * y - y * x);
  if (!c) throw std::logic_error("commutator left the algebra");
  return *c;
}

SparseVec coord_act(AlgebraId id, const SemilinearOp& op, const SparseVec& x) {
  return act_with(id, op, id == AlgebraId::e8 ? op : op.inverse(), x);
}

SemilinearOp compact_conjugation(AlgebraId id) {
  int n = algebra_dim(id);
  switch (id) {
    case AlgebraId::g2:
    case AlgebraId::f4: return SemilinearOp::conjugation(n);
    case AlgebraId::e6: {
      // basis matrices are rational, so -(sum x_k N_k)^dagger = sum conj(x_k) (-N_k^adj)
      const FreeBasis& d = derivation_basis(id);
      std::vector<int> h = jordan_grams();
      std::vector<SparseVec> cols;
      for (int k = 0; k < n; ++k) {
        ExactMatrix m = ExactMatrix::unflatten(kJordanDim, kJordanDim, d.vectors[k]);
        auto c = matrix_to_coords(id, gram_adjoint(m, h).scaled(CycNum(-1)));
        if (!c) throw std::runtime_error("e6^C not closed under the adjoint");
        cols.push_back(*c);
      }
      return SemilinearOp(ExactMatrix::from_columns(n, cols), true);
    }
    case AlgebraId::e7: {
      std::vector<int> h = freudenthal_grams();
      std::vector<SparseVec> cols;
      for (int k = 0; k < n; ++k) {
        auto c = e7c_coords(gram_adjoint(e7c_operator(sv_unit(k)), h).scaled(CycNum(-1)));
        if (!c) throw std::runtime_error("e7^C not closed under the adjoint");
        cols.push_back(*c);
      }
      return SemilinearOp(ExactMatrix::from_columns(n, cols), true);
    }
    case AlgebraId::e8: return named_e8_map("tau") * named_e8_map("lambda_omega");
  }
  throw std::invalid_argument("unknown algebra");
}

SemilinearOp resolve_map(AlgebraId id, const std::string& expr) {
  std::string s = expr;
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s = s.substr(1);
  int n = rep_dim(id);
  SemilinearOp r = SemilinearOp::identity(n);
  std::stringstream ss(s);
  std::string name;
  while (std::getline(ss, name, '*')) {
    if (name.empty()) throw std::invalid_argument("malformed map expression: " + expr);
    SemilinearOp m;
    switch (id) {
      case AlgebraId::g2: m = named_oct_map(name); break;
      case AlgebraId::f4: m = named_jordan_map(name); break;
      case AlgebraId::e6: m = name == "lambda" ? jordan_tau() : named_jordan_map(name); break;
      case AlgebraId::e7: m = named_f_map(name); break;
      case AlgebraId::e8: m = named_e8_map(name); break;
    }
    r = r * m;
  }
  return neg ? -r : r;
}

std::optional<SparseVec> LieBasis::express(const SparseVec& x) const {
  int n = coord_dim();
  SparseVec split = split_real(x, n);
  std::sort(split.begin(), split.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec c;
  auto it = split.begin();
  for (int k = 0; k < dim(); ++k) {
    while (it != split.end() && it->first < free[k]) ++it;
    if (it == split.end()) break;
    if (it->first == free[k]) c.emplace_back(k, it->second);
  }
  if (combine(c) != x) return std::nullopt;
  return c;
}

SparseVec LieBasis::combine(const SparseVec& coeffs) const {
  Accumulator acc(coord_dim());
  for (const auto& [k, c] : coeffs) acc.axpy(c, vectors[k]);
  return acc.take();
}

SparseVec LieBasis::bracket(const SparseVec& u, const SparseVec& v) const {
  if (!has_table()) throw std::logic_error("bracket table not computed");
  int n = dim();
  Accumulator acc(n);
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v) {
      if (i == j) continue;
      CycNum s = a * b;
      if (i < j) acc.axpy(s, table[i * n + j]);
      else acc.axpy(-s, table[j * n + i]);
    }
  return acc.take();
}

namespace {

std::vector<SparseVec> bracket_table(const LieBasis& b) {
  int n = b.dim();
  std::vector<SparseVec> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto c = b.express(coord_bracket(b.id, b.vectors[i], b.vectors[j]));
      if (!c) {
        std::ostringstream os;
        os << algebra_name(b.id) << ": bracket of basis vectors " << i << ", " << j << " leaves the span";
        throw std::runtime_error(os.str());
      }
      t[i * n + j] = std::move(*c);
    }
  return t;
}

}  // namespace

LieBasis compute_basis(AlgebraId id, bool with_table) {
  int n = algebra_dim(id);
  SemilinearOp c = compact_conjugation(id);
  const ExactMatrix& cm = c.matrix();
  std::vector<SparseVec> rows;
  for (int r = 0; r < n; ++r) {
    SparseVec a = sv_sub(cm.row(r), sv_unit(r));
    SparseVec b = sv_scale(sv_add(cm.row(r), sv_unit(r)), -kI);
    for (const auto& [k, v] : b) a.emplace_back(k + n, v);
    if (!a.empty()) rows.push_back(std::move(a));
  }
  FreeBasis fb = real_null_basis(rows, 2 * n);
  check_dim(id, fb.dim());
  LieBasis lb;
  lb.id = id;
  lb.free = fb.free;
  for (const auto& v : fb.vectors) {
    Accumulator acc(n);
    for (const auto& [k, a] : v) acc.add(k % n, k < n ? a : a * kI);
    lb.vectors.push_back(acc.take());
  }
  if (with_table) lb.table = bracket_table(lb);
  return lb;
}

bool verify_table(const LieBasis& b) {
  int n = b.dim();
  if (static_cast<int>(b.table.size()) != n * n) return false;
  try {
    return bracket_table(b) == b.table;
  } catch (const std::runtime_error&) {
    return false;
  }
}

InvolutionAction act_in_basis(const LieBasis& b, const std::string& source, const SemilinearOp& op) {
  if (op.dim() != rep_dim(b.id)) throw std::invalid_argument("map acts on the wrong space: " + source);
  SemilinearOp inv = b.id == AlgebraId::e8 ? op : op.inverse();
  std::vector<SparseVec> cols;
  for (const auto& v : b.vectors) {
    auto c = b.express(act_with(b.id, op, inv, v));
    if (!c) throw std::domain_error("map does not normalize algebra");
    cols.push_back(std::move(*c));
  }
  InvolutionAction a;
  a.source = source;
  a.matrix = ExactMatrix::from_columns(b.dim(), cols);
  a.involutive = a.matrix * a.matrix == ExactMatrix::identity(b.dim());
  return a;
}

bool pair_commutes_ad(const InvolutionAction& a, const InvolutionAction& b) {
  return a.matrix * b.matrix == b.matrix * a.matrix;
}

std::vector<SparseVec> joint_eigenspace(const LieBasis& b, const std::vector<InvolutionAction>& acts,
                                        const std::vector<int>& signs) {
  if (acts.size() != signs.size()) throw std::invalid_argument("one sign per action");
  RowReducer red(b.dim());
  for (std::size_t k = 0; k < acts.size(); ++k) {
    if (!acts[k].involutive) throw std::invalid_argument("action is not involutive: " + acts[k].source);
    for (auto& row : matrix_rows_minus(acts[k].matrix, signs[k])) red.add(row);
  }
  return red.nullspace();
}

SubalgebraReport fixed_subalgebra(const LieBasis& b, const std::vector<InvolutionAction>& acts) {
  std::vector<SparseVec> basis = joint_eigenspace(b, acts, std::vector<int>(acts.size(), 1));
  if (!b.has_table()) {
    SubalgebraReport r;
    r.dim = static_cast<int>(basis.size());
    r.basis = std::move(basis);
    return r;
  }
  return subalgebra_invariants(b, std::move(basis));
}

std::vector<SparseVec> annihilator(const LieBasis& b, const std::vector<SparseVec>& images, int n) {
  std::vector<SparseVec> rows(n);
  for (int j = 0; j < static_cast<int>(images.size()); ++j)
    for (const auto& [m, v] : images[j]) rows[m].emplace_back(j, v);
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SparseVec& r) { return r.empty(); }), rows.end());
  (void)b;
  return real_nullspace(rows, static_cast<int>(images.size()));
}

std::vector<SparseVec> intersect(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int n) {
  int p = static_cast<int>(u.size()), q = static_cast<int>(v.size());
  std::vector<SparseVec> rows(n);
  for (int i = 0; i < p; ++i)
    for (const auto& [m, a] : u[i]) rows[m].emplace_back(i, a);
  for (int j = 0; j < q; ++j)
    for (const auto& [m, a] : v[j]) rows[m].emplace_back(p + j, -a);
  RowReducer red(p + q);
  for (auto& r : rows)
    if (!r.empty()) red.add(r);
  std::vector<SparseVec> out;
  for (const auto& z : red.nullspace()) {
    Accumulator acc(n);
    for (const auto& [k, a] : z)
      if (k < p) acc.axpy(a, u[k]);
    SparseVec w = acc.take();
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

SubalgebraReport subalgebra_invariants(const LieBasis& b, std::vector<SparseVec> basis) {
  SubalgebraReport r;
  int m = static_cast<int>(basis.size());
  r.dim = m;
  r.basis = basis;
  if (m == 0) {
    r.center_dim = r.derived_dim = 0;
    r.killing_negdef = true;
    return r;
  }
  SpanSolver sub(basis, b.dim());
  // c[a][b'] = [s_a, s_b'] in subalgebra coordinates
  std::vector<std::vector<SparseVec>> c(m, std::vector<SparseVec>(m));
  RowReducer derived(m);
  std::vector<SparseVec> derived_basis;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto x = sub.express(b.bracket(basis[i], basis[j]));
      if (!x) throw std::runtime_error("fixed subspace is not closed under the bracket");
      c[i][j] = *x;
      c[j][i] = sv_scale(*x, CycNum(-1));
      if (derived.add(*x)) derived_basis.push_back(*x);
    }
  r.derived_dim = derived.rank();
  // center: sum_a z_a c[a][j] = 0 for all j
  RowReducer center(m);
  std::map<long long, SparseVec> rows;
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < m; ++j)
      for (const auto& [d, v] : c[a][j]) rows[static_cast<long long>(j) * m + d].emplace_back(a, v);
  for (auto& [key, row] : rows) center.add(row);
  r.center_dim = m - center.rank();
  if (m <= kKillingMaxDim) {
    // ad_a[d][j] = c[a][j]_d
    std::vector<ExactMatrix> ad;
    for (int a = 0; a < m; ++a) {
      std::vector<SparseVec> cols(c[a].begin(), c[a].end());
      ad.push_back(ExactMatrix::from_columns(m, cols));
    }
    std::vector<std::vector<CycNum>> k(m, std::vector<CycNum>(m));
    for (int a = 0; a < m; ++a)
      for (int j = a; j < m; ++j) k[a][j] = k[j][a] = trace_of_product(ad[a], ad[j]);
    int dd = static_cast<int>(derived_basis.size());
    std::vector<std::vector<CycNum>> kd(dd, std::vector<CycNum>(dd));
    for (int p = 0; p < dd; ++p)
      for (int q = p; q < dd; ++q) {
        CycNum s;
        for (const auto& [x, u] : derived_basis[p])
          for (const auto& [y, v] : derived_basis[q])
            if (!k[x][y].is_zero()) s += u * v * k[x][y];
        kd[p][q] = kd[q][p] = s;
      }
    r.killing_negdef = r.center_dim + r.derived_dim == m && negative_definite(kd);
  }
  return r;
}

}  // namespace excv
