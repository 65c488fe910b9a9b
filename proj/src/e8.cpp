#include "excverify/e8.hpp"

#include <algorithm>
#include <stdexcept>

#include "excverify/liealg.hpp"

namespace excv {

namespace {

using namespace e8slot;

struct Slots {
  SparseVec phi, p, q;
  CycNum r, s, t;
};

Slots split(const SparseVec& v) {
  Slots x;
  for (const auto& [k, c] : v) {
    if (k < kP) x.phi.emplace_back(k, c);
    else if (k < kQ) x.p.emplace_back(k - kP, c);
    else if (k < kR) x.q.emplace_back(k - kQ, c);
    else if (k == kR) x.r = c;
    else if (k == kS) x.s = c;
    else x.t = c;
  }
  return x;
}

void put(Accumulator& acc, int offset, const CycNum& s, const SparseVec& v) {
  if (s.is_zero()) return;
  for (const auto& [k, c] : v) acc.add(offset + k, s * c);
}

SparseVec cross_coords(const SparseVec& p, const SparseVec& q) {
  if (p.empty() || q.empty()) return {};
  return e7c_from_params(cross_pq(FVector::from_sparse(p), FVector::from_sparse(q)));
}

CycNum jinner(const SparseVec& a, int ao, const SparseVec& b, int bo) {
  SparseVec x, y;
  for (const auto& [k, c] : a)
    if (k >= ao && k < ao + kJordanDim) x.emplace_back(k - ao, c);
  for (const auto& [k, c] : b)
    if (k >= bo && k < bo + kJordanDim) y.emplace_back(k - bo, c);
  return jordan_inner(x, y);
}

// columns of a 248 x 248 operator from the images of the basis vectors
E8Operator from_images(const std::vector<SparseVec>& cols, bool conj) {
  return E8Operator(ExactMatrix::from_columns(kE8Dim, cols), conj);
}

// Phi -> a Phi a^{-1} on the e7 slot
std::vector<SparseVec> conj_phi_columns(const FOperator& a) {
  FOperator inv = a.inverse();
  std::vector<SparseVec> cols;
  for (int k = 0; k < kE7Dim; ++k) {
    FOperator m = a * FOperator(e7c_operator(sv_unit(k))) * inv;
    auto c = m.conjugates_scalars() ? std::nullopt : e7c_coords(m.matrix());
    if (!c) throw std::domain_error("map does not normalize e7^C");
    cols.push_back(*c);
  }
  return cols;
}

SparseVec shifted(const SparseVec& v, int offset, const CycNum& s) {
  SparseVec r;
  for (const auto& [k, c] : v) r.emplace_back(k + offset, s * c);
  return r;
}

// (a Phi a^{-1}, sp a Q, sq a P, -r, -t, -s)
E8Operator omega_type(const FOperator& a, const CycNum& sp, const CycNum& sq) {
  std::vector<SparseVec> cols = conj_phi_columns(a);
  for (int k = 0; k < kFDim; ++k) cols.push_back(shifted(a.matrix().column(k), kQ, sq));
  for (int k = 0; k < kFDim; ++k) cols.push_back(shifted(a.matrix().column(k), kP, sp));
  cols.push_back(sv_unit(kR, CycNum(-1)));
  cols.push_back(sv_unit(kT, CycNum(-1)));
  cols.push_back(sv_unit(kS, CycNum(-1)));
  return from_images(cols, a.conjugates_scalars());
}

E8Operator diagonal(const CycNum& phi, const CycNum& p, const CycNum& q, const CycNum& r, const CycNum& s,
                    const CycNum& t) {
  ExactMatrix m(kE8Dim, kE8Dim);
  for (int k = 0; k < kE8Dim; ++k) {
    const CycNum& d = k < kP ? phi : k < kQ ? p : k < kR ? q : k == kR ? r : k == kS ? s : t;
    m.set(k, k, d);
  }
  return E8Operator(m);
}

}  // namespace

SparseVec E8Elem::to_coords() const {
  SparseVec v = e7c_from_params(Phi);
  for (const auto& e : P.to_sparse(kP)) v.push_back(e);
  for (const auto& e : Q.to_sparse(kQ)) v.push_back(e);
  if (!r.is_zero()) v.emplace_back(kR, r);
  if (!s.is_zero()) v.emplace_back(kS, s);
  if (!t.is_zero()) v.emplace_back(kT, t);
  return v;
}

E8Elem E8Elem::from_coords(const SparseVec& v) {
  Slots x = split(v);
  E8Elem e;
  e.Phi = e7c_params(x.phi);
  e.P = FVector::from_sparse(x.p);
  e.Q = FVector::from_sparse(x.q);
  e.r = x.r;
  e.s = x.s;
  e.t = x.t;
  return e;
}

CycNum sympl(const SparseVec& p, const SparseVec& q) {
  constexpr int y = kJordanDim, xi = 2 * kJordanDim, eta = xi + 1;
  return jinner(p, 0, q, y) - jinner(p, y, q, 0) + sv_get(p, xi) * sv_get(q, eta) - sv_get(p, eta) * sv_get(q, xi);
}

CycNum sympl(const FVector& p, const FVector& q) {
  return jordan_inner(p.X, q.Y) - jordan_inner(p.Y, q.X) + p.xi * q.eta - p.eta * q.xi;
}

SparseVec bracket(const SparseVec& a, const SparseVec& b, BracketRows rows) {
  Slots x = split(a), y = split(b);
  Accumulator acc(kE8Dim);
  ExactMatrix m1, m2;
  bool h1 = !x.phi.empty(), h2 = !y.phi.empty();
  if (h1) m1 = e7c_operator(x.phi);
  if (h2) m2 = e7c_operator(y.phi);
  if (h1 && h2) {
    auto c = e7c_coords(m1 * m2 - m2 * m1);
    if (!c) throw std::logic_error("commutator left e7^C");
    put(acc, 0, CycNum(1), *c);
  }
  put(acc, 0, CycNum(1), cross_coords(x.p, y.q));
  put(acc, 0, CycNum(-1), cross_coords(y.p, x.q));

  int prow = rows == BracketRows::by_input ? kP : kQ;
  int qrow = rows == BracketRows::by_input ? kQ : kP;
  if (h1) {
    put(acc, prow, CycNum(1), m1.apply(y.p));
    put(acc, qrow, CycNum(1), m1.apply(y.q));
  }
  if (h2) {
    put(acc, prow, CycNum(-1), m2.apply(x.p));
    put(acc, qrow, CycNum(-1), m2.apply(x.q));
  }
  put(acc, prow, x.r, y.p);
  put(acc, prow, -y.r, x.p);
  put(acc, prow, x.s, y.q);
  put(acc, prow, -y.s, x.q);
  put(acc, qrow, -x.r, y.q);
  put(acc, qrow, y.r, x.q);
  put(acc, qrow, x.t, y.p);
  put(acc, qrow, -y.t, x.p);

  CycNum r = CycNum(-1, 8) * sympl(x.p, y.q) + CycNum(1, 8) * sympl(y.p, x.q) + x.s * y.t - y.s * x.t;
  CycNum s = CycNum(1, 4) * sympl(x.p, y.p) + CycNum(2) * (x.r * y.s - y.r * x.s);
  CycNum t = CycNum(-1, 4) * sympl(x.q, y.q) - CycNum(2) * (x.r * y.t - y.r * x.t);
  if (!r.is_zero()) acc.add(kR, r);
  if (!s.is_zero()) acc.add(kS, s);
  if (!t.is_zero()) acc.add(kT, t);
  return acc.take();
}

E8Elem bracket(const E8Elem& a, const E8Elem& b) {
  return E8Elem::from_coords(bracket(a.to_coords(), b.to_coords()));
}

bool jacobi_check(const SparseVec& a, const SparseVec& b, const SparseVec& c, BracketRows rows) {
  SparseVec s = bracket(bracket(a, b, rows), c, rows);
  s = sv_add(s, bracket(bracket(b, c, rows), a, rows));
  s = sv_add(s, bracket(bracket(c, a, rows), b, rows));
  return s.empty();
}

E8Operator lift_e7(const FOperator& a) {
  std::vector<SparseVec> cols = conj_phi_columns(a);
  for (int k = 0; k < kFDim; ++k) cols.push_back(shifted(a.matrix().column(k), kP, CycNum(1)));
  for (int k = 0; k < kFDim; ++k) cols.push_back(shifted(a.matrix().column(k), kQ, CycNum(1)));
  for (int k = kR; k < kE8Dim; ++k) cols.push_back(sv_unit(k));
  return from_images(cols, a.conjugates_scalars());
}

E8Operator named_e8_map(const std::string& name) {
  const CycNum one(1), i = CycNum::imag_unit();
  if (name == "tau") return E8Operator::conjugation(kE8Dim);
  if (name == "lambda_omega") return omega_type(named_f_map("lambda"), one, -one);
  if (name == "iota_omega") return omega_type(named_f_map("iota"), one, -one);
  if (name == "upsilon_iota_omega") return omega_type(named_f_map("iota"), -one, one);
  if (name == "upsilon") return diagonal(one, -one, -one, one, one, one);
  if (name == "delta_upsilon") return diagonal(one, i, -i, one, -one, -one);
  for (const char* g : {"sigma", "sigma_prime", "gamma", "gamma_H", "gamma_C"})
    if (name == g) return lift_e7(named_f_map(name));
  throw std::invalid_argument("unknown e8 map: " + name);
}

SparseVec random_e8_coords(std::mt19937_64& rng, int lo, int hi, int terms) {
  std::uniform_int_distribution<int> pos(lo, hi - 1), coef(-3, 3), kind(0, 2);
  Accumulator acc(kE8Dim);
  for (int k = 0; k < terms; ++k) {
    CycNum c(coef(rng));
    if (c.is_zero()) c = CycNum(1);
    if (kind(rng) == 0) c = c * CycNum::imag_unit();
    acc.add(pos(rng), c);
  }
  return acc.take();
}

bool is_e8_automorphism(const E8Operator& l, int sample, unsigned long long seed, E8Violation* violation) {
  if (l.dim() != kE8Dim) throw std::invalid_argument("e8 operator must be 248x248");
  if (!l.invertible()) throw std::domain_error("singular operator");
  std::mt19937_64 rng(seed);
  std::vector<SparseVec> gens = {sv_unit(kR), sv_unit(kS), sv_unit(kT)};
  for (int k = 0; k < 10; ++k) gens.push_back(random_e8_coords(rng, kP, kR, 3));
  for (int k = 0; k < 10; ++k) gens.push_back(random_e8_coords(rng, 0, kP, 3));
  auto check = [&](const SparseVec& a, const SparseVec& b) {
    if (l.apply(bracket(a, b)) == bracket(l.apply(a), l.apply(b))) return true;
    if (violation) *violation = {a, b};
    return false;
  };
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (!check(gens[a], gens[b])) return false;
  for (int k = 0; k < sample; ++k)
    if (!check(random_e8_coords(rng, 0, kE8Dim, 4), random_e8_coords(rng, 0, kE8Dim, 4))) return false;
  return true;
}

}  // namespace excv
