#include <gtest/gtest.h>

#include <random>

#include "excverify/cycnum.hpp"
#include "excverify/linalg.hpp"

using namespace excv;

namespace {

// Independent reference: polynomials over Q reduced by long division by
// x^8 - x^4 + 1.
using Poly = std::vector<mpq_class>;

Poly poly_reduce(Poly p) {
  const Poly m = {1, 0, 0, 0, -1, 0, 0, 0, 1};
  while (p.size() > 8) {
    mpq_class lead = p.back();
    std::size_t shift = p.size() - 9;
    for (std::size_t k = 0; k < m.size(); ++k) p[shift + k] -= lead * m[k];
    p.pop_back();
  }
  p.resize(8);
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_reduce(r);
}

Poly to_poly(const CycNum& z) {
  auto c = z.coeffs();
  return Poly(c.begin(), c.end());
}

CycNum random_cyc(std::mt19937_64& rng, int bits = 4) {
  std::array<mpq_class, 8> c;
  std::uniform_int_distribution<long> num(-(1L << bits), 1L << bits);
  std::uniform_int_distribution<long> den(1, 1L << bits);
  for (auto& q : c) {
    q = mpq_class(num(rng), den(rng));
    q.canonicalize();
  }
  return CycNum::from_coeffs(c);
}

CycNum random_big(std::mt19937_64& rng) {
  std::array<mpq_class, 8> c;
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (auto& q : c) {
    mpz_class big = mpz_class(num(rng)) << 70;
    q = mpq_class(big + num(rng), mpz_class(num(rng) == 0 ? 7 : 3));
    q.canonicalize();
  }
  return CycNum::from_coeffs(c);
}

}  // namespace

TEST(CycNum, OmegaCubedIsOne) {
  CycNum w = CycNum::omega();
  EXPECT_EQ(w * w * w, CycNum(1));
  EXPECT_NE(w, CycNum(1));
}

TEST(CycNum, Sqrt2Squared) {
  CycNum s = CycNum::zeta(3) + CycNum::zeta(21);
  EXPECT_EQ(s * s, CycNum(2));
  EXPECT_EQ(CycNum::sqrt2(), s);
  EXPECT_EQ(CycNum::sqrt3() * CycNum::sqrt3(), CycNum(3));
}

TEST(CycNum, ConjOfImagUnit) {
  CycNum i = CycNum::zeta(6);
  EXPECT_EQ(i.conj(), -i);
  EXPECT_EQ(i * i, CycNum(-1));
}

TEST(CycNum, ReductionRule) {
  EXPECT_EQ(CycNum::zeta(24), CycNum(1));
  EXPECT_EQ(CycNum::zeta(8) + CycNum(1), CycNum::zeta(4));
  CycNum z = CycNum::zeta(1);
  CycNum p(1);
  for (int k = 0; k < 24; ++k) {
    EXPECT_EQ(p, CycNum::zeta(k));
    p *= z;
  }
  EXPECT_EQ(p, CycNum(1));
  EXPECT_EQ(CycNum::zeta(-5), CycNum::zeta(19));
}

TEST(CycNum, ArithmeticAgreesWithPolynomialOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    CycNum a = random_cyc(rng), b = random_cyc(rng);
    EXPECT_EQ(to_poly(a * b), poly_mul(to_poly(a), to_poly(b)));
    Poly s = to_poly(a);
    Poly pb = to_poly(b);
    for (int k = 0; k < 8; ++k) s[k] += pb[k];
    EXPECT_EQ(to_poly(a + b), s);
  }
}

TEST(CycNum, BigCoefficientsAgreeWithOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    CycNum a = random_big(rng), b = random_cyc(rng, 20);
    EXPECT_EQ(to_poly(a * b), poly_mul(to_poly(a), to_poly(b)));
    EXPECT_EQ(to_poly(a * a), poly_mul(to_poly(a), to_poly(a)));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a - a, CycNum());
    EXPECT_TRUE((a - a).is_zero());
  }
  // spilled values come back inline once they shrink
  CycNum big = CycNum(mpq_class(mpz_class(1) << 100));
  EXPECT_EQ(big / big, CycNum(1));
  EXPECT_TRUE((big / big).is_one());
}

TEST(CycNum, OverflowOfInlineProduct) {
  CycNum a(mpq_class((mpz_class(1) << 61) - 1));
  CycNum z = a * CycNum::zeta(7) + a * CycNum::zeta(5) + a;
  Poly p = to_poly(z);
  EXPECT_EQ(to_poly(z * z), poly_mul(p, p));
  EXPECT_EQ(to_poly(z * z * z), poly_mul(poly_mul(p, p), p));
}

TEST(CycNum, FieldAxioms) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inv(), CycNum(1));
      EXPECT_EQ((b / a) * a, b);
    }
  }
}

TEST(CycNum, DivisionByZeroIsAnError) {
  EXPECT_THROW(CycNum(1) / CycNum(), DivisionByZero);
  EXPECT_THROW(CycNum().inv(), DivisionByZero);
  EXPECT_FALSE(CycNum(3).try_div(CycNum()).has_value());
  EXPECT_EQ(*CycNum(3).try_div(CycNum(6)), CycNum(1, 2));
  EXPECT_THROW(CycNum(1, 0), DivisionByZero);
}

TEST(CycNum, ConjugationIsAnInvolutiveAutomorphism) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    CycNum a = random_cyc(rng), b = random_cyc(rng);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_TRUE((a + a.conj()).is_real());
    EXPECT_TRUE((a * a.conj()).is_real());
  }
  EXPECT_EQ(CycNum::zeta(1).conj(), CycNum::zeta(23));
  EXPECT_TRUE(CycNum::sqrt2().is_real());
  EXPECT_TRUE(CycNum::sqrt3().is_real());
  EXPECT_FALSE(CycNum::omega().is_real());
}

TEST(CycNum, NumericValues) {
  auto z = CycNum::zeta(1).to_complex();
  EXPECT_NEAR(z.real(), std::cos(M_PI / 12), 1e-12);
  EXPECT_NEAR(z.imag(), std::sin(M_PI / 12), 1e-12);
  EXPECT_NEAR(CycNum::sqrt2().to_complex().real(), std::sqrt(2.0), 1e-12);
  auto w = CycNum::omega().to_complex();
  EXPECT_NEAR(w.real(), -0.5, 1e-12);
  EXPECT_NEAR(w.imag(), std::sqrt(3.0) / 2, 1e-12);
}

TEST(CycNum, ExactSignOfRealElements) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    CycNum a = random_cyc(rng);
    CycNum r = a + a.conj();
    double v = r.to_complex().real();
    if (std::abs(v) < 1e-9) continue;
    EXPECT_EQ(r.real_sign(), v > 0 ? 1 : -1) << r;
  }
  // near cancellation: 140/99 approximates sqrt 2 from below
  CycNum d = CycNum::sqrt2() - CycNum(140, 99);
  EXPECT_EQ((CycNum::sqrt2() - CycNum(99, 70)).real_sign(), -1);
  EXPECT_EQ(d.real_sign(), 1);
  CycNum e = CycNum::sqrt3() + CycNum::sqrt2() - CycNum(3146, 1000);
  EXPECT_EQ(e.real_sign(), 1);
  EXPECT_EQ((CycNum(3146, 1000) - CycNum::sqrt3() - CycNum::sqrt2()).real_sign(), -1);
  EXPECT_EQ(CycNum().real_sign(), 0);
  EXPECT_THROW(CycNum::imag_unit().real_sign(), std::invalid_argument);
}

TEST(CycNum, SerializationRoundTrip) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    CycNum a = t % 2 ? random_big(rng) : random_cyc(rng);
    EXPECT_EQ(CycNum::deserialize(a.serialize()), a);
  }
  auto s = CycNum(3, 4).serialize();
  EXPECT_EQ(s[0], "3/4");
  EXPECT_EQ(s[1], "0/1");
}

TEST(Linalg, NullspaceOfRankOneMatrix) {
  ExactMatrix m(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.set(r, c, CycNum(1));
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(m.apply(ns[0]).empty());
  EXPECT_EQ(sv_get(ns[0], 0), -sv_get(ns[0], 1));
}

TEST(Linalg, NullspaceOfZeroMatrix) {
  ExactMatrix m(3, 3);
  EXPECT_EQ(nullspace(m).size(), 3u);
  EXPECT_EQ(rank(m), 0);
}

namespace {

// reference: dense rational Gaussian elimination
int rational_rank(std::vector<std::vector<mpq_class>> a) {
  int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

ExactMatrix random_rational_matrix(std::mt19937_64& rng, int rows, int cols, int rk,
                                   std::vector<std::vector<mpq_class>>* dense) {
  std::uniform_int_distribution<long> d(-3, 3);
  std::vector<std::vector<mpq_class>> l(rows, std::vector<mpq_class>(rk)), r(rk, std::vector<mpq_class>(cols));
  for (auto& row : l)
    for (auto& x : row) x = d(rng);
  for (auto& row : r)
    for (auto& x : row) x = d(rng);
  ExactMatrix m(rows, cols);
  dense->assign(rows, std::vector<mpq_class>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      mpq_class s = 0;
      for (int k = 0; k < rk; ++k) s += l[i][k] * r[k][j];
      (*dense)[i][j] = s;
      m.set(i, j, CycNum(s));
    }
  return m;
}

}  // namespace

TEST(Linalg, RankMatchesRationalOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<mpq_class>> dense;
    ExactMatrix m = random_rational_matrix(rng, 9, 11, 1 + t % 8, &dense);
    int rk = rank(m);
    EXPECT_EQ(rk, rational_rank(dense));
    auto ns = nullspace(m);
    EXPECT_EQ(static_cast<int>(ns.size()), m.cols() - rk);
    for (const auto& x : ns) EXPECT_TRUE(m.apply(x).empty());
    EXPECT_EQ(rank(ns, m.cols()), static_cast<int>(ns.size()));
  }
}

TEST(Linalg, RankInvariantUnderPermutationAndScaling) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<mpq_class>> dense;
    ExactMatrix m = random_rational_matrix(rng, 8, 8, 2 + t % 6, &dense);
    // complex scaling of rows and a column permutation
    std::vector<int> perm(8);
    for (int i = 0; i < 8; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ExactMatrix p(8, 8);
    for (int i = 0; i < 8; ++i) {
      CycNum s = random_cyc(rng);
      if (s.is_zero()) s = CycNum(1);
      for (const auto& [c, v] : m.row(i)) p.set(7 - i, perm[c], v * s);
    }
    EXPECT_EQ(rank(p), rank(m));
  }
}

TEST(Linalg, ExpressInSpan) {
  SparseVec b1 = {{0, CycNum(1)}, {2, CycNum(1)}};
  SparseVec b2 = {{1, CycNum(1)}, {2, CycNum::imag_unit()}};
  SparseVec v = sv_add(b1, sv_scale(b2, CycNum(2)));
  auto c = express_in_span(v, {b1, b2}, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(sv_get(*c, 0), CycNum(1));
  EXPECT_EQ(sv_get(*c, 1), CycNum(2));
  SparseVec w = {{2, CycNum(1)}};
  SparseVec u = sv_sub(w, sv_scale(b1, CycNum(1, 2)));
  EXPECT_FALSE(express_in_span(sv_unit(0), {b2}, 3).has_value());
  EXPECT_FALSE(express_in_span(u, {b2}, 3).has_value());
  EXPECT_THROW(express_in_span(v, {b1, b1}, 3), DependentBasis);
}

TEST(Linalg, InverseAndSemilinearComposition) {
  std::mt19937_64 rng(9);
  int n = 5;
  ExactMatrix a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.set(i, j, random_cyc(rng));
      b.set(i, j, random_cyc(rng));
    }
  SemilinearOp A(a, true), B(b, false);
  DenseVec v(n);
  for (auto& x : v) x = random_cyc(rng);
  EXPECT_EQ((A * B).apply(v), A.apply(B.apply(v)));
  EXPECT_EQ((B * A).apply(v), B.apply(A.apply(v)));
  EXPECT_TRUE((A * B).conjugates_scalars());
  EXPECT_TRUE((A * A.inverse()).is_identity());
  EXPECT_TRUE((A.inverse() * A).is_identity());
  EXPECT_EQ(A.inverse().apply(A.apply(v)), v);
  ExactMatrix s(2, 2);
  s.set(0, 0, CycNum(1));
  s.set(1, 0, CycNum(2));
  EXPECT_THROW(SemilinearOp(s).inverse(), std::domain_error);
}

TEST(Linalg, RealNullspace) {
  // x0 + i x1 = 0 has no nonzero real solution; x0 + x1 = 0 has one
  std::vector<SparseVec> rows = {{{0, CycNum(1)}, {1, CycNum::imag_unit()}}};
  EXPECT_EQ(real_nullspace(rows, 2).size(), 0u);
  rows = {{{0, CycNum::imag_unit()}, {1, CycNum::imag_unit()}}};
  auto ns = real_nullspace(rows, 2);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(sv_is_real(ns[0]));
}
