#include "excverify/cycnum.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace excv {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr int64_t kLimit = int64_t{1} << 62;

bool fits(i128 v) { return v < kLimit && v > -kLimit; }

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// zeta^m for m = 0..23 in the power basis
struct ZetaTable {
  int c[24][8]{};
  ZetaTable() {
    c[0][0] = 1;
    for (int m = 1; m < 24; ++m) {
      int carry = c[m - 1][7];
      for (int k = 7; k > 0; --k) c[m][k] = c[m - 1][k - 1];
      c[m][0] = 0;
      // carry * zeta^8 = carry * (zeta^4 - 1)
      c[m][4] += carry;
      c[m][0] -= carry;
    }
  }
};

const ZetaTable& zt() {
  static const ZetaTable t;
  return t;
}

int mod24(long long k) { return static_cast<int>(((k % 24) + 24) % 24); }

}  // namespace

CycNum::CycNum(long long v) {
  if (fits(v)) {
    num_[0] = v;
  } else {
    Big b;
    b.num[0] = mpz_from(v);
    b.den = 1;
    big_ = std::make_shared<const Big>(std::move(b));
  }
}

CycNum::CycNum(long long p, long long q) {
  if (q == 0) throw DivisionByZero();
  i128 n[8] = {p, 0, 0, 0, 0, 0, 0, 0};
  *this = from_wide(n, q);
}

CycNum::CycNum(const mpq_class& q) {
  Big b;
  b.num[0] = q.get_num();
  b.den = q.get_den();
  *this = from_big(std::move(b));
}

CycNum CycNum::from_coeffs(const std::array<mpq_class, kDegree>& c) {
  Big b;
  b.den = 1;
  for (const auto& q : c) b.den = lcm(b.den, mpz_class(q.get_den()));
  for (int k = 0; k < kDegree; ++k) b.num[k] = c[k].get_num() * (b.den / c[k].get_den());
  return from_big(std::move(b));
}

CycNum CycNum::from_wide(const i128* num, i128 den) {
  if (den == 0) throw DivisionByZero();
  i128 n[8];
  for (int k = 0; k < 8; ++k) n[k] = num[k];
  if (den < 0) {
    for (auto& x : n) x = -x;
    den = -den;
  }
  bool all_zero = true;
  for (auto x : n) all_zero = all_zero && x == 0;
  if (all_zero) return CycNum();
  if (den != 1) {
    u128 g = uabs(den);
    for (auto x : n) {
      if (g == 1) break;
      if (x != 0) g = gcd128(g, uabs(x));
    }
    if (g > 1) {
      for (auto& x : n) x /= i128(g);
      den /= i128(g);
    }
  }
  bool ok = fits(den);
  for (auto x : n) ok = ok && fits(x);
  CycNum r;
  if (ok) {
    for (int k = 0; k < 8; ++k) r.num_[k] = static_cast<int64_t>(n[k]);
    r.den_ = static_cast<int64_t>(den);
    return r;
  }
  Big b;
  for (int k = 0; k < 8; ++k) b.num[k] = mpz_from(n[k]);
  b.den = mpz_from(den);
  r.big_ = std::make_shared<const Big>(std::move(b));
  r.den_ = 0;
  return r;
}

CycNum CycNum::from_big(Big b) {
  if (b.den == 0) throw DivisionByZero();
  if (b.den < 0) {
    for (auto& x : b.num) x = -x;
    b.den = -b.den;
  }
  mpz_class g = b.den;
  bool all_zero = true;
  for (const auto& x : b.num) {
    if (x != 0) {
      all_zero = false;
      g = gcd(g, x);
    }
  }
  if (all_zero) return CycNum();
  if (g != 1) {
    for (auto& x : b.num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.den.get_mpz_t(), b.den.get_mpz_t(), g.get_mpz_t());
  }
  auto small = [](const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) < 62; };
  bool ok = small(b.den);
  for (const auto& x : b.num) ok = ok && small(x);
  CycNum r;
  if (ok) {
    for (int k = 0; k < 8; ++k) r.num_[k] = b.num[k].get_si();
    r.den_ = b.den.get_si();
    return r;
  }
  r.den_ = 0;
  r.big_ = std::make_shared<const Big>(std::move(b));
  return r;
}

CycNum::Big CycNum::to_big() const {
  if (big_) return *big_;
  Big b;
  for (int k = 0; k < 8; ++k) b.num[k] = static_cast<long>(num_[k]);
  b.den = static_cast<long>(den_);
  return b;
}

CycNum CycNum::zeta(long long k) {
  const auto& t = zt();
  int m = mod24(k);
  CycNum r;
  for (int j = 0; j < 8; ++j) r.num_[j] = t.c[m][j];
  return r;
}

CycNum CycNum::imag_unit() { return zeta(6); }
CycNum CycNum::sqrt2() { return zeta(3) + zeta(21); }
CycNum CycNum::sqrt3() { return zeta(2) + zeta(22); }
CycNum CycNum::omega() { return zeta(8); }
CycNum CycNum::zeta8() { return zeta(3); }

mpq_class CycNum::coeff(int k) const {
  mpq_class q;
  if (big_) {
    q = mpq_class(big_->num[k], big_->den);
  } else {
    q = mpq_class(mpz_class(static_cast<long>(num_[k])), mpz_class(static_cast<long>(den_)));
  }
  q.canonicalize();
  return q;
}

std::array<mpq_class, CycNum::kDegree> CycNum::coeffs() const {
  std::array<mpq_class, kDegree> c;
  for (int k = 0; k < kDegree; ++k) c[k] = coeff(k);
  return c;
}

bool CycNum::is_zero() const {
  if (big_) return false;
  for (auto x : num_)
    if (x != 0) return false;
  return true;
}

bool CycNum::is_one() const {
  if (big_) return false;
  if (num_[0] != den_) return false;
  for (int k = 1; k < 8; ++k)
    if (num_[k] != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (int k = 1; k < 8; ++k) {
    if (big_ ? big_->num[k] != 0 : num_[k] != 0) return false;
  }
  return true;
}

bool CycNum::is_monomial() const {
  int nz = 0;
  for (int k = 0; k < 8; ++k) nz += big_ ? (big_->num[k] != 0) : (num_[k] != 0);
  return nz == 1;
}

CycNum CycNum::galois(int k) const {
  if (mod24(k) % 2 == 0 || mod24(k) % 3 == 0) throw std::invalid_argument("not a Galois exponent");
  const auto& t = zt();
  if (!big_) {
    i128 n[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (int j = 0; j < 8; ++j) {
      if (num_[j] == 0) continue;
      const int* z = t.c[mod24(static_cast<long long>(j) * k)];
      for (int m = 0; m < 8; ++m) n[m] += i128(num_[j]) * z[m];
    }
    return from_wide(n, den_);
  }
  Big b;
  b.den = big_->den;
  for (int j = 0; j < 8; ++j) {
    if (big_->num[j] == 0) continue;
    const int* z = t.c[mod24(static_cast<long long>(j) * k)];
    for (int m = 0; m < 8; ++m)
      if (z[m] != 0) b.num[m] += big_->num[j] * z[m];
  }
  return from_big(std::move(b));
}

CycNum CycNum::operator-() const {
  if (big_) {
    Big b = *big_;
    for (auto& x : b.num) x = -x;
    CycNum r;
    r.den_ = 0;
    r.big_ = std::make_shared<const Big>(std::move(b));
    return r;
  }
  CycNum r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (!a.big_ && !b.big_) {
    i128 n[8];
    i128 den;
    if (a.den_ == b.den_) {
      for (int k = 0; k < 8; ++k) n[k] = i128(a.num_[k]) + b.num_[k];
      den = a.den_;
    } else {
      int64_t g = static_cast<int64_t>(gcd128(u128(a.den_), u128(b.den_)));
      int64_t m1 = b.den_ / g, m2 = a.den_ / g;
      for (int k = 0; k < 8; ++k) n[k] = i128(a.num_[k]) * m1 + i128(b.num_[k]) * m2;
      den = i128(a.den_) * m1;
    }
    return CycNum::from_wide(n, den);
  }
  CycNum::Big x = a.to_big(), y = b.to_big();
  CycNum::Big r;
  r.den = x.den * y.den;
  for (int k = 0; k < 8; ++k) r.num[k] = x.num[k] * y.den + y.num[k] * x.den;
  return CycNum::from_big(std::move(r));
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.is_zero() || b.is_zero()) return CycNum();
  if (!a.big_ && !b.big_) {
    i128 t[15] = {};
    bool ovf = false;
    for (int i = 0; i < 8; ++i) {
      if (a.num_[i] == 0) continue;
      for (int j = 0; j < 8; ++j) {
        if (b.num_[j] == 0) continue;
        i128 p = i128(a.num_[i]) * b.num_[j];
        ovf |= __builtin_add_overflow(t[i + j], p, &t[i + j]);
      }
    }
    for (int k = 14; k >= 8; --k) {
      if (t[k] == 0) continue;
      ovf |= __builtin_add_overflow(t[k - 4], t[k], &t[k - 4]);
      ovf |= __builtin_sub_overflow(t[k - 8], t[k], &t[k - 8]);
    }
    if (!ovf) return CycNum::from_wide(t, i128(a.den_) * b.den_);
  }
  CycNum::Big x = a.to_big(), y = b.to_big();
  mpz_class t[15];
  for (int i = 0; i < 8; ++i) {
    if (x.num[i] == 0) continue;
    for (int j = 0; j < 8; ++j) {
      if (y.num[j] == 0) continue;
      t[i + j] += x.num[i] * y.num[j];
    }
  }
  for (int k = 14; k >= 8; --k) {
    if (t[k] == 0) continue;
    t[k - 4] += t[k];
    t[k - 8] -= t[k];
  }
  CycNum::Big r;
  for (int k = 0; k < 8; ++k) r.num[k] = t[k];
  r.den = x.den * y.den;
  return CycNum::from_big(std::move(r));
}

CycNum CycNum::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (is_monomial()) {
    int k = 0;
    while (big_ ? big_->num[k] == 0 : num_[k] == 0) ++k;
    mpq_class c = coeff(k);
    return CycNum(mpq_class(1 / c)) * zeta(24 - k);
  }
  CycNum p(1);
  for (int k : {5, 7, 11, 13, 17, 19, 23}) p *= galois(k);
  CycNum n = *this * p;
  if (!n.is_rational()) throw std::logic_error("norm is not rational");
  return p * CycNum(mpq_class(1 / n.coeff(0)));
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

std::optional<CycNum> CycNum::try_div(const CycNum& b) const {
  if (b.is_zero()) return std::nullopt;
  return *this / b;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;
    return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

namespace {

int sign_q2(const mpq_class& u, const mpq_class& v) {
  int su = sgn(u), sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return su == 0 ? sv : su;
  mpq_class d = u * u - 2 * v * v;
  return sgn(d) > 0 ? su : sv;
}

}  // namespace

int CycNum::real_sign() const {
  if (is_zero()) return 0;
  auto c = coeffs();
  // z = a + b sqrt2 + s sqrt3 + d sqrt6 with
  // sqrt2 = z + z^3 - z^5, sqrt3 = 2z^2 - z^6, sqrt6 = z + z^3 + z^5 - 2z^7
  mpq_class d = -c[7] / 2;
  mpq_class b = c[1] - d;
  mpq_class s = c[2] / 2;
  mpq_class a = c[0];
  bool ok = c[3] == b + d && c[5] == d - b && c[6] == -s && c[4] == 0;
  if (!ok) throw std::invalid_argument("real_sign of a non-real number");
  // p + q sqrt3 with p = a + b sqrt2, q = s + d sqrt2
  int sp = sign_q2(a, b), sq = sign_q2(s, d);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sp == 0 ? sq : sp;
  mpq_class wu = a * a + 2 * b * b - 3 * (s * s + 2 * d * d);
  mpq_class wv = 2 * a * b - 6 * s * d;
  return sign_q2(wu, wv) > 0 ? sp : sq;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> z = 0;
  for (int k = 0; k < 8; ++k) {
    double c = coeff(k).get_d();
    double ang = 2 * std::numbers::pi * k / 24.0;
    z += c * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::size_t CycNum::height() const {
  if (big_) {
    std::size_t h = mpz_sizeinbase(big_->den.get_mpz_t(), 2);
    for (const auto& x : big_->num) h = std::max(h, mpz_sizeinbase(x.get_mpz_t(), 2));
    return h;
  }
  auto bits = [](int64_t v) -> std::size_t {
    uint64_t u = v < 0 ? uint64_t(-v) : uint64_t(v);
    return u == 0 ? 0 : 64 - __builtin_clzll(u);
  };
  std::size_t h = bits(den_);
  for (auto x : num_) h = std::max(h, bits(x));
  return h;
}

std::array<std::string, CycNum::kDegree> CycNum::serialize() const {
  std::array<std::string, kDegree> s;
  for (int k = 0; k < kDegree; ++k) {
    mpq_class q = coeff(k);
    s[k] = q.get_num().get_str() + "/" + q.get_den().get_str();
  }
  return s;
}

CycNum CycNum::deserialize(const std::array<std::string, kDegree>& s) {
  std::array<mpq_class, kDegree> c;
  for (int k = 0; k < kDegree; ++k) {
    c[k].set_str(s[k], 10);
    if (c[k].get_den() == 0) throw DivisionByZero();
    c[k].canonicalize();
  }
  return from_coeffs(c);
}

std::string CycNum::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < kDegree; ++k) {
    mpq_class q = coeff(k);
    if (q == 0) continue;
    if (!first) os << (q > 0 ? " + " : " - ");
    else if (q < 0) os << "-";
    mpq_class aq = abs(q);
    if (k == 0) os << aq.get_str();
    else {
      if (aq != 1) os << aq.get_str() << "*";
      os << "z^" << k;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& z) { return os << z.str(); }

}  // namespace excv
