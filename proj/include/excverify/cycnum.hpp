#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace excv {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero in Q(zeta24)") {}
};

// Element of Q(zeta), zeta a primitive 24th root of unity, stored as
// (n_0 + n_1 zeta + ... + n_7 zeta^7) / d with gcd(n_0..n_7, d) = 1, d > 0.
// Reduction uses zeta^8 = zeta^4 - 1.  Values whose parts fit in 62 bits are
// kept inline; larger ones spill to GMP integers.
class CycNum {
 public:
  static constexpr int kDegree = 8;

  CycNum() = default;
  CycNum(long long v);  // NOLINT(google-explicit-constructor)
  CycNum(long long p, long long q);
  explicit CycNum(const mpq_class& q);

  static CycNum from_coeffs(const std::array<mpq_class, kDegree>& c);
  static CycNum zeta(long long k);
  static CycNum imag_unit();  // zeta^6
  static CycNum sqrt2();      // zeta^3 + zeta^21
  static CycNum sqrt3();      // zeta^2 + zeta^22
  static CycNum omega();      // zeta^8
  static CycNum zeta8();      // zeta^3

  mpq_class coeff(int k) const;
  std::array<mpq_class, kDegree> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  bool is_real() const { return conj() == *this; }
  // nonzero only in one coefficient
  bool is_monomial() const;

  CycNum conj() const { return galois(23); }
  CycNum galois(int k) const;
  CycNum inv() const;
  std::optional<CycNum> try_div(const CycNum& b) const;

  // exact sign of a real element; throws std::invalid_argument if not real
  int real_sign() const;
  std::complex<double> to_complex() const;
  // rough bit size used by pivot heuristics
  std::size_t height() const;

  std::array<std::string, kDegree> serialize() const;
  static CycNum deserialize(const std::array<std::string, kDegree>& s);
  std::string str() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
  CycNum& operator/=(const CycNum& b) { return *this = *this / b; }

  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  struct Big {
    std::array<mpz_class, kDegree> num;
    mpz_class den;
  };

 private:
  std::array<int64_t, kDegree> num_{};
  int64_t den_ = 1;
  std::shared_ptr<const Big> big_;

  Big to_big() const;
  static CycNum from_big(Big b);
  static CycNum from_wide(const __int128* num, __int128 den);
  CycNum scale_rational(const CycNum& q) const;
};

std::ostream& operator<<(std::ostream& os, const CycNum& z);

}  // namespace excv
