#pragma once

#include <string>
#include <vector>

#include "oscr/check.hpp"
#include "oscr/fq.hpp"
#include "oscr/rational.hpp"

namespace oscr {

// Element of the cyclotomic field Q(zeta_p), zeta_p a primitive p-th root of
// unity, stored exactly as rational coordinates in the power basis
// {1, zeta, ..., zeta^{p-2}}. Coordinates are unique, so equality is
// coefficient-wise. A default-constructed value (p = 0) is the zero of any
// field; mixing two nonzero values with different p is an error.
class CycloNum {
 public:
  CycloNum() = default;

  explicit CycloNum(int p) : p_(p), c_(check_p(p) - 1) {}

  CycloNum(int p, const Rational& r) : CycloNum(p) { c_[0] = r; }

  static CycloNum zero(int p) { return CycloNum(p); }
  static CycloNum one(int p) { return CycloNum(p, Rational(1)); }

  static CycloNum from_coeffs(int p, std::vector<Rational> coeffs) {
    CycloNum z(p);
    require(coeffs.size() == static_cast<size_t>(p - 1), "CycloNum: need p-1 coefficients");
    z.c_ = std::move(coeffs);
    return z;
  }

  // zeta^k; k = p-1 folds back through zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
  static CycloNum zeta_pow(int p, long long k) {
    CycloNum z(p);
    long long e = k % p;
    if (e < 0) e += p;
    if (e < p - 1) {
      z.c_[e] = 1;
    } else {
      for (auto& c : z.c_) c = -1;
    }
    return z;
  }

  int p() const { return p_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational rational_part() const {
    require(is_rational(), "CycloNum: not rational");
    return p_ == 0 ? Rational(0) : c_[0];
  }

  bool operator==(const CycloNum& o) const {
    if (p_ == 0 || o.p_ == 0) return is_zero() && o.is_zero();
    require(p_ == o.p_, "CycloNum: mixed cyclotomic fields");
    return c_ == o.c_;
  }
  bool operator!=(const CycloNum& o) const { return !(*this == o); }

  CycloNum& operator+=(const CycloNum& o) {
    if (o.p_ == 0) return *this;
    if (p_ == 0) { *this = o; return *this; }
    require(p_ == o.p_, "CycloNum: mixed cyclotomic fields");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  CycloNum& operator-=(const CycloNum& o) {
    if (o.p_ == 0) return *this;
    if (p_ == 0) *this = zero(o.p_);
    require(p_ == o.p_, "CycloNum: mixed cyclotomic fields");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  CycloNum operator+(const CycloNum& o) const { CycloNum r = *this; r += o; return r; }
  CycloNum operator-(const CycloNum& o) const { CycloNum r = *this; r -= o; return r; }

  CycloNum operator-() const {
    CycloNum r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  CycloNum& operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  CycloNum operator*(const Rational& s) const { CycloNum r = *this; r *= s; return r; }

  CycloNum operator*(const CycloNum& o) const {
    if (p_ == 0 || o.p_ == 0) return CycloNum();
    require(p_ == o.p_, "CycloNum: mixed cyclotomic fields");
    // Convolve in exponent space Z/p (zeta^p = 1), then eliminate slot p-1.
    std::vector<Rational> acc(p_);
    for (int i = 0; i < p_ - 1; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < p_ - 1; ++j) {
        if (o.c_[j] == 0) continue;
        acc[(i + j) % p_] += c_[i] * o.c_[j];
      }
    }
    return fold(p_, std::move(acc));
  }
  CycloNum& operator*=(const CycloNum& o) { *this = *this * o; return *this; }

  // this += o * zeta^k. The workhorse of Fourier passes: no rational
  // multiplications, only additions.
  void add_rotated(const CycloNum& o, long long k) {
    if (o.p_ == 0) return;
    if (p_ == 0) *this = zero(o.p_);
    require(p_ == o.p_, "CycloNum: mixed cyclotomic fields");
    long long s = k % p_;
    if (s < 0) s += p_;
    for (int i = 0; i < p_ - 1; ++i) {
      if (o.c_[i] == 0) continue;
      long long e = (i + s) % p_;
      if (e < p_ - 1) {
        c_[e] += o.c_[i];
      } else {
        for (auto& c : c_) c -= o.c_[i];
      }
    }
  }

  CycloNum mul_zeta_pow(long long k) const {
    CycloNum r = p_ ? zero(p_) : CycloNum();
    r.add_rotated(*this, k);
    return r;
  }

  // Complex conjugation: zeta -> zeta^{-1}.
  CycloNum conj() const {
    if (p_ == 0) return *this;
    std::vector<Rational> acc(p_);
    for (int i = 0; i < p_ - 1; ++i) acc[(p_ - i) % p_] = c_[i];
    return fold(p_, std::move(acc));
  }

  // Multiplicative inverse via the extended gcd of the coefficient polynomial
  // with the p-th cyclotomic polynomial 1 + x + ... + x^{p-1}.
  CycloNum invert() const {
    require(p_ != 0 && !is_zero(), "CycloNum: inverse of zero");
    using Poly = std::vector<Rational>;  // dense, index = degree
    auto deg = [](const Poly& a) {
      for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
        if (a[d] != 0) return d;
      return -1;
    };
    Poly r0(p_, Rational(1));            // Phi_p
    Poly r1(c_.begin(), c_.end());       // this, degree <= p-2
    Poly s0{Rational(0)}, s1{Rational(1)};
    while (deg(r1) > 0) {
      // r0 = q*r1 + r2
      Poly q(static_cast<size_t>(deg(r0) - deg(r1) + 1));
      Poly r2 = r0;
      while (deg(r2) >= deg(r1)) {
        int sh = deg(r2) - deg(r1);
        Rational c = r2[deg(r2)] / r1[deg(r1)];
        q[sh] += c;
        for (int i = 0; i <= deg(r1); ++i) r2[i + sh] -= c * r1[i];
      }
      Poly s2 = s0;
      s2.resize(std::max(s2.size(), q.size() + s1.size()), Rational(0));
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
      }
      r0 = std::move(r1); r1 = std::move(r2);
      s0 = std::move(s1); s1 = std::move(s2);
    }
    require(deg(r1) == 0, "CycloNum: element not invertible");  // gcd must be a unit
    Rational g = r1[0];
    std::vector<Rational> acc(p_);
    for (size_t i = 0; i < s1.size(); ++i) acc[i % p_] += s1[i] / g;
    return fold(p_, std::move(acc));
  }

  CycloNum operator/(const CycloNum& o) const { return *this * o.invert(); }

  std::string to_string() const {
    if (p_ == 0) return "0";
    std::string s;
    for (int i = 0; i < p_ - 1; ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rational_to_string(c_[i]);
      if (i > 0) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  int p_ = 0;
  std::vector<Rational> c_;

  static int check_p(int p) {
    require(p >= 3 && Fq::is_prime(p), "CycloNum: p must be an odd prime");
    return p;
  }

  // Coordinates on exponents 0..p-1 -> power basis, using
  // zeta^{p-1} = -(1 + ... + zeta^{p-2}).
  static CycloNum fold(int p, std::vector<Rational> acc) {
    CycloNum z(p);
    for (int i = 0; i < p - 1; ++i) z.c_[i] = acc[i] - acc[p - 1];
    return z;
  }
};

inline CycloNum operator*(const Rational& s, const CycloNum& z) { return z * s; }

// The additive character omega^{(m)}(lam) = zeta_p^{Tr(m*lam)} of F_q.
// The mass m parametrizes the character; m = 0 would collapse it and is
// rejected.
inline CycloNum omega(const Fq& F, int mass, int lam) {
  require(mass != 0, "omega: mass must be nonzero");
  return CycloNum::zeta_pow(F.p, F.trace(F.mul(mass, lam)));
}

}  // namespace oscr
