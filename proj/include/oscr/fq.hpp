#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "oscr/check.hpp"

namespace oscr {

// Finite field F_q, q = p^f with p an odd prime and q <= 1000 (table-based
// arithmetic; larger fields are out of policy).
//
// Elements are identified with indices 0..q-1: index i encodes the coefficient
// vector of a polynomial in the generator x, little-endian base p
// (i = c0 + c1*p + ... + c_{f-1}*p^{f-1}). Index 0 is 0, index 1 is 1, and
// the prime subfield occupies indices 0..p-1. This is the fixed enumeration
// order used everywhere (canonical non-square, lexicographic tie-breaks).
class Fq {
 public:
  int p = 0;
  int f = 0;
  int q = 0;
  // Monic modulus, coefficients c[0..f], c[f] = 1. For f = 1 this is {0, 1}
  // (the polynomial x), unused by arithmetic.
  std::vector<int> modulus;

  Fq(int p_, int f_ = 1) : Fq(p_, f_, default_modulus(p_, f_)) {}

  Fq(int p_, int f_, std::vector<int> mod) : p(p_), f(f_), modulus(std::move(mod)) {
    require(p >= 3 && is_prime(p), "Fq: p must be an odd prime");
    require(f >= 1, "Fq: f must be positive");
    long long qq = 1;
    for (int i = 0; i < f; ++i) qq *= p;
    require(qq <= 1000, "Fq: q > 1000 is unsupported by policy");
    q = static_cast<int>(qq);
    require(static_cast<int>(modulus.size()) == f + 1 && modulus[f] == 1,
            "Fq: modulus must be monic of degree f");
    for (int c : modulus) require(0 <= c && c < p, "Fq: modulus coefficients must be reduced mod p");
    if (f > 1) require(is_irreducible(modulus, p), "Fq: modulus is reducible");
    build_tables();
  }

  // --- arithmetic on element indices ---
  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[check(a)]; }
  int inv(int a) const {
    require(a != 0, "Fq: division by zero");
    return inv_[check(a)];
  }
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long e) const {
    check(a);
    if (e < 0) { a = inv(a); e = -e; }
    int r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Integer k reduced into the prime subfield.
  int from_int(long long k) const {
    long long r = k % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
  }

  int half() const { return inv(from_int(2)); }  // 2^{-1}, used by every quadratic phase

  // --- structure ---
  // Legendre symbol extended by legendre(0) = 0; otherwise a^{(q-1)/2} as +-1.
  int legendre(int a) const { return legendre_[check(a)]; }

  // Square class as its canonical representative: 1 for squares, the least
  // non-square for non-squares. Errors on 0.
  int square_class(int a) const {
    require(a != 0, "Fq: square_class of zero");
    return legendre(a) == 1 ? 1 : canonical_nonsquare_;
  }

  int canonical_nonsquare() const { return canonical_nonsquare_; }

  // Trace to the prime subfield, returned as an integer in 0..p-1.
  int trace(int a) const { return trace_[check(a)]; }

  std::optional<int> sqrt(int a) const {  // least r with r*r = a
    check(a);
    return sqrt_[a] < 0 ? std::nullopt : std::optional<int>(sqrt_[a]);
  }

  int primitive_element() const { return primitive_; }

  // Coefficient vector of element a (little-endian, length f).
  std::vector<int> coeffs(int a) const {
    check(a);
    std::vector<int> c(f);
    for (int i = 0; i < f; ++i) { c[i] = a % p; a /= p; }
    return c;
  }

  int from_coeffs(const std::vector<int>& c) const {
    require(static_cast<int>(c.size()) <= f, "Fq: too many coefficients");
    int a = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      require(0 <= c[i] && c[i] < p, "Fq: coefficient out of range");
      a = a * p + c[i];
    }
    return a;
  }

  bool operator==(const Fq& o) const { return p == o.p && f == o.f && modulus == o.modulus; }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  // First irreducible monic degree-f polynomial in enumeration order
  // (constant coefficient varies fastest).
  static std::vector<int> default_modulus(int p, int f) {
    if (f == 1) return {0, 1};
    long long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      std::vector<int> mod(f + 1);
      long long c = code;
      for (int i = 0; i < f; ++i) { mod[i] = static_cast<int>(c % p); c /= p; }
      mod[f] = 1;
      if (is_irreducible(mod, p)) return mod;
    }
    fail("Fq: no irreducible modulus found");
  }

  // Trial division against all monic polynomials of degree 1..deg/2.
  static bool is_irreducible(const std::vector<int>& mod, int p) {
    int deg = static_cast<int>(mod.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
      long long count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      for (long long code = 0; code < count; ++code) {
        std::vector<int> div(d + 1);
        long long c = code;
        for (int i = 0; i < d; ++i) { div[i] = static_cast<int>(c % p); c /= p; }
        div[d] = 1;
        if (poly_divides(div, mod, p)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<int> add_, mul_, neg_, inv_, legendre_, trace_, sqrt_;
  int canonical_nonsquare_ = 0;
  int primitive_ = 0;

  int check(int a) const {
    require(0 <= a && a < q, "Fq: element index out of range");
    return a;
  }
  size_t idx(int a, int b) const { return static_cast<size_t>(check(a)) * q + check(b); }

  static bool poly_divides(const std::vector<int>& div, std::vector<int> rem, int p) {
    int dd = static_cast<int>(div.size()) - 1;
    for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
      int c = rem[k] % p;
      if (c == 0) continue;
      for (int i = 0; i <= dd; ++i)
        rem[k - dd + i] = ((rem[k - dd + i] - c * div[i]) % p + p * p) % p;
    }
    for (int i = 0; i < dd; ++i)
      if (rem[i] % p != 0) return false;
    return true;
  }

  void build_tables() {
    // Polynomial arithmetic on coefficient vectors, then frozen into tables.
    auto to_poly = [&](int a) {
      std::vector<int> c(f);
      for (int i = 0; i < f; ++i) { c[i] = a % p; a /= p; }
      return c;
    };
    auto from_poly = [&](const std::vector<int>& c) {
      int a = 0;
      for (int i = f - 1; i >= 0; --i) a = a * p + c[i];
      return a;
    };
    auto poly_mul = [&](const std::vector<int>& x, const std::vector<int>& y) {
      std::vector<int> prod(2 * f - 1, 0);
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
      for (int k = 2 * f - 2; k >= f; --k) {
        int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < f; ++i)
          prod[k - f + i] = ((prod[k - f + i] - c * modulus[i]) % p + p * p) % p;
      }
      prod.resize(f);
      return prod;
    };

    add_.resize(static_cast<size_t>(q) * q);
    mul_.resize(static_cast<size_t>(q) * q);
    neg_.resize(q);
    for (int a = 0; a < q; ++a) {
      auto pa = to_poly(a);
      std::vector<int> na(f);
      for (int i = 0; i < f; ++i) na[i] = (p - pa[i]) % p;
      neg_[a] = from_poly(na);
      for (int b = 0; b < q; ++b) {
        auto pb = to_poly(b);
        std::vector<int> s(f);
        for (int i = 0; i < f; ++i) s[i] = (pa[i] + pb[i]) % p;
        add_[static_cast<size_t>(a) * q + b] = from_poly(s);
        mul_[static_cast<size_t>(a) * q + b] = from_poly(poly_mul(pa, pb));
      }
    }

    inv_.assign(q, 0);
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (mul(a, b) == 1) { inv_[a] = b; break; }

    legendre_.assign(q, 0);
    for (int a = 1; a < q; ++a) legendre_[a] = pow(a, (q - 1) / 2) == 1 ? 1 : -1;
    canonical_nonsquare_ = 0;
    for (int a = 1; a < q; ++a)
      if (legendre_[a] == -1) { canonical_nonsquare_ = a; break; }

    sqrt_.assign(q, -1);
    for (int r = q - 1; r >= 0; --r) sqrt_[mul(r, r)] = r;  // descending: keeps the least root

    trace_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
      int s = 0, t = a;
      for (int i = 0; i < f; ++i) { s = add(s, t); t = pow(t, p); }
      require(s < p, "Fq: trace left the prime subfield");
      trace_[a] = s;
    }

    for (int g = 2; g < q; ++g) {
      int ord = 1, t = g;
      while (t != 1) { t = mul(t, g); ++ord; }
      if (ord == q - 1) { primitive_ = g; break; }
    }
    require(primitive_ != 0, "Fq: no primitive element");
  }
};

// A field element bound to its field; convenience value type for call sites
// that manipulate individual scalars.
struct FqElem {
  const Fq* F = nullptr;
  int v = 0;

  FqElem() = default;
  FqElem(const Fq& field, int value) : F(&field), v(value) {
    require(0 <= v && v < F->q, "FqElem: value out of range");
  }

  FqElem operator+(const FqElem& o) const { return same(o), FqElem(*F, F->add(v, o.v)); }
  FqElem operator-(const FqElem& o) const { return same(o), FqElem(*F, F->sub(v, o.v)); }
  FqElem operator*(const FqElem& o) const { return same(o), FqElem(*F, F->mul(v, o.v)); }
  FqElem operator/(const FqElem& o) const { return same(o), FqElem(*F, F->div(v, o.v)); }
  FqElem operator-() const { return FqElem(*F, F->neg(v)); }
  bool operator==(const FqElem& o) const { return same(o), v == o.v; }
  bool is_zero() const { return v == 0; }

  int legendre() const { return F->legendre(v); }
  int trace() const { return F->trace(v); }

 private:
  bool same(const FqElem& o) const {
    require(F && o.F && *F == *o.F, "FqElem: mixed fields");
    return true;
  }
};

}  // namespace oscr
