#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "oscr/cyclotomic.hpp"
#include "oscr/quadratic.hpp"

namespace oscr {

// A representation context: the space L^2(Hom(X -> U)) for X = F_q^n and an
// orthogonal space U of dimension t, with a mass parameter m in F_q^x fixing
// the additive character omega^{(m)}. Basis vectors delta_F are indexed by
// the t x n matrices F, packed row-major base q (entry (i, j) is digit
// i*n + j, least significant first).
struct Context {
  const Fq* F = nullptr;
  int n = 0;
  OrthogonalSpace U;
  int mass = 1;

  Context() = default;
  Context(const Fq& field, int n_, OrthogonalSpace U_, int mass_ = 1)
      : F(&field), n(n_), U(std::move(U_)), mass(mass_) {
    require(n >= 1, "Context: n must be positive");
    require(mass != 0, "Context: mass must be nonzero");
    require(U.F == nullptr || *U.F == field, "Context: U lives over a different field");
    require(pow_capped(field.q, n * U.t, 9000000000000000LL) <= 9000000000000000LL,
            "Context: index space exceeds 2^53");
  }

  int t() const { return U.t; }
  int q() const { return F->q; }
  int p() const { return F->p; }

  std::uint64_t dim() const {
    std::uint64_t d = 1;
    for (int i = 0; i < n * t(); ++i) d *= F->q;
    return d;
  }

  std::uint64_t encode(const MatrixFq& M) const {
    require(M.rows() == t() && M.cols() == n, "Context: operator shape mismatch");
    std::uint64_t idx = 0;
    for (int i = t() - 1; i >= 0; --i)
      for (int j = n - 1; j >= 0; --j) idx = idx * F->q + M.at(i, j);
    return idx;
  }

  MatrixFq decode(std::uint64_t idx) const {
    MatrixFq M(*F, t(), n);
    for (int i = 0; i < t(); ++i)
      for (int j = 0; j < n; ++j) {
        M.at(i, j) = static_cast<int>(idx % F->q);
        idx /= F->q;
      }
    return M;
  }

  // N-weight of the point F: B = 2^{-1} F^T gram F, a symmetric n x n matrix.
  MatrixFq weight_of(const MatrixFq& M) const {
    return (M.transpose() * U.gram * M).scaled(F->half());
  }
  MatrixFq weight_of(std::uint64_t idx) const { return weight_of(decode(idx)); }

  bool operator==(const Context& o) const {
    return *F == *o.F && n == o.n && U.gram == o.U.gram && mass == o.mass;
  }
  bool operator!=(const Context& o) const { return !(*this == o); }
};

// Sparse vector in L^2(Hom(X -> U)) with exact cyclotomic amplitudes.
// Zero amplitudes are pruned on normalize(); all consumers normalize before
// comparing.
struct PsiVector {
  Context ctx;
  std::map<std::uint64_t, CycloNum> amp;

  PsiVector() = default;
  explicit PsiVector(Context c) : ctx(std::move(c)) {}

  static PsiVector delta(const Context& c, std::uint64_t idx) {
    PsiVector v(c);
    v.amp.emplace(idx, CycloNum::one(c.p()));
    return v;
  }

  void add(std::uint64_t idx, const CycloNum& value) {
    auto [it, inserted] = amp.try_emplace(idx, value);
    if (!inserted) it->second += value;
  }

  void normalize() {
    for (auto it = amp.begin(); it != amp.end();)
      it = it->second.is_zero() ? amp.erase(it) : std::next(it);
  }

  bool is_zero() const {
    for (const auto& [_, v] : amp)
      if (!v.is_zero()) return false;
    return true;
  }

  CycloNum at(std::uint64_t idx) const {
    auto it = amp.find(idx);
    return it == amp.end() ? CycloNum() : it->second;
  }

  std::vector<std::uint64_t> support() const {
    std::vector<std::uint64_t> s;
    for (const auto& [k, v] : amp)
      if (!v.is_zero()) s.push_back(k);
    return s;
  }

  PsiVector& operator+=(const PsiVector& o) {
    require(ctx == o.ctx, "PsiVector: context mismatch");
    for (const auto& [k, v] : o.amp) add(k, v);
    return *this;
  }
  PsiVector operator+(const PsiVector& o) const { PsiVector r = *this; r += o; return r; }

  PsiVector& operator-=(const PsiVector& o) {
    require(ctx == o.ctx, "PsiVector: context mismatch");
    for (const auto& [k, v] : o.amp) add(k, -v);
    return *this;
  }
  PsiVector operator-(const PsiVector& o) const { PsiVector r = *this; r -= o; return r; }

  PsiVector operator*(const CycloNum& s) const {
    PsiVector r = *this;
    for (auto& [_, v] : r.amp) v *= s;
    return r;
  }

  bool operator==(const PsiVector& o) const {
    require(ctx == o.ctx, "PsiVector: context mismatch");
    PsiVector d = *this - o;
    return d.is_zero();
  }
  bool operator!=(const PsiVector& o) const { return !(*this == o); }

  // Hermitian inner product <this, o> = sum conj(this_i) * o_i.
  CycloNum inner(const PsiVector& o) const {
    require(ctx == o.ctx, "PsiVector: context mismatch");
    CycloNum s;
    for (const auto& [k, v] : amp) {
      auto it = o.amp.find(k);
      if (it != o.amp.end()) s += v.conj() * it->second;
    }
    return s;
  }

  // Translation by Delta: (tau Phi)(F) = Phi(F - Delta), i.e. delta_F -> delta_{F+Delta}.
  PsiVector translated(const MatrixFq& delta) const {
    PsiVector r(ctx);
    for (const auto& [k, v] : amp) {
      if (v.is_zero()) continue;
      r.add(ctx.encode(ctx.decode(k) + delta), v);
    }
    return r;
  }
};

}  // namespace oscr
