#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "oscr/cyclospace.hpp"
#include "oscr/psi.hpp"

namespace oscr {

// Generator of Sp(V), V = X + X* of dimension 2n, in one of the three
// standard families (n x n blocks):
//   UpperUnipotent(A): [[1, A], [0, 1]],     A symmetric
//   Fourier(B):        [[0, B], [-B^-1, 0]], B symmetric invertible
//   Diagonal(C):       [[C, 0], [0, C^-T]],  C invertible
struct SympGenerator {
  enum class Kind { UpperUnipotent, Fourier, Diagonal };
  Kind kind;
  MatrixFq M;

  static SympGenerator upper_unipotent(MatrixFq A) {
    require(A.is_symmetric(), "UpperUnipotent: A must be symmetric");
    return {Kind::UpperUnipotent, std::move(A)};
  }
  static SympGenerator fourier(MatrixFq B) {
    require(B.is_symmetric(), "Fourier: B must be symmetric");
    require(B.det() != 0, "Fourier: B must be invertible");
    return {Kind::Fourier, std::move(B)};
  }
  static SympGenerator diagonal(MatrixFq C) {
    require(C.rows() == C.cols() && C.det() != 0, "Diagonal: C must be invertible");
    return {Kind::Diagonal, std::move(C)};
  }

  SympGenerator inverse() const {
    switch (kind) {
      case Kind::UpperUnipotent: return upper_unipotent(M.negated());
      case Kind::Fourier: return fourier(M.negated());
      default: return diagonal(M.inverse());
    }
  }

  MatrixFq symplectic_matrix() const {
    const Fq& F = M.field();
    int n = M.rows();
    MatrixFq S(F, 2 * n, 2 * n);
    auto put = [&](int bi, int bj, const MatrixFq& blk) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S.at(bi * n + i, bj * n + j) = blk.at(i, j);
    };
    switch (kind) {
      case Kind::UpperUnipotent:
        put(0, 0, MatrixFq::identity(F, n));
        put(0, 1, M);
        put(1, 1, MatrixFq::identity(F, n));
        break;
      case Kind::Fourier:
        put(0, 1, M);
        put(1, 0, M.inverse().negated());
        break;
      case Kind::Diagonal:
        put(0, 0, M);
        put(1, 1, M.inverse_transpose());
        break;
    }
    return S;
  }
};

using GeneratorWord = std::vector<SympGenerator>;

// Product of the generators' matrices, in word order: the word [g1, ..., gk]
// stands for g1 * g2 * ... * gk, and its operator acts as
// mu(g1) mu(g2) ... mu(gk).
inline MatrixFq word_matrix(const Fq& F, int n, const GeneratorWord& w) {
  MatrixFq S = MatrixFq::identity(F, 2 * n);
  for (const auto& g : w) S = S * g.symplectic_matrix();
  return S;
}

inline GeneratorWord word_inverse(const GeneratorWord& w) {
  GeneratorWord inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(it->inverse());
  return inv;
}

namespace detail {

// One Fourier pass over column j of the index matrices, kernel
// omega^{(mass)}(d * c'^T G c), prefactor gamma^{-1} of the corresponding
// diagonal block. Input amplitudes are consumed sparsely.
inline PsiVector fourier_column_pass(const PsiVector& v, int j, int d) {
  const Context& ctx = v.ctx;
  const Fq& F = *ctx.F;
  int t = ctx.t();
  std::uint64_t qt = 1;
  for (int i = 0; i < t; ++i) qt *= F.q;

  // Exponent table: T[c' * qt + c] = Tr(mass * d * c'^T G c).
  std::vector<int> cols(qt * static_cast<size_t>(t));
  {
    std::vector<int> c(t, 0);
    for (std::uint64_t idx = 0; idx < qt; ++idx) {
      for (int i = 0; i < t; ++i) cols[idx * t + i] = c[i];
      int i = 0;
      while (i < t && ++c[i] == F.q) c[i++] = 0;
    }
  }
  int md = F.mul(F.from_int(ctx.mass), d);
  std::vector<int> table(qt * qt);
  for (std::uint64_t a = 0; a < qt; ++a) {
    std::vector<int> ca(cols.begin() + a * t, cols.begin() + (a + 1) * t);
    auto Gc = ctx.U.gram.mul_vec(ca);
    for (std::uint64_t b = 0; b < qt; ++b) {
      int s = 0;
      for (int i = 0; i < t; ++i) s = F.add(s, F.mul(cols[b * t + i], Gc[i]));
      table[b * qt + a] = F.trace(F.mul(md, s));
    }
  }

  // Place values of column j and the stride between its digits.
  std::vector<std::uint64_t> place(t);
  {
    std::uint64_t pw = 1;
    for (int pos = 0; pos < t * ctx.n; ++pos) {
      int i = pos / ctx.n, jj = pos % ctx.n;
      if (jj == j) place[i] = pw;
      pw *= F.q;
    }
  }
  auto col_code = [&](std::uint64_t idx) {
    std::uint64_t code = 0, pw = 1;
    for (int i = 0; i < t; ++i) {
      code += ((idx / place[i]) % F.q) * pw;
      pw *= F.q;
    }
    return code;
  };
  auto col_offset = [&](std::uint64_t code) {
    std::uint64_t off = 0;
    for (int i = 0; i < t; ++i) {
      off += (code % F.q) * place[i];
      code /= F.q;
    }
    return off;
  };
  std::vector<std::uint64_t> offsets(qt);
  for (std::uint64_t c = 0; c < qt; ++c) offsets[c] = col_offset(c);

  PsiVector out(ctx);
  for (const auto& [idx, a] : v.amp) {
    if (a.is_zero()) continue;
    std::uint64_t cin = col_code(idx);
    std::uint64_t base = idx - offsets[cin];
    for (std::uint64_t cout = 0; cout < qt; ++cout) {
      auto [it, inserted] = out.amp.try_emplace(base + offsets[cout], CycloNum::zero(F.p));
      it->second.add_rotated(a, table[cout * qt + cin]);
    }
  }
  CycloNum gamma_inv = gauss_sum(ctx.U.gram.scaled(d), ctx.mass).invert();
  for (auto& [_, val] : out.amp) val *= gamma_inv;
  out.normalize();
  return out;
}

}  // namespace detail

// mu(g) Phi for the embedded generator 1 (x) g acting on L^2(Hom(X -> U)):
//   UpperUnipotent(A): delta_F -> omega(2^{-1} tr(F^T gram F A)) delta_F
//   Diagonal(C):       delta_F -> legendre(det C)^t delta_{F C^{-1}}
//   Fourier(B):        delta_F -> gamma^{-1} sum_F' omega(tr(F'^T gram F B)) delta_{F'}
// Fourier is applied through the congruence diagonalization P^T B P = D:
// J_B = D_{P^-T} J_D D_{P^T}, and J_D splits into one pass per X-coordinate.
inline PsiVector apply_generator(const SympGenerator& g, const PsiVector& v) {
  const Context& ctx = v.ctx;
  const Fq& F = *ctx.F;
  require(g.M.rows() == ctx.n, "apply_generator: generator size does not match X");
  switch (g.kind) {
    case SympGenerator::Kind::UpperUnipotent: {
      PsiVector out(ctx);
      for (const auto& [idx, a] : v.amp) {
        if (a.is_zero()) continue;
        MatrixFq B = ctx.weight_of(idx);  // 2^{-1} F^T gram F
        int e = 0;
        for (int i = 0; i < ctx.n; ++i)
          for (int j = 0; j < ctx.n; ++j) e = F.add(e, F.mul(B.at(i, j), g.M.at(j, i)));
        out.add(idx, a.mul_zeta_pow(F.trace(F.mul(F.from_int(ctx.mass), e))));
      }
      out.normalize();
      return out;
    }
    case SympGenerator::Kind::Diagonal: {
      MatrixFq Cinv = g.M.inverse();
      int ell = F.legendre(g.M.det());
      bool flip = (ell == -1) && (ctx.t() % 2 == 1);
      PsiVector out(ctx);
      for (const auto& [idx, a] : v.amp) {
        if (a.is_zero()) continue;
        out.add(ctx.encode(ctx.decode(idx) * Cinv), flip ? -a : a);
      }
      out.normalize();
      return out;
    }
    default: {
      bool is_diag = true;
      for (int i = 0; i < ctx.n && is_diag; ++i)
        for (int j = 0; j < ctx.n; ++j)
          if (i != j && g.M.at(i, j) != 0) { is_diag = false; break; }
      if (is_diag) {
        PsiVector cur = v;
        for (int j = 0; j < ctx.n; ++j) cur = detail::fourier_column_pass(cur, j, g.M.at(j, j));
        return cur;
      }
      FormDiagonalization fd = diagonalize_form(g.M);
      require(fd.rank == ctx.n, "apply_generator: Fourier matrix degenerate");
      PsiVector cur = apply_generator(SympGenerator::diagonal(fd.P.transpose()), v);
      for (int j = 0; j < ctx.n; ++j) cur = detail::fourier_column_pass(cur, j, fd.diag[j]);
      return apply_generator(SympGenerator::diagonal(fd.P.inverse_transpose()), cur);
    }
  }
}

// Reference Fourier by the defining two-index sum; O(dim * support), test-scale only.
inline PsiVector apply_fourier_reference(const MatrixFq& B, const PsiVector& v) {
  const Context& ctx = v.ctx;
  const Fq& F = *ctx.F;
  require(B.is_symmetric() && B.det() != 0, "fourier reference: bad B");
  require(ctx.dim() <= 100000, "fourier reference: context too large");
  int neg_half = F.neg(F.half());
  int m = F.from_int(ctx.mass);
  // gamma = sum_F omega(-2^{-1} tr(F^T gram F B)) over the whole index space.
  CycloNum gamma(F.p);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq Fm = ctx.decode(idx);
    int e = 0;
    MatrixFq W = Fm.transpose() * ctx.U.gram * Fm * B;
    for (int i = 0; i < ctx.n; ++i) e = F.add(e, W.at(i, i));
    gamma.add_rotated(CycloNum::one(F.p), F.trace(F.mul(m, F.mul(neg_half, e))));
  }
  PsiVector out(ctx);
  CycloNum gamma_inv = gamma.invert();
  for (const auto& [idx, a] : v.amp) {
    if (a.is_zero()) continue;
    MatrixFq GFB = ctx.U.gram * ctx.decode(idx) * B;  // t x n
    for (std::uint64_t pidx = 0; pidx < ctx.dim(); ++pidx) {
      MatrixFq Fp = ctx.decode(pidx);
      int e = 0;
      for (int i = 0; i < ctx.t(); ++i)
        for (int j = 0; j < ctx.n; ++j) e = F.add(e, F.mul(Fp.at(i, j), GFB.at(i, j)));
      auto [it, inserted] = out.amp.try_emplace(pidx, CycloNum::zero(F.p));
      it->second.add_rotated(a, F.trace(F.mul(m, e)));
    }
  }
  for (auto& [_, val] : out.amp) val *= gamma_inv;
  out.normalize();
  return out;
}

inline PsiVector apply_word(const GeneratorWord& w, PsiVector v) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = apply_generator(*it, v);
  return v;
}

// Weyl operator of the Heisenberg group of U (x) V on L^2(Hom(X -> U)):
//   W(lam, Z + F0) delta_F = omega(lam + 2^{-1} <Z, F0> + <Z, F>) delta_{F + F0},
// <Z, F> = tr(gram Z F^T), Z in Hom(X* -> U), F0 in Hom(X -> U).
inline PsiVector weyl_apply(int lam, const MatrixFq& Z, const MatrixFq& F0, const PsiVector& v) {
  const Context& ctx = v.ctx;
  const Fq& F = *ctx.F;
  require(Z.rows() == ctx.t() && Z.cols() == ctx.n, "weyl_apply: Z shape");
  require(F0.rows() == ctx.t() && F0.cols() == ctx.n, "weyl_apply: F0 shape");
  int m = F.from_int(ctx.mass);
  auto pair_with_Z = [&](const MatrixFq& Fm) {
    MatrixFq P = ctx.U.gram * Z * Fm.transpose();
    int e = 0;
    for (int i = 0; i < P.rows(); ++i) e = F.add(e, P.at(i, i));
    return e;
  };
  int base = F.add(F.from_int(lam), F.mul(F.half(), pair_with_Z(F0)));
  PsiVector out(ctx);
  for (const auto& [idx, a] : v.amp) {
    if (a.is_zero()) continue;
    MatrixFq Fm = ctx.decode(idx);
    int e = F.add(base, pair_with_Z(Fm));
    out.add(ctx.encode(Fm + F0), a.mul_zeta_pow(F.trace(F.mul(m, e))));
  }
  out.normalize();
  return out;
}

// Exact check of mu(w) W(lam, v) mu(w)^{-1} = W(lam, S_w v) at the V level
// (t = 1): LHS and RHS applied to every basis vector.
inline bool weyl_covariance_check(const Context& ctx, const GeneratorWord& w, int lam,
                                  const std::vector<int>& x, const std::vector<int>& y) {
  require(ctx.t() == 1, "weyl_covariance_check: V-level contexts only");
  const Fq& F = *ctx.F;
  int n = ctx.n;
  MatrixFq S = word_matrix(F, n, w);
  std::vector<int> v(2 * n);
  for (int i = 0; i < n; ++i) { v[i] = x[i]; v[n + i] = y[i]; }
  auto Sv = S.mul_vec(v);
  auto as_row = [&](const std::vector<int>& c, int from) {
    MatrixFq r(F, 1, n);
    for (int i = 0; i < n; ++i) r.at(0, i) = c[from + i];
    return r;
  };
  GeneratorWord winv = word_inverse(w);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    PsiVector d = PsiVector::delta(ctx, idx);
    PsiVector lhs = apply_word(w, weyl_apply(lam, as_row(v, 0), as_row(v, n), apply_word(winv, d)));
    PsiVector rhs = weyl_apply(lam, as_row(Sv, 0), as_row(Sv, n), d);
    if (lhs != rhs) return false;
  }
  return true;
}

// Operator comparison for two words with the same symplectic matrix.
struct WordComparison {
  bool matrices_equal = false;
  enum class Verdict { Equal, Scalar, Different } verdict = Verdict::Different;
  CycloNum scalar;  // set when verdict == Scalar
};

inline WordComparison word_consistency_check(const Context& ctx, const GeneratorWord& w1,
                                             const GeneratorWord& w2) {
  const Fq& F = *ctx.F;
  WordComparison out;
  out.matrices_equal = word_matrix(F, ctx.n, w1) == word_matrix(F, ctx.n, w2);
  CycloNum ratio;
  bool have_ratio = false, equal = true, proportional = true;
  for (std::uint64_t idx = 0; idx < ctx.dim() && proportional; ++idx) {
    PsiVector a = apply_word(w1, PsiVector::delta(ctx, idx));
    PsiVector b = apply_word(w2, PsiVector::delta(ctx, idx));
    if (a != b) equal = false;
    // b = ratio * a must hold with one global ratio.
    if (a.is_zero() != b.is_zero()) { proportional = false; break; }
    if (a.is_zero()) continue;
    auto s = a.support();
    CycloNum r = b.at(s.front()) / a.at(s.front());
    if (!have_ratio) { ratio = r; have_ratio = true; }
    if (r != ratio || b != a * ratio) proportional = false;
  }
  if (equal) {
    out.verdict = WordComparison::Verdict::Equal;
  } else if (proportional && have_ratio) {
    out.verdict = WordComparison::Verdict::Scalar;
    out.scalar = ratio;
  }
  return out;
}

// sum of delta_F over all F with range inside S.
inline PsiVector indicator_hom(const Context& ctx, const SubspaceFq& S) {
  require(S.ambient() == ctx.t(), "indicator_hom: ambient mismatch");
  PsiVector out(ctx);
  int k = S.dim();
  std::uint64_t count = 1;
  for (int i = 0; i < k * ctx.n; ++i) count *= ctx.F->q;
  // Columns of F run over S independently: F = basis^T * coeffs.
  std::vector<int> digits(static_cast<size_t>(k) * ctx.n, 0);
  while (true) {
    MatrixFq Fm(*ctx.F, ctx.t(), ctx.n);
    for (int j = 0; j < ctx.n; ++j)
      for (int i = 0; i < k; ++i) {
        int c = digits[static_cast<size_t>(j) * k + i];
        if (c == 0) continue;
        auto b = S.basis_vector(i);
        for (int r = 0; r < ctx.t(); ++r) Fm.at(r, j) = ctx.F->add(Fm.at(r, j), ctx.F->mul(c, b[r]));
      }
    out.add(ctx.encode(Fm), CycloNum::one(ctx.p()));
    size_t i = 0;
    while (i < digits.size() && ++digits[i] == static_cast<size_t>(ctx.F->q)) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  out.normalize();
  return out;
}

// psi_N for a totally isotropic N: the indicator of Hom(X -> N).
inline PsiVector psi_isotropic(const Context& ctx, const SubspaceFq& N) {
  require(is_totally_isotropic(ctx.U, N), "psi_isotropic: subspace not totally isotropic");
  return indicator_hom(ctx, N);
}

// Orthogonal split U = U1 + U2 (bases as column blocks). The factorization
// isomorphism re-indexes delta_F as delta_{(pi1 F, pi2 F)} in the context
// whose space is U1 + U2 with block-diagonal Gram matrix; it intertwines
// every embedded generator exactly.
struct SplitContext {
  Context product;   // over U1 + U2, gram diag(G1, G2)
  MatrixFq coords;   // t x t, rows = coordinates in (basis1 | basis2)
  int t1 = 0, t2 = 0;
};

inline SplitContext split_context(const Context& ctx, const MatrixFq& basis1, const MatrixFq& basis2) {
  const Fq& F = *ctx.F;
  int t = ctx.t(), t1 = basis1.cols(), t2 = basis2.cols();
  require(basis1.rows() == t && basis2.rows() == t && t1 + t2 == t, "split_context: not a full split");
  MatrixFq G12 = basis1.transpose() * ctx.U.gram * basis2;
  require(G12.is_zero(), "split_context: blocks are not orthogonal");
  MatrixFq B(F, t, t);
  for (int j = 0; j < t1; ++j) B.set_col(j, basis1.col(j));
  for (int j = 0; j < t2; ++j) B.set_col(t1 + j, basis2.col(j));
  MatrixFq G1 = basis1.transpose() * ctx.U.gram * basis1;
  MatrixFq G2 = basis2.transpose() * ctx.U.gram * basis2;
  MatrixFq G(F, t, t);
  for (int i = 0; i < t1; ++i)
    for (int j = 0; j < t1; ++j) G.at(i, j) = G1.at(i, j);
  for (int i = 0; i < t2; ++i)
    for (int j = 0; j < t2; ++j) G.at(t1 + i, t1 + j) = G2.at(i, j);
  SplitContext out;
  out.product = Context(F, ctx.n, OrthogonalSpace(F, G), ctx.mass);
  out.coords = B.inverse();
  out.t1 = t1;
  out.t2 = t2;
  return out;
}

inline PsiVector factorize(const SplitContext& sc, const PsiVector& v) {
  PsiVector out(sc.product);
  for (const auto& [idx, a] : v.amp) {
    if (a.is_zero()) continue;
    out.add(sc.product.encode(sc.coords * v.ctx.decode(idx)), a);
  }
  out.normalize();
  return out;
}

// The generating set used for all invariance computations: an F_p-basis of
// the symmetric matrices (upper unipotents), generators of GL(X)
// (diagonals), and one Fourier. Its group closure is Sp(V).
inline std::vector<SympGenerator> sp_generating_set(const Fq& F, int n) {
  std::vector<SympGenerator> gens;
  std::vector<int> field_basis;
  {
    int e = 1;
    for (int i = 0; i < F.f; ++i) { field_basis.push_back(e); e *= F.p; }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int e : field_basis) {
        MatrixFq A(F, n, n);
        A.at(i, j) = F.add(A.at(i, j), e);
        A.at(j, i) = F.add(A.at(j, i), e);
        if (i == j) A.at(i, i) = e;
        gens.push_back(SympGenerator::upper_unipotent(A));
      }
  {
    MatrixFq C = MatrixFq::identity(F, n);
    C.at(0, 0) = F.primitive_element();
    gens.push_back(SympGenerator::diagonal(C));
  }
  for (int i = 0; i + 1 < n; ++i) {
    MatrixFq P = MatrixFq::identity(F, n);
    P.at(i, i) = P.at(i + 1, i + 1) = 0;
    P.at(i, i + 1) = P.at(i + 1, i) = 1;
    gens.push_back(SympGenerator::diagonal(P));
  }
  if (n >= 2) {
    MatrixFq T = MatrixFq::identity(F, n);
    T.at(0, 1) = 1;
    gens.push_back(SympGenerator::diagonal(T));
  }
  gens.push_back(SympGenerator::fourier(MatrixFq::identity(F, n)));
  return gens;
}

// Same set reordered so the Fourier generator comes first; invariance
// fixpoints shrink fastest through it.
inline std::vector<SympGenerator> sp_generating_set_fourier_first(const Fq& F, int n) {
  std::vector<SympGenerator> gens = sp_generating_set(F, n);
  std::stable_partition(gens.begin(), gens.end(), [](const SympGenerator& g) {
    return g.kind == SympGenerator::Kind::Fourier;
  });
  return gens;
}

inline MatrixFq random_matrix(const Fq& F, int rows, int cols, std::mt19937_64& rng) {
  MatrixFq M(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M.at(i, j) = static_cast<int>(rng() % F.q);
  return M;
}

inline MatrixFq random_symmetric(const Fq& F, int n, std::mt19937_64& rng) {
  MatrixFq M = random_matrix(F, n, n, rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) M.at(i, j) = M.at(j, i);
  return M;
}

inline MatrixFq random_invertible(const Fq& F, int n, std::mt19937_64& rng) {
  while (true) {
    MatrixFq M = random_matrix(F, n, n, rng);
    if (M.det() != 0) return M;
  }
}

inline MatrixFq random_symmetric_invertible(const Fq& F, int n, std::mt19937_64& rng) {
  while (true) {
    MatrixFq M = random_symmetric(F, n, rng);
    if (M.det() != 0) return M;
  }
}

inline SympGenerator random_generator(const Fq& F, int n, std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return SympGenerator::upper_unipotent(random_symmetric(F, n, rng));
    case 1: return SympGenerator::fourier(random_symmetric_invertible(F, n, rng));
    default: return SympGenerator::diagonal(random_invertible(F, n, rng));
  }
}

inline GeneratorWord random_word(const Fq& F, int n, std::mt19937_64& rng, int len_min = 1,
                                 int len_max = 6) {
  int len = len_min + static_cast<int>(rng() % (len_max - len_min + 1));
  GeneratorWord w;
  for (int i = 0; i < len; ++i) w.push_back(random_generator(F, n, rng));
  return w;
}

}  // namespace oscr
