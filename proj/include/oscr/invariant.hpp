#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oscr/css.hpp"

namespace oscr {

inline SubspaceCyclo coordinate_span(const Context& ctx, const std::vector<std::uint64_t>& idxs) {
  SubspaceCyclo S(ctx);
  for (std::uint64_t idx : idxs) S.insert(PsiVector::delta(ctx, idx));
  return S;
}

inline std::vector<std::uint64_t> rank_le_indices(const Context& ctx, int r) {
  require(ctx.dim() <= 2000000, "rank_le_indices: index space too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    if (diagonalize_form(ctx.weight_of(idx)).rank <= r) out.push_back(idx);
  return out;
}

inline SubspaceCyclo rank_le_span(const Context& ctx, int r) {
  return coordinate_span(ctx, rank_le_indices(ctx, r));
}

inline SubspaceCyclo apply_to_space(const SympGenerator& g, const SubspaceCyclo& K) {
  SubspaceCyclo out(K.ctx());
  for (int i = 0; i < K.dim(); ++i) out.insert(apply_generator(g, K.to_psi(i)));
  return out;
}

// Largest subspace of K invariant under the group generated by gens, via the
// fixpoint K <- K cap gK. Each generator acts invertibly, so a sweep that
// leaves every dimension unchanged certifies gK = K for all g.
inline SubspaceCyclo max_invariant_in(SubspaceCyclo K, const std::vector<SympGenerator>& gens) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : gens) {
      if (K.dim() == 0) return K;
      SubspaceCyclo next = K.intersect(apply_to_space(g, K));
      if (next.dim() != K.dim()) {
        K = std::move(next);
        changed = true;
      }
    }
  }
  return K;
}

namespace detail {

// Forward elimination with combination tracking: insert returns the linear
// dependency (over inserted tags) exactly when the new row is dependent.
class TrackedEchelon {
 public:
  explicit TrackedEchelon(int p) : p_(p) {}

  std::optional<std::map<int, CycloNum>> insert(int tag, std::map<std::uint64_t, CycloNum> row) {
    prune(row);
    std::map<int, CycloNum> comb{{tag, CycloNum::one(p_)}};
    for (const auto& e : rows_) {
      if (row.empty()) break;
      auto it = row.find(e.pivot);
      if (it == row.end()) continue;
      CycloNum f = -it->second;  // stored rows have pivot coefficient one
      axpy(row, f, e.row);
      for (const auto& [tg, c] : e.comb) comb[tg] += f * c;
    }
    if (row.empty()) return comb;
    CycloNum inv = row.begin()->second.invert();
    for (auto& [_, c] : row) c *= inv;
    for (auto& [_, c] : comb) c *= inv;
    rows_.push_back({row.begin()->first, std::move(row), std::move(comb)});
    return std::nullopt;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  struct Entry {
    std::uint64_t pivot;
    std::map<std::uint64_t, CycloNum> row;
    std::map<int, CycloNum> comb;
  };

  static void prune(std::map<std::uint64_t, CycloNum>& r) {
    for (auto it = r.begin(); it != r.end();)
      it = it->second.is_zero() ? r.erase(it) : std::next(it);
  }

  static void axpy(std::map<std::uint64_t, CycloNum>& r, const CycloNum& f,
                   const std::map<std::uint64_t, CycloNum>& s) {
    for (const auto& [k, v] : s) r[k] += f * v;
    prune(r);
  }

  int p_;
  std::vector<Entry> rows_;
};

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::size_t c = 0;
    for (std::uint32_t i = 0; i < parent.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

}  // namespace detail

// Joint fixed space of the whole representation. Vectors fixed by every
// upper unipotent are supported on weight-zero indices, so the search runs
// inside that coordinate span; the remaining generators contribute the rows
// of a tracked elimination whose dependencies are the fixed vectors.
inline SubspaceCyclo fixed_space(const Context& ctx) {
  MatrixFq zero(*ctx.F, ctx.n, ctx.n);
  std::vector<std::uint64_t> s0 = weight_eigenspace_indices(ctx, zero);
  std::vector<SympGenerator> gens;
  for (auto& g : sp_generating_set(*ctx.F, ctx.n))
    if (g.kind != SympGenerator::Kind::UpperUnipotent) gens.push_back(g);

  detail::TrackedEchelon ech(ctx.p());
  SubspaceCyclo out(ctx);
  for (int i = 0; i < static_cast<int>(s0.size()); ++i) {
    std::map<std::uint64_t, CycloNum> row;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      PsiVector im = apply_generator(gens[k], PsiVector::delta(ctx, s0[i]));
      im.add(s0[i], -CycloNum::one(ctx.p()));
      for (const auto& [idx, a] : im.amp) row[k * ctx.dim() + idx] += a;
    }
    if (auto dep = ech.insert(i, std::move(row))) {
      PsiVector v(ctx);
      for (const auto& [j, c] : *dep) v.add(s0[j], c);
      v.normalize();
      if (!v.is_zero()) out.insert(v);
    }
  }
  return out;
}

struct MainTheoremRow {
  int r = 0;
  int dim_rank_span = 0;
  int dim_invariant = 0;
  int dim_css = 0;
  bool equal = false;
};

struct MainTheoremReport {
  std::vector<MainTheoremRow> rows;
  bool parity_ok = true;
  bool all_equal = true;
};

// For every r < t, the largest invariant subspace of the rank <= r
// coordinate span must equal the span of the code spaces of rank <= r, and
// the invariant dimensions may only grow when t - r steps through an even
// value.
inline MainTheoremReport verify_main_theorem(const Context& ctx,
                                             std::vector<SubspaceCyclo>* out_invariants = nullptr) {
  require(ctx.t() <= ctx.n, "verify_main_theorem: outside stable range (t > n)");
  const std::vector<SympGenerator> gens = sp_generating_set_fourier_first(*ctx.F, ctx.n);
  int witt = witt_index(ctx.U);
  std::vector<SubspaceCyclo> spans;  // spans[k] over codes with dim N = k
  for (int k = 0; k <= witt; ++k) spans.push_back(code_span(ctx, k));

  MainTheoremReport rep;
  for (int r = 0; r < ctx.t(); ++r) {
    SubspaceCyclo W = rank_le_span(ctx, r);
    SubspaceCyclo M = max_invariant_in(W, gens);
    if (out_invariants) out_invariants->push_back(M);
    int kmin = (ctx.t() - r + 1) / 2;
    SubspaceCyclo S(ctx);
    for (int k = kmin; k <= witt; ++k) S = S.sum(spans[k]);
    MainTheoremRow row{r, W.dim(), M.dim(), S.dim(), M == S};
    rep.all_equal = rep.all_equal && row.equal;
    if (!rep.rows.empty()) {
      bool grew = row.dim_invariant != rep.rows.back().dim_invariant;
      if (grew && (ctx.t() - r) % 2 != 0) rep.parity_ok = false;
    } else if ((ctx.t() - r) % 2 != 0 && row.dim_invariant != 0) {
      rep.parity_ok = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

// Number of orbits of Sp(V) on t-tuples of vectors of V; equals the
// commutant dimension of the t-fold permutation action.
inline long long sp_orbit_count_on_tuples(const Fq& F, int n, int t,
                                          std::uint64_t guard = 25000000) {
  std::uint64_t Q = 1;
  for (int i = 0; i < 2 * n; ++i) {
    Q *= F.q;
    require(Q <= guard, "sp_orbit_count_on_tuples: vector space exceeds guard");
  }
  std::uint64_t total = 1;
  for (int i = 0; i < t; ++i) {
    require(total <= guard / Q, "sp_orbit_count_on_tuples: tuple space exceeds guard");
    total *= Q;
  }

  detail::UnionFind uf(total);
  for (const auto& g : sp_generating_set(F, n)) {
    MatrixFq S = g.symplectic_matrix();
    std::vector<std::uint32_t> vmap(Q);
    for (std::uint64_t vi = 0; vi < Q; ++vi) {
      std::vector<int> v(2 * n);
      std::uint64_t rem = vi;
      for (int i = 0; i < 2 * n; ++i) {
        v[i] = static_cast<int>(rem % F.q);
        rem /= F.q;
      }
      std::vector<int> w = S.mul_vec(v);
      std::uint64_t wi = 0;
      for (int i = 2 * n - 1; i >= 0; --i) wi = wi * F.q + w[i];
      vmap[vi] = static_cast<std::uint32_t>(wi);
    }
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rem = idx, mapped = 0, place = 1;
      for (int i = 0; i < t; ++i) {
        mapped += static_cast<std::uint64_t>(vmap[rem % Q]) * place;
        rem /= Q;
        place *= Q;
      }
      uf.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(mapped));
    }
  }
  return static_cast<long long>(uf.components());
}

struct LedgerEntry {
  int k = 0;
  int rank = 0;
  long long num_isotropic = 0;
  long long orthogonal_order = 0;
  long long contribution = 0;
};

struct DecompositionLedger {
  std::vector<LedgerEntry> entries;
  long long total = 0;
};

// Predicted commutant dimension of the rank-stratified decomposition: each
// stratum contributes (number of isotropic k-spaces)^2 times the order of
// the orthogonal group of the quotient space.
inline DecompositionLedger predicted_commutant_dim(const OrthogonalSpace& U) {
  DecompositionLedger led;
  for (int k = 0; 2 * k <= U.t; ++k) {
    std::vector<SubspaceFq> Ns = enumerate_isotropic(U, k);
    if (Ns.empty()) break;
    OrthogonalSpace Uq = (k == 0) ? U : quotient_space(U, Ns[0]).space;
    LedgerEntry e;
    e.k = k;
    e.rank = U.t - 2 * k;
    e.num_isotropic = static_cast<long long>(Ns.size());
    e.orthogonal_order = orthogonal_group_order(Uq);
    e.contribution = e.num_isotropic * e.num_isotropic * e.orthogonal_order;
    led.entries.push_back(e);
    led.total += e.contribution;
  }
  return led;
}

// Distinct isotropic lines of U, one nonzero representative each, in index
// order.
inline std::vector<std::vector<int>> isotropic_line_reps(const Context& ctx) {
  const Fq& F = *ctx.F;
  std::vector<std::vector<int>> reps;
  for (std::uint64_t idx = 1; idx < ctx.dim(); ++idx) {
    std::vector<int> z = ctx.decode(idx).col(0);
    if (ctx.U.quad(z) != 0) continue;
    bool seen = false;
    for (const auto& r : reps) {
      int pv = 0;
      while (r[pv] == 0) ++pv;
      if (z[pv] == 0) continue;
      int lam = F.div(z[pv], r[pv]);
      bool on_line = true;
      for (size_t i = 0; i < r.size(); ++i)
        if (z[i] != F.mul(lam, r[i])) on_line = false;
      if (on_line) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(z);
  }
  return reps;
}

// The fixed vector outside the stable range (t = 3 > n = 1): supported on
// the nonzero isotropic vectors, with quadratic-character amplitudes tied to
// a chosen isotropic direction x0.
inline PsiVector counterexample_vector(const Context& ctx, int which = 0) {
  require(ctx.t() == 3 && ctx.n == 1, "counterexample_vector: needs t = 3, n = 1");
  const Fq& F = *ctx.F;
  std::vector<std::vector<int>> lines = isotropic_line_reps(ctx);
  require(!lines.empty(), "counterexample_vector: no isotropic vector in U");
  std::vector<int> x0 = lines[static_cast<size_t>(which) % lines.size()];
  int pv = 0;
  while (x0[pv] == 0) ++pv;

  PsiVector psi(ctx);
  for (std::uint64_t idx = 1; idx < ctx.dim(); ++idx) {
    std::vector<int> z = ctx.decode(idx).col(0);
    if (ctx.U.quad(z) != 0) continue;
    int lam = F.div(z[pv], x0[pv]);
    bool on_line = true;
    for (int i = 0; i < 3; ++i)
      if (z[i] != F.mul(lam, x0[i])) on_line = false;
    int value = on_line ? F.legendre(F.mul(F.add(1, 1), lam))
                        : F.legendre(ctx.U.beta(x0, z));
    if (value == 0) continue;
    psi.add(idx, CycloNum::one(ctx.p()) * Rational(value));
  }
  psi.normalize();
  return psi;
}

struct CounterexampleReport {
  bool psi_nonzero = false;
  bool fixed_by_all = true;
  bool rank_zero = true;
  std::uint64_t support_size = 0;
  std::uint64_t quadric_size = 0;
  bool support_matches = false;
  bool parity_clause_fails = false;  // t - r = 3 is odd and no code span carries rank 0
  int fixed_dim = 0;
  std::string witness;
};

inline CounterexampleReport verify_counterexample(const Fq& F, int mass = 1, int disc = 1,
                                                  int which = 0) {
  Context ctx(F, 1, standard_space(F, 3, disc), mass);
  PsiVector psi = counterexample_vector(ctx, which);

  CounterexampleReport rep;
  rep.psi_nonzero = !psi.is_zero();
  for (const auto& g : sp_generating_set(F, 1)) {
    if (apply_generator(g, psi) == psi) continue;
    rep.fixed_by_all = false;
    rep.witness = "a generator moves psi";
    break;
  }
  for (std::uint64_t idx : psi.support())
    if (diagonalize_form(ctx.weight_of(idx)).rank != 0) rep.rank_zero = false;
  rep.support_size = psi.support().size();
  std::uint64_t quadric = 0;
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    if (ctx.U.quad(ctx.decode(idx).col(0)) == 0) ++quadric;
  rep.quadric_size = quadric;
  std::uint64_t q = static_cast<std::uint64_t>(F.q);
  rep.support_matches = (quadric == (q + 1) * (q - 1) + 1) && (rep.support_size == quadric - 1);
  rep.parity_clause_fails = (ctx.t() % 2 == 1) && css_span(ctx, 0).dim() == 0;
  SubspaceCyclo fixed = fixed_space(ctx);
  rep.fixed_dim = fixed.dim();
  if (!fixed.contains(psi)) {
    rep.fixed_by_all = false;
    rep.witness = "psi is not in the computed fixed space";
  }
  return rep;
}

// Trace of the word operator against the permutation-action prediction
// q^{dim ker(S - 1)}; the underlying space must be a hyperbolic plane.
inline bool hyperbolic_trace_check(const Context& ctx, const GeneratorWord& w) {
  const Fq& F = *ctx.F;
  require(ctx.t() == 2 && ctx.U.disc() == F.square_class(F.neg(1)),
          "hyperbolic_trace_check: U must be a hyperbolic plane");
  MatrixFq S = word_matrix(F, ctx.n, w);
  MatrixFq SmI = S + MatrixFq::identity(F, 2 * ctx.n).negated();
  int kdim = SubspaceFq::kernel(SmI).dim();
  Rational expected = 1;
  for (int i = 0; i < kdim; ++i) expected *= F.q;
  CycloNum tr = CycloNum::zero(ctx.p());
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    tr += apply_word(w, PsiVector::delta(ctx, idx)).at(idx);
  return tr == CycloNum::one(ctx.p()) * expected;
}

struct FourierDualTrial {
  bool support_contained = false;
  bool image_invariant = false;
  bool consistent() const { return support_contained == image_invariant; }
};

// Support in Hom(X -> U') if and only if the Fourier image is invariant
// under translations by Hom(X -> U'^perp).
inline FourierDualTrial fourier_dual_equiv(const Context& ctx, const SubspaceFq& Uprime,
                                           const MatrixFq& B, const PsiVector& Phi) {
  FourierDualTrial trial;
  trial.support_contained = true;
  for (std::uint64_t idx : Phi.support()) {
    MatrixFq M = ctx.decode(idx);
    for (int j = 0; j < ctx.n; ++j)
      if (!Uprime.contains(M.col(j))) trial.support_contained = false;
  }
  PsiVector image = apply_generator(SympGenerator::fourier(B), Phi);
  SubspaceFq Uperp = perp(ctx.U, Uprime);
  trial.image_invariant = true;
  for (int i = 0; i < Uperp.dim(); ++i) {
    std::vector<int> u = Uperp.basis_vector(i);
    for (int j = 0; j < ctx.n; ++j) {
      MatrixFq delta(*ctx.F, ctx.t(), ctx.n);
      for (int a = 0; a < ctx.t(); ++a) delta.at(a, j) = u[a];
      if (!(image.translated(delta) == image)) trial.image_invariant = false;
    }
  }
  return trial;
}

// Exact scalar form on indicators: the Fourier image of the indicator of
// Hom(X -> U') is gamma^{-1} |Hom(X -> U')| times the indicator of
// Hom(X -> U'^perp), with gamma the defining normalization sum.
inline bool fourier_dual_indicator(const Context& ctx, const SubspaceFq& Uprime,
                                   const MatrixFq& B) {
  require(ctx.dim() <= 1000000, "fourier_dual_indicator: index space too large");
  PsiVector lhs = apply_generator(SympGenerator::fourier(B), indicator_hom(ctx, Uprime));
  CycloNum gamma = CycloNum::zero(ctx.p());
  int neg_mass = ctx.F->neg(ctx.mass);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq W = ctx.weight_of(idx);  // 2^{-1} F^T G F, so tr(F^T G F B) = 2 tr(W B)
    int e = 0;
    for (int i = 0; i < ctx.n; ++i)
      for (int j = 0; j < ctx.n; ++j) e = ctx.F->add(e, ctx.F->mul(W.at(i, j), B.at(j, i)));
    gamma += CycloNum::zeta_pow(ctx.p(), ctx.F->trace(ctx.F->mul(neg_mass, e)));
  }
  Rational count = 1;
  for (int i = 0; i < Uprime.dim() * ctx.n; ++i) count *= ctx.q();
  PsiVector rhs = indicator_hom(ctx, perp(ctx.U, Uprime)) * (gamma.invert() * count);
  return lhs == rhs;
}

struct SampleCheck {
  int checked = 0;
  bool ok = true;
  std::string witness;
};

// Rank-deficient vectors take equal values at F and F + Delta whenever Delta
// maps into the radical of the range of F and the range survives on the
// kernel of Delta.
inline SampleCheck genesis_check(const Context& ctx, const PsiVector& Phi, int r) {
  SampleCheck chk;
  for (std::uint64_t idx : Phi.support()) {
    MatrixFq Fmat = ctx.decode(idx);
    if (diagonalize_form(ctx.weight_of(idx)).rank != r) continue;
    SubspaceFq NF = radical_of_range(ctx.U, Fmat);
    if (NF.dim() == 0) continue;
    MatrixFq Nb = NF.basis().transpose();  // t x dim
    MatrixFq coef(*ctx.F, NF.dim(), ctx.n);
    std::vector<int> digits(static_cast<size_t>(NF.dim()) * ctx.n, 0);
    while (true) {
      size_t i = 0;
      while (i < digits.size() && ++digits[i] == ctx.q()) digits[i++] = 0;
      if (i == digits.size()) break;
      for (int a = 0; a < NF.dim(); ++a)
        for (int b = 0; b < ctx.n; ++b) coef.at(a, b) = digits[static_cast<size_t>(a) * ctx.n + b];
      MatrixFq delta = Nb * coef;
      MatrixFq kb = SubspaceFq::kernel(delta).basis().transpose();  // n x kdim
      if (!(SubspaceFq::image(Fmat * kb) == SubspaceFq::image(Fmat))) continue;
      ++chk.checked;
      if (!(Phi.at(idx) == Phi.at(ctx.encode(Fmat + delta)))) {
        chk.ok = false;
        chk.witness = "value changes along a radical translation";
        return chk;
      }
    }
  }
  return chk;
}

// Vectors of an invariant subspace of rank r are constant on each coset of
// Hom(X -> N) within the branch set of N.
inline SampleCheck trolling_check(const Context& ctx, const PsiVector& Phi, const SubspaceFq& N,
                                  int r) {
  SampleCheck chk;
  std::map<std::uint64_t, CycloNum> first;
  for (std::uint64_t idx : branch_set(ctx, N, r)) {
    std::uint64_t rep = ctx.encode(coset_canonical(ctx, N, ctx.decode(idx)));
    auto [it, inserted] = first.try_emplace(rep, Phi.at(idx));
    if (inserted) continue;
    ++chk.checked;
    if (!(it->second == Phi.at(idx))) {
      chk.ok = false;
      chk.witness = "branch values differ within one coset";
      return chk;
    }
  }
  return chk;
}

// Subtracts from Phi its projection onto coset states of the deepest
// isotropic level; vectors of an invariant rank-r subspace must be annihilated.
inline PsiVector cropped_prune(const Context& ctx, const PsiVector& Phi, int r) {
  require((ctx.t() - r) % 2 == 0, "cropped_prune: t - r must be even");
  int k = (ctx.t() - r) / 2;
  PsiVector out = Phi;
  for (const SubspaceFq& N : enumerate_isotropic(ctx.U, k)) {
    std::map<std::uint64_t, CycloNum> values;
    for (std::uint64_t idx : branch_set(ctx, N, r)) {
      std::uint64_t rep = ctx.encode(coset_canonical(ctx, N, ctx.decode(idx)));
      auto [it, inserted] = values.try_emplace(rep, Phi.at(idx));
      require(inserted || it->second == Phi.at(idx), "cropped_prune: branch values not constant");
    }
    for (const auto& [rep, value] : values) out -= coset_state(ctx, N, rep) * value;
  }
  out.normalize();
  return out;
}

using RepOp = std::function<PsiVector(const PsiVector&)>;

inline std::vector<RepOp> generator_ops(const std::vector<SympGenerator>& gens) {
  std::vector<RepOp> ops;
  for (const auto& g : gens)
    ops.push_back([g](const PsiVector& v) { return apply_generator(g, v); });
  return ops;
}

// Smallest op-invariant subspace containing v.
inline SubspaceCyclo invariant_closure(const PsiVector& v, const std::vector<RepOp>& ops) {
  SubspaceCyclo S(v.ctx);
  S.insert(v);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<PsiVector> rows = S.basis();
    for (const auto& op : ops)
      for (const PsiVector& row : rows)
        if (S.insert(op(row))) grew = true;
  }
  return S;
}

}  // namespace oscr
