#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oscr/invariant.hpp"

namespace oscr {

// Element (lambda, v) of the Heisenberg group H(V), v = x + y with x the
// first n coordinates and y the last n.
struct HeisenbergElem {
  int lam = 0;
  std::vector<int> v;
};

inline HeisenbergElem h_identity(int n) { return {0, std::vector<int>(2 * n, 0)}; }

inline HeisenbergElem h_compose(const Fq& F, int n, const HeisenbergElem& a,
                                const HeisenbergElem& b) {
  require(static_cast<int>(a.v.size()) == 2 * n && a.v.size() == b.v.size(),
          "h_compose: dimension mismatch");
  int sym = 0;  // [v, v'] = y'(x) - y(x')
  for (int i = 0; i < n; ++i) {
    sym = F.add(sym, F.mul(b.v[n + i], a.v[i]));
    sym = F.sub(sym, F.mul(a.v[n + i], b.v[i]));
  }
  HeisenbergElem c;
  c.lam = F.add(F.add(a.lam, b.lam), F.mul(F.half(), sym));
  c.v.resize(2 * n);
  for (int i = 0; i < 2 * n; ++i) c.v[i] = F.add(a.v[i], b.v[i]);
  return c;
}

inline HeisenbergElem h_inverse(const Fq& F, const HeisenbergElem& a) {
  HeisenbergElem b;
  b.lam = F.neg(a.lam);
  for (int x : a.v) b.v.push_back(F.neg(x));
  return b;
}

// Parameters of the embedded Weyl operator W(lambda, Z + F0).
struct EmbeddedWeyl {
  int lam = 0;
  MatrixFq Z;   // Hom(X -> U) component
  MatrixFq F0;  // Hom(X -> U) component paired against translations
};

// iota_u(lambda, x + y) = (beta(u,u) lambda, (u tensor x) + (u tensor y)).
inline EmbeddedWeyl iota_embed(const Context& ctx, const std::vector<int>& u,
                               const HeisenbergElem& h) {
  const Fq& F = *ctx.F;
  require(static_cast<int>(u.size()) == ctx.t(), "iota_embed: u has wrong dimension");
  require(static_cast<int>(h.v.size()) == 2 * ctx.n, "iota_embed: h has wrong dimension");
  EmbeddedWeyl e;
  e.lam = F.mul(ctx.U.beta(u, u), h.lam);
  e.Z = MatrixFq(F, ctx.t(), ctx.n);
  e.F0 = MatrixFq(F, ctx.t(), ctx.n);
  for (int i = 0; i < ctx.t(); ++i)
    for (int j = 0; j < ctx.n; ++j) {
      e.Z.at(i, j) = F.mul(u[i], h.v[j]);
      e.F0.at(i, j) = F.mul(u[i], h.v[ctx.n + j]);
    }
  return e;
}

inline PsiVector weyl_embedded_apply(const EmbeddedWeyl& e, const PsiVector& v) {
  return weyl_apply(e.lam, e.Z, e.F0, v);
}

// Jacobi group element: a Heisenberg element composed with a symplectic word.
struct JacobiElem {
  HeisenbergElem h;
  GeneratorWord word;
};

inline PsiVector clifford_apply(const Context& ctx, const std::vector<int>& u,
                                const JacobiElem& j, const PsiVector& v) {
  return weyl_embedded_apply(iota_embed(ctx, u, j.h), apply_word(j.word, v));
}

inline std::vector<JacobiElem> jacobi_generating_set(const Fq& F, int n) {
  std::vector<JacobiElem> out;
  for (const auto& g : sp_generating_set(F, n)) out.push_back({h_identity(n), {g}});
  HeisenbergElem center = h_identity(n);
  center.lam = 1;
  out.push_back({center, {}});
  for (int i = 0; i < 2 * n; ++i) {
    HeisenbergElem h = h_identity(n);
    h.v[i] = 1;
    out.push_back({h, {}});
  }
  return out;
}

inline JacobiElem random_jacobi(const Fq& F, int n, std::mt19937_64& rng) {
  JacobiElem j;
  j.word = random_word(F, n, rng, 1, 4);
  j.h.lam = static_cast<int>(rng() % F.q);
  j.h.v.resize(2 * n);
  for (int i = 0; i < 2 * n; ++i) j.h.v[i] = static_cast<int>(rng() % F.q);
  return j;
}

inline std::vector<RepOp> jacobi_ops(const Context& ctx, const std::vector<int>& u,
                                     const std::vector<JacobiElem>& js) {
  std::vector<RepOp> ops;
  for (const auto& j : js)
    ops.push_back([ctx, u, j](const PsiVector& v) { return clifford_apply(ctx, u, j, v); });
  return ops;
}

// Even (+) or odd (-) functions under the index negation M -> -M.
inline SubspaceCyclo parity_subspace(const Context& ctx, bool even) {
  SubspaceCyclo S(ctx);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    std::uint64_t ridx = ctx.encode(ctx.decode(idx).negated());
    PsiVector v = PsiVector::delta(ctx, idx);
    PsiVector r = PsiVector::delta(ctx, ridx);
    S.insert(even ? v + r : v - r);
  }
  return S;
}

// Symmetric (+) or antisymmetric (-) functions under swapping the two rows
// of the index matrix; requires t = 2.
inline SubspaceCyclo swap_subspace(const Context& ctx, bool symmetric) {
  require(ctx.t() == 2, "swap_subspace: needs t = 2");
  SubspaceCyclo S(ctx);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq M = ctx.decode(idx);
    MatrixFq Ms(*ctx.F, 2, ctx.n);
    Ms.set_row(0, M.row(1));
    Ms.set_row(1, M.row(0));
    PsiVector v = PsiVector::delta(ctx, idx);
    PsiVector r = PsiVector::delta(ctx, ctx.encode(Ms));
    S.insert(symmetric ? v + r : v - r);
  }
  return S;
}

inline PsiVector row_swap(const PsiVector& v) {
  const Context& ctx = v.ctx;
  require(ctx.t() == 2, "row_swap: needs t = 2");
  PsiVector out(ctx);
  for (const auto& [idx, a] : v.amp) {
    MatrixFq M = ctx.decode(idx);
    MatrixFq Ms(*ctx.F, 2, ctx.n);
    Ms.set_row(0, M.row(1));
    Ms.set_row(1, M.row(0));
    out.add(ctx.encode(Ms), a);
  }
  out.normalize();
  return out;
}

namespace detail {

inline PsiVector random_member(const SubspaceCyclo& S, std::mt19937_64& rng) {
  PsiVector v(S.ctx());
  for (int i = 0; i < S.dim(); ++i) {
    int c = 1 + static_cast<int>(rng() % 3);
    v += S.to_psi(i) * (CycloNum::one(S.ctx().p()) * Rational(c));
  }
  v.normalize();
  return v;
}

}  // namespace detail

struct TwoDesignReport {
  long long dim_sym = 0;
  long long dim_antisym = 0;
  long long expected_sym = 0;
  long long expected_antisym = 0;
  bool invariant_ok = true;
  bool swap_commutes = true;
  bool closure_ok = true;
  std::string witness;

  bool ok() const {
    return dim_sym == expected_sym && dim_antisym == expected_antisym && invariant_ok &&
           swap_commutes && closure_ok;
  }
};

// The diagonally embedded Clifford group at u = f1 + f2 on the two-row index
// space: the swap eigenspaces are invariant, the sampled operators commute
// with the swap, and random members generate the full eigenspace back.
inline TwoDesignReport two_design_check(const Fq& F, int n, std::uint64_t seed,
                                        int n_words = 100) {
  Context ctx(F, n, standard_space(F, 2, 1), 1);
  std::vector<int> u = {1, 1};
  std::mt19937_64 rng(seed);

  std::vector<JacobiElem> elems = jacobi_generating_set(F, n);
  for (int i = 0; i < n_words; ++i) elems.push_back(random_jacobi(F, n, rng));
  std::vector<RepOp> ops = jacobi_ops(ctx, u, elems);

  TwoDesignReport rep;
  long long Q = 1;
  for (int i = 0; i < n; ++i) Q *= F.q;
  rep.expected_sym = Q * (Q + 1) / 2;
  rep.expected_antisym = Q * (Q - 1) / 2;
  SubspaceCyclo sym = swap_subspace(ctx, true);
  SubspaceCyclo antisym = swap_subspace(ctx, false);
  rep.dim_sym = sym.dim();
  rep.dim_antisym = antisym.dim();

  for (const auto& op : ops) {
    for (int i = 0; i < sym.dim() && rep.invariant_ok; ++i)
      if (!sym.contains(op(sym.to_psi(i)))) {
        rep.invariant_ok = false;
        rep.witness = "symmetric subspace moved";
      }
    for (int i = 0; i < antisym.dim() && rep.invariant_ok; ++i)
      if (!antisym.contains(op(antisym.to_psi(i)))) {
        rep.invariant_ok = false;
        rep.witness = "antisymmetric subspace moved";
      }
  }
  for (std::size_t k = 0; k < ops.size() && rep.swap_commutes; k += 7) {
    for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
      PsiVector d = PsiVector::delta(ctx, idx);
      if (!(ops[k](row_swap(d)) == row_swap(ops[k](d)))) {
        rep.swap_commutes = false;
        rep.witness = "operator does not commute with the swap";
        break;
      }
    }
  }
  for (int trial = 0; trial < 2 && rep.closure_ok; ++trial) {
    if (invariant_closure(detail::random_member(sym, rng), ops) != sym) {
      rep.closure_ok = false;
      rep.witness = "closure inside the symmetric subspace is smaller";
    }
    if (rep.closure_ok &&
        invariant_closure(detail::random_member(antisym, rng), ops) != antisym) {
      rep.closure_ok = false;
      rep.witness = "closure inside the antisymmetric subspace is smaller";
    }
  }
  return rep;
}

struct ParityReport {
  long long dim_even = 0;
  long long dim_odd = 0;
  long long expected_even = 0;
  long long expected_odd = 0;
  bool invariant_ok = true;

  bool ok() const {
    return dim_even == expected_even && dim_odd == expected_odd && invariant_ok;
  }
};

// Parity subspaces of the base representation (t = 1): dims (q^n +- 1)/2,
// both invariant.
inline ParityReport parity_check(const Fq& F, int n) {
  Context ctx(F, n, standard_space(F, 1, 1), 1);
  ParityReport rep;
  long long Q = 1;
  for (int i = 0; i < n; ++i) Q *= F.q;
  rep.expected_even = (Q + 1) / 2;
  rep.expected_odd = (Q - 1) / 2;
  SubspaceCyclo even = parity_subspace(ctx, true);
  SubspaceCyclo odd = parity_subspace(ctx, false);
  rep.dim_even = even.dim();
  rep.dim_odd = odd.dim();
  for (const auto& g : sp_generating_set(F, n)) {
    for (int i = 0; i < even.dim(); ++i)
      if (!even.contains(apply_generator(g, even.to_psi(i)))) rep.invariant_ok = false;
    for (int i = 0; i < odd.dim(); ++i)
      if (!odd.contains(apply_generator(g, odd.to_psi(i)))) rep.invariant_ok = false;
  }
  return rep;
}

inline PsiVector unfactorize(const SplitContext& sc, const Context& original,
                             const PsiVector& v) {
  require(v.ctx == sc.product, "unfactorize: vector not in the product context");
  MatrixFq back = sc.coords.inverse();
  PsiVector out(original);
  for (const auto& [idx, a] : v.amp) out.add(original.encode(back * sc.product.decode(idx)), a);
  out.normalize();
  return out;
}

// L^2 of the first factor tensored with K on the second factor, carried back
// to the unsplit index space.
inline SubspaceCyclo lift_through_split(const SplitContext& sc, const Context& original,
                                        const SubspaceCyclo& K) {
  require(K.ctx().t() == sc.t2, "lift_through_split: K lives on the wrong factor");
  SubspaceCyclo out(original);
  std::vector<int> digits(static_cast<size_t>(sc.t1) * original.n, 0);
  while (true) {
    MatrixFq C(*original.F, sc.t1, original.n);
    for (int i = 0; i < sc.t1; ++i)
      for (int j = 0; j < original.n; ++j) C.at(i, j) = digits[static_cast<size_t>(i) * original.n + j];
    for (int r = 0; r < K.dim(); ++r) {
      PsiVector krow = K.to_psi(r);
      PsiVector prod(sc.product);
      for (const auto& [idx2, a] : krow.amp)
        prod.add(sc.product.encode(C.stacked(K.ctx().decode(idx2))), a);
      out.insert(unfactorize(sc, original, prod));
    }
    size_t i = 0;
    while (i < digits.size() && ++digits[i] == original.q()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

struct SymplectocliffordReport {
  std::vector<long long> quotient_dims;
  std::vector<long long> lifted_dims;
  bool quotient_invariant = true;
  bool lifted_invariant = true;
  bool closure_matches = true;
  std::string witness;

  bool ok() const { return quotient_invariant && lifted_invariant && closure_matches; }
};

// The invariant lattice of the base representation on u^perp matches its
// lift L^2(X*) tensor K inside the two-row space, through the Clifford
// action at the non-isotropic vector u = f1 + f2.
inline SymplectocliffordReport symplectoclifford_check(const Fq& F, int n, std::uint64_t seed,
                                                       int n_random = 20) {
  Context ctx(F, n, standard_space(F, 2, 1), 1);
  std::vector<int> u = {1, 1};
  std::vector<int> uperp = {1, F.neg(1)};
  MatrixFq basis1(F, 2, 1), basis2(F, 2, 1);
  basis1.at(0, 0) = u[0];
  basis1.at(1, 0) = u[1];
  basis2.at(0, 0) = uperp[0];
  basis2.at(1, 0) = uperp[1];
  SplitContext sc = split_context(ctx, basis1, basis2);
  int b = ctx.U.beta(uperp, uperp);
  Context qctx(F, n, OrthogonalSpace(F, MatrixFq::diagonal(F, {b})), 1);

  std::vector<SubspaceCyclo> lattice;
  lattice.push_back(SubspaceCyclo(qctx));
  lattice.push_back(parity_subspace(qctx, true));
  lattice.push_back(parity_subspace(qctx, false));
  {
    SubspaceCyclo full(qctx);
    for (std::uint64_t idx = 0; idx < qctx.dim(); ++idx)
      full.insert(PsiVector::delta(qctx, idx));
    lattice.push_back(full);
  }

  SymplectocliffordReport rep;
  for (const auto& K : lattice) {
    rep.quotient_dims.push_back(K.dim());
    for (const auto& g : sp_generating_set(F, n))
      for (int i = 0; i < K.dim(); ++i)
        if (!K.contains(apply_generator(g, K.to_psi(i)))) {
          rep.quotient_invariant = false;
          rep.witness = "quotient lattice member moved";
        }
  }

  std::mt19937_64 rng(seed);
  std::vector<JacobiElem> elems = jacobi_generating_set(F, n);
  for (int i = 0; i < n_random; ++i) elems.push_back(random_jacobi(F, n, rng));
  std::vector<RepOp> ops = jacobi_ops(ctx, u, elems);

  std::vector<SubspaceCyclo> lifts;
  for (const auto& K : lattice) {
    lifts.push_back(lift_through_split(sc, ctx, K));
    rep.lifted_dims.push_back(lifts.back().dim());
  }
  long long Q = 1;
  for (int i = 0; i < n; ++i) Q *= F.q;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (rep.lifted_dims[i] != Q * rep.quotient_dims[i]) {
      rep.closure_matches = false;
      rep.witness = "lifted dimension is not q^n times the quotient dimension";
    }
  for (const auto& Kp : lifts)
    for (const auto& op : ops)
      for (int i = 0; i < Kp.dim(); ++i)
        if (!Kp.contains(op(Kp.to_psi(i)))) {
          rep.lifted_invariant = false;
          rep.witness = "lifted subspace moved under the Clifford action";
        }
  for (std::size_t i = 1; i < lifts.size() && rep.closure_matches; ++i) {
    if (invariant_closure(detail::random_member(lifts[i], rng), ops) != lifts[i]) {
      rep.closure_matches = false;
      rep.witness = "closure does not reproduce the lifted subspace";
    }
  }
  return rep;
}

// Dimension of the matrix space intertwining the Weyl actions of two masses
// at t = 1; the operators are monomial, so each constraint couples at most
// two unknowns.
inline int heisenberg_intertwiner_dim(const Fq& F, int n, int mass1, int mass2) {
  Context c1(F, n, standard_space(F, 1, 1), mass1);
  Context c2(F, n, standard_space(F, 1, 1), mass2);
  std::uint64_t Q = c1.dim();
  require(Q <= 4096, "heisenberg_intertwiner_dim: space too large");

  std::vector<HeisenbergElem> gens;
  {
    HeisenbergElem center = h_identity(n);
    center.lam = 1;
    gens.push_back(center);
    for (int i = 0; i < 2 * n; ++i) {
      HeisenbergElem h = h_identity(n);
      h.v[i] = 1;
      gens.push_back(h);
    }
  }
  std::vector<int> e1{1};
  auto table = [&](const Context& c) {
    // For each generator and source index the single (target, phase) pair of
    // the monomial Weyl operator.
    std::vector<std::vector<std::pair<std::uint64_t, CycloNum>>> tab(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      EmbeddedWeyl w = iota_embed(c, e1, gens[k]);
      for (std::uint64_t z = 0; z < Q; ++z) {
        PsiVector im = weyl_embedded_apply(w, PsiVector::delta(c, z));
        require(im.amp.size() == 1, "heisenberg_intertwiner_dim: Weyl image not monomial");
        tab[k].push_back(*im.amp.begin());
      }
    }
    return tab;
  };
  auto t1 = table(c1);
  auto t2 = table(c2);
  // Invert the source -> target permutation of each W1 generator.
  std::vector<std::vector<std::uint64_t>> src1(gens.size(), std::vector<std::uint64_t>(Q));
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::uint64_t j = 0; j < Q; ++j) src1[k][t1[k][j].first] = j;

  detail::TrackedEchelon ech(F.p);
  int nullity = 0;
  for (std::uint64_t a = 0; a < Q; ++a)
    for (std::uint64_t b = 0; b < Q; ++b) {
      std::map<std::uint64_t, CycloNum> row;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        // (E_ab W1(h))[i, j] = [i = a] W1[b, j], nonzero only at j with
        // target(j) = b;  (W2(h) E_ab)[i, j] = [j = b] W2[i, a].
        std::uint64_t j = src1[k][b];
        row[(k * Q + a) * Q + j] += t1[k][j].second;
        row[(k * Q + t2[k][a].first) * Q + b] += -t2[k][a].second;
      }
      if (ech.insert(static_cast<int>(a * Q + b), std::move(row))) ++nullity;
    }
  return nullity;
}

}  // namespace oscr
