#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "oscr/invariant.hpp"

using namespace oscr;

TEST_CASE("fixed space over a hyperbolic plane is the isotropic-line span") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  SubspaceCyclo fixed = fixed_space(ctx);
  REQUIRE(fixed.dim() == 2);
  SubspaceCyclo predicted(ctx);
  for (const auto& line : enumerate_isotropic(ctx.U, 1))
    predicted.insert(psi_isotropic(ctx, line));
  CHECK(fixed == predicted);
}

TEST_CASE("fixed space vanishes for an anisotropic plane") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  CHECK(fixed_space(ctx).dim() == 0);
}

TEST_CASE("fixed vectors survive 100 random words") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  SubspaceCyclo fixed = fixed_space(ctx);
  std::mt19937_64 rng(41);
  for (int w = 0; w < 100; ++w) {
    GeneratorWord word = random_word(F, 1, rng);
    for (int i = 0; i < fixed.dim(); ++i) {
      PsiVector v = fixed.to_psi(i);
      CHECK(apply_word(word, v) == v);
    }
  }
}

TEST_CASE("max_invariant_in is idempotent and monotone") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  auto gens = sp_generating_set_fourier_first(F, 1);
  SubspaceCyclo W0 = rank_le_span(ctx, 0);
  SubspaceCyclo W1 = rank_le_span(ctx, 1);
  REQUIRE(W0.dim() == 5);  // two isotropic lines of 3 points overlapping in 0
  REQUIRE(W1.dim() == 9);
  SubspaceCyclo M0 = max_invariant_in(W0, gens);
  SubspaceCyclo M1 = max_invariant_in(W1, gens);
  CHECK(M0.dim() == 2);
  CHECK(M1.dim() == 9);
  CHECK(M1.contains(M0));
  CHECK(max_invariant_in(M0, gens) == M0);
}

TEST_CASE("main theorem report in the smallest stable contexts") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  MainTheoremReport rep = verify_main_theorem(ctx);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].dim_invariant == 0);
  CHECK(rep.rows[0].dim_css == 0);
  CHECK(rep.all_equal);
  CHECK(rep.parity_ok);

  Context ctx2(F, 2, standard_space(F, 1, 1));
  MainTheoremReport rep2 = verify_main_theorem(ctx2);
  CHECK(rep2.all_equal);
  CHECK(rep2.parity_ok);
}

TEST_CASE("main theorem refuses the unstable range") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  CHECK_THROWS_AS(verify_main_theorem(ctx), std::invalid_argument);
}

TEST_CASE("orbit counting matches the commutant ledger at q=3") {
  Fq F(3);
  CHECK(sp_orbit_count_on_tuples(F, 2, 1) == 2);  // zero and nonzero
  long long orbits = sp_orbit_count_on_tuples(F, 2, 2);
  DecompositionLedger led = predicted_commutant_dim(hyperbolic_plane(F));
  CHECK(orbits == 8);
  CHECK(led.total == 8);
  REQUIRE(led.entries.size() == 2);
  CHECK(led.entries[0].contribution == 4);  // |O(hyperbolic)| = 2(q-1)
  CHECK(led.entries[1].num_isotropic == 2);
  CHECK(led.entries[1].contribution == 4);  // 2^2 * |O(0)|
}

TEST_CASE("counterexample vector: fixed, rank zero, odd defect") {
  for (int q : {3, 5}) {
    Fq F(q);
    CounterexampleReport rep = verify_counterexample(F);
    CHECK(rep.psi_nonzero);
    CHECK(rep.fixed_by_all);
    CHECK(rep.rank_zero);
    CHECK(rep.support_size == static_cast<std::uint64_t>(q) * q - 1);
    CHECK(rep.quadric_size == static_cast<std::uint64_t>(q) * q);
    CHECK(rep.support_matches);
    CHECK(rep.parity_clause_fails);
  }
}

TEST_CASE("branch values of the counterexample are not coset-constant") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 3, 1));
  PsiVector psi = counterexample_vector(ctx);
  SubspaceFq N = enumerate_isotropic(ctx.U, 1).front();
  SampleCheck chk = trolling_check(ctx, psi, N, 0);
  CHECK(chk.checked > 0);
  CHECK(!chk.ok);  // the out-of-range witness breaks coset constancy
}

TEST_CASE("genesis and trolling hold on coset states in stable range") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  for (const auto& N : enumerate_isotropic(ctx.U, 1)) {
    PsiVector psi = psi_isotropic(ctx, N);
    SampleCheck g = genesis_check(ctx, psi, 0);
    CHECK(g.ok);
    SampleCheck tr = trolling_check(ctx, psi, N, 0);
    CHECK(tr.ok);
  }
}

TEST_CASE("pruning annihilates rank-deficient invariant vectors") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  SubspaceCyclo fixed = fixed_space(ctx);
  for (int i = 0; i < fixed.dim(); ++i) {
    PsiVector pruned = cropped_prune(ctx, fixed.to_psi(i), 0);
    CHECK(pruned.is_zero());
  }
}

TEST_CASE("hyperbolic traces count fixed vectors") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  std::mt19937_64 rng(43);
  CHECK(hyperbolic_trace_check(ctx, {}));
  for (int w = 0; w < 10; ++w) CHECK(hyperbolic_trace_check(ctx, random_word(F, 2, rng)));
}

TEST_CASE("fourier duality on indicators, both directions") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  std::mt19937_64 rng(47);
  for (int k = 0; k <= 2; ++k)
    for (const auto& Uprime : enumerate_subspaces(F, 2, k)) {
      MatrixFq B(F, 1, 1, {1 + static_cast<int>(rng() % 2)});
      CHECK(fourier_dual_indicator(ctx, Uprime, B));
      PsiVector ind = indicator_hom(ctx, Uprime);
      FourierDualTrial trial = fourier_dual_equiv(ctx, Uprime, B, ind);
      CHECK(trial.support_contained);
      CHECK(trial.image_invariant);
      if (k < 2) {
        PsiVector outside = ind + PsiVector::delta(ctx, ctx.dim() - 1);
        MatrixFq last = ctx.decode(ctx.dim() - 1);
        bool contained = true;
        for (int j = 0; j < ctx.n; ++j)
          if (!Uprime.contains(last.col(j))) contained = false;
        if (!contained) {
          FourierDualTrial bad = fourier_dual_equiv(ctx, Uprime, B, outside);
          CHECK(!bad.support_contained);
          CHECK(!bad.image_invariant);
        }
      }
    }
}

TEST_CASE("invariant closure of a fixed vector is itself") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  auto ops = generator_ops(sp_generating_set(F, 1));
  PsiVector psi = psi_isotropic(ctx, enumerate_isotropic(ctx.U, 1).front());
  SubspaceCyclo closure = invariant_closure(psi, ops);
  CHECK(closure.dim() == 1);
  CHECK(closure.contains(psi));
}

TEST_CASE("invariant closure of a parity-even delta is the even subspace") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  auto ops = generator_ops(sp_generating_set(F, 1));
  SubspaceCyclo closure = invariant_closure(PsiVector::delta(ctx, 0), ops);
  CHECK(closure.dim() == 2);
  for (const auto& op : ops)
    for (int i = 0; i < closure.dim(); ++i) CHECK(closure.contains(op(closure.to_psi(i))));
}
