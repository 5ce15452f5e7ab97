#include "catch2/catch_amalgamated.hpp"
#include "oscr/css.hpp"
#include "oscr/weight.hpp"

using namespace oscr;

TEST_CASE("pointwise weights and their normal forms") {
  Fq F(3);
  CHECK(nweight_of(MatrixFq(F, 1, 1, {0})).rank == 0);
  CHECK(nweight_of(MatrixFq(F, 1, 1, {0})).disc == 1);
  CHECK(nweight_of(MatrixFq(F, 1, 1, {2})).rank == 1);
  CHECK(nweight_of(MatrixFq(F, 1, 1, {2})).disc == 2);
  MatrixFq hyp(F, 2, 2, {0, 1, 1, 0});
  CHECK(nweight_of(hyp).rank == 2);
  CHECK(nweight_of(hyp).disc == F.square_class(F.neg(1)));
}

TEST_CASE("full spectrum of the line context is frozen") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  SpectrumReport rep = full_spectrum(ctx);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].weight.rank == 0);
  CHECK(rep.entries[0].multiplicity == 1);
  CHECK(rep.entries[1].weight.rank == 1);
  CHECK(rep.entries[1].weight.disc == 2);
  CHECK(rep.entries[1].multiplicity == 2);
  CHECK(rep.max_rank == 1);
  CHECK(rep.discs_at_max_rank == std::vector<int>{2});
}

TEST_CASE("weight eigenspaces partition the index space") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  SpectrumReport rep = full_spectrum(ctx);
  std::uint64_t total = 0;
  for (const auto& e : rep.entries) {
    auto idxs = weight_eigenspace_indices(ctx, e.weight.B);
    CHECK(idxs.size() == static_cast<size_t>(e.multiplicity));
    total += idxs.size();
  }
  CHECK(total == ctx.dim());
}

TEST_CASE("unipotent invariance detection") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  SubspaceCyclo good(ctx);
  good.insert(PsiVector::delta(ctx, 1) + PsiVector::delta(ctx, 2));  // same weight
  CHECK(is_unipotent_invariant(good));
  SubspaceCyclo bad(ctx);
  bad.insert(PsiVector::delta(ctx, 0) + PsiVector::delta(ctx, 1));  // weights 0 and 2
  CHECK(!is_unipotent_invariant(bad));
}

TEST_CASE("subspace spectrum agrees with full counting on the whole space") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  SubspaceCyclo full(ctx);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    full.insert(PsiVector::delta(ctx, idx));
  SpectrumReport a = spectrum_of_subspace(full);
  SpectrumReport b = full_spectrum(ctx);
  REQUIRE(a.entries.size() == b.entries.size());
  for (size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].weight.B == b.entries[i].weight.B);
    CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
  }
}

TEST_CASE("coset canonicalization is a retraction onto representatives") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 3, 1));
  SubspaceFq N = enumerate_isotropic(ctx.U, 1).front();
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq M = ctx.decode(idx);
    MatrixFq c = coset_canonical(ctx, N, M);
    CHECK(coset_canonical(ctx, N, c) == c);
    // difference lies in Hom(X -> N)
    MatrixFq d = M - c;
    for (int j = 0; j < ctx.n; ++j) CHECK(N.contains(d.col(j)));
  }
}

TEST_CASE("code dimensions follow q^(n(t-2k))") {
  Fq F5(5);
  Context c52(F5, 2, standard_space(F5, 2, 1));
  for (const auto& N : enumerate_isotropic(c52.U, 1)) {
    CSSCode code = build_code(c52, N);
    CHECK(code.dim() == 1);
    CHECK(code.rank() == 0);
  }
  Fq F3(3);
  Context c31(F3, 1, standard_space(F3, 3, 1));
  for (const auto& N : enumerate_isotropic(c31.U, 1)) {
    CSSCode code = build_code(c31, N);
    CHECK(code.dim() == 3);
    CHECK(code.rank() == 1);
  }
}

TEST_CASE("coset states are supported on full cosets with equal weight") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 3, 1));
  SubspaceFq N = enumerate_isotropic(ctx.U, 1).front();
  CSSCode code = build_code(ctx, N);
  for (std::uint64_t rep : code.reps) {
    PsiVector state = coset_state(ctx, N, rep);
    auto supp = state.support();
    CHECK(supp.size() == 3);  // q^{nk}
    MatrixFq canon = coset_canonical(ctx, N, ctx.decode(rep));
    MatrixFq W = ctx.weight_of(rep);
    for (std::uint64_t idx : supp) {
      CHECK(coset_canonical(ctx, N, ctx.decode(idx)) == canon);
      CHECK(ctx.weight_of(idx) == W);  // weight is constant along Hom(X -> N)
    }
  }
}

TEST_CASE("code spans and parity spans") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  CHECK(code_span(ctx, 0).dim() == 81);
  CHECK(code_span(ctx, 1).dim() == 2);
  CHECK(css_span(ctx, 2).dim() == 81);
  CHECK(css_span(ctx, 0).dim() == 2);
  CHECK(css_span(ctx, 1).dim() == 0);  // odd rank defect

  Fq F5(5);
  Context big(F5, 2, standard_space(F5, 2, 1));
  CHECK(code_span(big, 0).dim() == 625);
}

TEST_CASE("code spans are invariant under every generator") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  SubspaceCyclo S = code_span(ctx, 1);
  for (const auto& g : sp_generating_set(F, 2))
    for (int i = 0; i < S.dim(); ++i) CHECK(S.contains(apply_generator(g, S.to_psi(i))));
}

TEST_CASE("branch sets pick out the radical") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 3, 1));
  SubspaceFq N = enumerate_isotropic(ctx.U, 1).front();
  for (std::uint64_t idx : branch_set(ctx, N, 1)) {
    MatrixFq M = ctx.decode(idx);
    CHECK(diagonalize_form(ctx.weight_of(idx)).rank == 1);
    CHECK(radical_of_range(ctx.U, M) == N);
  }
}

TEST_CASE("intertwiner certificate holds on small contexts") {
  Fq F3(3);
  for (int n : {1, 2}) {
    Context ctx(F3, n, hyperbolic_plane(F3));
    for (int k = 0; k <= 1; ++k)
      for (const auto& N : enumerate_isotropic(ctx.U, k)) {
        CSSIntertwinerReport rep = css_intertwiner_check(ctx, N);
        CHECK(rep.intertwines);
        CHECK(rep.disc_law_ok);
      }
  }
  Context c31(F3, 1, standard_space(F3, 3, 1));
  for (const auto& N : enumerate_isotropic(c31.U, 1)) {
    CSSIntertwinerReport rep = css_intertwiner_check(c31, N);
    CHECK(rep.intertwines);
    CHECK(rep.disc_law_ok);
    CHECK(rep.quotient_disc == F3.square_class(F3.neg(1)));
  }
}

TEST_CASE("rank contiguity on invariant subspaces") {
  Fq F(3);
  Context ctx(F, 2, hyperbolic_plane(F));
  RankContiguity rc = rank_contiguity_check(code_span(ctx, 1));
  CHECK(rc.contiguous);
  CHECK(rc.ranks == std::vector<int>{0});
}
