#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "oscr/oscillator.hpp"

using namespace oscr;

namespace {

PsiVector random_vector(const Context& ctx, std::mt19937_64& rng, int points = 4) {
  PsiVector v(ctx);
  for (int s = 0; s < points; ++s)
    v.add(rng() % ctx.dim(),
          CycloNum::zeta_pow(ctx.p(), static_cast<long long>(rng() % ctx.p())) *
              Rational(1 + static_cast<int>(rng() % 3)));
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("context encode/decode round trip") {
  Fq F(3);
  Context ctx(F, 2, standard_space(F, 2, 1));
  REQUIRE(ctx.dim() == 81);
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    CHECK(ctx.encode(ctx.decode(idx)) == idx);
}

TEST_CASE("weight matrix of an index") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq M = ctx.decode(idx);
    MatrixFq W = (M.transpose() * ctx.U.gram * M).scaled(F.half());
    CHECK(ctx.weight_of(idx) == W);
  }
}

TEST_CASE("unipotent generator is the expected diagonal phase") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  SympGenerator N = SympGenerator::upper_unipotent(MatrixFq(F, 1, 1, {1}));
  for (int y = 0; y < 3; ++y) {
    PsiVector out = apply_generator(N, PsiVector::delta(ctx, y));
    // phase 2^{-1} y^2 = 2 y^2 over F_3
    CHECK(out == PsiVector::delta(ctx, y) * CycloNum::zeta_pow(3, 2 * y * y));
  }
}

TEST_CASE("diagonal generator permutes with a determinant character") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  SympGenerator D = SympGenerator::diagonal(MatrixFq(F, 1, 1, {2}));
  for (int y = 0; y < 3; ++y) {
    PsiVector out = apply_generator(D, PsiVector::delta(ctx, y));
    // det = 2 is a nonsquare: sign -1; index moves y -> y * 2^{-1} = 2y
    CHECK(out == PsiVector::delta(ctx, (2 * y) % 3) * (-CycloNum::one(3)));
  }
}

TEST_CASE("fourier generator on the one-dimensional context") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  SympGenerator J = SympGenerator::fourier(MatrixFq(F, 1, 1, {1}));
  PsiVector out = apply_generator(J, PsiVector::delta(ctx, 0));
  CycloNum gamma = CycloNum::one(3) + CycloNum::zeta_pow(3, 1) * Rational(2);
  PsiVector expected(ctx);
  for (int y = 0; y < 3; ++y) expected.add(y, gamma.invert());
  CHECK(out == expected);
}

TEST_CASE("generators are unitary") {
  std::mt19937_64 rng(17);
  for (int q : {3, 5}) {
    Fq F(q);
    Context ctx(F, 1, hyperbolic_plane(F));
    for (const auto& g : sp_generating_set(F, 1))
      for (int trial = 0; trial < 5; ++trial) {
        PsiVector v = random_vector(ctx, rng);
        PsiVector w = random_vector(ctx, rng);
        CHECK(apply_generator(g, v).inner(apply_generator(g, w)) == v.inner(w));
      }
  }
}

TEST_CASE("fast fourier pass agrees with the dense reference") {
  std::mt19937_64 rng(19);
  for (int q : {3, 5}) {
    Fq F(q);
    for (int n : {1, 2})
      for (int t : {1, 2}) {
        Context ctx(F, n, standard_space(F, t, 1));
        for (int trial = 0; trial < 6; ++trial) {
          MatrixFq B = random_symmetric_invertible(F, n, rng);
          PsiVector v = random_vector(ctx, rng);
          CHECK(apply_generator(SympGenerator::fourier(B), v) ==
                apply_fourier_reference(B, v));
        }
      }
  }
}

TEST_CASE("squared fourier is the negation operator, with no scalar") {
  for (int q : {3, 5}) {
    Fq F(q);
    Context ctx(F, 1, standard_space(F, 2, 1));
    MatrixFq B(F, 1, 1, {1});
    GeneratorWord jj = {SympGenerator::fourier(B), SympGenerator::fourier(B)};
    GeneratorWord dneg = {SympGenerator::diagonal(MatrixFq(F, 1, 1, {F.neg(1)}))};
    WordComparison wc = word_consistency_check(ctx, jj, dneg);
    CHECK(wc.matrices_equal);
    CHECK(wc.verdict == WordComparison::Verdict::Equal);
  }
}

TEST_CASE("generator relators hold as operator identities") {
  std::mt19937_64 rng(23);
  Fq F(5);
  Context ctx(F, 2, standard_space(F, 1, 1));
  using G = SympGenerator;
  for (int rep = 0; rep < 5; ++rep) {
    MatrixFq A = random_symmetric(F, 2, rng);
    MatrixFq A2 = random_symmetric(F, 2, rng);
    MatrixFq C = random_invertible(F, 2, rng);
    MatrixFq B = random_symmetric_invertible(F, 2, rng);
    MatrixFq B2 = random_symmetric_invertible(F, 2, rng);
    auto expect_equal = [&](const GeneratorWord& w1, const GeneratorWord& w2) {
      WordComparison wc = word_consistency_check(ctx, w1, w2);
      CHECK(wc.matrices_equal);
      CHECK(wc.verdict == WordComparison::Verdict::Equal);
    };
    expect_equal({G::upper_unipotent(A), G::upper_unipotent(A2)},
                 {G::upper_unipotent(A + A2)});
    expect_equal({G::diagonal(C), G::upper_unipotent(A)},
                 {G::upper_unipotent(C * A * C.transpose()), G::diagonal(C)});
    expect_equal({G::diagonal(C), G::fourier(B)},
                 {G::fourier(C * B * C.transpose()), G::diagonal(C)});
    expect_equal({G::fourier(B), G::fourier(B2)},
                 {G::diagonal((B * B2.inverse()).negated())});
  }
}

TEST_CASE("word inverse composes to the identity operator") {
  std::mt19937_64 rng(29);
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  for (int trial = 0; trial < 10; ++trial) {
    GeneratorWord w = random_word(F, 1, rng);
    GeneratorWord winv = word_inverse(w);
    PsiVector v = random_vector(ctx, rng);
    CHECK(apply_word(winv, apply_word(w, v)) == v);
  }
}

TEST_CASE("weyl covariance, exhaustive at q=3 n=1") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    GeneratorWord w = random_word(F, 1, rng);
    for (int lam = 0; lam < 3; ++lam)
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(weyl_covariance_check(ctx, w, lam, {x}, {y}));
  }
}

TEST_CASE("mass rescales the unipotent phase") {
  Fq F(5);
  Context ctx1(F, 1, standard_space(F, 1, 1), 1);
  Context ctx2(F, 1, standard_space(F, 1, 1), 2);
  MatrixFq A(F, 1, 1, {1});
  MatrixFq A2(F, 1, 1, {2});
  for (std::uint64_t y = 0; y < 5; ++y) {
    PsiVector at2 = apply_generator(SympGenerator::upper_unipotent(A),
                                    PsiVector::delta(ctx2, y));
    PsiVector at1 = apply_generator(SympGenerator::upper_unipotent(A2),
                                    PsiVector::delta(ctx1, y));
    CHECK(at2.at(y) == at1.at(y));
  }
}

TEST_CASE("indicator of a subspace and its translates") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  SubspaceFq line = enumerate_isotropic(ctx.U, 1).front();
  PsiVector ind = indicator_hom(ctx, line);
  CHECK(ind.support().size() == 3);  // Hom(X -> line) for n = 1
  for (std::uint64_t idx : ind.support()) {
    MatrixFq M = ctx.decode(idx);
    for (int j = 0; j < ctx.n; ++j) CHECK(line.contains(M.col(j)));
  }
  MatrixFq shift(F, 2, 1, {1, 0});
  PsiVector moved = ind.translated(shift);
  CHECK(moved.support().size() == 3);
  CHECK(moved != ind);
  CHECK(moved.translated(shift.negated()) == ind);
}

TEST_CASE("isotropic-line state is fixed by every generator") {
  for (int q : {3, 5}) {
    Fq F(q);
    for (int n : {1, 2}) {
      Context ctx(F, n, hyperbolic_plane(F));
      for (const auto& line : enumerate_isotropic(ctx.U, 1)) {
        PsiVector psi = psi_isotropic(ctx, line);
        for (const auto& g : sp_generating_set(F, n))
          CHECK(apply_generator(g, psi) == psi);
      }
    }
  }
}

TEST_CASE("splitting a diagonal space intertwines the action") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  MatrixFq b1(F, 2, 1, {1, 0});
  MatrixFq b2(F, 2, 1, {0, 1});
  SplitContext sc = split_context(ctx, b1, b2);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    PsiVector v = random_vector(ctx, rng);
    SympGenerator g = random_generator(F, 1, rng);
    CHECK(factorize(sc, apply_generator(g, v)) == apply_generator(g, factorize(sc, v)));
  }
}

TEST_CASE("empty word trace equals the space dimension") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  CycloNum tr;
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    tr += apply_word({}, PsiVector::delta(ctx, idx)).at(idx);
  CHECK(tr == CycloNum::one(3) * Rational(9));
}
