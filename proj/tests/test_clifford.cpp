#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "oscr/clifford.hpp"

using namespace oscr;

namespace {

std::vector<HeisenbergElem> all_heisenberg(const Fq& F, int n) {
  std::vector<HeisenbergElem> out;
  int dim = 2 * n;
  std::vector<int> v(dim, 0);
  for (int lam = 0; lam < F.q; ++lam) {
    std::fill(v.begin(), v.end(), 0);
    for (;;) {
      out.push_back({lam, v});
      int k = 0;
      while (k < dim && v[k] == F.q - 1) v[k++] = 0;
      if (k == dim) break;
      ++v[k];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("heisenberg group law is associative with the right cocycle") {
  Fq F(3);
  auto elems = all_heisenberg(F, 1);
  for (const auto& a : elems) {
    CHECK(h_compose(F, 1, a, h_inverse(F, a)).lam == 0);
    for (const auto& b : elems) {
      HeisenbergElem ab = h_compose(F, 1, a, b);
      for (size_t i = 0; i < ab.v.size(); ++i) CHECK(ab.v[i] == F.add(a.v[i], b.v[i]));
    }
  }
  // associativity on a sample grid
  for (size_t i = 0; i < elems.size(); i += 3)
    for (size_t j = 0; j < elems.size(); j += 4)
      for (size_t k = 0; k < elems.size(); k += 5) {
        HeisenbergElem l = h_compose(F, 1, h_compose(F, 1, elems[i], elems[j]), elems[k]);
        HeisenbergElem r = h_compose(F, 1, elems[i], h_compose(F, 1, elems[j], elems[k]));
        CHECK(l.lam == r.lam);
        CHECK(l.v == r.v);
      }
}

TEST_CASE("weyl operators satisfy the group law, exhaustive at q=3 n=1") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  std::vector<int> u = {1};
  auto elems = all_heisenberg(F, 1);
  for (const auto& a : elems)
    for (const auto& b : elems) {
      HeisenbergElem ab = h_compose(F, 1, a, b);
      for (std::uint64_t z = 0; z < ctx.dim(); ++z) {
        PsiVector d = PsiVector::delta(ctx, z);
        PsiVector lhs = weyl_embedded_apply(iota_embed(ctx, u, a),
                                            weyl_embedded_apply(iota_embed(ctx, u, b), d));
        PsiVector rhs = weyl_embedded_apply(iota_embed(ctx, u, ab), d);
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("frozen weyl actions at q=3 n=1") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 1, 1));
  std::vector<int> u = {1};
  // identity element acts trivially
  PsiVector d1 = PsiVector::delta(ctx, 1);
  CHECK(weyl_embedded_apply(iota_embed(ctx, u, h_identity(1)), d1) == d1);
  // central element scales by the character
  HeisenbergElem center{1, {0, 0}};
  CHECK(weyl_embedded_apply(iota_embed(ctx, u, center), d1) ==
        d1 * CycloNum::zeta_pow(3, 1));
  // pure x part is diagonal with phase z
  HeisenbergElem xpart{0, {1, 0}};
  for (std::uint64_t z = 0; z < 3; ++z)
    CHECK(weyl_embedded_apply(iota_embed(ctx, u, xpart), PsiVector::delta(ctx, z)) ==
          PsiVector::delta(ctx, z) * CycloNum::zeta_pow(3, static_cast<long long>(z)));
  // pure y part translates with the half cocycle phase
  HeisenbergElem ypart{0, {0, 1}};
  for (std::uint64_t z = 0; z < 3; ++z) {
    PsiVector got = weyl_embedded_apply(iota_embed(ctx, u, ypart), PsiVector::delta(ctx, z));
    CHECK(got == PsiVector::delta(ctx, (z + 1) % 3));
  }
}

TEST_CASE("iota is a homomorphism into the bigger heisenberg group") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  auto elems = all_heisenberg(F, 1);
  for (int u0 = 0; u0 < 3; ++u0)
    for (int u1 = 0; u1 < 3; ++u1) {
      std::vector<int> u = {u0, u1};
      for (size_t i = 0; i < elems.size(); i += 2)
        for (size_t j = 0; j < elems.size(); j += 3) {
          const auto& a = elems[i];
          const auto& b = elems[j];
          HeisenbergElem ab = h_compose(F, 1, a, b);
          for (std::uint64_t z = 0; z < ctx.dim(); z += 2) {
            PsiVector d = PsiVector::delta(ctx, z);
            PsiVector lhs = weyl_embedded_apply(
                iota_embed(ctx, u, a), weyl_embedded_apply(iota_embed(ctx, u, b), d));
            CHECK(lhs == weyl_embedded_apply(iota_embed(ctx, u, ab), d));
          }
        }
    }
}

TEST_CASE("isotropic u kills the central character") {
  Fq F(3);
  Context ctx(F, 1, hyperbolic_plane(F));
  std::vector<int> u = enumerate_isotropic(ctx.U, 1).front().basis_vector(0);
  HeisenbergElem center{1, {0, 0}};
  EmbeddedWeyl e = iota_embed(ctx, u, center);
  CHECK(e.lam == 0);
}

TEST_CASE("clifford factorizes across an orthogonal split") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1));
  MatrixFq b1(F, 2, 1, {1, 0});
  MatrixFq b2(F, 2, 1, {0, 1});
  SplitContext sc = split_context(ctx, b1, b2);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<int> u = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    std::vector<int> u_coords = sc.coords.mul_vec(u);
    HeisenbergElem h{static_cast<int>(rng() % 3),
                     {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}};
    PsiVector v = PsiVector::delta(ctx, rng() % ctx.dim());
    PsiVector lhs = factorize(sc, weyl_embedded_apply(iota_embed(ctx, u, h), v));
    PsiVector rhs =
        weyl_embedded_apply(iota_embed(sc.product, u_coords, h), factorize(sc, v));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("parity subspaces have the expected dimensions and invariance") {
  Fq F3(3);
  ParityReport p31 = parity_check(F3, 1);
  CHECK(p31.dim_even == 2);
  CHECK(p31.dim_odd == 1);
  CHECK(p31.ok());
  Fq F5(5);
  ParityReport p51 = parity_check(F5, 1);
  CHECK(p51.dim_even == 3);
  CHECK(p51.dim_odd == 2);
  CHECK(p51.ok());
}

TEST_CASE("two-design subspaces at q=3 and q=5") {
  Fq F3(3);
  TwoDesignReport r3 = two_design_check(F3, 1, 99);
  CHECK(r3.dim_sym == 6);
  CHECK(r3.dim_antisym == 3);
  CHECK(r3.ok());
  Fq F5(5);
  TwoDesignReport r5 = two_design_check(F5, 1, 99);
  CHECK(r5.dim_sym == 15);
  CHECK(r5.dim_antisym == 10);
  CHECK(r5.ok());
}

TEST_CASE("symplectic-clifford correspondence at q=3 n=1") {
  Fq F(3);
  SymplectocliffordReport rep = symplectoclifford_check(F, 1, 7);
  CHECK(rep.ok());
  REQUIRE(rep.quotient_dims.size() == rep.lifted_dims.size());
  for (size_t i = 0; i < rep.quotient_dims.size(); ++i)
    CHECK(rep.lifted_dims[i] == 3 * rep.quotient_dims[i]);
}

TEST_CASE("intertwiner dimensions separate masses") {
  Fq F3(3);
  CHECK(heisenberg_intertwiner_dim(F3, 1, 1, 1) == 1);
  CHECK(heisenberg_intertwiner_dim(F3, 1, 1, 2) == 0);
  CHECK(heisenberg_intertwiner_dim(F3, 1, 2, 2) == 1);
  Fq F5(5);
  CHECK(heisenberg_intertwiner_dim(F5, 1, 1, 1) == 1);
  CHECK(heisenberg_intertwiner_dim(F5, 1, 1, 2) == 0);  // nonsquare ratio
  CHECK(heisenberg_intertwiner_dim(F5, 1, 1, 4) == 0);  // square ratio, different mass
}

TEST_CASE("swap commutes with the doubled action on deltas") {
  Fq F(3);
  Context ctx(F, 1, standard_space(F, 2, 1), 1);
  std::vector<int> u = {1, 1};
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    JacobiElem j = random_jacobi(F, 1, rng);
    for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
      PsiVector d = PsiVector::delta(ctx, idx);
      CHECK(row_swap(clifford_apply(ctx, u, j, d)) ==
            clifford_apply(ctx, u, j, row_swap(d)));
    }
  }
}
