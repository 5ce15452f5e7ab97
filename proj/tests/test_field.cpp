#include "catch2/catch_amalgamated.hpp"
#include "oscr/cyclotomic.hpp"
#include "oscr/fq.hpp"
#include "oscr/rational.hpp"

using namespace oscr;

TEST_CASE("rational arithmetic normalizes") {
  Rational a(2, 4);
  CHECK(a == Rational(1, 2));
  CHECK(a + Rational(1, 2) == Rational(1));
  CHECK(Rational(-3, 9) * Rational(3) == Rational(-1));
}

TEST_CASE("prime field F5 basics") {
  Fq F(5);
  CHECK(F.q == 5);
  CHECK(F.from_int(-2) == 3);
  CHECK(F.add(2, 3) == 0);
  CHECK(F.mul(2, 3) == 1);
  CHECK(F.inv(2) == 3);
  CHECK(F.half() == 3);
  CHECK(F.neg(1) == 4);
  CHECK_THROWS(F.inv(0));
}

TEST_CASE("legendre symbol matches square enumeration") {
  for (int q : {3, 5, 7}) {
    Fq F(q);
    std::vector<bool> is_square(q, false);
    for (int a = 1; a < q; ++a) is_square[F.mul(a, a)] = true;
    CHECK(F.legendre(0) == 0);
    int squares = 0;
    for (int a = 1; a < q; ++a) {
      CHECK(F.legendre(a) == (is_square[a] ? 1 : -1));
      squares += is_square[a];
    }
    CHECK(squares == (q - 1) / 2);
    CHECK(F.legendre(F.canonical_nonsquare()) == -1);
    int four = F.mul(2, 2);
    CHECK(F.square_class(F.mul(F.canonical_nonsquare(), four)) == F.canonical_nonsquare());
    CHECK(F.square_class(four) == 1);
  }
}

TEST_CASE("extension field F9 axioms and structure") {
  Fq F(3, 2);
  REQUIRE(F.q == 9);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      for (int c = 0; c < 9; ++c) {
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  for (int a = 1; a < 9; ++a) CHECK(F.mul(a, F.inv(a)) == F.from_int(1));

  int g = F.primitive_element();
  int x = g;
  int order = 1;
  while (x != F.from_int(1)) {
    x = F.mul(x, g);
    ++order;
  }
  CHECK(order == 8);
  CHECK(F.pow(g, 4) == F.from_int(-1));
  CHECK(F.legendre(g) == -1);

  int trace_zero = 0;
  for (int a = 0; a < 9; ++a) {
    CHECK(F.trace(a) == F.trace(a));
    if (F.trace(a) == 0) ++trace_zero;
  }
  CHECK(trace_zero == 3);
  // trace is additive and F3-linear
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      CHECK((F.trace(a) + F.trace(b)) % 3 == F.trace(F.add(a, b)));
}

TEST_CASE("legendre is multiplicative on F9") {
  Fq F(3, 2);
  for (int a = 1; a < 9; ++a)
    for (int b = 1; b < 9; ++b)
      CHECK(F.legendre(F.mul(a, b)) == F.legendre(a) * F.legendre(b));
}

TEST_CASE("cyclotomic integers over p=3") {
  CycloNum one = CycloNum::one(3);
  CycloNum z = CycloNum::zeta_pow(3, 1);
  CycloNum z2 = CycloNum::zeta_pow(3, 2);
  CHECK((one + z + z2).is_zero());
  CHECK(z * z == z2);
  CHECK(z * z2 == one);
  CHECK(CycloNum::zeta_pow(3, -1) == z2);

  // quadratic gauss sum: sum of zeta^{a^2} = 1 + 2 zeta, norm 3
  CycloNum g = CycloNum::zero(3);
  for (int a = 0; a < 3; ++a) g += CycloNum::zeta_pow(3, a * a);
  CHECK(g == one + z * Rational(2));
  CHECK(g * g.conj() == one * Rational(3));
  CHECK(g.invert() * g == one);
}

TEST_CASE("cyclotomic gauss sum over p=5 squares to 5") {
  CycloNum g = CycloNum::zero(5);
  for (int a = 0; a < 5; ++a) g += CycloNum::zeta_pow(5, a * a);
  CHECK(g * g == CycloNum::one(5) * Rational(5));
  CHECK(g * g.conj() == CycloNum::one(5) * Rational(5));
}

TEST_CASE("add_rotated and mul_zeta_pow agree with products") {
  CycloNum a = CycloNum::one(5) + CycloNum::zeta_pow(5, 3) * Rational(2, 7);
  for (int k = -6; k <= 6; ++k) {
    CHECK(a.mul_zeta_pow(k) == a * CycloNum::zeta_pow(5, k));
    CycloNum acc = a;
    acc.add_rotated(a, k);
    CHECK(acc == a + a.mul_zeta_pow(k));
  }
}

TEST_CASE("cyclotomic inversion round trips") {
  CycloNum a = CycloNum::one(5) * Rational(2) - CycloNum::zeta_pow(5, 2) * Rational(1, 3) +
               CycloNum::zeta_pow(5, 4);
  REQUIRE(!a.is_zero());
  CHECK(a * a.invert() == CycloNum::one(5));
  CHECK_THROWS(CycloNum::zero(5).invert());
}

TEST_CASE("rational detection") {
  CycloNum a = CycloNum::one(3) * Rational(7, 2);
  CHECK(a.is_rational());
  CHECK(a.rational_part() == Rational(7, 2));
  CycloNum z = CycloNum::zeta_pow(3, 1);
  CHECK(!z.is_rational());
  // 1 + zeta + zeta^2 = 0 is stored rationally after folding
  CHECK((CycloNum::one(3) + z + z * z).is_rational());
}
