#include "doctest.h"

#include "chevlab/rings.hpp"

using namespace chevlab;

TEST_CASE("Z/4 splits into units and radical") {
  LocalRing r = LocalRing::zmod(2, 2);
  CHECK(r.order() == 4);
  auto us = r.units();
  auto rad = r.radical();
  CHECK(us.size() == 2);
  CHECK(rad.size() == 2);
  CHECK(r.is_unit(r.from_int(1)));
  CHECK(r.is_unit(r.from_int(3)));
  CHECK(r.in_radical(r.from_int(0)));
  CHECK(r.in_radical(r.from_int(2)));
  CHECK(r.residue_field().order() == 2);
  CHECK(r.nilpotency_degree() == 2);
}

TEST_CASE("GF(4) is a field") {
  LocalRing r = LocalRing::gf(2, 2);
  CHECK(r.order() == 4);
  CHECK(r.radical().size() == 1);  // just zero
  CHECK(r.units().size() == 3);
  CHECK(r.is_field());
  CHECK(r.residue_field().order() == 4);
}

TEST_CASE("GF(2)[t]/(t^2) has radical {0, t}") {
  LocalRing r = LocalRing::trunc_poly(2, 1, 2);
  CHECK(r.order() == 4);
  auto rad = r.radical();
  CHECK(rad.size() == 2);
  CHECK(r.residue_field().order() == 2);
  CHECK(r.nilpotency_degree() == 2);
  // t^2 = 0
  RingElem t = r.elem_at(2);
  CHECK(r.in_radical(t));
  CHECK(r.is_zero(r.mul(t, t)));
}

TEST_CASE("small integer invertibility follows the characteristic") {
  CHECK(LocalRing::zmod(3, 2).small_int_invertible(2));
  CHECK_FALSE(LocalRing::zmod(2, 2).small_int_invertible(2));
  CHECK(LocalRing::gf(2, 3).small_int_invertible(3));
  CHECK_FALSE(LocalRing::zmod(3, 2).small_int_invertible(3));
  CHECK(LocalRing::zmod(5, 2).small_int_invertible(2));
}

TEST_CASE("residue and lift on Z/9") {
  LocalRing r = LocalRing::zmod(3, 2);
  LocalRing k = r.residue_field();
  CHECK(k.is_zero(r.residue(r.from_int(3))));
  CHECK(r.residue(r.from_int(5)) == k.from_int(2));
  CHECK(r.lift(k.from_int(2)) == r.from_int(2));
  for (int64_t i = 0; i < k.order(); ++i)
    CHECK(r.residue(r.lift(k.elem_at(i))) == k.elem_at(i));
}

TEST_CASE("every unit has an exact inverse") {
  for (const char* nm : {"Z9", "Z25", "F4", "F8", "F3t2"}) {
    LocalRing r = LocalRing::from_name(nm);
    CAPTURE(nm);
    for (const RingElem& u : r.units()) {
      RingElem v = r.inv(u);
      CHECK(r.is_one(r.mul(u, v)));
    }
  }
}

TEST_CASE("unit set and radical partition the ring") {
  for (const char* nm : {"Z9", "Z8", "F9", "F3t2", "F4t2"}) {
    LocalRing r = LocalRing::from_name(nm);
    CAPTURE(nm);
    CHECK(static_cast<int64_t>(r.units().size() + r.radical().size()) == r.order());
    for (const RingElem& u : r.units()) CHECK_FALSE(r.in_radical(u));
  }
}

TEST_CASE("Frobenius on GF(4) is a valid order-2 automorphism") {
  LocalRing r = LocalRing::gf(2, 2);
  RingMorphism f = RingMorphism::frobenius(r);
  CHECK(f.is_valid());
  CHECK(f.is_automorphism());
  CHECK(f.order() == 2);
}

TEST_CASE("identity morphism is valid on Z/9") {
  LocalRing r = LocalRing::zmod(3, 2);
  RingMorphism id = RingMorphism::identity(r);
  CHECK(id.is_valid());
  CHECK(id.order() == 1);
}

TEST_CASE("x -> x+1 style maps are rejected") {
  // On GF(4), sending the generator to generator+1 does not preserve
  // multiplication (it is an additive translation on the generator).
  LocalRing r = LocalRing::gf(2, 2);
  RingElem g = r.morphism_generators()[0];
  // candidate image: g + 1 is actually g^2 (the conjugate root), which IS a
  // homomorphism; use image 1 instead, which kills multiplicativity.
  RingMorphism bad(r, r, {r.one()});
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("residue commutes with valid ring endomorphisms") {
  LocalRing r = LocalRing::gf(2, 3);
  RingMorphism f = RingMorphism::frobenius(r);
  RingMorphism fbar = f.induced_residue_morphism();
  for (int64_t i = 0; i < r.enum_size(); ++i) {
    RingElem a = r.elem_at(i);
    CHECK(r.residue(f.apply(a)) == fbar.apply(r.residue(a)));
  }
}

TEST_CASE("morphism validation reports witnesses") {
  LocalRing r = LocalRing::gf(2, 2);
  RingMorphism bad(r, r, {r.zero()});
  CHECK_THROWS_AS(bad.validate(), NotHomomorphismError);
}

TEST_CASE("Frobenius on a truncated polynomial ring is an endomorphism, not onto") {
  // GF(4)[t]/(t^2): x -> x^2, t -> t^2 = 0 kills the radical
  LocalRing r = LocalRing::trunc_poly(2, 2, 2);
  RingMorphism frob = RingMorphism::frobenius(r);
  CHECK(frob.is_valid());
  CHECK_FALSE(frob.is_automorphism());
  // coefficient-wise Frobenius (x -> x^2, t -> t) is a genuine automorphism
  auto gens = r.morphism_generators();
  REQUIRE(gens.size() == 2);
  RingMorphism coeff_frob(r, r, {r.mul(gens[0], gens[0]), gens[1]});
  CHECK(coeff_frob.is_valid());
  CHECK(coeff_frob.is_automorphism());
  CHECK(coeff_frob.order() == 2);
}

TEST_CASE("ring names round-trip") {
  for (const char* nm : {"Z9", "Z25", "F2", "F3", "F4", "F8", "F3t2"}) {
    CHECK(LocalRing::from_name(nm).name() == nm);
  }
}

TEST_CASE("enumeration cap is enforced") {
  LocalRing big = LocalRing::zmod(2, 14);  // 16384 > 10^4
  CHECK(big.order() == 16384);
  CHECK_THROWS_AS(big.enum_size(), TooLargeError);
  // pure arithmetic still works
  CHECK(big.is_one(big.mul(big.from_int(3), big.inv(big.from_int(3)))));
}
