#include "doctest.h"

#include <random>

#include "chevlab/group.hpp"

using namespace chevlab;

namespace {

ContextPtr nat(const char* phi, const char* ring) {
  return GroupContext::make(phi, LocalRing::from_name(ring), Representation::Kind::NaturalA);
}
ContextPtr adj(const char* phi, const char* ring) {
  return GroupContext::make(phi, LocalRing::from_name(ring), Representation::Kind::Adjoint);
}

}  // namespace

TEST_CASE("A1 natural: w and h have the classical matrices") {
  auto ctx = nat("A1", "Z9");
  const LocalRing& r = ctx->ring();
  GroupElement w1 = ctx->w_gen(0, r.one());
  // [[0,1],[-1,0]]
  CHECK(w1.mat().at(0, 0) == r.zero());
  CHECK(w1.mat().at(0, 1) == r.one());
  CHECK(w1.mat().at(1, 0) == r.from_int(-1));
  CHECK(w1.mat().at(1, 1) == r.zero());
  for (const RingElem& t : r.units()) {
    GroupElement h = ctx->h_gen(0, t);
    CHECK(h.mat().at(0, 0) == t);
    CHECK(h.mat().at(1, 1) == r.inv(t));
    CHECK(h.mat().at(0, 1) == r.zero());
    CHECK(h.mat().at(1, 0) == r.zero());
  }
  CHECK(ctx->h_gen(0, r.one()) == ctx->one());
}

TEST_CASE("A2 natural over Z9: basic commutator relation") {
  auto ctx = nat("A2", "Z9");
  const LocalRing& r = ctx->ring();
  for (int64_t tv = 0; tv < 9; tv += 2) {
    for (int64_t uv = 1; uv < 9; uv += 3) {
      RingElem t = r.from_int(tv), u = r.from_int(uv);
      GroupElement c = ctx->commutator(ctx->x_gen(0, t), ctx->x_gen(1, u));
      // equals x_{a1+a2}(t u): entry (0,2) is t u
      CHECK(c.mat().at(0, 2) == r.mul(t, u));
      CHECK(c == ctx->x_gen(2, r.mul(t, u)));
    }
  }
}

TEST_CASE("one-parameter subgroup laws") {
  std::mt19937_64 rng(7);
  for (auto mk : {adj, nat}) {
    auto ctx = mk("A2", "Z9");
    const LocalRing& r = ctx->ring();
    for (int root = 0; root < ctx->roots().num_roots(); ++root) {
      for (int k = 0; k < 20; ++k) {
        RingElem t = r.elem_at(static_cast<int64_t>(rng() % 9));
        RingElem u = r.elem_at(static_cast<int64_t>(rng() % 9));
        CHECK(ctx->mul(ctx->x_gen(root, t), ctx->x_gen(root, u)) ==
              ctx->x_gen(root, r.add(t, u)));
      }
      CHECK(ctx->mul(ctx->x_gen(root, r.from_int(5)), ctx->x_gen(root, r.from_int(-5))) ==
            ctx->one());
    }
  }
}

TEST_CASE("commutator of an element with itself is the identity") {
  auto ctx = adj("B2", "Z25");
  std::mt19937_64 rng(3);
  GroupElement g = ctx->from_word(random_x_word(*ctx, 4, rng));
  CHECK(ctx->commutator(g, g) == ctx->one());
}

TEST_CASE("h_gen is multiplicative on units") {
  struct Case {
    const char* phi;
    const char* ring;
  } cases[] = {{"A2", "Z9"}, {"A2", "F3t2"}, {"G2", "F8"}};
  for (auto c : cases) {
    auto ctx = adj(c.phi, c.ring);
    const LocalRing& r = ctx->ring();
    CAPTURE(c.ring);
    for (const RingElem& t : r.units())
      for (const RingElem& u : r.units())
        CHECK(ctx->mul(ctx->h_gen(0, t), ctx->h_gen(0, u)) == ctx->h_gen(0, r.mul(t, u)));
  }
}

TEST_CASE("torus elements act by characters") {
  auto ctx = adj("A2", "Z9");
  const LocalRing& r = ctx->ring();
  // chi == 1 -> identity
  CHECK(ctx->torus_element({r.one(), r.one()}) == ctx->one());
  RingElem d1 = r.from_int(2), d2 = r.from_int(4);
  GroupElement t = ctx->torus_element({d1, d2});
  // acts on e_{a1+a2} by d1*d2 = 8
  int b = ctx->rep().basis_of_root(2);
  CHECK(t.mat().at(b, b) == r.from_int(8));
  // conjugation scales simple-root generators by chi(alpha_i)
  for (int i = 0; i < 2; ++i) {
    for (int64_t tv : {1, 2, 5}) {
      RingElem s = r.from_int(tv);
      GroupElement lhs = ctx->conjugate(ctx->x_gen(i, s), t);
      RingElem di = (i == 0) ? d1 : d2;
      CHECK(lhs == ctx->x_gen(i, r.mul(di, s)));
    }
  }
}

TEST_CASE("commutator formula words match matrix commutators") {
  std::mt19937_64 rng(11);
  for (const char* phi : {"A2", "B2", "G2"}) {
    const char* ring = (phi[0] == 'G') ? "Z25" : "Z9";
    auto ctx = adj(phi, ring);
    const LocalRing& r = ctx->ring();
    CAPTURE(phi);
    const RootSystem& rs = ctx->roots();
    for (int trial = 0; trial < 60; ++trial) {
      int a = static_cast<int>(rng() % static_cast<uint64_t>(rs.num_roots()));
      int b = static_cast<int>(rng() % static_cast<uint64_t>(rs.num_roots()));
      if (a == b || b == rs.negate(a)) continue;
      RingElem t = r.elem_at(static_cast<int64_t>(rng() % static_cast<uint64_t>(r.order())));
      RingElem u = r.elem_at(static_cast<int64_t>(rng() % static_cast<uint64_t>(r.order())));
      GroupElement lhs = ctx->commutator(ctx->x_gen(a, t), ctx->x_gen(b, u));
      GroupElement rhs = ctx->from_word(ctx->commutator_formula(a, b, t, u));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("B2 short/long commutator has the (1,1) and (2,1) terms") {
  auto ctx = adj("B2", "Z9");
  const RootSystem& rs = ctx->roots();
  // short simple root is index 1 (alpha_2 in B2), long simple is 0
  int short_root = rs.simple_root_index(1);
  int long_root = rs.simple_root_index(0);
  REQUIRE_FALSE(rs.root(short_root).is_long);
  const auto& terms = ctx->commutator_terms(short_root, long_root);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].i == 1);
  CHECK(terms[0].j == 1);
  CHECK(terms[1].i == 2);
  CHECK(terms[1].j == 1);
}

TEST_CASE("G2 short/long commutator has the classical four terms") {
  auto ctx = adj("G2", "Z25");
  const RootSystem& rs = ctx->roots();
  int short_root = rs.simple_root_index(0);
  int long_root = rs.simple_root_index(1);
  const auto& terms = ctx->commutator_terms(short_root, long_root);
  REQUIRE(terms.size() == 4);
  // exponent pairs (i,j) for roots i*short + j*long
  CHECK(terms[0].i == 1);
  CHECK(terms[0].j == 1);
  CHECK(terms[1].i == 2);
  CHECK(terms[1].j == 1);
  CHECK(terms[2].i == 3);
  CHECK(terms[2].j == 1);
  CHECK(terms[3].i == 3);
  CHECK(terms[3].j == 2);
}

TEST_CASE("E6-scale contexts evaluate and decompose") {
  auto ctx = adj("E6", "F3");
  const LocalRing& r = ctx->ring();
  CHECK(ctx->dim() == 78);
  GroupElement g = ctx->mul(ctx->x_gen(0, r.one()),
                            ctx->x_gen(ctx->roots().negate(5), r.from_int(2)));
  CHECK(ctx->mul(g, ctx->inv(g)) == ctx->one());
}

TEST_CASE("commuting generators give the empty word") {
  auto ctx = adj("A2", "Z9");
  const RootSystem& rs = ctx->roots();
  // alpha_1 and -(alpha_1+alpha_2): sum is -alpha_2... pick a pair with no
  // i a + j b in the system: alpha_1 + alpha_2 and alpha_2... that has none
  int high = 2;  // alpha1+alpha2
  int a2 = rs.simple_root_index(1);
  CHECK(ctx->commutator_terms(high, a2).empty());
}

TEST_CASE("natural and adjoint commutator tables agree for type A") {
  for (const char* phi : {"A2", "A3"}) {
    auto repn = get_representation(phi[0], phi[1] - '0', Representation::Kind::NaturalA);
    auto repa = get_representation(phi[0], phi[1] - '0', Representation::Kind::Adjoint);
    const RootSystem& rs = repn->roots();
    CAPTURE(phi);
    for (int a = 0; a < rs.num_roots(); ++a)
      for (int b = 0; b < rs.num_roots(); ++b) {
        if (a == b || b == rs.negate(a)) continue;
        auto tn = derive_commutator_terms(*repn, a, b);
        auto ta = derive_commutator_terms(*repa, a, b);
        REQUIRE(tn.size() == ta.size());
        for (size_t k = 0; k < tn.size(); ++k) {
          CHECK(tn[k].root == ta[k].root);
          CHECK(tn[k].coeff == ta[k].coeff);
        }
      }
  }
}

TEST_CASE("reduce_mod_radical is a group homomorphism") {
  auto ctx = adj("A2", "Z9");
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    GroupElement g1 = ctx->from_word(random_x_word(*ctx, 3, rng));
    GroupElement g2 = ctx->from_word(random_x_word(*ctx, 3, rng));
    GroupElement lhs = ctx->reduce_mod_radical(ctx->mul(g1, g2));
    GroupElement prod = ctx->residue_context()->mul(ctx->reduce_mod_radical(g1),
                                                    ctx->reduce_mod_radical(g2));
    CHECK(lhs == prod);
  }
  // x_alpha(3) over Z/9 reduces to the identity over F_3
  GroupElement g = ctx->x_gen(0, ctx->ring().from_int(3));
  CHECK(ctx->reduce_mod_radical(g) == ctx->residue_context()->one());
}

TEST_CASE("shape membership: U, V, torus") {
  auto ctx = adj("A2", "Z9");
  const LocalRing& r = ctx->ring();
  GroupElement u = ctx->mul(ctx->x_gen(0, r.from_int(2)), ctx->x_gen(2, r.from_int(5)));
  CHECK(ctx->in_U(u));
  CHECK_FALSE(ctx->in_V(u));
  GroupElement w = ctx->w_gen(0, r.one());
  CHECK_FALSE(ctx->in_U(w));
  CHECK_FALSE(ctx->in_V(w));
  CHECK_FALSE(ctx->in_torus(w));
  GroupElement h = ctx->h_gen(0, r.from_int(2));
  CHECK(ctx->in_torus(h));
  GroupElement v = ctx->x_gen(ctx->roots().negate(0), r.from_int(4));
  CHECK(ctx->in_V(v));
  CHECK(ctx->in_U(ctx->one()));
  CHECK(ctx->in_V(ctx->one()));
  CHECK(ctx->in_torus(ctx->one()));
}

TEST_CASE("Weyl conjugation sends root subgroups to root subgroups") {
  auto ctx = adj("B2", "Z9");
  const RootSystem& rs = ctx->roots();
  const LocalRing& r = ctx->ring();
  for (int i = 0; i < rs.rank(); ++i) {
    GroupElement n = ctx->w_gen(rs.simple_root_index(i), r.one());
    for (int b = 0; b < rs.num_roots(); ++b) {
      int img = rs.reflect_simple(b, i);
      int sign = ctx->conj_sign({i}, b);
      for (int64_t tv : {1, 2, 7}) {
        RingElem t = r.from_int(tv);
        GroupElement lhs = ctx->conjugate(ctx->x_gen(b, t), n);
        RingElem s = sign == 1 ? t : r.neg(t);
        CHECK(lhs == ctx->x_gen(img, s));
      }
    }
  }
}

TEST_CASE("adjoint h matches the torus character of pairings") {
  auto ctx = adj("G2", "Z25");
  const LocalRing& r = ctx->ring();
  const RootSystem& rs = ctx->roots();
  for (int aidx : {rs.simple_root_index(0), rs.simple_root_index(1)}) {
    RingElem t = r.from_int(7);
    GroupElement h = ctx->h_gen(aidx, t);
    CHECK(ctx->in_torus(h));
    for (int b = 0; b < rs.num_roots(); ++b) {
      int bas = ctx->rep().basis_of_root(b);
      CHECK(h.mat().at(bas, bas) == r.pow(t, rs.pairing(b, aidx)));
    }
  }
}

TEST_CASE("word witnesses evaluate back to their matrices") {
  auto ctx = adj("A3", "F8");
  std::mt19937_64 rng(17);
  for (int k = 0; k < 25; ++k) {
    GroupElement g = ctx->from_word(random_x_word(*ctx, 5, rng));
    CHECK(ctx->eval_word(g.word()) == g.mat());
    GroupElement gi = ctx->inv(g);
    CHECK(ctx->mul(g, gi) == ctx->one());
  }
}

TEST_CASE("invertibility table is enforced at context creation") {
  CHECK_THROWS_AS(adj("A2", "F4"), ContextMismatchError);   // needs 1/2
  CHECK_THROWS_AS(adj("B2", "F2"), ContextMismatchError);   // needs 1/2
  CHECK_THROWS_AS(adj("G2", "Z9"), ContextMismatchError);   // needs 1/3
  CHECK_NOTHROW(adj("A3", "F4"));                           // no constraint for A3
  CHECK_NOTHROW(adj("G2", "F4"));                           // 3 = 1 in char 2
  CHECK_NOTHROW(adj("D4", "F2"));                           // no constraint
}

TEST_CASE("torus characters are rejected outside the adjoint model") {
  auto ctx = nat("A2", "Z9");
  const LocalRing& r = ctx->ring();
  CHECK_THROWS_AS(ctx->torus_element({r.one(), r.one()}), ContextMismatchError);
}

TEST_CASE("error paths: opposite roots, non-units, mixed contexts") {
  auto ctx = adj("A2", "Z9");
  const LocalRing& r = ctx->ring();
  CHECK_THROWS_AS(ctx->commutator_terms(0, ctx->roots().negate(0)), OppositeRootsError);
  CHECK_THROWS_AS(ctx->w_gen(0, r.from_int(3)), NotUnitError);  // 3 in Rad Z/9
  CHECK_THROWS_AS(ctx->h_gen(0, r.zero()), NotUnitError);
  auto other = adj("A2", "Z25");
  CHECK_THROWS_AS(ctx->mul(ctx->one(), other->one()), ContextMismatchError);
}

TEST_CASE("matrix inverse by elimination agrees with word inverse") {
  auto ctx = adj("B2", "Z25");
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    GroupElement g = ctx->from_word(random_x_word(*ctx, 6, rng));
    Mat mi = ctx->inverse(g.mat());
    CHECK(ctx->is_identity(ctx->mul(g.mat(), mi)));
    CHECK(mi == ctx->inv(g).mat());
  }
}
