#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "chevlab/autos.hpp"
#include "chevlab/decomp.hpp"

using namespace chevlab;

namespace {

ContextPtr nat(const char* phi, const char* ring) {
  return GroupContext::make(phi, LocalRing::from_name(ring), Representation::Kind::NaturalA,
                            false);
}
ContextPtr adj(const char* phi, const char* ring) {
  return GroupContext::make(phi, LocalRing::from_name(ring), Representation::Kind::Adjoint,
                            false);
}

Mat bruhat_product(const GroupContext& ctx, const BruhatForm& f) {
  Mat m = ctx.eval_word(f.t_word);
  m = ctx.mul(m, ctx.eval_word(f.u_word));
  m = ctx.mul(m, ctx.weyl_rep_matrix(f.weyl));
  return ctx.mul(m, ctx.eval_word(f.u2_word));
}

Mat gauss_product(const GroupContext& ctx, const GaussForm& f) {
  Mat m = ctx.eval_word(f.t_word);
  m = ctx.mul(m, ctx.eval_word(f.u1_word));
  m = ctx.mul(m, ctx.eval_word(f.v_word));
  return ctx.mul(m, ctx.eval_word(f.u2_word));
}

}  // namespace

TEST_CASE("unipotent normal form collects out-of-order letters") {
  auto ctx = nat("A2", "Z9");
  const LocalRing& r = ctx->ring();
  for (int64_t tv : {1, 2, 5}) {
    for (int64_t uv : {1, 4, 7}) {
      RingElem t = r.from_int(tv), u = r.from_int(uv);
      GroupWord w = {Letter::x(1, u), Letter::x(0, t)};
      GroupWord nf = unipotent_normal_form(*ctx, w);
      REQUIRE(nf.size() == 3);
      CHECK(nf[0].root == 0);
      CHECK(nf[1].root == 1);
      CHECK(nf[2].root == 2);
      CHECK(ctx->eval_word(nf) == ctx->eval_word(w));
    }
  }
}

TEST_CASE("already ordered words are unchanged; same-root letters merge") {
  auto ctx = adj("B2", "Z9");
  const LocalRing& r = ctx->ring();
  GroupWord w = {Letter::x(0, r.from_int(2)), Letter::x(1, r.from_int(3))};
  GroupWord nf = unipotent_normal_form(*ctx, w);
  REQUIRE(nf.size() == 2);
  CHECK(nf[0].root == 0);
  CHECK(nf[1].root == 1);
  CHECK(nf[0].param == r.from_int(2));
  GroupWord m = {Letter::x(0, r.from_int(2)), Letter::x(0, r.from_int(5))};
  GroupWord nfm = unipotent_normal_form(*ctx, m);
  REQUIRE(nfm.size() == 1);
  CHECK(nfm[0].param == r.from_int(7));
}

TEST_CASE("unique ordered product: random U-words renormalize consistently") {
  std::mt19937_64 rng(41);
  for (const char* phi : {"A2", "B2", "G2"}) {
    const char* ring = (phi[0] == 'G') ? "Z25" : "Z9";
    auto ctx = adj(phi, ring);
    CAPTURE(phi);
    for (int k = 0; k < 30; ++k) {
      GroupWord w = random_x_word(*ctx, 6, rng, true);
      GroupWord nf = unipotent_normal_form(*ctx, w);
      CHECK(ctx->eval_word(nf) == ctx->eval_word(w));
      // canonical order, no repeats
      for (size_t i = 0; i + 1 < nf.size(); ++i) CHECK(nf[i].root < nf[i + 1].root);
      // normal form of the normal form is itself
      GroupWord nf2 = unipotent_normal_form(*ctx, nf);
      REQUIRE(nf.size() == nf2.size());
      for (size_t i = 0; i < nf.size(); ++i) {
        CHECK(nf[i].root == nf2[i].root);
        CHECK(nf[i].param == nf2[i].param);
      }
      // word extraction from the matrix rebuilds the same normal form
      GroupWord ext = u_word_from_matrix(*ctx, ctx->eval_word(w));
      CHECK(ctx->eval_word(ext) == ctx->eval_word(w));
      REQUIRE(ext.size() == nf.size());
      for (size_t i = 0; i < nf.size(); ++i) CHECK(ext[i].root == nf[i].root);
    }
  }
}

TEST_CASE("Bruhat of elementary shapes") {
  auto ctx = nat("A2", "F3");
  const LocalRing& r = ctx->ring();
  // x_alpha(1): w = e, u = x_alpha(1)
  BruhatForm f = bruhat_decompose(*ctx, {Letter::x(0, r.one())});
  CHECK(f.verified);
  CHECK(f.weyl == ctx->roots().weyl_identity());
  CHECK(ctx->is_identity(ctx->eval_word(f.t_word)));
  CHECK(f.u2_word.empty());
  REQUIRE(f.u_word.size() == 1);
  CHECK(f.u_word[0].root == 0);
  CHECK(f.u_word[0].param == r.one());
  // w_gen(alpha, 1): torus and unipotent parts trivial
  BruhatForm g = bruhat_decompose(*ctx, {Letter::w(0, r.one())});
  CHECK(g.verified);
  CHECK(ctx->is_identity(ctx->eval_word(g.t_word)));
  CHECK(g.u_word.empty());
  CHECK(g.u2_word.empty());
  CHECK(ctx->roots().weyl()[static_cast<size_t>(g.weyl)].length == 1);
}

TEST_CASE("Bruhat u2 roots are sent negative by w") {
  std::mt19937_64 rng(5);
  struct Case {
    const char* phi;
    const char* ring;
  } cases[] = {{"A2", "F3"}, {"B2", "F3"}, {"G2", "F4"}, {"D4", "F2"}};
  for (auto cs : cases) {
    auto ctx = adj(cs.phi, cs.ring);
    CAPTURE(cs.phi);
    const RootSystem& rs = ctx->roots();
    int rounds = rs.rank() > 2 ? 12 : 40;
    for (int k = 0; k < rounds; ++k) {
      GroupWord w = random_x_word(*ctx, 5, rng);
      BruhatForm f = bruhat_decompose(*ctx, w);
      CHECK(f.verified);
      CHECK(bruhat_product(*ctx, f) == ctx->eval_word(w));
      for (const Letter& l : f.u2_word) {
        int img = rs.weyl()[static_cast<size_t>(f.weyl)].action[static_cast<size_t>(l.root)];
        CHECK_FALSE(rs.is_positive(img));
      }
      CHECK(f.t_in_H);
    }
  }
}

TEST_CASE("Bruhat uniqueness: shuffled words give identical canonical parts") {
  std::mt19937_64 rng(19);
  auto ctx = nat("A3", "F4");
  const LocalRing& r = ctx->ring();
  for (int k = 0; k < 30; ++k) {
    GroupWord w = random_x_word(*ctx, 5, rng);
    // equivalent word: conjugate a cancelling pair through, and pad with
    // x(t) x(-t) noise
    GroupWord w2;
    RingElem noise = r.elem_at(static_cast<int64_t>(rng() % 4));
    w2.push_back(Letter::x(2, noise));
    w2.push_back(Letter::x(2, r.neg(noise)));
    w2.insert(w2.end(), w.begin(), w.end());
    GroupWord pad = {Letter::x(1, noise), Letter::x(1, r.neg(noise))};
    w2.insert(w2.end(), pad.begin(), pad.end());
    REQUIRE(ctx->eval_word(w) == ctx->eval_word(w2));
    BruhatForm f1 = bruhat_decompose(*ctx, w);
    BruhatForm f2 = bruhat_decompose(*ctx, w2);
    CHECK(bruhat_fingerprint(*ctx, f1) == bruhat_fingerprint(*ctx, f2));
  }
}

TEST_CASE("exhaustive Bruhat over SL2(F3) against a brute-force oracle") {
  auto ctx = nat("A1", "F3");
  const LocalRing& r = ctx->ring();
  const RootSystem& rs = ctx->roots();
  // enumerate the 24 elements of SL2(F3) by closure over generator words
  std::map<std::string, GroupWord> elems;
  std::vector<GroupWord> frontier{{}};
  elems[ctx->encode(ctx->identity())] = {};
  while (!frontier.empty()) {
    std::vector<GroupWord> next;
    for (const GroupWord& w : frontier) {
      for (int root : {0, rs.negate(0)}) {
        for (int64_t tv : {1, 2}) {
          GroupWord w2 = w;
          w2.push_back(Letter::x(root, r.from_int(tv)));
          std::string key = ctx->encode(ctx->eval_word(w2));
          if (!elems.count(key)) {
            elems[key] = w2;
            next.push_back(w2);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  REQUIRE(elems.size() == 24);
  // oracle: enumerate all (t, u, w, u2) Bruhat products
  std::map<std::string, int> oracle_count;
  for (int64_t tau = 1; tau <= 2; ++tau) {
    for (int64_t a = 0; a < 3; ++a) {
      // w = e: t x(a)
      Mat m = ctx->mul(ctx->eval_letter(Letter::h(0, r.from_int(tau))),
                       ctx->eval_x(0, r.from_int(a)));
      oracle_count[ctx->encode(m)]++;
      // w = s: t x(a) n x(b)
      for (int64_t b = 0; b < 3; ++b) {
        Mat m2 = ctx->mul(m, ctx->eval_letter(Letter::w(0, r.one())));
        m2 = ctx->mul(m2, ctx->eval_x(0, r.from_int(b)));
        oracle_count[ctx->encode(m2)]++;
      }
    }
  }
  // every element is covered exactly once (Bruhat uniqueness)
  REQUIRE(oracle_count.size() == 24);
  for (const auto& [key, count] : oracle_count) CHECK(count == 1);
  // and the engine decomposes every element with matching product
  for (const auto& [key, w] : elems) {
    BruhatForm f = bruhat_decompose(*ctx, w);
    CHECK(f.verified);
    CHECK(ctx->encode(bruhat_product(*ctx, f)) == key);
  }
}

TEST_CASE("Bruhat rejects non-fields") {
  auto ctx = nat("A2", "Z9");
  CHECK_THROWS_AS(bruhat_decompose(*ctx, {}), NotAFieldError);
}

TEST_CASE("rank-1 crossing identity in the unit case") {
  auto ctx = nat("A1", "Z9");
  const LocalRing& r = ctx->ring();
  for (int64_t a = 0; a < 9; ++a) {
    for (int64_t b = 0; b < 9; ++b) {
      RingElem c = r.from_int(1 + a * b);
      if (!r.is_unit(c)) continue;
      // x(a) x_-(b) = x_-(b/c) h(c) x(a/c)
      Mat lhs = ctx->mul(ctx->eval_x(0, r.from_int(a)),
                         ctx->eval_x(ctx->roots().negate(0), r.from_int(b)));
      Mat rhs = ctx->eval_x(ctx->roots().negate(0), r.mul(r.from_int(b), r.inv(c)));
      rhs = ctx->mul(rhs, ctx->eval_letter(Letter::h(0, c)));
      rhs = ctx->mul(rhs, ctx->eval_x(0, r.mul(r.from_int(a), r.inv(c))));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Gauss of the identity is trivial") {
  auto ctx = adj("A2", "Z9");
  GaussForm f = gauss_decompose(*ctx, {});
  CHECK(f.verified);
  CHECK(ctx->is_identity(gauss_product(*ctx, f)));
  CHECK(f.u1_word.empty());
  CHECK(f.v_word.empty());
  CHECK(f.u2_word.empty());
}

TEST_CASE("Gauss of a VHU-shaped rank-1 word") {
  auto ctx = nat("A1", "Z9");
  const LocalRing& r = ctx->ring();
  GroupWord w = {Letter::x(ctx->roots().negate(0), r.from_int(3)),
                 Letter::h(0, r.from_int(4)), Letter::x(0, r.from_int(5))};
  GaussForm f = gauss_decompose(*ctx, w);
  CHECK(f.verified);
  CHECK(f.t_in_H);
  CHECK(gauss_product(*ctx, f) == ctx->eval_word(w));
}

TEST_CASE("Gauss round-trips on random words, including non-unit crossings") {
  std::mt19937_64 rng(101);
  struct Case {
    const char* phi;
    const char* ring;
  } cases[] = {{"A2", "Z9"}, {"A2", "F3t2"}, {"B2", "Z25"}, {"A3", "F2t2"}};
  for (auto c : cases) {
    auto ctx = adj(c.phi, c.ring);
    CAPTURE(c.phi);
    CAPTURE(c.ring);
    const LocalRing& r = ctx->ring();
    const RootSystem& rs = ctx->roots();
    for (int k = 0; k < 40; ++k) {
      GroupWord w = random_x_word(*ctx, 6, rng);
      GaussForm f = gauss_decompose(*ctx, w, 7);
      CHECK(f.verified);
      CHECK(gauss_product(*ctx, f) == ctx->eval_word(w));
      CHECK(f.t_in_H);  // elementary input
      CHECK(ctx->in_torus(ctx->eval_word(f.t_word)));
      CHECK(ctx->in_U(ctx->eval_word(f.u1_word)));
      CHECK(ctx->in_V(ctx->eval_word(f.v_word)));
      CHECK(ctx->in_U(ctx->eval_word(f.u2_word)));
      for (const Letter& l : f.v_word) CHECK_FALSE(rs.is_positive(l.root));
    }
    // the adversarial non-unit case: x(a) x_-(b) with 1 + ab in the radical
    RingElem a = r.one();
    RingElem b = r.sub(r.zero(), r.from_int(1));  // 1 + ab = 0
    GroupWord hard = {Letter::x(0, a), Letter::x(rs.negate(0), b)};
    GaussForm f = gauss_decompose(*ctx, hard, 7);
    CHECK(f.verified);
    CHECK(gauss_product(*ctx, f) == ctx->eval_word(hard));
  }
}

TEST_CASE("Gauss works in the natural type-A model") {
  auto ctx = nat("A2", "Z9");
  std::mt19937_64 rng(61);
  for (int k = 0; k < 20; ++k) {
    GroupWord w = random_x_word(*ctx, 6, rng);
    GaussForm f = gauss_decompose(*ctx, w, 2);
    CHECK(f.verified);
    CHECK(f.t_in_H);
    CHECK(gauss_product(*ctx, f) == ctx->eval_word(w));
  }
}

TEST_CASE("Gauss parts reduce to a factorization over the residue field") {
  auto ctx = adj("A2", "Z9");
  std::mt19937_64 rng(55);
  auto rctx = ctx->residue_context();
  for (int k = 0; k < 10; ++k) {
    GroupWord w = random_x_word(*ctx, 6, rng);
    GaussForm f = gauss_decompose(*ctx, w, 3);
    GroupElement g = ctx->from_word(w);
    GroupElement gbar = ctx->reduce_mod_radical(g);
    Mat prod = rctx->eval_word(ctx->reduce_mod_radical(ctx->from_word(f.t_word)).word());
    prod = rctx->mul(prod, rctx->eval_word(
                               ctx->reduce_mod_radical(ctx->from_word(f.u1_word)).word()));
    prod = rctx->mul(prod, rctx->eval_word(
                               ctx->reduce_mod_radical(ctx->from_word(f.v_word)).word()));
    prod = rctx->mul(prod, rctx->eval_word(
                               ctx->reduce_mod_radical(ctx->from_word(f.u2_word)).word()));
    CHECK(prod == gbar.mat());
  }
}

TEST_CASE("brute-force TUVU oracle covers SL2(Z4) and Gauss handles every element") {
  auto ctx = nat("A1", "Z4");
  const LocalRing& r = ctx->ring();
  const RootSystem& rs = ctx->roots();
  // enumerate the group by closure
  GroupEnumeration en = enumerate_elementary_group(*ctx, 10000);
  CHECK(en.order() == 48);  // |SL2(Z/4)|
  // every element is a product t * u1 * v * u2 (independent oracle for the
  // decomposition shape)
  std::set<std::string> covered;
  for (const RingElem& tau : r.units()) {
    Mat t = ctx->eval_letter(Letter::h(0, tau));
    for (int64_t a = 0; a < 4; ++a) {
      Mat tu = ctx->mul(t, ctx->eval_x(0, r.elem_at(a)));
      for (int64_t b = 0; b < 4; ++b) {
        Mat tuv = ctx->mul(tu, ctx->eval_x(rs.negate(0), r.elem_at(b)));
        for (int64_t c = 0; c < 4; ++c)
          covered.insert(ctx->encode(ctx->mul(tuv, ctx->eval_x(0, r.elem_at(c)))));
      }
    }
  }
  CHECK(covered.size() == 48);
  for (const auto& [key, idx] : en.index) {
    CHECK(covered.count(key) == 1);
    // and the engine finds a verified factorization for the element's word
    GroupWord w;
    for (int v = idx; en.parent[static_cast<size_t>(v)] >= 0;
         v = en.parent[static_cast<size_t>(v)]) {
      const GroupWord& gw = en.gen_words[static_cast<size_t>(en.gen_used[static_cast<size_t>(v)])];
      GroupWord next = gw;
      next.insert(next.end(), w.begin(), w.end());
      w = std::move(next);
    }
    GaussForm f = gauss_decompose(*ctx, w, 1);
    CHECK(f.verified);
    CHECK(gauss_product(*ctx, f) == en.elements[static_cast<size_t>(idx)]);
  }
}

TEST_CASE("torus matrices round-trip through h-words") {
  auto ctx = adj("A2", "Z9");
  const LocalRing& r = ctx->ring();
  for (const RingElem& t1 : r.units()) {
    for (const RingElem& t2 : r.units()) {
      Mat m = ctx->mul(ctx->eval_letter(Letter::h(0, t1)), ctx->eval_letter(Letter::h(1, t2)));
      auto w = h_word_from_torus(*ctx, m);
      REQUIRE(w.has_value());
      CHECK(ctx->eval_word(*w) == m);
    }
  }
}

TEST_CASE("torus conjugation parameters match the pairing rule") {
  auto ctx = adj("B2", "Z25");
  const LocalRing& r = ctx->ring();
  const RootSystem& rs = ctx->roots();
  RingElem tau = r.from_int(7);
  for (int beta = 0; beta < rs.num_positive(); ++beta) {
    Mat h = ctx->eval_letter(Letter::h(beta, tau));
    for (int g = 0; g < rs.num_roots(); ++g) {
      CHECK(torus_conj_param(*ctx, h, g) == r.pow(tau, rs.pairing(g, beta)));
      CHECK(torus_action_on_root(*ctx, {Letter::h(beta, tau)}, g) ==
            r.pow(tau, rs.pairing(g, beta)));
    }
  }
}

TEST_CASE("decompositions accept words with w, h, and torus-character letters") {
  std::mt19937_64 rng(171);
  auto mixed_word = [&](const GroupContext& ctx, bool with_char) {
    const LocalRing& r = ctx.ring();
    const RootSystem& rs = ctx.roots();
    auto units = r.units();
    GroupWord w = random_x_word(ctx, 3, rng);
    w.push_back(Letter::w(static_cast<int>(rng() % rs.num_positive()),
                          units[rng() % units.size()]));
    w.push_back(Letter::h(static_cast<int>(rng() % rs.num_roots()),
                          units[rng() % units.size()]));
    GroupWord tail = random_x_word(ctx, 2, rng);
    w.insert(w.end(), tail.begin(), tail.end());
    if (with_char) {
      std::vector<RingElem> chi;
      for (int i = 0; i < rs.rank(); ++i) chi.push_back(units[rng() % units.size()]);
      w.push_back(Letter::torus_char(chi));
    }
    return w;
  };
  // Bruhat over a field, adjoint model, h/w letters
  auto f3 = adj("B2", "F3");
  for (int k = 0; k < 15; ++k) {
    GroupWord w = mixed_word(*f3, false);
    BruhatForm f = bruhat_decompose(*f3, w);
    CHECK(f.verified);
    CHECK(f.t_in_H);
    CHECK(bruhat_product(*f3, f) == f3->eval_word(w));
  }
  // with a torus character the torus part leaves H but is still exact
  for (int k = 0; k < 8; ++k) {
    GroupWord w = mixed_word(*f3, true);
    BruhatForm f = bruhat_decompose(*f3, w);
    CHECK(f.verified);
    CHECK(bruhat_product(*f3, f) == f3->eval_word(w));
  }
  // Gauss over a local ring
  auto z9 = adj("A2", "Z9");
  for (int k = 0; k < 15; ++k) {
    GroupWord w = mixed_word(*z9, false);
    GaussForm f = gauss_decompose(*z9, w, 5);
    CHECK(f.verified);
    CHECK(f.t_in_H);
    CHECK(gauss_product(*z9, f) == z9->eval_word(w));
  }
  // adjoint torus multiples land in T, possibly outside H
  for (int k = 0; k < 8; ++k) {
    GroupWord w = mixed_word(*z9, true);
    GaussForm f = gauss_decompose(*z9, w, 5);
    CHECK(f.verified);
    CHECK(gauss_product(*z9, f) == z9->eval_word(w));
    CHECK(z9->in_torus(z9->eval_word(f.t_word)));
  }
}

TEST_CASE("Bruhat uniqueness holds in the adjoint model too") {
  auto ctx = adj("B2", "F3");
  const LocalRing& r = ctx->ring();
  std::mt19937_64 rng(191);
  for (int k = 0; k < 20; ++k) {
    GroupWord w = random_x_word(*ctx, 5, rng);
    GroupWord w2 = {Letter::x(1, r.one()), Letter::x(1, r.neg(r.one()))};
    w2.insert(w2.end(), w.begin(), w.end());
    BruhatForm f1 = bruhat_decompose(*ctx, w);
    BruhatForm f2 = bruhat_decompose(*ctx, w2);
    CHECK(bruhat_fingerprint(*ctx, f1) == bruhat_fingerprint(*ctx, f2));
  }
}

TEST_CASE("Bruhat over the natural A1 model handles all SL2(F5) shapes") {
  auto ctx = nat("A1", "F5");
  const LocalRing& r = ctx->ring();
  const RootSystem& rs = ctx->roots();
  std::mt19937_64 rng(77);
  for (int k = 0; k < 60; ++k) {
    GroupWord w;
    for (int j = 0; j < 4; ++j) {
      int root = (rng() & 1) ? 0 : rs.negate(0);
      w.push_back(Letter::x(root, r.elem_at(static_cast<int64_t>(rng() % 5))));
    }
    BruhatForm f = bruhat_decompose(*ctx, w);
    CHECK(f.verified);
    CHECK(bruhat_product(*ctx, f) == ctx->eval_word(w));
  }
}
