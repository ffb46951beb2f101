#include "doctest.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "chevlab/cache.hpp"
#include "chevlab/fixtures.hpp"
#include "chevlab/report.hpp"

using namespace chevlab;
using nlohmann::json;

namespace {

struct TempCacheDir {
  std::string path;
  TempCacheDir() {
    path = (std::filesystem::temp_directory_path() / "chevlab-test-cache").string();
    std::filesystem::remove_all(path);
    setenv("CHEVLAB_CACHE", path.c_str(), 1);
  }
  ~TempCacheDir() {
    std::filesystem::remove_all(path);
    unsetenv("CHEVLAB_CACHE");
  }
};

}  // namespace

TEST_CASE("reports are byte-identical below the quarantined header") {
  json config = {{"command", "test"}, {"seed", 1}};
  Report a(config), b(config);
  a.add({{"x", 1}});
  a.add({{"y", json::array({1, 2, 3})}});
  b.add({{"x", 1}});
  b.add({{"y", json::array({1, 2, 3})}});
  CHECK(Report::same_below_header(a.to_text(), b.to_text()));
  Report c(config);
  c.add({{"x", 2}});
  CHECK_FALSE(Report::same_below_header(a.to_text(), c.to_text()));
  // header line carries the schema
  CHECK(a.to_text().find("chevlab.report.v1") != std::string::npos);
  // config is embedded for replay
  CHECK(a.to_text().find("\"config\"") != std::string::npos);
}

TEST_CASE("table cache reloads bit-exactly and faster than building") {
  TempCacheDir tmp;
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  bool from_cache = true;
  TableBundle built = load_or_build_tables('D', 4, &from_cache);
  auto t1 = Clock::now();
  CHECK_FALSE(from_cache);  // cache directory was auto-created and filled
  TableBundle loaded = load_or_build_tables('D', 4, &from_cache);
  auto t2 = Clock::now();
  CHECK(from_cache);
  // bit-exact: identical serialized tables
  CHECK(tables_to_json(built).dump() == tables_to_json(loaded).dump());
  auto build_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
  auto load_us = std::chrono::duration_cast<std::chrono::microseconds>(t2 - t1).count();
  CHECK(load_us <= build_us);  // timing headroom is reported by the CLI cache command
}

TEST_CASE("corrupt cache files are recomputed and overwritten") {
  TempCacheDir tmp;
  bool from_cache = true;
  load_or_build_tables('B', 2, &from_cache);
  REQUIRE_FALSE(from_cache);
  {
    std::ofstream out(cache_path('B', 2));
    out << "{\"version\":\"v0-garbage\"}\n";
  }
  TableBundle again = load_or_build_tables('B', 2, &from_cache);
  CHECK_FALSE(from_cache);  // version mismatch forced a recompute
  CHECK(again.adjoint->dim() == 10);
  load_or_build_tables('B', 2, &from_cache);
  CHECK(from_cache);  // overwritten file is valid again
}

TEST_CASE("cached bundles behave identically to fresh ones") {
  TempCacheDir tmp;
  TableBundle b1 = build_tables('G', 2);
  save_tables(b1);
  bool from_cache = false;
  TableBundle b2 = load_or_build_tables('G', 2, &from_cache);
  REQUIRE(from_cache);
  LocalRing r = LocalRing::from_name("Z25");
  ContextPtr c1 = GroupContext::make(b1.adjoint, r);
  ContextPtr c2 = GroupContext::make(b2.adjoint, r);
  c2->preload_commutator_tables(b2.commutator);
  for (int a = 0; a < c1->roots().num_roots(); ++a) {
    CHECK(c1->eval_x(a, r.from_int(7)) == c2->eval_x(a, r.from_int(7)));
    for (int b = 0; b < c1->roots().num_roots(); ++b) {
      if (a == b || b == c1->roots().negate(a)) continue;
      const auto& t1 = c1->commutator_terms(a, b);
      const auto& t2 = c2->commutator_terms(a, b);
      REQUIRE(t1.size() == t2.size());
      for (size_t k = 0; k < t1.size(); ++k) {
        CHECK(t1[k].root == t2[k].root);
        CHECK(t1[k].coeff == t2[k].coeff);
      }
    }
  }
}

TEST_CASE("ring descriptors parse in both spellings") {
  CHECK(ring_from_json(json::parse(R"({"kind":"Zmod","p":3,"k":2})")).name() == "Z9");
  CHECK(ring_from_json(json::parse(R"({"kind":"GF","p":2,"n":3})")).name() == "F8");
  CHECK(ring_from_json(json::parse(R"({"kind":"TruncPoly","p":2,"n":1,"deg":2})")).name() ==
        "F2t2");
  CHECK(ring_from_json(json("F4")).order() == 4);
  for (const char* nm : {"Z9", "F8", "F3t2"}) {
    LocalRing r = LocalRing::from_name(nm);
    CHECK(ring_from_json(ring_to_json(r)).same_ring(r));
  }
  CHECK_THROWS_AS(ring_from_json(json::parse(R"({"kind":"What"})")), ParseError);
}

TEST_CASE("word files in the documented format evaluate") {
  auto ctx = GroupContext::make("A2", LocalRing::from_name("Z9"),
                                Representation::Kind::NaturalA);
  json j = json::parse(R"([{"x":{"root":[1,0],"t":"4"}},{"h":{"root":[0,1],"t":"2"}}])");
  GroupWord w = word_from_json(*ctx, j);
  REQUIRE(w.size() == 2);
  CHECK(w[0].kind == Letter::Kind::X);
  CHECK(w[0].root == 0);
  CHECK(w[0].param == ctx->ring().from_int(4));
  CHECK(w[1].kind == Letter::Kind::H);
  // round trip
  json j2 = word_to_json(*ctx, w);
  GroupWord w2 = word_from_json(*ctx, j2);
  CHECK(ctx->eval_word(w) == ctx->eval_word(w2));
  CHECK_THROWS_AS(word_from_json(*ctx, json::parse(R"([{"what":1}])")), ParseError);
}

TEST_CASE("automorphism descriptors build and validate") {
  auto ctx = GroupContext::make("A2", LocalRing::from_name("Z9"),
                                Representation::Kind::Adjoint);
  json j = json::parse(R"({
    "factors": [
      {"inner": {"word": [{"x": {"root": [1,0], "t": "1"}}]}},
      {"diagonal": {"d": ["2", "4"]}},
      {"graph": {"perm": [1, 0]}},
      {"ring": {"named": "identity"}},
      {"central": {"assignments": []}}
    ]})");
  StandardAutomorphism a = automorphism_from_json(ctx, j);
  CHECK(a.factors().size() == 5);
  // a bad graph factor is rejected at validation
  json bad = json::parse(R"({"factors":[{"graph":{"perm":[0,0]}}]})");
  CHECK_THROWS_AS(automorphism_from_json(ctx, bad), AutosError);
}

TEST_CASE("matrix export carries the ring header") {
  auto ctx = GroupContext::make("A1", LocalRing::from_name("Z9"),
                                Representation::Kind::NaturalA);
  json j = mat_to_json(*ctx, ctx->identity());
  CHECK(j.at("ring").at("name") == "Z9");
  CHECK(j.at("rows").size() == 2);
}
