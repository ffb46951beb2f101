#include "doctest.h"

#include <map>

#include "chevlab/rootsys.hpp"

using namespace chevlab;

namespace {

int expected_positive_count(char t, int l) {
  switch (t) {
    case 'A':
      return l * (l + 1) / 2;
    case 'B':
    case 'C':
      return l * l;
    case 'D':
      return l * (l - 1);
    case 'E':
      return l == 6 ? 36 : (l == 7 ? 63 : 120);
    case 'F':
      return 24;
    case 'G':
      return 6;
  }
  return -1;
}

int64_t factorial(int n) {
  int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int64_t expected_weyl_order(char t, int l) {
  switch (t) {
    case 'A':
      return factorial(l + 1);
    case 'B':
    case 'C':
      return (int64_t{1} << l) * factorial(l);
    case 'D':
      return (int64_t{1} << (l - 1)) * factorial(l);
    case 'E':
      return l == 6 ? 51840 : -1;
    case 'F':
      return 1152;
    case 'G':
      return 12;
  }
  return -1;
}

}  // namespace

TEST_CASE("positive root counts match the closure computation") {
  struct Case {
    char t;
    int l;
  } cases[] = {{'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3},
               {'D', 4}, {'D', 5}, {'E', 6}, {'F', 4}, {'G', 2}};
  for (auto c : cases) {
    RootSystem rs = RootSystem::build(c.t, c.l);
    CAPTURE(rs.name());
    CHECK(rs.num_positive() == expected_positive_count(c.t, c.l));
  }
}

TEST_CASE("A2 positive roots in height order") {
  RootSystem rs = RootSystem::build('A', 2);
  REQUIRE(rs.num_positive() == 3);
  CHECK(rs.root(0).coeffs == std::vector<int>{1, 0});
  CHECK(rs.root(1).coeffs == std::vector<int>{0, 1});
  CHECK(rs.root(2).coeffs == std::vector<int>{1, 1});
  CHECK(rs.root(2).height == 2);
}

TEST_CASE("G2 has max height 5 and the stated pairings") {
  RootSystem rs = RootSystem::build('G', 2);
  CHECK(rs.num_positive() == 6);
  CHECK(rs.max_height() == 5);
  int s = rs.simple_root_index(0);  // short
  int l = rs.simple_root_index(1);  // long
  CHECK(rs.pairing(s, l) == -1);
  CHECK(rs.pairing(l, s) == -3);
  CHECK_FALSE(rs.root(s).is_long);
  CHECK(rs.root(l).is_long);
}

TEST_CASE("root strings satisfy <beta,alpha^vee> = p - q") {
  for (const char* nm : {"A2", "B2", "G2", "D4"}) {
    RootSystem rs = RootSystem::from_name(nm);
    CAPTURE(nm);
    for (int a = 0; a < rs.num_roots(); ++a) {
      for (int b = 0; b < rs.num_roots(); ++b) {
        if (a == b || rs.negate(a) == b) continue;
        auto [p, q] = rs.root_string(a, b);
        CHECK(rs.pairing(b, a) == p - q);
      }
    }
  }
}

TEST_CASE("A2 root string example") {
  RootSystem rs = RootSystem::build('A', 2);
  auto [p, q] = rs.root_string(rs.simple_root_index(0), rs.simple_root_index(1));
  CHECK(p == 0);
  CHECK(q == 1);
}

TEST_CASE("Weyl group orders") {
  struct Case {
    char t;
    int l;
  } cases[] = {{'A', 2}, {'A', 3}, {'B', 2}, {'C', 3}, {'D', 4}, {'F', 4}, {'G', 2}};
  for (auto c : cases) {
    RootSystem rs = RootSystem::build(c.t, c.l);
    CAPTURE(rs.name());
    CHECK(rs.weyl_order() == expected_weyl_order(c.t, c.l));
  }
}

TEST_CASE("E6 Weyl group has 51840 elements") {
  RootSystem rs = RootSystem::build('E', 6);
  CHECK(rs.weyl_order() == 51840);
}

TEST_CASE("Weyl length equals the inversion count") {
  for (const char* nm : {"A2", "B2", "A3", "G2"}) {
    RootSystem rs = RootSystem::from_name(nm);
    CAPTURE(nm);
    for (const WeylElement& w : rs.weyl()) {
      int inv = 0;
      for (int r = 0; r < rs.num_positive(); ++r)
        if (!rs.is_positive(w.action[static_cast<size_t>(r)])) ++inv;
      CHECK(w.length == inv);
      CHECK(static_cast<int>(w.word.size()) == w.length);
    }
  }
}

TEST_CASE("Weyl action preserves Cartan pairings") {
  RootSystem rs = RootSystem::build('B', 2);
  for (const WeylElement& w : rs.weyl()) {
    for (int a = 0; a < rs.num_roots(); ++a)
      for (int b = 0; b < rs.num_roots(); ++b) {
        if (a == rs.negate(b)) continue;
        CHECK(rs.pairing(w.action[static_cast<size_t>(b)], w.action[static_cast<size_t>(a)]) ==
              rs.pairing(b, a));
      }
  }
}

TEST_CASE("cell filter agrees with the descent characterization") {
  struct Case {
    const char* nm;
    std::vector<int> I;
  } cases[] = {{"A2", {0}}, {"A3", {0, 1}}, {"B2", {1}}, {"G2", {0}}, {"D4", {0, 1, 2}}};
  for (const auto& c : cases) {
    RootSystem rs = RootSystem::from_name(c.nm);
    CAPTURE(c.nm);
    CHECK(rs.cell_filter(c.I) == rs.cell_filter_by_descent(c.I));
  }
}

TEST_CASE("cell filter edge cases") {
  RootSystem rs = RootSystem::build('A', 2);
  // empty constraint keeps all of W
  CHECK(rs.cell_filter({}).size() == 6);
  // all simple indices keeps only the identity
  auto full = rs.cell_filter({0, 1});
  REQUIRE(full.size() == 1);
  CHECK(rs.weyl()[static_cast<size_t>(full[0])].length == 0);
  // single constraint keeps |W| / 2 elements in rank 2... for A2, 3 of 6
  CHECK(rs.cell_filter({0}).size() == 3);
}

TEST_CASE("Poincare polynomial consistency via BFS levels") {
  for (const char* nm : {"A2", "B2", "A3"}) {
    RootSystem rs = RootSystem::from_name(nm);
    CAPTURE(nm);
    std::map<int, int> by_len;
    for (const WeylElement& w : rs.weyl()) by_len[w.length]++;
    // levels 0 and max are single elements; level sums match |W|
    CHECK(by_len[0] == 1);
    CHECK(by_len[rs.num_positive()] == 1);  // longest element
    int total = 0;
    for (auto& [len, n] : by_len) total += n;
    CHECK(total == rs.weyl_order());
  }
}

TEST_CASE("diagram automorphism counts") {
  CHECK(RootSystem::build('A', 3).diagram_automorphisms().size() == 2);
  CHECK(RootSystem::build('D', 4).diagram_automorphisms().size() == 6);
  CHECK(RootSystem::build('B', 2).diagram_automorphisms().size() == 1);
  CHECK(RootSystem::build('A', 2).diagram_automorphisms().size() == 2);
  CHECK(RootSystem::build('D', 5).diagram_automorphisms().size() == 2);
  CHECK(RootSystem::build('E', 6).diagram_automorphisms().size() == 2);
  CHECK(RootSystem::build('G', 2).diagram_automorphisms().size() == 1);
  CHECK(RootSystem::build('F', 4).diagram_automorphisms().size() == 1);
}

TEST_CASE("diagram automorphisms preserve the Cartan matrix") {
  RootSystem rs = RootSystem::build('D', 4);
  for (const auto& perm : rs.diagram_automorphisms()) {
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j)
        CHECK(rs.cartan(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) == rs.cartan(i, j));
  }
}

TEST_CASE("A_l graph automorphism swaps alpha_i and alpha_{l+1-i}") {
  RootSystem rs = RootSystem::build('A', 3);
  auto autos = rs.diagram_automorphisms();
  REQUIRE(autos.size() == 2);
  CHECK(autos[1] == std::vector<int>{2, 1, 0});
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootSystem::build('F', 5), InvalidTypeError);
  CHECK_THROWS_AS(RootSystem::build('G', 3), InvalidTypeError);
  CHECK_THROWS_AS(RootSystem::build('H', 3), InvalidTypeError);
  CHECK_THROWS_AS(RootSystem::build('E', 9), InvalidTypeError);
  CHECK_THROWS_AS(RootSystem::from_name("A2x"), InvalidTypeError);
}

TEST_CASE("Weyl enumeration stops at the cap") {
  // |W(E7)| = 2903040 exceeds the 10^6 cap; the root list itself is fine
  RootSystem rs = RootSystem::build('E', 7);
  CHECK(rs.num_positive() == 63);
  CHECK_THROWS_AS(rs.weyl_order(), WeylTooLargeError);
}
