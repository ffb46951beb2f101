// Searches constructions of order-32 2-groups for one with a
// class-preserving outer automorphism and freezes it as a fixture file.
//
// Families scanned (all with abelian kernel N):
//   (A) extensions  N.Z2 : u n u^-1 = phi(n), u^2 = z, |N| = 16,
//       phi involutive, z fixed by phi (z = 0 is the split case)
//   (B) extensions  N.Z4 : u n u^-1 = phi(n), u^4 = z, |N| = 8,
//       phi^4 = id, z fixed by phi
//   (C) split N x| (Z2 x Z2), |N| = 8, commuting involutive actions
//
// Every candidate's automorphism group is computed by the same engine the
// test suite uses, so the frozen fixture is verified by construction.

#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "chevlab/fixtures.hpp"
#include "chevlab/sha.hpp"

using namespace chevlab;

namespace {

struct Abelian {
  std::vector<int> moduli;
  int order;
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;

  explicit Abelian(std::vector<int> m) : moduli(std::move(m)) {
    order = 1;
    for (int v : moduli) order *= v;
    std::vector<int> cur(moduli.size(), 0);
    for (int i = 0; i < order; ++i) {
      elems.push_back(cur);
      index[cur] = i;
      for (size_t d = 0; d < moduli.size(); ++d) {
        if (++cur[d] < moduli[d]) break;
        cur[d] = 0;
      }
    }
  }
  int add(int a, int b) const {
    std::vector<int> s(moduli.size());
    for (size_t d = 0; d < moduli.size(); ++d)
      s[d] = (elems[static_cast<size_t>(a)][d] + elems[static_cast<size_t>(b)][d]) %
             moduli[d];
    return index.at(s);
  }
};

// automorphisms with phi^k = id for k in {1,2,4}
std::vector<std::vector<int>> automorphisms_of_order_dividing(const Abelian& g, int k) {
  int n = g.order;
  std::vector<int> basis;
  for (size_t d = 0; d < g.moduli.size(); ++d) {
    std::vector<int> e(g.moduli.size(), 0);
    e[d] = 1;
    basis.push_back(g.index.at(e));
  }
  std::vector<std::vector<int>> found;
  std::vector<int> pick(basis.size(), 0);
  auto build = [&]() {
    std::vector<int> phi(static_cast<size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
      int img = 0;
      for (size_t d = 0; d < g.moduli.size(); ++d) {
        int c = g.elems[static_cast<size_t>(a)][d];
        for (int t = 0; t < c; ++t) img = g.add(img, pick[d]);
      }
      phi[static_cast<size_t>(a)] = img;
    }
    return phi;
  };
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == basis.size()) {
      std::vector<int> phi = build();
      std::vector<bool> hit(static_cast<size_t>(n), false);
      for (int v : phi) {
        if (hit[static_cast<size_t>(v)]) return;
        hit[static_cast<size_t>(v)] = true;
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (phi[static_cast<size_t>(g.add(a, b))] !=
              g.add(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]))
            return;
      std::vector<int> pw(static_cast<size_t>(n));
      for (int a = 0; a < n; ++a) pw[static_cast<size_t>(a)] = a;
      for (int t = 0; t < k; ++t) {
        std::vector<int> nx(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a)
          nx[static_cast<size_t>(a)] = phi[static_cast<size_t>(pw[static_cast<size_t>(a)])];
        pw = std::move(nx);
      }
      for (int a = 0; a < n; ++a)
        if (pw[static_cast<size_t>(a)] != a) return;
      found.push_back(phi);
      return;
    }
    for (int img = 0; img < n; ++img) {
      pick[d] = img;
      rec(d + 1);
    }
  };
  rec(0);
  return found;
}

// cyclic extension N.Z_m with u n u^-1 = phi(n), u^m = z; requires
// phi(z) = z and phi^m = id
std::vector<std::vector<int>> cyclic_extension_cayley(const Abelian& g,
                                                      const std::vector<int>& phi, int m,
                                                      int z) {
  int n = g.order;
  int total = n * m;
  auto id_of = [&](int a, int e) { return a + e * n; };
  auto phi_pow = [&](int a, int e) {
    for (int t = 0; t < e; ++t) a = phi[static_cast<size_t>(a)];
    return a;
  };
  std::vector<std::vector<int>> table(static_cast<size_t>(total),
                                      std::vector<int>(static_cast<size_t>(total)));
  for (int a = 0; a < n; ++a)
    for (int ea = 0; ea < m; ++ea)
      for (int b = 0; b < n; ++b)
        for (int eb = 0; eb < m; ++eb) {
          int sum = g.add(a, phi_pow(b, ea));
          int e = ea + eb;
          if (e >= m) {
            sum = g.add(sum, z);
            e -= m;
          }
          table[static_cast<size_t>(id_of(a, ea))][static_cast<size_t>(id_of(b, eb))] =
              id_of(sum, e);
        }
  return table;
}

std::vector<std::vector<int>> bi_split_cayley(const Abelian& g,
                                              const std::vector<int>& phi1,
                                              const std::vector<int>& phi2) {
  int n = g.order;
  int total = 4 * n;
  auto id_of = [&](int a, int e1, int e2) { return a + (e1 + 2 * e2) * n; };
  auto act = [&](int a, int e1, int e2) {
    if (e1) a = phi1[static_cast<size_t>(a)];
    if (e2) a = phi2[static_cast<size_t>(a)];
    return a;
  };
  std::vector<std::vector<int>> table(static_cast<size_t>(total),
                                      std::vector<int>(static_cast<size_t>(total)));
  for (int a = 0; a < n; ++a)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int b = 0; b < n; ++b)
          for (int f1 = 0; f1 < 2; ++f1)
            for (int f2 = 0; f2 < 2; ++f2)
              table[static_cast<size_t>(id_of(a, e1, e2))]
                   [static_cast<size_t>(id_of(b, f1, f2))] =
                  id_of(g.add(a, act(b, e1, e2)), e1 ^ f1, e2 ^ f2);
  return table;
}

bool inspect(const std::vector<std::vector<int>>& cayley, const std::string& label,
             const nlohmann::json& construction, const std::string& out) {
  FiniteGroup g = FiniteGroup::from_cayley(cayley);
  FiniteGroup::OutcReport rep = g.out_c();
  if (rep.sha_rigid) return false;
  std::printf("  -> found %s: |Aut|=%lld |Inn|=%lld |Aut_c|=%lld |Out_c|=%lld\n",
              label.c_str(), static_cast<long long>(rep.aut),
              static_cast<long long>(rep.inn), static_cast<long long>(rep.aut_c),
              static_cast<long long>(rep.out_c));
  nlohmann::json j = g.to_json();
  j["name"] = "order-32 group with class-preserving outer automorphism";
  j["construction"] = construction;
  save_json_file(out, j);
  std::printf("  frozen to %s\n", out.c_str());
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "fixtures/wall32.json";

  // family A: abelian 16 . Z2 with twist
  std::vector<std::vector<int>> shapes16 = {{16}, {8, 2}, {4, 4}, {4, 2, 2}, {2, 2, 2, 2}};
  for (const auto& shape : shapes16) {
    Abelian n(shape);
    auto autos = automorphisms_of_order_dividing(n, 2);
    std::printf("family A, N moduli %d", shape[0]);
    for (size_t i = 1; i < shape.size(); ++i) std::printf(",%d", shape[i]);
    std::printf(": %zu involutions\n", autos.size());
    for (size_t ai = 0; ai < autos.size(); ++ai) {
      for (int z = 0; z < n.order; ++z) {
        if (autos[ai][static_cast<size_t>(z)] != z) continue;
        nlohmann::json cons = {{"kind", "cyclic-extension"},
                               {"normal_moduli", shape},
                               {"top", 2},
                               {"action", autos[ai]},
                               {"twist", z}};
        if (inspect(cyclic_extension_cayley(n, autos[ai], 2, z),
                    "A(" + std::to_string(ai) + ",z=" + std::to_string(z) + ")", cons, out))
          return 0;
      }
    }
  }

  // family B: abelian 8 . Z4 with twist
  std::vector<std::vector<int>> shapes8 = {{8}, {4, 2}, {2, 2, 2}};
  for (const auto& shape : shapes8) {
    Abelian n(shape);
    auto autos = automorphisms_of_order_dividing(n, 4);
    std::printf("family B, N moduli %d", shape[0]);
    for (size_t i = 1; i < shape.size(); ++i) std::printf(",%d", shape[i]);
    std::printf(": %zu automorphisms of order dividing 4\n", autos.size());
    for (size_t ai = 0; ai < autos.size(); ++ai) {
      for (int z = 0; z < n.order; ++z) {
        if (autos[ai][static_cast<size_t>(z)] != z) continue;
        nlohmann::json cons = {{"kind", "cyclic-extension"},
                               {"normal_moduli", shape},
                               {"top", 4},
                               {"action", autos[ai]},
                               {"twist", z}};
        if (inspect(cyclic_extension_cayley(n, autos[ai], 4, z),
                    "B(" + std::to_string(ai) + ",z=" + std::to_string(z) + ")", cons, out))
          return 0;
      }
    }
  }

  // family C: abelian 8 x| (Z2 x Z2)
  for (const auto& shape : shapes8) {
    Abelian n(shape);
    auto autos = automorphisms_of_order_dividing(n, 2);
    std::printf("family C, N moduli %d", shape[0]);
    for (size_t i = 1; i < shape.size(); ++i) std::printf(",%d", shape[i]);
    std::printf(": %zu involutions\n", autos.size());
    for (size_t a1 = 0; a1 < autos.size(); ++a1) {
      for (size_t a2 = a1; a2 < autos.size(); ++a2) {
        bool commute = true;
        for (int x = 0; x < n.order && commute; ++x)
          if (autos[a1][static_cast<size_t>(autos[a2][static_cast<size_t>(x)])] !=
              autos[a2][static_cast<size_t>(autos[a1][static_cast<size_t>(x)])])
            commute = false;
        if (!commute) continue;
        nlohmann::json cons = {{"kind", "bi-split"},
                               {"normal_moduli", shape},
                               {"action1", autos[a1]},
                               {"action2", autos[a2]}};
        if (inspect(bi_split_cayley(n, autos[a1], autos[a2]),
                    "C(" + std::to_string(a1) + "," + std::to_string(a2) + ")", cons, out))
          return 0;
      }
    }
  }

  std::printf("no example found in the scanned families\n");
  return 1;
}
