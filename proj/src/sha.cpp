#include "chevlab/sha.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <deque>
#include <numeric>
#include <set>

namespace chevlab {

namespace {

using Perm = std::vector<int>;

Perm perm_mul(const Perm& a, const Perm& b) {
  // (a*b)(x) = a(b(x))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
  return r;
}

}  // namespace

FiniteGroup FiniteGroup::from_perm_gens(const std::vector<std::vector<int>>& gens1) {
  if (gens1.empty()) throw ShaError("no permutation generators");
  size_t deg = gens1[0].size();
  std::vector<Perm> gens;
  for (const auto& g1 : gens1) {
    if (g1.size() != deg) throw ShaError("generator degrees differ");
    Perm g(deg);
    std::vector<bool> hit(deg, false);
    for (size_t i = 0; i < deg; ++i) {
      int img = g1[i] - 1;  // 1-based fixture convention
      if (img < 0 || img >= static_cast<int>(deg) || hit[static_cast<size_t>(img)])
        throw ShaError("generator is not a permutation");
      hit[static_cast<size_t>(img)] = true;
      g[i] = img;
    }
    gens.push_back(std::move(g));
  }
  // closure
  Perm id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const Perm& g : gens) {
      Perm m = perm_mul(elems[static_cast<size_t>(cur)], g);
      if (index.count(m)) continue;
      int idx = static_cast<int>(elems.size());
      index[m] = idx;
      elems.push_back(std::move(m));
      queue.push_back(idx);
      if (static_cast<int64_t>(elems.size()) > kOrderCap)
        throw GroupTooLargeError("group exceeds the order cap");
    }
  }
  FiniteGroup fg;
  fg.n_ = static_cast<int>(elems.size());
  if (static_cast<int64_t>(fg.n_) * fg.n_ > 64 * 1024 * 1024)
    throw GroupTooLargeError("Cayley table would be too large");
  fg.table_.assign(static_cast<size_t>(fg.n_), std::vector<int>(static_cast<size_t>(fg.n_)));
  for (int a = 0; a < fg.n_; ++a)
    for (int b = 0; b < fg.n_; ++b)
      fg.table_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          index.at(perm_mul(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]));
  fg.perm_gens_ = gens1;
  fg.finish_construction();
  return fg;
}

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<int>>& table) {
  FiniteGroup fg;
  fg.n_ = static_cast<int>(table.size());
  if (fg.n_ < 1) throw ShaError("empty Cayley table");
  fg.table_ = table;
  // locate the identity and renumber it to 0
  int id = -1;
  for (int e = 0; e < fg.n_; ++e) {
    bool ok = true;
    for (int a = 0; a < fg.n_ && ok; ++a)
      if (fg.table_[static_cast<size_t>(e)][static_cast<size_t>(a)] != a ||
          fg.table_[static_cast<size_t>(a)][static_cast<size_t>(e)] != a)
        ok = false;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw ShaError("Cayley table has no identity");
  if (id != 0) {
    std::vector<int> rn(static_cast<size_t>(fg.n_));
    std::iota(rn.begin(), rn.end(), 0);
    std::swap(rn[0], rn[static_cast<size_t>(id)]);
    std::vector<std::vector<int>> t2(static_cast<size_t>(fg.n_),
                                     std::vector<int>(static_cast<size_t>(fg.n_)));
    // rn is an involution relabeling
    for (int a = 0; a < fg.n_; ++a)
      for (int b = 0; b < fg.n_; ++b)
        t2[static_cast<size_t>(rn[static_cast<size_t>(a)])]
          [static_cast<size_t>(rn[static_cast<size_t>(b)])] =
            rn[static_cast<size_t>(fg.table_[static_cast<size_t>(a)][static_cast<size_t>(b)])];
    fg.table_ = std::move(t2);
  }
  fg.finish_construction();
  return fg;
}

void FiniteGroup::finish_construction() {
  // closure / associativity spot checks, inverses, element orders
  inv_.assign(static_cast<size_t>(n_), -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      int ab = table_[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (ab < 0 || ab >= n_) throw ShaError("Cayley table not closed");
      if (ab == 0) inv_[static_cast<size_t>(a)] = b;
    }
    if (inv_[static_cast<size_t>(a)] < 0) throw ShaError("element without inverse");
  }
  if (n_ <= 256) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw ShaError("Cayley table not associative");
  }
  eorder_.assign(static_cast<size_t>(n_), 1);
  for (int a = 0; a < n_; ++a) {
    int x = a, o = 1;
    while (x != 0) {
      x = mul(x, a);
      ++o;
      if (o > n_) throw ShaError("element order exceeds group order");
    }
    eorder_[static_cast<size_t>(a)] = o;
  }
  pick_generators();
}

void FiniteGroup::pick_generators() {
  // greedy: repeatedly add an element of maximal order outside the closure
  std::vector<bool> in(static_cast<size_t>(n_), false);
  in[0] = true;
  int covered = 1;
  gens_.clear();
  while (covered < n_) {
    int best = -1;
    for (int a = 0; a < n_; ++a)
      if (!in[static_cast<size_t>(a)] &&
          (best < 0 || eorder_[static_cast<size_t>(a)] > eorder_[static_cast<size_t>(best)]))
        best = a;
    gens_.push_back(best);
    // closure update
    std::deque<int> queue;
    for (int a = 0; a < n_; ++a)
      if (in[static_cast<size_t>(a)]) queue.push_back(a);
    in[static_cast<size_t>(best)] = true;
    queue.push_back(best);
    ++covered;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int g : gens_) {
        for (int x : {mul(a, g), mul(g, a)}) {
          if (!in[static_cast<size_t>(x)]) {
            in[static_cast<size_t>(x)] = true;
            ++covered;
            queue.push_back(x);
          }
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::symmetric(int n) {
  std::vector<int> swap01, cycle;
  for (int i = 1; i <= n; ++i) {
    swap01.push_back(i == 1 ? 2 : (i == 2 ? 1 : i));
    cycle.push_back(i == n ? 1 : i + 1);
  }
  return from_perm_gens({swap01, cycle});
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<int> cycle;
  for (int i = 1; i <= n; ++i) cycle.push_back(i == n ? 1 : i + 1);
  return from_perm_gens({cycle});
}

FiniteGroup FiniteGroup::dihedral(int n) {
  std::vector<int> rot, flip;
  for (int i = 1; i <= n; ++i) {
    rot.push_back(i == n ? 1 : i + 1);
    flip.push_back(i == 1 ? 1 : n + 2 - i);
  }
  return from_perm_gens({rot, flip});
}

FiniteGroup FiniteGroup::quaternion8() {
  // regular action on {1, -1, i, -i, j, -j, k, -k}
  return from_perm_gens({{3, 4, 2, 1, 7, 8, 6, 5}, {5, 6, 8, 7, 2, 1, 3, 4}});
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
  if (j.contains("perm_gens"))
    return from_perm_gens(j.at("perm_gens").get<std::vector<std::vector<int>>>());
  if (j.contains("cayley"))
    return from_cayley(j.at("cayley").get<std::vector<std::vector<int>>>());
  throw ShaError("group fixture needs perm_gens or cayley");
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json j;
  if (perm_gens_) {
    j["perm_gens"] = *perm_gens_;
  } else {
    j["cayley"] = table_;
  }
  return j;
}

const std::vector<std::vector<int>>& FiniteGroup::conjugacy_classes() const {
  if (!classes_.empty()) return classes_;
  class_of_.assign(static_cast<size_t>(n_), -1);
  for (int a = 0; a < n_; ++a) {
    if (class_of_[static_cast<size_t>(a)] >= 0) continue;
    int cid = static_cast<int>(classes_.size());
    std::set<int> cls;
    for (int g = 0; g < n_; ++g) cls.insert(mul(mul(g, a), inv(g)));
    classes_.emplace_back(cls.begin(), cls.end());
    for (int x : classes_.back()) class_of_[static_cast<size_t>(x)] = cid;
  }
  return classes_;
}

int FiniteGroup::class_of(int a) const {
  conjugacy_classes();
  return class_of_[static_cast<size_t>(a)];
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> z;
  for (int a = 0; a < n_; ++a) {
    bool c = true;
    for (int b = 0; b < n_ && c; ++b)
      if (mul(a, b) != mul(b, a)) c = false;
    if (c) z.push_back(a);
  }
  return z;
}

bool FiniteGroup::is_endomorphism(const std::vector<int>& phi) const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (phi[static_cast<size_t>(mul(a, b))] !=
          mul(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]))
        return false;
  return true;
}

bool FiniteGroup::is_automorphism(const std::vector<int>& phi) const {
  std::vector<bool> hit(static_cast<size_t>(n_), false);
  for (int a = 0; a < n_; ++a) {
    if (hit[static_cast<size_t>(phi[static_cast<size_t>(a)])]) return false;
    hit[static_cast<size_t>(phi[static_cast<size_t>(a)])] = true;
  }
  return is_endomorphism(phi);
}

bool FiniteGroup::is_class_preserving(const std::vector<int>& phi) const {
  conjugacy_classes();
  for (int a = 0; a < n_; ++a)
    if (class_of_[static_cast<size_t>(phi[static_cast<size_t>(a)])] !=
        class_of_[static_cast<size_t>(a)])
      return false;
  return true;
}

namespace {

// Propagate a partial map from generator images over the Cayley table.
// Returns false on conflict; on success the map is total iff the chosen
// generators generate.
bool close_partial_map(const FiniteGroup& g, std::vector<int>& phi) {
  int n = g.order();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      if (phi[static_cast<size_t>(a)] < 0) continue;
      for (int b = 0; b < n; ++b) {
        if (phi[static_cast<size_t>(b)] < 0) continue;
        int ab = g.mul(a, b);
        int im = g.mul(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]);
        if (phi[static_cast<size_t>(ab)] < 0) {
          phi[static_cast<size_t>(ab)] = im;
          changed = true;
        } else if (phi[static_cast<size_t>(ab)] != im) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

const std::vector<std::vector<int>>& FiniteGroup::automorphisms() const {
  if (autos_done_) return autos_;
  if (n_ > kAutSearchCap)
    throw GroupTooLargeError("automorphism search cap exceeded");
  conjugacy_classes();
  // candidate images per generator: same element order and class size
  std::vector<std::vector<int>> cand;
  for (int g : gens_) {
    std::vector<int> c;
    for (int x = 0; x < n_; ++x) {
      if (eorder_[static_cast<size_t>(x)] != eorder_[static_cast<size_t>(g)]) continue;
      if (classes_[static_cast<size_t>(class_of(x))].size() !=
          classes_[static_cast<size_t>(class_of(g))].size())
        continue;
      c.push_back(x);
    }
    cand.push_back(std::move(c));
  }
  std::vector<int> phi(static_cast<size_t>(n_), -1);
  phi[0] = 0;
  std::function<void(size_t, std::vector<int>&)> rec = [&](size_t k, std::vector<int>& cur) {
    if (k == gens_.size()) {
      // total and bijective?
      for (int v : cur)
        if (v < 0) return;  // generators failed to generate (should not happen)
      if (is_automorphism(cur)) autos_.push_back(cur);
      return;
    }
    for (int img : cand[k]) {
      std::vector<int> next = cur;
      next[static_cast<size_t>(gens_[k])] = img;
      if (close_partial_map(*this, next)) rec(k + 1, next);
    }
  };
  rec(0, phi);
  std::sort(autos_.begin(), autos_.end());
  autos_.erase(std::unique(autos_.begin(), autos_.end()), autos_.end());
  // closure sanity: composites stay in the set
  std::set<std::vector<int>> all(autos_.begin(), autos_.end());
  for (size_t i = 0; i < std::min<size_t>(autos_.size(), 32); ++i)
    for (size_t j = 0; j < std::min<size_t>(autos_.size(), 32); ++j) {
      std::vector<int> comp(static_cast<size_t>(n_));
      for (int a = 0; a < n_; ++a)
        comp[static_cast<size_t>(a)] =
            autos_[i][static_cast<size_t>(autos_[j][static_cast<size_t>(a)])];
      if (!all.count(comp)) throw ShaError("automorphism set is not closed");
    }
  autos_done_ = true;
  return autos_;
}

std::vector<std::vector<int>> FiniteGroup::inner_automorphisms() const {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> inner;
  for (int g = 0; g < n_; ++g) {
    std::vector<int> phi(static_cast<size_t>(n_));
    for (int a = 0; a < n_; ++a) phi[static_cast<size_t>(a)] = mul(mul(g, a), inv(g));
    if (seen.insert(phi).second) inner.push_back(phi);
  }
  return inner;
}

FiniteGroup::OutcReport FiniteGroup::out_c() const {
  OutcReport rep;
  const auto& aut = automorphisms();
  auto inner = inner_automorphisms();
  rep.aut = static_cast<int64_t>(aut.size());
  rep.inn = static_cast<int64_t>(inner.size());
  // |Inn| = |G| / |Z| as an independent cross-check
  if (rep.inn != static_cast<int64_t>(n_) / static_cast<int64_t>(center().size()))
    throw ShaError("inner automorphism count disagrees with |G|/|Z|");
  std::set<std::vector<int>> inner_set(inner.begin(), inner.end());
  std::vector<std::vector<int>> aut_c;
  for (const auto& phi : aut)
    if (is_class_preserving(phi)) aut_c.push_back(phi);
  rep.aut_c = static_cast<int64_t>(aut_c.size());
  if (rep.aut_c % rep.inn != 0) throw ShaError("|Aut_c| not divisible by |Inn|");
  rep.out_c = rep.aut_c / rep.inn;
  // coset representatives of Aut_c modulo Inn
  std::set<std::vector<int>> covered;
  for (const auto& phi : aut_c) {
    if (covered.count(phi)) continue;
    bool trivial_coset = inner_set.count(phi) > 0;
    // mark the whole coset phi . Inn
    for (const auto& in : inner) {
      std::vector<int> comp(static_cast<size_t>(n_));
      for (int a = 0; a < n_; ++a)
        comp[static_cast<size_t>(a)] = phi[static_cast<size_t>(in[static_cast<size_t>(a)])];
      covered.insert(comp);
    }
    if (!trivial_coset) {
      rep.outc_representatives.push_back(phi);
      if (!rep.witness) rep.witness = phi;
    }
  }
  rep.sha_rigid = rep.outc_representatives.empty();
  return rep;
}

FiniteGroup::EndoScan FiniteGroup::locally_inner_endomorphism_scan(int64_t budget) const {
  EndoScan scan;
  conjugacy_classes();
  // candidate images per generator: order divides the generator order
  std::vector<std::vector<int>> cand;
  for (int g : gens_) {
    std::vector<int> c;
    for (int x = 0; x < n_; ++x)
      if (eorder_[static_cast<size_t>(g)] % eorder_[static_cast<size_t>(x)] == 0) c.push_back(x);
    cand.push_back(std::move(c));
  }
  int64_t work = 0;
  std::function<bool(size_t, std::vector<int>&)> rec = [&](size_t k,
                                                           std::vector<int>& cur) -> bool {
    if (++work > budget) {
      scan.budget_exhausted = true;
      return false;
    }
    if (k == gens_.size()) {
      for (int v : cur)
        if (v < 0) return true;
      if (!is_endomorphism(cur)) return true;
      ++scan.endomorphisms;
      if (is_class_preserving(cur)) {
        ++scan.locally_inner;
        if (!is_automorphism(cur)) scan.all_locally_inner_bijective = false;
      }
      return true;
    }
    for (int img : cand[k]) {
      std::vector<int> next = cur;
      next[static_cast<size_t>(gens_[k])] = img;
      if (close_partial_map(*this, next)) {
        if (!rec(k + 1, next)) return false;
      }
    }
    return true;
  };
  std::vector<int> phi(static_cast<size_t>(n_), -1);
  phi[0] = 0;
  rec(0, phi);
  return scan;
}

}  // namespace chevlab
