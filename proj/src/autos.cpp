#include "chevlab/autos.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace chevlab {

using nlohmann::json;

AutoFactor AutoFactor::inner(GroupWord w) {
  AutoFactor f;
  f.kind = Kind::Inner;
  f.inner_word = std::move(w);
  return f;
}
AutoFactor AutoFactor::diagonal(std::vector<RingElem> d) {
  AutoFactor f;
  f.kind = Kind::Diagonal;
  f.diag = std::move(d);
  return f;
}
AutoFactor AutoFactor::graph(std::vector<int> perm) {
  AutoFactor f;
  f.kind = Kind::Graph;
  f.graph_perm = std::move(perm);
  return f;
}
AutoFactor AutoFactor::ring(RingMorphism m) {
  AutoFactor f;
  f.kind = Kind::Ring;
  f.ring_map = std::move(m);
  return f;
}
AutoFactor AutoFactor::central(std::vector<std::pair<std::vector<RingElem>, GroupWord>> a) {
  AutoFactor f;
  f.kind = Kind::Central;
  f.central_assignments = std::move(a);
  return f;
}

StandardAutomorphism::StandardAutomorphism(ContextPtr ctx, std::vector<AutoFactor> factors)
    : ctx_(std::move(ctx)), factors_(std::move(factors)) {}

std::vector<int> StandardAutomorphism::graph_signs(const ChevalleyBasis& cb,
                                                   const std::vector<int>& perm) {
  const RootSystem& rs = cb.roots();
  int n = rs.num_roots();
  std::vector<int> eps(static_cast<size_t>(n), 0);
  for (int i = 0; i < rs.rank(); ++i) {
    eps[static_cast<size_t>(rs.simple_root_index(i))] = 1;
  }
  // positive roots by increasing height, via extraspecial pairs:
  // delta(e_g) with g = a + b gives eps_g = eps_a eps_b N(da,db)/N(a,b)
  for (int g = 0; g < rs.num_positive(); ++g) {
    if (rs.root(g).height < 2) continue;
    auto [a, b] = cb.extraspecial_pair(g);
    int da = rs.apply_diagram(perm, a);
    int db = rs.apply_diagram(perm, b);
    int64_t num = static_cast<int64_t>(eps[static_cast<size_t>(a)]) *
                  eps[static_cast<size_t>(b)] * cb.structure_constant(da, db);
    int64_t den = cb.structure_constant(a, b);
    if (den == 0 || num % den != 0) throw AutosError("graph sign recursion failed");
    eps[static_cast<size_t>(g)] = static_cast<int>(num / den);
  }
  for (int g = 0; g < rs.num_positive(); ++g)
    eps[static_cast<size_t>(rs.negate(g))] = eps[static_cast<size_t>(g)];
  for (int v : eps)
    if (v != 1 && v != -1) throw AutosError("graph sign is not a unit");
  return eps;
}

GroupWord StandardAutomorphism::apply_factor_word(const AutoFactor& f,
                                                  const GroupWord& w) const {
  const LocalRing& r = ctx_->ring();
  const RootSystem& rs = ctx_->roots();
  switch (f.kind) {
    case AutoFactor::Kind::Inner: {
      GroupWord out = f.inner_word;
      out.insert(out.end(), w.begin(), w.end());
      GroupWord inv = ctx_->invert_word(f.inner_word);
      out.insert(out.end(), inv.begin(), inv.end());
      return out;
    }
    case AutoFactor::Kind::Diagonal: {
      GroupWord out;
      for (const Letter& l : w) {
        if (l.kind == Letter::Kind::TorusChar) {
          out.push_back(l);
          continue;
        }
        RingElem chi = r.one();
        const auto& c = rs.root(l.root).coeffs;
        for (int i = 0; i < rs.rank(); ++i) {
          int e = c[static_cast<size_t>(i)];
          if (e != 0) chi = r.mul(chi, r.pow(f.diag[static_cast<size_t>(i)], e));
        }
        Letter nl = l;
        if (l.kind == Letter::Kind::H) {
          // h_alpha(t) is invariant under diagonal automorphisms
        } else {
          nl.param = r.mul(chi, l.param);
        }
        out.push_back(std::move(nl));
      }
      return out;
    }
    case AutoFactor::Kind::Graph: {
      std::vector<int> eps = graph_signs(ctx_->chevalley(), f.graph_perm);
      GroupWord out;
      for (const Letter& l : w) {
        if (l.kind == Letter::Kind::TorusChar) {
          // chi' = chi o delta^{-1}
          std::vector<int> inv_perm(f.graph_perm.size());
          for (size_t i = 0; i < f.graph_perm.size(); ++i)
            inv_perm[static_cast<size_t>(f.graph_perm[i])] = static_cast<int>(i);
          std::vector<RingElem> nchi;
          for (int j = 0; j < rs.rank(); ++j)
            nchi.push_back(l.chi[static_cast<size_t>(inv_perm[static_cast<size_t>(j)])]);
          out.push_back(Letter::torus_char(std::move(nchi)));
          continue;
        }
        int img = rs.apply_diagram(f.graph_perm, l.root);
        int sign = eps[static_cast<size_t>(l.root)];
        Letter nl = l;
        nl.root = img;
        if (l.kind == Letter::Kind::H) {
          // h_beta(t) -> h_{delta(beta)}(t): the sign cancels in w(et)w(e)^{-1}
        } else {
          nl.param = sign == 1 ? l.param : r.neg(l.param);
        }
        out.push_back(std::move(nl));
      }
      return out;
    }
    case AutoFactor::Kind::Ring: {
      const RingMorphism& rho = *f.ring_map;
      GroupWord out;
      for (const Letter& l : w) {
        Letter nl = l;
        if (l.kind == Letter::Kind::TorusChar) {
          nl.chi.clear();
          for (const RingElem& c : l.chi) nl.chi.push_back(rho.apply(c));
        } else {
          nl.param = rho.apply(l.param);
        }
        out.push_back(std::move(nl));
      }
      return out;
    }
    case AutoFactor::Kind::Central: {
      GroupWord out;
      for (const Letter& l : w) {
        if (l.kind != Letter::Kind::TorusChar) {
          out.push_back(l);
          continue;
        }
        // lambda on the stored coset representatives; inverses implicitly
        bool matched = false;
        for (const auto& [chi, val] : f.central_assignments) {
          if (chi == l.chi) {
            out.insert(out.end(), val.begin(), val.end());
            matched = true;
            break;
          }
          std::vector<RingElem> inv_chi;
          for (const RingElem& c : chi) inv_chi.push_back(r.inv(c));
          if (inv_chi == l.chi) {
            GroupWord vi = ctx_->invert_word(val);
            out.insert(out.end(), vi.begin(), vi.end());
            matched = true;
            break;
          }
        }
        (void)matched;
        out.push_back(l);
      }
      return out;
    }
  }
  throw AutosError("unreachable");
}

GroupWord StandardAutomorphism::apply_word(const GroupWord& w) const {
  GroupWord cur = w;
  for (const AutoFactor& f : factors_) cur = apply_factor_word(f, cur);
  return cur;
}

GroupElement StandardAutomorphism::apply(const GroupElement& g) const {
  bool all_inner = std::all_of(factors_.begin(), factors_.end(), [](const AutoFactor& f) {
    return f.kind == AutoFactor::Kind::Inner;
  });
  if (!g.has_word()) {
    if (!all_inner)
      throw WordRequiredError("non-inner factors require a word witness");
    Mat m = g.mat();
    for (const AutoFactor& f : factors_) {
      Mat x = ctx_->eval_word(f.inner_word);
      m = ctx_->mul(ctx_->mul(x, m), ctx_->inverse(x));
    }
    return GroupElement(g.ctx(), std::move(m));
  }
  GroupWord img = apply_word(g.word());
  return ctx_->from_word(img);
}

void StandardAutomorphism::validate() const {
  const LocalRing& r = ctx_->ring();
  const RootSystem& rs = ctx_->roots();
  for (const AutoFactor& f : factors_) {
    switch (f.kind) {
      case AutoFactor::Kind::Inner:
        ctx_->eval_word(f.inner_word);
        break;
      case AutoFactor::Kind::Diagonal:
        if (static_cast<int>(f.diag.size()) != rs.rank())
          throw AutosError("diagonal factor needs one unit per simple root");
        for (const RingElem& d : f.diag)
          if (!r.is_unit(d)) throw NotUnitError("diagonal factor entries must be units");
        break;
      case AutoFactor::Kind::Graph: {
        auto all = rs.diagram_automorphisms();
        if (std::find(all.begin(), all.end(), f.graph_perm) == all.end())
          throw AutosError("graph factor is not a diagram automorphism");
        break;
      }
      case AutoFactor::Kind::Ring: {
        if (!f.ring_map->source().same_ring(r))
          throw AutosError("ring factor acts on a different ring");
        if (!f.ring_map->is_automorphism())
          throw AutosError("ring factor is not a ring automorphism");
        break;
      }
      case AutoFactor::Kind::Central: {
        for (const auto& [chi, val] : f.central_assignments) {
          (void)chi;
          Mat v = ctx_->eval_word(val);
          // central values commute with every generator
          for (int i = 0; i < rs.rank(); ++i) {
            for (int root : {rs.simple_root_index(i), rs.negate(rs.simple_root_index(i))}) {
              Mat x = ctx_->eval_x(root, r.one());
              if (!(ctx_->mul(v, x) == ctx_->mul(x, v)))
                throw AutosError("central factor value is not central");
            }
          }
        }
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<RingElem> torus_profile(const GroupContext& ctx, int alpha, const RingElem& t) {
  Mat h = ctx.eval_letter(Letter::h(alpha, t));
  std::vector<RingElem> diag;
  for (int i = 0; i < ctx.dim(); ++i) diag.push_back(h.at(i, i));
  std::sort(diag.begin(), diag.end(), [&](const RingElem& a, const RingElem& b) {
    return ctx.ring().index_of(a) < ctx.ring().index_of(b);
  });
  return diag;
}

std::vector<int> torus_profile_exponents(const GroupContext& ctx, int alpha) {
  const RootSystem& rs = ctx.roots();
  std::vector<int> e;
  if (ctx.rep().is_adjoint()) {
    for (int b = 0; b < rs.num_roots(); ++b) e.push_back(rs.pairing(b, alpha));
    for (int i = 0; i < rs.rank(); ++i) e.push_back(0);
  } else {
    // natural A: weights eps_1..eps_{l+1}; exponent of t on v_i is the
    // coefficient of alpha^vee at eps_i: +-1 on the two moved coordinates
    auto [i, j] = ctx.rep().natural_entry(alpha);
    for (int b = 0; b < ctx.dim(); ++b) e.push_back(b == i ? 1 : (b == j ? -1 : 0));
  }
  std::sort(e.begin(), e.end());
  return e;
}

bool ring_permutation_check(const GroupContext& ctx, const RingMorphism& rho,
                            const RingElem& t, bool g2_short) {
  const LocalRing& r = ctx.ring();
  std::vector<int> exps = {0, 1, -1, 2, -2};
  if (g2_short) {
    exps.push_back(3);
    exps.push_back(-3);
  }
  std::vector<int64_t> s, rs_img;
  for (int e : exps) {
    s.push_back(r.index_of(r.pow(t, e)));
    rs_img.push_back(r.index_of(rho.apply(r.pow(t, e))));
  }
  std::sort(s.begin(), s.end());
  std::sort(rs_img.begin(), rs_img.end());
  return s == rs_img;
}

GroupElement diagonal_to_inner(const GroupContext& ctx, const std::vector<RingElem>& d) {
  return ctx.torus_element(d);
}

GroupWord graph_witness(const GroupContext& ctx, const std::vector<int>& delta) {
  const RootSystem& rs = ctx.roots();
  char t = rs.type();
  if (t != 'A' && t != 'D' && t != 'E')
    throw AutosError("no nontrivial graph automorphism for " + rs.name());
  int moved = -1;
  for (int i = 0; i < rs.rank(); ++i)
    if (delta[static_cast<size_t>(i)] != i) moved = i;
  if (moved < 0) throw AutosError("graph witness requires a nontrivial automorphism");
  GroupWord w;
  for (int i = 0; i < rs.rank(); ++i)
    if (i != moved) w.push_back(Letter::x(rs.simple_root_index(i), ctx.ring().one()));
  return w;
}

GroupEnumeration enumerate_elementary_group(const GroupContext& ctx, int64_t cap) {
  GroupEnumeration e;
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  for (int i = 0; i < rs.rank(); ++i) {
    for (int root : {rs.simple_root_index(i), rs.negate(rs.simple_root_index(i))}) {
      for (int64_t v = 1; v < r.enum_size(); ++v) {
        e.gens.push_back(ctx.eval_x(root, r.elem_at(v)));
        e.gen_words.push_back({Letter::x(root, r.elem_at(v))});
      }
    }
  }
  Mat id = ctx.identity();
  e.elements.push_back(id);
  e.index[ctx.encode(id)] = 0;
  e.parent.push_back(-1);
  e.gen_used.push_back(-1);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (size_t gi = 0; gi < e.gens.size(); ++gi) {
      Mat m = ctx.mul(e.elements[static_cast<size_t>(cur)], e.gens[gi]);
      std::string key = ctx.encode(m);
      if (e.index.count(key)) continue;
      int idx = static_cast<int>(e.elements.size());
      e.index[key] = idx;
      e.elements.push_back(std::move(m));
      e.parent.push_back(cur);
      e.gen_used.push_back(static_cast<int>(gi));
      queue.push_back(idx);
      if (static_cast<int64_t>(e.elements.size()) > cap)
        throw TooLargeError("elementary group exceeds the enumeration budget");
    }
  }
  return e;
}

namespace {

const GroupEnumeration* cached_enumeration(const GroupContext& ctx, int64_t cap) {
  static std::map<std::pair<const Representation*, std::string>,
                  std::unique_ptr<GroupEnumeration>> cache;
  auto key = std::make_pair(&ctx.rep(), ctx.ring().name());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto e = std::make_unique<GroupEnumeration>(enumerate_elementary_group(ctx, cap));
  return cache.emplace(key, std::move(e)).first->second.get();
}

}  // namespace

ConjugacyReport conjugacy_oracle(const GroupContext& ctx, const GroupElement& g,
                                 const GroupElement& g2, int64_t budget, uint64_t seed,
                                 int samples) {
  ConjugacyReport rep;
  if (g == g2) {
    rep.status = ConjugacyReport::Status::Conjugate;
    rep.witness = GroupWord{};
    rep.exhaustive = false;
    return rep;
  }
  const GroupEnumeration* en = nullptr;
  try {
    en = cached_enumeration(ctx, budget);
  } catch (const TooLargeError&) {
    en = nullptr;
  }
  if (en != nullptr) {
    rep.exhaustive = true;
    rep.group_order = en->order();
    // orbit of g under conjugation by the generators, with a witness tree
    struct Node {
      int parent;
      int gen;
    };
    std::map<std::string, int> seen;
    std::vector<Mat> orbit{g.mat()};
    std::vector<Node> tree{{-1, -1}};
    seen[ctx.encode(g.mat())] = 0;
    std::string target = ctx.encode(g2.mat());
    std::deque<int> queue{0};
    int found = -1;
    while (!queue.empty() && found < 0) {
      int cur = queue.front();
      queue.pop_front();
      for (size_t gi = 0; gi < en->gens.size(); ++gi) {
        Mat m = ctx.mul(ctx.mul(en->gens[gi], orbit[static_cast<size_t>(cur)]),
                        ctx.inverse(en->gens[gi]));
        std::string key = ctx.encode(m);
        if (seen.count(key)) continue;
        int idx = static_cast<int>(orbit.size());
        seen[key] = idx;
        orbit.push_back(std::move(m));
        tree.push_back({cur, static_cast<int>(gi)});
        if (key == target) {
          found = idx;
          break;
        }
        queue.push_back(idx);
      }
    }
    rep.class_size = static_cast<int64_t>(orbit.size());
    rep.visited = rep.class_size;
    if (found >= 0) {
      // orbit[v] = gen_v . orbit[parent] . gen_v^{-1}, so the conjugator is
      // the climb-order product gen_found gen_parent ... gen_first
      GroupWord witness;
      for (int v = found; tree[static_cast<size_t>(v)].parent >= 0;
           v = tree[static_cast<size_t>(v)].parent) {
        const GroupWord& gw = en->gen_words[static_cast<size_t>(tree[static_cast<size_t>(v)].gen)];
        witness.insert(witness.end(), gw.begin(), gw.end());
      }
      // verify exactly
      Mat x = ctx.eval_word(witness);
      Mat lhs = ctx.mul(ctx.mul(x, g.mat()), ctx.inverse(x));
      if (!(lhs == g2.mat())) throw AutosError("conjugacy witness failed verification");
      rep.status = ConjugacyReport::Status::Conjugate;
      rep.witness = std::move(witness);
    } else {
      rep.status = ConjugacyReport::Status::NotConjugate;
    }
    return rep;
  }
  // budgeted random search
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 99991);
  for (int k = 0; k < samples; ++k) {
    GroupWord xw = random_x_word(ctx, 8, rng);
    Mat x = ctx.eval_word(xw);
    Mat lhs = ctx.mul(ctx.mul(x, g.mat()), ctx.inverse(x));
    ++rep.visited;
    if (lhs == g2.mat()) {
      rep.status = ConjugacyReport::Status::Conjugate;
      rep.witness = std::move(xw);
      return rep;
    }
  }
  rep.status = ConjugacyReport::Status::Undecided;
  return rep;
}

LocallyInnerReport locally_inner_test(const StandardAutomorphism& a, bool exhaustive,
                                      int64_t budget, int samples, uint64_t seed) {
  const GroupContext& ctx = *a.ctx();
  LocallyInnerReport rep;
  if (exhaustive) {
    const GroupEnumeration* en = cached_enumeration(ctx, budget);
    rep.exhaustive = true;
    // class id per element, by repeated conjugation orbits
    std::map<std::string, int> class_of;
    int next_class = 0;
    for (size_t i = 0; i < en->elements.size(); ++i) {
      std::string key = ctx.encode(en->elements[i]);
      if (class_of.count(key)) continue;
      int cid = next_class++;
      std::deque<Mat> queue{en->elements[i]};
      class_of[key] = cid;
      while (!queue.empty()) {
        Mat cur = queue.front();
        queue.pop_front();
        for (const Mat& gm : en->gens) {
          Mat m = ctx.mul(ctx.mul(gm, cur), ctx.inverse(gm));
          std::string k2 = ctx.encode(m);
          if (!class_of.count(k2)) {
            class_of[k2] = cid;
            queue.push_back(std::move(m));
          }
        }
      }
    }
    // word for each element from the BFS tree
    for (size_t i = 0; i < en->elements.size(); ++i) {
      GroupWord w;
      for (int v = static_cast<int>(i); en->parent[static_cast<size_t>(v)] >= 0;
           v = en->parent[static_cast<size_t>(v)]) {
        const GroupWord& gw = en->gen_words[static_cast<size_t>(en->gen_used[static_cast<size_t>(v)])];
        GroupWord next = gw;
        next.insert(next.end(), w.begin(), w.end());
        w = std::move(next);
      }
      GroupElement x = ctx.from_word(w);
      GroupElement y = a.apply(x);
      ++rep.checked;
      if (class_of.at(ctx.encode(y.mat())) != class_of.at(ctx.encode(x.mat()))) {
        rep.locally_inner = false;
        rep.counterexample = w;
        return rep;
      }
    }
    rep.locally_inner = true;
    return rep;
  }
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
  for (int k = 0; k < samples; ++k) {
    GroupWord xw = random_x_word(ctx, 6, rng);
    GroupElement x = ctx.from_word(xw);
    GroupElement y = a.apply(x);
    ++rep.checked;
    ConjugacyReport cr = conjugacy_oracle(ctx, x, y, /*budget=*/0, seed + static_cast<uint64_t>(k),
                                          /*samples=*/2000);
    if (cr.status == ConjugacyReport::Status::Undecided) {
      ++rep.undecided;
    } else if (cr.status == ConjugacyReport::Status::NotConjugate) {
      rep.locally_inner = false;
      rep.counterexample = xw;
      return rep;
    }
  }
  rep.locally_inner = true;  // no counterexample found
  return rep;
}

// ---- lemma replays -----------------------------------------------------------

namespace {

json word_to_json_brief(const GroupContext& ctx, const GroupWord& w) {
  json arr = json::array();
  for (const Letter& l : w) {
    json j;
    switch (l.kind) {
      case Letter::Kind::X:
        j["x"] = {{"root", ctx.roots().root(l.root).coeffs},
                  {"t", ctx.ring().index_of(l.param)}};
        break;
      case Letter::Kind::W:
        j["w"] = {{"root", ctx.roots().root(l.root).coeffs},
                  {"t", ctx.ring().index_of(l.param)}};
        break;
      case Letter::Kind::H:
        j["h"] = {{"root", ctx.roots().root(l.root).coeffs},
                  {"t", ctx.ring().index_of(l.param)}};
        break;
      case Letter::Kind::TorusChar: {
        json vals = json::array();
        for (const RingElem& c : l.chi) vals.push_back(ctx.ring().index_of(c));
        j["torus_char"] = vals;
        break;
      }
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

namespace {

void require_pipeline_rank(const GroupContext& ctx) {
  if (ctx.roots().rank() < 2)
    throw AutosError("the rigidity replays need rank >= 2 (rank 1 is for internal use)");
}

}  // namespace

json replay_lemma_3_2(const GroupContext& ctx, const RingMorphism& rho) {
  require_pipeline_rank(ctx);
  const LocalRing& r = ctx.ring();
  const RootSystem& rs = ctx.roots();
  json rep;
  rep["lemma"] = "3.2";
  rep["phi"] = rs.name();
  rep["ring"] = r.name();
  rep["rho_valid"] = rho.is_valid();
  json units = json::array();
  bool all_support_ok = true, all_perm_ok = true;
  for (const RingElem& t : r.units()) {
    json jt;
    jt["t"] = r.index_of(t);
    json roots = json::array();
    for (int alpha = 0; alpha < rs.num_positive(); ++alpha) {
      bool g2_short = (rs.type() == 'G') && !rs.root(alpha).is_long;
      // allowed values S = {1, t^{+-1}, t^{+-2}} (+ t^{+-3} short G2)
      std::vector<int64_t> allowed;
      for (int e : {0, 1, -1, 2, -2}) allowed.push_back(r.index_of(r.pow(t, e)));
      if (g2_short)
        for (int e : {3, -3}) allowed.push_back(r.index_of(r.pow(t, e)));
      bool support_ok = true;
      for (const RingElem& v : torus_profile(ctx, alpha, t))
        if (std::find(allowed.begin(), allowed.end(), r.index_of(v)) == allowed.end())
          support_ok = false;
      bool perm_ok = ring_permutation_check(ctx, rho, t, g2_short);
      all_support_ok = all_support_ok && support_ok;
      all_perm_ok = all_perm_ok && perm_ok;
      roots.push_back({{"root", rs.root(alpha).coeffs},
                       {"support_in_S", support_ok},
                       {"rho_permutes_S", perm_ok}});
    }
    jt["roots"] = std::move(roots);
    units.push_back(std::move(jt));
  }
  rep["units"] = std::move(units);
  rep["all_profiles_in_S"] = all_support_ok;
  rep["rho_permutes_every_S"] = all_perm_ok;
  return rep;
}

json replay_lemma_3_3(const GroupContext& ctx, const std::vector<int>& delta,
                      int64_t conj_budget) {
  require_pipeline_rank(ctx);
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  json rep;
  rep["lemma"] = "3.3";
  rep["phi"] = rs.name();
  rep["ring"] = r.name();
  rep["delta"] = delta;

  GroupWord g = graph_witness(ctx, delta);
  StandardAutomorphism aut(ctx.shared_from_this(), {AutoFactor::graph(delta)});
  GroupWord img = aut.apply_word(g);
  rep["witness_word"] = word_to_json_brief(ctx, g);
  rep["image_word"] = word_to_json_brief(ctx, img);

  // the proof's positivity constraint: w(alpha_i) positive on the witness
  // support
  std::vector<int> I;
  for (const Letter& l : g)
    for (int i = 0; i < rs.rank(); ++i)
      if (l.root == rs.simple_root_index(i)) I.push_back(i);
  rep["constraint_indices"] = I;
  auto cell = rs.cell_filter(I);
  auto cell2 = rs.cell_filter_by_descent(I);
  rep["cell_size"] = cell.size();
  rep["cell_cross_validated"] = (cell == cell2);
  json cell_list = json::array();
  for (int w : cell) {
    json jw;
    jw["length"] = rs.weyl()[static_cast<size_t>(w)].length;
    jw["word"] = rs.weyl()[static_cast<size_t>(w)].word;
    json imgs = json::array();
    for (int i : I)
      imgs.push_back(rs.root(rs.weyl()[static_cast<size_t>(w)]
                                 .action[static_cast<size_t>(rs.simple_root_index(i))])
                         .coeffs);
    jw["constraint_images"] = imgs;
    cell_list.push_back(std::move(jw));
  }
  rep["cell"] = std::move(cell_list);
  // the proof narrows w to {e, s_mu}; report whether the honest enumeration
  // agrees with that reading
  int moved = -1;
  for (int i = 0; i < rs.rank(); ++i)
    if (delta[static_cast<size_t>(i)] != i) moved = i;
  int smu = rs.weyl_reflection(rs.simple_root_index(moved));
  bool narrow = true;
  for (int w : cell)
    if (w != rs.weyl_identity() && w != smu) narrow = false;
  rep["cell_subset_of_e_and_s_mu"] = narrow;

  ConjugacyReport cr = conjugacy_oracle(ctx, ctx.from_word(g), ctx.from_word(img),
                                        conj_budget);
  rep["conjugacy"] = {{"status", cr.status == ConjugacyReport::Status::Conjugate
                                     ? "conjugate"
                                     : (cr.status == ConjugacyReport::Status::NotConjugate
                                            ? "not-conjugate"
                                            : "undecided")},
                      {"exhaustive", cr.exhaustive},
                      {"group_order", cr.group_order},
                      {"class_size", cr.class_size}};
  return rep;
}

json replay_lemma_3_4(const GroupContext& ctx, const std::vector<RingElem>& d) {
  require_pipeline_rank(ctx);
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  json rep;
  rep["lemma"] = "3.4";
  rep["phi"] = rs.name();
  rep["ring"] = r.name();
  json dj = json::array();
  for (const RingElem& e : d) dj.push_back(r.index_of(e));
  rep["d"] = dj;
  GroupElement t1 = diagonal_to_inner(ctx, d);
  StandardAutomorphism diag(ctx.shared_from_this(), {AutoFactor::diagonal(d)});
  bool all_ok = true;
  json table = json::array();
  for (int beta = 0; beta < rs.num_positive(); ++beta) {
    bool root_ok = true;
    for (int64_t v = 0; v < r.enum_size(); ++v) {
      RingElem t = r.elem_at(v);
      GroupElement x = ctx.x_gen(beta, t);
      GroupElement conj = ctx.conjugate(x, t1);
      GroupElement dx = diag.apply(x);
      if (!(conj == dx)) root_ok = false;
    }
    all_ok = all_ok && root_ok;
    table.push_back({{"root", rs.root(beta).coeffs}, {"inner_equals_diagonal", root_ok}});
  }
  rep["per_root"] = std::move(table);
  rep["d_equals_inner_by_t1"] = all_ok;
  return rep;
}

json replay_lemma_3_5(const GroupContext& ctx, const RingMorphism& rho,
                      int64_t conj_budget) {
  require_pipeline_rank(ctx);
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  json rep;
  rep["lemma"] = "3.5";
  rep["phi"] = rs.name();
  rep["ring"] = r.name();
  // find s in R* with rho(s) != s
  std::optional<RingElem> s;
  for (const RingElem& u : r.units())
    if (rho.apply(u) != u) {
      s = u;
      break;
    }
  if (!s) {
    rep["rho_fixes_all_units"] = true;
    rep["conclusion"] = "rho is identical on units; the witness mechanism is vacuous";
    return rep;
  }
  rep["rho_fixes_all_units"] = false;
  rep["s"] = r.index_of(*s);
  rep["rho_s"] = r.index_of(rho.apply(*s));
  GroupWord g = {Letter::h(rs.simple_root_index(0), *s)};
  for (int i = 0; i < rs.rank(); ++i)
    g.push_back(Letter::x(rs.simple_root_index(i), r.one()));
  StandardAutomorphism aut(ctx.shared_from_this(), {AutoFactor::ring(rho)});
  GroupWord g1 = aut.apply_word(g);
  rep["g"] = word_to_json_brief(ctx, g);
  rep["g1"] = word_to_json_brief(ctx, g1);
  rep["g_equals_g1"] = (ctx.eval_word(g) == ctx.eval_word(g1));
  ConjugacyReport cr =
      conjugacy_oracle(ctx, ctx.from_word(g), ctx.from_word(g1), conj_budget);
  rep["conjugacy"] = {{"status", cr.status == ConjugacyReport::Status::Conjugate
                                     ? "conjugate"
                                     : (cr.status == ConjugacyReport::Status::NotConjugate
                                            ? "not-conjugate"
                                            : "undecided")},
                      {"exhaustive", cr.exhaustive},
                      {"group_order", cr.group_order}};
  return rep;
}

json replay_lemma_3_6(const GroupContext& ctx, const std::vector<RingElem>& z_char,
                      int64_t conj_budget) {
  require_pipeline_rank(ctx);
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  json rep;
  rep["lemma"] = "3.6";
  rep["phi"] = rs.name();
  rep["ring"] = r.name();
  // central torus elements of the adjoint model: chi with chi(beta) = 1 on
  // every root, i.e. the trivial matrix only
  int64_t central_count = 0;
  if (r.order() <= 4096 && rs.rank() <= 3) {
    auto units = r.units();
    std::vector<size_t> pick(static_cast<size_t>(rs.rank()), 0);
    int64_t total = 1;
    for (int i = 0; i < rs.rank(); ++i) total *= static_cast<int64_t>(units.size());
    for (int64_t it = 0; it < total; ++it) {
      int64_t v = it;
      std::vector<RingElem> chi;
      for (int i = 0; i < rs.rank(); ++i) {
        chi.push_back(units[static_cast<size_t>(v % static_cast<int64_t>(units.size()))]);
        v /= static_cast<int64_t>(units.size());
      }
      if (ctx.is_identity(ctx.eval_letter(Letter::torus_char(chi)))) ++central_count;
    }
    rep["central_torus_characters"] = central_count;
    rep["center_trivial_in_model"] = (central_count == 1);
  }
  GroupElement z = ctx.torus_element(z_char);
  GroupWord g = z.word();
  for (int i = 0; i < rs.rank(); ++i)
    g.push_back(Letter::x(rs.simple_root_index(i), r.one()));
  // a central automorphism with the trivial assignment is the identity
  StandardAutomorphism lam(ctx.shared_from_this(), {AutoFactor::central({})});
  GroupWord g1 = lam.apply_word(g);
  rep["g"] = word_to_json_brief(ctx, g);
  rep["lambda_g_equals_g"] = (ctx.eval_word(g) == ctx.eval_word(g1));
  ConjugacyReport cr =
      conjugacy_oracle(ctx, ctx.from_word(g), ctx.from_word(g1), conj_budget);
  rep["conjugacy_status"] = cr.status == ConjugacyReport::Status::Conjugate
                                ? "conjugate"
                                : (cr.status == ConjugacyReport::Status::NotConjugate
                                       ? "not-conjugate"
                                       : "undecided");
  return rep;
}

}  // namespace chevlab
