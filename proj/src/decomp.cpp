#include "chevlab/decomp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace chevlab {

namespace {

// ---- integer-level helpers (representation-level, ring-independent) ---------

IntMat int_identity(int d) {
  IntMat m(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return m;
}

IntMat int_matmul(const IntMat& x, const IntMat& y) {
  int d = static_cast<int>(x.size());
  IntMat r(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      int64_t v = x[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (v == 0) continue;
      for (int j = 0; j < d; ++j) {
        int64_t w = y[static_cast<size_t>(k)][static_cast<size_t>(j)];
        if (w != 0) r[static_cast<size_t>(i)][static_cast<size_t>(j)] += v * w;
      }
    }
  return r;
}

IntMat int_eval_x(const Representation& rep, int root, int64_t t) {
  int d = rep.dim();
  IntMat m = int_identity(d);
  const auto& series = rep.exp_matrices(root);
  int64_t tp = 1;
  for (size_t k = 1; k < series.size(); ++k) {
    tp *= t;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            tp * series[k][static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

// n_alpha over the integers, parameter +-1 words only
IntMat int_n_of(const Representation& rep, int root, int sgn) {
  const RootSystem& rs = rep.roots();
  IntMat m = int_eval_x(rep, root, sgn);
  m = int_matmul(m, int_eval_x(rep, rs.negate(root), -sgn));
  return int_matmul(m, int_eval_x(rep, root, sgn));
}

IntMat int_h_minus1(const Representation& rep, int root) {
  // h_alpha(-1) = w_alpha(-1) w_alpha(1)^{-1} = w_alpha(-1) w_alpha(-1)
  IntMat w = int_n_of(rep, root, -1);
  return int_matmul(w, w);
}

IntMat int_weyl_rep(const Representation& rep, const std::vector<int>& word) {
  IntMat m = int_identity(rep.dim());
  const RootSystem& rs = rep.roots();
  for (int i : word) m = int_matmul(m, int_n_of(rep, rs.simple_root_index(i), 1));
  return m;
}

IntMat int_weyl_rep_inv(const Representation& rep, const std::vector<int>& word) {
  IntMat m = int_identity(rep.dim());
  const RootSystem& rs = rep.roots();
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    m = int_matmul(m, int_n_of(rep, rs.simple_root_index(*it), -1));
  return m;
}

// Solve D = prod_j h_{alpha_j}(-1)^{m_j} for a +-1 diagonal integer torus
// matrix by scanning the 2^l sign patterns.
std::vector<int> pm1_h_word(const Representation& rep, const IntMat& target) {
  int l = rep.roots().rank();
  std::vector<IntMat> hm;
  for (int j = 0; j < l; ++j)
    hm.push_back(int_h_minus1(rep, rep.roots().simple_root_index(j)));
  for (int mask = 0; mask < (1 << l); ++mask) {
    IntMat acc = int_identity(rep.dim());
    for (int j = 0; j < l; ++j)
      if (mask & (1 << j)) acc = int_matmul(acc, hm[static_cast<size_t>(j)]);
    if (acc == target) {
      std::vector<int> out;
      for (int j = 0; j < l; ++j)
        if (mask & (1 << j)) out.push_back(j);
      return out;
    }
  }
  throw DecompositionFailedError("torus correction is not a +-1 h-word");
}

// cached correction: wdot(w) * n_i = wdot(w s_i) * (prod h_{alpha_j}(-1))
const std::vector<int>& weyl_step_correction(const Representation& rep,
                                             const RootSystem& rs, int w, int i) {
  static std::map<std::tuple<const Representation*, int, int>, std::vector<int>> cache;
  auto key = std::make_tuple(&rep, w, i);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int w2 = rs.weyl_mul_simple(w, i);
  IntMat lhs = int_matmul(int_weyl_rep(rep, rs.weyl()[static_cast<size_t>(w)].word),
                          int_n_of(rep, rs.simple_root_index(i), 1));
  IntMat corr = int_matmul(
      int_weyl_rep_inv(rep, rs.weyl()[static_cast<size_t>(w2)].word), lhs);
  return cache.emplace(key, pm1_h_word(rep, corr)).first->second;
}

// cached correction: n_beta = wdot(s_beta) * (prod h_{alpha_j}(-1))
const std::vector<int>& reflection_correction(const Representation& rep,
                                              const RootSystem& rs, int beta) {
  static std::map<std::pair<const Representation*, int>, std::vector<int>> cache;
  auto key = std::make_pair(&rep, beta);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int wr = rs.weyl_reflection(beta);
  IntMat nb = int_n_of(rep, beta, 1);
  IntMat corr =
      int_matmul(int_weyl_rep_inv(rep, rs.weyl()[static_cast<size_t>(wr)].word), nb);
  return cache.emplace(key, pm1_h_word(rep, corr)).first->second;
}

// cached conjugation signs for single simple reflections
int simple_conj_sign(const GroupContext& ctx, int i, int root) {
  static std::map<std::tuple<const Representation*, int, int>, int> cache;
  auto key = std::make_tuple(&ctx.rep(), i, root);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int s = ctx.conj_sign({i}, root);
  cache.emplace(key, s);
  return s;
}

// ---- generic unipotent collection -------------------------------------------

using OrderKey = std::function<long(int)>;

GroupWord collect_word(const GroupContext& ctx, GroupWord w, const OrderKey& key) {
  const LocalRing& r = ctx.ring();
  const size_t iter_cap = 1u << 22;
  size_t iters = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    // merge adjacent same-root letters, drop zeros
    GroupWord merged;
    for (const Letter& l : w) {
      if (r.is_zero(l.param)) continue;
      if (!merged.empty() && merged.back().root == l.root) {
        merged.back().param = r.add(merged.back().param, l.param);
        if (r.is_zero(merged.back().param)) merged.pop_back();
      } else {
        merged.push_back(l);
      }
    }
    w = std::move(merged);
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      if (key(w[k].root) > key(w[k + 1].root)) {
        // x_a(s) x_b(t) = x_b(t) x_a(s) [x_a(-s), x_b(-t)]
        Letter a = w[k], b = w[k + 1];
        GroupWord corr =
            ctx.commutator_formula(a.root, b.root, r.neg(a.param), r.neg(b.param));
        GroupWord next;
        next.insert(next.end(), w.begin(), w.begin() + static_cast<long>(k));
        next.push_back(b);
        next.push_back(a);
        next.insert(next.end(), corr.begin(), corr.end());
        next.insert(next.end(), w.begin() + static_cast<long>(k) + 2, w.end());
        w = std::move(next);
        changed = true;
        break;
      }
    }
    if (++iters > iter_cap) throw DecompositionFailedError("collection did not terminate");
  }
  return w;
}

OrderKey canonical_key(const GroupContext& ctx) {
  return [&rs = ctx.roots()](int root) {
    return static_cast<long>(rs.root(root).height) * 1024 + root;
  };
}

}  // namespace

GroupWord unipotent_normal_form(const GroupContext& ctx, const GroupWord& word) {
  for (const Letter& l : word) {
    if (l.kind != Letter::Kind::X || !ctx.roots().is_positive(l.root))
      throw DecompError("normal form requires positive-root x letters");
  }
  return collect_word(ctx, word, canonical_key(ctx));
}

RingElem torus_conj_param(const GroupContext& ctx, const Mat& t, int root) {
  const auto& reads = ctx.rep().read_entries(root);
  auto [ri, rj, rc] = reads.front();
  const LocalRing& r = ctx.ring();
  // (T X T^{-1})[ri][rj] = chi * X1[ri][rj]; T diagonal
  RingElem v = r.mul(t.at(ri, ri), r.inv(t.at(rj, rj)));
  (void)rc;
  return v;
}

RingElem torus_action_on_root(const GroupContext& ctx, const GroupWord& t_word, int root) {
  const LocalRing& r = ctx.ring();
  const RootSystem& rs = ctx.roots();
  RingElem chi = r.one();
  for (const Letter& l : t_word) {
    switch (l.kind) {
      case Letter::Kind::H:
        chi = r.mul(chi, r.pow(l.param, rs.pairing(root, l.root)));
        break;
      case Letter::Kind::TorusChar: {
        const auto& c = rs.root(root).coeffs;
        for (int i = 0; i < rs.rank(); ++i) {
          int e = c[static_cast<size_t>(i)];
          if (e != 0) chi = r.mul(chi, r.pow(l.chi[static_cast<size_t>(i)], e));
        }
        break;
      }
      default:
        throw DecompError("torus word may contain only h and torus-character letters");
    }
  }
  return chi;
}

// ---- matrix-to-word extraction -----------------------------------------------

namespace {

GroupWord graded_word_from_matrix(const GroupContext& ctx, const Mat& m, bool positive) {
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  // roots in increasing |height| (canonical order for positives, mirrored for
  // negatives); peel the front factor at each step
  std::vector<int> order;
  for (int i = 0; i < rs.num_positive(); ++i)
    order.push_back(positive ? i : rs.negate(i));
  Mat a = m;
  GroupWord out;
  for (int root : order) {
    const auto& reads = ctx.rep().read_entries(root);
    RingElem s;
    bool got = false;
    for (auto [ri, rj, rc] : reads) {
      RingElem coeff = r.from_int(rc);
      if (!r.is_unit(coeff)) continue;
      s = r.mul(a.at(ri, rj), r.inv(coeff));
      got = true;
      break;
    }
    if (!got) throw DecompositionFailedError("no unit read entry for root");
    if (r.is_zero(s)) continue;
    out.push_back(Letter::x(root, s));
    a = ctx.mul(ctx.eval_x(root, r.neg(s)), a);
  }
  if (!ctx.is_identity(a))
    throw DecompositionFailedError("matrix is not a graded unipotent product");
  return out;
}

}  // namespace

GroupWord u_word_from_matrix(const GroupContext& ctx, const Mat& m) {
  return graded_word_from_matrix(ctx, m, true);
}

GroupWord v_word_from_matrix(const GroupContext& ctx, const Mat& m) {
  return graded_word_from_matrix(ctx, m, false);
}

std::optional<GroupWord> h_word_from_torus(const GroupContext& ctx, const Mat& t) {
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  int l = rs.rank();
  // target chi on every simple root
  std::vector<RingElem> target;
  for (int j = 0; j < l; ++j)
    target.push_back(torus_conj_param(ctx, t, rs.simple_root_index(j)));
  // search tau tuples: chi(alpha_j) = prod_i tau_i^{<alpha_j, alpha_i^vee>}
  std::vector<RingElem> units = r.units();
  std::vector<size_t> pick(static_cast<size_t>(l), 0);
  int64_t total = 1;
  for (int i = 0; i < l; ++i) total *= static_cast<int64_t>(units.size());
  if (total > 2000000) return std::nullopt;  // out of search budget
  for (int64_t it = 0; it < total; ++it) {
    int64_t v = it;
    for (int i = 0; i < l; ++i) {
      pick[static_cast<size_t>(i)] = static_cast<size_t>(v % static_cast<int64_t>(units.size()));
      v /= static_cast<int64_t>(units.size());
    }
    bool ok = true;
    for (int j = 0; j < l && ok; ++j) {
      RingElem chi = r.one();
      for (int i = 0; i < l; ++i) {
        int e = rs.pairing(rs.simple_root_index(j), rs.simple_root_index(i));
        if (e != 0) chi = r.mul(chi, r.pow(units[pick[static_cast<size_t>(i)]], e));
      }
      if (chi != target[static_cast<size_t>(j)]) ok = false;
    }
    if (!ok) continue;
    GroupWord w;
    for (int i = 0; i < l; ++i) {
      const RingElem& tau = units[pick[static_cast<size_t>(i)]];
      if (!r.is_one(tau)) w.push_back(Letter::h(rs.simple_root_index(i), tau));
    }
    // candidate matches on all conjugation characters; confirm the matrix
    if (ctx.eval_word(w) == t) return w;
  }
  return std::nullopt;
}

// ---- Bruhat over a field -----------------------------------------------------

namespace {

struct BruhatState {
  const GroupContext& ctx;
  GroupWord u;   // canonical order
  int w = 0;
  GroupWord t;   // h / torus-character letters
  GroupWord u2;  // supported on U_w, canonical order
  bool t_pure_h = true;

  explicit BruhatState(const GroupContext& c) : ctx(c), w(c.roots().weyl_identity()) {}

  const RootSystem& rs() const { return ctx.roots(); }
  const LocalRing& ring() const { return ctx.ring(); }

  bool w_negative(int root) const {
    return !rs().is_positive(
        rs().weyl()[static_cast<size_t>(w)].action[static_cast<size_t>(root)]);
  }
  int w_image(int root) const {
    return rs().weyl()[static_cast<size_t>(w)].action[static_cast<size_t>(root)];
  }

  // cross a positive-root word (in order) leftwards over t and wdot into u;
  // requires w(root) > 0 for every letter
  void cross_into_u(const GroupWord& p) {
    if (p.empty()) return;
    GroupWord imgs;
    for (const Letter& l : p) {
      RingElem s = ring().mul(torus_action_on_root(ctx, t, l.root), l.param);
      int img = w_image(l.root);
      int eps = ctx.conj_sign(rs().weyl()[static_cast<size_t>(w)].word, l.root);
      imgs.push_back(Letter::x(img, eps == 1 ? s : ring().neg(s)));
    }
    GroupWord merged = u;
    merged.insert(merged.end(), imgs.begin(), imgs.end());
    u = collect_word(ctx, std::move(merged), canonical_key(ctx));
  }

  // append a positive word to u2, splitting off the part w sends positive
  void absorb_into_u2(GroupWord raw) {
    GroupWord both = u2;
    both.insert(both.end(), raw.begin(), raw.end());
    OrderKey split_key = [this](int root) {
      long neg = w_negative(root) ? 1 : 0;
      return neg * 1048576 + static_cast<long>(rs().root(root).height) * 1024 + root;
    };
    GroupWord col = collect_word(ctx, std::move(both), split_key);
    GroupWord p, q;
    for (const Letter& l : col) (w_negative(l.root) ? q : p).push_back(l);
    cross_into_u(p);
    u2 = collect_word(ctx, std::move(q), canonical_key(ctx));
  }

  void mul_x(int root, const RingElem& s) {
    if (ring().is_zero(s)) return;
    if (rs().is_positive(root)) {
      absorb_into_u2({Letter::x(root, s)});
      return;
    }
    // x_{-a}(s) = x_a(s^{-1}) w_a(-s^{-1}) x_a(s^{-1}) over a field
    int pos = rs().negate(root);
    RingElem si = ring().inv(s);
    mul_x(pos, si);
    mul_w(pos, ring().neg(si));
    mul_x(pos, si);
  }

  void mul_torus(const Letter& l) {
    Letter nl = l;
    if (l.kind == Letter::Kind::H && !rs().is_positive(l.root)) {
      nl = Letter::h(rs().negate(l.root), ring().inv(l.param));
    }
    if (nl.kind == Letter::Kind::TorusChar) t_pure_h = false;
    // twist u2 through the new torus letter
    for (Letter& x : u2) {
      RingElem chi = torus_action_on_root(ctx, {nl}, x.root);
      x.param = ring().mul(ring().inv(chi), x.param);
    }
    t.push_back(std::move(nl));
  }

  void mul_n(int i) {
    int ai = rs().simple_root_index(i);
    // u2 with the alpha_i letter first
    OrderKey ai_first = [this, ai](int root) {
      if (root == ai) return long{-1};
      return static_cast<long>(rs().root(root).height) * 1024 + root;
    };
    GroupWord col = collect_word(ctx, u2, ai_first);
    RingElem c = ring().zero();
    GroupWord phat;
    for (size_t k = 0; k < col.size(); ++k) {
      if (k == 0 && col[k].root == ai)
        c = col[k].param;
      else
        phat.push_back(col[k]);
    }
    // conjugate phat by n_i^{-1}: x_g(a) -> x_{s_i g}(eps a)
    GroupWord phat2;
    for (const Letter& l : phat) {
      int img = rs().reflect_simple(l.root, i);
      int eps = simple_conj_sign(ctx, i, img);  // n_i x_{img} n_i^{-1} = x_{root}(..)
      phat2.push_back(Letter::x(img, eps == 1 ? l.param : ring().neg(l.param)));
    }
    if (ring().is_zero(c)) {
      int w2 = rs().weyl_mul_simple(w, i);
      const auto& corr = weyl_step_correction(ctx.rep(), rs(), w, i);
      // conjugate t by n_i^{-1}: h_b(tau) -> h_{s_i b}(tau)
      GroupWord t2;
      for (const Letter& l : t) {
        if (l.kind == Letter::Kind::H) {
          int img = rs().reflect_simple(l.root, i);
          if (rs().is_positive(img))
            t2.push_back(Letter::h(img, l.param));
          else
            t2.push_back(Letter::h(rs().negate(img), ring().inv(l.param)));
        } else {
          // torus character composed with s_i
          std::vector<RingElem> nchi;
          for (int j = 0; j < rs().rank(); ++j) {
            int img = rs().reflect_simple(rs().simple_root_index(j), i);
            RingElem v = ring().one();
            const auto& cc = rs().root(img).coeffs;
            for (int k2 = 0; k2 < rs().rank(); ++k2) {
              int e = cc[static_cast<size_t>(k2)];
              if (e != 0) v = ring().mul(v, ring().pow(l.chi[static_cast<size_t>(k2)], e));
            }
            nchi.push_back(v);
          }
          t2.push_back(Letter::torus_char(std::move(nchi)));
        }
      }
      GroupWord tnew;
      for (int j : corr) tnew.push_back(Letter::h(rs().simple_root_index(j),
                                                  ring().from_int(-1)));
      tnew.insert(tnew.end(), t2.begin(), t2.end());
      t = std::move(tnew);
      w = w2;
      u2 = collect_word(ctx, std::move(phat2), canonical_key(ctx));
      return;
    }
    // c != 0 forces w(alpha_i) < 0 (alpha_i lies in U_w)
    RingElem cinv = ring().inv(c);
    // x_{a_i}(c) n_i = x_{-a_i}(c^{-1}) h_{a_i}(-c) x_{a_i}(-c^{-1})
    RingElem sstar = ring().mul(torus_action_on_root(ctx, t, rs().negate(ai)), cinv);
    int img = w_image(rs().negate(ai));  // positive here
    int eps = ctx.conj_sign(rs().weyl()[static_cast<size_t>(w)].word, rs().negate(ai));
    GroupWord merged = u;
    merged.push_back(Letter::x(img, eps == 1 ? sstar : ring().neg(sstar)));
    u = collect_word(ctx, std::move(merged), canonical_key(ctx));
    t.push_back(Letter::h(ai, ring().neg(c)));
    GroupWord trail;
    trail.push_back(Letter::x(ai, ring().neg(cinv)));
    trail.insert(trail.end(), phat2.begin(), phat2.end());
    u2.clear();  // fully consumed into (c, phat2)
    absorb_into_u2(std::move(trail));
  }

  void mul_w(int root, const RingElem& tau) {
    if (!rs().is_positive(root)) {
      // w_{-a}(tau) = w_a(-tau^{-1})
      mul_w(rs().negate(root), ring().neg(ring().inv(tau)));
      return;
    }
    mul_torus(Letter::h(root, tau));
    // n_root = wdot(s_root) * correction
    int wr = rs().weyl_reflection(root);
    for (int i : rs().weyl()[static_cast<size_t>(wr)].word) mul_n(i);
    for (int j : reflection_correction(ctx.rep(), rs(), root))
      mul_torus(Letter::h(rs().simple_root_index(j), ring().from_int(-1)));
  }

  void mul_letter(const Letter& l) {
    switch (l.kind) {
      case Letter::Kind::X:
        mul_x(l.root, l.param);
        break;
      case Letter::Kind::H:
      case Letter::Kind::TorusChar:
        mul_torus(l);
        break;
      case Letter::Kind::W:
        mul_w(l.root, l.param);
        break;
    }
  }
};

}  // namespace

BruhatForm bruhat_decompose(const GroupContext& ctx, const GroupWord& g) {
  if (!ctx.ring().is_field())
    throw NotAFieldError("Bruhat decomposition requires a field; use gauss over " +
                         ctx.ring().label());
  BruhatState st(ctx);
  for (const Letter& l : g) st.mul_letter(l);

  // convert u wdot t u2 into t* u* wdot u2
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  Mat wmat = ctx.weyl_rep_matrix(st.w);
  Mat tmat = ctx.eval_word(st.t);
  Mat tstar_mat = ctx.mul(ctx.mul(wmat, tmat), ctx.inverse(wmat));
  // letterwise conjugation h_b(tau) -> h_{w(b)}(tau)
  GroupWord tstar;
  bool pure_h = st.t_pure_h;
  for (const Letter& l : st.t) {
    if (l.kind == Letter::Kind::H) {
      int img = st.w_image(l.root);
      if (rs.is_positive(img))
        tstar.push_back(Letter::h(img, l.param));
      else
        tstar.push_back(Letter::h(rs.negate(img), r.inv(l.param)));
    } else {
      tstar.push_back(l);  // torus characters conjugate by the w-action on chi
      std::vector<RingElem> nchi;
      const auto& winv = rs.weyl()[static_cast<size_t>(rs.weyl_inverse(st.w))];
      for (int j = 0; j < rs.rank(); ++j) {
        int img = winv.action[static_cast<size_t>(rs.simple_root_index(j))];
        RingElem v = r.one();
        const auto& cc = rs.root(img).coeffs;
        for (int k2 = 0; k2 < rs.rank(); ++k2) {
          int e = cc[static_cast<size_t>(k2)];
          if (e != 0) v = r.mul(v, r.pow(l.chi[static_cast<size_t>(k2)], e));
        }
        nchi.push_back(v);
      }
      tstar.back() = Letter::torus_char(std::move(nchi));
    }
  }
  if (!(ctx.eval_word(tstar) == tstar_mat)) {
    // fall back to solving the conjugated torus matrix as an h-word
    auto solved = h_word_from_torus(ctx, tstar_mat);
    if (solved) {
      tstar = *solved;
    } else if (ctx.rep().is_adjoint()) {
      std::vector<RingElem> chi;
      for (int j = 0; j < rs.rank(); ++j)
        chi.push_back(torus_conj_param(ctx, tstar_mat, rs.simple_root_index(j)));
      tstar = {Letter::torus_char(std::move(chi))};
      pure_h = false;
    } else {
      throw DecompositionFailedError("torus part could not be rewritten");
    }
  }
  // u* = t*^{-1} u t*
  GroupWord ustar;
  for (const Letter& l : st.u) {
    RingElem chi = torus_conj_param(ctx, tstar_mat, l.root);
    ustar.push_back(Letter::x(l.root, r.mul(r.inv(chi), l.param)));
  }

  BruhatForm f;
  f.t_word = std::move(tstar);
  f.u_word = std::move(ustar);
  f.weyl = st.w;
  f.u2_word = st.u2;
  f.t_in_H = pure_h;
  // verify: t* u* wdot u2 == input
  Mat lhs = ctx.eval_word(f.t_word);
  lhs = ctx.mul(lhs, ctx.eval_word(f.u_word));
  lhs = ctx.mul(lhs, wmat);
  lhs = ctx.mul(lhs, ctx.eval_word(f.u2_word));
  f.verified = (lhs == ctx.eval_word(g));
  if (!f.verified)
    throw DecompositionFailedError("Bruhat decomposition failed verification");
  return f;
}

std::string bruhat_fingerprint(const GroupContext& ctx, const BruhatForm& f) {
  std::string s = ctx.encode(ctx.eval_word(f.t_word));
  s += "|w" + std::to_string(f.weyl) + "|";
  for (const Letter& l : f.u_word)
    s += std::to_string(l.root) + ":" + std::to_string(ctx.ring().index_of(l.param)) + ",";
  s += "|";
  for (const Letter& l : f.u2_word)
    s += std::to_string(l.root) + ":" + std::to_string(ctx.ring().index_of(l.param)) + ",";
  return s;
}

// ---- Gauss over a local ring -------------------------------------------------

namespace {

// attempt W = v t u with v lower-unipotent, t diagonal, u upper-unipotent in
// the graded basis, via scalar LU (all leading minors must be units)
struct VtuParts {
  GroupWord v_word;
  Mat t_mat;
  GroupWord u_word;
};

std::optional<VtuParts> try_vtu(const GroupContext& ctx, const Mat& W) {
  const LocalRing& r = ctx.ring();
  int d = ctx.dim();
  Mat a = W;
  Mat lmat = ctx.identity();
  for (int k = 0; k < d; ++k) {
    if (!r.is_unit(a.at(k, k))) return std::nullopt;
    RingElem pinv = r.inv(a.at(k, k));
    for (int i = k + 1; i < d; ++i) {
      RingElem f = r.mul(a.at(i, k), pinv);
      if (r.is_zero(f)) continue;
      lmat.at(i, k) = f;
      for (int j = 0; j < d; ++j) a.at(i, j) = r.sub(a.at(i, j), r.mul(f, a.at(k, j)));
    }
  }
  // a is now upper (incl. diagonal); split t and u
  Mat tm = ctx.identity();
  for (int i = 0; i < d; ++i) tm.at(i, i) = a.at(i, i);
  Mat um = ctx.identity();
  for (int i = 0; i < d; ++i) {
    RingElem di = r.inv(a.at(i, i));
    for (int j = 0; j < d; ++j) um.at(i, j) = r.mul(di, a.at(i, j));
  }
  VtuParts parts;
  parts.t_mat = tm;
  try {
    parts.v_word = v_word_from_matrix(ctx, lmat);
    parts.u_word = u_word_from_matrix(ctx, um);
  } catch (const DecompositionFailedError&) {
    return std::nullopt;
  }
  // exact check: v t u == W
  Mat chk = ctx.eval_word(parts.v_word);
  chk = ctx.mul(chk, tm);
  chk = ctx.mul(chk, ctx.eval_word(parts.u_word));
  if (!(chk == W)) return std::nullopt;
  return parts;
}

}  // namespace

GaussForm gauss_decompose(const GroupContext& ctx, const GroupWord& g, uint64_t seed) {
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  Mat M = ctx.eval_word(g);
  Mat Minv = ctx.inverse(M);

  // trial right-translations y: g = u^{-1} t^{-1} v^{-1} y with y M^{-1} = v t u
  std::vector<GroupWord> trials;
  trials.push_back({});
  for (int b = 0; b < rs.num_positive(); ++b) trials.push_back({Letter::x(b, r.one())});
  GroupWord ones, ones_rev;
  for (int b = 0; b < rs.num_positive(); ++b) ones.push_back(Letter::x(b, r.one()));
  for (int b = rs.num_positive() - 1; b >= 0; --b) ones_rev.push_back(Letter::x(b, r.one()));
  trials.push_back(ones);
  trials.push_back(ones_rev);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 12345);
  for (int k = 0; k < 64; ++k) trials.push_back(random_x_word(ctx, rs.num_positive(), rng, true));

  for (const GroupWord& y : trials) {
    Mat W = ctx.mul(ctx.eval_word(y), Minv);
    auto parts = try_vtu(ctx, W);
    if (!parts) continue;
    // M = u^{-1} t^{-1} v^{-1} y
    GaussForm f;
    Mat tinv = ctx.identity();
    for (int i = 0; i < ctx.dim(); ++i) tinv.at(i, i) = r.inv(parts->t_mat.at(i, i));
    auto hw = h_word_from_torus(ctx, tinv);
    if (hw) {
      f.t_word = *hw;
      f.t_in_H = true;
    } else if (ctx.rep().is_adjoint()) {
      std::vector<RingElem> chi;
      for (int j = 0; j < rs.rank(); ++j)
        chi.push_back(torus_conj_param(ctx, tinv, rs.simple_root_index(j)));
      f.t_word = {Letter::torus_char(std::move(chi))};
      f.t_in_H = false;
      if (!(ctx.eval_word(f.t_word) == tinv))
        continue;  // diagonal not realizable in this torus model
    } else {
      continue;
    }
    // u1 = t u^{-1} t^{-1}
    GroupWord u1;
    for (const Letter& l : ctx.invert_word(parts->u_word)) {
      RingElem chi = torus_conj_param(ctx, parts->t_mat, l.root);
      u1.push_back(Letter::x(l.root, r.mul(chi, l.param)));
    }
    f.u1_word = collect_word(ctx, std::move(u1), canonical_key(ctx));
    f.v_word = ctx.invert_word(parts->v_word);
    f.u2_word = collect_word(ctx, GroupWord(y), canonical_key(ctx));
    Mat lhs = ctx.eval_word(f.t_word);
    lhs = ctx.mul(lhs, ctx.eval_word(f.u1_word));
    lhs = ctx.mul(lhs, ctx.eval_word(f.v_word));
    lhs = ctx.mul(lhs, ctx.eval_word(f.u2_word));
    if (!(lhs == M)) continue;
    f.verified = true;
    return f;
  }
  throw DecompositionFailedError("no Gauss trial landed in the opposite big cell");
}

}  // namespace chevlab
