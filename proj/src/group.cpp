#include "chevlab/group.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace chevlab {

namespace {

bool same_context(const GroupContext& a, const GroupContext& b) {
  return &a.rep() == &b.rep() && a.ring().same_ring(b.ring());
}

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
    if (tp == 0) break;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            tp * series[k][static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

}  // namespace

const GroupWord& GroupElement::word() const {
  if (!word_) throw WordRequiredError("element carries no word witness");
  return *word_;
}

std::shared_ptr<const Representation> get_representation(char type, int rank,
                                                         Representation::Kind kind) {
  static std::map<std::tuple<char, int, int>, std::shared_ptr<const Representation>> cache;
  auto key = std::make_tuple(type, rank, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rs = std::make_shared<const RootSystem>(RootSystem::build(type, rank));
  auto cb = std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(rs));
  std::shared_ptr<const Representation> rep;
  if (kind == Representation::Kind::Adjoint)
    rep = std::make_shared<const Representation>(Representation::adjoint(cb));
  else
    rep = std::make_shared<const Representation>(Representation::natural_a(cb));
  cache[key] = rep;
  return rep;
}

GroupContext::GroupContext(std::shared_ptr<const Representation> rep, LocalRing ring)
    : rep_(std::move(rep)), ring_(std::move(ring)) {}

ContextPtr GroupContext::make(const std::string& phi, const LocalRing& ring,
                              Representation::Kind kind, bool enforce_invertibility) {
  if (phi.size() < 2 ||
      !std::all_of(phi.begin() + 1, phi.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InvalidTypeError("bad root system label: " + phi);
  return make(get_representation(phi[0], std::stoi(phi.substr(1)), kind), ring,
              enforce_invertibility);
}

ContextPtr GroupContext::make(std::shared_ptr<const Representation> rep,
                              const LocalRing& ring, bool enforce_invertibility) {
  auto ctx = std::shared_ptr<GroupContext>(new GroupContext(std::move(rep), ring));
  if (enforce_invertibility) ctx->check_invertibility();
  return ctx;
}

void GroupContext::check_invertibility() const {
  const RootSystem& rs = roots();
  char t = rs.type();
  bool need2 = (t == 'A' && rs.rank() == 2) || t == 'B' || t == 'C' || t == 'F';
  bool need3 = (t == 'G');
  if (need2 && !ring_.small_int_invertible(2))
    throw ContextMismatchError("context requires 1/2 in " + ring_.label() + " for " +
                               rs.name());
  if (need3 && !ring_.small_int_invertible(3))
    throw ContextMismatchError("context requires 1/3 in " + ring_.label() + " for " +
                               rs.name());
}

std::string GroupContext::label() const {
  return roots().name() + "/" + ring_.name() + "/" + rep_->tag();
}

Mat GroupContext::identity() const {
  Mat m;
  m.dim = dim();
  m.a.assign(static_cast<size_t>(m.dim) * static_cast<size_t>(m.dim), ring_.zero());
  for (int i = 0; i < m.dim; ++i) m.at(i, i) = ring_.one();
  return m;
}

Mat GroupContext::mul(const Mat& a, const Mat& b) const {
  int d = dim();
  Mat c;
  c.dim = d;
  c.a.assign(static_cast<size_t>(d) * static_cast<size_t>(d), ring_.zero());
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const RingElem& v = a.at(i, k);
      if (ring_.is_zero(v)) continue;
      for (int j = 0; j < d; ++j) {
        const RingElem& w = b.at(k, j);
        if (ring_.is_zero(w)) continue;
        c.at(i, j) = ring_.add(c.at(i, j), ring_.mul(v, w));
      }
    }
  }
  return c;
}

Mat GroupContext::inverse(const Mat& m) const {
  int d = dim();
  // Gauss-Jordan over a local ring: pivots must be units
  Mat a = m;
  Mat inv = identity();
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r) {
      if (ring_.is_unit(a.at(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw GroupError("matrix not invertible over " + ring_.label());
    if (piv != col) {
      for (int j = 0; j < d; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    RingElem pinv = ring_.inv(a.at(col, col));
    for (int j = 0; j < d; ++j) {
      a.at(col, j) = ring_.mul(a.at(col, j), pinv);
      inv.at(col, j) = ring_.mul(inv.at(col, j), pinv);
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || ring_.is_zero(a.at(r, col))) continue;
      RingElem f = a.at(r, col);
      for (int j = 0; j < d; ++j) {
        a.at(r, j) = ring_.sub(a.at(r, j), ring_.mul(f, a.at(col, j)));
        inv.at(r, j) = ring_.sub(inv.at(r, j), ring_.mul(f, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool GroupContext::is_identity(const Mat& m) const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j ? !ring_.is_one(m.at(i, j)) : !ring_.is_zero(m.at(i, j))) return false;
    }
  return true;
}

std::string GroupContext::encode(const Mat& m) const {
  std::string key;
  key.reserve(m.a.size() * 2);
  for (const RingElem& e : m.a) {
    int64_t idx = ring_.index_of(e);
    key.push_back(static_cast<char>(idx & 0xff));
    key.push_back(static_cast<char>((idx >> 8) & 0xff));
  }
  return key;
}

std::vector<RingElem> GroupContext::char_poly(const Mat& m) const {
  // Berkowitz: division-free, exact over any commutative ring.
  int n = dim();
  std::vector<RingElem> v = {ring_.one(), ring_.neg(m.at(0, 0))};
  for (int r = 1; r < n; ++r) {
    std::vector<RingElem> colv(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) colv[static_cast<size_t>(i)] = m.at(i, r);
    std::vector<RingElem> q;
    std::vector<RingElem> cur = colv;
    for (int k = 0; k < r; ++k) {
      RingElem dot = ring_.zero();
      for (int i = 0; i < r; ++i)
        dot = ring_.add(dot, ring_.mul(m.at(r, i), cur[static_cast<size_t>(i)]));
      q.push_back(dot);
      if (k + 1 < r) {
        std::vector<RingElem> nxt(static_cast<size_t>(r), ring_.zero());
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            nxt[static_cast<size_t>(i)] =
                ring_.add(nxt[static_cast<size_t>(i)],
                          ring_.mul(m.at(i, j), cur[static_cast<size_t>(j)]));
        cur = std::move(nxt);
      }
    }
    std::vector<RingElem> first = {ring_.one(), ring_.neg(m.at(r, r))};
    for (int k = 0; k < r; ++k) first.push_back(ring_.neg(q[static_cast<size_t>(k)]));
    std::vector<RingElem> out(static_cast<size_t>(r) + 2, ring_.zero());
    for (size_t i = 0; i < out.size(); ++i) {
      for (size_t j = 0; j < v.size(); ++j) {
        if (i < j || i - j >= first.size()) continue;
        out[i] = ring_.add(out[i], ring_.mul(first[i - j], v[j]));
      }
    }
    v = std::move(out);
  }
  return v;
}

Mat GroupContext::from_int_mat(const IntMat& im) const {
  Mat m;
  m.dim = dim();
  m.a.reserve(static_cast<size_t>(m.dim) * static_cast<size_t>(m.dim));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      m.a.push_back(ring_.from_int(im[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  return m;
}

Mat GroupContext::eval_x(int root, const RingElem& t) const {
  const auto& series = rep_->exp_matrices(root);
  int d = dim();
  Mat m = identity();
  RingElem tp = ring_.one();
  for (size_t k = 1; k < series.size(); ++k) {
    tp = ring_.mul(tp, t);
    if (ring_.is_zero(tp)) break;
    const IntMat& ek = series[k];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        int64_t c = ek[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (c == 0) continue;
        m.at(i, j) = ring_.add(m.at(i, j), ring_.mul(ring_.from_int(c), tp));
      }
  }
  return m;
}

Mat GroupContext::eval_letter(const Letter& l) const {
  switch (l.kind) {
    case Letter::Kind::X:
      return eval_x(l.root, l.param);
    case Letter::Kind::W: {
      const RingElem& t = l.param;
      if (!ring_.is_unit(t)) throw NotUnitError("w_alpha parameter must be a unit");
      RingElem ti = ring_.inv(t);
      Mat m = eval_x(l.root, t);
      m = mul(m, eval_x(roots().negate(l.root), ring_.neg(ti)));
      m = mul(m, eval_x(l.root, t));
      return m;
    }
    case Letter::Kind::H: {
      const RingElem& t = l.param;
      if (!ring_.is_unit(t)) throw NotUnitError("h_alpha parameter must be a unit");
      Mat wt = eval_letter(Letter::w(l.root, t));
      Mat w1inv = eval_letter(Letter::w(l.root, ring_.neg(ring_.one())));  // w(1)^{-1} = w(-1)
      return mul(wt, w1inv);
    }
    case Letter::Kind::TorusChar: {
      if (!rep_->is_adjoint())
        throw ContextMismatchError("torus characters require the adjoint model");
      int d = dim();
      Mat m = identity();
      for (int b = 0; b < d; ++b) {
        const auto& wt = rep_->basis_weight(b);
        RingElem v = ring_.one();
        for (int i = 0; i < roots().rank(); ++i) {
          int e = wt[static_cast<size_t>(i)];
          if (e != 0) v = ring_.mul(v, ring_.pow(l.chi[static_cast<size_t>(i)], e));
        }
        m.at(b, b) = v;
      }
      return m;
    }
  }
  throw GroupError("unreachable");
}

Mat GroupContext::eval_word(const GroupWord& w) const {
  Mat m = identity();
  for (const Letter& l : w) m = mul(m, eval_letter(l));
  return m;
}

GroupWord GroupContext::invert_word(const GroupWord& w) const {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Letter& l = *it;
    switch (l.kind) {
      case Letter::Kind::X:
        out.push_back(Letter::x(l.root, ring_.neg(l.param)));
        break;
      case Letter::Kind::W:
        out.push_back(Letter::w(l.root, ring_.neg(l.param)));
        break;
      case Letter::Kind::H:
        out.push_back(Letter::h(l.root, ring_.inv(l.param)));
        break;
      case Letter::Kind::TorusChar: {
        std::vector<RingElem> inv_chi;
        for (const RingElem& c : l.chi) inv_chi.push_back(ring_.inv(c));
        out.push_back(Letter::torus_char(std::move(inv_chi)));
        break;
      }
    }
  }
  return out;
}

GroupElement GroupContext::one() const {
  return GroupElement(shared_from_this(), identity(), GroupWord{});
}

GroupElement GroupContext::x_gen(int root, const RingElem& t) const {
  Letter l = Letter::x(root, t);
  return GroupElement(shared_from_this(), eval_letter(l), GroupWord{l});
}

GroupElement GroupContext::w_gen(int root, const RingElem& t) const {
  Letter l = Letter::w(root, t);
  return GroupElement(shared_from_this(), eval_letter(l), GroupWord{l});
}

GroupElement GroupContext::h_gen(int root, const RingElem& t) const {
  Letter l = Letter::h(root, t);
  return GroupElement(shared_from_this(), eval_letter(l), GroupWord{l});
}

GroupElement GroupContext::torus_element(const std::vector<RingElem>& chi) const {
  for (const RingElem& c : chi)
    if (!ring_.is_unit(c)) throw NotUnitError("torus character value must be a unit");
  Letter l = Letter::torus_char(chi);
  return GroupElement(shared_from_this(), eval_letter(l), GroupWord{l});
}

GroupElement GroupContext::from_word(const GroupWord& w) const {
  return GroupElement(shared_from_this(), eval_word(w), w);
}

GroupElement GroupContext::mul(const GroupElement& a, const GroupElement& b) const {
  if (!same_context(*a.ctx(), *b.ctx())) throw ContextMismatchError("mixed contexts in mul");
  std::optional<GroupWord> w;
  if (a.has_word() && b.has_word()) {
    GroupWord cat = a.word();
    cat.insert(cat.end(), b.word().begin(), b.word().end());
    w = std::move(cat);
  }
  return GroupElement(a.ctx(), mul(a.mat(), b.mat()), std::move(w));
}

GroupElement GroupContext::inv(const GroupElement& a) const {
  if (a.has_word()) {
    GroupWord wi = invert_word(a.word());
    Mat m = eval_word(wi);
    return GroupElement(a.ctx(), std::move(m), std::move(wi));
  }
  return GroupElement(a.ctx(), inverse(a.mat()));
}

GroupElement GroupContext::conjugate(const GroupElement& g, const GroupElement& x) const {
  return mul(mul(x, g), inv(x));
}

GroupElement GroupContext::commutator(const GroupElement& a, const GroupElement& b) const {
  return mul(mul(a, b), mul(inv(a), inv(b)));
}

ContextPtr GroupContext::residue_context() const {
  // legitimacy is inherited from this context; the residue ring needs no
  // separate invertibility screening
  return GroupContext::make(rep_, ring_.residue_field(), false);
}

GroupElement GroupContext::reduce_mod_radical(const GroupElement& g) const {
  ContextPtr rctx = residue_context();
  Mat m;
  m.dim = dim();
  m.a.reserve(g.mat().a.size());
  for (const RingElem& e : g.mat().a) m.a.push_back(ring_.residue(e));
  std::optional<GroupWord> w;
  if (g.has_word()) {
    GroupWord rw;
    for (const Letter& l : g.word()) {
      Letter nl = l;
      if (l.kind == Letter::Kind::TorusChar) {
        nl.chi.clear();
        for (const RingElem& c : l.chi) nl.chi.push_back(ring_.residue(c));
      } else {
        nl.param = ring_.residue(l.param);
      }
      rw.push_back(std::move(nl));
    }
    w = std::move(rw);
  }
  return GroupElement(rctx, std::move(m), std::move(w));
}

bool GroupContext::in_U(const Mat& m) const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) {
        if (!ring_.is_one(m.at(i, j))) return false;
      } else if (rep_->level(i) <= rep_->level(j)) {
        if (!ring_.is_zero(m.at(i, j))) return false;
      }
    }
  return true;
}

bool GroupContext::in_V(const Mat& m) const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) {
        if (!ring_.is_one(m.at(i, j))) return false;
      } else if (rep_->level(i) >= rep_->level(j)) {
        if (!ring_.is_zero(m.at(i, j))) return false;
      }
    }
  return true;
}

bool GroupContext::in_torus(const Mat& m) const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && !ring_.is_zero(m.at(i, j))) return false;
  return true;
}

// --- Chevalley commutator formula --------------------------------------------

std::vector<CommutatorTerm> derive_commutator_terms(const Representation& rep, int a, int b) {
  const RootSystem& rs = rep.roots();
  if (b == rs.negate(a)) throw OppositeRootsError("commutator formula needs a + b != 0");
  if (a == b) return {};
  int l = rs.rank();
  std::vector<CommutatorTerm> cand;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      std::vector<int> c(static_cast<size_t>(l));
      for (int t = 0; t < l; ++t)
        c[static_cast<size_t>(t)] = i * rs.root(a).coeffs[static_cast<size_t>(t)] +
                                    j * rs.root(b).coeffs[static_cast<size_t>(t)];
      auto idx = rs.try_root_index(c);
      if (idx) cand.push_back({i, j, *idx, 0});
    }
  std::sort(cand.begin(), cand.end(), [](const CommutatorTerm& x, const CommutatorTerm& y) {
    if (x.i + x.j != y.i + y.j) return x.i + x.j < y.i + y.j;
    return x.i < y.i;
  });

  int d = rep.dim();
  IntMat m = int_matmul(int_matmul(int_eval_x(rep, a, 1), int_eval_x(rep, b, 1)),
                        int_matmul(int_eval_x(rep, a, -1), int_eval_x(rep, b, -1)));

  // Peel candidates in order; the parameter of the first remaining factor is
  // read from a linear entry of its root (products of later factors cannot
  // reach that weight gap, their grades being at least twice as large).
  for (CommutatorTerm& term : cand) {
    const auto& reads = rep.read_entries(term.root);
    if (reads.empty()) throw GroupError("no read entry for root");
    auto [ri, rj, rc] = reads.front();
    int64_t val = m[static_cast<size_t>(ri)][static_cast<size_t>(rj)];
    if (val % rc != 0) throw GroupError("non-integral commutator coefficient");
    term.coeff = val / rc;
    if (term.coeff != 0) m = int_matmul(int_eval_x(rep, term.root, -term.coeff), m);
  }
  if (m != int_identity(d)) throw GroupError("commutator peeling left a nontrivial residue");

  std::vector<CommutatorTerm> out;
  for (const CommutatorTerm& t : cand)
    if (t.coeff != 0) out.push_back(t);
  return out;
}

const std::vector<CommutatorTerm>& GroupContext::commutator_terms(int a, int b) const {
  int n = roots().num_roots();
  if (comm_cache_.empty()) {
    comm_cache_.assign(static_cast<size_t>(n),
                       std::vector<std::vector<CommutatorTerm>>(static_cast<size_t>(n)));
    comm_have_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
  }
  if (b == roots().negate(a)) throw OppositeRootsError("commutator formula needs a + b != 0");
  if (!comm_have_[static_cast<size_t>(a)][static_cast<size_t>(b)]) {
    comm_cache_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        derive_commutator_terms(*rep_, a, b);
    comm_have_[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
  }
  return comm_cache_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

void GroupContext::preload_commutator_tables(
    std::vector<std::vector<std::vector<CommutatorTerm>>> tables) const {
  int n = roots().num_roots();
  if (static_cast<int>(tables.size()) != n)
    throw GroupError("cached commutator table has the wrong size");
  comm_cache_ = std::move(tables);
  comm_have_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 1));
}

const std::vector<std::vector<std::vector<CommutatorTerm>>>&
GroupContext::full_commutator_table() const {
  int n = roots().num_roots();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || b == roots().negate(a)) continue;
      commutator_terms(a, b);
    }
  return comm_cache_;
}

GroupWord GroupContext::commutator_formula(int a, int b, const RingElem& t,
                                           const RingElem& u) const {
  GroupWord w;
  for (const CommutatorTerm& term : commutator_terms(a, b)) {
    RingElem v = ring_.mul(ring_.from_int(term.coeff),
                           ring_.mul(ring_.pow(t, term.i), ring_.pow(u, term.j)));
    if (!ring_.is_zero(v)) w.push_back(Letter::x(term.root, v));
  }
  return w;
}

int GroupContext::conj_sign(const std::vector<int>& simple_word, int root) const {
  const RootSystem& rs = roots();
  int img = root;
  for (auto it = simple_word.rbegin(); it != simple_word.rend(); ++it)
    img = rs.reflect_simple(img, *it);
  auto n_of = [&](int i, int64_t sgn) {
    int sr = rs.simple_root_index(i);
    IntMat m = int_eval_x(*rep_, sr, sgn);
    m = int_matmul(m, int_eval_x(*rep_, rs.negate(sr), -sgn));
    return int_matmul(m, int_eval_x(*rep_, sr, sgn));
  };
  int d = dim();
  IntMat w = int_identity(d);
  IntMat winv = int_identity(d);
  for (int i : simple_word) w = int_matmul(w, n_of(i, 1));
  for (auto it = simple_word.rbegin(); it != simple_word.rend(); ++it)
    winv = int_matmul(winv, n_of(*it, -1));
  IntMat conj = int_matmul(int_matmul(w, int_eval_x(*rep_, root, 1)), winv);
  for (int64_t eps : {int64_t{1}, int64_t{-1}}) {
    if (conj == int_eval_x(*rep_, img, eps)) return static_cast<int>(eps);
  }
  throw GroupError("Weyl conjugation did not produce a root element");
}

Mat GroupContext::weyl_rep_matrix(int w_idx) const {
  const auto& w = roots().weyl()[static_cast<size_t>(w_idx)];
  Mat m = identity();
  for (int i : w.word)
    m = mul(m, eval_letter(Letter::w(roots().simple_root_index(i), ring_.one())));
  return m;
}

GroupWord random_x_word(const GroupContext& ctx, int len, std::mt19937_64& rng,
                        bool positive_only) {
  const RootSystem& rs = ctx.roots();
  const LocalRing& r = ctx.ring();
  GroupWord w;
  int top = positive_only ? rs.num_positive() : rs.num_roots();
  for (int k = 0; k < len; ++k) {
    int root = static_cast<int>(rng() % static_cast<uint64_t>(top));
    RingElem t = r.elem_at(static_cast<int64_t>(rng() % static_cast<uint64_t>(r.enum_size())));
    w.push_back(Letter::x(root, t));
  }
  return w;
}

}  // namespace chevlab
