#include "chevlab/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace chevlab {

namespace {

// Canonical order on positive roots: height ascending, then coefficient
// vectors descending lexicographically (so alpha_1 precedes alpha_2, and the
// extraspecial pair of a height-2 root starts at the lower simple index).
bool canonical_less(const Root& a, const Root& b) {
  if (a.height != b.height) return a.height < b.height;
  return a.coeffs > b.coeffs;
}

}  // namespace

RootSystem RootSystem::build(char type, int rank) {
  auto bad = [&] {
    throw InvalidTypeError(std::string("invalid root system: ") + type +
                           std::to_string(rank));
  };
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  int l = rank;
  if (l < 1) bad();
  auto& A = rs.cartan_;
  A.assign(static_cast<size_t>(l), std::vector<int>(static_cast<size_t>(l), 0));
  for (int i = 0; i < l; ++i) A[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
  auto link = [&](int i, int j, int aij = -1, int aji = -1) {
    A[static_cast<size_t>(i)][static_cast<size_t>(j)] = aij;
    A[static_cast<size_t>(j)][static_cast<size_t>(i)] = aji;
  };
  rs.dnorm_.assign(static_cast<size_t>(l), 1);

  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      break;
    case 'B':
      if (l < 2) bad();
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      // last simple root short: <alpha_{l-2}, alpha_{l-1}^vee> = -2
      link(l - 2, l - 1, -2, -1);
      for (int i = 0; i + 1 < l; ++i) rs.dnorm_[static_cast<size_t>(i)] = 2;
      rs.dnorm_[static_cast<size_t>(l - 1)] = 1;
      break;
    case 'C':
      if (l < 2) bad();
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      // last simple root long
      link(l - 2, l - 1, -1, -2);
      for (int i = 0; i + 1 < l; ++i) rs.dnorm_[static_cast<size_t>(i)] = 1;
      rs.dnorm_[static_cast<size_t>(l - 1)] = 2;
      break;
    case 'D':
      if (l < 3) bad();
      for (int i = 0; i + 1 < l - 1; ++i) link(i, i + 1);
      link(l - 3, l - 1);
      break;
    case 'E': {
      if (l < 6 || l > 8) bad();
      // Bourbaki numbering, 0-indexed: node 1 hangs off node 3.
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < l; ++i) link(i, i + 1);
      break;
    }
    case 'F':
      if (l != 4) bad();
      link(0, 1);
      link(1, 2, -2, -1);
      link(2, 3);
      rs.dnorm_ = {2, 2, 1, 1};
      break;
    case 'G':
      if (l != 2) bad();
      // alpha_1 short, alpha_2 long
      link(0, 1, -1, -3);
      rs.dnorm_ = {1, 3};
      break;
    default:
      bad();
  }
  // symmetry sanity: d_j * A[i][j] == d_i * A[j][i]
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (rs.dnorm_[static_cast<size_t>(j)] * A[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
          rs.dnorm_[static_cast<size_t>(i)] * A[static_cast<size_t>(j)][static_cast<size_t>(i)])
        throw RootSystemError("Cartan matrix symmetrization failed");
  rs.close_roots();
  return rs;
}

RootSystem RootSystem::from_name(const std::string& label) {
  if (label.size() < 2 ||
      !std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InvalidTypeError("bad root system label: " + label);
  return build(label[0], std::stoi(label.substr(1)));
}

void RootSystem::close_roots() {
  int l = rank_;
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < l; ++i) {
    std::vector<int> e(static_cast<size_t>(l), 0);
    e[static_cast<size_t>(i)] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  auto pair_with_simple = [&](const std::vector<int>& c, int j) {
    int s = 0;
    for (int i = 0; i < l; ++i) s += c[static_cast<size_t>(i)] * cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return s;
  };
  while (!queue.empty()) {
    std::vector<int> c = queue.front();
    queue.pop_front();
    for (int j = 0; j < l; ++j) {
      std::vector<int> r = c;
      r[static_cast<size_t>(j)] -= pair_with_simple(c, j);
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  std::vector<Root> pos;
  for (const auto& c : seen) {
    int h = std::accumulate(c.begin(), c.end(), 0);
    bool allpos = std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; });
    bool allneg = std::all_of(c.begin(), c.end(), [](int v) { return v <= 0; });
    if (!allpos && !allneg) throw RootSystemError("mixed-sign root produced by closure");
    if (h > 0) {
      Root r;
      r.coeffs = c;
      r.height = h;
      pos.push_back(std::move(r));
    }
  }
  std::sort(pos.begin(), pos.end(), canonical_less);
  m_ = static_cast<int>(pos.size());
  roots_ = pos;
  for (const Root& r : pos) {
    Root n;
    n.coeffs.resize(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) n.coeffs[static_cast<size_t>(i)] = -r.coeffs[static_cast<size_t>(i)];
    n.height = -r.height;
    roots_.push_back(std::move(n));
  }
  for (int i = 0; i < 2 * m_; ++i) index_[roots_[static_cast<size_t>(i)].coeffs] = i;
  // length classes
  int64_t maxn = 0;
  for (int i = 0; i < m_; ++i) maxn = std::max(maxn, norm(i));
  for (int i = 0; i < 2 * m_; ++i)
    roots_[static_cast<size_t>(i)].is_long = (norm(i) == maxn);
}

int RootSystem::root_index(const std::vector<int>& coeffs) const {
  auto it = index_.find(coeffs);
  if (it == index_.end()) throw RootSystemError("not a root");
  return it->second;
}

std::optional<int> RootSystem::try_root_index(const std::vector<int>& coeffs) const {
  auto it = index_.find(coeffs);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::simple_root_index(int i) const {
  std::vector<int> e(static_cast<size_t>(rank_), 0);
  e[static_cast<size_t>(i)] = 1;
  return root_index(e);
}

int64_t RootSystem::norm(int idx) const {
  const auto& c = roots_[static_cast<size_t>(idx)].coeffs;
  int64_t s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += static_cast<int64_t>(c[static_cast<size_t>(i)]) * c[static_cast<size_t>(j)] *
           dnorm_[static_cast<size_t>(j)] * cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return s;  // equals (alpha, alpha) with (alpha_j, alpha_j) = 2 d_j
}

int RootSystem::pairing(int beta_idx, int alpha_idx) const {
  const auto& b = roots_[static_cast<size_t>(beta_idx)].coeffs;
  const auto& a = roots_[static_cast<size_t>(alpha_idx)].coeffs;
  int64_t num = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      num += static_cast<int64_t>(b[static_cast<size_t>(i)]) * a[static_cast<size_t>(j)] *
             dnorm_[static_cast<size_t>(j)] * cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  int64_t den = norm(alpha_idx);
  if ((2 * num) % den != 0) throw RootSystemError("non-integral Cartan pairing");
  return static_cast<int>((2 * num) / den);
}

std::pair<int, int> RootSystem::root_string(int alpha_idx, int beta_idx) const {
  const auto& a = roots_[static_cast<size_t>(alpha_idx)].coeffs;
  const auto& b = roots_[static_cast<size_t>(beta_idx)].coeffs;
  auto shifted = [&](int k) {
    std::vector<int> c(static_cast<size_t>(rank_));
    for (int i = 0; i < rank_; ++i)
      c[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] + k * a[static_cast<size_t>(i)];
    return c;
  };
  int p = 0, q = 0;
  while (try_root_index(shifted(-(p + 1))).has_value()) ++p;
  while (try_root_index(shifted(q + 1)).has_value()) ++q;
  return {p, q};
}

int RootSystem::reflect_simple(int root_idx, int i) const {
  std::vector<int> c = roots_[static_cast<size_t>(root_idx)].coeffs;
  int pair = pairing(root_idx, simple_root_index(i));
  c[static_cast<size_t>(i)] -= pair;
  return root_index(c);
}

int RootSystem::reflect_by_root(int root_idx, int alpha_idx) const {
  std::vector<int> c = roots_[static_cast<size_t>(root_idx)].coeffs;
  const auto& a = roots_[static_cast<size_t>(alpha_idx)].coeffs;
  int pair = pairing(root_idx, alpha_idx);
  for (int i = 0; i < rank_; ++i) c[static_cast<size_t>(i)] -= pair * a[static_cast<size_t>(i)];
  return root_index(c);
}

void RootSystem::ensure_weyl() const {
  if (!weyl_.empty()) return;
  int n = num_roots();
  // simple reflection actions
  std::vector<std::vector<int32_t>> simple(static_cast<size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    simple[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
      simple[static_cast<size_t>(i)][static_cast<size_t>(r)] =
          static_cast<int32_t>(reflect_simple(r, i));
  }
  WeylElement id;
  id.action.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) id.action[static_cast<size_t>(r)] = static_cast<int32_t>(r);
  weyl_.push_back(id);
  weyl_index_[id.action] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank_; ++i) {
      // (w * s_i)(r) = w(s_i(r))
      std::vector<int32_t> act(static_cast<size_t>(n));
      for (int r = 0; r < n; ++r)
        act[static_cast<size_t>(r)] =
            weyl_[static_cast<size_t>(w)].action[static_cast<size_t>(
                simple[static_cast<size_t>(i)][static_cast<size_t>(r)])];
      if (weyl_index_.find(act) == weyl_index_.end()) {
        WeylElement e;
        e.action = std::move(act);
        e.word = weyl_[static_cast<size_t>(w)].word;
        e.word.push_back(i);
        e.length = weyl_[static_cast<size_t>(w)].length + 1;
        int idx = static_cast<int>(weyl_.size());
        weyl_index_[e.action] = idx;
        weyl_.push_back(std::move(e));
        queue.push_back(idx);
        if (static_cast<int64_t>(weyl_.size()) > kWeylCap)
          throw WeylTooLargeError("Weyl group exceeds enumeration cap for " + name());
      }
    }
  }
}

const std::vector<WeylElement>& RootSystem::weyl() const {
  ensure_weyl();
  return weyl_;
}

int RootSystem::weyl_index(const std::vector<int32_t>& action) const {
  ensure_weyl();
  auto it = weyl_index_.find(action);
  if (it == weyl_index_.end()) throw RootSystemError("not a Weyl element action");
  return it->second;
}

int RootSystem::weyl_mul_simple(int w_idx, int i) const {
  ensure_weyl();
  int n = num_roots();
  std::vector<int32_t> act(static_cast<size_t>(n));
  const auto& w = weyl_[static_cast<size_t>(w_idx)];
  for (int r = 0; r < n; ++r)
    act[static_cast<size_t>(r)] = w.action[static_cast<size_t>(reflect_simple(r, i))];
  return weyl_index(act);
}

int RootSystem::weyl_reflection(int alpha_idx) const {
  ensure_weyl();
  int n = num_roots();
  std::vector<int32_t> act(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r)
    act[static_cast<size_t>(r)] = static_cast<int32_t>(reflect_by_root(r, alpha_idx));
  return weyl_index(act);
}

int RootSystem::weyl_inverse(int w_idx) const {
  ensure_weyl();
  const auto& w = weyl_[static_cast<size_t>(w_idx)];
  std::vector<int32_t> act(w.action.size());
  for (size_t r = 0; r < w.action.size(); ++r)
    act[static_cast<size_t>(w.action[r])] = static_cast<int32_t>(r);
  return weyl_index(act);
}

int RootSystem::weyl_longest() const {
  ensure_weyl();
  int best = 0;
  for (size_t i = 0; i < weyl_.size(); ++i)
    if (weyl_[i].length > weyl_[static_cast<size_t>(best)].length) best = static_cast<int>(i);
  return best;
}

std::vector<int> RootSystem::cell_filter(const std::vector<int>& I) const {
  ensure_weyl();
  std::vector<int> out;
  for (size_t w = 0; w < weyl_.size(); ++w) {
    bool ok = true;
    for (int i : I) {
      int img = weyl_[w].action[static_cast<size_t>(simple_root_index(i))];
      if (!is_positive(img)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(w));
  }
  return out;
}

std::vector<int> RootSystem::cell_filter_by_descent(const std::vector<int>& I) const {
  ensure_weyl();
  std::vector<int> out;
  for (size_t w = 0; w < weyl_.size(); ++w) {
    bool ok = true;
    for (int i : I) {
      int ws = weyl_mul_simple(static_cast<int>(w), i);
      // w(alpha_i) < 0 iff length decreases
      if (weyl_[static_cast<size_t>(ws)].length < weyl_[w].length) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(w));
  }
  return out;
}

std::vector<std::vector<int>> RootSystem::diagram_automorphisms() const {
  std::vector<int> perm(static_cast<size_t>(rank_));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < rank_ && ok; ++i)
      for (int j = 0; j < rank_ && ok; ++j)
        if (cartan_[static_cast<size_t>(perm[static_cast<size_t>(i)])]
                   [static_cast<size_t>(perm[static_cast<size_t>(j)])] !=
            cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)])
          ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  // identity first, then by permutation order (next_permutation already
  // yields ascending order starting from identity)
  return out;
}

int RootSystem::apply_diagram(const std::vector<int>& perm, int root_idx) const {
  const auto& c = roots_[static_cast<size_t>(root_idx)].coeffs;
  std::vector<int> img(static_cast<size_t>(rank_), 0);
  for (int i = 0; i < rank_; ++i) img[static_cast<size_t>(perm[static_cast<size_t>(i)])] = c[static_cast<size_t>(i)];
  return root_index(img);
}

int RootSystem::max_height() const {
  int h = 0;
  for (int i = 0; i < m_; ++i) h = std::max(h, roots_[static_cast<size_t>(i)].height);
  return h;
}

}  // namespace chevlab
