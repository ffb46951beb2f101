#include "chevlab/lie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace chevlab {

namespace {

struct Frac {
  int64_t num = 0;
  int64_t den = 1;
  Frac() = default;
  Frac(int64_t n) : num(n), den(1) {}
  Frac(int64_t n, int64_t d) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
  Frac operator/(const Frac& o) const { return Frac(num * o.den, den * o.num); }
  bool is_int() const { return den == 1; }
  bool is_zero() const { return num == 0; }
};

IntMat identity_mat(int d) {
  IntMat m(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return m;
}

bool is_zero_mat(const IntMat& m) {
  for (const auto& row : m)
    for (int64_t v : row)
      if (v != 0) return false;
  return true;
}

}  // namespace

ChevalleyBasis ChevalleyBasis::build(std::shared_ptr<const RootSystem> rs_in) {
  ChevalleyBasis cb;
  cb.rs_ = std::move(rs_in);
  const RootSystem& rs = *cb.rs_;
  int n = rs.num_roots();
  int l = rs.rank();

  // coroot expansions: alpha^vee = sum_j m_j (alpha_j,alpha_j)/(alpha,alpha) alpha_j^vee
  cb.coroots_.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    std::vector<int64_t> c(static_cast<size_t>(l));
    int64_t na = rs.norm(r);
    for (int j = 0; j < l; ++j) {
      int64_t num = static_cast<int64_t>(rs.root(r).coeffs[static_cast<size_t>(j)]) *
                    rs.norm(rs.simple_root_index(j));
      if (num % na != 0) throw LieError("non-integral coroot expansion");
      c[static_cast<size_t>(j)] = num / na;
    }
    cb.coroots_[static_cast<size_t>(r)] = std::move(c);
  }

  // Structure constants by memoized recursion.  Extraspecial pairs get
  // +(p+1); other special pairs are eliminated against the extraspecial pair
  // of their sum via the Jacobi identity; mixed-sign pairs rotate through
  // the triple summing to zero (invariant-form relation); negatives mirror.
  std::vector<std::vector<Frac>> memo(static_cast<size_t>(n),
                                      std::vector<Frac>(static_cast<size_t>(n)));
  std::vector<std::vector<char>> have(static_cast<size_t>(n),
                                      std::vector<char>(static_cast<size_t>(n), 0));

  auto sum_index = [&](int a, int b) -> std::optional<int> {
    std::vector<int> s(static_cast<size_t>(l));
    bool zero = true;
    for (int i = 0; i < l; ++i) {
      s[static_cast<size_t>(i)] = rs.root(a).coeffs[static_cast<size_t>(i)] +
                                  rs.root(b).coeffs[static_cast<size_t>(i)];
      if (s[static_cast<size_t>(i)] != 0) zero = false;
    }
    if (zero) return std::nullopt;
    return rs.try_root_index(s);
  };
  auto diff_index = [&](int a, int b) -> std::optional<int> {
    std::vector<int> s(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i)
      s[static_cast<size_t>(i)] = rs.root(a).coeffs[static_cast<size_t>(i)] -
                                  rs.root(b).coeffs[static_cast<size_t>(i)];
    return rs.try_root_index(s);
  };

  std::function<Frac(int, int, int)> N = [&](int a, int b, int depth) -> Frac {
    if (depth > 200) throw SignInconsistencyError("structure constant recursion too deep");
    auto s = sum_index(a, b);
    if (!s) return Frac(0);
    if (have[static_cast<size_t>(a)][static_cast<size_t>(b)])
      return memo[static_cast<size_t>(a)][static_cast<size_t>(b)];
    auto store = [&](Frac v) {
      memo[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
      have[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
      return v;
    };
    bool ap = rs.is_positive(a), bp = rs.is_positive(b);
    if (ap && bp) {
      if (a > b) return store(Frac(-1) * N(b, a, depth + 1));
      int g = *s;
      auto [a1, b1] = cb.extraspecial_pair(g);
      if (a == a1 && b == b1) {
        auto [p, q] = rs.root_string(a, b);
        (void)q;
        return store(Frac(p + 1));
      }
      // Jacobi on (e_{-a1}, e_a, e_b):
      //   N(-a1,a)N(a-a1,b) + N(a,b)N(g,-a1) + N(b,-a1)N(b-a1,a) = 0
      Frac t1(0), t3(0);
      if (auto di = diff_index(a, a1))
        t1 = N(rs.negate(a1), a, depth + 1) * N(*di, b, depth + 1);
      if (auto di = diff_index(b, a1))
        t3 = N(b, rs.negate(a1), depth + 1) * N(*di, a, depth + 1);
      Frac denom = N(g, rs.negate(a1), depth + 1);
      if (denom.is_zero()) throw SignInconsistencyError("vanishing pivot constant");
      return store((t1 + t3) * Frac(-1) / denom);
    }
    if (!ap && !bp) return store(Frac(-1) * N(rs.negate(a), rs.negate(b), depth + 1));
    if (!ap && bp) return store(Frac(-1) * N(b, a, depth + 1));
    // a positive, b negative: rotate through c = -(a+b) using
    //   N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)
    int g = *s;
    int c = rs.negate(g);
    if (rs.is_positive(g))
      return store(N(b, c, depth + 1) * Frac(rs.norm(c), rs.norm(a)));
    return store(N(c, a, depth + 1) * Frac(rs.norm(c), rs.norm(b)));
  };

  cb.table_.assign(static_cast<size_t>(n), std::vector<int64_t>(static_cast<size_t>(n), 0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || b == rs.negate(a)) continue;
      if (!sum_index(a, b)) continue;
      Frac v = N(a, b, 0);
      if (!v.is_int()) throw SignInconsistencyError("non-integral structure constant");
      cb.table_[static_cast<size_t>(a)][static_cast<size_t>(b)] = v.num;
    }
  }
  return cb;
}

ChevalleyBasis ChevalleyBasis::from_parts(std::shared_ptr<const RootSystem> rs,
                                          std::vector<std::vector<int64_t>> table,
                                          std::vector<std::vector<int64_t>> coroots) {
  ChevalleyBasis cb;
  cb.rs_ = std::move(rs);
  int n = cb.rs_->num_roots();
  if (static_cast<int>(table.size()) != n || static_cast<int>(coroots.size()) != n)
    throw LieError("cached structure constant table has the wrong size");
  cb.table_ = std::move(table);
  cb.coroots_ = std::move(coroots);
  return cb;
}

int64_t ChevalleyBasis::structure_constant(int a, int b) const {
  if (b == rs_->negate(a)) throw LieError("structure constant of opposite roots");
  return table_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

const std::vector<int64_t>& ChevalleyBasis::coroot_coeffs(int r) const {
  return coroots_[static_cast<size_t>(r)];
}

std::pair<int, int> ChevalleyBasis::extraspecial_pair(int g) const {
  const RootSystem& rs = *rs_;
  if (!rs.is_positive(g) || rs.root(g).height < 2)
    throw LieError("extraspecial pair of a simple or negative root");
  for (int a = 0; a < rs.num_positive(); ++a) {
    std::vector<int> diff(static_cast<size_t>(rs.rank()));
    for (int i = 0; i < rs.rank(); ++i)
      diff[static_cast<size_t>(i)] = rs.root(g).coeffs[static_cast<size_t>(i)] -
                                     rs.root(a).coeffs[static_cast<size_t>(i)];
    auto idx = rs.try_root_index(diff);
    if (idx && rs.is_positive(*idx)) return {a, *idx};
  }
  throw LieError("no extraspecial pair found");
}

void ChevalleyBasis::flip_constant_for_tests(int a, int b) {
  table_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
      -table_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

std::map<int, int64_t> ChevalleyBasis::bracket_basis(int x, int y) const {
  const RootSystem& rs = *rs_;
  int n = rs.num_roots();
  std::map<int, int64_t> out;
  auto add = [&](int b, int64_t c) {
    if (c == 0) return;
    out[b] += c;
    if (out[b] == 0) out.erase(b);
  };
  bool xr = x < n, yr = y < n;
  if (!xr && !yr) return out;
  if (!xr && yr) {
    add(y, rs.pairing(y, rs.simple_root_index(x - n)));
    return out;
  }
  if (xr && !yr) {
    add(x, -rs.pairing(x, rs.simple_root_index(y - n)));
    return out;
  }
  if (y == rs.negate(x)) {
    const auto& co = coroots_[static_cast<size_t>(x)];
    for (int i = 0; i < rs.rank(); ++i) add(n + i, co[static_cast<size_t>(i)]);
    return out;
  }
  std::vector<int> s(static_cast<size_t>(rs.rank()));
  for (int i = 0; i < rs.rank(); ++i)
    s[static_cast<size_t>(i)] = rs.root(x).coeffs[static_cast<size_t>(i)] +
                                rs.root(y).coeffs[static_cast<size_t>(i)];
  auto idx = rs.try_root_index(s);
  if (idx) add(*idx, table_[static_cast<size_t>(x)][static_cast<size_t>(y)]);
  return out;
}

ChevalleyBasis::JacobiReport ChevalleyBasis::jacobi_check() const {
  const RootSystem& rs = *rs_;
  JacobiReport rep;
  int dim = algebra_dim();
  auto bracket_vec = [&](const std::map<int, int64_t>& v, int z) {
    std::map<int, int64_t> out;
    for (const auto& [b, c] : v) {
      for (const auto& [b2, c2] : bracket_basis(b, z)) {
        out[b2] += c * c2;
        if (out[b2] == 0) out.erase(b2);
      }
    }
    return out;
  };
  for (int x = 0; x < dim; ++x) {
    for (int y = x + 1; y < dim; ++y) {
      for (int z = y + 1; z < dim; ++z) {
        std::map<int, int64_t> acc;
        auto addin = [&](const std::map<int, int64_t>& m) {
          for (const auto& [b, c] : m) {
            acc[b] += c;
            if (acc[b] == 0) acc.erase(b);
          }
        };
        addin(bracket_vec(bracket_basis(x, y), z));
        addin(bracket_vec(bracket_basis(y, z), x));
        addin(bracket_vec(bracket_basis(z, x), y));
        ++rep.triples_checked;
        if (!acc.empty()) {
          std::ostringstream os;
          os << "Jacobi fails on basis triple (" << x << "," << y << "," << z << ")";
          rep.violations.push_back(os.str());
          if (rep.violations.size() > 32) return rep;
        }
      }
    }
  }
  int n = rs.num_roots();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || b == rs.negate(a)) continue;
      std::vector<int> s(static_cast<size_t>(rs.rank()));
      for (int i = 0; i < rs.rank(); ++i)
        s[static_cast<size_t>(i)] = rs.root(a).coeffs[static_cast<size_t>(i)] +
                                    rs.root(b).coeffs[static_cast<size_t>(i)];
      auto idx = rs.try_root_index(s);
      int64_t nv = table_[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (!idx) {
        if (nv != 0) rep.violations.push_back("nonzero N off the root system");
        continue;
      }
      auto [p, q] = rs.root_string(a, b);
      (void)q;
      if ((nv < 0 ? -nv : nv) != p + 1) {
        std::ostringstream os;
        os << "|N| != p+1 at pair (" << a << "," << b << ")";
        rep.violations.push_back(os.str());
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

void Representation::init_layout() {
  const RootSystem& rs = cb_->roots();
  int n = rs.num_roots();
  int l = rs.rank();
  if (kind_ == Kind::NaturalA) {
    if (rs.type() != 'A') throw LieError("natural representation requires type A");
    dim_ = l + 1;
    level_.resize(static_cast<size_t>(dim_));
    for (int i = 0; i <= l; ++i) level_[static_cast<size_t>(i)] = -i;
    return;
  }
  dim_ = n + l;
  // basis ordered by descending weight level: positive-root actions become
  // strictly level-raising (upper triangular in this order)
  struct Key {
    int level;
    int tie;
    int alg;
  };
  std::vector<Key> keys;
  for (int r = 0; r < n; ++r) keys.push_back({rs.root(r).height, r, r});
  for (int i = 0; i < l; ++i) keys.push_back({0, n + i, n + i});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.level != b.level) return a.level > b.level;
    return a.tie < b.tie;
  });
  level_.resize(static_cast<size_t>(dim_));
  weights_.resize(static_cast<size_t>(dim_));
  root_to_basis_.resize(static_cast<size_t>(n));
  cartan_to_basis_.resize(static_cast<size_t>(l));
  for (int b = 0; b < dim_; ++b) {
    const Key& k = keys[static_cast<size_t>(b)];
    level_[static_cast<size_t>(b)] = k.level;
    if (k.alg < n) {
      root_to_basis_[static_cast<size_t>(k.alg)] = b;
      weights_[static_cast<size_t>(b)] = rs.root(k.alg).coeffs;
    } else {
      cartan_to_basis_[static_cast<size_t>(k.alg - n)] = b;
      weights_[static_cast<size_t>(b)].assign(static_cast<size_t>(l), 0);
    }
  }
}

Representation Representation::adjoint(std::shared_ptr<const ChevalleyBasis> cb_in) {
  Representation rep;
  rep.kind_ = Kind::Adjoint;
  rep.cb_ = std::move(cb_in);
  const ChevalleyBasis& cb = *rep.cb_;
  const RootSystem& rs = cb.roots();
  int n = rs.num_roots();
  rep.init_layout();
  std::vector<int> alg_of(static_cast<size_t>(rep.dim_));
  for (int r = 0; r < n; ++r) alg_of[static_cast<size_t>(rep.root_to_basis_[static_cast<size_t>(r)])] = r;
  for (int i = 0; i < rs.rank(); ++i)
    alg_of[static_cast<size_t>(rep.cartan_to_basis_[static_cast<size_t>(i)])] = n + i;
  rep.gen_.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    IntMat m(static_cast<size_t>(rep.dim_),
             std::vector<int64_t>(static_cast<size_t>(rep.dim_), 0));
    for (int src = 0; src < rep.dim_; ++src) {
      for (const auto& [alg_dst, coeff] : cb.bracket_basis(a, alg_of[static_cast<size_t>(src)])) {
        int row = alg_dst < n ? rep.root_to_basis_[static_cast<size_t>(alg_dst)]
                              : rep.cartan_to_basis_[static_cast<size_t>(alg_dst - n)];
        m[static_cast<size_t>(row)][static_cast<size_t>(src)] += coeff;
      }
    }
    rep.gen_[static_cast<size_t>(a)] = std::move(m);
  }
  rep.build_exp();
  return rep;
}

Representation Representation::natural_a(std::shared_ptr<const ChevalleyBasis> cb_in) {
  Representation rep;
  rep.kind_ = Kind::NaturalA;
  rep.cb_ = std::move(cb_in);
  const RootSystem& rs = rep.cb_->roots();
  rep.init_layout();
  rep.gen_.resize(static_cast<size_t>(rs.num_roots()));
  for (int r = 0; r < rs.num_roots(); ++r) {
    auto [i, j] = rep.natural_entry(r);
    IntMat m(static_cast<size_t>(rep.dim_),
             std::vector<int64_t>(static_cast<size_t>(rep.dim_), 0));
    m[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
    rep.gen_[static_cast<size_t>(r)] = std::move(m);
  }
  rep.build_exp();
  return rep;
}

Representation Representation::from_parts(std::shared_ptr<const ChevalleyBasis> cb_in,
                                          Kind kind,
                                          std::vector<std::vector<IntMat>> expmats) {
  Representation rep;
  rep.kind_ = kind;
  rep.cb_ = std::move(cb_in);
  rep.init_layout();
  int n = rep.cb_->roots().num_roots();
  if (static_cast<int>(expmats.size()) != n)
    throw LieError("cached exponential table has the wrong root count");
  for (const auto& series : expmats) {
    if (series.empty() || static_cast<int>(series[0].size()) != rep.dim_)
      throw LieError("cached exponential table has the wrong dimension");
  }
  rep.expmats_ = std::move(expmats);
  // the generator matrix is the linear series term
  rep.gen_.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    if (rep.expmats_[static_cast<size_t>(r)].size() < 2)
      throw LieError("cached exponential series is truncated");
    rep.gen_[static_cast<size_t>(r)] = rep.expmats_[static_cast<size_t>(r)][1];
  }
  rep.derive_reads();
  return rep;
}

std::pair<int, int> Representation::natural_entry(int root_idx) const {
  const RootSystem& rs = cb_->roots();
  const auto& c = rs.root(root_idx).coeffs;
  int first = -1, last = -1;
  for (int i = 0; i < rs.rank(); ++i) {
    if (c[static_cast<size_t>(i)] != 0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (c[static_cast<size_t>(first)] > 0) return {first, last + 1};
  return {last + 1, first};
}

void Representation::build_exp() {
  int n = cb_->roots().num_roots();
  expmats_.resize(static_cast<size_t>(n));
  reads_.resize(static_cast<size_t>(n));
  int d = dim_;
  for (int r = 0; r < n; ++r) {
    const IntMat& g = gen_[static_cast<size_t>(r)];
    std::vector<IntMat> series;
    series.push_back(identity_mat(d));
    IntMat num = identity_mat(d);  // holds k! * E_k
    int64_t denom = 1;
    for (int k = 1;; ++k) {
      if (k > d + 1) throw IntegralityError("exponential series does not terminate");
      IntMat next(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          int64_t v = num[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (v == 0) continue;
          for (int t = 0; t < d; ++t) {
            int64_t w = g[static_cast<size_t>(j)][static_cast<size_t>(t)];
            if (w != 0) next[static_cast<size_t>(i)][static_cast<size_t>(t)] += v * w;
          }
        }
      num = std::move(next);
      denom *= k;
      if (is_zero_mat(num)) break;
      IntMat ek(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          int64_t v = num[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (v % denom != 0)
            throw IntegralityError("non-integral exponential series entry");
          ek[static_cast<size_t>(i)][static_cast<size_t>(j)] = v / denom;
        }
      series.push_back(std::move(ek));
    }
    expmats_[static_cast<size_t>(r)] = std::move(series);
  }
  derive_reads();
}

void Representation::derive_reads() {
  int n = cb_->roots().num_roots();
  int d = dim_;
  reads_.assign(static_cast<size_t>(n), {});
  for (int r = 0; r < n; ++r) {
    const auto& series = expmats_[static_cast<size_t>(r)];
    if (series.size() < 2) continue;
    std::vector<std::tuple<int, int, int64_t>> reads;
    const IntMat& lin = series[1];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (lin[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
          reads.emplace_back(i, j, lin[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    std::sort(reads.begin(), reads.end(), [](const auto& a, const auto& b) {
      int64_t va = std::get<2>(a) < 0 ? -std::get<2>(a) : std::get<2>(a);
      int64_t vb = std::get<2>(b) < 0 ? -std::get<2>(b) : std::get<2>(b);
      return va < vb;
    });
    reads_[static_cast<size_t>(r)] = std::move(reads);
  }
}

Representation::IntegralityReport Representation::integrality_check() const {
  IntegralityReport rep;
  int n = cb_->roots().num_roots();
  int d = dim_;
  for (int r = 0; r < n; ++r) {
    const IntMat& g = gen_[static_cast<size_t>(r)];
    IntMat num = identity_mat(d);
    int64_t denom = 1;
    for (int k = 1; k <= d + 1; ++k) {
      IntMat next(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          int64_t v = num[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (v == 0) continue;
          for (int t = 0; t < d; ++t) {
            int64_t w = g[static_cast<size_t>(j)][static_cast<size_t>(t)];
            if (w != 0) next[static_cast<size_t>(i)][static_cast<size_t>(t)] += v * w;
          }
        }
      num = std::move(next);
      denom *= k;
      if (is_zero_mat(num)) break;
      ++rep.matrices_checked;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (num[static_cast<size_t>(i)][static_cast<size_t>(j)] % denom != 0) {
            std::ostringstream os;
            os << "series matrix k=" << k << " for root " << r << " non-integral at ("
               << i << "," << j << ")";
            rep.violations.push_back(os.str());
          }
    }
  }
  return rep;
}

}  // namespace chevlab
