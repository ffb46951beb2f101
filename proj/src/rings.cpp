#include "chevlab/rings.hpp"

#include <algorithm>
#include <sstream>

namespace chevlab {

namespace {

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Extended gcd inverse mod m (m = p^k, a coprime to p).
int64_t inv_mod(int64_t a, int64_t m) {
  int64_t t = 0, newt = 1, r = m, newr = mod(a, m);
  while (newr != 0) {
    int64_t q = r / newr;
    int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw NotUnitError("element has no inverse");
  return mod(t, m);
}

// Polynomial arithmetic over F_p, coefficient vectors low-degree-first.
std::vector<int64_t> poly_mul_mod_p(const std::vector<int64_t>& a,
                                    const std::vector<int64_t>& b, int64_t p) {
  std::vector<int64_t> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

std::vector<int64_t> poly_rem(std::vector<int64_t> a, const std::vector<int64_t>& m,
                              int64_t p) {
  // m monic
  while (a.size() >= m.size()) {
    int64_t lead = a.back();
    size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (size_t i = 0; i < m.size(); ++i)
        a[shift + i] = mod(a[shift + i] - lead * m[i], p);
    }
    a.pop_back();
  }
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

bool poly_is_zero(const std::vector<int64_t>& a) {
  for (int64_t c : a)
    if (c != 0) return false;
  return true;
}

// Irreducibility of a monic polynomial over F_p by trial division against
// all monic polynomials of degree <= deg/2.  Fine at the scales used here.
bool poly_irreducible(const std::vector<int64_t>& f, int64_t p) {
  int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    int64_t count = ipow(p, d);
    for (int64_t idx = 0; idx < count; ++idx) {
      std::vector<int64_t> g(static_cast<size_t>(d) + 1, 0);
      int64_t v = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<size_t>(i)] = v % p;
        v /= p;
      }
      g[static_cast<size_t>(d)] = 1;  // monic
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

// Deterministic choice: the lexicographically least monic irreducible of
// degree n over F_p (coefficients scanned low-degree-first).
std::vector<int64_t> find_irreducible(int64_t p, int n) {
  if (n == 1) return {0, 1};  // x
  int64_t count = ipow(p, n);
  for (int64_t idx = 0; idx < count; ++idx) {
    std::vector<int64_t> f(static_cast<size_t>(n) + 1, 0);
    int64_t v = idx;
    for (int i = 0; i < n; ++i) {
      f[static_cast<size_t>(i)] = v % p;
      v /= p;
    }
    f[static_cast<size_t>(n)] = 1;
    if (f[0] == 0) continue;  // must not be divisible by x
    if (poly_irreducible(f, p)) return f;
  }
  throw RingError("no irreducible polynomial found");
}

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

int LocalRing::coeff_len() const {
  switch (kind_) {
    case RingKind::Zmod:
      return 1;
    case RingKind::GF:
      return n_;
    case RingKind::TruncPoly:
      return n_ * deg_;
  }
  return 1;
}

LocalRing LocalRing::zmod(int64_t p, int k) {
  if (!is_prime(p) || k < 1) throw RingError("Zmod requires a prime p and k >= 1");
  LocalRing r;
  r.kind_ = RingKind::Zmod;
  r.p_ = p;
  r.k_ = k;
  r.n_ = 1;
  r.order_ = ipow(p, k);
  r.nilpotency_ = k;
  r.pn_ = p;
  r.validate();
  return r;
}

LocalRing LocalRing::gf(int64_t p, int n) {
  if (!is_prime(p) || n < 1) throw RingError("GF requires a prime p and n >= 1");
  LocalRing r;
  r.kind_ = RingKind::GF;
  r.p_ = p;
  r.n_ = n;
  r.order_ = ipow(p, n);
  r.nilpotency_ = 1;
  r.pn_ = r.order_;
  r.irred_ = find_irreducible(p, n);
  r.validate();
  return r;
}

LocalRing LocalRing::trunc_poly(int64_t p, int n, int deg) {
  if (!is_prime(p) || n < 1 || deg < 1)
    throw RingError("TruncPoly requires a prime p, n >= 1, deg >= 1");
  LocalRing r;
  r.kind_ = RingKind::TruncPoly;
  r.p_ = p;
  r.n_ = n;
  r.deg_ = deg;
  r.order_ = ipow(ipow(p, n), deg);
  r.nilpotency_ = deg;
  r.pn_ = ipow(p, n);
  r.irred_ = find_irreducible(p, n);
  if (n * deg > RingElem::kMaxCoeffs) throw TooLargeError("coefficient vector too long");
  r.validate();
  return r;
}

LocalRing LocalRing::from_name(const std::string& name) {
  auto parse_int = [&](const std::string& s) -> int64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw RingError("cannot parse ring name: " + name);
    return std::stoll(s);
  };
  // Z<m> with m = p^k; F<q> with q = p^n; F<p>t<d> for GF(p)[t]/(t^d).
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'F')) {
    auto tpos = name.find('t');
    if (name[0] == 'F' && tpos != std::string::npos) {
      int64_t q = parse_int(name.substr(1, tpos - 1));
      int d = static_cast<int>(parse_int(name.substr(tpos + 1)));
      // factor q = p^n
      for (int64_t p = 2; p <= q; ++p) {
        if (!is_prime(p)) continue;
        int64_t v = q;
        int n = 0;
        while (v % p == 0) {
          v /= p;
          ++n;
        }
        if (v == 1) return trunc_poly(p, n, d);
      }
      throw RingError("cannot parse ring name: " + name);
    }
    int64_t m = parse_int(name.substr(1));
    for (int64_t p = 2; p <= m; ++p) {
      if (!is_prime(p)) continue;
      int64_t v = m;
      int k = 0;
      while (v % p == 0) {
        v /= p;
        ++k;
      }
      if (v == 1) return name[0] == 'Z' ? zmod(p, k) : gf(p, k);
    }
  }
  throw RingError("cannot parse ring name: " + name);
}

std::string LocalRing::label() const {
  std::ostringstream os;
  switch (kind_) {
    case RingKind::Zmod:
      os << "Z/" << order_;
      break;
    case RingKind::GF:
      os << "GF(" << order_ << ")";
      break;
    case RingKind::TruncPoly:
      os << "GF(" << pn_ << ")[t]/(t^" << deg_ << ")";
      break;
  }
  return os.str();
}

std::string LocalRing::name() const {
  std::ostringstream os;
  switch (kind_) {
    case RingKind::Zmod:
      os << "Z" << order_;
      break;
    case RingKind::GF:
      os << "F" << order_;
      break;
    case RingKind::TruncPoly:
      os << "F" << pn_ << "t" << deg_;
      break;
  }
  return os.str();
}

RingElem LocalRing::zero() const { return RingElem(coeff_len()); }

RingElem LocalRing::one() const {
  RingElem e(coeff_len());
  e[0] = 1;
  return e;
}

RingElem LocalRing::from_int(int64_t v) const {
  RingElem e(coeff_len());
  e[0] = mod(v, (kind_ == RingKind::Zmod) ? order_ : p_);
  return e;
}

RingElem LocalRing::add(const RingElem& a, const RingElem& b) const {
  RingElem r(coeff_len());
  int64_t m = (kind_ == RingKind::Zmod) ? order_ : p_;
  for (int i = 0; i < coeff_len(); ++i) r[i] = mod(a[i] + b[i], m);
  return r;
}

RingElem LocalRing::sub(const RingElem& a, const RingElem& b) const {
  return add(a, neg(b));
}

RingElem LocalRing::neg(const RingElem& a) const {
  RingElem r(coeff_len());
  int64_t m = (kind_ == RingKind::Zmod) ? order_ : p_;
  for (int i = 0; i < coeff_len(); ++i) r[i] = mod(-a[i], m);
  return r;
}

std::vector<int64_t> LocalRing::gf_mul(const std::vector<int64_t>& a,
                                       const std::vector<int64_t>& b) const {
  return poly_rem(poly_mul_mod_p(a, b, p_), irred_, p_);
}

RingElem LocalRing::mul(const RingElem& a, const RingElem& b) const {
  RingElem r(coeff_len());
  switch (kind_) {
    case RingKind::Zmod:
      r[0] = mod(a[0] * b[0], order_);
      break;
    case RingKind::GF: {
      std::vector<int64_t> av = a.coeffs(), bv = b.coeffs();
      auto rv = gf_mul(av, bv);
      for (size_t i = 0; i < rv.size(); ++i) r[static_cast<int>(i)] = rv[i];
      break;
    }
    case RingKind::TruncPoly: {
      // (deg_) base-field coefficients, each a GF(p^n) element of n_ coords
      for (int i = 0; i < deg_; ++i) {
        for (int j = 0; j + i < deg_; ++j) {
          std::vector<int64_t> ai(n_), bj(n_);
          for (int u = 0; u < n_; ++u) {
            ai[static_cast<size_t>(u)] = a[i * n_ + u];
            bj[static_cast<size_t>(u)] = b[j * n_ + u];
          }
          auto prod = gf_mul(ai, bj);
          int t = i + j;
          for (size_t u = 0; u < prod.size(); ++u)
            r[t * n_ + static_cast<int>(u)] =
                mod(r[t * n_ + static_cast<int>(u)] + prod[u], p_);
        }
      }
      break;
    }
  }
  return r;
}

bool LocalRing::is_unit(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Zmod:
      return mod(a[0], p_) != 0;
    case RingKind::GF:
      return !is_zero(a);
    case RingKind::TruncPoly: {
      for (int u = 0; u < n_; ++u)
        if (a[u] != 0) return true;  // constant term nonzero in GF(p^n)
      return false;
    }
  }
  return false;
}

RingElem LocalRing::inv(const RingElem& a) const {
  if (!is_unit(a)) throw NotUnitError("inverse of a non-unit in " + label());
  switch (kind_) {
    case RingKind::Zmod: {
      RingElem r(coeff_len());
      r[0] = inv_mod(a[0], order_);
      return r;
    }
    case RingKind::GF: {
      // a^(q-2) in the multiplicative group
      return pow(a, order_ - 2);
    }
    case RingKind::TruncPoly: {
      // a = c(1 + z) with c the (unit) constant coefficient and z nilpotent:
      // a^{-1} = c^{-1} (1 - z + z^2 - ...)
      RingElem c(coeff_len());
      for (int u = 0; u < n_; ++u) c[u] = a[u];
      RingElem cinv(coeff_len());
      {
        // invert c in the base field GF(p^n)
        std::vector<int64_t> cv(n_);
        for (int u = 0; u < n_; ++u) cv[static_cast<size_t>(u)] = a[u];
        // base field inverse via exponentiation
        std::vector<int64_t> acc = {1};
        std::vector<int64_t> base = cv;
        int64_t e = pn_ - 2;
        while (e > 0) {
          if (e & 1) acc = gf_mul(acc, base);
          base = gf_mul(base, base);
          e >>= 1;
        }
        for (size_t u = 0; u < acc.size(); ++u) cinv[static_cast<int>(u)] = acc[u];
      }
      RingElem z = sub(mul(cinv, a), one());  // nilpotent
      RingElem geo = one();
      RingElem term = one();
      for (int i = 1; i < deg_; ++i) {
        term = mul(term, neg(z));
        geo = add(geo, term);
      }
      return mul(cinv, geo);
    }
  }
  throw RingError("unreachable");
}

RingElem LocalRing::pow(const RingElem& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  RingElem acc = one(), base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

LocalRing LocalRing::residue_field() const {
  switch (kind_) {
    case RingKind::Zmod:
      return zmod(p_, 1);
    case RingKind::GF:
      return *this;
    case RingKind::TruncPoly:
      return gf(p_, n_);
  }
  throw RingError("unreachable");
}

RingElem LocalRing::residue(const RingElem& a) const {
  LocalRing k = residue_field();
  RingElem r(k.coeff_len());
  switch (kind_) {
    case RingKind::Zmod:
      r[0] = mod(a[0], p_);
      break;
    case RingKind::GF:
      return a;
    case RingKind::TruncPoly:
      for (int u = 0; u < n_; ++u) r[u] = a[u];
      break;
  }
  return r;
}

RingElem LocalRing::lift(const RingElem& y) const {
  RingElem r(coeff_len());
  switch (kind_) {
    case RingKind::Zmod:
      r[0] = y[0];
      break;
    case RingKind::GF:
      return y;
    case RingKind::TruncPoly:
      for (int u = 0; u < n_; ++u) r[u] = y[u];
      break;
  }
  return r;
}

int64_t LocalRing::enum_size() const {
  if (order_ > kEnumCap) throw TooLargeError("ring too large to enumerate: " + label());
  return order_;
}

RingElem LocalRing::elem_at(int64_t idx) const {
  RingElem r(coeff_len());
  int64_t m = (kind_ == RingKind::Zmod) ? order_ : p_;
  for (int i = 0; i < coeff_len(); ++i) {
    r[i] = idx % m;
    idx /= m;
  }
  return r;
}

int64_t LocalRing::index_of(const RingElem& a) const {
  int64_t m = (kind_ == RingKind::Zmod) ? order_ : p_;
  int64_t idx = 0, mul = 1;
  for (int i = 0; i < coeff_len(); ++i) {
    idx += a[i] * mul;
    mul *= m;
  }
  return idx;
}

std::vector<RingElem> LocalRing::units() const {
  std::vector<RingElem> out;
  for (int64_t i = 0; i < enum_size(); ++i) {
    RingElem e = elem_at(i);
    if (is_unit(e)) out.push_back(e);
  }
  return out;
}

std::vector<RingElem> LocalRing::radical() const {
  std::vector<RingElem> out;
  for (int64_t i = 0; i < enum_size(); ++i) {
    RingElem e = elem_at(i);
    if (!is_unit(e)) out.push_back(e);
  }
  return out;
}

std::vector<RingElem> LocalRing::morphism_generators() const {
  switch (kind_) {
    case RingKind::Zmod:
      return {};
    case RingKind::GF: {
      if (n_ == 1) return {};
      RingElem x(coeff_len());
      x[1] = 1;
      return {x};
    }
    case RingKind::TruncPoly: {
      std::vector<RingElem> gens;
      if (n_ > 1) {
        RingElem x(coeff_len());
        x[1] = 1;  // base-field generator
        gens.push_back(x);
      }
      RingElem t(coeff_len());
      t[n_] = 1;  // the nilpotent variable
      gens.push_back(t);
      return gens;
    }
  }
  return {};
}

RingElem LocalRing::eval_on_generators(const RingElem& a, const LocalRing& target,
                                       const std::vector<RingElem>& images) const {
  // Decompose a over the generators and re-evaluate in the target ring.
  switch (kind_) {
    case RingKind::Zmod:
      return target.from_int(a[0]);
    case RingKind::GF: {
      if (n_ == 1) return target.from_int(a[0]);
      const RingElem& gx = images.at(0);
      RingElem acc = target.zero();
      RingElem xp = target.one();
      for (int i = 0; i < n_; ++i) {
        acc = target.add(acc, target.mul(target.from_int(a[i]), xp));
        xp = target.mul(xp, gx);
      }
      return acc;
    }
    case RingKind::TruncPoly: {
      size_t gi = 0;
      RingElem gx = target.one();
      if (n_ > 1) gx = images.at(gi++);
      const RingElem& gt = images.at(gi);
      RingElem acc = target.zero();
      RingElem tp = target.one();
      for (int d = 0; d < deg_; ++d) {
        RingElem xp = target.one();
        for (int u = 0; u < n_; ++u) {
          RingElem term = target.mul(target.from_int(a[d * n_ + u]),
                                     target.mul(xp, tp));
          acc = target.add(acc, term);
          xp = target.mul(xp, gx);
        }
        tp = target.mul(tp, gt);
      }
      return acc;
    }
  }
  throw RingError("unreachable");
}

bool LocalRing::same_ring(const LocalRing& o) const {
  return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_ && n_ == o.n_ && deg_ == o.deg_;
}

void LocalRing::validate() const {
  if (order_ > kEnumCap) return;  // pure arithmetic still allowed
  // Local dichotomy: every element is a unit or radical, and the radical is
  // an ideal whose nilpotency_degree-th power vanishes.
  std::vector<RingElem> rad;
  for (int64_t i = 0; i < order_; ++i) {
    RingElem e = elem_at(i);
    bool u = is_unit(e);
    if (u) {
      RingElem w = inv(e);
      if (!is_one(mul(e, w))) throw NotLocalError("inverse check failed in " + label());
    } else {
      rad.push_back(e);
    }
  }
  // products of nilpotency_ radical elements vanish (sampled structurally:
  // max-power of each radical element)
  for (const RingElem& e : rad) {
    if (!is_zero(pow(e, nilpotency_)))
      throw NotLocalError("radical nilpotency violated in " + label());
  }
}

// ---------------------------------------------------------------------------

RingMorphism::RingMorphism(LocalRing source, LocalRing target, std::vector<RingElem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.morphism_generators().size())
    throw NotHomomorphismError("generator image count mismatch");
}

RingMorphism RingMorphism::identity(const LocalRing& r) {
  return RingMorphism(r, r, r.morphism_generators());
}

RingMorphism RingMorphism::frobenius(const LocalRing& r) {
  std::vector<RingElem> images;
  for (const RingElem& g : r.morphism_generators()) images.push_back(r.pow(g, r.char_p()));
  return RingMorphism(r, r, images);
}

RingElem RingMorphism::apply(const RingElem& a) const {
  return source_.eval_on_generators(a, target_, images_);
}

void RingMorphism::validate() const {
  int64_t n = source_.enum_size();
  if (!target_.is_one(apply(source_.one())))
    throw NotHomomorphismError("morphism does not fix 1");
  if (!target_.is_zero(apply(source_.zero())))
    throw NotHomomorphismError("morphism does not fix 0");
  for (int64_t i = 0; i < n; ++i) {
    RingElem a = source_.elem_at(i);
    if (!source_.is_unit(a) && target_.is_unit(apply(a)))
      throw NotHomomorphismError("radical not mapped into radical");
    for (int64_t j = 0; j < n; ++j) {
      RingElem b = source_.elem_at(j);
      if (apply(source_.add(a, b)) != target_.add(apply(a), apply(b))) {
        std::ostringstream os;
        os << "additivity fails at indices (" << i << "," << j << ")";
        throw NotHomomorphismError(os.str());
      }
      if (apply(source_.mul(a, b)) != target_.mul(apply(a), apply(b))) {
        std::ostringstream os;
        os << "multiplicativity fails at indices (" << i << "," << j << ")";
        throw NotHomomorphismError(os.str());
      }
    }
  }
}

bool RingMorphism::is_valid() const {
  try {
    validate();
    return true;
  } catch (const NotHomomorphismError&) {
    return false;
  }
}

bool RingMorphism::is_automorphism() const {
  if (!source_.same_ring(target_)) return false;
  if (!is_valid()) return false;
  std::vector<bool> hit(static_cast<size_t>(source_.enum_size()), false);
  for (int64_t i = 0; i < source_.enum_size(); ++i) {
    int64_t j = target_.index_of(apply(source_.elem_at(i)));
    if (hit[static_cast<size_t>(j)]) return false;
    hit[static_cast<size_t>(j)] = true;
  }
  return true;
}

RingMorphism RingMorphism::induced_residue_morphism() const {
  LocalRing ks = source_.residue_field();
  LocalRing kt = target_.residue_field();
  std::vector<RingElem> images;
  for (const RingElem& g : ks.morphism_generators()) {
    // lift to source, apply, take residue in target
    images.push_back(target_.residue(apply(source_.lift(g))));
  }
  return RingMorphism(ks, kt, images);
}

int RingMorphism::order() const {
  if (!source_.same_ring(target_)) throw RingError("order only for endomorphisms");
  auto gens = source_.morphism_generators();
  if (gens.empty()) return 1;
  std::vector<RingElem> cur = gens;
  for (int m = 1; m <= 64; ++m) {
    for (auto& c : cur) c = apply(c);
    if (cur == gens) return m;
  }
  throw RingError("morphism order exceeds 64");
}

}  // namespace chevlab
