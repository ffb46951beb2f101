#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevlab {

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotLocalError : RingError {
  using RingError::RingError;
};
struct TooLargeError : RingError {
  using RingError::RingError;
};
struct NotUnitError : RingError {
  using RingError::RingError;
};
struct NotHomomorphismError : RingError {
  using RingError::RingError;
};

/// A ring element in canonical form: a short vector of nonnegative integer
/// coefficients.  The meaning of the coefficients is fixed by the owning
/// LocalRing; equality of canonical forms is equality of elements.
class RingElem {
 public:
  static constexpr int kMaxCoeffs = 8;

  RingElem() = default;
  explicit RingElem(int n) : n_(static_cast<uint8_t>(n)) {}

  int size() const { return n_; }
  int64_t operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  int64_t& operator[](int i) { return c_[static_cast<size_t>(i)]; }

  bool operator==(const RingElem& o) const {
    if (n_ != o.n_) return false;
    for (int i = 0; i < n_; ++i)
      if (c_[static_cast<size_t>(i)] != o.c_[static_cast<size_t>(i)]) return false;
    return true;
  }
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  std::vector<int64_t> coeffs() const {
    return std::vector<int64_t>(c_.begin(), c_.begin() + n_);
  }

 private:
  std::array<int64_t, kMaxCoeffs> c_{};
  uint8_t n_ = 0;
};

enum class RingKind { Zmod, GF, TruncPoly };

/// A finite commutative local ring.  Three families are realized:
///   Zmod       Z/p^k
///   GF         the field GF(p^n), as F_p[x] modulo a fixed irreducible
///   TruncPoly  GF(p^n)[t]/(t^deg), truncated polynomials over a field
///
/// Every element is either a unit or lies in the radical; the residue map
/// onto the residue field and a canonical lift are exposed.  Instances are
/// immutable and cheap to copy.
class LocalRing {
 public:
  static LocalRing zmod(int64_t p, int k);
  static LocalRing gf(int64_t p, int n);
  static LocalRing trunc_poly(int64_t p, int n, int deg);

  /// Parse "Z9", "Z25", "F2", "F4", "F8", "F3t2" style short names.
  static LocalRing from_name(const std::string& name);

  RingKind kind() const { return kind_; }
  int64_t char_p() const { return p_; }
  int64_t order() const { return order_; }
  bool is_field() const { return nilpotency_ == 1; }
  int nilpotency_degree() const { return nilpotency_; }
  std::string label() const;
  /// Short CLI-style name, e.g. "Z9", "F4", "F3t2".
  std::string name() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(int64_t v) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  /// Multiplicative inverse; throws NotUnitError on non-units.
  RingElem inv(const RingElem& a) const;
  RingElem pow(const RingElem& a, int64_t e) const;

  bool is_zero(const RingElem& a) const { return a == zero(); }
  bool is_one(const RingElem& a) const { return a == one(); }
  bool is_unit(const RingElem& a) const;
  bool in_radical(const RingElem& a) const { return !is_unit(a); }

  /// The residue field R/Rad R as a LocalRing (GF or Zmod with k=1).
  LocalRing residue_field() const;
  /// Entry of the residue field corresponding to a (a surjective hom).
  RingElem residue(const RingElem& a) const;
  /// Canonical lift: residue(lift(y)) == y.
  RingElem lift(const RingElem& y) const;

  /// Dense enumeration, index <-> element.  Requires order() <= kEnumCap.
  int64_t enum_size() const;
  RingElem elem_at(int64_t idx) const;
  int64_t index_of(const RingElem& a) const;
  uint64_t encode(const RingElem& a) const { return static_cast<uint64_t>(index_of(a)); }

  std::vector<RingElem> units() const;
  std::vector<RingElem> radical() const;

  /// n*1 is a unit (the small-integer invertibility probe; n in {2,3}).
  bool small_int_invertible(int64_t n) const { return is_unit(from_int(n)); }

  /// Multiplicative generators of the ring as used by morphism descriptors:
  /// GF: the class of x; TruncPoly: class of x and class of t; Zmod: none.
  std::vector<RingElem> morphism_generators() const;

  /// Express a as a polynomial combination of morphism generators evaluated
  /// at the given images (in the target ring).  Zmod elements map by
  /// repeated addition of 1.
  RingElem eval_on_generators(const RingElem& a, const LocalRing& target,
                              const std::vector<RingElem>& images) const;

  bool same_ring(const LocalRing& o) const;

  static constexpr int64_t kEnumCap = 10000;

  /// Construction-time validation: scans all elements (when enumerable) and
  /// checks the disjoint unit/radical split and radical nilpotency.
  void validate() const;

 private:
  LocalRing() = default;

  int coeff_len() const;
  // GF(p^n) helpers: multiply coefficient vectors mod the irreducible poly.
  std::vector<int64_t> gf_mul(const std::vector<int64_t>& a,
                              const std::vector<int64_t>& b) const;

  RingKind kind_ = RingKind::Zmod;
  int64_t p_ = 2;     // characteristic prime
  int k_ = 1;         // Zmod exponent
  int n_ = 1;         // GF extension degree
  int deg_ = 1;       // TruncPoly truncation degree (t^deg = 0)
  int64_t order_ = 2; // |R|
  int nilpotency_ = 1;
  int64_t pn_ = 2;    // p^n, order of the base/residue field
  std::vector<int64_t> irred_; // monic irreducible, length n_+1, for GF arithmetic
};

/// A validated homomorphism between finite local rings, given by images of
/// the morphism generators.  For automorphism use source == target.
class RingMorphism {
 public:
  RingMorphism(LocalRing source, LocalRing target, std::vector<RingElem> images);

  /// Identity automorphism.
  static RingMorphism identity(const LocalRing& r);
  /// Frobenius x -> x^p on GF(p^n).
  static RingMorphism frobenius(const LocalRing& r);

  const LocalRing& source() const { return source_; }
  const LocalRing& target() const { return target_; }
  const std::vector<RingElem>& generator_images() const { return images_; }

  RingElem apply(const RingElem& a) const;

  /// Exhaustive check that +, *, 0, 1 are respected and the radical maps
  /// into the radical.  Throws NotHomomorphismError with a witness pair on
  /// failure.  Requires the source to be enumerable.
  void validate() const;
  bool is_valid() const;

  /// True iff the map is a bijection (checked exhaustively).
  bool is_automorphism() const;

  /// Induced morphism on residue fields (well-defined because the radical
  /// maps into the radical).
  RingMorphism induced_residue_morphism() const;

  /// Multiplicative order as a map (identity after `order` compositions).
  int order() const;

 private:
  LocalRing source_;
  LocalRing target_;
  std::vector<RingElem> images_;
};

}  // namespace chevlab
