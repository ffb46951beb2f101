#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chevlab/lie.hpp"
#include "chevlab/rings.hpp"
#include "chevlab/rootsys.hpp"

namespace chevlab {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContextMismatchError : GroupError {
  using GroupError::GroupError;
};
struct WordRequiredError : GroupError {
  using GroupError::GroupError;
};
struct OppositeRootsError : GroupError {
  using GroupError::GroupError;
};

/// One letter of a group word.
struct Letter {
  enum class Kind { X, W, H, TorusChar };
  Kind kind = Kind::X;
  int root = -1;               // X / W / H
  RingElem param;              // X / W / H (unit for W and H)
  std::vector<RingElem> chi;   // TorusChar: values on the simple roots

  static Letter x(int root, RingElem t) { return {Kind::X, root, std::move(t), {}}; }
  static Letter w(int root, RingElem t) { return {Kind::W, root, std::move(t), {}}; }
  static Letter h(int root, RingElem t) { return {Kind::H, root, std::move(t), {}}; }
  static Letter torus_char(std::vector<RingElem> chi) {
    return {Kind::TorusChar, -1, RingElem(), std::move(chi)};
  }
};

using GroupWord = std::vector<Letter>;

/// Square matrix over a LocalRing, row-major.
struct Mat {
  int dim = 0;
  std::vector<RingElem> a;
  RingElem& at(int r, int c) { return a[static_cast<size_t>(r * dim + c)]; }
  const RingElem& at(int r, int c) const { return a[static_cast<size_t>(r * dim + c)]; }
  bool operator==(const Mat& o) const { return dim == o.dim && a == o.a; }
};

/// One term x_{i a + j b}(C t^i u^j) of a Chevalley commutator word.
struct CommutatorTerm {
  int i = 1;
  int j = 1;
  int root = -1;
  int64_t coeff = 0;
};

class GroupContext;
using ContextPtr = std::shared_ptr<const GroupContext>;

/// A group element: an exact matrix in the fixed representation, optionally
/// carrying the word that produced it.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(ContextPtr ctx, Mat m, std::optional<GroupWord> w = std::nullopt)
      : ctx_(std::move(ctx)), mat_(std::move(m)), word_(std::move(w)) {}

  const ContextPtr& ctx() const { return ctx_; }
  const Mat& mat() const { return mat_; }
  bool has_word() const { return word_.has_value(); }
  const GroupWord& word() const;
  GroupElement without_word() const { return GroupElement(ctx_, mat_); }

  bool operator==(const GroupElement& o) const { return mat_ == o.mat_; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

 private:
  ContextPtr ctx_;
  Mat mat_;
  std::optional<GroupWord> word_;
};

/// Shared immutable context: root system + Chevalley data + representation +
/// coefficient ring.  Creation enforces the invertibility table (1/2 for
/// A_2, B_l, C_l, F_4; 1/3 for G_2).  All element operations are pure; the
/// only mutable state is the lazily derived commutator table cache.
class GroupContext : public std::enable_shared_from_this<GroupContext> {
 public:
  /// enforce_invertibility applies the small-integer invertibility table; pass
  /// false for plain group arithmetic in contexts outside the rigidity pipeline
  /// (e.g. SL_3 over F_2 for the exhaustive decomposition and conjugacy
  /// checks).
  static ContextPtr make(const std::string& phi, const LocalRing& ring,
                         Representation::Kind kind = Representation::Kind::Adjoint,
                         bool enforce_invertibility = true);
  static ContextPtr make(std::shared_ptr<const Representation> rep, const LocalRing& ring,
                         bool enforce_invertibility = true);

  const RootSystem& roots() const { return rep_->roots(); }
  const ChevalleyBasis& chevalley() const { return rep_->basis(); }
  const Representation& rep() const { return *rep_; }
  std::shared_ptr<const Representation> rep_ptr() const { return rep_; }
  const LocalRing& ring() const { return ring_; }
  int dim() const { return rep_->dim(); }
  std::string label() const;

  // --- matrix layer ---
  Mat identity() const;
  Mat mul(const Mat& a, const Mat& b) const;
  /// Gauss-Jordan inverse with unit pivots; throws GroupError if singular.
  Mat inverse(const Mat& m) const;
  bool is_identity(const Mat& m) const;
  /// Entry-wise canonical encoding, usable as a hash key.
  std::string encode(const Mat& m) const;
  /// Characteristic polynomial coefficients (exactly computable over the
  /// ring via Faddeev-LeVerrier only when the needed integers are units; we
  /// use expansion by minors instead, exact for any commutative ring).
  std::vector<RingElem> char_poly(const Mat& m) const;

  /// Evaluate x_root(t) = sum_k E_k t^k.
  Mat eval_x(int root, const RingElem& t) const;
  Mat eval_letter(const Letter& l) const;
  Mat eval_word(const GroupWord& w) const;
  /// Letter-wise inverse word (X(a,t) -> X(a,-t), W(a,t) -> W(a,-t),
  /// H(a,t) -> H(a,t^{-1}), chi -> chi^{-1}).
  GroupWord invert_word(const GroupWord& w) const;

  // --- element layer ---
  GroupElement one() const;
  GroupElement x_gen(int root, const RingElem& t) const;
  GroupElement w_gen(int root, const RingElem& t) const;
  GroupElement h_gen(int root, const RingElem& t) const;
  /// Adjoint model only: the diagonal torus element acting on e_beta by
  /// prod chi_i^{m_i} for beta = sum m_i alpha_i.
  GroupElement torus_element(const std::vector<RingElem>& chi) const;
  GroupElement from_word(const GroupWord& w) const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  GroupElement conjugate(const GroupElement& g, const GroupElement& x) const;  // x g x^-1
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;

  /// Entry-wise residue map into the residue-field context (a group
  /// homomorphism); word parameters are mapped through the residue.
  GroupElement reduce_mod_radical(const GroupElement& g) const;
  ContextPtr residue_context() const;

  // --- shape membership (graded-basis structural tests) ---
  bool in_U(const Mat& m) const;
  bool in_V(const Mat& m) const;
  bool in_torus(const Mat& m) const;
  bool in_U(const GroupElement& g) const { return in_U(g.mat()); }
  bool in_V(const GroupElement& g) const { return in_V(g.mat()); }
  bool in_torus(const GroupElement& g) const { return in_torus(g.mat()); }

  // --- Chevalley commutator formula ---
  /// Term list for the ordered pair (a, b), a + b != 0: the frozen word
  ///   [x_a(t), x_b(u)] = prod x_{ia+jb}(C_ij t^i u^j)
  /// in ascending (i+j, i) order.  Derived once by integer peeling against
  /// the representation and cached.
  const std::vector<CommutatorTerm>& commutator_terms(int a, int b) const;
  /// The word above evaluated at given parameters.
  GroupWord commutator_formula(int a, int b, const RingElem& t, const RingElem& u) const;

  /// Install a persisted full commutator table (cache load path).
  void preload_commutator_tables(
      std::vector<std::vector<std::vector<CommutatorTerm>>> tables) const;
  /// Derive the full table for every valid ordered pair.
  const std::vector<std::vector<std::vector<CommutatorTerm>>>& full_commutator_table() const;

  /// Conjugation of a root letter by a Weyl representative built from
  /// simple w-letters: n x_g(c) n^{-1} = x_{w(g)}(eps c).  The sign is
  /// computed over the integers and cached.
  int conj_sign(const std::vector<int>& simple_word, int root) const;

  /// Integer matrix of the canonical representative of a Weyl element
  /// (product of w_{alpha_i}(1) along its BFS reduced word).
  Mat weyl_rep_matrix(int w_idx) const;

 private:
  explicit GroupContext(std::shared_ptr<const Representation> rep, LocalRing ring);
  void check_invertibility() const;
  Mat from_int_mat(const IntMat& im) const;

  std::shared_ptr<const Representation> rep_;
  LocalRing ring_;
  mutable std::vector<std::vector<std::vector<CommutatorTerm>>> comm_cache_;
  mutable std::vector<std::vector<char>> comm_have_;
};

/// Shared representation registry keyed by (type, rank, kind); builds once.
std::shared_ptr<const Representation> get_representation(char type, int rank,
                                                         Representation::Kind kind);

/// Derive the commutator term list over the integers by peeling the product
/// [x_a(1), x_b(1)] against the representation's weight grading; exposed for
/// cross-representation consistency tests and table caching.
std::vector<CommutatorTerm> derive_commutator_terms(const Representation& rep, int a, int b);

/// Deterministic random words for property tests.
GroupWord random_x_word(const GroupContext& ctx, int len, std::mt19937_64& rng,
                        bool positive_only = false);

}  // namespace chevlab
