#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/decomp.hpp"
#include "chevlab/group.hpp"
#include "json.hpp"

namespace chevlab {

struct AutosError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One factor of a standard automorphism.
struct AutoFactor {
  enum class Kind { Inner, Diagonal, Graph, Ring, Central };
  Kind kind = Kind::Inner;
  GroupWord inner_word;                     // Inner: conjugation by this element
  std::vector<RingElem> diag;               // Diagonal: d_1..d_l
  std::vector<int> graph_perm;              // Graph: permutation of simple indices
  std::optional<RingMorphism> ring_map;     // Ring: validated automorphism
  // Central: explicit assignment on torus-character coset representatives;
  // identity on the elementary subgroup.
  std::vector<std::pair<std::vector<RingElem>, GroupWord>> central_assignments;

  static AutoFactor inner(GroupWord w);
  static AutoFactor diagonal(std::vector<RingElem> d);
  static AutoFactor graph(std::vector<int> perm);
  static AutoFactor ring(RingMorphism m);
  static AutoFactor central(std::vector<std::pair<std::vector<RingElem>, GroupWord>> a);
};

/// A composition of basic standard automorphisms, stored in application
/// order (factors[0] acts first).
class StandardAutomorphism {
 public:
  StandardAutomorphism(ContextPtr ctx, std::vector<AutoFactor> factors);

  const ContextPtr& ctx() const { return ctx_; }
  const std::vector<AutoFactor>& factors() const { return factors_; }

  /// Image of a word under the full composition.
  GroupWord apply_word(const GroupWord& w) const;
  /// Image of one factor only.
  GroupWord apply_factor_word(const AutoFactor& f, const GroupWord& w) const;
  /// Image of an element; requires a word witness unless every factor is
  /// inner (throws WordRequiredError otherwise).
  GroupElement apply(const GroupElement& g) const;

  /// Validates factor data: ring factors must be automorphisms of the
  /// context ring, graph factors diagram automorphisms, central values
  /// central.  Throws AutosError on violation.
  void validate() const;

  /// Signs of the graph-automorphism action on non-simple roots,
  /// e_beta -> eps e_{delta(beta)}; computed from the structure constants.
  static std::vector<int> graph_signs(const ChevalleyBasis& cb, const std::vector<int>& perm);

 private:
  ContextPtr ctx_;
  std::vector<AutoFactor> factors_;
};

/// Multiset of diagonal entries of h_alpha(t) in the weight basis.
std::vector<RingElem> torus_profile(const GroupContext& ctx, int alpha, const RingElem& t);
/// The exponent multiset {<beta, alpha^vee> : beta in Phi} plus rank zeros
/// (adjoint model), as sorted integers.
std::vector<int> torus_profile_exponents(const GroupContext& ctx, int alpha);

/// True iff the multiset {1, t^{+-1}, t^{+-2}} (extended by t^{+-3} when
/// g2_short is set) equals its image under rho.
bool ring_permutation_check(const GroupContext& ctx, const RingMorphism& rho,
                            const RingElem& t, bool g2_short);

/// The adjoint torus element realizing the diagonal automorphism with
/// d_i on the simple roots.
GroupElement diagonal_to_inner(const GroupContext& ctx, const std::vector<RingElem>& d);

/// The witness word of the graph-automorphism analysis: x_{alpha_j}(1) over
/// all simple roots except the largest index moved by delta.
GroupWord graph_witness(const GroupContext& ctx, const std::vector<int>& delta);

/// Exhaustive enumeration of the group generated by the simple-root
/// elements x_{+-alpha_i}(t) (all ring parameters), with a BFS tree for
/// witness reconstruction.  Throws TooLargeError above the cap.
struct GroupEnumeration {
  std::vector<Mat> elements;
  std::map<std::string, int> index;
  std::vector<int> parent;
  std::vector<int> gen_used;
  std::vector<Mat> gens;
  std::vector<GroupWord> gen_words;
  int64_t order() const { return static_cast<int64_t>(elements.size()); }
};
GroupEnumeration enumerate_elementary_group(const GroupContext& ctx, int64_t cap);

struct ConjugacyReport {
  enum class Status { Conjugate, NotConjugate, Undecided };
  Status status = Status::Undecided;
  std::optional<GroupWord> witness;   // x with x g x^{-1} = g'
  bool exhaustive = false;
  int64_t group_order = 0;
  int64_t class_size = 0;
  int64_t visited = 0;
};

/// Conjugacy decision: exhaustive over the enumerated group when it fits
/// the budget (not-conjugate verdicts only then), otherwise a seeded random
/// search that can return Conjugate or Undecided.
ConjugacyReport conjugacy_oracle(const GroupContext& ctx, const GroupElement& g,
                                 const GroupElement& g2, int64_t budget = 100000,
                                 uint64_t seed = 0, int samples = 10000);

struct LocallyInnerReport {
  bool exhaustive = false;
  bool locally_inner = false;       // meaningful in exhaustive mode
  std::optional<GroupWord> counterexample;
  int64_t checked = 0;
  int64_t undecided = 0;            // sampled mode: conjugacy searches that timed out
};

/// Exhaustive mode enumerates the elementary group and compares classes;
/// sampled mode draws seeded random words.
LocallyInnerReport locally_inner_test(const StandardAutomorphism& a, bool exhaustive,
                                      int64_t budget = 100000, int samples = 200,
                                      uint64_t seed = 0);

// --- machine replays of the proof mechanisms ---------------------------------

nlohmann::json replay_lemma_3_2(const GroupContext& ctx, const RingMorphism& rho);
nlohmann::json replay_lemma_3_3(const GroupContext& ctx, const std::vector<int>& delta,
                                int64_t conj_budget = 100000);
nlohmann::json replay_lemma_3_4(const GroupContext& ctx, const std::vector<RingElem>& d);
nlohmann::json replay_lemma_3_5(const GroupContext& ctx, const RingMorphism& rho,
                                int64_t conj_budget = 100000);
nlohmann::json replay_lemma_3_6(const GroupContext& ctx,
                                const std::vector<RingElem>& z_char,
                                int64_t conj_budget = 100000);

}  // namespace chevlab
