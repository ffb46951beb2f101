#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/group.hpp"

namespace chevlab {

struct DecompError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAFieldError : DecompError {
  using DecompError::DecompError;
};
struct DecompositionFailedError : DecompError {
  using DecompError::DecompError;
};

/// Bruhat form g = t * u * wdot * u2 over a field: t a torus word (h-letters
/// for elementary inputs), u a height-ordered positive word, wdot the
/// canonical representative of the Weyl element, and u2 supported on the
/// roots sent negative by w.
struct BruhatForm {
  GroupWord t_word;
  GroupWord u_word;
  int weyl = 0;
  GroupWord u2_word;
  bool t_in_H = true;
  bool verified = false;
};

/// Gauss form g = t * u1 * v * u2 over a local ring; not unique, but the
/// product contract and the membership shapes are guaranteed.
struct GaussForm {
  GroupWord t_word;
  GroupWord u1_word;
  GroupWord v_word;
  GroupWord u2_word;
  bool t_in_H = true;
  bool verified = false;
};

/// Collect a word of positive-root letters into the canonical height order
/// using the frozen commutator table; evaluation-invariant.
GroupWord unipotent_normal_form(const GroupContext& ctx, const GroupWord& word);

/// Bruhat decomposition of a word-presented element over a field.  The
/// canonical parts are unique; decomposing two words for the same element
/// yields identical parts.
BruhatForm bruhat_decompose(const GroupContext& ctx, const GroupWord& g);

/// Canonical fingerprint of a Bruhat form (for uniqueness comparisons).
std::string bruhat_fingerprint(const GroupContext& ctx, const BruhatForm& f);

/// Gauss decomposition of a word-presented element over a local ring.  The
/// element is translated into the opposite big cell by a deterministic trial
/// sequence of right unipotent factors, then split by exact graded LU.
GaussForm gauss_decompose(const GroupContext& ctx, const GroupWord& g, uint64_t seed = 0);

/// Extract the unique height-ordered word of a U-group-element from its
/// matrix (throws DecompositionFailedError when the matrix is not a product
/// of positive root elements).  Dually for V.
GroupWord u_word_from_matrix(const GroupContext& ctx, const Mat& m);
GroupWord v_word_from_matrix(const GroupContext& ctx, const Mat& m);

/// Express a torus matrix as a product of h-letters on the simple roots, by
/// bounded search over unit tuples; nullopt when no such word exists (the
/// matrix then lies in T but not in H).
std::optional<GroupWord> h_word_from_torus(const GroupContext& ctx, const Mat& t);

/// chi(root) with the torus given as a matrix: T x_root(1) T^{-1} =
/// x_root(chi); exact for any torus matrix in the representation.
RingElem torus_conj_param(const GroupContext& ctx, const Mat& t, int root);

/// chi(root) for a torus given as a word of h / torus-character letters.
RingElem torus_action_on_root(const GroupContext& ctx, const GroupWord& t_word, int root);

}  // namespace chevlab
