#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "chevlab/rootsys.hpp"

namespace chevlab {

struct LieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SignInconsistencyError : LieError {
  using LieError::LieError;
};
struct IntegralityError : LieError {
  using LieError::LieError;
};

using IntMat = std::vector<std::vector<int64_t>>;

/// Chevalley basis {e_alpha} u {h_i} with signed integer structure constants
/// N_{alpha,beta}.  The signs are fixed by assigning +(p+1) to every
/// extraspecial pair (the height-minimal decomposition of each non-simple
/// positive root) and propagating through the invariant-form rotation rule
/// and the Jacobi identity; every consistent choice satisfies the commutator
/// formula, and jacobi_check certifies this one.
class ChevalleyBasis {
 public:
  static ChevalleyBasis build(std::shared_ptr<const RootSystem> rs);
  /// Reconstruct from persisted tables (cache load path); no recomputation.
  static ChevalleyBasis from_parts(std::shared_ptr<const RootSystem> rs,
                                   std::vector<std::vector<int64_t>> table,
                                   std::vector<std::vector<int64_t>> coroots);

  const RootSystem& roots() const { return *rs_; }
  std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }

  /// N_{alpha,beta}; zero when alpha+beta is not a root.  alpha+beta == 0 is
  /// rejected (that bracket is the coroot, not a root vector).
  int64_t structure_constant(int a_idx, int b_idx) const;

  /// Coefficients of the coroot h_alpha over the simple coroots h_1..h_l.
  const std::vector<int64_t>& coroot_coeffs(int root_idx) const;

  /// Extraspecial pair (a, b) of a non-simple positive root.
  std::pair<int, int> extraspecial_pair(int gamma_idx) const;

  struct JacobiReport {
    int64_t triples_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
  };
  /// Exhaustive Jacobi identity scan over all basis triples, and the
  /// |N| = p+1 magnitude law over all pairs.  Reports violations instead of
  /// throwing.
  JacobiReport jacobi_check() const;

  /// Negative-control hook: flip the sign of one structure constant (and its
  /// antisymmetric mirror) so tests can watch jacobi_check fail.
  void flip_constant_for_tests(int a_idx, int b_idx);

  /// Sign convention version, part of the cache key.
  static const char* convention() { return "esp1"; }

  // Sparse Lie algebra vectors: basis dimension is 2m + rank, entry b is the
  // coefficient of basis element b (roots first, then h_1..h_l).
  int algebra_dim() const { return rs_->num_roots() + rs_->rank(); }
  int e_basis(int root_idx) const { return root_idx; }
  int h_basis(int i) const { return rs_->num_roots() + i; }
  /// Bracket of two basis elements as a sparse vector (basis index -> coeff).
  std::map<int, int64_t> bracket_basis(int x, int y) const;

 private:
  ChevalleyBasis() = default;
  std::shared_ptr<const RootSystem> rs_;
  std::vector<std::vector<int64_t>> table_;         // [a][b] -> N, 0 if not a root sum
  std::vector<std::vector<int64_t>> coroots_;       // per root index
};

/// A representation with a fixed weight-graded ordered basis over the
/// integers: the adjoint representation (any type) or the natural
/// (rank+1)-dimensional representation of A_l.  For each root the matrices
/// of the exponential series exp(t e_alpha) = sum_k t^k E_k are expanded
/// over the rationals and certified integral.
class Representation {
 public:
  enum class Kind { Adjoint, NaturalA };

  static Representation adjoint(std::shared_ptr<const ChevalleyBasis> cb);
  static Representation natural_a(std::shared_ptr<const ChevalleyBasis> cb);
  /// Reconstruct from persisted exponential tables (cache load path); the
  /// basis ordering is re-derived deterministically, the series matrices are
  /// taken as given.
  static Representation from_parts(std::shared_ptr<const ChevalleyBasis> cb, Kind kind,
                                   std::vector<std::vector<IntMat>> expmats);

  Kind kind() const { return kind_; }
  bool is_adjoint() const { return kind_ == Kind::Adjoint; }
  const RootSystem& roots() const { return cb_->roots(); }
  const ChevalleyBasis& basis() const { return *cb_; }
  std::shared_ptr<const ChevalleyBasis> basis_ptr() const { return cb_; }
  int dim() const { return dim_; }
  std::string tag() const { return kind_ == Kind::Adjoint ? "adjoint" : "natural"; }

  /// Weight level of each basis vector; multiplication by x_alpha(t) with
  /// alpha positive adds components of strictly higher level only.
  int level(int b) const { return level_[static_cast<size_t>(b)]; }

  /// Exponential series matrices for a root: E_0 = I, E_1, ..., E_K.
  const std::vector<IntMat>& exp_matrices(int root_idx) const {
    return expmats_[static_cast<size_t>(root_idx)];
  }
  /// Nilpotency degree: smallest k with (ad e_alpha)^k = 0 (adjoint) or the
  /// series cutoff for the natural representation.
  int nilpotency(int root_idx) const {
    return static_cast<int>(expmats_[static_cast<size_t>(root_idx)].size());
  }

  /// Matrix positions (row, col, coeff) reading off the parameter of
  /// x_alpha(s) linearly, sorted by |coeff|; used for word extraction.
  const std::vector<std::tuple<int, int, int64_t>>& read_entries(int root_idx) const {
    return reads_[static_cast<size_t>(root_idx)];
  }

  /// Adjoint only: weight of basis vector b in root-lattice coordinates
  /// (zero vector on the Cartan block).
  const std::vector<int>& basis_weight(int b) const {
    return weights_[static_cast<size_t>(b)];
  }
  /// Adjoint only: basis index of e_root / h_i.
  int basis_of_root(int root_idx) const { return root_to_basis_[static_cast<size_t>(root_idx)]; }
  int basis_of_cartan(int i) const { return cartan_to_basis_[static_cast<size_t>(i)]; }

  /// Natural A_l only: (i, j) with e_root = E_ij.
  std::pair<int, int> natural_entry(int root_idx) const;

  struct IntegralityReport {
    int64_t matrices_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
  };
  /// Re-runs the rational series expansion and reports any non-integral
  /// entries (build already asserts this; the report form is for tooling).
  IntegralityReport integrality_check() const;

 private:
  Representation() = default;
  void init_layout();
  void derive_reads();
  void build_exp();

  Kind kind_ = Kind::Adjoint;
  std::shared_ptr<const ChevalleyBasis> cb_;
  int dim_ = 0;
  std::vector<int> level_;
  std::vector<std::vector<int>> weights_;
  std::vector<int> root_to_basis_;
  std::vector<int> cartan_to_basis_;
  std::vector<std::vector<IntMat>> expmats_;
  std::vector<std::vector<std::tuple<int, int, int64_t>>> reads_;
  // raw generator matrix per root (ad e_alpha, or E_ij for natural)
  std::vector<IntMat> gen_;
};

}  // namespace chevlab
