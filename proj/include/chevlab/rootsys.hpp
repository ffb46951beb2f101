#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevlab {

struct RootSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidTypeError : RootSystemError {
  using RootSystemError::RootSystemError;
};
struct WeylTooLargeError : RootSystemError {
  using RootSystemError::RootSystemError;
};

/// A root, stored as integer coefficients over the simple roots.
struct Root {
  std::vector<int> coeffs;
  int height = 0;      // coefficient sum
  bool is_long = true; // norm equals the maximal root norm
};

/// One Weyl group element: its action as a permutation of the full root
/// list, a reduced word in simple reflections (BFS discovery order, hence of
/// minimal length), and the length.
struct WeylElement {
  std::vector<int32_t> action;  // root index -> root index
  std::vector<int> word;        // simple reflection indices
  int length = 0;
};

/// Reduced irreducible root system of type A..G with height-ordered positive
/// roots (height ascending, ties broken by descending lexicographic order on
/// the coefficient vectors, so simple roots come first in natural order).
///
/// Root indices: 0..m-1 are the positive roots in canonical order, m..2m-1
/// the corresponding negatives (index i+m is minus index i).
///
/// Immutable after build; the Weyl enumeration is cached on first use and
/// instances are safe to share.
class RootSystem {
 public:
  static RootSystem build(char type, int rank);
  /// Parse "A2", "D4", ... style labels.
  static RootSystem from_name(const std::string& label);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

  int num_positive() const { return m_; }
  int num_roots() const { return 2 * m_; }

  const Root& root(int idx) const { return roots_.at(static_cast<size_t>(idx)); }
  int root_index(const std::vector<int>& coeffs) const;
  std::optional<int> try_root_index(const std::vector<int>& coeffs) const;
  bool is_positive(int idx) const { return idx < m_; }
  int negate(int idx) const { return idx < m_ ? idx + m_ : idx - m_; }
  int simple_root_index(int i) const;  // i in 0..rank-1

  /// Cartan matrix entry <alpha_i, alpha_j^vee> for simple roots.
  int cartan(int i, int j) const { return cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  /// (alpha, alpha) in the scaled integral inner product.
  int64_t norm(int idx) const;
  /// <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha) for arbitrary roots.
  int pairing(int beta_idx, int alpha_idx) const;
  /// Root string through beta in the alpha direction: maximal (p, q) with
  /// beta - p*alpha, ..., beta + q*alpha all roots.
  std::pair<int, int> root_string(int alpha_idx, int beta_idx) const;

  /// Image of a root under the simple reflection s_i.
  int reflect_simple(int root_idx, int i) const;
  /// Image under s_alpha for an arbitrary root alpha.
  int reflect_by_root(int root_idx, int alpha_idx) const;

  /// Full Weyl group, enumerated by breadth-first closure over the simple
  /// reflections.  Cached; throws WeylTooLargeError above the cap.
  const std::vector<WeylElement>& weyl() const;
  int64_t weyl_order() const { return static_cast<int64_t>(weyl().size()); }
  /// Index of a Weyl element by its action (exact lookup).
  int weyl_index(const std::vector<int32_t>& action) const;
  int weyl_identity() const { return 0; }
  /// Index of w * s_i.
  int weyl_mul_simple(int w_idx, int i) const;
  /// Index of the reflection s_alpha.
  int weyl_reflection(int alpha_idx) const;
  /// Index of the inverse element.
  int weyl_inverse(int w_idx) const;
  /// Longest element.
  int weyl_longest() const;

  /// {w : w(alpha_i) positive for all i in I}, as Weyl indices; computed from
  /// root images.
  std::vector<int> cell_filter(const std::vector<int>& I) const;
  /// Same set computed via the descent characterization
  /// (w(alpha_i) < 0 iff length(w*s_i) < length(w)).
  std::vector<int> cell_filter_by_descent(const std::vector<int>& I) const;

  /// All Dynkin diagram automorphisms (permutations of simple indices
  /// preserving the Cartan matrix), identity first.
  std::vector<std::vector<int>> diagram_automorphisms() const;
  /// Image of an arbitrary root index under a diagram automorphism.
  int apply_diagram(const std::vector<int>& perm, int root_idx) const;

  int max_height() const;

  static constexpr int64_t kWeylCap = 1000000;

 private:
  RootSystem() = default;
  void close_roots();
  void ensure_weyl() const;

  char type_ = 'A';
  int rank_ = 1;
  std::vector<std::vector<int>> cartan_;
  std::vector<int64_t> dnorm_;  // d_i with (alpha_i, alpha_i) = 2 d_i
  int m_ = 0;
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> index_;

  mutable std::vector<WeylElement> weyl_;
  mutable std::map<std::vector<int32_t>, int> weyl_index_;
};

}  // namespace chevlab
