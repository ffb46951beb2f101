#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace chevlab {

struct ShaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GroupTooLargeError : ShaError {
  using ShaError::ShaError;
};

/// An explicitly enumerated finite group, ingested from permutation
/// generators or a Cayley table.  Elements are indices 0..n-1 with 0 the
/// identity; closure, identity and inverses are verified at construction.
class FiniteGroup {
 public:
  static constexpr int64_t kOrderCap = 100000;
  static constexpr int64_t kAutSearchCap = 2000;

  /// Permutation generators, images 1-based (fixture file convention).
  static FiniteGroup from_perm_gens(const std::vector<std::vector<int>>& gens);
  /// Explicit Cayley table, 0-based, row a column b = a*b.
  static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table);
  static FiniteGroup from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  static FiniteGroup symmetric(int n);
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);   // order 2n
  static FiniteGroup quaternion8();

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
  int identity() const { return 0; }
  int element_order(int a) const { return eorder_[static_cast<size_t>(a)]; }
  const std::vector<int>& generators() const { return gens_; }

  const std::vector<std::vector<int>>& conjugacy_classes() const;
  int class_of(int a) const;
  std::vector<int> center() const;

  /// All automorphisms, as total image maps, found by backtracking over
  /// generator images (pruned by element order and class size) and verified
  /// to close as a group.  Requires order() <= kAutSearchCap.
  const std::vector<std::vector<int>>& automorphisms() const;
  std::vector<std::vector<int>> inner_automorphisms() const;

  struct OutcReport {
    int64_t aut = 0;
    int64_t inn = 0;
    int64_t aut_c = 0;
    int64_t out_c = 0;                       // |Aut_c| / |Inn|
    std::vector<std::vector<int>> outc_representatives;  // nontrivial coset reps
    bool sha_rigid = false;
    std::optional<std::vector<int>> witness;  // a class-preserving outer automorphism
  };
  OutcReport out_c() const;

  /// Sha-rigidity verdict via condition (*): for a finite group every
  /// locally inner endomorphism is injective, hence the verdict is
  /// Out_c = 1.  The certificate is the OutcReport.
  bool sha_rigid() const { return out_c().sha_rigid; }

  /// Budgeted scan over endomorphisms (images constrained by element-order
  /// divisibility): returns the locally inner ones and whether every one of
  /// them is bijective.
  struct EndoScan {
    int64_t endomorphisms = 0;
    int64_t locally_inner = 0;
    bool all_locally_inner_bijective = true;
    bool budget_exhausted = false;
  };
  EndoScan locally_inner_endomorphism_scan(int64_t budget = 2000000) const;

  /// True if the map (as total images) is an automorphism / endomorphism.
  bool is_endomorphism(const std::vector<int>& phi) const;
  bool is_automorphism(const std::vector<int>& phi) const;
  bool is_class_preserving(const std::vector<int>& phi) const;

 private:
  FiniteGroup() = default;
  void finish_construction();
  void pick_generators();

  int n_ = 1;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> eorder_;
  std::vector<int> gens_;
  std::optional<std::vector<std::vector<int>>> perm_gens_;  // original, for to_json
  mutable std::vector<std::vector<int>> classes_;
  mutable std::vector<int> class_of_;
  mutable std::vector<std::vector<int>> autos_;
  mutable bool autos_done_ = false;
};

}  // namespace chevlab
