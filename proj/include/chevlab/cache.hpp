#pragma once

#include <memory>
#include <string>

#include "chevlab/group.hpp"
#include "json.hpp"

namespace chevlab {

struct CacheCorruptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-root-system tables: the Chevalley data, the adjoint representation's
/// exponential series, and the full commutator term table.
struct TableBundle {
  char type = 'A';
  int rank = 1;
  std::shared_ptr<const Representation> adjoint;
  std::vector<std::vector<std::vector<CommutatorTerm>>> commutator;
};

/// $CHEVLAB_CACHE, or "chevlab-cache" under the working directory.
std::string cache_dir();
std::string cache_path(char type, int rank);

TableBundle build_tables(char type, int rank);
nlohmann::json tables_to_json(const TableBundle& b);
/// Throws CacheCorruptError on any mismatch with the requested key.
TableBundle tables_from_json(char type, int rank, const nlohmann::json& j);

void save_tables(const TableBundle& b);
/// Load from the cache directory, recomputing and overwriting on a missing
/// or corrupt file.  Sets *from_cache when the load path succeeded.
TableBundle load_or_build_tables(char type, int rank, bool* from_cache = nullptr);

}  // namespace chevlab
