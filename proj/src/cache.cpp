#include "chevlab/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace chevlab {

using nlohmann::json;

namespace {

constexpr const char* kCacheVersion = "v1";

json sparse_mat(const IntMat& m) {
  json t = json::array();
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != 0) t.push_back({i, j, m[i][j]});
  return t;
}

IntMat unsparse_mat(int d, const json& t) {
  IntMat m(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
  for (const auto& e : t) {
    size_t i = e.at(0).get<size_t>(), j = e.at(1).get<size_t>();
    if (i >= static_cast<size_t>(d) || j >= static_cast<size_t>(d))
      throw CacheCorruptError("matrix entry out of range");
    m[i][j] = e.at(2).get<int64_t>();
  }
  return m;
}

}  // namespace

std::string cache_dir() {
  if (const char* env = std::getenv("CHEVLAB_CACHE")) return env;
  return "chevlab-cache";
}

std::string cache_path(char type, int rank) {
  return cache_dir() + "/tables_" + std::string(1, type) + std::to_string(rank) + "_" +
         ChevalleyBasis::convention() + "_" + kCacheVersion + ".json";
}

TableBundle build_tables(char type, int rank) {
  TableBundle b;
  b.type = type;
  b.rank = rank;
  // built fresh (not through the in-memory registry) so that cache timing
  // comparisons measure the real construction cost
  auto rsp = std::make_shared<const RootSystem>(RootSystem::build(type, rank));
  auto cb = std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(rsp));
  b.adjoint = std::make_shared<const Representation>(Representation::adjoint(cb));
  const RootSystem& rs = b.adjoint->roots();
  int n = rs.num_roots();
  b.commutator.assign(static_cast<size_t>(n),
                      std::vector<std::vector<CommutatorTerm>>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      if (a == bb || bb == rs.negate(a)) continue;
      b.commutator[static_cast<size_t>(a)][static_cast<size_t>(bb)] =
          derive_commutator_terms(*b.adjoint, a, bb);
    }
  return b;
}

json tables_to_json(const TableBundle& b) {
  const ChevalleyBasis& cb = b.adjoint->basis();
  const RootSystem& rs = cb.roots();
  int n = rs.num_roots();
  json j;
  j["version"] = kCacheVersion;
  j["convention"] = ChevalleyBasis::convention();
  j["type"] = std::string(1, b.type);
  j["rank"] = b.rank;
  j["dim"] = b.adjoint->dim();
  // structure constants, sparse
  json nt = json::array();
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      if (a == bb || bb == rs.negate(a)) continue;
      int64_t v = cb.structure_constant(a, bb);
      if (v != 0) nt.push_back({a, bb, v});
    }
  j["n_table"] = std::move(nt);
  json co = json::array();
  for (int a = 0; a < n; ++a) co.push_back(cb.coroot_coeffs(a));
  j["coroots"] = std::move(co);
  json exp = json::array();
  for (int a = 0; a < n; ++a) {
    json series = json::array();
    const auto& mats = b.adjoint->exp_matrices(a);
    for (size_t k = 1; k < mats.size(); ++k) series.push_back(sparse_mat(mats[k]));
    exp.push_back(std::move(series));
  }
  j["exp"] = std::move(exp);
  json comm = json::array();
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      const auto& terms = b.commutator[static_cast<size_t>(a)][static_cast<size_t>(bb)];
      if (terms.empty()) continue;
      json tl = json::array();
      for (const auto& t : terms) tl.push_back({t.i, t.j, t.root, t.coeff});
      comm.push_back({{"a", a}, {"b", bb}, {"terms", tl}});
    }
  j["commutator"] = std::move(comm);
  return j;
}

TableBundle tables_from_json(char type, int rank, const json& j) {
  try {
    if (j.at("version").get<std::string>() != kCacheVersion ||
        j.at("convention").get<std::string>() != ChevalleyBasis::convention() ||
        j.at("type").get<std::string>() != std::string(1, type) ||
        j.at("rank").get<int>() != rank)
      throw CacheCorruptError("cache key mismatch");
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(type, rank));
    int n = rs->num_roots();
    int d = j.at("dim").get<int>();
    std::vector<std::vector<int64_t>> table(
        static_cast<size_t>(n), std::vector<int64_t>(static_cast<size_t>(n), 0));
    for (const auto& e : j.at("n_table"))
      table[e.at(0).get<size_t>()][e.at(1).get<size_t>()] = e.at(2).get<int64_t>();
    std::vector<std::vector<int64_t>> coroots;
    for (const auto& c : j.at("coroots")) coroots.push_back(c.get<std::vector<int64_t>>());
    auto cb = std::make_shared<const ChevalleyBasis>(
        ChevalleyBasis::from_parts(rs, std::move(table), std::move(coroots)));
    std::vector<std::vector<IntMat>> expmats;
    for (const auto& series : j.at("exp")) {
      std::vector<IntMat> mats;
      IntMat id(static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d), 0));
      for (int i = 0; i < d; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
      mats.push_back(std::move(id));
      for (const auto& sm : series) mats.push_back(unsparse_mat(d, sm));
      expmats.push_back(std::move(mats));
    }
    TableBundle b;
    b.type = type;
    b.rank = rank;
    b.adjoint = std::make_shared<const Representation>(
        Representation::from_parts(cb, Representation::Kind::Adjoint, std::move(expmats)));
    b.commutator.assign(static_cast<size_t>(n),
                        std::vector<std::vector<CommutatorTerm>>(static_cast<size_t>(n)));
    for (const auto& e : j.at("commutator")) {
      int a = e.at("a").get<int>(), bb = e.at("b").get<int>();
      std::vector<CommutatorTerm> terms;
      for (const auto& t : e.at("terms")) {
        CommutatorTerm ct;
        ct.i = t.at(0).get<int>();
        ct.j = t.at(1).get<int>();
        ct.root = t.at(2).get<int>();
        ct.coeff = t.at(3).get<int64_t>();
        terms.push_back(ct);
      }
      b.commutator[static_cast<size_t>(a)][static_cast<size_t>(bb)] = std::move(terms);
    }
    return b;
  } catch (const json::exception& e) {
    throw CacheCorruptError(std::string("cache parse failure: ") + e.what());
  }
}

void save_tables(const TableBundle& b) {
  std::filesystem::create_directories(cache_dir());
  std::ofstream out(cache_path(b.type, b.rank));
  if (!out) throw std::runtime_error("cannot write cache file");
  out << tables_to_json(b).dump() << "\n";
}

TableBundle load_or_build_tables(char type, int rank, bool* from_cache) {
  if (from_cache) *from_cache = false;
  std::string path = cache_path(type, rank);
  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path);
      json j;
      in >> j;
      TableBundle b = tables_from_json(type, rank, j);
      if (from_cache) *from_cache = true;
      return b;
    } catch (const std::exception&) {
      // corrupt cache: fall through to recompute and overwrite
    }
  }
  TableBundle b = build_tables(type, rank);
  save_tables(b);
  return b;
}

}  // namespace chevlab
