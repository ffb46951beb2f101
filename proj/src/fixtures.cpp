#include "chevlab/fixtures.hpp"

#include <fstream>

namespace chevlab {

using nlohmann::json;

LocalRing ring_from_json(const json& j) {
  if (j.is_string()) return LocalRing::from_name(j.get<std::string>());
  if (j.contains("name")) return LocalRing::from_name(j.at("name").get<std::string>());
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Zmod") return LocalRing::zmod(j.at("p").get<int64_t>(), j.at("k").get<int>());
  if (kind == "GF") return LocalRing::gf(j.at("p").get<int64_t>(), j.at("n").get<int>());
  if (kind == "TruncPoly")
    return LocalRing::trunc_poly(j.at("p").get<int64_t>(), j.at("n").get<int>(),
                                 j.at("deg").get<int>());
  throw ParseError("unknown ring kind: " + kind);
}

json ring_to_json(const LocalRing& r) {
  json j;
  switch (r.kind()) {
    case RingKind::Zmod: {
      j["kind"] = "Zmod";
      j["p"] = r.char_p();
      int k = 0;
      int64_t o = r.order();
      while (o > 1) {
        o /= r.char_p();
        ++k;
      }
      j["k"] = k;
      break;
    }
    case RingKind::GF: {
      j["kind"] = "GF";
      j["p"] = r.char_p();
      int n = 0;
      int64_t o = r.order();
      while (o > 1) {
        o /= r.char_p();
        ++n;
      }
      j["n"] = n;
      break;
    }
    case RingKind::TruncPoly: {
      j["kind"] = "TruncPoly";
      j["p"] = r.char_p();
      j["n"] = 1;
      j["deg"] = r.nilpotency_degree();
      // recover n from the residue field order
      int64_t q = r.residue_field().order();
      int n = 0;
      while (q > 1) {
        q /= r.char_p();
        ++n;
      }
      j["n"] = n;
      break;
    }
  }
  j["name"] = r.name();
  return j;
}

RingElem ring_elem_from_json(const LocalRing& r, const json& j) {
  if (j.is_number_integer()) return r.elem_at(((j.get<int64_t>() % r.order()) + r.order()) % r.order());
  if (j.is_string()) {
    int64_t v = std::stoll(j.get<std::string>());
    return r.elem_at(((v % r.order()) + r.order()) % r.order());
  }
  if (j.is_array()) {
    RingElem e = r.zero();
    for (size_t i = 0; i < j.size() && i < static_cast<size_t>(e.size()); ++i)
      e[static_cast<int>(i)] = j[i].get<int64_t>();
    return e;
  }
  throw ParseError("bad ring element encoding");
}

json ring_elem_to_json(const LocalRing& r, const RingElem& e) {
  (void)r;
  if (e.size() == 1) return std::to_string(e[0]);
  json arr = json::array();
  for (int i = 0; i < e.size(); ++i) arr.push_back(e[i]);
  return arr;
}

RingMorphism morphism_from_json(const LocalRing& r, const json& j) {
  if (j.is_string() || j.contains("named")) {
    std::string name = j.is_string() ? j.get<std::string>() : j.at("named").get<std::string>();
    if (name == "identity") return RingMorphism::identity(r);
    if (name == "frobenius") return RingMorphism::frobenius(r);
    throw ParseError("unknown named morphism: " + name);
  }
  std::vector<RingElem> images;
  for (const auto& e : j.at("images")) images.push_back(ring_elem_from_json(r, e));
  return RingMorphism(r, r, std::move(images));
}

GroupWord word_from_json(const GroupContext& ctx, const json& j) {
  const LocalRing& r = ctx.ring();
  const RootSystem& rs = ctx.roots();
  GroupWord w;
  for (const auto& lj : j) {
    if (lj.contains("x") || lj.contains("w") || lj.contains("h")) {
      const char* key = lj.contains("x") ? "x" : (lj.contains("w") ? "w" : "h");
      const auto& body = lj.at(key);
      int root = rs.root_index(body.at("root").get<std::vector<int>>());
      RingElem t = ring_elem_from_json(r, body.at("t"));
      if (key[0] == 'x')
        w.push_back(Letter::x(root, t));
      else if (key[0] == 'w')
        w.push_back(Letter::w(root, t));
      else
        w.push_back(Letter::h(root, t));
    } else if (lj.contains("torus_char")) {
      std::vector<RingElem> chi;
      for (const auto& c : lj.at("torus_char")) chi.push_back(ring_elem_from_json(r, c));
      w.push_back(Letter::torus_char(std::move(chi)));
    } else {
      throw ParseError("unknown word letter: " + lj.dump());
    }
  }
  return w;
}

json word_to_json(const GroupContext& ctx, const GroupWord& w) {
  const LocalRing& r = ctx.ring();
  const RootSystem& rs = ctx.roots();
  json arr = json::array();
  for (const Letter& l : w) {
    json lj;
    switch (l.kind) {
      case Letter::Kind::X:
        lj["x"] = {{"root", rs.root(l.root).coeffs}, {"t", ring_elem_to_json(r, l.param)}};
        break;
      case Letter::Kind::W:
        lj["w"] = {{"root", rs.root(l.root).coeffs}, {"t", ring_elem_to_json(r, l.param)}};
        break;
      case Letter::Kind::H:
        lj["h"] = {{"root", rs.root(l.root).coeffs}, {"t", ring_elem_to_json(r, l.param)}};
        break;
      case Letter::Kind::TorusChar: {
        json vals = json::array();
        for (const RingElem& c : l.chi) vals.push_back(ring_elem_to_json(r, c));
        lj["torus_char"] = vals;
        break;
      }
    }
    arr.push_back(std::move(lj));
  }
  return arr;
}

json mat_to_json(const GroupContext& ctx, const Mat& m) {
  json j;
  j["ring"] = ring_to_json(ctx.ring());
  j["phi"] = ctx.roots().name();
  j["rep"] = ctx.rep().tag();
  json rows = json::array();
  for (int i = 0; i < m.dim; ++i) {
    json row = json::array();
    for (int c = 0; c < m.dim; ++c) row.push_back(ring_elem_to_json(ctx.ring(), m.at(i, c)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

StandardAutomorphism automorphism_from_json(ContextPtr ctx, const json& j) {
  std::vector<AutoFactor> factors;
  for (const auto& fj : j.at("factors")) {
    if (fj.contains("inner")) {
      factors.push_back(AutoFactor::inner(word_from_json(*ctx, fj.at("inner").at("word"))));
    } else if (fj.contains("diagonal")) {
      std::vector<RingElem> d;
      for (const auto& e : fj.at("diagonal").at("d"))
        d.push_back(ring_elem_from_json(ctx->ring(), e));
      factors.push_back(AutoFactor::diagonal(std::move(d)));
    } else if (fj.contains("graph")) {
      factors.push_back(AutoFactor::graph(fj.at("graph").at("perm").get<std::vector<int>>()));
    } else if (fj.contains("ring")) {
      factors.push_back(AutoFactor::ring(morphism_from_json(ctx->ring(), fj.at("ring"))));
    } else if (fj.contains("central")) {
      std::vector<std::pair<std::vector<RingElem>, GroupWord>> assign;
      for (const auto& aj : fj.at("central").at("assignments")) {
        std::vector<RingElem> chi;
        for (const auto& c : aj.at("chi")) chi.push_back(ring_elem_from_json(ctx->ring(), c));
        assign.emplace_back(std::move(chi), word_from_json(*ctx, aj.at("value")));
      }
      factors.push_back(AutoFactor::central(std::move(assign)));
    } else {
      throw ParseError("unknown automorphism factor: " + fj.dump());
    }
  }
  StandardAutomorphism a(std::move(ctx), std::move(factors));
  a.validate();
  return a;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace chevlab
