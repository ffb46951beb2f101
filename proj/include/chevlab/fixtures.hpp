#pragma once

#include <string>

#include "chevlab/autos.hpp"
#include "chevlab/group.hpp"
#include "chevlab/rings.hpp"
#include "json.hpp"

namespace chevlab {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ring descriptor: {"kind":"Zmod","p":3,"k":2}, {"kind":"GF","p":2,"n":3},
/// {"kind":"TruncPoly","p":2,"n":1,"deg":2}; short names also accepted as
/// {"name":"Z9"}.
LocalRing ring_from_json(const nlohmann::json& j);
nlohmann::json ring_to_json(const LocalRing& r);

/// Ring element: number / numeric string = enumeration index (equal to the
/// canonical coefficient for Z/p^k and prime fields), array = coefficients.
RingElem ring_elem_from_json(const LocalRing& r, const nlohmann::json& j);
nlohmann::json ring_elem_to_json(const LocalRing& r, const RingElem& e);

/// Morphism descriptor: {"images":[elem,...]} generator-image list, or
/// {"named":"identity"|"frobenius"}.
RingMorphism morphism_from_json(const LocalRing& r, const nlohmann::json& j);

/// Group word: ordered letter list, e.g.
/// [{"x":{"root":[1,0],"t":"4"}},{"h":{"root":[0,1],"t":"2"}}].
GroupWord word_from_json(const GroupContext& ctx, const nlohmann::json& j);
nlohmann::json word_to_json(const GroupContext& ctx, const GroupWord& w);

/// Matrix export: integer-entry grid with a ring descriptor header.
nlohmann::json mat_to_json(const GroupContext& ctx, const Mat& m);

/// Automorphism descriptor: {"factors":[...]} in application order.
StandardAutomorphism automorphism_from_json(ContextPtr ctx, const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace chevlab
