#pragma once

// Canonical JSON forms shared by the CLI and external tools.

#include <json.hpp>

#include "topoinv/equivariant.hpp"
#include "topoinv/gralg.hpp"
#include "topoinv/invariants.hpp"
#include "topoinv/spaces.hpp"

namespace topoinv {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

// {"monomials": [[y_exp, [labels...]], ...]}
Json to_json(const Element& e);
Element element_from_json(const Presentation& p, const Json& j);

Json to_json(const RankResult& r);
Json to_json(const CupLength& c);
Json to_json(const CupReport& r);
Json to_json(const SSReport& r);
Json to_json(const IndexIdeal& ideal);
Json to_json(const FeasibilityVerdict& v);

std::string_view to_string(RankKind k) noexcept;

} // namespace topoinv
