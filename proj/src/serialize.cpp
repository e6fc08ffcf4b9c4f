#include "topoinv/serialize.hpp"

#include <bit>

#include "topoinv/errors.hpp"

namespace topoinv {

namespace {

std::string_view kind_name(PresentationKind k)
{
    switch (k) {
    case PresentationKind::Custom: return "custom";
    case PresentationKind::RealStiefel: return "real-stiefel";
    case PresentationKind::ComplexStiefel: return "complex-stiefel";
    case PresentationKind::QuaternionicStiefel: return "quaternionic-stiefel";
    case PresentationKind::Projective: return "projective";
    }
    return "custom";
}

PresentationKind kind_from(std::string_view s)
{
    for (auto k : {PresentationKind::Custom, PresentationKind::RealStiefel, PresentationKind::ComplexStiefel,
                   PresentationKind::QuaternionicStiefel, PresentationKind::Projective})
        if (kind_name(k) == s)
            return k;
    throw InvalidParameters("unknown presentation kind '" + std::string(s) + "'");
}

} // namespace

Json to_json(const Presentation& p)
{
    Json gens = Json::array();
    for (const auto& g : p.gens()) {
        Json square;
        switch (g.square.kind) {
        case SquareKind::Zero: square = "zero"; break;
        case SquareKind::MapsTo: square = g.square.target; break;
        case SquareKind::Undetermined: square = "undetermined"; break;
        }
        gens.push_back({{"j", g.label}, {"deg", g.degree}, {"square", square}});
    }
    Json trunc = nullptr;
    if (p.trunc())
        trunc = {{"deg", p.trunc()->degree}, {"N", p.trunc()->order}};
    return {{"name", p.name()},         {"kind", kind_name(p.kind())}, {"trunc", trunc},
            {"gens", gens},             {"ambient_bound", p.ambient_bound()},
            {"symbol", p.gen_symbol()}, {"top_degree", p.top_degree()}};
}

Presentation presentation_from_json(const Json& j)
{
    try {
        std::optional<Truncation> trunc;
        if (j.contains("trunc") && !j.at("trunc").is_null())
            trunc = Truncation{j.at("trunc").at("deg").get<int>(), j.at("trunc").at("N").get<int>()};
        std::vector<SimpleGenerator> gens;
        for (const auto& g : j.at("gens")) {
            SquareRule sq;
            const auto& s = g.at("square");
            if (s.is_number_integer())
                sq = SquareRule::maps_to(s.get<int>());
            else if (s == "zero")
                sq = SquareRule::zero();
            else if (s == "undetermined")
                sq = SquareRule::undetermined();
            else
                throw InvalidParameters("bad square rule " + s.dump());
            gens.push_back({g.at("j").get<int>(), g.at("deg").get<int>(), sq});
        }
        int bound = j.value("ambient_bound", 0);
        return Presentation(trunc, std::move(gens), bound, kind_from(j.value("kind", std::string("custom"))),
                            j.value("name", std::string("custom")), j.value("symbol", std::string("z")));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameters(std::string("malformed presentation JSON: ") + e.what());
    }
}

Json to_json(const Element& e)
{
    const auto& p = e.presentation();
    Json monos = Json::array();
    for (const auto& m : e.terms()) {
        Json labels = Json::array();
        for (std::uint64_t bits = m.gens; bits; bits &= bits - 1)
            labels.push_back(p.gens()[static_cast<std::size_t>(std::countr_zero(bits))].label);
        monos.push_back(Json::array({m.y_exp, labels}));
    }
    return {{"monomials", monos}};
}

Element element_from_json(const Presentation& p, const Json& j)
{
    try {
        std::vector<Monomial> terms;
        for (const auto& mj : j.at("monomials")) {
            Monomial m{mj.at(0).get<std::uint32_t>(), 0};
            // repeated labels multiply out, so build the monomial as a product
            Element acc = Element::monomial(p, Monomial{m.y_exp, 0});
            for (const auto& l : mj.at(1))
                acc = mul(p, acc, Element::generator(p, l.get<int>()));
            for (const auto& t : acc.terms())
                terms.push_back(t);
        }
        return from_unsorted(p, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameters(std::string("malformed element JSON: ") + e.what());
    }
}

std::string_view to_string(RankKind k) noexcept
{
    switch (k) {
    case RankKind::Exact: return "exact";
    case RankKind::Interval: return "interval";
    case RankKind::Uncovered: return "uncovered";
    }
    return "?";
}

Json to_json(const RankResult& r)
{
    Json j{{"kind", to_string(r.kind)}};
    switch (r.kind) {
    case RankKind::Exact: j["value"] = r.lo; break;
    case RankKind::Interval:
        j["lo"] = r.lo;
        j["hi"] = r.hi;
        break;
    case RankKind::Uncovered: j["reason"] = r.reason; break;
    }
    if (!r.case_label.empty())
        j["case"] = r.case_label;
    if (r.n_index)
        j["N"] = *r.n_index;
    return j;
}

Json to_json(const CupLength& c)
{
    return {{"value", c.value}, {"witness", c.witness}, {"caveat", c.caveat}};
}

Json to_json(const CupReport& r)
{
    Json bounds = Json::array();
    for (const auto& b : r.bounds)
        bounds.push_back({{"name", b.name}, {"value", b.value}});
    Json j{{"space", to_string(r.space)},
           {"exact", r.exact.value},
           {"witness", r.exact.witness},
           {"caveat", r.exact.caveat},
           {"bounds", bounds},
           {"violations", r.violations}};
    if (r.oracle)
        j["oracle"] = *r.oracle;
    return j;
}

Json to_json(const SSReport& r)
{
    return {{"space", to_string(r.space)},
            {"window", r.window},
            {"first_nonzero_differential_page", r.first_nonzero_differential_page},
            {"e_infinity_series", r.e_infinity_series},
            {"presentation_series", r.presentation_series},
            {"consistent", r.consistent},
            {"match", r.match}};
}

Json to_json(const IndexIdeal& ideal)
{
    return {{"generator_degree", ideal.generator_degree},
            {"exponent", ideal.exponent},
            {"total_degree", ideal.total_degree()}};
}

Json to_json(const FeasibilityVerdict& v)
{
    Json j{{"status", to_string(v.status)}, {"by", v.by}};
    if (!v.reason.empty())
        j["reason"] = v.reason;
    return j;
}

} // namespace topoinv
