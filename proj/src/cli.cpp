#include "topoinv/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "topoinv/equivariant.hpp"
#include "topoinv/errors.hpp"
#include "topoinv/gralg.hpp"
#include "topoinv/invariants.hpp"
#include "topoinv/serialize.hpp"
#include "topoinv/spaces.hpp"
#include "topoinv/verify.hpp"

namespace topoinv {

namespace {

constexpr int kTableMaxN = 128;
constexpr const char* kToolVersion = "1.0.0";

const char* kGrammar = R"(Space specs:
  FAMILY:n,k   with FAMILY one of RV CV HV RX FV CX HX
               (FV:n,k is the flip Stiefel manifold FV_{n,2k})
G-space specs for s3map:
  S4n-1:n      the sphere S^{4n-1}, so S4n-1:5 is S^19
  HV:n,k       quaternionic Stiefel manifold
  Sp:n         symplectic group Sp(n)
Environment:
  TOPOINV_WORK_CAP  overrides the spectral-sequence and oracle work caps
Exit codes: 0 ok, 1 verification failure, 2 invalid parameters, 3 uncovered)";

std::uint64_t env_work_cap()
{
    const char* raw = std::getenv("TOPOINV_WORK_CAP");
    if (!raw || !*raw)
        return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0)
        throw InvalidParameters(std::string("TOPOINV_WORK_CAP must be a positive integer, got '") + raw + "'");
    return v;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct Globals {
    unsigned jobs = 1;
    bool meta = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

Json meta_json(const Globals& g, const std::vector<std::string>& args)
{
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - g.start).count();
    return Json{{"timestamp", utc_timestamp()}, {"elapsed_ms", ms}, {"tool_version", kToolVersion}, {"argv", args}};
}

struct Query {
    explicit Query(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    Json params = Json::object();
    Json result;
    Json provenance = Json::object();
    std::vector<std::string> warnings;

    Json to_json() const
    {
        return Json{{"version", kSchemaVersion},
                    {"query", Json{{"command", command}, {"params", params}}},
                    {"result", result},
                    {"provenance", provenance},
                    {"warnings", warnings}};
    }
};

void emit(std::ostream& out, const Query& q, const Globals& g, const std::vector<std::string>& args)
{
    Json j = q.to_json();
    if (g.meta)
        j["meta"] = meta_json(g, args);
    out << j.dump() << '\n';
}

std::string error_type(const std::exception& e)
{
    if (dynamic_cast<const NoIndex*>(&e))
        return "no_index";
    if (dynamic_cast<const UndeterminedSquare*>(&e))
        return "undetermined_square";
    if (dynamic_cast<const UnsupportedPresentation*>(&e))
        return "unsupported_presentation";
    if (dynamic_cast<const DimensionCapExceeded*>(&e))
        return "dimension_cap_exceeded";
    if (dynamic_cast<const WorkCapExceeded*>(&e))
        return "work_cap_exceeded";
    if (dynamic_cast<const MixedPresentations*>(&e))
        return "mixed_presentations";
    if (dynamic_cast<const DegreeMismatch*>(&e))
        return "degree_mismatch";
    if (dynamic_cast<const InvalidParameters*>(&e))
        return "invalid_parameters";
    return "error";
}

int report_error(std::ostream& err, const std::string& type, const std::string& message)
{
    err << Json{{"version", kSchemaVersion}, {"error", Json{{"type", type}, {"message", message}}}}.dump() << '\n';
    return kExitInvalid;
}

Json rank_provenance(const RankResult& r)
{
    Json p = Json::object();
    if (!r.case_label.empty())
        p["case"] = r.case_label;
    if (r.n_index)
        p["N"] = *r.n_index;
    return p;
}

// ---- ucharrank ----

int cmd_ucharrank(const std::string& spec, const Globals& g, const std::vector<std::string>& args, std::ostream& out)
{
    const SpaceId s = parse_space(spec);
    Query q{"ucharrank"};
    q.params["space"] = spec;
    const RankResult r = ucharrank(s);
    q.result = to_json(r);
    q.provenance = rank_provenance(r);
    q.warnings = r.notes;
    emit(out, q, g, args);
    return r.kind == RankKind::Uncovered ? kExitUncovered : kExitOk;
}

// ---- cohomology ----

int cmd_cohomology(const std::string& spec, std::optional<int> max_deg, bool emit_presentation, const Globals& g,
                   const std::vector<std::string>& args, std::ostream& out)
{
    const SpaceId s = parse_space(spec);
    validate(s);
    const Presentation p = presentation(s);
    const Json pj = to_json(p);
    if (emit_presentation) {
        out << pj.dump() << '\n';
        return kExitOk;
    }
    if (max_deg && *max_deg < 0)
        throw InvalidParameters("--max-deg must be non-negative");
    auto series = poincare(p);
    if (max_deg)
        series.resize(static_cast<std::size_t>(*max_deg) + 1, 0);

    Query q{"cohomology"};
    q.params["space"] = spec;
    if (max_deg)
        q.params["max_deg"] = *max_deg;
    q.result = Json{{"space", to_string(s)},
                    {"dimension", dimension(s)},
                    {"generators", pj["gens"]},
                    {"truncation", pj["trunc"]},
                    {"basis_size", p.dimension()},
                    {"series", series}};
    q.provenance["presentation"] = p.name();
    if (p.has_undetermined_square())
        q.warnings.push_back("some generator squares are not determined by the presentation");
    emit(out, q, g, args);
    return kExitOk;
}

// ---- cuplength ----

int cmd_cuplength(const std::string& spec, const std::string& mode, bool with_bounds, const Globals& g,
                  const std::vector<std::string>& args, std::ostream& out)
{
    const SpaceId s = parse_space(spec);
    validate(s);
    const std::uint64_t cap = env_work_cap();
    Query q{"cuplength"};
    q.params["space"] = spec;
    q.params["mode"] = mode;
    q.params["with_bounds"] = with_bounds;

    const CupMode m = mode == "oracle" ? CupMode::ExhaustiveOracle : CupMode::GeneratorSearch;
    CupLength c;
    if (with_bounds) {
        const CupReport rep = cup_report(s, cap ? cap : kReportOracleCap);
        c = m == CupMode::GeneratorSearch ? rep.exact : cup_length(presentation(s), m, cap);
        q.result = to_json(rep);
        q.result["value"] = c.value;
        Json names = Json::array();
        for (const auto& b : rep.bounds)
            names.push_back(b.name);
        q.provenance["bounds"] = names;
        for (const auto& b : rep.bounds)
            if (b.value < c.value)
                q.warnings.push_back("bound exceeded: " + b.name + " gives " + std::to_string(b.value) +
                                     " but the cup length is " + std::to_string(c.value));
    } else {
        c = cup_length(presentation(s), m, cap);
        q.result = to_json(c);
    }
    q.provenance["method"] = mode == "oracle" ? "exhaustive-oracle" : "generator-search";
    if (c.caveat)
        q.warnings.push_back("an undetermined generator square was treated as zero");
    emit(out, q, g, args);
    return kExitOk;
}

// ---- s3map ----

int cmd_s3map(const std::string& from, const std::string& to, const Globals& g, const std::vector<std::string>& args,
              std::ostream& out)
{
    const GSpace src = parse_gspace(from);
    const GSpace dst = parse_gspace(to);
    validate(src);
    validate(dst);
    const FeasibilityVerdict v = feasibility(src, dst);
    Query q{"s3map"};
    q.params["from"] = from;
    q.params["to"] = to;
    q.result = to_json(v);
    q.provenance["by"] = v.by;
    const IndexIdeal is = index_of(src);
    const IndexIdeal id = index_of(dst);
    q.provenance["index_from"] = to_json(is);
    q.provenance["index_to"] = to_json(id);
    if (v.status != Verdict::Impossible && !ideal_contains(is, id))
        q.warnings.push_back("the mod-2 index of " + to_string(dst) + " is not contained in that of " +
                             to_string(src) + ", which already rules the map out");
    emit(out, q, g, args);
    return kExitOk;
}

// ---- table ----

struct Row {
    SpaceId space;
    RankResult rank;
};

Row table_row(const std::string& invariant, const SpaceId& s)
{
    if (invariant == "ucharrank") {
        try {
            return {s, ucharrank(s)};
        } catch (const NoIndex& e) {
            return {s, RankResult::uncovered(e.what())};
        }
    }
    const CupLength c = cup_length(presentation(s), CupMode::GeneratorSearch);
    RankResult r = RankResult::exact(c.value, "");
    if (is_projective(s.family))
        r.n_index = presentation(s).order();
    return {s, r};
}

std::string csv_field(const std::string& v)
{
    if (v.find_first_of(",\"\n") == std::string::npos)
        return v;
    std::string q = "\"";
    for (char c : v) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

std::string csv_line(const Row& row)
{
    const RankResult& r = row.rank;
    std::string value, lo, hi;
    if (r.kind == RankKind::Exact)
        value = lo = hi = std::to_string(r.lo);
    else if (r.kind == RankKind::Interval) {
        lo = std::to_string(r.lo);
        hi = std::to_string(r.hi);
    }
    std::ostringstream os;
    os << to_string(row.space.family) << ',' << row.space.n << ',' << row.space.k << ',' << to_string(r.kind) << ','
       << value << ',' << lo << ',' << hi << ',' << csv_field(r.case_label) << ','
       << (r.n_index ? std::to_string(*r.n_index) : "");
    return os.str();
}

int cmd_table(const std::string& invariant, const std::string& family, const std::string& n_text,
              const std::string& k_text, const std::string& format, const Globals& g,
              const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const Family f = parse_family(family);
    const IntRange n = parse_range(n_text);
    const IntRange k = parse_range(k_text);
    if (n.hi > kTableMaxN || k.hi > kTableMaxN)
        throw InvalidParameters("table ranges are limited to n <= " + std::to_string(kTableMaxN));
    const Catalog cat = catalog({f}, n, k);

    std::vector<Row> rows(cat.spaces.size(), Row{SpaceId{f, 0, 0}, {}});
    parallel_for(cat.spaces.size(), g.jobs, [&](std::size_t i) { rows[i] = table_row(invariant, cat.spaces[i]); });

    if (format == "csv") {
        out << "family,n,k,kind,value,lo,hi,case,N\n";
        for (const auto& row : rows)
            out << csv_line(row) << '\n';
        if (g.meta)
            err << Json{{"meta", meta_json(g, args)}}.dump() << '\n';
        return kExitOk;
    }
    Query q{"table"};
    q.params = Json{{"invariant", invariant}, {"family", family}, {"n", n_text}, {"k", k_text}};
    Json list = Json::array();
    for (const auto& row : rows) {
        Json j = to_json(row.rank);
        j["space"] = to_string(row.space);
        j["n"] = row.space.n;
        j["k"] = row.space.k;
        list.push_back(std::move(j));
    }
    q.result = Json{{"rows", list}, {"skipped", cat.skipped}};
    q.provenance["invariant"] = invariant;
    emit(out, q, g, args);
    return kExitOk;
}

// ---- verify ----

int cmd_verify(const std::string& suite, int max_n, const Globals& g, const std::vector<std::string>& args,
               std::ostream& out)
{
    if (max_n < 1 || max_n > 64)
        throw InvalidParameters("--max-n must lie in 1..64");
    VerifyOptions opt;
    opt.max_n = max_n;
    opt.jobs = g.jobs;
    opt.work_cap = env_work_cap();

    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names.push_back(suite);

    Query q{"verify"};
    q.params = Json{{"suite", suite}, {"max_n", max_n}};
    Json results = Json::array();
    bool ok = true;
    for (const auto& name : names) {
        const SuiteResult r = run_suite(name, opt);
        ok = ok && r.failures.empty();
        results.push_back(Json{{"name", r.name},
                               {"status", r.failures.empty() ? "pass" : "fail"},
                               {"checks", r.checks},
                               {"skipped", r.skipped},
                               {"failures", r.failures},
                               {"expected_warnings", r.expected_warnings}});
        for (const auto& w : r.expected_warnings)
            q.warnings.push_back(name + ": " + w);
    }
    q.result = Json{{"status", ok ? "pass" : "fail"}, {"suites", results}};
    q.provenance["suites"] = names;
    emit(out, q, g, args);
    return ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Invariants of Stiefel-type manifolds over Z/2", "topoinv"};
    app.footer(kGrammar);
    app.require_subcommand(1);

    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads for table and verify")->check(CLI::Range(1u, 256u));
    app.add_flag("--meta", g.meta, "Add a timestamped meta block outside the payload");

    std::string space;

    auto* rank = app.add_subcommand("ucharrank", "Upper characteristic rank of a space");
    rank->add_option("space", space, "Space spec, e.g. RX:7,2")->required();

    std::optional<int> max_deg;
    bool emit_presentation = false;
    auto* coh = app.add_subcommand("cohomology", "Mod-2 cohomology ring presentation and Poincare series");
    coh->add_option("space", space, "Space spec")->required();
    coh->add_option("--max-deg", max_deg, "Truncate or pad the series to this degree");
    coh->add_flag("--emit-presentation", emit_presentation, "Print only the ring presentation as JSON");

    std::string mode = "generator";
    bool with_bounds = false;
    auto* cup = app.add_subcommand("cuplength", "Mod-2 cup length");
    cup->add_option("space", space, "Space spec")->required();
    cup->add_option("--mode", mode, "generator or oracle")->check(CLI::IsMember({"generator", "oracle"}));
    cup->add_flag("--with-bounds", with_bounds, "Compare with the known upper bounds");

    std::string from, to;
    auto* s3 = app.add_subcommand("s3map", "Existence of S^3-equivariant maps");
    s3->add_option("--from", from, "Source G-space")->required();
    s3->add_option("--to", to, "Target G-space")->required();

    std::string invariant, family, n_range, k_range, format = "json";
    auto* table = app.add_subcommand("table", "Tabulate an invariant over a parameter grid");
    table->add_option("invariant", invariant, "ucharrank or cuplength")
        ->required()
        ->check(CLI::IsMember({"ucharrank", "cuplength"}));
    table->add_option("family", family, "RV CV HV RX FV CX HX")->required();
    table->add_option("--n", n_range, "Range such as 3..16")->required();
    table->add_option("--k", k_range, "Range such as 2..15")->required();
    table->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string suite = "all";
    int max_n = 8;
    auto* verify = app.add_subcommand("verify", "Run the built-in consistency suites");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    verify->add_option("--suite", suite, "Suite name or all")->check(CLI::IsMember(choices));
    verify->add_option("--max-n", max_n, "Largest n in the grids");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report_error(err, "usage", e.what());
    }

    try {
        if (*rank)
            return cmd_ucharrank(space, g, args, out);
        if (*coh)
            return cmd_cohomology(space, max_deg, emit_presentation, g, args, out);
        if (*cup)
            return cmd_cuplength(space, mode, with_bounds, g, args, out);
        if (*s3)
            return cmd_s3map(from, to, g, args, out);
        if (*table)
            return cmd_table(invariant, family, n_range, k_range, format, g, args, out, err);
        if (*verify)
            return cmd_verify(suite, max_n, g, args, out);
    } catch (const std::exception& e) {
        return report_error(err, error_type(e), e.what());
    }
    return kExitInvalid;
}

} // namespace topoinv
