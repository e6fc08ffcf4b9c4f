#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "topoinv/cli.hpp"
#include "topoinv/serialize.hpp"

using namespace topoinv;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json load_schema()
{
    std::ifstream in(TOPOINV_SCHEMA_PATH);
    REQUIRE(in.good());
    return Json::parse(in);
}

bool has_type(const Json& v, const std::string& type)
{
    if (type == "object")
        return v.is_object();
    if (type == "array")
        return v.is_array();
    if (type == "string")
        return v.is_string();
    if (type == "integer")
        return v.is_number_integer();
    if (type == "boolean")
        return v.is_boolean();
    return false;
}

// Checks the subset of JSON Schema keywords used in docs/schema.json.
void validate(const Json& v, const Json& schema, const std::string& path = "$")
{
    CAPTURE(path);
    if (schema.contains("type"))
        CHECK(has_type(v, schema["type"]));
    if (schema.contains("const"))
        CHECK(v == schema["const"]);
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"])
            found = found || e == v;
        CHECK(found);
    }
    if (v.is_object()) {
        for (const auto& key : schema.value("required", Json::array()))
            CHECK(v.contains(key.get<std::string>()));
        const Json props = schema.value("properties", Json::object());
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (props.contains(it.key()))
                validate(it.value(), props[it.key()], path + "." + it.key());
            else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false)
                FAIL("unexpected property " << it.key());
        }
    }
    if (v.is_array() && schema.contains("items"))
        for (const auto& item : v)
            validate(item, schema["items"], path + "[]");
}

Json single_json(const std::string& text)
{
    REQUIRE(!text.empty());
    REQUIRE(text.back() == '\n');
    REQUIRE(text.find('\n') == text.size() - 1);
    return Json::parse(text);
}

} // namespace

TEST_CASE("ucharrank command")
{
    const auto schema = load_schema();
    auto r = run({"ucharrank", "RX:7,2"});
    CHECK(r.code == kExitOk);
    auto j = single_json(r.out);
    validate(j, schema);
    validate(j["result"], schema["$defs"]["rank"]);
    CHECK(j["result"] == Json::parse(R"j({"kind":"exact","value":5,"case":"1.1(a)(1)","N":6})j"));

    r = run({"ucharrank", "HV:5,2"});
    j = single_json(r.out);
    CHECK(j["result"] == Json::parse(R"j({"kind":"exact","value":14,"case":"2.3(e)"})j"));

    r = run({"ucharrank", "RV:3,2"});
    CHECK(r.code == kExitUncovered);
    CHECK(single_json(r.out)["result"]["kind"] == "uncovered");

    r = run({"ucharrank", "CX:4,4"});
    CHECK(r.code == kExitUncovered);
}

TEST_CASE("invalid input exits with 2 and a JSON error")
{
    const auto schema = load_schema();
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"ucharrank", "RX:2,5"}, {"ucharrank", "nonsense"}, {"bogus"}, {}, {"table", "ucharrank", "RX", "--n", "3..200", "--k", "2"},
             {"cohomology", "RX:5,2", "--max-deg", "-1"}, {"s3map", "--from", "S:19", "--to", "Sp:2"}}) {
        const auto r = run(args);
        CHECK(r.code == kExitInvalid);
        CHECK(r.out.empty());
        validate(single_json(r.err), schema["$defs"]["error"]);
    }
}

TEST_CASE("cohomology command")
{
    auto j = single_json(run({"cohomology", "RX:5,2"}).out);
    CHECK(j["result"]["series"] == Json::parse("[1,1,1,1,1,1,1,1]"));
    CHECK(j["result"]["truncation"] == Json::parse(R"j({"deg":1,"N":4})j"));
    CHECK(j["result"]["generators"] == Json::parse(R"([{"j":4,"deg":4,"square":"zero"}])"));

    j = single_json(run({"cohomology", "CV:3,3"}).out);
    std::vector<int> degrees;
    for (const auto& g : j["result"]["generators"])
        degrees.push_back(g["deg"]);
    CHECK(degrees == std::vector<int>{1, 3, 5});

    j = single_json(run({"cohomology", "HX:5,2", "--max-deg", "8"}).out);
    CHECK(j["result"]["series"] == Json::parse("[1,0,0,0,1,0,0,0,1]"));

    j = single_json(run({"cohomology", "RV:5,3", "--emit-presentation"}).out);
    CHECK(j["gens"][0]["square"] == 4);
}

TEST_CASE("cuplength command")
{
    auto r = run({"cuplength", "RX:5,2", "--with-bounds"});
    CHECK(r.code == kExitOk);
    auto j = single_json(r.out);
    CHECK(j["result"]["value"] == 4);
    CHECK(j["result"]["bounds"][0]["value"] == 3);
    REQUIRE(j["warnings"].size() == 1);
    CHECK(j["warnings"][0].get<std::string>().rfind("bound exceeded", 0) == 0);

    CHECK(single_json(run({"cuplength", "HX:5,2"}).out)["result"]["value"] == 4);
    CHECK(single_json(run({"cuplength", "CV:2,2", "--mode", "oracle"}).out)["result"]["value"] == 2);
    CHECK(run({"cuplength", "CV:2,2", "--mode", "fast"}).code == kExitInvalid);
}

TEST_CASE("s3map command")
{
    auto j = single_json(run({"s3map", "--from", "Sp:2", "--to", "Sp:4"}).out);
    CHECK(j["result"]["status"] == "possible");
    CHECK(j["result"]["by"] == "1.3(b)");
    j = single_json(run({"s3map", "--from", "HV:6,2", "--to", "HV:5,2"}).out);
    CHECK(j["result"]["status"] == "impossible");
    CHECK(j["result"]["reason"] == "n-k>m-l");
    j = single_json(run({"s3map", "--from", "S4n-1:2", "--to", "S4n-1:3"}).out);
    CHECK(j["result"]["status"] == "possible");
    j = single_json(run({"s3map", "--from", "HV:6,2", "--to", "S4n-1:5"}).out);
    CHECK(j["result"]["status"] == "not-ruled-out");
    CHECK(j["warnings"].size() == 1);
}

TEST_CASE("table command")
{
    auto r = run({"table", "ucharrank", "CX", "--n", "3..5", "--k", "2..2", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "family,n,k,kind,value,lo,hi,case,N\n"
          "CX,3,2,exact,4,4,4,1.2,2\n"
          "CX,4,2,exact,4,4,4,1.2,4\n"
          "CX,5,2,exact,8,8,8,1.2,4\n");

    r = run({"table", "ucharrank", "CX", "--n", "5..3", "--k", "2", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "family,n,k,kind,value,lo,hi,case,N\n");

    auto j = single_json(run({"table", "cuplength", "HX", "--n", "5..6", "--k", "2..2"}).out);
    REQUIRE(j["result"]["rows"].size() == 2);
    CHECK(j["result"]["rows"][0]["value"] == 4);

    r = run({"table", "ucharrank", "RX", "--n", "3..16", "--k", "1..15", "--format", "csv"});
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line))
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
}

TEST_CASE("determinism and meta")
{
    const std::vector<std::string> args{"table", "ucharrank", "FV", "--n", "3..16", "--k", "1..7", "--format", "csv"};
    CHECK(run(args).out == run(args).out);
    auto parallel = args;
    parallel.insert(parallel.begin(), {"--jobs", "4"});
    CHECK(run(parallel).out == run(args).out);

    const auto plain = single_json(run({"ucharrank", "HX:5,2"}).out);
    const auto with_meta = single_json(run({"--meta", "ucharrank", "HX:5,2"}).out);
    CHECK(with_meta.contains("meta"));
    auto stripped = with_meta;
    stripped.erase("meta");
    CHECK(stripped == plain);
    validate(with_meta, load_schema());

    const auto csv = run({"--meta", "table", "ucharrank", "CX", "--n", "3", "--k", "2", "--format", "csv"});
    CHECK(csv.out == run({"table", "ucharrank", "CX", "--n", "3", "--k", "2", "--format", "csv"}).out);
    CHECK(single_json(csv.err).contains("meta"));
}

TEST_CASE("verify command")
{
    auto r = run({"verify", "--suite", "palindrome", "--max-n", "6"});
    CHECK(r.code == kExitOk);
    auto j = single_json(r.out);
    CHECK(j["result"]["status"] == "pass");
    validate(j, load_schema());

    r = run({"verify", "--suite", "all", "--max-n", "6"});
    CHECK(r.code == kExitOk);
    j = single_json(r.out);
    bool rx52 = false;
    for (const auto& w : j["warnings"])
        rx52 = rx52 || w.get<std::string>().find("RX:5,2 Theorem 4.2") != std::string::npos;
    CHECK(rx52);
    CHECK(run({"verify", "--suite", "nonsense"}).code == kExitInvalid);
}

TEST_CASE("work cap from the environment")
{
    setenv("TOPOINV_WORK_CAP", "abc", 1);
    CHECK(run({"cuplength", "RV:5,2"}).code == kExitInvalid);
    setenv("TOPOINV_WORK_CAP", "4", 1);
    auto r = run({"cuplength", "RV:8,4", "--mode", "oracle"});
    CHECK(r.code == kExitInvalid);
    CHECK(single_json(r.err)["error"]["type"] == "dimension_cap_exceeded");
    unsetenv("TOPOINV_WORK_CAP");
    CHECK(run({"cuplength", "RV:8,4", "--mode", "oracle"}).code == kExitOk);
}

TEST_CASE("help")
{
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("S4n-1:5 is S^19") != std::string::npos);
}
