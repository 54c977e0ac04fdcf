#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "soa/json_io.hpp"

using namespace soa;

namespace {

Json fixture_json(const std::string& name) {
    return load_json(oracle::fixture(name));
}

std::string error_of(const Json& j) {
    try {
        presentation_from_json(j);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("shipped presentations are valid") {
    for (const char* name : {"gen_split_epi.json", "gen_abc.json", "gen_square.json", "gen_growth.json"}) {
        CAPTURE(name);
        Presentation p = load_presentation(oracle::fixture(name));
        CHECK(validate(p).ok());
        CHECK(p.level_one().violations().empty());
    }
    CHECK(load_presentation(oracle::fixture("gen_split_epi.json")).is_double());
    CHECK(load_presentation(oracle::fixture("gen_abc.json")).is_double());
    CHECK_FALSE(load_presentation(oracle::fixture("gen_growth.json")).is_double());
}

TEST_CASE("composable pairs of the abc fixture") {
    Presentation p = load_presentation(oracle::fixture("gen_abc.json"));
    ComposablePairs cp = composable_pairs(p);
    const auto& V = p.vertical;
    std::set<std::pair<std::string, std::string>> names;
    bool found = false;
    for (std::size_t k = 0; k < cp.pairs.size(); ++k) {
        const auto [i, j] = cp.pairs[k];
        names.emplace(V.object_name(i), V.object_name(j));
        if (V.object_name(i) == "a" && V.object_name(j) == "b") {
            found = true;
            CHECK(V.object_name(cp.composite[k]) == "c");
        }
        // U2 = U1 ∘ m
        CHECK(cp.generators.images[k].map() == p.umaps[cp.composite[k]]);
        CHECK(p.vtgt[i] == p.vsrc[j]);
    }
    CHECK(found);
    // composable pairs counted by hand: three identities squared plus seven mixed pairs
    CHECK(cp.pairs.size() == 10);
    CHECK(names.size() == 10);
    CHECK(cp.generators.violations().empty());
}

TEST_CASE("composable pairs carry squares in the gen_square fixture") {
    Presentation p = load_presentation(oracle::fixture("gen_square.json"));
    ComposablePairs cp = composable_pairs(p);
    CHECK(cp.generators.violations().empty());
    std::size_t non_identity = 0;
    for (std::size_t a = 0; a < cp.generators.shape.num_arrows(); ++a) {
        non_identity += cp.generators.shape.is_identity(a) ? 0 : 1;
    }
    CHECK(non_identity > 0);
    CHECK_THROWS_AS(composable_pairs(load_presentation(oracle::fixture("gen_growth.json"))), InvalidPresentation);
}

TEST_CASE("a non-commuting square is reported by name") {
    Json j = parse_json(R"({
      "objects": {"a": 1, "b": 1, "c": 2, "d": 2},
      "hmorphisms": [{"name": "t", "dom": "a", "cod": "c", "table": [0]},
                     {"name": "s", "dom": "b", "cod": "d", "table": [1]}],
      "vmorphisms": [{"name": "v", "vdom": "a", "vcod": "b", "umap": {"dom": 1, "cod": 1, "table": [0]}},
                     {"name": "w", "vdom": "c", "vcod": "d", "umap": {"dom": 2, "cod": 2, "table": [0, 1]}}],
      "squares": [{"name": "r", "vsrc": "v", "vdst": "w", "h_top": "t", "h_bot": "s"}]
    })");
    CHECK_THROWS_AS(presentation_from_json(j), InvalidPresentation);
    CHECK(error_of(j).find("square r does not commute") != std::string::npos);
}

TEST_CASE("missing and wrong vertical composites") {
    Json j = fixture_json("gen_abc.json");
    j.erase("vcomp");
    CHECK(error_of(j).find("no composite given for (a, b)") != std::string::npos);

    Json wrong = fixture_json("gen_abc.json");
    wrong["vcomp"].push_back(parse_json(R"({"left": "a", "right": "e2", "result": "c"})"));
    const std::string message = error_of(wrong);
    CHECK(message.find("vertical-composition") != std::string::npos);
}

TEST_CASE("vertical composites must be realised by composite maps") {
    Json j = fixture_json("gen_abc.json");
    j["vmorphisms"][2]["umap"] = parse_json(R"({"dom": 0, "cod": 1, "table": []})");
    CHECK(error_of(j).empty());
    j["objects"]["o3"] = 2;
    j["vmorphisms"][1]["umap"] = parse_json(R"({"dom": 1, "cod": 2, "table": [0]})");
    j["vmorphisms"][2]["umap"] = parse_json(R"({"dom": 0, "cod": 2, "table": []})");
    j["vmorphisms"][5]["umap"] = parse_json(R"({"dom": 2, "cod": 2, "table": [1, 0]})");
    CHECK(error_of(j).find("vertical-identity") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_presentation("{\n  \"objects\": {\"z\": 0,,}\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2, column") != std::string::npos);
    }
}

TEST_CASE("unknown names and keys are parse errors") {
    Json j = fixture_json("gen_split_epi.json");
    j["vmorphisms"][0]["vcod"] = "nowhere";
    CHECK_THROWS_AS(presentation_from_json(j), ParseError);
    CHECK(error_of(j).find("nowhere") != std::string::npos);

    Json k = fixture_json("gen_split_epi.json");
    k["extra"] = 1;
    CHECK_THROWS_AS(presentation_from_json(k), ParseError);

    Json m = fixture_json("gen_split_epi.json");
    m["vid"].erase("o");
    CHECK(error_of(m).find("no vertical identity for object 'o'") != std::string::npos);
}

TEST_CASE("serialisation is idempotent on canonical forms") {
    for (const char* name : {"gen_split_epi.json", "gen_abc.json", "gen_square.json", "gen_growth.json"}) {
        CAPTURE(name);
        Presentation p = load_presentation(oracle::fixture(name));
        const std::string once = dump(to_json(p));
        const std::string twice = dump(to_json(parse_presentation(once)));
        CHECK(once == twice);
        Presentation q = parse_presentation(once);
        CHECK(q.umaps == p.umaps);
        CHECK(q.vertical.composites() == p.vertical.composites());
        CHECK(q.vstructure.has_value() == p.vstructure.has_value());
        if (p.vstructure) {
            CHECK(q.vstructure->vcomp == p.vstructure->vcomp);
            CHECK(q.vstructure->square_vcomp == p.vstructure->square_vcomp);
        }
    }
}
