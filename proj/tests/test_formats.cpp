#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "qmod/errors.hpp"
#include "qmod/formats.hpp"
#include "qmod/registry.hpp"

using namespace qmod;

namespace {

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qmod_format_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("algebra text round-trips for every built-in algebra") {
    for (const auto& id : registry_algebra_ids()) {
        CAPTURE(id);
        AlgebraPtr alg = registry_algebra(id);
        AlgebraPtr back = parse_algebra_text(algebra_text(alg));
        CHECK(back->signature() == alg->signature());
    }
    AlgebraPtr sq = fixtures::square(3);
    CHECK(parse_algebra_text(algebra_text(sq))->signature() == sq->signature());
}

TEST_CASE("algebra parsing accepts comments and negative coefficients") {
    const std::string text =
        "# commuting square\n"
        "modulus 3\n"
        "vertices a b c d\n"
        "arrow ab a b\n"
        "arrow bd b d   # long way round\n"
        "arrow ac a c\n"
        "arrow cd c d\n"
        "\n"
        "relation 1 ab bd + -1 ac cd\n";
    AlgebraPtr alg = parse_algebra_text(text);
    CHECK(alg->signature() == fixtures::square(3)->signature());
    CHECK_FALSE(alg->hereditary());
}

TEST_CASE("algebra parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_algebra_text(""), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("vertices a\nmodulus 2\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nmodulus 2\nvertices a\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nvertices a a\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus x\nvertices a\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nvertices a b\nedge e a b\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nvertices a b\narrow e a z\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nvertices a b\narrow e a b\narrow e b a\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_algebra_text("modulus 2\nvertices a\nrelation 1 e e\n"), ParseError);

    const std::string base = "modulus 2\nvertices a b c\narrow e a b\narrow f b c\n";
    CHECK_THROWS_AS(parse_algebra_text(base + "relation 1 f e\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text(base + "relation 2 e f\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text(base + "relation 1\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text(base + "relation 1 e f + 1 e\n"), ParseError);
}

TEST_CASE("module text round-trips against the built-in reference") {
    AlgebraPtr k2 = registry_algebra("k2");
    Module p0 = projective_module(k2, 0);
    std::string text = module_text(p0, "k2");
    Module back = parse_module_text(text);
    CHECK(back.dims == p0.dims);
    for (int a = 0; a < k2->num_arrows(); ++a) CHECK(back.action[a] == p0.action[a]);
    CHECK(check_module(back).ok);
}

TEST_CASE("module files resolve algebra paths relative to their directory") {
    auto dir = scratch_dir();
    write_file(dir / "two.alg", algebra_text(registry_algebra("k2")));
    write_file(dir / "p0.mod",
               "algebra two.alg\n"
               "dims 1 2\n"
               "matrix a 1 0\n"
               "matrix b 0 1\n");
    Module x = load_module((dir / "p0.mod").string());
    CHECK(x.dims == std::vector<int>{1, 2});
    CHECK(check_module(x).ok);
    CHECK(iso_test(x, projective_module(registry_algebra("k2"), 0)));
    CHECK_THROWS_AS(load_module((dir / "absent.mod").string()), ParseError);
}

TEST_CASE("module parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_module_text(""), ParseError);
    CHECK_THROWS_AS(parse_module_text("dims 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims 1\n"), ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims 1 2\nmatrix a 1 0\nmatrix z 0 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims 1 2\nmatrix a 1 0\nmatrix b 0 2\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims 1 2\nmatrix a 1 0 1\nmatrix b 0 1\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_module_text("algebra k2\ndims 1 2\nmatrix a 1 0\nmatrix a 0 1\nmatrix b 0 1\n"),
        ParseError);
    CHECK_THROWS_AS(parse_module_text("algebra k2\ndims -1 2\n"), ParseError);
}

TEST_CASE("zero-dimensional components take empty matrix directives") {
    Module x = parse_module_text(
        "algebra k2\n"
        "dims 0 1\n"
        "matrix a\n"
        "matrix b\n");
    CHECK(x.dims == std::vector<int>{0, 1});
    CHECK(check_module(x).ok);
}

TEST_CASE("canonical module order sorts by length then dimensions") {
    AlgebraPtr k2 = registry_algebra("k2");
    Module s1 = simple_module(k2, 0);
    Module s2 = simple_module(k2, 1);
    Module p0 = projective_module(k2, 0);
    CHECK(module_order_less(s1, p0));
    CHECK(module_order_less(s2, s1));
    CHECK_FALSE(module_order_less(s1, s2));
    CHECK_FALSE(module_order_less(p0, p0));
}

TEST_CASE("documents render in all three formats") {
    nlohmann::json doc = make_document("demo");
    doc["summary"] = "two rows";
    doc["columns"] = {"name", "value"};
    doc["rows"] = nlohmann::json::array();
    doc["rows"].push_back({{"name", "alpha"}, {"value", 3}});
    doc["rows"].push_back({{"name", "b"}, {"value", "x"}});
    doc["notes"] = {"capped"};

    std::string js = render_document(doc, "json");
    CHECK(js.find("\"schema\": \"qmod/1\"") != std::string::npos);
    CHECK(nlohmann::json::parse(js)["kind"] == "demo");

    std::string tsv = render_document(doc, "tsv");
    CHECK(tsv == "name\tvalue\nalpha\t3\nb\tx\n# capped\n");

    std::string text = render_document(doc, "text");
    CHECK(text.find("two rows") != std::string::npos);
    CHECK(text.find("alpha") != std::string::npos);
    CHECK(text.find("note: capped") != std::string::npos);

    CHECK_THROWS_AS(render_document(doc, "yaml"), ValidationError);
}
