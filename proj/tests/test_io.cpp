#include "support.hpp"

#include "liex/io.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>

using namespace liex;
using namespace testing;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("liex_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("tensor documents round trip") {
    const std::string path = fixtures_dir() + "/crmhd_beta1.json";
    Json raw = read_json_file(path);
    TensorDocument doc = read_document(path);
    CHECK(doc.tensor == crmhd(Scalar(1)));
    CHECK(doc.meta.at("beta") == "1");
    CHECK(to_json(doc).dump() == raw.dump());

    ExtensionTensor complex_entry = leibniz(2);
    complex_entry(1, 0, 0) = q(1, 2) - q(3) * I;
    TensorDocument d2{complex_entry, Json{{"name", "x"}}};
    Json j = to_json(d2);
    CHECK(j["w"][1][0][0] == "1/2-3 i");
    CHECK(document_from_json(Json::parse(j.dump())).tensor == complex_entry);
    CHECK(to_json(document_from_json(j)).dump() == j.dump());
}

TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(read_json_file(temp_file("empty.json", "")), ParseError);
    CHECK_THROWS_AS(read_json_file(temp_file("bad.json", "{\"n\": ")), ParseError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"n": 1, "w": [[["0"]]]})")), ParseError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"n": 1, "semidirect": false, "w": [[["zz"]]]})")), ParseError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"n": 2, "semidirect": false, "w": [[["0"]]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"n": 1, "semidirect": false, "w": [[["0", "1"]]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"([1, 2])")), ParseError);
}

TEST_CASE("witness chains round trip") {
    std::vector<BasisChange> chain{BasisChange(mat({{1, 1}, {I, -I}}), q(2)), BasisChange::identity(2)};
    Json j = to_json(chain);
    CHECK(j[0]["scale"] == "2");
    std::vector<BasisChange> back = chain_from_json(Json::parse(j.dump()));
    REQUIRE(back.size() == 2);
    CHECK(back[0] == chain[0]);
    CHECK(back[1] == chain[1]);
    CHECK_THROWS_AS(basis_change_from_json(Json::parse(R"({"m": [["1", "0"]]})")), DimensionMismatch);
}

TEST_CASE("families round trip") {
    for (const CasimirFamily& f : synthesize_casimirs(crmhd(q(5, 2)))) {
        Json j = to_json(f);
        CHECK(j.at("notation") == to_notation(f));
        CasimirFamily back = family_from_json(Json::parse(j.dump()));
        CHECK(same_family(back, f));
        CHECK(to_json(back).dump() == j.dump());
    }
}

TEST_CASE("matrices round trip") {
    ExactMatrix m = mat({{q(1, 3), I}, {0, q(-2)}});
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1"], ["1", "2"]])")), ParseError);
}
