#include <doctest.h>

#include "jtower/io.hpp"

using namespace jtower;
using nlohmann::json;

namespace {

json trivial_file() {
  return json::parse(R"({
    "format": "jtower-extension/1", "name": "k", "field": "Q",
    "M": {"dim": 1, "unit": ["1"], "structure": [[0, 0, 0, "1"]]},
    "N": {"dim": 1, "embedding": [["1"]]},
    "E": [["1"]]
  })");
}

}  // namespace

TEST_CASE("extension files round-trip for every catalog example") {
  for (const auto& name : example_names()) {
    Example ex = generate_example(name);
    json j = extension_to_json(ex.ext);
    ExtensionInput back = extension_from_json(j);
    CHECK_MESSAGE(extension_to_json(back).dump() == j.dump(), name);
    CHECK(back.M.dim() == ex.ext.M.dim());
    CHECK(back.N.dim() == ex.ext.N.dim());
  }
}

TEST_CASE("integer scalars are accepted alongside strings") {
  json j = trivial_file();
  j["M"]["structure"][0][3] = 1;
  j["E"][0][0] = 1;
  ExtensionInput ext = extension_from_json(j);
  CHECK(ext.E->operator()(0, 0).is_one());
}

TEST_CASE("malformed extension files raise InputError") {
  json bad_index = trivial_file();
  bad_index["M"]["structure"][0][2] = 3;
  CHECK_THROWS_AS(extension_from_json(bad_index), InputError);

  json bad_arity = trivial_file();
  bad_arity["M"]["structure"][0] = json::array({0, 0, "1"});
  CHECK_THROWS_AS(extension_from_json(bad_arity), InputError);

  json bad_scalar = trivial_file();
  bad_scalar["M"]["structure"][0][3] = "1/0";
  CHECK_THROWS_AS(extension_from_json(bad_scalar), InputError);

  json bad_format = trivial_file();
  bad_format["format"] = "other/1";
  CHECK_THROWS_AS(extension_from_json(bad_format), InputError);

  json bad_field = trivial_file();
  bad_field["field"] = "R";
  CHECK_THROWS_AS(extension_from_json(bad_field), InputError);

  json bad_shape = trivial_file();
  bad_shape["E"] = json::array({json::array({"1", "0"})});
  CHECK_THROWS_AS(extension_from_json(bad_shape), InputError);

  json dependent = trivial_file();
  dependent["N"] = {{"dim", 1}, {"embedding", json::array({json::array({"0"})})}};
  CHECK_THROWS_AS(extension_from_json(dependent), InputError);

  json missing = trivial_file();
  missing.erase("M");
  CHECK_THROWS_AS(extension_from_json(missing), InputError);
}

TEST_CASE("scalars over F_p reduce and reject non-invertible denominators") {
  json j = trivial_file();
  j["field"] = "F_7";
  j["E"][0][0] = "8";
  ExtensionInput ext = extension_from_json(j);
  CHECK(ext.E->operator()(0, 0).is_one());
  j["E"][0][0] = "1/7";
  CHECK_THROWS_AS(extension_from_json(j), InputError);
}

TEST_CASE("pairing files round-trip in all antipode modes") {
  Field f = Field::rational();
  Group g = cyclic_group(2);
  PairingInput p{"z2", function_algebra(f, g), group_algebra(f, g), Matrix::identity(f, 2), AntipodeMode::derive,
                 std::nullopt};
  json j = pairing_to_json(p);
  CHECK(j["antipode"] == "derive");
  CHECK(pairing_to_json(pairing_from_json(j)).dump() == j.dump());

  p.mode = AntipodeMode::skip;
  CHECK(pairing_from_json(pairing_to_json(p)).mode == AntipodeMode::skip);

  p.mode = AntipodeMode::supplied;
  p.S = Matrix::identity(f, 2);
  PairingInput back = pairing_from_json(pairing_to_json(p));
  CHECK(back.mode == AntipodeMode::supplied);
  CHECK(*back.S == Matrix::identity(f, 2));

  json bad = pairing_to_json(p);
  bad["P"] = json::array({json::array({"1"})});
  CHECK_THROWS_AS(pairing_from_json(bad), InputError);
}

TEST_CASE("FNV-1a digests match the reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("unreadable files raise InputError") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/jtower.json"), InputError);
}
