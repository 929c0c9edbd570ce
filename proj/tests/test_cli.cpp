#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "eawg/cli.hpp"
#include "eawg/error.hpp"
#include "support.hpp"

using namespace eawg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string &name, const std::string &text) {
  const fs::path dir = fs::temp_directory_path() / "eawg_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

fs::path write_spec(const std::string &name, const EarsSpec &spec) {
  return write_temp(name, to_json(spec).dump());
}

}  // namespace

TEST_CASE("spec json parsing") {
  const RawSpec raw = parse_spec_json(
      R"({"type":"F4","nullity":2,"twist":1,"supp1":[[],[1]],"supp2":[[],[1]],"label":"x"})");
  CHECK(raw.rank == 4);
  CHECK(raw.label == "x");
  CHECK(validate_spec(raw).type().name() == "F4");
  const EarsSpec spec = test::make("C", 3, 3, 1, {{}, {1}}, {{}, {1}, {2}});
  CHECK(to_raw(validate_spec(raw_spec_from_json(to_json(spec)))).supp2 == to_raw(spec).supp2);
  for (const char *bad : {R"({"type":)", R"([1,2])", R"({"type":"B","rank":3,"nullity":1,"twist":1,"supp1":[[],[1]],"supp2":[[]],"color":1})",
                          R"({"type":"B","nullity":1,"twist":1,"supp1":[[],[1]],"supp2":[[]]})",
                          R"({"type":"B","rank":"3","nullity":1,"twist":1,"supp1":[[],[1]],"supp2":[[]]})",
                          R"({"type":"B","rank":3,"nullity":1,"twist":1,"supp1":[[],1],"supp2":[[]]})"}) {
    CAPTURE(bad);
    try {
      parse_spec_json(bad);
      FAIL("accepted");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::ParseError);
    }
  }
}

TEST_CASE("json serialization shapes") {
  const EarsSpec spec = test::lattice_spec("B", 3, 3, 3);
  const Json d = to_json(count_collections(spec));
  CHECK(d["inc"] == 2);
  CHECK(d["n0"] == 1);
  CHECK(d["pbc"] == false);
  CHECK(d["witnesses"] == Json::parse("[[[1,2,3]]]"));
  CHECK(d["corollaries"].is_array());
  const Json c = to_json(center_structure(spec));
  CHECK(c == Json::parse(R"({"free_rank":3,"torsion":[2]})"));
  const Json v = to_json(verify_pox_images(test::lattice_spec("G2", 2, 1, 1)));
  REQUIRE(v.is_array());
  CHECK(v[0].contains("identity"));
  CHECK(v[0].contains("indices"));
  CHECK(v[0].contains("pass"));
  CHECK(pretty(Json::parse(R"({"a":[[1],[2]],"b":{"c":[]}})")) == "{\n  \"a\": [[1],[2]],\n  \"b\": {\n    \"c\": []\n  }\n}");
}

TEST_CASE("check exit codes") {
  const auto f4 = write_spec("f4.json", test::lattice_spec("F4", 4, 3, 1));
  const auto b3 = write_spec("b3.json", test::lattice_spec("B", 3, 3, 3));
  const auto bad = write_temp("bad.json", "{\"type\": ");
  Run r = cli({"check", f4.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("PbC=true") != std::string::npos);
  r = cli({"check", b3.string()});
  CHECK(r.code == 3);
  CHECK(r.out.find("Inc=2") != std::string::npos);
  CHECK(r.out.find("torsion [2]") != std::string::npos);
  r = cli({"check", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("ParseError") != std::string::npos);
  CHECK(cli({"check", (fs::temp_directory_path() / "eawg_cli_tests" / "missing.json").string()}).code == 1);
  CHECK(cli({"check", f4.string(), b3.string()}).code == 3);
  CHECK(cli({"check", f4.string(), b3.string(), bad.string()}).code == 1);
  r = cli({"check", "--json", "--max-witnesses", "0", b3.string()});
  CHECK(r.code == 3);
  const Json j = Json::parse(r.out);
  CHECK(j["version"] == std::string(kVersion));
  CHECK(j["reports"][0]["decision"]["inc"] == 2);
  CHECK(j["reports"][0]["decision"]["witnesses"].empty());
  CHECK(j["reports"][0]["center"]["torsion"] == Json::parse("[2]"));
  CHECK(j["reports"][0]["consistent"] == true);
}

TEST_CASE("run_check consistency and exit mapping") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const RunReport r = run_check(test::random_spec(rng, 4));
    CHECK(r.breaches.empty());
    CHECK(r.exit_code() == (r.decision.has_pbc ? ExitCode::Ok : ExitCode::NoPbc));
  }
  RunReport broken = run_check(test::lattice_spec("B", 3, 3, 3));
  broken.breaches.push_back("synthetic");
  CHECK(broken.exit_code() == ExitCode::Internal);
}

TEST_CASE("classify examples") {
  const ClassifyResult b3 = classify(FiniteType::make(TypeTag::B, 3), 3, 3, false);
  CHECK(b3.rows.size() == 16);
  for (const auto &row : b3.rows) CHECK(row.pbc == (row.s1.index() != 7));
  CHECK(b3.index7_rule == true);
  CHECK(b3.consistent());
  const ClassifyResult c3 = classify(FiniteType::make(TypeTag::C, 3), 3, 0, false);
  CHECK(c3.rows.size() == 16);
  for (const auto &row : c3.rows) CHECK(row.pbc == (row.s2.index() != 7));
  const ClassifyResult b2 = classify(FiniteType::make(TypeTag::B, 2), 3, 2, false);
  for (const auto &row : b2.rows) CHECK(row.pbc);
  CHECK(b2.pbc_false == 0);
  CHECK(classify(FiniteType::make(TypeTag::B, 3), 3, 3, true).rows.size() == 8);
  const ClassifyResult wide = classify(FiniteType::make(TypeTag::B, 3), 4, 4, true);
  CHECK_FALSE(wide.index7_rule.has_value());
  CHECK(wide.consistent());
  CHECK_THROWS_AS(classify(FiniteType::make(TypeTag::B, 3), 5, 3, true), Error);
}

TEST_CASE("classify output is deterministic") {
  const Run a = cli({"classify", "B", "3", "3", "3", "--no-perm"});
  const Run b = cli({"classify", "B", "3", "3", "3", "--no-perm"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("index7_rule=holds") != std::string::npos);
  const Run ja = cli({"classify", "B", "2", "4", "2", "--json"});
  const Run jb = cli({"classify", "B", "2", "4", "2", "--json"});
  CHECK(ja.out == jb.out);
  CHECK(Json::parse(ja.out)["summary"]["consistent"] == true);
  const Run big = cli({"classify", "B", "3", "5", "3"});
  CHECK(big.code == 1);
  CHECK(big.err.find("DimTooLarge") != std::string::npos);
}

TEST_CASE("verify examples") {
  const auto g2 = write_spec("g2.json", test::lattice_spec("G2", 2, 2, 1));
  const auto b2 = write_spec("b2.json", test::make("B", 2, 3, 2, {{}, {1}, {2}}, {{}, {1}}));
  Run r = cli({"verify", g2.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("all pass") != std::string::npos);
  r = cli({"verify", "--height", "2", "--json", b2.string()});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["runs"][0]["pass"] == true);
  CHECK(j["runs"][0]["orbit_cover"]["height_bound"] == 2);
  const auto corrupt = write_temp(
      "corrupt.json",
      R"({"type":"B","rank":3,"nullity":3,"twist":1,"supp1":[[],[1]],"supp2":[[],[1],[2]]})");
  r = cli({"verify", corrupt.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("LatticeRequired") != std::string::npos);
}

TEST_CASE("construct emits certified specs") {
  Run r = cli({"construct", "B", "3", "3", "--m1", "7"});
  REQUIRE(r.code == 0);
  EarsSpec spec = validate_spec(parse_spec_json(r.out));
  CHECK(spec.s1().index() == 7);
  const auto path = write_temp("constructed.json", r.out);
  CHECK(cli({"check", path.string()}).code == 3);
  r = cli({"construct", "C", "3", "0", "--m2", "7"});
  REQUIRE(r.code == 0);
  CHECK(validate_spec(parse_spec_json(r.out)).s2().index() == 7);
  r = cli({"construct", "B", "4", "4", "--m1", "12", "--m2", "0"});
  REQUIRE(r.code == 0);
  CHECK(validate_spec(parse_spec_json(r.out)).s1().index() == 12);
  CHECK(cli({"construct", "B", "3", "3", "--m1", "6"}).code == 1);
  CHECK(cli({"construct", "B", "3", "3"}).code == 1);
  CHECK(cli({"construct", "B", "4", "3", "--m1", "7", "--m2", "0"}).code == 1);
  CHECK(cli({"construct", "G2", "3", "3", "--m1", "7"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"classify", "B", "x", "3", "3"}).code == 1);
  const Run v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(std::string(kVersion)) != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}
