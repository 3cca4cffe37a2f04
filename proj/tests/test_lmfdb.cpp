#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "levelraiser/error.hpp"
#include "levelraiser/json_io.hpp"
#include "levelraiser/lmfdb_client.hpp"

using namespace levelraiser;
using namespace levelraiser::lmfdb;

namespace {

ClientOptions offline() {
  ClientOptions o = default_options();
  o.offline = true;
  return o;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("fixtures by label") {
  auto r11 = fetch_curve("11.a2", offline());
  CHECK(r11.conductor == 11);
  CHECK(r11.isogeny_class_size == 3);
  CHECK(r11.source == "fixture");
  CHECK(r11.curve() == ec::EllipticCurve::parse("0,-1,1,-10,-20"));
  auto r43 = fetch_curve("43.a1", offline());
  CHECK(r43.conductor == 43);
  CHECK(r43.isogeny_class_size == 1);
}

TEST_CASE("fixtures by a-invariants") {
  auto r = fetch_curve("0,1,1,0,0", offline());
  CHECK(r.label == "43.a1");
}

TEST_CASE("unknown label offline") {
  try {
    fetch_curve("389.a1", offline());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NetworkUnavailable);
  }
}

TEST_CASE("crosscheck against point counting") {
  auto r43 = fetch_curve("43.a1", offline());
  auto rep = crosscheck_ap(r43.curve(), r43, 50);
  CHECK(rep.compared == 14);  // primes below 50 except 43
  auto r11 = fetch_curve("11.a2", offline());
  CHECK(crosscheck_ap(r11.curve(), r11, 100).compared == 24);
  CHECK(crosscheck_ap(r43.curve(), r43, 1).compared == 0);
}

TEST_CASE("perturbed fixture raises Mismatch at the flipped prime") {
  auto r43 = fetch_curve("43.a1", offline());
  for (auto& [p, a] : r43.aplist)
    if (p == 13) a = -a;
  try {
    crosscheck_ap(r43.curve(), r43, 50);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Mismatch);
    CHECK(std::string(e.what()).find("13") != std::string::npos);
  }
  CHECK_NOTHROW(crosscheck_ap(r43.curve(), r43, 12));
}

TEST_CASE("fixture replay is byte-deterministic") {
  const std::filesystem::path path = std::filesystem::path(default_options().fixture_dir) / "43.a1.json";
  auto a = json_io::record(load_fixture(path.string())).dump();
  auto b = json_io::record(load_fixture(path.string())).dump();
  CHECK(a == b);
  auto back = json_io::parse_record(json_io::json::parse(a));
  CHECK(json_io::record(back).dump() == a);
  auto file = json_io::json::parse(read_file(path));
  auto normalized = json_io::json::parse(a);
  file.erase("source");
  normalized.erase("source");
  CHECK(file == normalized);
}

TEST_CASE("fixture directory override") {
  const auto dir = std::filesystem::temp_directory_path() / "levelraiser_fixture_test";
  std::filesystem::create_directories(dir);
  auto rec = fetch_curve("11.a2", offline());
  rec.label = "11.a9";
  {
    std::ofstream out(dir / "11.a9.json");
    out << json_io::record(rec).dump(2);
  }
  ClientOptions o;
  o.fixture_dir = dir.string();
  o.offline = true;
  CHECK(fetch_curve("11.a9", o).conductor == 11);
  CHECK_THROWS_AS(fetch_curve("43.a1", o), Error);
  std::filesystem::remove_all(dir);
}
