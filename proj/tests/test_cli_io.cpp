#include <cmath>
#include <cstdio>
#include <limits>

#include "doctest.h"
#include "polegrad/kv.hpp"

using namespace polegrad;

TEST_CASE("kv parse handles comments, blanks and padding") {
  const std::string text =
      "# run settings\n"
      "\n"
      "seed = 42\n"
      "  lr=0.02  \n"
      "name = cart pole\n";
  const KvMap map = kv_parse(text);
  REQUIRE(map.size() == 3);
  CHECK(map.at("seed") == "42");
  CHECK(map.at("lr") == "0.02");
  CHECK(map.at("name") == "cart pole");
}

TEST_CASE("kv serialize/parse round trip") {
  KvMap map{{"a", "1"}, {"b", "hello"}, {"gamma", "0.99"}};
  CHECK(kv_parse(kv_serialize(map)) == map);
}

TEST_CASE("kv save/load round trip through a file") {
  KvMap map{{"seed", "7"}, {"out", "runs/x"}};
  const std::string path = "kv_roundtrip_test.txt";
  kv_save(map, path);
  CHECK(kv_load(path) == map);
  std::remove(path.c_str());
}

TEST_CASE("kv_load on a missing file throws") {
  CHECK_THROWS(kv_load("definitely_missing_file_xyz.txt"));
}

TEST_CASE("format_double round-trips exactly") {
  const double values[] = {0.0,
                           1.0,
                           -1.0,
                           0.1,
                           1.0 / 3.0,
                           2.9701,
                           -5e-324,
                           std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::epsilon(),
                           9.8,
                           0.2617993877991494};
  for (double v : values) {
    CHECK(parse_double(format_double(v)) == v);
  }
  // Shortest form: simple values print simply.
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("strict numeric parsing rejects junk") {
  CHECK(parse_double("2.5") == 2.5);
  CHECK(parse_long("42") == 42);
  CHECK(parse_long("-3") == -3);
  CHECK_THROWS(parse_double("2.5x"));
  CHECK_THROWS(parse_double(""));
  CHECK_THROWS(parse_long("1.5"));
  CHECK_THROWS(parse_long("abc"));
}
