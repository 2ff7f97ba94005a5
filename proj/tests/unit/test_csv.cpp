#include "aafermi/csv.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>

using namespace aafermi;

TEST_CASE("doubles round-trip bit-exactly through text") {
  testing::Draws d(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const double v = d.uniform(-1, 1) * std::pow(10.0, d.integer(-300, 300));
    const double back = parse_double(format_double(v));
    CHECK(std::memcmp(&v, &back, sizeof v) == 0);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(233) == "233");
  CHECK_THROWS_AS(parse_double("1.0x"), std::invalid_argument);
}

TEST_CASE("config tags are parsable") {
  testing::Draws d(78);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = testing::random_config(d, d.integer(3, 1000), trial % 2 ? Boundary::open : Boundary::periodic);
    c.impurity_site = -1;
    CHECK(lattice_config_from_tag(lattice_config_tag(c)) == c);
  }
  CHECK_THROWS_AS(lattice_config_from_tag("L=5 colour=red"), std::invalid_argument);
}

TEST_CASE("ini parsing") {
  std::istringstream in("top = 1\n[a]\n x = 2 ; note\n# comment\n[b]\ny=hello world\n");
  const auto doc = parse_ini(in);
  CHECK(doc.at("").at("top") == "1");
  CHECK(doc.at("a").at("x") == "2");
  CHECK(doc.at("b").at("y") == "hello world");
  std::istringstream dup("[a]\nx=1\nx=2\n");
  CHECK_THROWS_AS(parse_ini(dup), std::invalid_argument);
  std::istringstream bad("[a\n");
  CHECK_THROWS_AS(parse_ini(bad), std::invalid_argument);
}

TEST_CASE("echo series file layout") {
  LatticeConfig c;
  c.length = 5;
  c.potential_strength = 1.0;
  c.impurity_coupling = 0.2;
  const auto s = decoherence_series(c, TimeGrid(2.0, 3));
  std::ostringstream os;
  write_echo_series(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::vector<std::string> data;
  std::string header;
  while (std::getline(in, line)) {
    if (line[0] == '#') continue;
    if (header.empty()) header = line;
    else data.push_back(line);
  }
  CHECK(header == "t,re_chi,im_chi,abs_chi,log10_abs_chi");
  REQUIRE(data.size() == 3);
  CHECK(data[0] == "0,1,0,1,0");
  const auto cols = split(data[2], ',');
  CHECK(parse_double(cols[0]) == 2.0);
  CHECK(parse_double(cols[3]) == s.magnitude[2]);
}
