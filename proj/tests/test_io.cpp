#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>

#include "quadnet/families.hpp"
#include "quadnet/io.hpp"

using namespace quadnet;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is);
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("quadnet_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("write_ppm: grayscale bytes are pinned", "[io]") {
  TempDir tmp;
  EscapeRaster r{GridSpec{0, 1, 0, 1, 2, 2}, 50, 20.0, {-1, 1, 50, 25}};
  const std::string path = tmp / "r.ppm";
  write_ppm(r, Palette::grayscale, path);
  const std::string bytes = slurp(path);
  const std::string header = "P6\n2 2\n255\n";
  REQUIRE(bytes.substr(0, header.size()) == header);
  const auto px = [&](int i) { return static_cast<unsigned char>(bytes[header.size() + i]); };
  REQUIRE(px(0) == 0);    // bounded -> black
  REQUIRE(px(3) == 250);  // round(255 * 49/50)
  REQUIRE(px(6) == 0);    // escape at K: t = 1
  REQUIRE(px(9) == 128);  // round(255 * 25/50) = round(127.5)
  for (int i : {0, 3, 6, 9}) {
    REQUIRE(px(i) == px(i + 1));
    REQUIRE(px(i) == px(i + 2));
  }
}

TEST_CASE("write_ppm: identical rasters give identical bytes", "[io]") {
  TempDir tmp;
  const GridSpec g{-2, 1, -1.5, 1.5, 60, 60};
  const EscapeRaster r = equi_m_raster(self_drive(-1, -1), g, 50, 20.0);
  write_ppm(r, Palette::banded, tmp / "a.ppm");
  write_ppm(r, Palette::banded, tmp / "b.ppm");
  REQUIRE(slurp(tmp / "a.ppm") == slurp(tmp / "b.ppm"));
}

TEST_CASE("raster round trips are bit exact", "[io]") {
  TempDir tmp;
  const GridSpec g{-2, 1, -1.5, 1.5, 40, 30};
  const EscapeRaster r = equi_m_raster(self_drive(-1.0 / 3, -1.0 / 3), g, 50, 20.0);
  save_escape_raster(r, tmp / "er");
  const EscapeRaster back = load_escape_raster(tmp / "er");
  REQUIRE(back.data == r.data);
  REQUIRE(back.max_iter == r.max_iter);
  REQUIRE(back.grid.re_min == r.grid.re_min);

  const auto nets = enumerate_configurations(ConfigurationFamily::edge_count_family(3, 7));
  const FractionRaster fr = core_uni_j(nets, {-1.15, 0.26}, GridSpec{-2, 2, -2, 2, 30, 30},
                                       40, 20.0);
  save_fraction_raster(fr, tmp / "fr");
  const FractionRaster fback = load_fraction_raster(tmp / "fr");
  REQUIRE(fback.data == fr.data);
  REQUIRE(fback.config_count == fr.config_count);
}

TEST_CASE("network json: round trip and equi shorthand", "[io]") {
  TempDir tmp;
  const Network net = self_drive(-1, -1, {-1, 0});
  {
    std::ofstream os(tmp / "net.json");
    os << network_to_json(net).dump(2);
  }
  const Network back = read_network_json(tmp / "net.json");
  REQUIRE(back.n == net.n);
  REQUIRE(back.adjacency == net.adjacency);
  REQUIRE(back.weights == net.weights);
  REQUIRE(back.params == net.params);

  {
    std::ofstream os(tmp / "equi.json");
    os << R"({"n":2,"adjacency":[[1,0],[0,1]],"weights":[[1,0],[0,1]],"c":[-0.5,0.25]})";
  }
  const Network equi = read_network_json(tmp / "equi.json");
  REQUIRE(equi.params == std::vector<Complex>{{-0.5, 0.25}, {-0.5, 0.25}});
}

TEST_CASE("network json: schema errors name the offending field", "[io]") {
  TempDir tmp;
  {
    std::ofstream os(tmp / "bad.json");
    os << R"({"n":3,"adjacency":[[1,0,0],[1,1,0],[1,1]],"weights":[[1,0,0],[-1,1,0],[1,1,-1]],"c":[-1,0]})";
  }
  try {
    read_network_json(tmp / "bad.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.path == "adjacency/2");
  }

  {
    std::ofstream os(tmp / "bad2.json");
    os << R"({"n":1,"adjacency":[[2]],"weights":[[1]],"c":[0,0]})";
  }
  try {
    read_network_json(tmp / "bad2.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.path == "adjacency/0/0");
  }

  {
    std::ofstream os(tmp / "bad3.json");
    os << R"({"n":1,"weights":[[1]],"c":[0,0]})";
  }
  REQUIRE_THROWS_AS(read_network_json(tmp / "bad3.json"), ConfigError);
}

TEST_CASE("complex flag parsing", "[io]") {
  REQUIRE(parse_complex("-1.15+0.26i") == Complex{-1.15, 0.26});
  REQUIRE(parse_complex("-0.117-0.856i") == Complex{-0.117, -0.856});
  REQUIRE(parse_complex("0.5") == Complex{0.5, 0.0});
  REQUIRE(parse_complex("-1") == Complex{-1.0, 0.0});
  REQUIRE(parse_complex("2i") == Complex{0.0, 2.0});
  REQUIRE(parse_complex("-i") == Complex{0.0, -1.0});
  REQUIRE(parse_complex("1e-3+2e-4i") == Complex{1e-3, 2e-4});
  REQUIRE_THROWS_AS(parse_complex("banana"), ConfigError);
  REQUIRE_THROWS_AS(parse_complex("1+2"), ConfigError);
  REQUIRE(parse_complex(format_complex({-0.06, -0.68})) == Complex{-0.06, -0.68});
}

TEST_CASE("adjacency hex bitmask", "[io]") {
  // 111110110 -> 1F6
  const Network net(3, {1, 1, 1, 1, 1, 0, 1, 1, 0},
                    std::vector<double>(9, 1.0 / 3), std::vector<Complex>(3, {0, 0}));
  REQUIRE(adjacency_hex(net) == "1f6");
  const Network one = single_node();
  REQUIRE(adjacency_hex(one) == "1");
}
