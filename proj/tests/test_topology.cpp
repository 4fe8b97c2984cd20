#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <random>

#include "quadnet/families.hpp"
#include "quadnet/topology.hpp"

using namespace quadnet;

namespace {

BinaryRaster make_mask(int w, int h, std::initializer_list<int> ones) {
  BinaryRaster b{GridSpec{0, 1, 0, 1, w, h}, std::vector<std::uint8_t>(
                                                 static_cast<std::size_t>(w) * h, 0)};
  for (int i : ones) b.mask[i] = 1;
  return b;
}

// independent oracle: BFS flood fill
int flood_fill_count(const BinaryRaster& b, Connectivity conn) {
  const int w = b.grid.width, h = b.grid.height;
  std::vector<std::uint8_t> seen(b.mask.size(), 0);
  int count = 0;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t i0 = b.grid.index(x0, y0);
      if (!b.mask[i0] || seen[i0]) continue;
      ++count;
      std::queue<std::pair<int, int>> q;
      q.push({x0, y0});
      seen[i0] = 1;
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (conn == Connectivity::Four && dx != 0 && dy != 0) continue;
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t ni = b.grid.index(nx, ny);
            if (b.mask[ni] && !seen[ni]) {
              seen[ni] = 1;
              q.push({nx, ny});
            }
          }
      }
    }
  return count;
}

BinaryRaster random_mask(std::mt19937_64& rng, int w, int h, double density) {
  BinaryRaster b{GridSpec{0, 1, 0, 1, w, h},
                 std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& m : b.mask) m = u(rng) < density ? 1 : 0;
  return b;
}

}  // namespace

TEST_CASE("count_components: basic cases", "[topology]") {
  REQUIRE(count_components(make_mask(4, 4, {}), Connectivity::Eight).count == 0);

  // two diagonally adjacent pixels
  const BinaryRaster diag = make_mask(4, 4, {0, 5});
  REQUIRE(count_components(diag, Connectivity::Eight).count == 1);
  REQUIRE(count_components(diag, Connectivity::Four).count == 2);
}

TEST_CASE("count_components: labels are consistent with the mask", "[topology]") {
  std::mt19937_64 rng(7);
  const BinaryRaster b = random_mask(rng, 40, 30, 0.45);
  const ComponentCount cc = count_components(b, Connectivity::Eight);
  int max_label = 0;
  for (std::size_t i = 0; i < b.mask.size(); ++i) {
    REQUIRE((cc.labels[i] != 0) == (b.mask[i] != 0));
    max_label = std::max(max_label, static_cast<int>(cc.labels[i]));
  }
  REQUIRE(max_label == cc.count);
  // 8-adjacent foreground pixels share labels
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) {
      if (!b.at(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= 40 || ny >= 30 || !b.at(nx, ny)) continue;
          REQUIRE(cc.labels[b.grid.index(x, y)] == cc.labels[b.grid.index(nx, ny)]);
        }
    }
}

TEST_CASE("count_components agrees with the flood-fill oracle", "[topology]") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const double density = 0.1 + 0.8 * (trial % 9) / 8.0;
    const BinaryRaster b = random_mask(rng, 50, 50, density);
    for (Connectivity conn : {Connectivity::Four, Connectivity::Eight})
      REQUIRE(count_components(b, conn).count == flood_fill_count(b, conn));
  }
}

TEST_CASE("dilate: radius conventions", "[topology]") {
  const BinaryRaster single = make_mask(5, 5, {12});
  const BinaryRaster d0 = dilate(single, 0.0);
  REQUIRE(d0.mask == single.mask);

  const BinaryRaster d1 = dilate(single, 1.0);
  REQUIRE(d1.count() == 9);  // one pixel margin = the 3x3 block
  const BinaryRaster d15 = dilate(single, 1.5);
  REQUIRE(d15.mask == d1.mask);  // sqrt(2) <= 1.5 < 2 adds nothing more
  const BinaryRaster d2 = dilate(single, 2.0);
  REQUIRE(d2.count() == 13);  // 3x3 block plus the four distance-2 offsets
}

TEST_CASE("dilate: extensive and monotone", "[topology]") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryRaster b = random_mask(rng, 30, 30, 0.2);
    const BinaryRaster d1 = dilate(b, 1.0);
    const BinaryRaster d2 = dilate(b, 2.0);
    for (std::size_t i = 0; i < b.mask.size(); ++i) {
      if (b.mask[i]) REQUIRE(d1.mask[i]);
      if (d1.mask[i]) REQUIRE(d2.mask[i]);
    }
    const BinaryRaster dd = dilate(d1, 1.0);
    for (std::size_t i = 0; i < b.mask.size(); ++i)
      if (d1.mask[i]) REQUIRE(dd.mask[i]);
  }
}

TEST_CASE("component_count_blowup never exceeds the plain count", "[topology]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const BinaryRaster b = random_mask(rng, 40, 40, 0.25);
    const int plain = count_components(b, Connectivity::Eight).count;
    const int blown1 = component_count_blowup(b, 1.0, Connectivity::Eight);
    const int blown2 = component_count_blowup(b, 2.0, Connectivity::Eight);
    REQUIRE(blown1 <= plain);
    REQUIRE(blown2 <= blown1);
  }
  REQUIRE(component_count_blowup(make_mask(6, 6, {}), 1.0) == 0);
  REQUIRE(component_count_blowup(make_mask(6, 6, {14}), 1.0) == 1);
}

TEST_CASE("uni-J blow-up counts for the single map", "[topology]") {
  const GridSpec z{-2, 2, -2, 2, 100, 100};
  Network net = single_node(1.0, {0, 0});
  BinaryRaster inside = prisoner_mask(uni_j_raster(net, z, 50, 20.0));
  REQUIRE(component_count_blowup(inside, 1.0) == 1);

  net.set_equi_param({2.0, 0.0});  // dust, under-resolved to nothing
  BinaryRaster dust = prisoner_mask(uni_j_raster(net, z, 50, 20.0));
  REQUIRE(component_count_blowup(dust, 1.0) == 0);
}

TEST_CASE("uni_j_connectedness_locus on a coarse single-map grid", "[topology]") {
  const GridSpec c_grid{-0.2, 2.2, -0.1, 0.1, 3, 1};  // c = 0.2, 1.0, 1.8
  const GridSpec z_grid{-2, 2, -2, 2, 60, 60};
  const LocusRaster locus =
      uni_j_connectedness_locus(single_node(), c_grid, z_grid, 50, 20.0, 1.0);
  REQUIRE(locus.at(0, 0) == 1);  // inside the main set
  REQUIRE(locus.at(2, 0) == 0);  // far outside: dust
}

TEST_CASE("uni-J prisoner sets fill inside the equi-M set and vanish far out", "[topology]") {
  Network net = self_drive(-1.0 / 3.0, -1.0 / 3.0);
  const GridSpec z{-2, 2, -2, 2, 60, 60};
  net.set_equi_param({-1, 0});  // inside the equi-M set
  const BinaryRaster inside = prisoner_mask(uni_j_raster(net, z, 50, 20.0));
  REQUIRE(inside.count() > 0);
  net.set_equi_param({3, 0});  // far outside: under-resolved dust
  const BinaryRaster outside = prisoner_mask(uni_j_raster(net, z, 50, 20.0));
  REQUIRE(component_count_blowup(outside, 1.0) == 0);
}

TEST_CASE("ab_membership_locus: self-drive verdicts at c=-1", "[topology]") {
  auto family = [](double a, double b) { return self_drive(a, b); };
  // 5x5 window putting (-1,-1) and (0,0) on centers
  const GridSpec ab{-1.5, -0.5, -1.5, -0.5, 5, 5};
  const LocusRaster locus = ab_membership_locus(family, ab, {-1, 0}, 100, 20.0);
  REQUIRE(locus.at(2, 2) == 1);  // (a,b)=(-1,-1)
  const GridSpec ab2{-1.5, -0.5, -2.0, -1.0, 5, 5};
  const LocusRaster locus2 = ab_membership_locus(family, ab2, {-1, 0}, 100, 20.0);
  REQUIRE(locus2.at(2, 2) == 0);  // (a,b)=(-1,-1.5) lies between the windows
}

TEST_CASE("ab_connectedness_locus: decoupled nodes give one component", "[topology]") {
  auto family = [](double a, double b) { return self_drive(a, b); };
  const GridSpec ab{-0.1, 0.1, -0.1, 0.1, 1, 1};  // (a,b) = (0,0)
  // 141x141 resolves the bridges to the small period islands; coarser
  // grids leave them as separate blobs
  const GridSpec c_grid{-2, 1, -1.5, 1.5, 141, 141};
  const LocusRaster locus = ab_connectedness_locus(family, ab, c_grid, 50, 20.0, 1.0);
  REQUIRE(locus.at(0, 0) == 1);
}
