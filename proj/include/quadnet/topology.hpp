#pragma once

// Connected-component analysis of binary rasters, blow-up (dilation before
// counting) and connectedness loci over parameter planes.

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "quadnet/raster.hpp"

namespace quadnet {

enum class Connectivity { Four = 4, Eight = 8 };

struct ComponentCount {
  int count = 0;
  std::vector<std::int32_t> labels;  // 0 = background, 1..count foreground
};

namespace detail {

struct UnionFind {
  std::vector<std::int32_t> parent;
  std::int32_t make() {
    parent.push_back(static_cast<std::int32_t>(parent.size()));
    return parent.back();
  }
  std::int32_t find(std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

// Two-pass union-find labeling. Empty mask gives count 0.
inline ComponentCount count_components(const BinaryRaster& b,
                                       Connectivity conn = Connectivity::Eight) {
  const int w = b.grid.width, h = b.grid.height;
  ComponentCount out;
  out.labels.assign(b.mask.size(), 0);
  detail::UnionFind uf;
  uf.parent.reserve(256);
  std::vector<std::int32_t> prov(b.mask.size(), -1);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!b.at(x, y)) continue;
      const std::size_t i = b.grid.index(x, y);
      std::int32_t lbl = -1;
      auto consider = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
        const std::int32_t q = prov[b.grid.index(nx, ny)];
        if (q < 0) return;
        if (lbl < 0)
          lbl = uf.find(q);
        else
          uf.unite(lbl, q);
      };
      consider(x - 1, y);
      consider(x, y - 1);
      if (conn == Connectivity::Eight) {
        consider(x - 1, y - 1);
        consider(x + 1, y - 1);
      }
      prov[i] = (lbl < 0) ? uf.make() : uf.find(lbl);
    }
  }

  std::vector<std::int32_t> remap(uf.parent.size(), 0);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < b.mask.size(); ++i) {
    if (prov[i] < 0) continue;
    const std::int32_t root = uf.find(prov[i]);
    if (remap[root] == 0) remap[root] = ++next;
    out.labels[i] = remap[root];
  }
  out.count = next;
  return out;
}

// Dilation by Euclidean pixel distance. Any radius >= 1 includes the full
// 8-neighborhood (a "one pixel margin" is the 3x3 block), so both 1 and
// 1.5 use the same structuring element; 2 picks up the straight offsets at
// distance 2, and so on. Radius 0 is the identity.
inline BinaryRaster dilate(const BinaryRaster& b, double radius_px) {
  if (radius_px < 0) throw std::invalid_argument("dilate: radius must be >= 0");
  const int w = b.grid.width, h = b.grid.height;
  std::vector<std::pair<int, int>> offsets;
  const int rmax = static_cast<int>(radius_px) + 1;
  for (int dy = -rmax; dy <= rmax; ++dy)
    for (int dx = -rmax; dx <= rmax; ++dx) {
      const bool in_disc = dx * dx + dy * dy <= radius_px * radius_px;
      const bool in_margin = radius_px >= 1.0 && dx >= -1 && dx <= 1 && dy >= -1 && dy <= 1;
      if (in_disc || in_margin) offsets.emplace_back(dx, dy);
    }
  BinaryRaster out{b.grid, std::vector<std::uint8_t>(b.mask.size(), 0)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!b.at(x, y)) continue;
      for (auto [dx, dy] : offsets) {
        const int nx = x + dx, ny = y + dy;
        if (nx >= 0 && ny >= 0 && nx < w && ny < h) out.mask[b.grid.index(nx, ny)] = 1;
      }
    }
  return out;
}

inline int component_count_blowup(const BinaryRaster& b, double radius_px,
                                  Connectivity conn = Connectivity::Eight) {
  return count_components(dilate(b, radius_px), conn).count;
}

struct LocusRaster {
  GridSpec grid;
  std::vector<std::int32_t> data;
  std::int32_t at(int x, int y) const { return data[grid.index(x, y)]; }
};

// Per c pixel: number of connected components of the blown-up uni-J
// prisoner mask on z_grid.
inline LocusRaster uni_j_connectedness_locus(const Network& net_template, const GridSpec& c_grid,
                                             const GridSpec& z_grid, int K, double escape_radius,
                                             double radius_px,
                                             Connectivity conn = Connectivity::Eight) {
  c_grid.validate();
  z_grid.validate();
  LocusRaster out{c_grid, std::vector<std::int32_t>(c_grid.pixel_count())};
#pragma omp parallel
  {
    Network net = net_template;
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < c_grid.height; ++y) {
      for (int x = 0; x < c_grid.width; ++x) {
        net.set_equi_param(c_grid.at(x, y));
        const BinaryRaster mask = prisoner_mask(uni_j_raster(net, z_grid, K, escape_radius));
        out.data[c_grid.index(x, y)] = component_count_blowup(mask, radius_px, conn);
      }
    }
  }
  return out;
}

// Per (a, b) pixel (a on the horizontal axis, b on the vertical): 1 when
// the critical multi-orbit is bounded at equi-parameter c0, else 0.
inline LocusRaster ab_membership_locus(const std::function<Network(double, double)>& family,
                                       const GridSpec& ab_grid, Complex c0, int K,
                                       double escape_radius) {
  ab_grid.validate();
  LocusRaster out{ab_grid, std::vector<std::int32_t>(ab_grid.pixel_count())};
#pragma omp parallel
  {
    detail::OrbitScratch sc;
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < ab_grid.height; ++y) {
      for (int x = 0; x < ab_grid.width; ++x) {
        Network net = family(ab_grid.re_at(x), ab_grid.im_at(y));
        net.set_equi_param(c0);
        sc.resize(net.n);
        std::vector<Complex> z0(net.n, Complex{0, 0});
        const int esc = detail::first_escape(net.n, net.effective_weights(), net.params, z0, K,
                                             escape_radius, -1, sc);
        out.data[ab_grid.index(x, y)] = esc < 0 ? 1 : 0;
      }
    }
  }
  return out;
}

// Per (a, b) pixel: component count of the blown-up equi-M prisoner mask.
inline LocusRaster ab_connectedness_locus(const std::function<Network(double, double)>& family,
                                          const GridSpec& ab_grid, const GridSpec& c_grid, int K,
                                          double escape_radius, double radius_px,
                                          Connectivity conn = Connectivity::Eight) {
  ab_grid.validate();
  c_grid.validate();
  LocusRaster out{ab_grid, std::vector<std::int32_t>(ab_grid.pixel_count())};
#pragma omp parallel for schedule(dynamic, 1)
  for (int y = 0; y < ab_grid.height; ++y) {
    for (int x = 0; x < ab_grid.width; ++x) {
      const Network net = family(ab_grid.re_at(x), ab_grid.im_at(y));
      const BinaryRaster mask = prisoner_mask(equi_m_raster(net, c_grid, K, escape_radius));
      out.data[ab_grid.index(x, y)] = component_count_blowup(mask, radius_px, conn);
    }
  }
  return out;
}

}  // namespace quadnet
