#pragma once

// Escape-time rasters over complex-plane windows: equi-M, node-wise equi-M,
// uni-J and prisoner/boundary masks. Pixels are independent, so rasters are
// identical for any worker count.

#include <cstdint>
#include <vector>

#include "quadnet/grid.hpp"
#include "quadnet/network.hpp"

namespace quadnet {

struct EscapeRaster {
  GridSpec grid;
  int max_iter = 50;
  double escape_radius = 20.0;
  // first escape iteration per pixel; -1 = bounded through max_iter.
  // 0 occurs only when the start state already lies outside the radius.
  std::vector<std::int32_t> data;

  std::int32_t at(int x, int y) const { return data[grid.index(x, y)]; }
};

struct BinaryRaster {
  GridSpec grid;
  std::vector<std::uint8_t> mask;

  bool at(int x, int y) const { return mask[grid.index(x, y)] != 0; }
  long long count() const {
    long long c = 0;
    for (std::uint8_t m : mask) c += m ? 1 : 0;
    return c;
  }
};

namespace detail {

// Reusable per-thread iteration buffers.
struct OrbitScratch {
  std::vector<Complex> cur, nxt, par;
  std::vector<std::uint8_t> ocur, onxt;
  void resize(int n) {
    cur.resize(n);
    nxt.resize(n);
    par.resize(n);
    ocur.resize(n);
    onxt.resize(n);
  }
};

// First t in [0, K] at which the max-norm exceeds the radius (or a node
// overflows); -1 if bounded through K. watch_node < 0 means all nodes.
inline int first_escape(int n, std::span<const double> eff, std::span<const Complex> params,
                        std::span<const Complex> z0, int K, double radius, int watch_node,
                        OrbitScratch& s) {
  const double r2 = radius * radius;
  for (int j = 0; j < n; ++j) {
    s.cur[j] = z0[j];
    s.ocur[j] = 0;
  }
  if (watch_node < 0) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) m = std::max(m, std::norm(s.cur[j]));
    if (m > r2) return 0;
  } else if (std::norm(s.cur[watch_node]) > r2) {
    return 0;
  }
  for (int t = 1; t <= K; ++t) {
    step_into(n, eff, params, s.cur, s.ocur, s.nxt, s.onxt);
    if (watch_node < 0) {
      bool esc = false;
      for (int j = 0; j < n; ++j) {
        if (s.onxt[j] || std::norm(s.nxt[j]) > r2) {
          esc = true;
          break;
        }
      }
      if (esc) return t;
    } else if (s.onxt[watch_node] || std::norm(s.nxt[watch_node]) > r2) {
      return t;
    }
    s.cur.swap(s.nxt);
    s.ocur.swap(s.onxt);
  }
  return -1;
}

}  // namespace detail

// Equi-M raster: per pixel c, every node parameter is set to c and the
// critical point (0,...,0) is iterated.
inline EscapeRaster equi_m_raster(const Network& net_template, const GridSpec& grid, int K,
                                  double escape_radius) {
  grid.validate();
  if (K < 1) throw std::invalid_argument("equi_m_raster: K must be >= 1");
  if (!(escape_radius > 0)) throw std::invalid_argument("equi_m_raster: escape radius must be > 0");
  EscapeRaster r{grid, K, escape_radius, std::vector<std::int32_t>(grid.pixel_count())};
  const std::vector<double> eff = net_template.effective_weights();
  const int n = net_template.n;
#pragma omp parallel
  {
    detail::OrbitScratch sc;
    sc.resize(n);
    std::vector<Complex> z0(n, Complex{0, 0});
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < grid.height; ++y) {
      for (int x = 0; x < grid.width; ++x) {
        const Complex c = grid.at(x, y);
        for (int j = 0; j < n; ++j) {
          sc.par[j] = c;
          z0[j] = Complex{0, 0};
        }
        r.data[grid.index(x, y)] =
            detail::first_escape(n, eff, sc.par, z0, K, escape_radius, -1, sc);
      }
    }
  }
  return r;
}

// Node-wise equi-M raster: boundedness judged on |z_k| alone.
inline EscapeRaster node_m_raster(const Network& net_template, int node_index,
                                  const GridSpec& grid, int K, double escape_radius) {
  grid.validate();
  if (node_index < 0 || node_index >= net_template.n)
    throw std::out_of_range("node_m_raster: node index out of range");
  if (K < 1) throw std::invalid_argument("node_m_raster: K must be >= 1");
  EscapeRaster r{grid, K, escape_radius, std::vector<std::int32_t>(grid.pixel_count())};
  const std::vector<double> eff = net_template.effective_weights();
  const int n = net_template.n;
#pragma omp parallel
  {
    detail::OrbitScratch sc;
    sc.resize(n);
    std::vector<Complex> z0(n, Complex{0, 0});
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < grid.height; ++y) {
      for (int x = 0; x < grid.width; ++x) {
        const Complex c = grid.at(x, y);
        for (int j = 0; j < n; ++j) {
          sc.par[j] = c;
          z0[j] = Complex{0, 0};
        }
        r.data[grid.index(x, y)] =
            detail::first_escape(n, eff, sc.par, z0, K, escape_radius, node_index, sc);
      }
    }
  }
  return r;
}

// Uni-J raster for a fixed parameter vector: per pixel z0, iterate the
// diagonal lift (z0,...,z0).
inline EscapeRaster uni_j_raster(const Network& net, const GridSpec& grid, int K,
                                 double escape_radius) {
  grid.validate();
  if (K < 1) throw std::invalid_argument("uni_j_raster: K must be >= 1");
  EscapeRaster r{grid, K, escape_radius, std::vector<std::int32_t>(grid.pixel_count())};
  const std::vector<double> eff = net.effective_weights();
  const int n = net.n;
#pragma omp parallel
  {
    detail::OrbitScratch sc;
    sc.resize(n);
    std::vector<Complex> z0(n);
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < grid.height; ++y) {
      for (int x = 0; x < grid.width; ++x) {
        const Complex z = grid.at(x, y);
        for (int j = 0; j < n; ++j) z0[j] = z;
        r.data[grid.index(x, y)] =
            detail::first_escape(n, eff, net.params, z0, K, escape_radius, -1, sc);
      }
    }
  }
  return r;
}

// Mask of pixels bounded through max_iter.
inline BinaryRaster prisoner_mask(const EscapeRaster& r) {
  BinaryRaster b{r.grid, std::vector<std::uint8_t>(r.data.size())};
  for (std::size_t i = 0; i < r.data.size(); ++i) b.mask[i] = r.data[i] < 0 ? 1 : 0;
  return b;
}

// Foreground pixels with at least one false 8-neighbor; the window edge
// counts as false.
inline BinaryRaster boundary_mask(const BinaryRaster& b) {
  const int w = b.grid.width, h = b.grid.height;
  BinaryRaster out{b.grid, std::vector<std::uint8_t>(b.mask.size(), 0)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!b.at(x, y)) continue;
      bool edge = false;
      for (int dy = -1; dy <= 1 && !edge; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= w || ny < 0 || ny >= h || !b.at(nx, ny)) {
            edge = true;
            break;
          }
        }
      }
      out.mask[b.grid.index(x, y)] = edge ? 1 : 0;
    }
  }
  return out;
}

}  // namespace quadnet
