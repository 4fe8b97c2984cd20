#pragma once

// Built-in network families and the analytic fixed-point machinery for the
// simple dual network:
//   single:       z -> z^2 + c
//   simple dual:  z1 -> z1^2+c,  z2 -> (a z1 + z2)^2+c,  z3 -> (z1 + z2)^2+c
//   self drive:   z1 -> z1^2+c,  z2 -> (a z1 + z2)^2+c,  z3 -> (z1 + z2 + b z3)^2+c
//   bipartite:    two fully wired cliques of N nodes (self-loops included)
//                 with a prescribed set of cross edges.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "quadnet/network.hpp"

namespace quadnet {

inline Network single_node(double g = 1.0, Complex c = {0, 0}) {
  return Network(1, {1}, {g}, {c});
}

inline Network simple_dual(double a, Complex c = {0, 0}) {
  return Network(3,
                 {1, 0, 0,
                  1, 1, 0,
                  1, 1, 0},
                 {1, 0, 0,
                  a, 1, 0,
                  1, 1, 0},
                 {c, c, c});
}

inline Network self_drive(double a, double b, Complex c = {0, 0}) {
  return Network(3,
                 {1, 0, 0,
                  1, 1, 0,
                  1, 1, 1},
                 {1, 0, 0,
                  a, 1, 0,
                  1, 1, b},
                 {c, c, c});
}

// Bipartite network of two cliques X and Y with N nodes each. Within-clique
// blocks are all ones (self-loops included) with weight g_within. Cross
// edges are given as 0-based row-major cells of the N x N off-diagonal
// blocks: xy_cells wires X-rows to Y-columns, yx_cells the reverse.
inline Network bipartite(int N, std::span<const int> xy_cells, std::span<const int> yx_cells,
                         double g_within = 0.5, double g_between = -0.5, Complex c = {0, 0}) {
  if (N <= 0) throw std::invalid_argument("bipartite: clique size must be positive");
  const int n = 2 * N;
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      adj[static_cast<std::size_t>(j) * n + k] = 1;
      w[static_cast<std::size_t>(j) * n + k] = g_within;
      adj[static_cast<std::size_t>(N + j) * n + (N + k)] = 1;
      w[static_cast<std::size_t>(N + j) * n + (N + k)] = g_within;
    }
  auto put = [&](int cell, bool xy) {
    if (cell < 0 || cell >= N * N)
      throw std::invalid_argument("bipartite: cross-edge cell out of range");
    const int r = cell / N, cc = cell % N;
    const int j = xy ? r : N + r;
    const int k = xy ? N + cc : cc;
    if (adj[static_cast<std::size_t>(j) * n + k])
      throw std::invalid_argument("bipartite: duplicate cross-edge cell");
    adj[static_cast<std::size_t>(j) * n + k] = 1;
    w[static_cast<std::size_t>(j) * n + k] = g_between;
  };
  for (int cell : xy_cells) put(cell, true);
  for (int cell : yx_cells) put(cell, false);
  return Network(n, std::move(adj), std::move(w), std::vector<Complex>(n, c));
}

// Main cardioid of the single quadratic map: c = e^{i t}/2 - e^{2 i t}/4.
inline Complex cardioid(double theta) {
  const Complex e1 = std::polar(1.0, theta);
  const Complex e2 = std::polar(1.0, 2.0 * theta);
  return e1 / 2.0 - e2 / 4.0;
}

// Boundary curves of the simple-dual fixed-point component. With
// phi = e^{i tau}/2 and xi = phi - phi^2, the admissible c solve
//   c^2 + (a^2 + a - 2 xi) c + xi^2 - a xi = 0,
// giving c = (2 xi - a - a^2 +- sqrt(a^2 (a+1)^2 - 4 a^2 xi)) / 2.
struct CurvePair {
  Complex plus, minus;
};

inline CurvePair dual_fixedpoint_curves(double a, double tau) {
  const Complex phi = std::polar(0.5, tau);
  const Complex xi = phi - phi * phi;
  // keep the imaginary zero positive: double - Complex would flip +0.0 to
  // -0.0 and drop the principal sqrt below the branch cut
  const Complex disc = Complex{a * a * (a + 1.0) * (a + 1.0), 0.0} - 4.0 * a * a * xi;
  const Complex root = std::sqrt(disc);  // principal branch
  const Complex base = 2.0 * xi - a - a * a;
  return {(base + root) / 2.0, (base - root) / 2.0};
}

// Fixed points of the simple-dual network with their nonzero Jacobian
// eigenvalues lambda2 = 2 z1 and lambda3 = 2 (a z1 + z2).
struct DualFixedPoint {
  Complex z1, z2, lambda2, lambda3;
  bool attracting = false;
};

inline std::array<DualFixedPoint, 4> dual_fixed_points(double a, Complex c) {
  std::array<DualFixedPoint, 4> out;
  const Complex r1 = std::sqrt(1.0 - 4.0 * c);
  const Complex z1s[2] = {(1.0 + r1) / 2.0, (1.0 - r1) / 2.0};
  int i = 0;
  for (const Complex z1 : z1s) {
    // (a z1 + z2)^2 + c = z2 with u = a z1 + z2: u^2 - u + (c + a z1) = 0
    const Complex r2 = std::sqrt(1.0 - 4.0 * (c + a * z1));
    const Complex us[2] = {(1.0 + r2) / 2.0, (1.0 - r2) / 2.0};
    for (const Complex u : us) {
      DualFixedPoint fp;
      fp.z1 = z1;
      fp.z2 = u - a * z1;
      fp.lambda2 = 2.0 * z1;
      fp.lambda3 = 2.0 * u;
      fp.attracting = std::abs(fp.lambda2) < 1.0 && std::abs(fp.lambda3) < 1.0;
      out[i++] = fp;
    }
  }
  return out;
}

// One record selecting a built-in family (or wrapping an explicit network).
struct FamilySpec {
  enum class Kind { single, simple_dual, self_drive, bipartite, explicit_network };
  Kind kind = Kind::single;
  double a = 0.0, b = 0.0;
  double g = 1.0;  // single-node self weight
  int clique_n = 2;
  std::vector<int> xy, yx;
  double g_within = 0.5, g_between = -0.5;
  Complex c{0, 0};
  Network network;  // explicit_network only
};

inline Network build(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::single:
      return single_node(spec.g, spec.c);
    case FamilySpec::Kind::simple_dual:
      return simple_dual(spec.a, spec.c);
    case FamilySpec::Kind::self_drive:
      return self_drive(spec.a, spec.b, spec.c);
    case FamilySpec::Kind::bipartite:
      return bipartite(spec.clique_n, spec.xy, spec.yx, spec.g_within, spec.g_between, spec.c);
    case FamilySpec::Kind::explicit_network:
      return spec.network;
  }
  throw std::invalid_argument("build: unknown family kind");
}

// Curve samples for CSV export; both branches over an even tau grid.
struct CurveSample {
  double parameter;  // tau (or theta for the cardioid)
  Complex point;
  int branch;  // +1 / -1, 0 for the cardioid
};

inline std::vector<CurveSample> sample_dual_curves(double a, int samples) {
  std::vector<CurveSample> out;
  out.reserve(2 * static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double tau = 2.0 * M_PI * i / (samples - 1.0);
    const CurvePair p = dual_fixedpoint_curves(a, tau);
    out.push_back({tau, p.plus, +1});
    out.push_back({tau, p.minus, -1});
  }
  return out;
}

inline std::vector<CurveSample> sample_cardioid(int samples) {
  std::vector<CurveSample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * M_PI * i / (samples - 1.0);
    out.push_back({theta, cardioid(theta), 0});
  }
  return out;
}

}  // namespace quadnet
