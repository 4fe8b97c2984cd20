#pragma once

// Escape-radius bound for diagonally dominant networks.
//
// When every node's self-weight magnitude strictly exceeds the sum of its
// other effective input weights, pick delta with
//     |w_jj| / G_j > delta > 1,   G_j = sum_{l != j} |w_jl|,
// and the dynamics has escape radius M/delta, where M bounds the larger
// root of  M^2 A_j^2 - delta^2 M - delta^2 |c_j| = 0  per node, with
// A_j = |w_jj| - delta G_j.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "quadnet/network.hpp"

namespace quadnet {

struct EscapeBound {
  double delta = 0.0;
  std::vector<double> per_node_A;       // A_j = |w_jj| - delta * G_j
  std::vector<double> per_node_M;       // larger quadratic root per node
  std::vector<double> external_input;   // G_j
  double M = 0.0;                       // max_j M_j
  double radius = 0.0;                  // M / delta
};

inline std::vector<double> external_inputs(const Network& net) {
  std::vector<double> g(static_cast<std::size_t>(net.n), 0.0);
  for (int j = 0; j < net.n; ++j) {
    double s = 0.0;
    for (int k = 0; k < net.n; ++k)
      if (k != j) s += std::abs(net.coupling(j, k));
    g[j] = s;
  }
  return g;
}

// |w_jj| > sum_{l != j} |w_jl| for every node, strictly.
inline bool check_dominance(const Network& net) {
  const std::vector<double> g = external_inputs(net);
  for (int j = 0; j < net.n; ++j)
    if (!(std::abs(net.coupling(j, j)) > g[j])) return false;
  return true;
}

// Midpoint of the admissible interval (1, min_j |w_jj|/G_j); 2 when the
// network has no cross input at all.
inline double default_delta(const Network& net) {
  if (!check_dominance(net)) throw std::invalid_argument("default_delta: network is not diagonally dominant");
  const std::vector<double> g = external_inputs(net);
  double ratio = std::numeric_limits<double>::infinity();
  for (int j = 0; j < net.n; ++j)
    if (g[j] > 0.0) ratio = std::min(ratio, std::abs(net.coupling(j, j)) / g[j]);
  if (!std::isfinite(ratio)) return 2.0;
  return 0.5 * (1.0 + ratio);
}

inline EscapeBound escape_bound(const Network& net, double delta) {
  if (!check_dominance(net))
    throw std::invalid_argument("escape_bound: network is not diagonally dominant");
  if (!(delta > 1.0)) throw std::invalid_argument("escape_bound: delta must exceed 1");
  const std::vector<double> g = external_inputs(net);
  for (int j = 0; j < net.n; ++j)
    if (g[j] > 0.0 && !(delta < std::abs(net.coupling(j, j)) / g[j]))
      throw std::invalid_argument("escape_bound: delta not below |w_jj|/G_j");

  EscapeBound b;
  b.delta = delta;
  b.external_input = g;
  b.per_node_A.resize(g.size());
  b.per_node_M.resize(g.size());
  const double d2 = delta * delta;
  for (int j = 0; j < net.n; ++j) {
    const double a = std::abs(net.coupling(j, j)) - delta * g[j];
    const double cj = std::abs(net.params[j]);
    const double disc = d2 * d2 + 4.0 * a * a * d2 * cj;
    const double m = (d2 + std::sqrt(disc)) / (2.0 * a * a);
    b.per_node_A[j] = a;
    b.per_node_M[j] = m;
    b.M = std::max(b.M, m);
  }
  b.radius = b.M / delta;
  return b;
}

// Empirical witness that a state outside the radius diverges: the orbit's
// max-norm must pass 10*M within `horizon` steps.
inline bool verify_escape(const Network& net, const EscapeBound& bound, const MultiState& s,
                          int horizon) {
  if (s.size() != net.n) throw std::invalid_argument("verify_escape: state dimension mismatch");
  if (!(s.max_norm_sq() > bound.radius * bound.radius))
    throw std::invalid_argument("verify_escape: state is not outside the escape radius");
  const std::vector<double> eff = net.effective_weights();
  const double target = 10.0 * bound.M;
  const double t2 = target * target;
  std::vector<Complex> cur = s.values, nxt(cur.size());
  std::vector<std::uint8_t> ocur = s.overflowed, onxt(ocur.size());
  for (int t = 0; t < horizon; ++t) {
    double m = 0.0;
    bool ovf = false;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (ocur[j]) ovf = true;
      m = std::max(m, std::norm(cur[j]));
    }
    if (ovf || m > t2) return true;
    step_into(net.n, eff, net.params, cur, ocur, nxt, onxt);
    cur.swap(nxt);
    ocur.swap(onxt);
  }
  double m = 0.0;
  bool ovf = false;
  for (std::size_t j = 0; j < cur.size(); ++j) {
    if (ocur[j]) ovf = true;
    m = std::max(m, std::norm(cur[j]));
  }
  return ovf || m > t2;
}

}  // namespace quadnet
