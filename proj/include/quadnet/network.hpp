#pragma once

// Networks of coupled complex quadratic nodes.
//
// Each node j updates synchronously as
//     z_j(t+1) = (sum_k g_jk A_jk z_k(t))^2 + c_j
// where A is the binary adjacency matrix (row j lists the inputs of node j),
// g holds real edge weights and c_j is the node parameter.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace quadnet {

using Complex = std::complex<double>;

// Squared-magnitude guard applied to a node's summed input before squaring.
// A node whose input exceeds this (or that reads an overflowed node) is
// flagged overflowed instead of producing non-finite values; the other
// nodes keep iterating, which is what node-wise boundedness needs.
inline constexpr double kOverflowGuard = 1e150;

struct Network {
  int n = 0;
  std::vector<std::uint8_t> adjacency;  // n*n row-major, row = receiving node
  std::vector<double> weights;          // g_jk, real by construction
  std::vector<Complex> params;          // c_j

  Network() = default;
  Network(int n_, std::vector<std::uint8_t> adj, std::vector<double> w,
          std::vector<Complex> c)
      : n(n_), adjacency(std::move(adj)), weights(std::move(w)), params(std::move(c)) {
    if (n <= 0) throw std::invalid_argument("network: node count must be positive");
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    if (adjacency.size() != nn) throw std::invalid_argument("network: adjacency size mismatch");
    if (weights.size() != nn) throw std::invalid_argument("network: weights size mismatch");
    if (params.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("network: params size mismatch");
    for (std::uint8_t a : adjacency)
      if (a > 1) throw std::invalid_argument("network: adjacency entries must be 0 or 1");
  }

  // effective coupling w_jk = g_jk * A_jk
  double coupling(int j, int k) const {
    const std::size_t i = static_cast<std::size_t>(j) * n + k;
    return adjacency[i] ? weights[i] : 0.0;
  }

  void set_equi_param(Complex c) { params.assign(static_cast<std::size_t>(n), c); }

  // dense effective weight matrix, row-major
  std::vector<double> effective_weights() const {
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        w[static_cast<std::size_t>(j) * n + k] = coupling(j, k);
    return w;
  }
};

struct MultiState {
  std::vector<Complex> values;
  std::vector<std::uint8_t> overflowed;

  MultiState() = default;
  explicit MultiState(std::vector<Complex> v)
      : values(std::move(v)), overflowed(values.size(), 0) {}

  int size() const { return static_cast<int>(values.size()); }
  bool any_overflow() const {
    for (std::uint8_t o : overflowed)
      if (o) return true;
    return false;
  }
  // max_j |z_j|^2 over non-overflowed nodes; infinity if any node overflowed
  double max_norm_sq() const {
    double m = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (overflowed[j]) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::norm(values[j]));
    }
    return m;
  }
};

inline MultiState critical_state(int n) {
  return MultiState(std::vector<Complex>(static_cast<std::size_t>(n), Complex{0.0, 0.0}));
}

// One synchronous step. `eff` is the dense effective weight matrix and
// `params` the per-node parameters; in/out spans must not alias.
inline void step_into(int n, std::span<const double> eff, std::span<const Complex> params,
                      std::span<const Complex> in, std::span<const std::uint8_t> in_ovf,
                      std::span<Complex> out, std::span<std::uint8_t> out_ovf) {
  for (int j = 0; j < n; ++j) {
    Complex sum{0.0, 0.0};
    bool ovf = false;
    const double* wrow = eff.data() + static_cast<std::size_t>(j) * n;
    for (int k = 0; k < n; ++k) {
      const double w = wrow[k];
      if (w == 0.0) continue;
      if (in_ovf[k]) {
        ovf = true;
        break;
      }
      sum += w * in[k];
    }
    if (ovf || std::norm(sum) > kOverflowGuard) {
      out[j] = Complex{0.0, 0.0};
      out_ovf[j] = 1;
    } else {
      out[j] = sum * sum + params[j];
      out_ovf[j] = 0;
    }
  }
}

// Pure single step; identical inputs give bit-identical outputs.
inline MultiState step(const Network& net, const MultiState& s) {
  if (s.size() != net.n) throw std::invalid_argument("step: state dimension mismatch");
  const std::vector<double> eff = net.effective_weights();
  MultiState out;
  out.values.resize(static_cast<std::size_t>(net.n));
  out.overflowed.resize(static_cast<std::size_t>(net.n));
  step_into(net.n, eff, net.params, s.values, s.overflowed, out.values, out.overflowed);
  return out;
}

struct OrbitRecord {
  std::vector<MultiState> states;  // indexed t = 0..T
  std::optional<int> escape_iter;  // first t with max-norm > escape radius
};

// Iterates until the max-norm first exceeds escape_radius (that iteration
// index is recorded, t = 0 included) or until max_iter steps. Overflow
// counts as escape.
inline OrbitRecord iterate_orbit(const Network& net, const MultiState& s0, int max_iter,
                                 double escape_radius) {
  if (s0.size() != net.n) throw std::invalid_argument("iterate_orbit: state dimension mismatch");
  if (max_iter < 1) throw std::invalid_argument("iterate_orbit: max_iter must be >= 1");
  if (!(escape_radius > 0)) throw std::invalid_argument("iterate_orbit: escape_radius must be > 0");

  const std::vector<double> eff = net.effective_weights();
  const double r2 = escape_radius * escape_radius;
  OrbitRecord rec;
  rec.states.reserve(static_cast<std::size_t>(max_iter) + 1);
  rec.states.push_back(s0);
  if (s0.max_norm_sq() > r2) {
    rec.escape_iter = 0;
    return rec;
  }
  MultiState cur = s0;
  MultiState nxt;
  nxt.values.resize(static_cast<std::size_t>(net.n));
  nxt.overflowed.resize(static_cast<std::size_t>(net.n));
  for (int t = 1; t <= max_iter; ++t) {
    step_into(net.n, eff, net.params, cur.values, cur.overflowed, nxt.values, nxt.overflowed);
    rec.states.push_back(nxt);
    if (nxt.max_norm_sq() > r2) {
      rec.escape_iter = t;
      return rec;
    }
    std::swap(cur, nxt);
  }
  return rec;
}

// True iff node k's component stays within escape_radius and never overflows
// for all t <= max_iter. Other nodes may escape; iteration continues with
// overflow flags so that k's fate is still well defined.
inline bool node_orbit_bounded(const Network& net, const MultiState& s0, int node_index,
                               int max_iter, double escape_radius) {
  if (s0.size() != net.n) throw std::invalid_argument("node_orbit_bounded: state dimension mismatch");
  if (node_index < 0 || node_index >= net.n)
    throw std::out_of_range("node_orbit_bounded: node index out of range");

  const std::vector<double> eff = net.effective_weights();
  const double r2 = escape_radius * escape_radius;
  if (s0.overflowed[node_index] || std::norm(s0.values[node_index]) > r2) return false;

  std::vector<Complex> cur = s0.values, nxt(cur.size());
  std::vector<std::uint8_t> ocur = s0.overflowed, onxt(ocur.size());
  for (int t = 1; t <= max_iter; ++t) {
    step_into(net.n, eff, net.params, cur, ocur, nxt, onxt);
    if (onxt[node_index] || std::norm(nxt[node_index]) > r2) return false;
    cur.swap(nxt);
    ocur.swap(onxt);
  }
  return true;
}

}  // namespace quadnet
