#pragma once

// Configuration ensembles with a shared structural property (fixed edge
// count, or bipartite cross-edge counts), core (average) sets, and the
// spectral / asymptotic class partitions.

#include <Eigen/Eigenvalues>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadnet/families.hpp"
#include "quadnet/raster.hpp"

namespace quadnet {

struct ConfigurationFamily {
  enum class Property { edge_count, bipartite };
  enum class Mode { exhaustive, sampled };

  Property property = Property::edge_count;
  int n = 3;          // nodes (edge_count) or per-clique size (bipartite)
  int k = 7;          // total edges, self-loops included (edge_count)
  int m_xy = 1, m_yx = 3;
  double g = 1.0 / 3.0;  // uniform weight; edge_count default is 1/n
  double g_within = 0.5, g_between = -0.5;
  Mode mode = Mode::exhaustive;
  int sample_size = 20;
  std::uint64_t seed = 0;

  static ConfigurationFamily edge_count_family(int n, int k, std::optional<double> weight = {}) {
    ConfigurationFamily f;
    f.property = Property::edge_count;
    f.n = n;
    f.k = k;
    f.g = weight.value_or(1.0 / n);
    return f;
  }
  static ConfigurationFamily bipartite_family(int n, int m_xy, int m_yx, double g_within = 0.5,
                                              double g_between = -0.5) {
    ConfigurationFamily f;
    f.property = Property::bipartite;
    f.n = n;
    f.m_xy = m_xy;
    f.m_yx = m_yx;
    f.g_within = g_within;
    f.g_between = g_between;
    return f;
  }
  ConfigurationFamily sampled(int s, std::uint64_t sd) const {
    ConfigurationFamily f = *this;
    f.mode = Mode::sampled;
    f.sample_size = s;
    f.seed = sd;
    return f;
  }
};

namespace detail {

// C(n, k) capped: returns cap + 1 as soon as the count exceeds cap.
inline std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is integral at each step
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > (cap + 1) / num * i) return cap + 1;
    r = r * num / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

inline bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Draws one k-subset of {0..n-1} by a partial Fisher-Yates shuffle. A small
// hand-rolled bounded-uniform keeps the draw identical across platforms.
inline std::vector<int> draw_subset(std::mt19937_64& rng, int n, int k) {
  std::vector<int> cells(n);
  for (int i = 0; i < n; ++i) cells[i] = i;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t range = static_cast<std::uint64_t>(n - i);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    std::swap(cells[i], cells[i + static_cast<int>(v % range)]);
  }
  std::vector<int> sub(cells.begin(), cells.begin() + k);
  std::sort(sub.begin(), sub.end());
  return sub;
}

inline Network edge_count_network(int n, const std::vector<int>& cells, double g) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int c : cells) {
    adj[c] = 1;
    w[c] = g;
  }
  return Network(n, std::move(adj), std::move(w), std::vector<Complex>(n, Complex{0, 0}));
}

}  // namespace detail

// Deterministic enumeration: lexicographic k-subsets of the n*n row-major
// cell positions; bipartite pairs run xy-subsets outer, yx-subsets inner.
// Sampled mode draws `sample_size` distinct subsets from the given seed.
inline std::vector<Network> enumerate_configurations(const ConfigurationFamily& fam,
                                                     std::uint64_t cap = 1000000) {
  std::vector<Network> out;
  if (fam.property == ConfigurationFamily::Property::edge_count) {
    const int cells = fam.n * fam.n;
    if (fam.k < 0 || fam.k > cells)
      throw std::invalid_argument("enumerate: edge count out of range");
    if (fam.mode == ConfigurationFamily::Mode::exhaustive) {
      if (detail::binomial_capped(cells, fam.k, cap) > cap)
        throw std::invalid_argument("enumerate: configuration count exceeds cap");
      std::vector<int> comb(fam.k);
      for (int i = 0; i < fam.k; ++i) comb[i] = i;
      do {
        out.push_back(detail::edge_count_network(fam.n, comb, fam.g));
      } while (detail::next_combination(comb, cells));
    } else {
      std::mt19937_64 rng(fam.seed);
      std::set<std::vector<int>> seen;
      while (static_cast<int>(out.size()) < fam.sample_size) {
        std::vector<int> sub = detail::draw_subset(rng, cells, fam.k);
        if (seen.insert(sub).second)
          out.push_back(detail::edge_count_network(fam.n, sub, fam.g));
      }
    }
  } else {
    const int cells = fam.n * fam.n;
    if (fam.m_xy < 0 || fam.m_xy > cells || fam.m_yx < 0 || fam.m_yx > cells)
      throw std::invalid_argument("enumerate: cross-edge count out of range");
    if (fam.mode == ConfigurationFamily::Mode::exhaustive) {
      const std::uint64_t c1 = detail::binomial_capped(cells, fam.m_xy, cap);
      const std::uint64_t c2 = detail::binomial_capped(cells, fam.m_yx, cap);
      if (c1 > cap || c2 > cap || c1 * c2 > cap)
        throw std::invalid_argument("enumerate: configuration count exceeds cap");
      std::vector<int> xy(fam.m_xy);
      for (int i = 0; i < fam.m_xy; ++i) xy[i] = i;
      do {
        std::vector<int> yx(fam.m_yx);
        for (int i = 0; i < fam.m_yx; ++i) yx[i] = i;
        do {
          out.push_back(bipartite(fam.n, xy, yx, fam.g_within, fam.g_between));
        } while (detail::next_combination(yx, cells));
      } while (detail::next_combination(xy, cells));
    } else {
      std::mt19937_64 rng(fam.seed);
      std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
      while (static_cast<int>(out.size()) < fam.sample_size) {
        std::vector<int> xy = detail::draw_subset(rng, cells, fam.m_xy);
        std::vector<int> yx = detail::draw_subset(rng, cells, fam.m_yx);
        if (seen.insert({xy, yx}).second)
          out.push_back(bipartite(fam.n, xy, yx, fam.g_within, fam.g_between));
      }
    }
  }
  return out;
}

struct FractionRaster {
  GridSpec grid;
  std::vector<double> data;  // bounded fraction in [0, 1]
  int config_count = 0;
  double at(int x, int y) const { return data[grid.index(x, y)]; }
};

// Per pixel z0: fraction of configurations whose diagonal lift (z0,...,z0)
// stays bounded. The core uni-prisoner set is the fraction-1 level set.
inline FractionRaster core_uni_j(const std::vector<Network>& configs, Complex c,
                                 const GridSpec& z_grid, int K, double escape_radius) {
  z_grid.validate();
  if (configs.empty()) throw std::invalid_argument("core_uni_j: no configurations");
  FractionRaster fr{z_grid, std::vector<double>(z_grid.pixel_count(), 0.0),
                    static_cast<int>(configs.size())};
  std::vector<std::vector<double>> effs;
  effs.reserve(configs.size());
  std::vector<std::vector<Complex>> pars;
  for (const Network& net : configs) {
    effs.push_back(net.effective_weights());
    pars.emplace_back(static_cast<std::size_t>(net.n), c);
  }
#pragma omp parallel
  {
    detail::OrbitScratch sc;
    std::vector<Complex> z0;
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < z_grid.height; ++y) {
      for (int x = 0; x < z_grid.width; ++x) {
        const Complex z = z_grid.at(x, y);
        int bounded = 0;
        for (std::size_t i = 0; i < configs.size(); ++i) {
          const int n = configs[i].n;
          sc.resize(n);
          z0.assign(static_cast<std::size_t>(n), z);
          if (detail::first_escape(n, effs[i], pars[i], z0, K, escape_radius, -1, sc) < 0)
            ++bounded;
        }
        fr.data[z_grid.index(x, y)] = static_cast<double>(bounded) / configs.size();
      }
    }
  }
  return fr;
}

// Per pixel c: fraction of configurations with a bounded critical orbit.
inline FractionRaster core_equi_m(const std::vector<Network>& configs, const GridSpec& c_grid,
                                  int K, double escape_radius) {
  c_grid.validate();
  if (configs.empty()) throw std::invalid_argument("core_equi_m: no configurations");
  FractionRaster fr{c_grid, std::vector<double>(c_grid.pixel_count(), 0.0),
                    static_cast<int>(configs.size())};
  std::vector<std::vector<double>> effs;
  effs.reserve(configs.size());
  for (const Network& net : configs) effs.push_back(net.effective_weights());
#pragma omp parallel
  {
    detail::OrbitScratch sc;
    std::vector<Complex> z0;
#pragma omp for schedule(dynamic, 1)
    for (int y = 0; y < c_grid.height; ++y) {
      for (int x = 0; x < c_grid.width; ++x) {
        const Complex c = c_grid.at(x, y);
        int bounded = 0;
        for (std::size_t i = 0; i < configs.size(); ++i) {
          const int n = configs[i].n;
          sc.resize(n);
          for (int j = 0; j < n; ++j) sc.par[j] = c;
          z0.assign(static_cast<std::size_t>(n), Complex{0, 0});
          if (detail::first_escape(n, effs[i], sc.par, z0, K, escape_radius, -1, sc) < 0)
            ++bounded;
        }
        fr.data[c_grid.index(x, y)] = static_cast<double>(bounded) / configs.size();
      }
    }
  }
  return fr;
}

struct ClassPartition {
  std::vector<int> class_of;          // class id per configuration, by first occurrence
  int num_classes = 0;
  std::vector<int> representatives;   // first configuration index per class
};

// Asymptotic classes: exact equality of the uni-J escape rasters (identical
// escape colors), grouped by hash and verified entry-wise.
inline ClassPartition partition_asymptotic(const std::vector<Network>& configs, Complex c,
                                           const GridSpec& z_grid, int K, double escape_radius) {
  ClassPartition part;
  part.class_of.resize(configs.size());
  std::vector<EscapeRaster> reps;
  std::map<std::uint64_t, std::vector<int>> by_hash;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    Network net = configs[i];
    net.set_equi_param(c);
    const EscapeRaster r = uni_j_raster(net, z_grid, K, escape_radius);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the raster data
    for (std::int32_t v : r.data) {
      for (int b = 0; b < 4; ++b) {
        h ^= static_cast<std::uint8_t>(v >> (8 * b));
        h *= 1099511628211ull;
      }
    }
    int cls = -1;
    for (int cand : by_hash[h])
      if (reps[cand].data == r.data) {
        cls = cand;
        break;
      }
    if (cls < 0) {
      cls = part.num_classes++;
      reps.push_back(r);
      by_hash[h].push_back(cls);
      part.representatives.push_back(static_cast<int>(i));
    }
    part.class_of[i] = cls;
  }
  return part;
}

// Spectral classes: multiset of eigenvalues of the effective weight matrix.
// Eigenvalues are snapped across the whole ensemble with tolerance 1e-8 and
// then rounded to 1e-6 to build the class key.
inline ClassPartition partition_spectral(const std::vector<Network>& configs) {
  std::vector<std::vector<Complex>> spectra(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Network& net = configs[i];
    Eigen::MatrixXd m(net.n, net.n);
    for (int j = 0; j < net.n; ++j)
      for (int k = 0; k < net.n; ++k) m(j, k) = net.coupling(j, k);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      std::ostringstream oss;
      oss << "partition_spectral: eigen solver failed for matrix\n" << m;
      throw std::runtime_error(oss.str());
    }
    std::vector<Complex> ev(net.n);
    for (int j = 0; j < net.n; ++j) ev[j] = solver.eigenvalues()[j];
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    spectra[i] = std::move(ev);
  }
  // snap nearly equal values (numerical jitter across cospectral matrices)
  std::vector<Complex*> flat;
  for (auto& s : spectra)
    for (auto& v : s) flat.push_back(&v);
  std::sort(flat.begin(), flat.end(), [](const Complex* a, const Complex* b) {
    return a->real() != b->real() ? a->real() < b->real() : a->imag() < b->imag();
  });
  Complex rep{0, 0};
  bool have_rep = false;
  for (Complex* v : flat) {
    if (!have_rep || std::abs(*v - rep) > 1e-8) {
      rep = *v;
      have_rep = true;
    }
    *v = rep;
  }

  ClassPartition part;
  part.class_of.resize(configs.size());
  std::map<std::vector<std::pair<long long, long long>>, int> classes;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::vector<std::pair<long long, long long>> key;
    key.reserve(spectra[i].size());
    for (Complex v : spectra[i])
      key.emplace_back(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
    std::sort(key.begin(), key.end());
    auto [it, fresh] = classes.try_emplace(key, part.num_classes);
    if (fresh) {
      ++part.num_classes;
      part.representatives.push_back(static_cast<int>(i));
    }
    part.class_of[i] = it->second;
  }
  return part;
}

// Canonical form: class ids renumbered by first occurrence, so two
// partitions are equal as set partitions iff the forms are equal.
inline std::vector<int> canonical_partition(const std::vector<int>& class_of) {
  std::map<int, int> remap;
  std::vector<int> out;
  out.reserve(class_of.size());
  for (int c : class_of) {
    auto [it, fresh] = remap.try_emplace(c, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

struct InvarianceReport {
  bool all_identical = true;
  struct Diff {
    int c_index_a = 0, c_index_b = 0;  // which pair of parameters disagree
    int config_a = 0, config_b = 0;    // first configuration pair split differently
  };
  std::optional<Diff> first_diff;
  std::vector<ClassPartition> partitions;
};

// Computes the asymptotic partition for every parameter in c_list and
// reports whether they all coincide as set partitions.
inline InvarianceReport class_invariance_experiment(const std::vector<Network>& configs,
                                                    const std::vector<Complex>& c_list,
                                                    const GridSpec& z_grid, int K,
                                                    double escape_radius) {
  if (c_list.size() < 2)
    throw std::invalid_argument("class_invariance_experiment: need at least two parameters");
  InvarianceReport rep;
  for (Complex c : c_list)
    rep.partitions.push_back(partition_asymptotic(configs, c, z_grid, K, escape_radius));
  const std::vector<int> base = canonical_partition(rep.partitions[0].class_of);
  for (std::size_t i = 1; i < rep.partitions.size(); ++i) {
    const std::vector<int> cur = canonical_partition(rep.partitions[i].class_of);
    if (cur == base) continue;
    rep.all_identical = false;
    InvarianceReport::Diff d;
    d.c_index_a = 0;
    d.c_index_b = static_cast<int>(i);
    bool found = false;
    for (std::size_t a = 0; a < base.size() && !found; ++a)
      for (std::size_t b = a + 1; b < base.size() && !found; ++b)
        if ((base[a] == base[b]) != (cur[a] == cur[b])) {
          d.config_a = static_cast<int>(a);
          d.config_b = static_cast<int>(b);
          found = true;
        }
    rep.first_diff = d;
    break;
  }
  return rep;
}

}  // namespace quadnet
