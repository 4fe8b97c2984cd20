#pragma once

// Reference classification catalogs for the two small ensembles used in the
// tests. Matrices are row-major 0/1 strings; expected_spectral groups by
// eigenvalue multiset (equivalently by integer characteristic polynomial of
// the adjacency matrix), expected_asymptotic by exact uni-J escape-raster
// equality. Labels are arbitrary letters/numbers; tests compare partitions,
// not label names.

#include <array>
#include <string_view>

namespace catalog {

struct Entry {
  std::string_view cells;  // adjacency, row-major
  char spectral;           // 'A'..'F'
  int asymptotic;          // 1..6
};

// all 36 three-node networks with 7 edges (self-loops included)
inline constexpr std::array<Entry, 36> three_node_seven_edges{{
    {"111110110", 'A', 1}, {"110111110", 'A', 1}, {"110110111", 'B', 4},
    {"111111100", 'A', 2}, {"111110101", 'C', 1}, {"110111101", 'D', 5},
    {"111101110", 'E', 1}, {"111100111", 'A', 2}, {"110101111", 'F', 3},
    {"111101101", 'A', 1}, {"101111110", 'F', 3}, {"101110111", 'D', 5},
    {"100111111", 'B', 6}, {"101111101", 'B', 4}, {"101101111", 'A', 1},
    {"111111010", 'A', 2}, {"111110011", 'D', 5}, {"110111011", 'C', 1},
    {"111111001", 'B', 6}, {"111101011", 'F', 3}, {"101111011", 'D', 5},
    {"111011110", 'F', 3}, {"111010111", 'B', 6}, {"110011111", 'D', 5},
    {"111011101", 'D', 5}, {"111001111", 'A', 2}, {"101011111", 'C', 1},
    {"111011011", 'B', 4}, {"011111110", 'E', 1}, {"011110111", 'F', 3},
    {"010111111", 'A', 2}, {"011111101", 'F', 3}, {"011101111", 'E', 1},
    {"001111111", 'A', 2}, {"011111011", 'A', 1}, {"011011111", 'A', 1},
}};

// all 16 bipartite networks with N=2 per clique and (1, 3) cross edges;
// full 4x4 adjacency with all-ones diagonal blocks
inline constexpr std::array<Entry, 16> bipartite_two_one_three{{
    {"1110110011111011", 'A', 1}, {"1101110011111011", 'B', 2},
    {"1100111011111011", 'B', 3}, {"1100110111111011", 'C', 4},
    {"1110110011110111", 'B', 3}, {"1101110011110111", 'C', 4},
    {"1100111011110111", 'A', 1}, {"1100110111110111", 'B', 2},
    {"1110110010111111", 'B', 2}, {"1101110010111111", 'A', 1},
    {"1100111010111111", 'C', 4}, {"1100110110111111", 'B', 3},
    {"1110110001111111", 'C', 4}, {"1101110001111111", 'B', 3},
    {"1100111001111111", 'B', 2}, {"1100110101111111", 'A', 1},
}};

}  // namespace catalog
