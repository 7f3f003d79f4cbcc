#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "trinet/tensor.hpp"

namespace trinet {

// Thresholded combinatorial skeleton of the hypergraph: vertices, ordered
// pairs with |A1| >= delta, ordered pairwise-distinct triples with
// |A2| >= delta. Levels above dimension 2 are empty by construction and
// never materialized; there are no degeneracy maps.
struct DeltaSet {
    std::vector<std::size_t> x0;                  // 0..N-1
    std::vector<std::array<std::size_t, 2>> x1;   // lexicographic
    std::vector<std::array<std::size_t, 3>> x2;   // lexicographic
    double delta = 0;
};

struct DeltaSetValidation {
    bool is_semisimplicial = false;
    // (triple, face index) whose image is missing from x1.
    std::vector<std::pair<std::array<std::size_t, 3>, std::size_t>> missing_faces;
    bool identities_hold = false; // d_i d_j = d_{j-1} d_i checked on all of x2
};

DeltaSet extract(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta);

// Face maps as printed: on pairs d0(i,j)=j, d1(i,j)=i; on triples
// d0=(j,k), d1=(i,k), d2=(i,j). Throws ConfigError when the face index
// exceeds the dimension.
std::size_t face(const std::array<std::size_t, 2>& edge, std::size_t i);
std::array<std::size_t, 2> face(const std::array<std::size_t, 3>& triangle, std::size_t i);

DeltaSetValidation validate(const DeltaSet& ds);

} // namespace trinet
