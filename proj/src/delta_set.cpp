#include "trinet/delta_set.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "trinet/errors.hpp"

namespace trinet {

DeltaSet extract(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta) {
    if (!(delta > 0.0)) throw ConfigError("extract requires delta > 0");
    const std::size_t n = a1.n();
    DeltaSet ds;
    ds.delta = delta;
    ds.x0.resize(n);
    for (std::size_t i = 0; i < n; ++i) ds.x0[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && std::abs(a1(i, j)) >= delta) ds.x1.push_back({i, j});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (i != j && j != k && k != i && std::abs(a2(i, j, k)) >= delta)
                    ds.x2.push_back({i, j, k});
    return ds;
}

std::size_t face(const std::array<std::size_t, 2>& edge, std::size_t i) {
    switch (i) {
        case 0: return edge[1];
        case 1: return edge[0];
        default: break;
    }
    std::ostringstream msg;
    msg << "face index " << i << " out of range for a 1-simplex";
    throw ConfigError(msg.str());
}

std::array<std::size_t, 2> face(const std::array<std::size_t, 3>& triangle, std::size_t i) {
    switch (i) {
        case 0: return {triangle[1], triangle[2]};
        case 1: return {triangle[0], triangle[2]};
        case 2: return {triangle[0], triangle[1]};
        default: break;
    }
    std::ostringstream msg;
    msg << "face index " << i << " out of range for a 2-simplex";
    throw ConfigError(msg.str());
}

DeltaSetValidation validate(const DeltaSet& ds) {
    DeltaSetValidation out;
    const std::set<std::array<std::size_t, 2>> edges(ds.x1.begin(), ds.x1.end());
    for (const auto& tri : ds.x2)
        for (std::size_t i = 0; i < 3; ++i)
            if (!edges.count(face(tri, i))) out.missing_faces.emplace_back(tri, i);
    out.is_semisimplicial = out.missing_faces.empty();

    // Simplicial identities d_i d_j = d_{j-1} d_i (i < j) on every triangle.
    out.identities_hold = true;
    for (const auto& tri : ds.x2) {
        for (std::size_t j = 1; j < 3 && out.identities_hold; ++j)
            for (std::size_t i = 0; i < j && out.identities_hold; ++i)
                if (face(face(tri, j), i) != face(face(tri, i), j - 1))
                    out.identities_hold = false;
    }
    return out;
}

} // namespace trinet
