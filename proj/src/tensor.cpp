#include "trinet/tensor.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "trinet/errors.hpp"

namespace trinet {

namespace {

void require_same_shape(std::size_t na, std::size_t nb, int rank) {
    if (na != nb) {
        std::ostringstream msg;
        msg << "frobenius_inner: rank-" << rank << " shape mismatch: "
            << na << "^" << rank << " vs " << nb << "^" << rank;
        throw DimensionError(msg.str());
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// The six arrangements of (i,j,k) with their permutation signs.
struct Arrangement {
    int a, b, c;
    int sign;
};
constexpr std::array<Arrangement, 6> kS3 = {{
    {0, 1, 2, +1}, // identity
    {0, 2, 1, -1},
    {1, 0, 2, -1},
    {1, 2, 0, +1}, // 3-cycle
    {2, 0, 1, +1}, // 3-cycle
    {2, 1, 0, -1},
}};

} // namespace

bool Rank2Tensor::all_finite() const {
    for (double v : entries_)
        if (!std::isfinite(v)) return false;
    return true;
}

bool Rank3Tensor::all_finite() const {
    for (double v : entries_)
        if (!std::isfinite(v)) return false;
    return true;
}

double frobenius_inner(const Rank2Tensor& a, const Rank2Tensor& b) {
    require_same_shape(a.n(), b.n(), 2);
    return dot(a.data(), b.data());
}

double frobenius_inner(const Rank3Tensor& a, const Rank3Tensor& b) {
    require_same_shape(a.n(), b.n(), 3);
    return dot(a.data(), b.data());
}

double frobenius_norm(const Rank2Tensor& a) {
    return std::sqrt(dot(a.data(), a.data()));
}

double frobenius_norm(const Rank3Tensor& a) {
    return std::sqrt(dot(a.data(), a.data()));
}

IsotypicSplit2 split2(const Rank2Tensor& a) {
    const std::size_t n = a.n();
    IsotypicSplit2 out{Rank2Tensor(n), Rank2Tensor(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.sym(i, j) = 0.5 * (a(i, j) + a(j, i));
            out.alt(i, j) = 0.5 * (a(i, j) - a(j, i));
        }
    }
    return out;
}

IsotypicSplit3 split3(const Rank3Tensor& a) {
    const std::size_t n = a.n();
    IsotypicSplit3 out{Rank3Tensor(n), Rank3Tensor(n), Rank3Tensor(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t idx[3] = {i, j, k};
                double s = 0.0, t = 0.0;
                for (const auto& p : kS3) {
                    const double v = a(idx[p.a], idx[p.b], idx[p.c]);
                    s += v;
                    t += p.sign * v;
                }
                const double sym = s / 6.0;
                // The signed terms cancel pairwise on repeated indices; force
                // the exact zero rather than leaving rounding residue.
                const double alt = (i == j || j == k || k == i) ? 0.0 : t / 6.0;
                out.sym(i, j, k) = sym;
                out.alt(i, j, k) = alt;
                out.mix(i, j, k) = a(i, j, k) - sym - alt;
            }
        }
    }
    return out;
}

Rank2Tensor sym_part(const Rank2Tensor& a) { return split2(a).sym; }
Rank2Tensor alt_part(const Rank2Tensor& a) { return split2(a).alt; }
Rank3Tensor sym_part(const Rank3Tensor& a) { return split3(a).sym; }
Rank3Tensor alt_part(const Rank3Tensor& a) { return split3(a).alt; }
Rank3Tensor mix_part(const Rank3Tensor& a) { return split3(a).mix; }

int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || k == i) return 0;
    // Sign of the permutation taking the ascending reordering to (i,j,k):
    // product of pairwise difference signs.
    int sign = 1;
    if (i > j) sign = -sign;
    if (i > k) sign = -sign;
    if (j > k) sign = -sign;
    return sign;
}

Rank2Tensor relabel(const Rank2Tensor& a, const std::vector<std::size_t>& perm) {
    const std::size_t n = a.n();
    Rank2Tensor out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = a(perm[i], perm[j]);
    return out;
}

Rank3Tensor relabel(const Rank3Tensor& a, const std::vector<std::size_t>& perm) {
    const std::size_t n = a.n();
    Rank3Tensor out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out(i, j, k) = a(perm[i], perm[j], perm[k]);
    return out;
}

Rank2Tensor add(const Rank2Tensor& a, const Rank2Tensor& b) {
    require_same_shape(a.n(), b.n(), 2);
    Rank2Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Rank3Tensor add(const Rank3Tensor& a, const Rank3Tensor& b) {
    require_same_shape(a.n(), b.n(), 3);
    Rank3Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Rank2Tensor sub(const Rank2Tensor& a, const Rank2Tensor& b) {
    require_same_shape(a.n(), b.n(), 2);
    Rank2Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

Rank3Tensor sub(const Rank3Tensor& a, const Rank3Tensor& b) {
    require_same_shape(a.n(), b.n(), 3);
    Rank3Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

} // namespace trinet
