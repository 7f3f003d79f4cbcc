#pragma once

#include <cstddef>
#include <vector>

namespace trinet {

// Tolerance defaults shared by the library and the test suites. Kept in one
// record so the two cannot drift apart.
struct Tolerances {
    double split = 1e-12;       // projector algebra (idempotency, orthogonality, completeness)
    double series = 1e-10;      // per-sample Pythagorean identity on norm series
    double face = 1e-9;         // equality detection against the threshold delta
    double audit_slack = 1e-12; // numerical slack on sign-derivative inequalities
};

inline constexpr Tolerances kDefaultTol{};

// Dense real N x N coupling matrix, row-major. Indices are 0-based
// throughout the library.
class Rank2Tensor {
public:
    Rank2Tensor() = default;
    explicit Rank2Tensor(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t n() const { return n_; }
    std::size_t size() const { return entries_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    std::vector<double>& data() { return entries_; }
    const std::vector<double>& data() const { return entries_; }

    bool all_finite() const;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

// Dense real N x N x N coupling tensor, slice-row-major: entry (i,j,k)
// lives at offset i*n^2 + j*n + k.
class Rank3Tensor {
public:
    Rank3Tensor() = default;
    explicit Rank3Tensor(std::size_t n) : n_(n), entries_(n * n * n, 0.0) {}

    std::size_t n() const { return n_; }
    std::size_t size() const { return entries_.size(); }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return entries_[(i * n_ + j) * n_ + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return entries_[(i * n_ + j) * n_ + k];
    }

    std::vector<double>& data() { return entries_; }
    const std::vector<double>& data() const { return entries_; }

    bool all_finite() const;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

// S2 isotypic split: A = sym + alt with sym symmetric and alt antisymmetric.
struct IsotypicSplit2 {
    Rank2Tensor sym;
    Rank2Tensor alt;
};

// S3 isotypic split: A = sym + alt + mix. sym is the full symmetrizer
// average, alt the sign-weighted average, and mix the remainder (the
// standard-representation component).
struct IsotypicSplit3 {
    Rank3Tensor sym;
    Rank3Tensor alt;
    Rank3Tensor mix;
};

// Frobenius inner product (entrywise dot). Throws DimensionError on
// mismatched shapes.
double frobenius_inner(const Rank2Tensor& a, const Rank2Tensor& b);
double frobenius_inner(const Rank3Tensor& a, const Rank3Tensor& b);

double frobenius_norm(const Rank2Tensor& a);
double frobenius_norm(const Rank3Tensor& a);

IsotypicSplit2 split2(const Rank2Tensor& a);
IsotypicSplit3 split3(const Rank3Tensor& a);

// Individual projectors, convenient when only one component is needed.
Rank2Tensor sym_part(const Rank2Tensor& a);
Rank2Tensor alt_part(const Rank2Tensor& a);
Rank3Tensor sym_part(const Rank3Tensor& a);
Rank3Tensor alt_part(const Rank3Tensor& a);
Rank3Tensor mix_part(const Rank3Tensor& a);

// Generalised Levi-Civita symbol on 0-based indices: 0 on any repeated
// index, otherwise the parity of (i,j,k) relative to its ascending
// reordering.
int levi_civita(std::size_t i, std::size_t j, std::size_t k);

// Simultaneous node relabelling: out(i,j) = in(perm[i], perm[j]); used by
// the equivariance property tests. perm must be a permutation of 0..n-1.
Rank2Tensor relabel(const Rank2Tensor& a, const std::vector<std::size_t>& perm);
Rank3Tensor relabel(const Rank3Tensor& a, const std::vector<std::size_t>& perm);

// Elementwise helpers.
Rank2Tensor add(const Rank2Tensor& a, const Rank2Tensor& b);
Rank3Tensor add(const Rank3Tensor& a, const Rank3Tensor& b);
Rank2Tensor sub(const Rank2Tensor& a, const Rank2Tensor& b);
Rank3Tensor sub(const Rank3Tensor& a, const Rank3Tensor& b);

} // namespace trinet
