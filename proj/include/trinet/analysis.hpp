#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trinet/integrate.hpp"
#include "trinet/model.hpp"
#include "trinet/tensor.hpp"

namespace trinet {

enum class Regime { Symmetric, Antisymmetric, Mixed };
enum class ClosureFlavor { Unoriented, Oriented, SemiSimplicial };
enum class SymmetrizePolicy { None, Project };

const char* to_string(Regime r);
const char* to_string(ClosureFlavor f);

// Frobenius norms of the isotypic components along a trajectory.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> a1_sym, a1_alt;
    std::vector<double> a2_sym, a2_alt, a2_mix;

    std::size_t size() const { return times.size(); }
};

struct RegimeVerdict {
    Regime regime = Regime::Mixed;
    // Trailing-window time averages of each component norm relative to the
    // time average of its layer's total norm.
    double ratio_a1_sym = 0, ratio_a1_alt = 0;
    double ratio_a2_sym = 0, ratio_a2_alt = 0, ratio_a2_mix = 0;
    double epsilon_rel = 0;
    double window_start = 0, window_end = 0;
    bool degenerate = false; // both criteria passed (vanishing total norm)
};

struct Violation {
    std::array<std::size_t, 3> triple;
    std::string label; // names the failing condition, e.g. "edge(0,1) below delta"
};

struct ClosureReport {
    ClosureFlavor flavor = ClosureFlavor::Unoriented;
    double delta = 0;
    std::vector<Violation> violations;
    bool in_region = false;
};

// Active boundary faces of the local bad set for one triple:
//   x1 = triad at threshold, x2/x3/x4 = edge (i,j)/(i,k)/(j,k) at threshold.
struct FaceSet {
    bool x1 = false, x2 = false, x3 = false, x4 = false;
    bool any() const { return x1 || x2 || x3 || x4; }
};

struct TripleAudit {
    std::array<std::size_t, 3> triple;
    FaceSet faces;
    // Sign-derivative values (triad, edge ij, edge ik, edge jk); the oriented
    // flavor uses the signed edge coordinates.
    std::array<double, 4> sign_derivatives{};
    bool pass = false;
};

struct PointAudit {
    std::size_t point_index = 0;
    bool on_boundary = false; // false => excluded from the aggregate
    std::vector<TripleAudit> triples;
    bool pass = false;
};

struct BoundaryAudit {
    std::vector<PointAudit> points;
    std::size_t boundary_points = 0;
    std::size_t passed_points = 0;
    bool pass = false; // every boundary point passed
};

struct RetentionRecord {
    std::optional<double> first_entry_time;
    std::optional<double> first_exit_after_entry;
    std::vector<std::size_t> violation_counts; // one per sample
};

struct OrderParameter {
    double r = 0;   // coherence in [0,1]
    double psi = 0; // mean phase in (-pi, pi]
};

NormSeries norm_series(const Trajectory& traj);

// Finite-horizon proxy for the asymptotic regime: trailing-window relative
// norms against epsilon_rel. window_fraction in (0,1] selects the tail.
RegimeVerdict classify_regime(const NormSeries& series, double epsilon_rel,
                              double window_fraction);

OrderParameter order_parameter(std::span<const double> phases);

// delta-threshold downward-closure checks. The unoriented/oriented variants
// read the representative entries for i<j<k and expect tensors already
// projected onto the matching isotypic component (see projected_for_flavor);
// the semi-simplicial variant checks every ordered pairwise-distinct triple
// on the raw tensors.
ClosureReport check_closure_unoriented(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta);
ClosureReport check_closure_oriented(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta);
ClosureReport check_closure_semisimplicial(const Rank2Tensor& a1, const Rank3Tensor& a2,
                                           double delta);
ClosureReport check_closure(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta,
                            ClosureFlavor flavor);

// Projection applied before closure checks: sym parts for Unoriented, alt
// parts for Oriented, identity for SemiSimplicial.
std::pair<Rank2Tensor, Rank3Tensor> projected_for_flavor(const Rank2Tensor& a1,
                                                         const Rank3Tensor& a2,
                                                         ClosureFlavor flavor);

SymmetrizePolicy default_policy(ClosureFlavor flavor);

// Which boundary faces of the (i,j,k) bad set the point lies on; equalities
// are detected with absolute tolerance tol_face.
FaceSet boundary_faces(const Rank2Tensor& a1, const Rank3Tensor& a2, std::size_t i, std::size_t j,
                       std::size_t k, double delta, ClosureFlavor flavor,
                       double tol_face = kDefaultTol.face);

// Evaluates the model RHS at each point and checks the sign-derivative
// inequalities on every active face (per-face checks suffice for the normal
// cones at singular points). Points are audited as given; project them first
// in the symmetric/antisymmetric flavors.
BoundaryAudit audit_outward_pointing(const ModelSpec& spec, std::span<const SystemState> points,
                                     double delta, ClosureFlavor flavor,
                                     double tol_face = kDefaultTol.face,
                                     double slack = kDefaultTol.audit_slack);

// Per-sample closure scan: entry time into the good region and the first
// exit after entry, at sample resolution.
RetentionRecord scan_retention(const Trajectory& traj, double delta, ClosureFlavor flavor,
                               SymmetrizePolicy policy);

} // namespace trinet
