#include "trinet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trinet/errors.hpp"

namespace trinet {

namespace {

int hard_sign(double v) {
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

std::string edge_label(std::size_t a, std::size_t b) {
    std::ostringstream s;
    s << "edge(" << a << "," << b << ") below delta";
    return s.str();
}

std::string signed_edge_label(std::size_t a, std::size_t b) {
    std::ostringstream s;
    s << "signed edge(" << a << "," << b << ") below delta";
    return s.str();
}

// Trapezoidal time average of y over [times[lo], times.back()]; plain mean
// when the window holds a single sample.
double window_average(const std::vector<double>& times, const std::vector<double>& y,
                      std::size_t lo) {
    const std::size_t hi = times.size() - 1;
    if (lo >= hi) return y[hi];
    double integral = 0.0;
    for (std::size_t m = lo; m < hi; ++m)
        integral += 0.5 * (y[m] + y[m + 1]) * (times[m + 1] - times[m]);
    return integral / (times[hi] - times[lo]);
}

double ratio_or_zero(double num, double den) {
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Symmetric: return "Symmetric";
        case Regime::Antisymmetric: return "Antisymmetric";
        case Regime::Mixed: return "Mixed";
    }
    return "unknown";
}

const char* to_string(ClosureFlavor f) {
    switch (f) {
        case ClosureFlavor::Unoriented: return "unoriented";
        case ClosureFlavor::Oriented: return "oriented";
        case ClosureFlavor::SemiSimplicial: return "semisimplicial";
    }
    return "unknown";
}

NormSeries norm_series(const Trajectory& traj) {
    if (traj.samples.empty()) throw ConfigError("norm_series: empty trajectory");
    NormSeries out;
    out.times.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const IsotypicSplit2 s2 = split2(s.a1);
        const IsotypicSplit3 s3 = split3(s.a2);
        out.times.push_back(s.t);
        out.a1_sym.push_back(frobenius_norm(s2.sym));
        out.a1_alt.push_back(frobenius_norm(s2.alt));
        out.a2_sym.push_back(frobenius_norm(s3.sym));
        out.a2_alt.push_back(frobenius_norm(s3.alt));
        out.a2_mix.push_back(frobenius_norm(s3.mix));
    }
    return out;
}

RegimeVerdict classify_regime(const NormSeries& series, double epsilon_rel,
                              double window_fraction) {
    if (series.size() == 0) throw ConfigError("classify_regime: empty norm series");
    if (!(epsilon_rel > 0.0 && epsilon_rel < 1.0))
        throw ConfigError("classify_regime: epsilon_rel must lie in (0,1)");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw ConfigError("classify_regime: window_fraction must lie in (0,1]");
    const double t_start = series.times.front();
    const double t_end = series.times.back();
    if (!(t_end > t_start)) throw ConfigError("classify_regime: series spans zero time");

    const double w_start = t_end - window_fraction * (t_end - t_start);
    std::size_t lo = 0;
    while (lo + 1 < series.size() && series.times[lo] < w_start - 1e-12) ++lo;

    const auto avg = [&](const std::vector<double>& y) {
        return window_average(series.times, y, lo);
    };
    const double m1_sym = avg(series.a1_sym), m1_alt = avg(series.a1_alt);
    const double m2_sym = avg(series.a2_sym), m2_alt = avg(series.a2_alt),
                 m2_mix = avg(series.a2_mix);

    std::vector<double> tot1(series.size()), tot2(series.size());
    for (std::size_t m = 0; m < series.size(); ++m) {
        tot1[m] = std::hypot(series.a1_sym[m], series.a1_alt[m]);
        tot2[m] = std::sqrt(series.a2_sym[m] * series.a2_sym[m] +
                            series.a2_alt[m] * series.a2_alt[m] +
                            series.a2_mix[m] * series.a2_mix[m]);
    }
    const double m1_tot = window_average(series.times, tot1, lo);
    const double m2_tot = window_average(series.times, tot2, lo);

    RegimeVerdict v;
    v.ratio_a1_sym = ratio_or_zero(m1_sym, m1_tot);
    v.ratio_a1_alt = ratio_or_zero(m1_alt, m1_tot);
    v.ratio_a2_sym = ratio_or_zero(m2_sym, m2_tot);
    v.ratio_a2_alt = ratio_or_zero(m2_alt, m2_tot);
    v.ratio_a2_mix = ratio_or_zero(m2_mix, m2_tot);
    v.epsilon_rel = epsilon_rel;
    v.window_start = series.times[lo];
    v.window_end = t_end;

    const bool symmetric_ok = v.ratio_a1_alt < epsilon_rel && v.ratio_a2_alt < epsilon_rel &&
                              v.ratio_a2_mix < epsilon_rel;
    const bool antisymmetric_ok = v.ratio_a1_sym < epsilon_rel && v.ratio_a2_sym < epsilon_rel &&
                                  v.ratio_a2_mix < epsilon_rel;
    v.degenerate = symmetric_ok && antisymmetric_ok;
    if (symmetric_ok)
        v.regime = Regime::Symmetric;
    else if (antisymmetric_ok)
        v.regime = Regime::Antisymmetric;
    else
        v.regime = Regime::Mixed;
    return v;
}

OrderParameter order_parameter(std::span<const double> phases) {
    if (phases.empty()) throw ConfigError("order_parameter: empty phase vector");
    double re = 0.0, im = 0.0;
    for (double th : phases) {
        re += std::cos(th);
        im += std::sin(th);
    }
    re /= static_cast<double>(phases.size());
    im /= static_cast<double>(phases.size());
    OrderParameter out;
    out.r = std::hypot(re, im);
    out.psi = std::atan2(im, re);
    if (out.psi <= -M_PI) out.psi = M_PI; // report mean phase in (-pi, pi]
    return out;
}

ClosureReport check_closure_unoriented(const Rank2Tensor& a1, const Rank3Tensor& a2,
                                       double delta) {
    if (!(delta > 0.0)) throw ConfigError("closure check requires delta > 0");
    const std::size_t n = a2.n();
    ClosureReport report;
    report.flavor = ClosureFlavor::Unoriented;
    report.delta = delta;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (std::abs(a2(i, j, k)) < delta) continue;
                std::string label;
                if (std::abs(a1(i, j)) < delta) label = edge_label(i, j);
                else if (std::abs(a1(i, k)) < delta) label = edge_label(i, k);
                else if (std::abs(a1(j, k)) < delta) label = edge_label(j, k);
                if (!label.empty()) report.violations.push_back({{i, j, k}, label});
            }
        }
    }
    report.in_region = report.violations.empty();
    return report;
}

ClosureReport check_closure_oriented(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta) {
    if (!(delta > 0.0)) throw ConfigError("closure check requires delta > 0");
    const std::size_t n = a2.n();
    ClosureReport report;
    report.flavor = ClosureFlavor::Oriented;
    report.delta = delta;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (std::abs(a2(i, j, k)) < delta) continue;
                const int sigma = hard_sign(a2(i, j, k));
                // Signed edge coordinates: below delta means wrong magnitude
                // or wrong orientation.
                if (sigma * a1(i, j) < delta)
                    report.violations.push_back({{i, j, k}, signed_edge_label(i, j)});
                else if (sigma * a1(i, k) < delta)
                    report.violations.push_back({{i, j, k}, signed_edge_label(i, k)});
                else if (sigma * a1(j, k) < delta)
                    report.violations.push_back({{i, j, k}, signed_edge_label(j, k)});
            }
        }
    }
    report.in_region = report.violations.empty();
    return report;
}

ClosureReport check_closure_semisimplicial(const Rank2Tensor& a1, const Rank3Tensor& a2,
                                           double delta) {
    if (!(delta > 0.0)) throw ConfigError("closure check requires delta > 0");
    const std::size_t n = a2.n();
    ClosureReport report;
    report.flavor = ClosureFlavor::SemiSimplicial;
    report.delta = delta;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || k == i) continue;
                if (std::abs(a2(i, j, k)) < delta) continue;
                std::string label;
                if (std::abs(a1(i, j)) < delta) label = edge_label(i, j);
                else if (std::abs(a1(i, k)) < delta) label = edge_label(i, k);
                else if (std::abs(a1(j, k)) < delta) label = edge_label(j, k);
                if (!label.empty()) report.violations.push_back({{i, j, k}, label});
            }
        }
    }
    report.in_region = report.violations.empty();
    return report;
}

ClosureReport check_closure(const Rank2Tensor& a1, const Rank3Tensor& a2, double delta,
                            ClosureFlavor flavor) {
    switch (flavor) {
        case ClosureFlavor::Unoriented: return check_closure_unoriented(a1, a2, delta);
        case ClosureFlavor::Oriented: return check_closure_oriented(a1, a2, delta);
        case ClosureFlavor::SemiSimplicial: return check_closure_semisimplicial(a1, a2, delta);
    }
    throw ConfigError("check_closure: unknown flavor");
}

std::pair<Rank2Tensor, Rank3Tensor> projected_for_flavor(const Rank2Tensor& a1,
                                                         const Rank3Tensor& a2,
                                                         ClosureFlavor flavor) {
    switch (flavor) {
        case ClosureFlavor::Unoriented: return {sym_part(a1), sym_part(a2)};
        case ClosureFlavor::Oriented: return {alt_part(a1), alt_part(a2)};
        case ClosureFlavor::SemiSimplicial: return {a1, a2};
    }
    throw ConfigError("projected_for_flavor: unknown flavor");
}

SymmetrizePolicy default_policy(ClosureFlavor flavor) {
    return flavor == ClosureFlavor::SemiSimplicial ? SymmetrizePolicy::None
                                                   : SymmetrizePolicy::Project;
}

FaceSet boundary_faces(const Rank2Tensor& a1, const Rank3Tensor& a2, std::size_t i, std::size_t j,
                       std::size_t k, double delta, ClosureFlavor flavor, double tol_face) {
    const double q = std::abs(a2(i, j, k));
    double e1, e2, e3;
    if (flavor == ClosureFlavor::Oriented) {
        const double sigma = hard_sign(a2(i, j, k));
        e1 = sigma * a1(i, j);
        e2 = sigma * a1(i, k);
        e3 = sigma * a1(j, k);
    } else {
        e1 = std::abs(a1(i, j));
        e2 = std::abs(a1(i, k));
        e3 = std::abs(a1(j, k));
    }
    const auto at = [&](double v) { return std::abs(v - delta) <= tol_face; };
    const auto above = [&](double v) { return v >= delta - tol_face; };

    FaceSet f;
    f.x1 = at(q) && std::min({e1, e2, e3}) <= delta + tol_face;
    f.x2 = above(q) && at(e1) && above(e2) && above(e3);
    f.x3 = above(q) && at(e2) && above(e1) && above(e3);
    f.x4 = above(q) && at(e3) && above(e1) && above(e2);
    return f;
}

BoundaryAudit audit_outward_pointing(const ModelSpec& spec, std::span<const SystemState> points,
                                     double delta, ClosureFlavor flavor, double tol_face,
                                     double slack) {
    BoundaryAudit audit;
    const std::size_t n = spec.n();
    const bool ordered = flavor == ClosureFlavor::SemiSimplicial;

    for (std::size_t p = 0; p < points.size(); ++p) {
        const SystemState& s = points[p];
        PointAudit pa;
        pa.point_index = p;

        std::optional<Derivative> rhs; // evaluated lazily, once per point
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = ordered ? 0 : i + 1; j < n; ++j) {
                for (std::size_t k = ordered ? 0 : j + 1; k < n; ++k) {
                    if (ordered && (i == j || j == k || k == i)) continue;
                    const FaceSet faces =
                        boundary_faces(s.a1, s.a2, i, j, k, delta, flavor, tol_face);
                    if (!faces.any()) continue;
                    if (!rhs) rhs = eval_rhs(spec, s);

                    TripleAudit ta;
                    ta.triple = {i, j, k};
                    ta.faces = faces;
                    const double sq = hard_sign(s.a2(i, j, k));
                    if (flavor == ClosureFlavor::Oriented) {
                        ta.sign_derivatives = {sq * rhs->da2(i, j, k), sq * rhs->da1(i, j),
                                               sq * rhs->da1(i, k), sq * rhs->da1(j, k)};
                    } else {
                        ta.sign_derivatives = {sq * rhs->da2(i, j, k),
                                               hard_sign(s.a1(i, j)) * rhs->da1(i, j),
                                               hard_sign(s.a1(i, k)) * rhs->da1(i, k),
                                               hard_sign(s.a1(j, k)) * rhs->da1(j, k)};
                    }
                    ta.pass = true;
                    if (faces.x1 && !(ta.sign_derivatives[0] <= slack)) ta.pass = false;
                    if (faces.x2 && !(ta.sign_derivatives[1] >= -slack)) ta.pass = false;
                    if (faces.x3 && !(ta.sign_derivatives[2] >= -slack)) ta.pass = false;
                    if (faces.x4 && !(ta.sign_derivatives[3] >= -slack)) ta.pass = false;
                    pa.triples.push_back(ta);
                }
            }
        }
        pa.on_boundary = !pa.triples.empty();
        pa.pass = pa.on_boundary &&
                  std::all_of(pa.triples.begin(), pa.triples.end(),
                              [](const TripleAudit& t) { return t.pass; });
        if (pa.on_boundary) {
            ++audit.boundary_points;
            if (pa.pass) ++audit.passed_points;
        }
        audit.points.push_back(std::move(pa));
    }
    audit.pass = audit.passed_points == audit.boundary_points;
    return audit;
}

RetentionRecord scan_retention(const Trajectory& traj, double delta, ClosureFlavor flavor,
                               SymmetrizePolicy policy) {
    if (traj.samples.empty()) throw ConfigError("scan_retention: empty trajectory");
    RetentionRecord rec;
    rec.violation_counts.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        ClosureReport report;
        if (policy == SymmetrizePolicy::Project) {
            const auto [a1, a2] = projected_for_flavor(s.a1, s.a2, flavor);
            report = check_closure(a1, a2, delta, flavor);
        } else {
            report = check_closure(s.a1, s.a2, delta, flavor);
        }
        const std::size_t count = report.violations.size();
        rec.violation_counts.push_back(count);
        if (!rec.first_entry_time && count == 0) rec.first_entry_time = s.t;
        if (rec.first_entry_time && !rec.first_exit_after_entry && count > 0 &&
            s.t > *rec.first_entry_time)
            rec.first_exit_after_entry = s.t;
    }
    return rec;
}

} // namespace trinet
