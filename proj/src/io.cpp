#include "trinet/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "trinet/delta_set.hpp"
#include "trinet/errors.hpp"

namespace trinet {

namespace {

constexpr char kMagic[8] = {'T', 'R', 'I', 'N', 'E', 'T', 'v', '1'};

void put_u64_le(std::string& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return v;
}

void put_f64_le(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    put_u64_le(out, bits);
}

double get_f64_le(const unsigned char* p) {
    std::uint64_t bits = get_u64_le(p);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    double d;
    std::memcpy(&d, &bits, sizeof d);
    return d;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

ModelParams params_from_json(const std::string& kind, const nlohmann::ordered_json& m);

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const nlohmann::ordered_json& config) {
    const std::size_t n = traj.spec.n();
    nlohmann::ordered_json header;
    header["format"] = "trinet-trajectory";
    header["format_version"] = 1;
    header["tool_version"] = kToolVersion;
    header["n"] = n;
    header["state_size"] = n + n * n + n * n * n;
    header["sample_count"] = traj.samples.size();
    header["layout"] = "x|a1_row_major|a2_slice_row_major";
    auto times = nlohmann::ordered_json::array();
    for (const auto& s : traj.samples) times.push_back(s.t);
    header["sample_times"] = std::move(times);
    header["omega"] = traj.spec.omega;
    header["config"] = config;

    const std::string header_text = header.dump();
    std::string bytes;
    bytes.append(kMagic, sizeof kMagic);
    put_u64_le(bytes, header_text.size());
    bytes += header_text;
    for (const auto& s : traj.samples)
        for (double d : pack_state(s)) put_f64_le(bytes, d);
    write_file(path, bytes);
}

TrajectoryFile read_trajectory(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < sizeof kMagic + 8 ||
        std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw IoError("not a trajectory file: " + path.string());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint64_t header_len = get_u64_le(p + sizeof kMagic);
    const std::size_t header_off = sizeof kMagic + 8;
    if (bytes.size() < header_off + header_len)
        throw IoError("truncated trajectory header: " + path.string());

    nlohmann::ordered_json header;
    try {
        header = nlohmann::ordered_json::parse(bytes.substr(header_off, header_len));
    } catch (const std::exception& e) {
        throw IoError("bad trajectory header in " + path.string() + ": " + e.what());
    }

    const auto n = header.at("n").get<std::size_t>();
    const auto state_size = header.at("state_size").get<std::size_t>();
    const auto sample_count = header.at("sample_count").get<std::size_t>();
    const auto times = header.at("sample_times").get<std::vector<double>>();
    if (state_size != n + n * n + n * n * n || times.size() != sample_count)
        throw IoError("inconsistent trajectory header: " + path.string());

    const std::size_t payload_off = header_off + header_len;
    if (bytes.size() != payload_off + 8 * state_size * sample_count)
        throw IoError("trajectory payload size mismatch: " + path.string());

    TrajectoryFile out;
    out.config = header.at("config");

    const auto& model = out.config.at("model");
    const auto kind = model.at("kind").get<std::string>();
    out.traj.spec.params = params_from_json(kind, model);
    out.traj.spec.omega = header.at("omega").get<std::vector<double>>();
    out.traj.spec.rng_seed = out.config.at("seed").get<std::uint64_t>();
    out.traj.spec.freeze_degenerate = model.value("freeze_degenerate", false);

    out.traj.samples.reserve(sample_count);
    const unsigned char* q = p + payload_off;
    std::vector<double> flat(state_size);
    for (std::size_t m = 0; m < sample_count; ++m) {
        for (std::size_t e = 0; e < state_size; ++e) flat[e] = get_f64_le(q + 8 * (m * state_size + e));
        out.traj.samples.push_back(unpack_state(flat, n, times[m]));
    }
    return out;
}

namespace {

ModelParams params_from_json(const std::string& kind, const nlohmann::ordered_json& m) {
    if (kind == "symmetric_cosine") {
        SymmetricCosineParams p;
        p.delta1 = m.at("delta1").get<double>();
        p.delta2 = m.at("delta2").get<double>();
        return p;
    }
    if (kind == "antisymmetric_sine") {
        AntisymmetricSineParams p;
        p.delta1 = m.at("delta1").get<double>();
        p.delta2 = m.at("delta2").get<double>();
        return p;
    }
    if (kind == "smoothed_kuramoto_closure") {
        SmoothedKuramotoClosureParams p;
        p.alpha = m.at("alpha").get<double>();
        p.beta = m.at("beta").get<double>();
        p.gamma = m.at("gamma").get<double>();
        p.delta = m.at("delta").get<double>();
        p.zeta = m.at("zeta").get<double>();
        p.scan_all_slices = m.value("scan_all_slices", false);
        return p;
    }
    if (kind == "consensus_variance") {
        ConsensusVarianceParams p;
        p.alpha = m.at("alpha").get<double>();
        p.beta = m.at("beta").get<double>();
        p.gamma = m.at("gamma").get<double>();
        p.delta = m.at("delta").get<double>();
        p.zeta = m.at("zeta").get<double>();
        p.kappa1 = m.at("kappa1").get<double>();
        p.kappa2 = m.at("kappa2").get<double>();
        p.lambda1 = m.at("lambda1").get<double>();
        p.lambda2 = m.at("lambda2").get<double>();
        p.scan_all_slices = m.value("scan_all_slices", false);
        return p;
    }
    throw ConfigError("unknown model kind: " + kind);
}

} // namespace

void write_norm_series_csv(const std::filesystem::path& path,
                           const std::vector<NormSeriesRow>& rows) {
    std::string out =
        "t,a1_sym,a1_alt,a2_sym,a2_alt,a2_mix,r,psi,violations_unoriented,violations_flavored\n";
    for (const auto& row : rows) {
        out += format_double(row.t);
        for (double v : {row.a1_sym, row.a1_alt, row.a2_sym, row.a2_alt, row.a2_mix, row.r,
                         row.psi}) {
            out += ',';
            out += format_double(v);
        }
        out += ',' + std::to_string(row.violations_unoriented);
        out += ',' + std::to_string(row.violations_flavored);
        out += '\n';
    }
    write_file(path, out);
}

Snapshot make_snapshot(const SystemState& state, double delta, ClosureFlavor flavor,
                       const std::string& regime) {
    Snapshot snap;
    snap.t = state.t;
    snap.delta = delta;
    snap.flavor = flavor;
    snap.regime = regime;
    const auto [a1, a2] = projected_for_flavor(state.a1, state.a2, flavor);
    // The semi-simplicial flavor keeps every ordered tuple of the level
    // sets; the projected flavors keep the lexicographically minimal
    // representative of each simplex.
    const DeltaSet ds = extract(a1, a2, delta);
    const bool ordered = flavor == ClosureFlavor::SemiSimplicial;
    for (const auto& e : ds.x1)
        if (ordered || e[0] < e[1]) snap.edges.push_back({e[0], e[1], a1(e[0], e[1])});
    for (const auto& t : ds.x2)
        if (ordered || (t[0] < t[1] && t[1] < t[2]))
            snap.triads.push_back({t[0], t[1], t[2], a2(t[0], t[1], t[2])});
    return snap;
}

void write_snapshot_json(const std::filesystem::path& path, const Snapshot& snap) {
    // Hand-emitted so every float carries 17 significant digits.
    std::string out = "{\n";
    out += "  \"format\": \"trinet-snapshot\",\n";
    out += "  \"format_version\": 1,\n";
    out += std::string("  \"tool_version\": \"") + kToolVersion + "\",\n";
    out += "  \"indexing\": \"0-based\",\n";
    out += "  \"t\": " + format_double(snap.t) + ",\n";
    out += "  \"delta\": " + format_double(snap.delta) + ",\n";
    out += std::string("  \"flavor\": \"") + to_string(snap.flavor) + "\",\n";
    out += "  \"regime\": \"" + snap.regime + "\",\n";
    out += "  \"edges\": [";
    for (std::size_t e = 0; e < snap.edges.size(); ++e) {
        out += e ? ",\n    " : "\n    ";
        out += "{\"i\": " + std::to_string(snap.edges[e].i) +
               ", \"j\": " + std::to_string(snap.edges[e].j) +
               ", \"weight\": " + format_double(snap.edges[e].weight) + "}";
    }
    out += snap.edges.empty() ? "],\n" : "\n  ],\n";
    out += "  \"triads\": [";
    for (std::size_t e = 0; e < snap.triads.size(); ++e) {
        out += e ? ",\n    " : "\n    ";
        out += "{\"i\": " + std::to_string(snap.triads[e].i) +
               ", \"j\": " + std::to_string(snap.triads[e].j) +
               ", \"k\": " + std::to_string(snap.triads[e].k) +
               ", \"weight\": " + format_double(snap.triads[e].weight) + "}";
    }
    out += snap.triads.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    write_file(path, out);
}

nlohmann::ordered_json regime_to_json(const RegimeVerdict& v) {
    nlohmann::ordered_json doc;
    doc["format"] = "trinet-regime";
    doc["format_version"] = 1;
    doc["tool_version"] = kToolVersion;
    doc["regime"] = to_string(v.regime);
    doc["tail_ratios"] = {{"a1_sym", v.ratio_a1_sym}, {"a1_alt", v.ratio_a1_alt},
                          {"a2_sym", v.ratio_a2_sym}, {"a2_alt", v.ratio_a2_alt},
                          {"a2_mix", v.ratio_a2_mix}};
    doc["epsilon_rel"] = v.epsilon_rel;
    doc["window"] = {{"t_start", v.window_start}, {"t_end", v.window_end}};
    doc["degenerate"] = v.degenerate;
    doc["note"] = "finite-horizon proxy: trailing-window time averages of relative norms";
    return doc;
}

nlohmann::ordered_json retention_to_json(const RetentionRecord& rec, double delta,
                                         ClosureFlavor flavor, SymmetrizePolicy policy,
                                         const RegimeVerdict& regime) {
    nlohmann::ordered_json doc;
    doc["format"] = "trinet-retention";
    doc["format_version"] = 1;
    doc["tool_version"] = kToolVersion;
    doc["delta"] = delta;
    doc["flavor"] = to_string(flavor);
    doc["symmetrize"] = policy == SymmetrizePolicy::Project;
    if (rec.first_entry_time)
        doc["first_entry_time"] = *rec.first_entry_time;
    else
        doc["first_entry_time"] = nullptr;
    if (rec.first_exit_after_entry)
        doc["first_exit_after_entry"] = *rec.first_exit_after_entry;
    else
        doc["first_exit_after_entry"] = nullptr;
    doc["violation_counts"] = rec.violation_counts;
    doc["regime"] = regime_to_json(regime);
    return doc;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    write_file(path, doc.dump(2) + "\n");
}

nlohmann::ordered_json read_json(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

} // namespace trinet
