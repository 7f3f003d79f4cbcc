#include "trinet/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "trinet/errors.hpp"
#include "trinet/rng.hpp"

namespace trinet {

namespace {

using Json = nlohmann::ordered_json;

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown configuration key: " + path + "." + it.key());
}

double get_number(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError("missing key: " + path + "." + key);
    if (!obj.at(key).is_number())
        throw ConfigError("expected a number at " + path + "." + key);
    return obj.at(key).get<double>();
}

Sampler parse_sampler(const Json& obj, const std::string& path, bool allow_linspace) {
    if (!obj.is_object()) throw ConfigError("expected an object at " + path);
    Sampler s;
    if (obj.contains("values")) {
        reject_unknown_keys(obj, {"values"}, path);
        s.kind = Sampler::Kind::Values;
        s.values = obj.at("values").get<std::vector<double>>();
        return s;
    }
    const std::string dist = obj.value("dist", "");
    if (dist == "uniform") {
        reject_unknown_keys(obj, {"dist", "low", "high"}, path);
        s.kind = Sampler::Kind::Uniform;
        s.a = get_number(obj, "low", path);
        s.b = get_number(obj, "high", path);
    } else if (dist == "normal") {
        reject_unknown_keys(obj, {"dist", "mean", "stddev"}, path);
        s.kind = Sampler::Kind::Normal;
        s.a = get_number(obj, "mean", path);
        s.b = get_number(obj, "stddev", path);
    } else if (dist == "linspace" && allow_linspace) {
        reject_unknown_keys(obj, {"dist", "low", "high"}, path);
        s.kind = Sampler::Kind::Linspace;
        s.a = get_number(obj, "low", path);
        s.b = get_number(obj, "high", path);
    } else if (dist == "zeros") {
        reject_unknown_keys(obj, {"dist"}, path);
        s.kind = Sampler::Kind::Zeros;
    } else {
        throw ConfigError("unknown distribution '" + dist + "' at " + path);
    }
    return s;
}

Json sampler_to_json(const Sampler& s) {
    Json out;
    switch (s.kind) {
        case Sampler::Kind::Uniform:
            out["dist"] = "uniform";
            out["low"] = s.a;
            out["high"] = s.b;
            break;
        case Sampler::Kind::Normal:
            out["dist"] = "normal";
            out["mean"] = s.a;
            out["stddev"] = s.b;
            break;
        case Sampler::Kind::Linspace:
            out["dist"] = "linspace";
            out["low"] = s.a;
            out["high"] = s.b;
            break;
        case Sampler::Kind::Values:
            out["values"] = s.values;
            break;
        case Sampler::Kind::Zeros:
            out["dist"] = "zeros";
            break;
    }
    return out;
}

} // namespace

ClosureFlavor flavor_from_string(const std::string& s) {
    if (s == "unoriented") return ClosureFlavor::Unoriented;
    if (s == "oriented") return ClosureFlavor::Oriented;
    if (s == "semisimplicial") return ClosureFlavor::SemiSimplicial;
    throw ConfigError("unknown closure flavor '" + s +
                      "' (expected unoriented|oriented|semisimplicial)");
}

RunConfig parse_run_config(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(doc, {"schema_version", "name", "n", "seed", "model", "omega", "initial",
                              "plan", "regime", "closure"},
                        "$");
    if (!doc.contains("schema_version")) throw ConfigError("missing key: $.schema_version");
    if (doc.at("schema_version").get<int>() != 1)
        throw ConfigError("unsupported schema_version (expected 1)");

    RunConfig cfg;
    cfg.name = doc.value("name", "run");
    if (!doc.contains("n")) throw ConfigError("missing key: $.n");
    cfg.n = doc.at("n").get<std::size_t>();
    if (cfg.n < 3) throw ConfigError("$.n must be >= 3");
    if (cfg.n > 64) throw ConfigError("$.n must be <= 64 (dense tensors)");
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned())
            throw ConfigError("$.seed must be an unsigned 64-bit integer");
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }

    if (!doc.contains("model")) throw ConfigError("missing key: $.model");
    const Json& m = doc.at("model");
    const std::string kind = m.value("kind", "");
    const auto num = [&](const char* key) { return get_number(m, key, "$.model"); };
    if (kind == "symmetric_cosine" || kind == "antisymmetric_sine") {
        reject_unknown_keys(m, {"kind", "delta1", "delta2", "freeze_degenerate"}, "$.model");
        if (kind == "symmetric_cosine") {
            SymmetricCosineParams p;
            p.delta1 = num("delta1");
            p.delta2 = num("delta2");
            cfg.params = p;
        } else {
            AntisymmetricSineParams p;
            p.delta1 = num("delta1");
            p.delta2 = num("delta2");
            cfg.params = p;
        }
    } else if (kind == "smoothed_kuramoto_closure") {
        reject_unknown_keys(m, {"kind", "alpha", "beta", "gamma", "delta", "zeta",
                                "scan_all_slices", "freeze_degenerate"},
                            "$.model");
        SmoothedKuramotoClosureParams p;
        p.alpha = num("alpha");
        p.beta = num("beta");
        p.gamma = num("gamma");
        p.delta = num("delta");
        p.zeta = num("zeta");
        p.scan_all_slices = m.value("scan_all_slices", false);
        cfg.params = p;
    } else if (kind == "consensus_variance") {
        reject_unknown_keys(m, {"kind", "alpha", "beta", "gamma", "delta", "zeta", "kappa1",
                                "kappa2", "lambda1", "lambda2", "scan_all_slices",
                                "freeze_degenerate"},
                            "$.model");
        ConsensusVarianceParams p;
        p.alpha = num("alpha");
        p.beta = num("beta");
        p.gamma = num("gamma");
        p.delta = num("delta");
        p.zeta = num("zeta");
        p.kappa1 = num("kappa1");
        p.kappa2 = num("kappa2");
        p.lambda1 = num("lambda1");
        p.lambda2 = num("lambda2");
        p.scan_all_slices = m.value("scan_all_slices", false);
        cfg.params = p;
    } else {
        throw ConfigError("unknown model kind '" + kind + "' at $.model.kind");
    }
    cfg.freeze_degenerate = m.value("freeze_degenerate", false);

    if (!doc.contains("omega")) throw ConfigError("missing key: $.omega");
    cfg.omega = parse_sampler(doc.at("omega"), "$.omega", /*allow_linspace=*/true);
    if (cfg.omega.kind == Sampler::Kind::Values && cfg.omega.values.size() != cfg.n)
        throw ConfigError("$.omega.values must have exactly n entries");

    if (!doc.contains("initial")) throw ConfigError("missing key: $.initial");
    const Json& init = doc.at("initial");
    reject_unknown_keys(init, {"x", "a1", "a2", "set_a1", "set_a2", "symmetrize_overrides"},
                        "$.initial");
    cfg.initial.x = parse_sampler(init.at("x"), "$.initial.x", /*allow_linspace=*/true);
    if (cfg.initial.x.kind == Sampler::Kind::Values && cfg.initial.x.values.size() != cfg.n)
        throw ConfigError("$.initial.x.values must have exactly n entries");
    cfg.initial.a1 = parse_sampler(init.at("a1"), "$.initial.a1", /*allow_linspace=*/false);
    cfg.initial.a2 = parse_sampler(init.at("a2"), "$.initial.a2", /*allow_linspace=*/false);
    if (init.contains("set_a1"))
        for (const auto& row : init.at("set_a1")) {
            if (!row.is_array() || row.size() != 3)
                throw ConfigError("$.initial.set_a1 entries must be [i, j, value]");
            cfg.initial.set_a1.push_back(
                {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
    if (init.contains("set_a2"))
        for (const auto& row : init.at("set_a2")) {
            if (!row.is_array() || row.size() != 4)
                throw ConfigError("$.initial.set_a2 entries must be [i, j, k, value]");
            cfg.initial.set_a2.push_back({row[0].get<double>(), row[1].get<double>(),
                                          row[2].get<double>(), row[3].get<double>()});
        }
    cfg.initial.symmetrize_overrides = init.value("symmetrize_overrides", false);

    if (!doc.contains("plan")) throw ConfigError("missing key: $.plan");
    const Json& plan = doc.at("plan");
    reject_unknown_keys(plan, {"t0", "t1", "dt", "sample_count"}, "$.plan");
    cfg.plan.t0 = get_number(plan, "t0", "$.plan");
    cfg.plan.t1 = get_number(plan, "t1", "$.plan");
    cfg.plan.dt = get_number(plan, "dt", "$.plan");
    cfg.plan.sample_count = plan.at("sample_count").get<std::size_t>();
    cfg.plan.validate();

    if (doc.contains("regime")) {
        const Json& r = doc.at("regime");
        reject_unknown_keys(r, {"epsilon_rel", "window_fraction"}, "$.regime");
        if (r.contains("epsilon_rel")) cfg.regime.epsilon_rel = r.at("epsilon_rel").get<double>();
        if (r.contains("window_fraction"))
            cfg.regime.window_fraction = r.at("window_fraction").get<double>();
    }
    if (doc.contains("closure")) {
        const Json& c = doc.at("closure");
        reject_unknown_keys(c, {"delta", "flavor", "symmetrize"}, "$.closure");
        if (c.contains("delta")) cfg.closure.delta = c.at("delta").get<double>();
        if (c.contains("flavor")) cfg.closure.flavor = flavor_from_string(c.at("flavor"));
        if (c.contains("symmetrize")) cfg.closure.symmetrize = c.at("symmetrize").get<bool>();
        if (!(cfg.closure.delta > 0.0)) throw ConfigError("$.closure.delta must be > 0");
    }
    return cfg;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& cfg) {
    Json doc;
    doc["schema_version"] = 1;
    doc["name"] = cfg.name;
    doc["n"] = cfg.n;
    doc["seed"] = cfg.seed;

    Json model;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SymmetricCosineParams>) {
                model["kind"] = "symmetric_cosine";
                model["delta1"] = p.delta1;
                model["delta2"] = p.delta2;
            } else if constexpr (std::is_same_v<P, AntisymmetricSineParams>) {
                model["kind"] = "antisymmetric_sine";
                model["delta1"] = p.delta1;
                model["delta2"] = p.delta2;
            } else if constexpr (std::is_same_v<P, SmoothedKuramotoClosureParams>) {
                model["kind"] = "smoothed_kuramoto_closure";
                model["alpha"] = p.alpha;
                model["beta"] = p.beta;
                model["gamma"] = p.gamma;
                model["delta"] = p.delta;
                model["zeta"] = p.zeta;
                model["scan_all_slices"] = p.scan_all_slices;
            } else {
                model["kind"] = "consensus_variance";
                model["alpha"] = p.alpha;
                model["beta"] = p.beta;
                model["gamma"] = p.gamma;
                model["delta"] = p.delta;
                model["zeta"] = p.zeta;
                model["kappa1"] = p.kappa1;
                model["kappa2"] = p.kappa2;
                model["lambda1"] = p.lambda1;
                model["lambda2"] = p.lambda2;
                model["scan_all_slices"] = p.scan_all_slices;
            }
        },
        cfg.params);
    model["freeze_degenerate"] = cfg.freeze_degenerate;
    doc["model"] = std::move(model);

    doc["omega"] = sampler_to_json(cfg.omega);
    Json init;
    init["x"] = sampler_to_json(cfg.initial.x);
    init["a1"] = sampler_to_json(cfg.initial.a1);
    init["a2"] = sampler_to_json(cfg.initial.a2);
    if (!cfg.initial.set_a1.empty()) {
        auto rows = Json::array();
        for (const auto& r : cfg.initial.set_a1) rows.push_back({r[0], r[1], r[2]});
        init["set_a1"] = std::move(rows);
    }
    if (!cfg.initial.set_a2.empty()) {
        auto rows = Json::array();
        for (const auto& r : cfg.initial.set_a2) rows.push_back({r[0], r[1], r[2], r[3]});
        init["set_a2"] = std::move(rows);
    }
    init["symmetrize_overrides"] = cfg.initial.symmetrize_overrides;
    doc["initial"] = std::move(init);

    doc["plan"] = {{"t0", cfg.plan.t0}, {"t1", cfg.plan.t1}, {"dt", cfg.plan.dt},
                   {"sample_count", cfg.plan.sample_count}};
    doc["regime"] = {{"epsilon_rel", cfg.regime.epsilon_rel},
                     {"window_fraction", cfg.regime.window_fraction}};
    doc["closure"] = {{"delta", cfg.closure.delta},
                      {"flavor", to_string(cfg.closure.flavor)},
                      {"symmetrize", cfg.closure.symmetrize}};
    return doc;
}

std::vector<std::string> preset_names() {
    return {"sym-case", "antisym-case", "kuramoto-closure", "consensus-persistent"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.name = name;
    if (name == "sym-case") {
        cfg.n = 5;
        cfg.seed = 101;
        SymmetricCosineParams p;
        p.delta1 = 0.1;
        p.delta2 = 0.1;
        cfg.params = p;
        cfg.omega = {Sampler::Kind::Normal, 0.0, 1.0, {}};
        cfg.initial.x = {Sampler::Kind::Uniform, 0.0, 2.0 * M_PI, {}};
        cfg.initial.a1 = {Sampler::Kind::Uniform, -1.0, 1.0, {}};
        cfg.initial.a2 = {Sampler::Kind::Uniform, -1.0, 1.0, {}};
        cfg.plan = {0.0, 50.0, 0.01, 500};
        cfg.closure = {0.5, ClosureFlavor::Unoriented, true};
    } else if (name == "antisym-case") {
        cfg.n = 5;
        cfg.seed = 237;
        AntisymmetricSineParams p;
        p.delta1 = 0.1;
        p.delta2 = 0.1;
        cfg.params = p;
        cfg.omega = {Sampler::Kind::Linspace, -1.0, 1.0, {}};
        cfg.initial.x = {Sampler::Kind::Uniform, 0.0, 1.0, {}};
        cfg.initial.a1 = {Sampler::Kind::Uniform, -1.0, 1.0, {}};
        cfg.initial.a2 = {Sampler::Kind::Uniform, -1.0, 1.0, {}};
        cfg.plan = {0.0, 50.0, 0.01, 500};
        cfg.closure = {0.5, ClosureFlavor::Oriented, true};
    } else if (name == "kuramoto-closure") {
        cfg.n = 4;
        cfg.seed = 303;
        cfg.params = SmoothedKuramotoClosureParams{}; // canonical parameters are the defaults
        cfg.omega = {Sampler::Kind::Normal, 0.0, 0.5, {}};
        cfg.initial.x = {Sampler::Kind::Uniform, 0.0, 2.0 * M_PI, {}};
        cfg.initial.a1 = {Sampler::Kind::Uniform, -0.25, 0.25, {}};
        cfg.initial.a2 = {Sampler::Kind::Uniform, -0.25, 0.25, {}};
        cfg.initial.set_a1 = {{0, 1, 0.1}, {0, 2, 0.6}, {1, 2, 0.7}};
        cfg.initial.set_a2 = {{0, 1, 2, 0.8}};
        cfg.initial.symmetrize_overrides = true;
        cfg.plan = {0.0, 25.0, 0.01, 250};
        cfg.closure = {0.5, ClosureFlavor::Unoriented, true};
    } else if (name == "consensus-persistent") {
        cfg.n = 4;
        cfg.seed = 404;
        cfg.params = ConsensusVarianceParams{};
        cfg.omega = {Sampler::Kind::Zeros, 0.0, 0.0, {}};
        cfg.initial.x = {Sampler::Kind::Values, 0.0, 0.0, {0.10, 0.15, 0.20, 2.00}};
        cfg.initial.a1 = {Sampler::Kind::Uniform, -0.25, 0.25, {}};
        cfg.initial.a2 = {Sampler::Kind::Uniform, -0.25, 0.25, {}};
        cfg.initial.set_a1 = {{0, 1, 0.1}, {0, 2, 0.6}, {1, 2, 0.7}};
        cfg.initial.set_a2 = {{0, 1, 2, 0.8}};
        cfg.initial.symmetrize_overrides = true;
        cfg.plan = {0.0, 25.0, 0.01, 250};
        cfg.closure = {0.5, ClosureFlavor::Unoriented, true};
    } else {
        throw ConfigError("unknown preset '" + name +
                          "' (expected sym-case|antisym-case|kuramoto-closure|consensus-persistent)");
    }
    return cfg;
}

namespace {

std::vector<double> draw_vector(SplitMix64& rng, const Sampler& s, std::size_t count) {
    std::vector<double> out(count, 0.0);
    switch (s.kind) {
        case Sampler::Kind::Uniform:
            for (auto& v : out) v = rng.uniform(s.a, s.b);
            break;
        case Sampler::Kind::Normal:
            for (auto& v : out) v = rng.normal(s.a, s.b);
            break;
        case Sampler::Kind::Linspace:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = count > 1 ? s.a + (s.b - s.a) * static_cast<double>(i) /
                                               static_cast<double>(count - 1)
                                   : s.a;
            break;
        case Sampler::Kind::Values:
            if (s.values.size() != count)
                throw ConfigError("sampler values length mismatch");
            out = s.values;
            break;
        case Sampler::Kind::Zeros:
            break;
    }
    return out;
}

std::size_t checked_index(double v, std::size_t n, const char* what) {
    const auto idx = static_cast<long long>(v);
    if (static_cast<double>(idx) != v || idx < 0 || static_cast<std::size_t>(idx) >= n) {
        std::ostringstream msg;
        msg << what << " index " << v << " out of range for n=" << n;
        throw ConfigError(msg.str());
    }
    return static_cast<std::size_t>(idx);
}

} // namespace

ModelSpec build_model_spec(const RunConfig& cfg) {
    ModelSpec spec;
    spec.params = cfg.params;
    spec.rng_seed = cfg.seed;
    spec.freeze_degenerate = cfg.freeze_degenerate;
    SplitMix64 rng(cfg.seed);
    spec.omega = draw_vector(rng, cfg.omega, cfg.n);
    return spec;
}

SystemState build_initial_state(const RunConfig& cfg) {
    // Same stream as build_model_spec: replay the omega draws, then x, a1, a2.
    SplitMix64 rng(cfg.seed);
    (void)draw_vector(rng, cfg.omega, cfg.n);

    SystemState s;
    s.t = cfg.plan.t0;
    s.x = draw_vector(rng, cfg.initial.x, cfg.n);
    s.a1 = Rank2Tensor(cfg.n);
    s.a2 = Rank3Tensor(cfg.n);
    s.a1.data() = draw_vector(rng, cfg.initial.a1, cfg.n * cfg.n);
    s.a2.data() = draw_vector(rng, cfg.initial.a2, cfg.n * cfg.n * cfg.n);

    for (const auto& row : cfg.initial.set_a1) {
        const std::size_t i = checked_index(row[0], cfg.n, "set_a1");
        const std::size_t j = checked_index(row[1], cfg.n, "set_a1");
        s.a1(i, j) = row[2];
        if (cfg.initial.symmetrize_overrides) s.a1(j, i) = row[2];
    }
    for (const auto& row : cfg.initial.set_a2) {
        const std::size_t i = checked_index(row[0], cfg.n, "set_a2");
        const std::size_t j = checked_index(row[1], cfg.n, "set_a2");
        const std::size_t k = checked_index(row[2], cfg.n, "set_a2");
        s.a2(i, j, k) = row[3];
        if (cfg.initial.symmetrize_overrides) {
            s.a2(i, k, j) = row[3];
            s.a2(j, i, k) = row[3];
            s.a2(j, k, i) = row[3];
            s.a2(k, i, j) = row[3];
            s.a2(k, j, i) = row[3];
        }
    }
    return s;
}

} // namespace trinet
