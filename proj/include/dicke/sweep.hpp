// sweep.hpp — batch engine: parameter grids, regime phase diagrams, CSV/JSON
// artifacts, and the JSON config schema used by the CLI.

#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dicke/correlations.hpp"
#include "dicke/cycle.hpp"
#include "dicke/errors.hpp"
#include "dicke/version.hpp"

namespace dicke {

struct Axis {
    std::string name;  // lambda | t_hot | t_cold | n_qubits | omega_h | omega_c | omega_ratio | n_tr
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    bool log_scale = false;

    double value(int i) const {
        if (count == 1) return min;
        const double t = double(i) / double(count - 1);
        if (log_scale) return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        return min + t * (max - min);
    }
};

inline const std::set<std::string>& valid_axis_names() {
    static const std::set<std::string> names = {
        "lambda", "t_hot", "t_cold", "n_qubits", "omega_h", "omega_c",
        "omega_ratio", "n_tr"};
    return names;
}

inline const std::set<std::string>& valid_outputs() {
    static const std::set<std::string> names = {
        "regime", "work",           "q_hot",      "q_cold",      "eta",
        "cop",    "g2",             "g2_generalized", "negativity",
        "mean_photon"};
    return names;
}

struct SweepSpec {
    std::vector<Axis> axes;  // 1 or 2
    CycleProtocol proto;     // fixed parameters; axes override per cell
    BathParams bath;         // validation-path bath (steady states are Gibbs)
    std::vector<std::string> outputs;
    int threads = 1;
    bool auto_converge = false;
    int dimension_cap = kDefaultDimensionCap;
    // Correlations are evaluated on the cold-endpoint Hamiltonian at t_cold;
    // an optional smaller Fock cutoff keeps partial-transpose solves cheap.
    std::optional<int> correlation_n_tr;
    std::optional<std::string> timestamp_override;  // for reproducible artifacts

    bool wants(const std::string& out) const {
        for (const auto& o : outputs)
            if (o == out) return true;
        return false;
    }
    bool wants_cycle() const {
        return wants("regime") || wants("work") || wants("q_hot") ||
               wants("q_cold") || wants("eta") || wants("cop");
    }
    bool wants_correlations() const {
        return wants("g2") || wants("g2_generalized") || wants("negativity") ||
               wants("mean_photon");
    }
};

struct GridCell {
    std::vector<double> axis_values;
    bool failed = false;
    std::string fail_reason;
    std::string regime;
    double work = 0.0, q_hot = 0.0, q_cold = 0.0;
    std::optional<double> eta, cop;
    std::optional<double> g2, g2_generalized, negativity, mean_photon;
    std::vector<std::string> flags;
};

struct PhaseGrid {
    std::vector<Axis> axes;
    std::vector<std::string> outputs;
    std::vector<GridCell> cells;  // row-major, first axis slowest
    nlohmann::ordered_json provenance;
    bool complete = true;

    int cell_count() const {
        int n = 1;
        for (const auto& a : axes) n *= a.count;
        return n;
    }
};

namespace detail {

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct EnergyCache {
    std::map<std::array<double, 5>, std::shared_ptr<const Eigen::VectorXd>> map;
    std::mutex mutex;

    std::shared_ptr<const Eigen::VectorXd> get(const ModelParams& p, int cap) {
        const std::array<double, 5> key = {p.omega0, p.delta, p.lambda,
                                           double(p.n_qubits), double(p.n_tr)};
        {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        auto energies =
            std::make_shared<const Eigen::VectorXd>(ecs_energies(p, cap));
        std::lock_guard<std::mutex> lock(mutex);
        return map.try_emplace(key, energies).first->second;
    }
};

struct SpectrumCache {
    std::map<std::array<double, 5>, std::shared_ptr<const Spectrum>> map;
    std::mutex mutex;

    std::shared_ptr<const Spectrum> get(const ModelParams& p, int cap) {
        const std::array<double, 5> key = {p.omega0, p.delta, p.lambda,
                                           double(p.n_qubits), double(p.n_tr)};
        {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        DiagOptions opts;
        opts.dimension_cap = cap;
        auto spec = std::make_shared<const Spectrum>(diagonalize_bare(p, opts));
        std::lock_guard<std::mutex> lock(mutex);
        return map.try_emplace(key, spec).first->second;
    }
};

inline void apply_axis(CycleProtocol& proto, const std::string& name, double v) {
    if (name == "lambda") proto.base.lambda = v;
    else if (name == "t_hot") proto.t_hot = v;
    else if (name == "t_cold") proto.t_cold = v;
    else if (name == "n_qubits") proto.base.n_qubits = int(std::lround(v));
    else if (name == "n_tr") proto.base.n_tr = int(std::lround(v));
    else if (name == "omega_h") proto.omega_h = v;
    else if (name == "omega_c") proto.omega_c = v;
    else if (name == "omega_ratio") proto.omega_h = v * proto.omega_c;
    else throw ConfigError("unknown axis name '" + name + "'");
}

// Double n_tr until the lowest 30 ECS energies are stable to 1e-5 relative.
inline int auto_converged_ntr_ecs(const ModelParams& p, int cap) {
    ModelParams q = p;
    Eigen::VectorXd prev = ecs_energies(q, cap);
    while (true) {
        ModelParams next = q;
        next.n_tr = 2 * q.n_tr;
        if (next.dimension() > cap) return q.n_tr;
        const Eigen::VectorXd cur = ecs_energies(next, cap);
        double worst = 0.0;
        const int m = std::min({30, int(prev.size())});
        for (int k = 0; k < m; ++k)
            worst = std::max(worst, std::abs(cur(k) - prev(k)) /
                                        std::max({std::abs(cur(k)), std::abs(prev(k)), 1.0}));
        q = next;
        prev = cur;
        if (worst < 1e-5) return q.n_tr;
    }
}

} // namespace detail

inline GridCell evaluate_cell(const SweepSpec& spec, const std::vector<double>& axis_values,
                              detail::EnergyCache& ecache, detail::SpectrumCache& scache) {
    GridCell cell;
    cell.axis_values = axis_values;
    try {
        CycleProtocol proto = spec.proto;
        for (size_t i = 0; i < spec.axes.size(); ++i)
            detail::apply_axis(proto, spec.axes[i].name, axis_values[i]);
        if (spec.auto_converge)
            proto.base.n_tr =
                detail::auto_converged_ntr_ecs(cold_params(proto), spec.dimension_cap);

        if (spec.wants_cycle()) {
            validate(proto);
            CycleOptions copts;
            copts.dimension_cap = spec.dimension_cap;
            const auto e_hot = ecache.get(hot_params(proto), spec.dimension_cap);
            const auto e_cold = ecache.get(cold_params(proto), spec.dimension_cap);
            const CycleResult r =
                run_cycle_from_energies(*e_hot, *e_cold, proto.t_hot, proto.t_cold,
                                        copts.degeneracy_threshold);
            cell.regime = to_string(r.regime);
            cell.work = r.work;
            cell.q_hot = r.q_hot;
            cell.q_cold = r.q_cold;
            if (r.regime == Regime::Engine) cell.eta = r.eta;
            if (r.regime == Regime::Refrigerator) cell.cop = r.cop;
        }

        if (spec.wants_correlations()) {
            ModelParams p = cold_params(proto);
            if (spec.correlation_n_tr) p.n_tr = *spec.correlation_n_tr;
            const auto sp = scache.get(p, spec.dimension_cap);
            const ThermalState state = gibbs_state(*sp, proto.t_cold);
            const CorrelationReport rep = correlate(*sp, state);
            cell.g2 = rep.g2_conventional;
            cell.g2_generalized = rep.g2_generalized;
            cell.negativity = rep.negativity;
            cell.mean_photon = rep.mean_photon;
            if (rep.vacuum_dominated_conventional) cell.flags.push_back("vacuum_dominated");
            if (rep.vacuum_dominated_generalized)
                cell.flags.push_back("vacuum_dominated_generalized");
        }
    } catch (const std::exception& e) {
        cell.failed = true;
        cell.fail_reason = e.what();
    }
    return cell;
}

inline PhaseGrid run_sweep(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw ConfigError("sweep requires 1 or 2 axes");
    for (const auto& a : spec.axes) {
        if (!valid_axis_names().count(a.name))
            throw ConfigError("unknown axis name '" + a.name + "'");
        if (a.count < 1) throw ConfigError("axis '" + a.name + "' count must be >= 1");
    }
    if (spec.outputs.empty()) throw ConfigError("output set must be non-empty");
    for (const auto& o : spec.outputs)
        if (!valid_outputs().count(o)) throw ConfigError("unknown output '" + o + "'");

    PhaseGrid grid;
    grid.axes = spec.axes;
    grid.outputs = spec.outputs;
    grid.cells.resize(grid.cell_count());

    detail::EnergyCache ecache;
    detail::SpectrumCache scache;
    const int n0 = spec.axes[0].count;
    const int n1 = spec.axes.size() > 1 ? spec.axes[1].count : 1;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n0 * n1; i = next.fetch_add(1)) {
            std::vector<double> values = {spec.axes[0].value(i / n1)};
            if (spec.axes.size() > 1) values.push_back(spec.axes[1].value(i % n1));
            grid.cells[i] = evaluate_cell(spec, values, ecache, scache);
        }
    };
    const int n_threads = std::max(1, spec.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& c : grid.cells)
        if (c.failed) grid.complete = false;

    nlohmann::ordered_json prov;
    prov["schema"] = "dicke-phasegrid/1";
    prov["code_version"] = kVersion;
    prov["timestamp"] = spec.timestamp_override ? *spec.timestamp_override
                                                : detail::iso8601_now();
    prov["spec"] = nlohmann::ordered_json{
        {"fixed",
         {{"omega0", spec.proto.base.omega0},
          {"delta", spec.proto.base.delta},
          {"lambda", spec.proto.base.lambda},
          {"n_qubits", spec.proto.base.n_qubits},
          {"n_tr", spec.proto.base.n_tr},
          {"omega_h", spec.proto.omega_h},
          {"omega_c", spec.proto.omega_c},
          {"t_hot", spec.proto.t_hot},
          {"t_cold", spec.proto.t_cold},
          {"protocol", spec.proto.kind == ProtocolKind::FrequencyScaling ? "frequency"
                                                                         : "coupling"},
          {"coupling_mode", spec.proto.coupling_mode == CouplingMode::AbsoluteLambda
                                ? "absolute"
                                : "fixed_ratio"},
          {"lambda_hot", spec.proto.lambda_hot},
          {"lambda_cold", spec.proto.lambda_cold},
          {"alpha", spec.bath.alpha},
          {"omega_co", spec.bath.omega_co}}},
        {"outputs", spec.outputs},
        {"auto_converge", spec.auto_converge}};
    nlohmann::ordered_json jaxes = nlohmann::ordered_json::array();
    for (const auto& a : spec.axes)
        jaxes.push_back({{"name", a.name},
                         {"min", a.min},
                         {"max", a.max},
                         {"count", a.count},
                         {"scale", a.log_scale ? "log" : "linear"}});
    prov["spec"]["axes"] = jaxes;
    if (spec.correlation_n_tr) prov["spec"]["correlation_n_tr"] = *spec.correlation_n_tr;
    grid.provenance = prov;
    return grid;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// RFC 4180 quoting: wrap in quotes, double any embedded quote.
inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline std::string to_csv(const PhaseGrid& grid) {
    std::ostringstream out;
    for (const auto& a : grid.axes) out << a.name << ',';
    bool first = true;
    for (const auto& o : grid.outputs) {
        if (!first) out << ',';
        first = false;
        out << o;
    }
    out << ",flags\r\n";
    for (const auto& c : grid.cells) {
        for (double v : c.axis_values) out << detail::format_double(v) << ',';
        first = true;
        for (const auto& o : grid.outputs) {
            if (!first) out << ',';
            first = false;
            if (c.failed) continue;
            if (o == "regime") out << c.regime;
            else if (o == "work") out << detail::format_double(c.work);
            else if (o == "q_hot") out << detail::format_double(c.q_hot);
            else if (o == "q_cold") out << detail::format_double(c.q_cold);
            else if (o == "eta") out << detail::csv_field(c.eta);
            else if (o == "cop") out << detail::csv_field(c.cop);
            else if (o == "g2") out << detail::csv_field(c.g2);
            else if (o == "g2_generalized") out << detail::csv_field(c.g2_generalized);
            else if (o == "negativity") out << detail::csv_field(c.negativity);
            else if (o == "mean_photon") out << detail::csv_field(c.mean_photon);
        }
        out << ',';
        if (c.failed) {
            out << detail::csv_quote("failed:" + c.fail_reason);
        } else {
            for (size_t i = 0; i < c.flags.size(); ++i)
                out << (i ? ";" : "") << c.flags[i];
        }
        out << "\r\n";
    }
    return out.str();
}

inline nlohmann::ordered_json to_json(const PhaseGrid& grid) {
    nlohmann::ordered_json j;
    j["schema"] = "dicke-phasegrid/1";
    j["provenance"] = grid.provenance;
    j["complete"] = grid.complete;
    nlohmann::ordered_json jaxes = nlohmann::ordered_json::array();
    for (const auto& a : grid.axes) {
        nlohmann::ordered_json ja;
        ja["name"] = a.name;
        ja["count"] = a.count;
        nlohmann::ordered_json vals = nlohmann::ordered_json::array();
        for (int i = 0; i < a.count; ++i) vals.push_back(a.value(i));
        ja["values"] = vals;
        jaxes.push_back(ja);
    }
    j["axes"] = jaxes;
    j["outputs"] = grid.outputs;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& c : grid.cells) {
        nlohmann::ordered_json jc;
        jc["axis_values"] = c.axis_values;
        if (c.failed) {
            jc["failed"] = true;
            jc["reason"] = c.fail_reason;
            cells.push_back(jc);
            continue;
        }
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) jc[key] = *v;
        };
        if (!c.regime.empty()) jc["regime"] = c.regime;
        for (const auto& o : grid.outputs) {
            if (o == "work") jc["work"] = c.work;
            else if (o == "q_hot") jc["q_hot"] = c.q_hot;
            else if (o == "q_cold") jc["q_cold"] = c.q_cold;
            else if (o == "eta") put("eta", c.eta);
            else if (o == "cop") put("cop", c.cop);
            else if (o == "g2") put("g2", c.g2);
            else if (o == "g2_generalized") put("g2_generalized", c.g2_generalized);
            else if (o == "negativity") put("negativity", c.negativity);
            else if (o == "mean_photon") put("mean_photon", c.mean_photon);
        }
        if (!c.flags.empty()) jc["flags"] = c.flags;
        cells.push_back(jc);
    }
    j["cells"] = cells;
    return j;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void emit_csv(const PhaseGrid& grid, const std::string& path) {
    write_file(path, to_csv(grid));
}

inline void emit_json(const PhaseGrid& grid, const std::string& path) {
    write_file(path, to_json(grid).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Config parsing (JSON; keys mirror ModelParams / BathParams / CycleProtocol)

namespace detail {

inline void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
inline T get_or(const nlohmann::json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("key '" + key + "' has the wrong type");
    }
}

} // namespace detail

inline CycleProtocol parse_protocol(const nlohmann::json& fixed) {
    detail::check_keys(fixed,
                       {"omega0", "delta", "lambda", "n_qubits", "n_tr", "omega_h",
                        "omega_c", "t_hot", "t_cold", "protocol", "coupling_mode",
                        "lambda_hot", "lambda_cold", "alpha", "omega_co"},
                       "fixed parameters");
    CycleProtocol proto;
    proto.base.omega0 = detail::get_or(fixed, "omega0", 1.0);
    proto.base.delta = detail::get_or(fixed, "delta", 1.0);
    proto.base.lambda = detail::get_or(fixed, "lambda", 0.0);
    proto.base.n_qubits = detail::get_or(fixed, "n_qubits", 1);
    proto.base.n_tr = detail::get_or(fixed, "n_tr", 50);
    proto.omega_h = detail::get_or(fixed, "omega_h", 2.0);
    proto.omega_c = detail::get_or(fixed, "omega_c", 1.0);
    proto.t_hot = detail::get_or(fixed, "t_hot", 0.5);
    proto.t_cold = detail::get_or(fixed, "t_cold", 0.1);
    proto.lambda_hot = detail::get_or(fixed, "lambda_hot", 0.0);
    proto.lambda_cold = detail::get_or(fixed, "lambda_cold", 0.0);
    const std::string kind = detail::get_or<std::string>(fixed, "protocol", "frequency");
    if (kind == "frequency") proto.kind = ProtocolKind::FrequencyScaling;
    else if (kind == "coupling") proto.kind = ProtocolKind::CouplingScaling;
    else throw ConfigError("key 'protocol' must be 'frequency' or 'coupling'");
    const std::string mode =
        detail::get_or<std::string>(fixed, "coupling_mode", "absolute");
    if (mode == "absolute") proto.coupling_mode = CouplingMode::AbsoluteLambda;
    else if (mode == "fixed_ratio") proto.coupling_mode = CouplingMode::FixedRatio;
    else throw ConfigError("key 'coupling_mode' must be 'absolute' or 'fixed_ratio'");
    return proto;
}

inline SweepSpec parse_sweep_spec(const nlohmann::json& j) {
    detail::check_keys(j,
                       {"schema", "axes", "fixed", "outputs", "threads",
                        "auto_converge", "correlation_n_tr", "timestamp",
                        "dimension_cap"},
                       "sweep config");
    SweepSpec spec;
    if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty())
        throw ConfigError("sweep config requires a non-empty 'axes' array");
    for (const auto& ja : j.at("axes")) {
        detail::check_keys(ja, {"name", "min", "max", "count", "scale"}, "axis");
        Axis a;
        if (!ja.contains("name")) throw ConfigError("axis missing 'name'");
        a.name = ja.at("name").get<std::string>();
        if (!valid_axis_names().count(a.name))
            throw ConfigError("unknown axis name '" + a.name + "'");
        a.min = detail::get_or(ja, "min", 0.0);
        a.max = detail::get_or(ja, "max", a.min);
        a.count = detail::get_or(ja, "count", 1);
        const std::string scale = detail::get_or<std::string>(ja, "scale", "linear");
        if (scale == "log") a.log_scale = true;
        else if (scale != "linear")
            throw ConfigError("axis 'scale' must be 'linear' or 'log'");
        spec.axes.push_back(a);
    }
    spec.proto = parse_protocol(j.value("fixed", nlohmann::json::object()));
    if (j.contains("fixed")) {
        spec.bath.alpha = detail::get_or(j.at("fixed"), "alpha", spec.bath.alpha);
        spec.bath.omega_co = detail::get_or(j.at("fixed"), "omega_co", spec.bath.omega_co);
    }
    if (!j.contains("outputs"))
        throw ConfigError("sweep config requires an 'outputs' array");
    for (const auto& o : j.at("outputs")) {
        const std::string name = o.get<std::string>();
        if (!valid_outputs().count(name)) throw ConfigError("unknown output '" + name + "'");
        spec.outputs.push_back(name);
    }
    spec.threads = detail::get_or(j, "threads", 1);
    spec.auto_converge = detail::get_or(j, "auto_converge", false);
    spec.dimension_cap = detail::get_or(j, "dimension_cap", kDefaultDimensionCap);
    if (j.contains("correlation_n_tr"))
        spec.correlation_n_tr = j.at("correlation_n_tr").get<int>();
    if (j.contains("timestamp"))
        spec.timestamp_override = j.at("timestamp").get<std::string>();
    return spec;
}

inline nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed config '" + path + "': " + e.what());
    }
}

} // namespace dicke
