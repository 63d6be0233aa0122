#include "stepcim/config.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stepcim/errors.hpp"

namespace stepcim {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json parse_json(const std::string& text, const std::string& origin) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

// Walks a JSON object tree, assigning known keys and rejecting the rest.
class Loader {
public:
    Loader(const ordered_json& root, std::string origin) : origin_(std::move(origin)) {
        if (!root.is_object()) throw ConfigError(origin_ + ": top level must be an object");
        stack_.push_back({&root, "", {}});
    }

    void section(const char* key, const std::function<void()>& fn) {
        Frame& f = stack_.back();
        auto it = f.obj->find(key);
        if (it == f.obj->end()) return;
        f.seen.insert(key);
        const std::string p = join(f.path, key);
        if (!it->is_object()) throw ConfigError(origin_ + ": " + p + ": expected an object");
        stack_.push_back({&*it, p, {}});
        fn();
        finish();
    }

    template <class T>
    void field(const char* key, T& out) {
        Frame& f = stack_.back();
        auto it = f.obj->find(key);
        if (it == f.obj->end()) return;
        f.seen.insert(key);
        const std::string p = join(f.path, key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) throw ConfigError(origin_ + ": " + p + ": expected a boolean");
            out = it->template get<bool>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) throw ConfigError(origin_ + ": " + p + ": expected a string");
            out = it->template get<std::string>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            if (!it->is_number_unsigned()) throw ConfigError(origin_ + ": " + p + ": expected a non-negative integer");
            out = it->template get<std::uint64_t>();
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) throw ConfigError(origin_ + ": " + p + ": expected an integer");
            out = it->template get<T>();
        } else {
            if (!it->is_number()) throw ConfigError(origin_ + ": " + p + ": expected a number");
            out = it->template get<T>();
        }
    }

    const ordered_json* raw(const char* key) {
        Frame& f = stack_.back();
        auto it = f.obj->find(key);
        if (it == f.obj->end()) return nullptr;
        f.seen.insert(key);
        return &*it;
    }

    std::string path(const char* key) const { return join(stack_.back().path, key); }
    const std::string& origin() const { return origin_; }

    void finish() {
        Frame& f = stack_.back();
        for (auto it = f.obj->begin(); it != f.obj->end(); ++it)
            if (!f.seen.count(it.key()))
                throw ConfigError(origin_ + ": unknown key '" + join(f.path, it.key().c_str()) + "'");
        stack_.pop_back();
    }

private:
    struct Frame {
        const ordered_json* obj;
        std::string path;
        std::set<std::string> seen;
    };
    static std::string join(const std::string& a, const std::string& b) {
        return a.empty() ? b : a + "." + b;
    }
    std::vector<Frame> stack_;
    std::string origin_;
};

class Dumper {
public:
    void section(const char* key, const std::function<void()>& fn) {
        stack_.push_back(ordered_json::object());
        fn();
        ordered_json o = std::move(stack_.back());
        stack_.pop_back();
        top()[key] = std::move(o);
    }
    template <class T>
    void field(const char* key, const T& v) { top()[key] = v; }
    ordered_json& top() { return stack_.back(); }
    ordered_json result() { return stack_.front(); }

private:
    std::vector<ordered_json> stack_{ordered_json::object()};
};

template <class V>
void visit_cost(V& v, CostModel& c) {
    v.field("t_read_sram", c.t_read_sram);
    v.field("read_latency_ratio_pefet", c.read_latency_ratio_pefet);
    v.field("mac_latency_ratio_step", c.mac_latency_ratio_step);
    v.field("t_write_sram", c.t_write_sram);
    v.field("write_latency_ratio_step", c.write_latency_ratio_step);
    v.field("t_pcu", c.t_pcu);
    v.field("e_block_step", c.e_block_step);
    v.field("mac_energy_ratio_sram", c.mac_energy_ratio_sram);
    v.field("mac_energy_ratio_pefet", c.mac_energy_ratio_pefet);
    v.field("pcu_energy_factor", c.pcu_energy_factor);
    v.field("nm_mac_energy_factor", c.nm_mac_energy_factor);
    v.field("e_read_active_sram", c.e_read_active_sram);
    v.field("read_active_ratio_step", c.read_active_ratio_step);
    v.field("write_active_ratio_sram", c.write_active_ratio_sram);
    v.field("write_active_ratio_step", c.write_active_ratio_step);
    v.field("sram_leak_power", c.sram_leak_power);
    v.field("active_fraction", c.active_fraction);
    v.field("F", c.F);
    v.field("cell_F2_step", c.cell_F2_step);
    v.field("cell_F2_sram", c.cell_F2_sram);
    v.field("adc_area_overhead", c.adc_area_overhead);
    v.field("nm_periphery_area", c.nm_periphery_area);
    v.field("words_per_array", c.words_per_array);
}

template <class V>
void visit(V& v, GlobalConfig& c) {
    v.field("schema_version", c.schema_version);
    v.field("seed", c.seed);
    v.field("output_dir", c.output_dir);
    DeviceParams& d = c.device;
    v.section("device", [&] {
        v.field("V_DD", d.V_DD);
        v.field("V_R", d.V_R);
        v.field("V_GS_sense", d.V_GS_sense);
        v.field("finite_access", d.finite_access);
        v.field("R_access", d.R_access);
        v.section("geometry", [&] {
            v.field("L_TMD", d.geom.L_TMD);
            v.field("W_TMD", d.geom.W_TMD);
            v.field("L_PE", d.geom.L_PE);
            v.field("W_PE", d.geom.W_PE);
        });
        v.section("ferro", [&] {
            v.field("P_S", d.ferro.P_S);
            v.field("P_R", d.ferro.P_R);
            v.field("E_C", d.ferro.E_C);
            v.field("eps_r", d.ferro.eps_r);
            v.field("t_PE", d.ferro.t_PE);
            v.field("tau_PE", d.ferro.tau_PE);
            v.field("alpha", d.ferro.alpha);
        });
        v.section("piezo", [&] {
            v.field("d33", d.piezo.d33);
            v.field("d31", d.piezo.d31);
            v.field("s_E", d.piezo.s_E);
            v.field("c_clamp", d.piezo.c_clamp);
            v.field("eta_hn", d.piezo.eta_hn);
            v.field("alpha_TMD", d.piezo.alpha_TMD);
            v.field("calib_gain", d.piezo.calib_gain);
        });
        v.section("fet", [&] {
            v.field("E_0", d.fet.E_0);
            v.field("V_TH", d.fet.V_TH);
            v.field("n_ss", d.fet.n_ss);
            v.field("I_ref", d.fet.I_ref);
            v.field("v_sat_knee", d.fet.v_sat_knee);
            v.field("R_C", d.fet.R_C);
            v.field("E_s_pos", d.fet.E_s_pos);
            v.field("E_s_neg", d.fet.E_s_neg);
            v.field("V_GS_ref", d.fet.V_GS_ref);
            v.field("V_DS_ref", d.fet.V_DS_ref);
            v.field("leakage", d.fet.leakage);
        });
    });
    v.section("cell", [&] {
        v.field("phase_time", c.cell.phase_time);
        v.field("sense_pulse", c.cell.sense_pulse);
        v.field("relax", c.cell.relax);
        v.field("local_cols", c.cell.geom.local_cols);
        v.field("row_cols", c.cell.geom.row_cols);
        v.field("col_rows", c.cell.geom.col_rows);
        v.field("C_bl_per_cell", c.cell.seg.C_bl_per_cell);
        v.field("C_wl_per_cell", c.cell.seg.C_wl_per_cell);
        v.field("C_buffer", c.cell.seg.C_buffer);
    });
    v.section("array", [&] {
        v.field("N_R", c.array.N_R);
        v.field("N_C", c.array.N_C);
        v.field("N_V", c.array.N_V);
        v.field("blocks", c.array.blocks);
        v.field("R_drv", c.array.R_drv);
        v.field("adc_bits", c.array.adc_bits);
        v.field("Q", c.array.Q);
        v.field("clip", c.array.clip);
    });
    v.section("variation", [&] {
        v.field("sigma_vth", c.variation.sigma_vth);
        v.field("iters", c.variation.iters);
        v.field("drv_overdrive", c.variation.drv_overdrive);
        v.field("mirror_gm", c.variation.mirror_gm);
    });
}

Organization parse_org(const ordered_json& j, const std::string& path, const std::string& origin) {
    if (!j.is_object()) throw ConfigError(origin + ": " + path + ": expected an object");
    Loader l(j, origin);
    Organization o;
    std::string tech = to_string(o.tech);
    l.field("name", o.name);
    l.field("tech", tech);
    l.field("n_arrays", o.n_arrays);
    l.field("rows", o.rows);
    l.field("cols", o.cols);
    l.field("rows_per_access", o.rows_per_access);
    l.field("pcu", o.pcu);
    l.finish();
    o.tech = tech_from_string(tech);
    if (o.name.empty()) throw ConfigError(origin + ": " + path + ".name: required");
    return o;
}

ordered_json dump_org(const Organization& o) {
    return {{"name", o.name}, {"tech", to_string(o.tech)}, {"n_arrays", o.n_arrays},
            {"rows", o.rows}, {"cols", o.cols}, {"rows_per_access", o.rows_per_access},
            {"pcu", o.pcu}};
}

}  // namespace

GlobalConfig::GlobalConfig() { device.resolve(); }

void GlobalConfig::resolve() {
    if (schema_version != kSchemaVersion)
        throw ConfigError("schema_version '" + schema_version + "' is not supported (expected '" +
                          kSchemaVersion + "')");
    try {
        device.resolve();
        array.validate();
        variation.validate();
        cost.validate();
        if (cell.phase_time <= 0.0 || cell.sense_pulse <= 0.0 || cell.relax < 0.0)
            throw DomainError("cell: pulse timings must be positive");
        for (const auto& o : organizations)
            if (o.n_arrays <= 0 || o.rows <= 0 || o.cols <= 0 || o.rows_per_access <= 0)
                throw DomainError("organization '" + o.name + "': dimensions must be positive");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invariant violated: ") + e.what());
    }
    variation.seed = seed;
}

std::vector<Organization> GlobalConfig::orgs() const {
    return organizations.empty() ? default_organizations(cost) : organizations;
}

GlobalConfig parse_config(const std::string& text, const std::string& origin) {
    const ordered_json j = parse_json(text, origin);
    if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
    if (!j.contains("schema_version")) throw ConfigError(origin + ": schema_version is required");
    GlobalConfig c;
    Loader l(j, origin);
    visit(l, c);
    l.section("system", [&] {
        l.section("cost", [&] { visit_cost(l, c.cost); });
        if (const ordered_json* orgs = l.raw("organizations")) {
            const std::string p = l.path("organizations");
            if (!orgs->is_array()) throw ConfigError(origin + ": " + p + ": expected an array");
            c.organizations.clear();
            for (std::size_t k = 0; k < orgs->size(); ++k)
                c.organizations.push_back(
                    parse_org((*orgs)[k], p + "[" + std::to_string(k) + "]", origin));
        }
    });
    l.finish();
    c.resolve();
    return c;
}

GlobalConfig load_config(const std::optional<std::string>& path) {
    if (!path) {
        GlobalConfig c;
        c.resolve();
        return c;
    }
    return parse_config(read_file(*path), *path);
}

std::string dump_config(const GlobalConfig& cfg) {
    GlobalConfig c = cfg;
    Dumper d;
    visit(d, c);
    d.section("system", [&] {
        d.section("cost", [&] { visit_cost(d, c.cost); });
        ordered_json orgs = ordered_json::array();
        for (const auto& o : c.orgs()) orgs.push_back(dump_org(o));
        d.top()["organizations"] = orgs;
    });
    return d.result().dump(2) + "\n";
}

void write_resolved_config(const GlobalConfig& c, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / "resolved_config.json", std::ios::binary);
    if (!out) throw ConfigError("cannot write resolved config into '" + dir + "'");
    out << dump_config(c);
}

CostModel load_cost(const std::string& path, const CostModel& base) {
    const ordered_json j = parse_json(read_file(path), path);
    CostModel c = base;
    Loader l(j, path);
    visit_cost(l, c);
    l.finish();
    c.validate();
    return c;
}

Suite parse_suite(const std::string& text, const std::string& origin) {
    const ordered_json j = parse_json(text, origin);
    Loader l(j, origin);
    Suite s;
    std::string version;
    l.field("schema_version", version);
    if (version != kSchemaVersion) throw ConfigError(origin + ": suite schema_version must be '1'");
    l.field("batch", s.batch);
    if (s.batch <= 0) throw ConfigError(origin + ": batch must be positive");
    const ordered_json* b = l.raw("benchmarks");
    if (!b || !b->is_array()) throw ConfigError(origin + ": benchmarks: expected an array");
    for (std::size_t k = 0; k < b->size(); ++k) {
        const std::string p = "benchmarks[" + std::to_string(k) + "]";
        if (!(*b)[k].is_object()) throw ConfigError(origin + ": " + p + ": expected an object");
        Loader lb((*b)[k], origin);
        Benchmark bench;
        lb.field("name", bench.name);
        const ordered_json* layers = lb.raw("layers");
        if (!layers || !layers->is_array())
            throw ConfigError(origin + ": " + p + ".layers: expected an array");
        lb.finish();
        for (std::size_t i = 0; i < layers->size(); ++i) {
            const ordered_json& lj = (*layers)[i];
            const std::string lp = p + ".layers[" + std::to_string(i) + "]";
            if (!lj.is_object()) throw ConfigError(origin + ": " + lp + ": expected an object");
            Loader ll(lj, origin);
            WorkloadLayer w;
            std::string kind = to_string(w.kind);
            ll.field("name", w.name);
            ll.field("kind", kind);
            ll.field("K", w.K);
            ll.field("N", w.N);
            ll.field("P", w.P);
            ll.field("repeat", w.repeat);
            ll.field("sparsity", w.sparsity);
            ll.finish();
            w.kind = layer_kind_from_string(kind);
            w.validate();
            bench.layers.push_back(w);
        }
        s.benchmarks.push_back(std::move(bench));
    }
    l.finish();
    return s;
}

Suite load_suite(const std::string& path) { return parse_suite(read_file(path), path); }

std::string dump_suite(const Suite& s) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["batch"] = s.batch;
    j["benchmarks"] = ordered_json::array();
    for (const auto& b : s.benchmarks) {
        ordered_json bj;
        bj["name"] = b.name;
        bj["layers"] = ordered_json::array();
        for (const auto& l : b.layers)
            bj["layers"].push_back({{"name", l.name}, {"kind", to_string(l.kind)}, {"K", l.K},
                                    {"N", l.N}, {"P", l.P}, {"repeat", l.repeat},
                                    {"sparsity", l.sparsity}});
        j["benchmarks"].push_back(std::move(bj));
    }
    return j.dump(2) + "\n";
}

}  // namespace stepcim
