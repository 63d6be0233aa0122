#include "stepcim/system.hpp"

#include <cmath>

#include "stepcim/errors.hpp"

namespace stepcim {

namespace {

constexpr int kBlockRows = 16;

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

const char* to_string(Tech t) {
    switch (t) {
        case Tech::step_cim: return "step_cim";
        case Tech::sram_nm: return "sram_nm";
        case Tech::pefet_nm: return "pefet_nm";
    }
    return "?";
}

Tech tech_from_string(const std::string& s) {
    if (s == "step_cim") return Tech::step_cim;
    if (s == "sram_nm") return Tech::sram_nm;
    if (s == "pefet_nm") return Tech::pefet_nm;
    throw ConfigError("unknown technology '" + s + "'");
}

const char* to_string(LayerKind k) {
    switch (k) {
        case LayerKind::conv: return "conv";
        case LayerKind::fc: return "fc";
        case LayerKind::recurrent_step: return "recurrent-step";
    }
    return "?";
}

LayerKind layer_kind_from_string(const std::string& s) {
    if (s == "conv") return LayerKind::conv;
    if (s == "fc") return LayerKind::fc;
    if (s == "recurrent-step") return LayerKind::recurrent_step;
    throw ConfigError("unknown layer kind '" + s + "'");
}

void CostModel::validate() const {
    for (double v : {t_read_sram, read_latency_ratio_pefet, mac_latency_ratio_step, t_write_sram,
                     write_latency_ratio_step, e_block_step, mac_energy_ratio_sram,
                     mac_energy_ratio_pefet, e_read_active_sram, read_active_ratio_step,
                     write_active_ratio_sram, write_active_ratio_step, F, cell_F2_step,
                     cell_F2_sram, adc_area_overhead})
        if (!(v > 0.0)) throw ConfigError("cost: latencies, energies, ratios and areas must be positive");
    for (double v : {t_pcu, pcu_energy_factor, nm_mac_energy_factor, sram_leak_power, nm_periphery_area})
        if (!(v >= 0.0)) throw ConfigError("cost: overhead terms must be non-negative");
    if (!(active_fraction > 0.0 && active_fraction <= 1.0))
        throw ConfigError("cost: active_fraction must be in (0, 1]");
    if (words_per_array <= 0) throw ConfigError("cost: words_per_array must be positive");
}

double CostModel::read_latency(Tech t) const {
    return t == Tech::sram_nm ? t_read_sram : t_read_sram * read_latency_ratio_pefet;
}

double CostModel::write_latency(Tech t) const {
    return t == Tech::sram_nm ? t_write_sram : t_write_sram * write_latency_ratio_step;
}

double CostModel::mac_latency(Tech t) const {
    if (t == Tech::step_cim) return mac_latency_ratio_step * kBlockRows * t_read_sram;
    return kBlockRows * read_latency(t);
}

double CostModel::read_energy_active(Tech t) const {
    return t == Tech::sram_nm ? e_read_active_sram : e_read_active_sram * read_active_ratio_step;
}

double CostModel::read_energy_total(Tech t) const {
    const double e = read_energy_active(t);
    if (t != Tech::sram_nm) return e;
    return e + sram_leak_power * read_latency(t) * idle_per_active();
}

double CostModel::write_energy_active(Tech t) const {
    const double s = e_read_active_sram * write_active_ratio_sram;
    return t == Tech::sram_nm ? s : s * write_active_ratio_step;
}

double CostModel::write_energy_total(Tech t) const {
    const double e = write_energy_active(t);
    if (t != Tech::sram_nm) return e;
    return e + sram_leak_power * write_latency(t) * idle_per_active();
}

double CostModel::mac_energy(Tech t) const {
    switch (t) {
        case Tech::step_cim: return e_block_step;
        case Tech::sram_nm: return e_block_step / mac_energy_ratio_sram;
        case Tech::pefet_nm: return e_block_step / mac_energy_ratio_pefet;
    }
    return 0.0;
}

void WorkloadLayer::validate() const {
    if (K < 0 || N < 0 || P < 0 || repeat < 0)
        throw ConfigError("layer '" + name + "': counts must be non-negative");
    if (kind == LayerKind::fc && P != 1)
        throw ConfigError("layer '" + name + "': fc layers take one vector per sample");
    if (!(sparsity >= 0.0 && sparsity <= 1.0))
        throw ConfigError("layer '" + name + "': sparsity must be in [0, 1]");
}

Suite default_suite() {
    auto conv = [](const char* n, long K, long N, long P, long rep = 1) {
        return WorkloadLayer{n, LayerKind::conv, K, N, P, rep, 0.5};
    };
    auto fc = [](const char* n, long K, long N) {
        return WorkloadLayer{n, LayerKind::fc, K, N, 1, 1, 0.5};
    };
    auto rec = [](const char* n, long K, long N, long T, long rep = 1) {
        return WorkloadLayer{n, LayerKind::recurrent_step, K, N, T, rep, 0.5};
    };
    Suite s;
    s.batch = 16;
    s.benchmarks = {
        {"AlexNet",
         {conv("conv1", 363, 96, 3025), conv("conv2", 1200, 256, 729),
          conv("conv3", 2304, 384, 169), conv("conv4", 1728, 384, 169),
          conv("conv5", 1728, 256, 169), fc("fc6", 9216, 4096), fc("fc7", 4096, 4096),
          fc("fc8", 4096, 1000)}},
        {"ResNet34",
         {conv("conv1", 147, 64, 12544), conv("stage1", 576, 64, 3136, 6),
          conv("stage2_in", 576, 128, 784), conv("stage2", 1152, 128, 784, 7),
          conv("stage2_down", 64, 128, 784), conv("stage3_in", 1152, 256, 196),
          conv("stage3", 2304, 256, 196, 11), conv("stage3_down", 128, 256, 196),
          conv("stage4_in", 2304, 512, 49), conv("stage4", 4608, 512, 49, 5),
          conv("stage4_down", 256, 512, 49), fc("fc", 512, 1000)}},
        {"Inception",
         {conv("conv1", 147, 64, 12544), conv("conv2_reduce", 64, 64, 3136),
          conv("conv2", 576, 192, 3136), conv("inc3_1x1", 192, 256, 784, 2),
          conv("inc3_3x3", 2304, 128, 784, 2), conv("inc4_1x1", 480, 512, 196, 5),
          conv("inc4_3x3", 1152, 256, 196, 5), conv("inc5_1x1", 832, 832, 49, 2),
          conv("inc5_3x3", 1728, 384, 49, 2), fc("fc", 1024, 1000)}},
        {"LSTM", {rec("lstm", 2048, 4096, 50, 2), rec("proj", 1024, 10000, 50)}},
        {"GRU", {rec("gru", 2048, 3072, 50, 2), rec("proj", 1024, 10000, 50)}},
    };
    return s;
}

AreaReport area_report(const CostModel& c, int n_step_arrays) {
    c.validate();
    AreaReport r;
    const double F2 = c.F * c.F;
    r.cell_area_step = c.cell_F2_step * F2;
    r.cell_area_sram = c.cell_F2_sram * F2;
    r.cell_ratio = c.cell_F2_step / c.cell_F2_sram;
    r.array_area_pefet = c.words_per_array * r.cell_area_step + c.nm_periphery_area;
    r.array_area_sram = c.words_per_array * r.cell_area_sram + c.nm_periphery_area;
    r.array_area_step = c.adc_area_overhead * r.array_area_pefet;
    r.chip_area_step = n_step_arrays * r.array_area_step;
    r.iso_area_sram = int(std::lround(r.chip_area_step / r.array_area_sram));
    r.iso_area_pefet = int(std::lround(r.chip_area_step / r.array_area_pefet));
    return r;
}

std::vector<Organization> default_organizations(const CostModel& c) {
    const AreaReport a = area_report(c, 32);
    return {
        {"step_cim", Tech::step_cim, 32, 256, 256, 16, 32},
        {"sram_nm_iso_capacity", Tech::sram_nm, 32, 256, 256, 1, 0},
        {"sram_nm_iso_area", Tech::sram_nm, a.iso_area_sram, 256, 256, 1, 0},
        {"pefet_nm_iso_capacity", Tech::pefet_nm, 32, 256, 256, 1, 0},
        {"pefet_nm_iso_area", Tech::pefet_nm, a.iso_area_pefet, 256, 256, 1, 0},
    };
}

Organization find_organization(const std::vector<Organization>& orgs, const std::string& name) {
    for (const auto& o : orgs)
        if (o.name == name) return o;
    throw ConfigError("unknown organization '" + name + "'");
}

LayerEstimate estimate_layer(const WorkloadLayer& l, const Organization& org, const CostModel& c,
                             int batch) {
    l.validate();
    if (org.n_arrays <= 0) throw ConfigError("organization '" + org.name + "' has no arrays");
    LayerEstimate e;
    const long V = long(batch) * l.P;
    if (V == 0 || l.K == 0 || l.N == 0 || l.repeat == 0) return e;
    const long kt = ceil_div(l.K, kBlockRows);
    const long nt = ceil_div(l.N, org.cols);
    const long n = org.n_arrays;
    AccessCounts& a = e.counts;
    a.blocks = V * kt * nt;
    a.write_rows = l.K * nt;
    a.psums = V * l.N * kt;
    a.row_reads = V * l.K * nt;
    const Tech t = org.tech;
    if (t == Tech::step_cim) {
        const long pcu = long(org.pcu) * n;
        e.latency = ceil_div(a.blocks, n) * c.mac_latency(t) + ceil_div(a.psums, pcu) * c.t_pcu +
                    ceil_div(a.write_rows, n) * c.write_latency(t);
        e.energy = a.blocks * c.mac_energy(t) + a.psums * c.e_pcu() +
                   a.write_rows * c.write_energy_total(t);
    } else {
        e.latency = ceil_div(a.row_reads, n) * c.read_latency(t) +
                    ceil_div(a.write_rows, n) * c.write_latency(t);
        e.energy = a.blocks * c.mac_energy(t) + a.blocks * 4096.0 * c.e_nm_mac() +
                   a.write_rows * c.write_energy_total(t);
    }
    const double r = double(l.repeat);
    e.latency *= r;
    e.energy *= r;
    a.blocks *= l.repeat;
    a.write_rows *= l.repeat;
    a.psums *= l.repeat;
    a.row_reads *= l.repeat;
    e.ops = 2.0 * double(V) * double(l.K) * double(l.N) * r;
    return e;
}

double geometric_mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) {
        if (!(x > 0.0)) throw DomainError("geometric_mean: values must be positive");
        s += std::log(x);
    }
    return std::exp(s / double(v.size()));
}

double ComparisonReport::speedup_for(const std::string& org) const {
    for (std::size_t k = 0; k < org_names.size(); ++k)
        if (org_names[k] == org) return speedup[k];
    throw ConfigError("report has no organization '" + org + "'");
}

double ComparisonReport::energy_ratio_for(const std::string& org) const {
    for (std::size_t k = 0; k < org_names.size(); ++k)
        if (org_names[k] == org) return energy_ratio[k];
    throw ConfigError("report has no organization '" + org + "'");
}

ComparisonReport run_benchmark(const Suite& suite, const std::vector<Organization>& orgs,
                               const CostModel& c) {
    c.validate();
    if (orgs.empty()) throw ConfigError("run_benchmark: no organizations");
    if (suite.benchmarks.empty()) throw ConfigError("run_benchmark: empty suite");
    ComparisonReport r;
    for (const auto& o : orgs) r.org_names.push_back(o.name);
    std::vector<std::vector<double>> sp(orgs.size()), er(orgs.size());
    double ops = 0.0, energy = 0.0;
    for (const auto& b : suite.benchmarks) {
        BenchmarkRow row;
        row.name = b.name;
        row.latency.assign(orgs.size(), 0.0);
        row.energy.assign(orgs.size(), 0.0);
        for (std::size_t k = 0; k < orgs.size(); ++k)
            for (const auto& l : b.layers) {
                const LayerEstimate e = estimate_layer(l, orgs[k], c, suite.batch);
                row.latency[k] += e.latency;
                row.energy[k] += e.energy;
                if (k == 0) row.ops += e.ops;
            }
        if (!(row.latency[0] > 0.0)) throw ConfigError("benchmark '" + b.name + "' has no work");
        for (std::size_t k = 0; k < orgs.size(); ++k) {
            sp[k].push_back(row.latency[k] / row.latency[0]);
            er[k].push_back(row.energy[k] / row.energy[0]);
        }
        ops += row.ops;
        energy += row.energy[0];
        r.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < orgs.size(); ++k) {
        r.speedup.push_back(geometric_mean(sp[k]));
        r.energy_ratio.push_back(geometric_mean(er[k]));
    }
    r.tops_per_w = ops / energy / 1e12;
    const Organization& ref = orgs.front();
    const AreaReport a = area_report(c, ref.n_arrays);
    const double peak = 2.0 * ref.rows_per_access * ref.cols * ref.n_arrays / c.mac_latency(ref.tech);
    r.tops_per_mm2 = peak / 1e12 / (a.chip_area_step * 1e6);
    return r;
}

std::vector<ReferencePoint> reference_points() {
    return {
        {"TeC DNN", "45nm", 255.0, 122.0},
        {"TiM DNN", "32nm", 127.0, 58.2},
        {"XNORBIN", "65nm", 95.0, 3.5},
        {"NVIDIA Tesla V100", "12nm", 0.42, 0.15},
    };
}

ReplayResult functional_replay(const std::vector<std::vector<int>>& weights,
                               const std::vector<std::vector<int>>& inputs,
                               const ColumnModel& col, bool ideal_accumulation) {
    const std::size_t K = weights.size();
    const std::size_t N = K ? weights.front().size() : 0;
    for (const auto& row : weights)
        if (row.size() != N) throw DomainError("functional_replay: ragged weights");
    ReplayResult r;
    std::vector<std::vector<int>> wcols(N, std::vector<int>(K));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n) wcols[n][k] = weights[k][n];
    for (const auto& x : inputs) {
        if (x.size() != K) throw DomainError("functional_replay: input length differs from K");
        std::vector<long> hw(N), ex(N);
        for (std::size_t n = 0; n < N; ++n) {
            const PcuResult p = col.dot(wcols[n], x, ideal_accumulation);
            hw[n] = p.sum;
            ex[n] = p.exact;
            r.clip_events += p.clip_events;
            r.block_accesses += p.block_accesses;
            if (p.sum != p.exact) ++r.mismatches;
        }
        r.hw.push_back(std::move(hw));
        r.exact.push_back(std::move(ex));
    }
    return r;
}

}  // namespace stepcim
