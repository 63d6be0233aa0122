#pragma once

#include <string>
#include <vector>

#include "stepcim/array.hpp"

namespace stepcim {

enum class Tech { step_cim, sram_nm, pefet_nm };
const char* to_string(Tech t);
Tech tech_from_string(const std::string& s);

// Array-level primitives. One absolute latency anchor (the SRAM row read)
// and one absolute energy anchor (the STeP-CiM block MAC); everything else
// is a ratio against those.
struct CostModel {
    double t_read_sram = 1.0e-9;         // s, per row read
    double read_latency_ratio_pefet = 1.0;
    double mac_latency_ratio_step = 0.09;   // vs 16 sequential SRAM reads
    double t_write_sram = 1.0e-9;         // s, per row write
    double write_latency_ratio_step = 3.97;
    double t_pcu = 0.17e-9;               // s, one partial-sum pass of Q units

    double e_block_step = 3.3e-12;        // J, one 16-row block MAC over 256 columns
    double mac_energy_ratio_sram = 0.85;  // step / sram_nm
    double mac_energy_ratio_pefet = 0.09; // step / pefet_nm
    double pcu_energy_factor = 2.4;       // PCU add = factor * e_block / 256
    double nm_mac_energy_factor = 8.0;    // NM digital MAC = factor * e_block / 4096

    double e_read_active_sram = 0.2e-12;  // J per row read
    double read_active_ratio_step = 9.0;
    double write_active_ratio_sram = 3.34;  // sram write / sram read, active
    double write_active_ratio_step = 2.0;   // step write / sram write, active
    double sram_leak_power = 2.4032258064516e-4;  // W per array
    double active_fraction = 0.2;

    double F = 20e-9;                     // m
    double cell_F2_step = 202.5;
    double cell_F2_sram = 378.0;
    double adc_area_overhead = 1.09;
    double nm_periphery_area = 1330e-12;  // m^2 per NM array
    int words_per_array = 65536;

    void validate() const;

    double read_latency(Tech t) const;
    double write_latency(Tech t) const;
    double mac_latency(Tech t) const;      // one 16-row x 256-column block
    double read_energy_active(Tech t) const;
    double read_energy_total(Tech t) const;
    double write_energy_active(Tech t) const;
    double write_energy_total(Tech t) const;
    double mac_energy(Tech t) const;
    double e_pcu() const { return pcu_energy_factor * e_block_step / 256.0; }
    double e_nm_mac() const { return nm_mac_energy_factor * e_block_step / 4096.0; }
    double idle_per_active() const { return (1.0 - active_fraction) / active_fraction; }
};

enum class LayerKind { conv, fc, recurrent_step };
const char* to_string(LayerKind k);
LayerKind layer_kind_from_string(const std::string& s);

struct WorkloadLayer {
    std::string name;
    LayerKind kind = LayerKind::fc;
    long K = 0;        // reduction length
    long N = 0;        // output channels
    long P = 1;        // vectors per sample (output pixels or time steps)
    long repeat = 1;
    double sparsity = 0.5;

    long macs() const { return K * N * P * repeat; }
    long weights() const { return K * N; }
    void validate() const;
};

struct Benchmark {
    std::string name;
    std::vector<WorkloadLayer> layers;
};

struct Suite {
    int batch = 16;
    std::vector<Benchmark> benchmarks;
};

Suite default_suite();

struct Organization {
    std::string name;
    Tech tech = Tech::step_cim;
    int n_arrays = 32;
    int rows = 256;
    int cols = 256;
    int rows_per_access = 16;
    int pcu = 32;

    long capacity_words() const { return long(n_arrays) * rows * cols; }
};

struct AreaReport {
    double cell_area_step = 0.0;  // m^2
    double cell_area_sram = 0.0;
    double cell_ratio = 0.0;
    double array_area_step = 0.0;
    double array_area_pefet = 0.0;
    double array_area_sram = 0.0;
    double chip_area_step = 0.0;
    int iso_area_sram = 0;
    int iso_area_pefet = 0;
};

AreaReport area_report(const CostModel& c, int n_step_arrays = 32);

std::vector<Organization> default_organizations(const CostModel& c);
Organization find_organization(const std::vector<Organization>& orgs, const std::string& name);

struct AccessCounts {
    long blocks = 0;
    long row_reads = 0;
    long psums = 0;
    long write_rows = 0;
};

struct LayerEstimate {
    double latency = 0.0;
    double energy = 0.0;
    AccessCounts counts;
    double ops = 0.0;
};

LayerEstimate estimate_layer(const WorkloadLayer& l, const Organization& org, const CostModel& c,
                             int batch = 1);

struct BenchmarkRow {
    std::string name;
    std::vector<double> latency;  // per organization
    std::vector<double> energy;
    double ops = 0.0;
};

struct ComparisonReport {
    std::vector<std::string> org_names;
    std::vector<BenchmarkRow> rows;
    // Geometric means over benchmarks, baseline / step_cim.
    std::vector<double> speedup;
    std::vector<double> energy_ratio;
    double tops_per_w = 0.0;
    double tops_per_mm2 = 0.0;
    double speedup_for(const std::string& org) const;
    double energy_ratio_for(const std::string& org) const;
};

// The first organization is the reference design.
ComparisonReport run_benchmark(const Suite& suite, const std::vector<Organization>& orgs,
                               const CostModel& c);

struct ReferencePoint {
    const char* name;
    const char* tech;
    double tops_w;
    double tops_mm2;
};
std::vector<ReferencePoint> reference_points();

struct ReplayResult {
    std::vector<std::vector<long>> hw;     // [vector][output]
    std::vector<std::vector<long>> exact;
    long clip_events = 0;
    long mismatches = 0;
    long block_accesses = 0;
};

// weights is K x N, inputs is V x K.
ReplayResult functional_replay(const std::vector<std::vector<int>>& weights,
                               const std::vector<std::vector<int>>& inputs,
                               const ColumnModel& col, bool ideal_accumulation = false);

double geometric_mean(const std::vector<double>& v);

}  // namespace stepcim
