#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "stepcim/device.hpp"

namespace stepcim {

struct ArrayConfig {
    int N_R = 256;
    int N_C = 256;
    int N_V = 16;
    int blocks = 16;
    double R_drv = 5085.51552867993;  // ohm, see calibrate()
    int adc_bits = 3;
    int Q = 32;
    int clip = 8;

    void validate() const;
};

struct VariationConfig {
    double sigma_vth = 0.010;  // V
    int iters = 1000;
    std::uint64_t seed = 1;
    // Driver resistance scales by (1 + dV/drv_overdrive).
    double drv_overdrive = 0.3;  // V
    // Comparator and subtractor input mirrors convert dV to current.
    double mirror_gm = 5.0e-6;   // S

    void validate() const;
};

// Devices hanging on one read bit line; identical devices are merged.
struct Contributor {
    double dE_G = 0.0;
    double dVth = 0.0;
    int count = 1;
};

struct RblSolution {
    double v = 0.0;
    double i = 0.0;
    double residual = 0.0;  // A
    int iterations = 0;
};

RblSolution settle_rbl(std::span<const Contributor> devs, const PeFET& dev, double R_drv,
                       double V_DD);

// Per-instance threshold offsets for one column plus its sensing chain.
struct ColumnOffsets {
    std::vector<double> m1, m2;  // per row, V
    double drv_scale1 = 1.0, drv_scale2 = 1.0;
    double i_off1 = 0.0, i_off2 = 0.0;  // A
};

struct MacResult {
    double i_rbl1 = 0.0, i_rbl2 = 0.0;
    double v_rbl1 = 0.0, v_rbl2 = 0.0;
    int s_n = 1;
    int a = 0;
    int o = 0;
    int o_ideal = 0;
};

int adc_quantize(double i_diff, double unit, int levels = 8);

struct SenseMarginRow {
    int a = 0;
    double sm = 0.0;
    double lower = 0.0;
    double upper = 0.0;  // equals lower when there is no level above
    double min1 = 0.0, min2 = 0.0;
    double max1 = 0.0, max2 = 0.0;
};

struct McLevel {
    int a = 0;
    int trials = 0;
    int errors = 0;
    int n_plus1 = 0;
    int n_minus1 = 0;
    int n_other = 0;
    std::map<int, int> histogram;  // decoded output -> count
    double p_error() const { return trials ? double(errors) / trials : 0.0; }
};

struct McReport {
    std::vector<McLevel> levels;
    int total_errors = 0;
};

struct PcuResult {
    long sum = 0;
    long exact = 0;
    int block_accesses = 0;
    int clip_events = 0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, int a, int trial);

// One column of the array with its driver and sensing periphery.
class ColumnModel {
public:
    ColumnModel(PeFET dev, ArrayConfig cfg);

    const PeFET& device() const { return dev_; }
    const ArrayConfig& config() const { return cfg_; }
    // ADC unit current, measured at the single-row minimum-load point.
    double unit() const { return unit_; }

    std::pair<RblSolution, RblSolution> settle(std::span<const int> w, std::span<const int> x,
                                               const ColumnOffsets* off = nullptr) const;
    MacResult mac(std::span<const int> w, std::span<const int> x,
                  const ColumnOffsets* off = nullptr) const;

    std::vector<SenseMarginRow> sense_margin_curve() const;
    McReport monte_carlo(const VariationConfig& var) const;

    // Rows x columns of weights against one input slice.
    std::vector<int> block_mac(const std::vector<std::vector<int>>& weights,
                               std::span<const int> x) const;
    // Long dot product tiled into N_V-row blocks and accumulated in the PCU.
    PcuResult dot(std::span<const int> w, std::span<const int> x, bool ideal = false) const;

private:
    double row_dEg(int p, int i) const;
    void check(std::span<const int> w, std::span<const int> x) const;

    PeFET dev_;
    ArrayConfig cfg_;
    double dE_pos_ = 0.0;  // stored +P under +V_R
    double dE_neg_ = 0.0;  // stored -P under +V_R
    double unit_ = 0.0;
};

MacResult mac_column(std::span<const int> w, std::span<const int> x, const PeFET& dev,
                     const ArrayConfig& cfg, const ColumnOffsets* off = nullptr);

std::vector<int> min_load_weights(int a, int n);
std::vector<int> min_load_inputs(int a, int n);
std::vector<int> max_load_inputs(int a, int n);

}  // namespace stepcim
