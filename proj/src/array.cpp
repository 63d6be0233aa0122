#include "stepcim/array.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "stepcim/cell.hpp"
#include "stepcim/errors.hpp"

namespace stepcim {

void ArrayConfig::validate() const {
    if (N_R <= 0 || N_C <= 0 || N_V <= 0 || blocks <= 0)
        throw DomainError("array: dimensions must be positive");
    if (N_V > N_R) throw DomainError("array: N_V must not exceed N_R");
    if (N_V * blocks != N_R) throw DomainError("array: N_V * blocks must equal N_R");
    if (adc_bits <= 0 || adc_bits > 16) throw DomainError("array: adc_bits out of range");
    if (clip != (1 << adc_bits)) throw DomainError("array: clip must equal 2^adc_bits");
    if (!(R_drv >= 0.0)) throw DomainError("array: R_drv must be non-negative");
    if (Q <= 0) throw DomainError("array: Q must be positive");
}

void VariationConfig::validate() const {
    if (!(sigma_vth >= 0.0)) throw DomainError("variation: sigma_vth must be non-negative");
    if (iters <= 0) throw DomainError("variation: iters must be positive");
    if (!(drv_overdrive > 0.0)) throw DomainError("variation: drv_overdrive must be positive");
    if (!(mirror_gm >= 0.0)) throw DomainError("variation: mirror_gm must be non-negative");
}

RblSolution settle_rbl(std::span<const Contributor> devs, const PeFET& dev, double R_drv,
                       double V_DD) {
    auto total = [&](double v) {
        double s = 0.0;
        for (const auto& c : devs) s += c.count * dev.current_for_dEg(c.dE_G, v, c.dVth);
        return s;
    };
    RblSolution r;
    if (devs.empty()) {
        r.v = V_DD;
        return r;
    }
    if (R_drv == 0.0) {
        r.v = V_DD;
        r.i = total(V_DD);
        return r;
    }
    double lo = 0.0, hi = V_DD;
    for (int it = 1; it <= 200; ++it) {
        const double v = 0.5 * (lo + hi);
        const double i = total(v);
        const double res = (V_DD - v) / R_drv - i;
        if (std::abs(res) < 1e-13 || hi - lo < 1e-15) {
            r.v = v;
            r.i = i;
            r.residual = res;
            r.iterations = it;
            return r;
        }
        if (res > 0.0) lo = v; else hi = v;
    }
    throw SolverError("settle_rbl: bisection did not converge in 200 iterations");
}

int adc_quantize(double i_diff, double unit, int levels) {
    if (!(unit > 0.0)) throw DomainError("adc_quantize: unit must be positive");
    int a = 0;
    while (a < levels && i_diff > (a + 0.5) * unit) ++a;
    return a;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int a, int trial) {
    return splitmix64(splitmix64(seed ^ (std::uint64_t(a) << 32)) + std::uint64_t(trial));
}

std::vector<int> min_load_weights(int a, int n) {
    std::vector<int> w(n, 0);
    std::fill(w.begin(), w.begin() + a, 1);
    return w;
}

std::vector<int> min_load_inputs(int a, int n) { return min_load_weights(a, n); }

std::vector<int> max_load_inputs(int a, int n) {
    std::vector<int> x(n, -1);
    std::fill(x.begin(), x.begin() + a, 1);
    return x;
}

ColumnModel::ColumnModel(PeFET dev, ArrayConfig cfg) : dev_(std::move(dev)), cfg_(cfg) {
    cfg_.validate();
    const DeviceParams& dp = dev_.params();
    dE_pos_ = dev_.sense_dEg(+1, dp.V_R);
    dE_neg_ = dev_.sense_dEg(-1, dp.V_R);
    const std::vector<int> one{1};
    auto [s1, s2] = settle(one, one);
    unit_ = s1.i - s2.i;
    if (!(unit_ > 0.0)) throw SolverError("array: non-positive ADC unit current");
}

double ColumnModel::row_dEg(int p, int i) const { return p * i > 0 ? dE_pos_ : dE_neg_; }

void ColumnModel::check(std::span<const int> w, std::span<const int> x) const {
    if (w.size() != x.size()) throw DomainError("mac: weight and input lengths differ");
    if (w.size() > std::size_t(cfg_.N_V))
        throw CapacityError("mac: " + std::to_string(w.size()) + " rows exceed N_V = " +
                            std::to_string(cfg_.N_V));
    for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] < -1 || w[j] > 1 || x[j] < -1 || x[j] > 1)
            throw DomainError("mac: operands must be ternary");
}

namespace {

void add(std::vector<Contributor>& v, double dE, double dVth, bool merge) {
    if (merge)
        for (auto& c : v)
            if (c.dE_G == dE && c.dVth == dVth) {
                ++c.count;
                return;
            }
    v.push_back({dE, dVth, 1});
}

}  // namespace

std::pair<RblSolution, RblSolution> ColumnModel::settle(std::span<const int> w,
                                                        std::span<const int> x,
                                                        const ColumnOffsets* off) const {
    check(w, x);
    std::vector<Contributor> l1, l2;
    l1.reserve(w.size());
    l2.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (x[j] == 0) continue;
        const TernaryWord tw = encode_weight(w[j]);
        add(l1, row_dEg(tw.p1, x[j]), off ? off->m1.at(j) : 0.0, !off);
        add(l2, row_dEg(tw.p2, x[j]), off ? off->m2.at(j) : 0.0, !off);
    }
    const double vdd = dev_.params().V_DD;
    const double r1 = cfg_.R_drv * (off ? off->drv_scale1 : 1.0);
    const double r2 = cfg_.R_drv * (off ? off->drv_scale2 : 1.0);
    return {settle_rbl(l1, dev_, r1, vdd), settle_rbl(l2, dev_, r2, vdd)};
}

MacResult ColumnModel::mac(std::span<const int> w, std::span<const int> x,
                           const ColumnOffsets* off) const {
    auto [s1, s2] = settle(w, x, off);
    MacResult r;
    r.v_rbl1 = s1.v;
    r.v_rbl2 = s2.v;
    r.i_rbl1 = s1.i + (off ? off->i_off1 : 0.0);
    r.i_rbl2 = s2.i + (off ? off->i_off2 : 0.0);
    r.s_n = r.i_rbl1 >= r.i_rbl2 ? 1 : -1;
    r.a = adc_quantize(std::abs(r.i_rbl1 - r.i_rbl2), unit_, cfg_.clip);
    r.o = r.s_n * r.a;
    for (std::size_t j = 0; j < w.size(); ++j) r.o_ideal += w[j] * x[j];
    return r;
}

std::vector<SenseMarginRow> ColumnModel::sense_margin_curve() const {
    const int n = cfg_.N_V;
    std::vector<SenseMarginRow> out;
    for (int a = 1; a <= n; ++a) {
        const auto w = min_load_weights(a, n);
        auto [m1, m2] = settle(w, min_load_inputs(a, n));
        auto [x1, x2] = settle(w, max_load_inputs(a, n));
        SenseMarginRow r;
        r.a = a;
        r.min1 = m1.i;
        r.min2 = m2.i;
        r.max1 = x1.i;
        r.max2 = x2.i;
        const double dmin = m1.i - m2.i, dmax = x1.i - x2.i;
        r.lower = std::min(dmin, dmax) - (a - 0.5) * unit_;
        r.upper = a < n ? (a + 0.5) * unit_ - std::max(dmin, dmax) : r.lower;
        r.sm = std::min(r.lower, r.upper);
        out.push_back(r);
    }
    return out;
}

McReport ColumnModel::monte_carlo(const VariationConfig& var) const {
    var.validate();
    const int n = cfg_.N_V;
    McReport rep;
    ColumnOffsets off;
    off.m1.resize(n);
    off.m2.resize(n);
    for (int a = 1; a <= n; ++a) {
        const auto w = min_load_weights(a, n);
        const auto x = min_load_inputs(a, n);
        McLevel lvl;
        lvl.a = a;
        for (int t = 0; t < var.iters; ++t) {
            std::mt19937_64 rng(trial_seed(var.seed, a, t));
            std::normal_distribution<double> g(0.0, 1.0);
            auto draw = [&] { return var.sigma_vth * g(rng); };
            for (int j = 0; j < n; ++j) off.m1[j] = draw();
            for (int j = 0; j < n; ++j) off.m2[j] = draw();
            off.drv_scale1 = 1.0 + draw() / var.drv_overdrive;
            off.drv_scale2 = 1.0 + draw() / var.drv_overdrive;
            off.i_off1 = var.mirror_gm * draw();
            off.i_off2 = var.mirror_gm * draw();

            auto [s1, s2] = settle(w, x, &off);
            const double d = (s1.i + off.i_off1) - (s2.i + off.i_off2);
            const int s = d >= 0.0 ? 1 : -1;
            const int decoded = s * adc_quantize(std::abs(d), unit_, n);
            ++lvl.trials;
            ++lvl.histogram[decoded];
            const int err = decoded - a;
            if (err == 0) continue;
            ++lvl.errors;
            if (err == 1) ++lvl.n_plus1;
            else if (err == -1) ++lvl.n_minus1;
            else ++lvl.n_other;
        }
        rep.total_errors += lvl.errors;
        rep.levels.push_back(std::move(lvl));
    }
    return rep;
}

std::vector<int> ColumnModel::block_mac(const std::vector<std::vector<int>>& weights,
                                        std::span<const int> x) const {
    if (weights.size() != x.size()) throw DomainError("block_mac: weight rows must match input length");
    const std::size_t cols = weights.empty() ? 0 : weights.front().size();
    for (const auto& row : weights)
        if (row.size() != cols) throw DomainError("block_mac: ragged weight matrix");
    if (cols > std::size_t(cfg_.N_C)) throw CapacityError("block_mac: more columns than N_C");
    std::vector<int> out(cols, 0);
    std::vector<int> col(weights.size());
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t j = 0; j < weights.size(); ++j) col[j] = weights[j][c];
        out[c] = mac(col, x).o;
    }
    return out;
}

PcuResult ColumnModel::dot(std::span<const int> w, std::span<const int> x, bool ideal) const {
    if (w.size() != x.size()) throw DomainError("dot: length mismatch");
    PcuResult r;
    const std::size_t nv = std::size_t(cfg_.N_V);
    for (std::size_t k = 0; k < w.size(); k += nv) {
        const std::size_t len = std::min(nv, w.size() - k);
        const MacResult m = mac(w.subspan(k, len), x.subspan(k, len));
        ++r.block_accesses;
        if (std::abs(m.o_ideal) > cfg_.clip) ++r.clip_events;
        r.sum += ideal ? m.o_ideal : m.o;
        r.exact += m.o_ideal;
    }
    return r;
}

MacResult mac_column(std::span<const int> w, std::span<const int> x, const PeFET& dev,
                     const ArrayConfig& cfg, const ColumnOffsets* off) {
    return ColumnModel(dev, cfg).mac(w, x, off);
}

}  // namespace stepcim
