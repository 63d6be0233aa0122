#include "stepcim/cell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stepcim/errors.hpp"

namespace stepcim {

TernaryWord encode_weight(int w) {
    switch (w) {
        case 0: return {0, -1, -1};
        case 1: return {1, +1, -1};
        case -1: return {-1, -1, +1};
    }
    throw DomainError("encode_weight: weight must be -1, 0 or +1, got " + std::to_string(w));
}

int decode_weight(int p1, int p2) {
    if (p1 == -1 && p2 == -1) return 0;
    if (p1 == +1 && p2 == -1) return 1;
    if (p1 == -1 && p2 == +1) return -1;
    if (p1 == +1 && p2 == +1) throw InvalidStateError("decode_weight: (+P,+P) is not a valid encoding");
    throw DomainError("decode_weight: polarities must be +1 or -1");
}

InputCode encode_input(int i, double V_DD) {
    switch (i) {
        case 0: return {0, 0.0, 0.0};
        case 1: return {1, V_DD, 0.0};
        case -1: return {-1, V_DD, V_DD};
    }
    throw DomainError("encode_input: input must be -1, 0 or +1, got " + std::to_string(i));
}

bool BiasVector::in_guard_band(double V_DD, double V_TH) const {
    const double lo = -0.1, hi = V_DD + V_TH + 0.1;
    for (double v : {v_BL1, v_BL2, v_RBL1, v_RBL2, v_WL, v_CWL})
        if (v < lo || v > hi) return false;
    return true;
}

BiasVector write_bias(int w, Phase phase, const DeviceParams& dp) {
    const TernaryWord tw = encode_weight(w);
    BiasVector b;
    b.phase = phase;
    b.v_WL = dp.V_DD + dp.fet.V_TH;
    b.v_CWL = phase == Phase::phi2 ? dp.V_DD : 0.0;
    // +P targets see V_DD on their bit line in both phases, -P targets see 0.
    b.v_BL1 = tw.p1 > 0 ? dp.V_DD : 0.0;
    b.v_BL2 = tw.p2 > 0 ? dp.V_DD : 0.0;
    return b;
}

BiasVector read_bias(const DeviceParams& dp) {
    BiasVector b;
    b.v_BL1 = b.v_BL2 = dp.V_R;
    b.v_RBL1 = b.v_RBL2 = dp.V_DD;
    b.v_WL = dp.V_DD;
    b.v_CWL = 0.0;
    return b;
}

BiasVector compute_bias(const InputCode& in, const DeviceParams& dp) {
    BiasVector b;
    b.v_BL1 = b.v_BL2 = dp.V_R;
    b.v_RBL1 = b.v_RBL2 = dp.V_DD;
    b.v_WL = in.v_WL;
    b.v_CWL = in.v_CWL;
    return b;
}

BiasVector hold_bias() { return {}; }

CellState CellState::from_polarities(int p1, int p2, const FerroParams& fp) {
    return {FerroState::remnant(p1, fp), FerroState::remnant(p2, fp)};
}

CellState CellState::from_weight(int w, const FerroParams& fp) {
    const TernaryWord tw = encode_weight(w);
    return from_polarities(tw.p1, tw.p2, fp);
}

const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::hold: return "hold";
        case OpKind::read: return "read";
        case OpKind::write: return "write";
        case OpKind::compute: return "compute";
    }
    return "?";
}

SegmentEnergy segment_energy(OpKind kind, const SegmentGeom& g, const DeviceParams& dp,
                             const SegmentParams& sp) {
    if (g.local_cols <= 0 || g.row_cols <= 0 || g.col_rows <= 0 || g.local_cols > g.row_cols)
        throw DomainError("segment_energy: invalid segment geometry");
    SegmentEnergy e;
    if (kind == OpKind::hold) return e;

    FerroState s0 = FerroState::remnant(-1, dp.ferro);
    const double c_pe = ferro_capacitance(s0, dp.ferro, 0.0);
    const double c_bl = g.col_rows * sp.C_bl_per_cell;
    const double vdd2 = dp.V_DD * dp.V_DD;
    const double v_wl = kind == OpKind::write ? dp.V_DD + dp.fet.V_TH : dp.V_DD;

    e.wl = g.row_cols * sp.C_wl_per_cell * v_wl * v_wl;
    if (kind == OpKind::write) {
        // Half the bit lines swing to V_DD on average; the CWL toggles once.
        e.bl = 0.5 * 2.0 * g.row_cols * c_bl * vdd2;
        e.lcwl = 2.0 * g.local_cols * c_pe * vdd2;
        e.cwl_full = 2.0 * g.row_cols * c_pe * vdd2;
    } else {
        e.bl = 2.0 * g.row_cols * c_bl * dp.V_R * dp.V_R;
        if (kind == OpKind::compute) {
            e.lcwl = 2.0 * g.local_cols * c_pe * vdd2;
            e.cwl_full = 2.0 * g.row_cols * c_pe * vdd2;
        }
    }
    e.buffer = sp.C_buffer * vdd2;
    e.segmented = e.lcwl + e.bl + e.wl + e.buffer;
    e.unsegmented = e.cwl_full + e.bl + e.wl;
    e.per_word = (e.lcwl + e.buffer) / g.local_cols + (e.bl + e.wl) / g.row_cols;
    return e;
}

namespace {

struct PhaseTally {
    double switching = 0.0;
    double dielectric = 0.0;
    int flips = 0;
};

// Drives one device through the two phases and a release, tallying source energy.
FerroState drive(const FerroState& start, double v1, double v2, const FerroParams& fp,
                 const CellParams& cp, PhaseTally& tally) {
    const double dt = fp.tau_PE / 100.0;
    FerroState s = start;
    for (double v : {v1, v2}) {
        const double P0 = s.P;
        auto r = pulse(s, fp, v, cp.phase_time, 0.0, dt);
        const double e = 0.5 * fp.A_PE * std::abs(r.final_state.P - P0) * std::abs(v);
        if (r.branch_flips > 0) tally.switching += e; else tally.dielectric += e;
        tally.flips += r.branch_flips;
        s = r.final_state;
    }
    return pulse(s, fp, 0.0, 0.0, cp.relax, dt).final_state;
}

FerroState sense_pulse(const FerroState& s, double v, const FerroParams& fp, const CellParams& cp) {
    // The line idles at 0 V until the next access, so hand back the fully relaxed state.
    const FerroState f = pulse(s, fp, v, cp.sense_pulse, cp.relax).final_state;
    return FerroState::remnant(polarity(f.branch), fp);
}

}  // namespace

WriteResult write_word(const CellState& s, int w, const PeFET& dev, const CellParams& cp) {
    const DeviceParams& dp = dev.params();
    WriteResult r;
    r.bias = {write_bias(w, Phase::phi1, dp), write_bias(w, Phase::phi2, dp)};
    PhaseTally t;
    r.state.m1 = drive(s.m1, r.bias[0].v_GB1(), r.bias[1].v_GB1(), dp.ferro, cp, t);
    r.state.m2 = drive(s.m2, r.bias[0].v_GB2(), r.bias[1].v_GB2(), dp.ferro, cp, t);
    r.switching_energy = t.switching;
    r.dielectric_energy = t.dielectric;
    r.flips = t.flips;
    r.line_energy = segment_energy(OpKind::write, cp.geom, dp, cp.seg).per_word;
    r.energy = r.switching_energy + r.dielectric_energy + r.line_energy;
    r.latency = 2.0 * cp.phase_time;
    return r;
}

std::array<double, 2> sense_currents(int p1, int p2, int i, const PeFET& dev, double v_RBL) {
    if (i == 0) return {0.0, 0.0};
    const DeviceParams& dp = dev.params();
    const BiasVector b = compute_bias(encode_input(i, dp.V_DD), dp);
    return {dev.sense_current(p1, b.v_GB1(), v_RBL), dev.sense_current(p2, b.v_GB2(), v_RBL)};
}

ReadResult read_word(CellState& s, const PeFET& dev, const CellParams& cp) {
    const DeviceParams& dp = dev.params();
    const BiasVector b = read_bias(dp);
    s.m1 = sense_pulse(s.m1, b.v_GB1(), dp.ferro, cp);
    s.m2 = sense_pulse(s.m2, b.v_GB2(), dp.ferro, cp);
    ReadResult r;
    r.i_rbl1 = dev.sense_current(s.p1(), b.v_GB1(), b.v_RBL1);
    r.i_rbl2 = dev.sense_current(s.p2(), b.v_GB2(), b.v_RBL2);
    const double ref = dp.fet.I_ref;
    const int b1 = r.i_rbl1 > ref ? +1 : -1;
    const int b2 = r.i_rbl2 > ref ? +1 : -1;
    r.w = decode_weight(b1, b2);
    return r;
}

ComputeResult scalar_product(CellState& s, const InputCode& in, const PeFET& dev,
                             const CellParams& cp) {
    ComputeResult r;
    if (in.i == 0) return r;
    const DeviceParams& dp = dev.params();
    const BiasVector b = compute_bias(in, dp);
    s.m1 = sense_pulse(s.m1, b.v_GB1(), dp.ferro, cp);
    s.m2 = sense_pulse(s.m2, b.v_GB2(), dp.ferro, cp);
    r.i_rbl1 = dev.sense_current(s.p1(), b.v_GB1(), b.v_RBL1);
    r.i_rbl2 = dev.sense_current(s.p2(), b.v_GB2(), b.v_RBL2);
    const double tol = 1e-9 * std::max(r.i_rbl1, r.i_rbl2);
    const double d = r.i_rbl1 - r.i_rbl2;
    r.o = d > tol ? 1 : (d < -tol ? -1 : 0);
    return r;
}

}  // namespace stepcim
