#pragma once

#include <array>

#include "stepcim/device.hpp"

namespace stepcim {

struct TernaryWord {
    int w = 0;
    int p1 = -1;
    int p2 = -1;
};

TernaryWord encode_weight(int w);
int decode_weight(int p1, int p2);

struct InputCode {
    int i = 0;
    double v_WL = 0.0;
    double v_CWL = 0.0;
};

InputCode encode_input(int i, double V_DD);

enum class Phase { phi1, phi2, single };

struct BiasVector {
    double v_BL1 = 0.0, v_BL2 = 0.0;
    double v_RBL1 = 0.0, v_RBL2 = 0.0;
    double v_WL = 0.0, v_CWL = 0.0;
    Phase phase = Phase::single;

    double v_GB1() const { return v_BL1 - v_CWL; }
    double v_GB2() const { return v_BL2 - v_CWL; }
    bool in_guard_band(double V_DD, double V_TH) const;
};

BiasVector write_bias(int w, Phase phase, const DeviceParams& dp);
BiasVector read_bias(const DeviceParams& dp);
BiasVector compute_bias(const InputCode& in, const DeviceParams& dp);
BiasVector hold_bias();

struct CellState {
    FerroState m1;
    FerroState m2;

    int p1() const { return polarity(m1.branch); }
    int p2() const { return polarity(m2.branch); }
    int weight() const { return decode_weight(p1(), p2()); }
    static CellState from_polarities(int p1, int p2, const FerroParams& fp);
    static CellState from_weight(int w, const FerroParams& fp);
};

enum class OpKind { hold, read, write, compute };
const char* to_string(OpKind k);

struct SegmentGeom {
    int local_cols = 64;   // cells on one local CWL
    int row_cols = 256;    // cells on the global row
    int col_rows = 256;    // cells on one bit line
};

struct SegmentParams {
    double C_bl_per_cell = 0.08e-15;  // F per cell on BL/RBL
    double C_wl_per_cell = 0.05e-15;  // F per cell on WL
    double C_buffer = 2.0e-15;        // local CWL buffer, F
};

struct SegmentEnergy {
    double lcwl = 0.0;        // local CWL with segmentation
    double cwl_full = 0.0;    // same line without segmentation
    double bl = 0.0;
    double wl = 0.0;
    double buffer = 0.0;
    double segmented = 0.0;
    double unsegmented = 0.0;
    // Share attributed to one word of the accessed row.
    double per_word = 0.0;
};

SegmentEnergy segment_energy(OpKind kind, const SegmentGeom& g, const DeviceParams& dp,
                             const SegmentParams& sp = {});

struct CellParams {
    double phase_time = 5.4e-9;   // one write phase
    double sense_pulse = 2.0e-9;
    double relax = 9.0e-9;
    SegmentGeom geom;
    SegmentParams seg;
};

struct WriteResult {
    CellState state;
    double energy = 0.0;
    double switching_energy = 0.0;
    double dielectric_energy = 0.0;
    double line_energy = 0.0;
    double latency = 0.0;
    int flips = 0;
    std::array<BiasVector, 2> bias;
};

struct ReadResult {
    double i_rbl1 = 0.0;
    double i_rbl2 = 0.0;
    int w = 0;
};

struct ComputeResult {
    double i_rbl1 = 0.0;
    double i_rbl2 = 0.0;
    int o = 0;
};

WriteResult write_word(const CellState& s, int w, const PeFET& dev, const CellParams& cp = {});
ReadResult read_word(CellState& s, const PeFET& dev, const CellParams& cp = {});
ComputeResult scalar_product(CellState& s, const InputCode& in, const PeFET& dev,
                             const CellParams& cp = {});

// Steady-state line currents for stored polarities, no transient.
std::array<double, 2> sense_currents(int p1, int p2, int i, const PeFET& dev, double v_RBL);

}  // namespace stepcim
