#include <doctest.h>

#include <cmath>

#include "stepcim/cell.hpp"
#include "stepcim/errors.hpp"

using namespace stepcim;

namespace {

PeFET make_dev() {
    DeviceParams dp;
    dp.resolve();
    return PeFET(dp);
}

const double kLrs = 2.3 * 2e-6;
const double kHrs = 2e-6 / 2.2;

}  // namespace

TEST_CASE("weight encoding table") {
    CHECK(encode_weight(0).p1 == -1);
    CHECK(encode_weight(0).p2 == -1);
    CHECK(encode_weight(1).p1 == +1);
    CHECK(encode_weight(1).p2 == -1);
    CHECK(encode_weight(-1).p1 == -1);
    CHECK(encode_weight(-1).p2 == +1);
    for (int w : {-1, 0, 1}) CHECK(decode_weight(encode_weight(w).p1, encode_weight(w).p2) == w);
    CHECK_THROWS_AS(decode_weight(+1, +1), InvalidStateError);
    CHECK_THROWS_AS(encode_weight(2), DomainError);
}

TEST_CASE("input encoding table") {
    const InputCode z = encode_input(0, 0.8), p = encode_input(1, 0.8), m = encode_input(-1, 0.8);
    CHECK(z.v_WL == 0.0);
    CHECK(z.v_CWL == 0.0);
    CHECK(p.v_WL == 0.8);
    CHECK(p.v_CWL == 0.0);
    CHECK(m.v_WL == 0.8);
    CHECK(m.v_CWL == 0.8);
    CHECK_THROWS_AS(encode_input(3, 0.8), DomainError);
}

TEST_CASE("bias vectors stay in the guard band") {
    DeviceParams dp;
    dp.resolve();
    for (int w : {-1, 0, 1})
        for (Phase ph : {Phase::phi1, Phase::phi2})
            CHECK(write_bias(w, ph, dp).in_guard_band(dp.V_DD, dp.fet.V_TH));
    CHECK(read_bias(dp).in_guard_band(dp.V_DD, dp.fet.V_TH));
    for (int i : {-1, 0, 1}) CHECK(compute_bias(encode_input(i, dp.V_DD), dp).in_guard_band(dp.V_DD, dp.fet.V_TH));
    const BiasVector h = hold_bias();
    CHECK(h.v_BL1 == 0.0);
    CHECK(h.v_RBL2 == 0.0);
    CHECK(h.v_WL == 0.0);
    CHECK(h.v_CWL == 0.0);
}

TEST_CASE("write of +1 drives each device in its own phase") {
    const PeFET dev = make_dev();
    const CellState s = CellState::from_weight(0, dev.params().ferro);
    const WriteResult r = write_word(s, 1, dev);
    CHECK(r.bias[0].v_GB1() == doctest::Approx(0.8));
    CHECK(r.bias[1].v_GB2() == doctest::Approx(-0.8));
    CHECK(r.state.p1() == +1);
    CHECK(r.state.p2() == -1);
    CHECK(r.flips == 1);
    CHECK(r.latency == doctest::Approx(2 * 5.4e-9));
}

TEST_CASE("write then read recovers every word from every start") {
    const PeFET dev = make_dev();
    for (int from : {-1, 0, 1})
        for (int to : {-1, 0, 1}) {
            const CellState s = CellState::from_weight(from, dev.params().ferro);
            WriteResult wr = write_word(s, to, dev);
            CHECK(wr.state.weight() == to);
            CHECK(read_word(wr.state, dev).w == to);
        }
}

TEST_CASE("rewriting the stored word needs no switching energy") {
    const PeFET dev = make_dev();
    for (int w : {-1, 0, 1}) {
        const CellState s = CellState::from_weight(w, dev.params().ferro);
        const WriteResult r = write_word(s, w, dev);
        CHECK(r.flips == 0);
        CHECK(r.switching_energy == 0.0);
        CHECK(r.state.p1() == s.p1());
        CHECK(r.state.p2() == s.p2());
        const WriteResult flip = write_word(CellState::from_weight(w == 1 ? -1 : 1, dev.params().ferro), w, dev);
        CHECK(flip.switching_energy > 0.0);
    }
}

TEST_CASE("switching energy follows the polarization swing") {
    const PeFET dev = make_dev();
    const FerroParams& fp = dev.params().ferro;
    const WriteResult r = write_word(CellState::from_weight(0, fp), 1, dev);
    // M1 goes from -P_R to the +P branch during one phase of the lagged field.
    const double E_end = 0.8 / fp.t_PE * (1 - std::exp(-5.4e-9 / fp.tau_PE));
    const double P_end = branch_polarization(Branch::descending, fp, E_end);
    const double ref = 0.5 * fp.A_PE * std::abs(P_end - FerroState::remnant(-1, fp).P) * 0.8;
    CHECK(r.switching_energy == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("write energy is additive over a sequence") {
    const PeFET dev = make_dev();
    const FerroParams& fp = dev.params().ferro;
    CellState s = CellState::from_weight(0, fp);
    double seq = 0.0, parts = 0.0;
    const int words[] = {1, -1, -1, 0, 1, 0};
    for (int w : words) {
        const WriteResult r = write_word(s, w, dev);
        seq += r.energy;
        parts += write_word(CellState::from_polarities(s.p1(), s.p2(), fp), w, dev).energy;
        s = r.state;
    }
    CHECK(seq == doctest::Approx(parts).epsilon(1e-6));
}

TEST_CASE("read currents per stored word") {
    const PeFET dev = make_dev();
    const FerroParams& fp = dev.params().ferro;
    struct Row { int w; double i1, i2; };
    for (const Row& row : {Row{1, kLrs, kHrs}, Row{0, kHrs, kHrs}, Row{-1, kHrs, kLrs}}) {
        CellState s = CellState::from_weight(row.w, fp);
        const ReadResult r = read_word(s, dev);
        CHECK(r.w == row.w);
        CHECK(r.i_rbl1 == doctest::Approx(row.i1).epsilon(1e-9));
        CHECK(r.i_rbl2 == doctest::Approx(row.i2).epsilon(1e-9));
    }
}

TEST_CASE("reading the forbidden pair is an invalid state") {
    const PeFET dev = make_dev();
    CellState s = CellState::from_polarities(+1, +1, dev.params().ferro);
    CHECK_THROWS_AS(read_word(s, dev), InvalidStateError);
}

TEST_CASE("resistance class under opposite sense polarity is the dual") {
    const PeFET dev = make_dev();
    for (int p : {-1, +1}) {
        const double pos = dev.sense_current(p, 0.4, 0.8);
        const double neg = dev.sense_current(p, -0.4, 0.8);
        CHECK((pos > 2e-6) != (neg > 2e-6));
        CHECK(pos == doctest::Approx(p > 0 ? kLrs : kHrs).epsilon(1e-9));
        CHECK(neg == doctest::Approx(p > 0 ? kHrs : kLrs).epsilon(1e-9));
    }
}

TEST_CASE("scalar product truth table") {
    const PeFET dev = make_dev();
    for (int w : {-1, 0, 1})
        for (int i : {-1, 0, 1}) {
            CellState s = CellState::from_weight(w, dev.params().ferro);
            const ComputeResult r = scalar_product(s, encode_input(i, 0.8), dev);
            CHECK(r.o == w * i);
        }
}

TEST_CASE("scalar product line currents") {
    const PeFET dev = make_dev();
    const FerroParams& fp = dev.params().ferro;
    CellState s = CellState::from_weight(1, fp);
    ComputeResult r = scalar_product(s, encode_input(-1, 0.8), dev);
    CHECK(r.i_rbl1 == doctest::Approx(kHrs).epsilon(1e-9));
    CHECK(r.i_rbl2 == doctest::Approx(kLrs).epsilon(1e-9));
    s = CellState::from_weight(0, fp);
    r = scalar_product(s, encode_input(-1, 0.8), dev);
    CHECK(r.i_rbl1 == doctest::Approx(kLrs).epsilon(1e-9));
    CHECK(r.i_rbl2 == doctest::Approx(kLrs).epsilon(1e-9));
    for (int w : {-1, 0, 1}) {
        s = CellState::from_weight(w, fp);
        r = scalar_product(s, encode_input(0, 0.8), dev);
        CHECK(r.i_rbl1 == 0.0);
        CHECK(r.i_rbl2 == 0.0);
    }
}

TEST_CASE("compute and read never change stored polarities") {
    const PeFET dev = make_dev();
    for (int w : {-1, 0, 1}) {
        CellState s = CellState::from_weight(w, dev.params().ferro);
        for (int k = 0; k < 300; ++k) {
            if (k % 4 == 3) read_word(s, dev);
            else scalar_product(s, encode_input(k % 3 - 1, 0.8), dev);
            REQUIRE(s.weight() == w);
        }
    }
}

TEST_CASE("segmented local line costs a quarter of the full row") {
    DeviceParams dp;
    dp.resolve();
    const SegmentGeom g;
    const SegmentEnergy e = segment_energy(OpKind::write, g, dp);
    FerroState s0 = FerroState::remnant(-1, dp.ferro);
    const double c_pe = ferro_capacitance(s0, dp.ferro, 0.0);
    CHECK(e.lcwl == doctest::Approx(2 * 64 * c_pe * 0.64).epsilon(1e-12));
    CHECK(e.lcwl == doctest::Approx(e.cwl_full * 64.0 / 256.0).epsilon(1e-12));
    CHECK(e.segmented < e.unsegmented);
}

TEST_CASE("hold costs nothing and the local line scales with width") {
    DeviceParams dp;
    dp.resolve();
    const SegmentEnergy h = segment_energy(OpKind::hold, {}, dp);
    CHECK(h.segmented == 0.0);
    CHECK(h.unsegmented == 0.0);
    SegmentGeom g;
    const double a = segment_energy(OpKind::compute, g, dp).lcwl;
    g.local_cols = 128;
    CHECK(segment_energy(OpKind::compute, g, dp).lcwl == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK(segment_energy(OpKind::read, g, dp).lcwl == 0.0);
    g.local_cols = 512;
    CHECK_THROWS_AS(segment_energy(OpKind::read, g, dp), DomainError);
}
