#include "stepcim/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "stepcim/errors.hpp"

namespace stepcim {

double min_sense_margin(const DeviceParams& dp, const ArrayConfig& ac) {
    const ColumnModel cm(PeFET(dp), ac);
    double m = INFINITY;
    for (const auto& r : cm.sense_margin_curve()) m = std::min(m, r.sm);
    return m;
}

CalibrationReport calibrate(GlobalConfig& cfg, const CalibrationTargets& t) {
    DeviceParams& dp = cfg.device;
    dp.resolve();
    CalibrationReport r;

    dp.piezo.calib_gain = solve_calib_gain(dp.piezo, dp.ferro, dp.V_R, t.dE_G);
    dp.fet.E_s_pos = t.dE_G / std::log(t.lrs_gain);
    dp.fet.E_s_neg = t.dE_G / std::log(t.hrs_loss);

    const PeFET dev(dp);
    const double i_ref = dev.current_for_dEg(0.0, dp.V_DD);
    r.calib_gain = dp.piezo.calib_gain;
    r.E_s_pos = dp.fet.E_s_pos;
    r.E_s_neg = dp.fet.E_s_neg;
    r.dE_G = dev.sense_dEg(+1, dp.V_R);
    r.lrs_gain = dev.i_lrs() / i_ref;
    r.hrs_loss = i_ref / dev.i_hrs();

    ArrayConfig ac = cfg.array;
    auto sm = [&](double R) {
        ac.R_drv = R;
        return min_sense_margin(dp, ac);
    };
    r.sm_ideal = sm(0.0);
    if (!(r.sm_ideal > t.sm_floor))
        throw InfeasibleError(fmt::format(
            "calibration: ideal-driver sense margin {:.4f} uA does not exceed the {:.4f} uA floor "
            "(binding constraint: (I_LRS - I_HRS)/2 with I_ref = {:.4g} A)",
            r.sm_ideal * 1e6, t.sm_floor * 1e6, dp.fet.I_ref));
    // Fall back to the floor when the preferred target is out of reach.
    const double goal = r.sm_ideal > t.sm_target ? t.sm_target : t.sm_floor;
    double lo = 0.0, hi = 1.0e3;
    while (sm(hi) > goal) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw InfeasibleError("calibration: sense margin never reaches its target");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sm(mid) > goal) lo = mid; else hi = mid;
    }
    cfg.array.R_drv = lo;
    r.R_drv = lo;
    r.min_sm = sm(lo);
    cfg.resolve();
    return r;
}

}  // namespace stepcim
