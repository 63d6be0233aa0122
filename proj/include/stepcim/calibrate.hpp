#pragma once

#include "stepcim/config.hpp"

namespace stepcim {

struct CalibrationTargets {
    double dE_G = 0.0484;     // eV at the read bias
    double lrs_gain = 2.3;    // I_LRS / I_ref
    double hrs_loss = 2.2;    // I_ref / I_HRS
    double sm_target = 1.2e-6;
    double sm_floor = 1.0e-6;
};

struct CalibrationReport {
    double calib_gain = 0.0;
    double E_s_pos = 0.0;
    double E_s_neg = 0.0;
    double R_drv = 0.0;
    double dE_G = 0.0;
    double lrs_gain = 0.0;
    double hrs_loss = 0.0;
    double min_sm = 0.0;
    double sm_ideal = 0.0;
};

double min_sense_margin(const DeviceParams& dp, const ArrayConfig& ac);

// Fits the transduction gain, the bandgap scales and R_drv in place.
CalibrationReport calibrate(GlobalConfig& cfg, const CalibrationTargets& t = {});

}  // namespace stepcim
