#pragma once

#include "stepcim/ferro.hpp"

namespace stepcim {

struct PiezoParams {
    double d33 = 650e-12;       // m/V
    double d31 = -320e-12;      // m/V, carried for completeness
    double s_E = 2.0e-11;       // 1/Pa
    double c_clamp = 0.25;
    double eta_hn = 11.0 / 30.0;
    double kappa = 600.0 / 18000.0;
    double alpha_TMD = 0.8e-9;  // eV/Pa
    // Pa per V/m from field to PE stress; <= 0 uses the d33/s_E chain.
    double calib_gain = 8.25;

    void validate() const;
};

struct StressResult {
    double S_PE = 0.0;
    double sigma_PE = 0.0;   // Pa
    double sigma_TMD = 0.0;  // Pa
    double dE_G = 0.0;       // eV, positive = gap reduction
};

double kappa_from_geometry(double L_TMD, double W_TMD, double L_PE, double W_PE);
double hn_amplification(double kappa, double eta_hn = 11.0 / 30.0);

StressResult transduce(int P_sign, double V_GB, const PiezoParams& pp, const FerroParams& fp);

// Electric displacement of the PE layer for inspection.
double displacement(double sigma_PE, double E, const PiezoParams& pp, const FerroParams& fp);

// calib_gain that places |dE_G| at target_dEg for a sense bias of V_ref.
double solve_calib_gain(const PiezoParams& pp, const FerroParams& fp, double V_ref,
                        double target_dEg);

}  // namespace stepcim
