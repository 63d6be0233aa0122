#pragma once

#include "stepcim/ferro.hpp"
#include "stepcim/piezo.hpp"
#include "stepcim/tmdfet.hpp"

namespace stepcim {

struct Geometry {
    double L_TMD = 20e-9;
    double W_TMD = 30e-9;
    double L_PE = 100e-9;
    double W_PE = 180e-9;
};

struct DeviceParams {
    Geometry geom;
    FerroParams ferro;
    PiezoParams piezo;
    FetParams fet;
    double V_DD = 0.8;
    double V_R = 0.4;
    double V_GS_sense = 0.4;
    // Word-line boost makes access devices ideal unless this is set.
    bool finite_access = false;
    double R_access = 5.0e3;  // ohm, used only with finite_access

    // Pushes geometry into A_PE, kappa and W, then checks every rule.
    void resolve();
    void validate() const;
};

// One PeFET instance shared read-only by cells and arrays.
class PeFET {
public:
    explicit PeFET(DeviceParams p);

    const DeviceParams& params() const { return p_; }
    const TmdFet& fet() const { return fet_; }

    double sense_dEg(int p_sign, double v_GB) const;
    double sense_current(int p_sign, double v_GB, double v_DS, double dVth = 0.0) const;
    double current_for_dEg(double dE_G, double v_DS, double dVth = 0.0) const;

    double i_lrs() const { return sense_current(+1, p_.V_R, p_.V_DD); }
    double i_hrs() const { return sense_current(-1, p_.V_R, p_.V_DD); }

private:
    DeviceParams p_;
    TmdFet fet_;
};

}  // namespace stepcim
