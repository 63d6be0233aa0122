#pragma once

namespace stepcim {

inline constexpr double kThermalVoltage = 0.025852;  // kT/q at 300 K

struct FetParams {
    double E_0 = 1.5;          // eV
    double V_TH = 0.1;         // V
    double n_ss = 1.3;
    double I_ref = 2.0e-6;     // A at the reference bias, dE_G = 0
    double v_sat_knee = 0.15;  // V
    double R_C = 200e-6;       // ohm*m (200 ohm*um)
    double W = 30e-9;          // m
    double E_s_pos = 0.0484 / 0.832909122935104;  // 0.0484 / ln 2.3
    double E_s_neg = 0.0484 / 0.788457360364270;  // 0.0484 / ln 2.2
    double V_GS_ref = 0.4;
    double V_DS_ref = 0.8;
    double leakage = 0.0;      // A

    void validate() const;
};

struct FetBias {
    double V_GS = 0.0;
    double V_DS = 0.0;
    double dE_G = 0.0;
};

double bandgap(const FetParams& p, double dE_G);
double bandgap_multiplier(const FetParams& p, double dE_G);

// Compact model instance. The prefactor is normalized once so that the
// nominal device carries I_ref at the reference bias; threshold offsets and
// extra series resistance are applied on top of that fixed prefactor.
class TmdFet {
public:
    explicit TmdFet(const FetParams& p);

    const FetParams& params() const { return p_; }
    double series_resistance() const { return rs_; }
    double prefactor() const { return k_; }

    // Copy with a different contact resistance (ohm*m), prefactor kept.
    TmdFet with_contact_resistance(double R_C) const;
    // Copy with an additional drain-side series resistance (ohm), prefactor kept.
    TmdFet with_drain_resistance(double R) const;

    double base_current(double V_GS, double V_DS, double dVth = 0.0) const;
    double drain_current(const FetBias& b, double dVth = 0.0) const;

private:
    double charge(double V, double vth) const;
    double charge_slope(double V, double vth) const;

    FetParams p_;
    double rs_ = 0.0;
    double rd_extra_ = 0.0;
    double k_ = 1.0;
};

double drain_current(const FetParams& p, const FetBias& b);

}  // namespace stepcim
