#include "stepcim/piezo.hpp"

#include <cmath>

#include "stepcim/errors.hpp"

namespace stepcim {

void PiezoParams::validate() const {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw GeometryError("piezo: kappa must satisfy 0 < kappa < 1 (nail not smaller than hammer)");
    if (!(s_E > 0.0)) throw DomainError("piezo: s_E must be positive");
    if (!(c_clamp > 0.0 && c_clamp <= 1.0)) throw DomainError("piezo: c_clamp must be in (0, 1]");
    if (!(eta_hn > 0.0)) throw DomainError("piezo: eta_hn must be positive");
    if (!(alpha_TMD > 0.0)) throw DomainError("piezo: alpha_TMD must be positive");
}

double kappa_from_geometry(double L_TMD, double W_TMD, double L_PE, double W_PE) {
    if (!(L_TMD > 0.0 && W_TMD > 0.0 && L_PE > 0.0 && W_PE > 0.0))
        throw GeometryError("kappa: all dimensions must be positive");
    const double k = (L_TMD * W_TMD) / (L_PE * W_PE);
    if (k >= 1.0) throw GeometryError("kappa >= 1: nail not smaller than hammer");
    return k;
}

double hn_amplification(double kappa, double eta_hn) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw GeometryError("hn_amplification: kappa out of (0, 1)");
    return eta_hn / kappa;
}

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

double stress_magnitude(double absE, const PiezoParams& pp) {
    if (pp.calib_gain > 0.0) return pp.calib_gain * absE;
    return pp.c_clamp * pp.d33 * absE / pp.s_E;
}

}  // namespace

StressResult transduce(int P_sign, double V_GB, const PiezoParams& pp, const FerroParams& fp) {
    if (P_sign != 1 && P_sign != -1) throw DomainError("transduce: P_sign must be +1 or -1");
    if (std::abs(V_GB) >= fp.coercive_voltage())
        throw PreconditionError("transduce: |V_GB| must stay below the coercive voltage");
    const double absE = std::abs(V_GB) / fp.t_PE;
    const int s = P_sign * sgn(V_GB);
    const double G = hn_amplification(pp.kappa, pp.eta_hn);
    StressResult r;
    r.S_PE = s * pp.d33 * absE;
    r.sigma_PE = s * stress_magnitude(absE, pp);
    r.sigma_TMD = G * r.sigma_PE;
    r.dE_G = pp.alpha_TMD * r.sigma_TMD;
    return r;
}

double displacement(double sigma_PE, double E, const PiezoParams& pp, const FerroParams& fp) {
    return pp.d33 * sigma_PE + kEps0 * fp.eps_r * E;
}

double solve_calib_gain(const PiezoParams& pp, const FerroParams& fp, double V_ref,
                        double target_dEg) {
    if (!(V_ref > 0.0)) throw DomainError("calibration: reference bias must be positive");
    if (V_ref >= fp.coercive_voltage())
        throw InfeasibleError(
            "calibration: sense bias reaches the coercive voltage, so no non-destructive "
            "transduction gain exists (binding constraint: V_R < E_C*t_PE)");
    const double G = hn_amplification(pp.kappa, pp.eta_hn);
    return target_dEg / (pp.alpha_TMD * G * (V_ref / fp.t_PE));
}

}  // namespace stepcim
