#pragma once

#include <span>
#include <vector>

namespace stepcim {

inline constexpr double kEps0 = 8.8541878128e-12;

struct FerroParams {
    double P_S = 0.35;       // C/m^2
    double P_R = 0.32;       // C/m^2
    double E_C = 9.0e5;      // V/m (9 kV/cm)
    double eps_r = 4000.0;
    double t_PE = 600e-9;    // m
    double A_PE = 100e-9 * 180e-9;  // m^2
    double tau_PE = 1.8e-9;  // s
    // Field scale in the loop-width expression; zero selects E_C.
    double alpha = 0.0;

    void validate() const;
    double coercive_voltage() const { return E_C * t_PE; }
    double alpha_or_ec() const { return alpha > 0.0 ? alpha : E_C; }
};

// ascending holds -P (P(0) = -P_R), descending holds +P.
enum class Branch { ascending, descending };

inline int polarity(Branch b) { return b == Branch::descending ? +1 : -1; }
inline Branch branch_for(int p_sign) { return p_sign > 0 ? Branch::descending : Branch::ascending; }
const char* to_string(Branch b);

struct FerroState {
    double P = 0.0;
    Branch branch = Branch::ascending;
    double E_applied = 0.0;

    // Remnant state of the given polarity at zero field.
    static FerroState remnant(int p_sign, const FerroParams& fp);
};

double delta_shape(const FerroParams& fp);

// Pure branch evaluation, no state update.
double branch_polarization(Branch b, const FerroParams& fp, double E);
double branch_slope(Branch b, const FerroParams& fp, double E);

// Applies the saturated-loop switching rule for field E, then evaluates P.
double polarization_static(FerroState& st, const FerroParams& fp, double E);

double ferro_capacitance(const FerroState& st, const FerroParams& fp, double E);

struct FerroSample {
    double t = 0.0;
    double v_GB = 0.0;
    double E = 0.0;
    double P = 0.0;
    Branch branch = Branch::ascending;
};

struct TransientResult {
    FerroState final_state;
    std::vector<FerroSample> trajectory;
    int branch_flips = 0;
};

// v_GB holds one value per step of length dt; the internal field lags it with tau_PE.
TransientResult transient_write(const FerroState& start, const FerroParams& fp,
                                std::span<const double> v_GB, double dt);

// Convenience: hold v for duration, then relax at 0 V for relax time.
TransientResult pulse(const FerroState& start, const FerroParams& fp, double v, double duration,
                      double relax, double dt = 0.0);

}  // namespace stepcim
