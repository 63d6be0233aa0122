#include "stepcim/tmdfet.hpp"

#include <algorithm>
#include <cmath>

#include "stepcim/errors.hpp"

namespace stepcim {

void FetParams::validate() const {
    if (!(E_0 > 0.0)) throw DomainError("tmdfet: E_0 must be positive");
    if (!(n_ss >= 1.0)) throw DomainError("tmdfet: n_ss must be >= 1");
    if (!(I_ref > 0.0)) throw DomainError("tmdfet: I_ref must be positive");
    if (!(v_sat_knee > 0.0)) throw DomainError("tmdfet: v_sat_knee must be positive");
    if (!(R_C >= 0.0)) throw DomainError("tmdfet: R_C must be non-negative");
    if (!(W > 0.0)) throw DomainError("tmdfet: W must be positive");
    if (!(E_s_pos > 0.0 && E_s_neg > 0.0)) throw DomainError("tmdfet: bandgap scales must be positive");
    if (!(V_GS_ref > 0.0 && V_DS_ref > 0.0)) throw DomainError("tmdfet: reference bias must be positive");
    if (!(leakage >= 0.0)) throw DomainError("tmdfet: leakage must be non-negative");
}

double bandgap(const FetParams& p, double dE_G) {
    if (std::abs(dE_G) >= p.E_0) throw DomainError("bandgap: |dE_G| >= E_0 gives an unphysical gap");
    return p.E_0 - dE_G;
}

double bandgap_multiplier(const FetParams& p, double dE_G) {
    return std::exp(dE_G / (dE_G >= 0.0 ? p.E_s_pos : p.E_s_neg));
}

namespace {

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }
double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TmdFet::TmdFet(const FetParams& p) : p_(p) {
    p_.validate();
    rs_ = 2.0 * p_.R_C / p_.W;
    const double I = p_.I_ref;
    const double q = charge(p_.V_GS_ref - I * rs_ / 2.0, p_.V_TH);
    const double t = std::tanh((p_.V_DS_ref - I * rs_) / p_.v_sat_knee);
    if (!(q > 0.0 && t > 0.0))
        throw InfeasibleError("tmdfet: I_ref cannot flow at the reference bias through the contact resistance");
    k_ = I / (q * t);
}

TmdFet TmdFet::with_contact_resistance(double R_C) const {
    TmdFet f = *this;
    f.p_.R_C = R_C;
    f.rs_ = 2.0 * R_C / p_.W;
    return f;
}

TmdFet TmdFet::with_drain_resistance(double R) const {
    TmdFet f = *this;
    f.rd_extra_ = R;
    return f;
}

double TmdFet::charge(double V, double vth) const {
    if (V <= 0.0) return 0.0;
    const double nv = p_.n_ss * kThermalVoltage;
    return nv * (softplus((V - vth) / nv) - softplus(-vth / nv));
}

double TmdFet::charge_slope(double V, double vth) const {
    if (V <= 0.0) return 0.0;
    return logistic((V - vth) / (p_.n_ss * kThermalVoltage));
}

double TmdFet::base_current(double V_GS, double V_DS, double dVth) const {
    if (V_DS < 0.0) throw BiasError("tmdfet: negative V_DS is not supported in sensing");
    if (V_GS <= 0.0 || V_DS == 0.0) return 0.0;
    const double vth = p_.V_TH + dVth;
    const double rsrc = rs_ / 2.0;
    const double rtot = rs_ + rd_extra_;
    const double knee = p_.v_sat_knee;
    auto f = [&](double I, double* df) {
        const double vg = V_GS - I * rsrc;
        const double x = (V_DS - I * rtot) / knee;
        const double q = charge(vg, vth);
        const double t = std::tanh(x);
        if (df) {
            const double c = std::cosh(x);
            *df = 1.0 + k_ * (charge_slope(vg, vth) * rsrc * t + q * rtot / (knee * c * c));
        }
        return I - k_ * q * t;
    };
    double lo = 0.0;
    double hi = k_ * charge(V_GS, vth) * std::tanh(V_DS / knee);
    if (hi <= 0.0) return 0.0;
    if (rtot == 0.0) return hi + p_.leakage * std::tanh(V_DS / knee);
    double I = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double df = 0.0;
        const double r = f(I, &df);
        if (r > 0.0) hi = I; else lo = I;
        if (std::abs(r) <= 1e-18 + 1e-15 * std::abs(I) || hi - lo <= 1e-16 * hi) break;
        double next = I - r / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        I = next;
    }
    return I + p_.leakage * std::tanh(V_DS / knee);
}

double TmdFet::drain_current(const FetBias& b, double dVth) const {
    return base_current(b.V_GS, b.V_DS, dVth) * bandgap_multiplier(p_, b.dE_G);
}

double drain_current(const FetParams& p, const FetBias& b) {
    return TmdFet(p).drain_current(b);
}

}  // namespace stepcim
