#include "stepcim/device.hpp"

#include <utility>

#include "stepcim/errors.hpp"

namespace stepcim {

void DeviceParams::resolve() {
    ferro.A_PE = geom.L_PE * geom.W_PE;
    piezo.kappa = kappa_from_geometry(geom.L_TMD, geom.W_TMD, geom.L_PE, geom.W_PE);
    fet.W = geom.W_TMD;
    validate();
}

void DeviceParams::validate() const {
    ferro.validate();
    piezo.validate();
    fet.validate();
    if (!(V_DD > 0.0)) throw DomainError("device: V_DD must be positive");
    if (!(V_R > 0.0 && V_R <= V_DD)) throw DomainError("device: V_R must be in (0, V_DD]");
    if (V_DD <= ferro.coercive_voltage())
        throw PreconditionError("device: V_DD must exceed the coercive voltage to write");
    if (!(V_GS_sense > 0.0)) throw DomainError("device: V_GS_sense must be positive");
    if (!(R_access >= 0.0)) throw DomainError("device: R_access must be non-negative");
}

namespace {

TmdFet make_fet(const DeviceParams& p) {
    TmdFet f(p.fet);
    return p.finite_access ? f.with_drain_resistance(p.R_access) : f;
}

}  // namespace

PeFET::PeFET(DeviceParams p) : p_(std::move(p)), fet_(make_fet(p_)) { p_.validate(); }

double PeFET::sense_dEg(int p_sign, double v_GB) const {
    return transduce(p_sign, v_GB, p_.piezo, p_.ferro).dE_G;
}

double PeFET::current_for_dEg(double dE_G, double v_DS, double dVth) const {
    return fet_.drain_current({p_.V_GS_sense, v_DS, dE_G}, dVth);
}

double PeFET::sense_current(int p_sign, double v_GB, double v_DS, double dVth) const {
    return current_for_dEg(sense_dEg(p_sign, v_GB), v_DS, dVth);
}

}  // namespace stepcim
