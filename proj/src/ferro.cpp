#include "stepcim/ferro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stepcim/errors.hpp"

namespace stepcim {

void FerroParams::validate() const {
    if (!(P_S > 0.0)) throw DomainError("ferro: P_S must be positive");
    if (!(P_R > 0.0 && P_R < P_S)) throw DomainError("ferro: requires 0 < P_R < P_S");
    if (!(E_C > 0.0)) throw DomainError("ferro: E_C must be positive");
    if (!(t_PE > 0.0)) throw DomainError("ferro: t_PE must be positive");
    if (!(A_PE > 0.0)) throw DomainError("ferro: A_PE must be positive");
    if (!(tau_PE > 0.0)) throw DomainError("ferro: tau_PE must be positive");
    if (!(eps_r > 0.0)) throw DomainError("ferro: eps_r must be positive");
    if (alpha < 0.0) throw DomainError("ferro: alpha must be non-negative");
}

const char* to_string(Branch b) {
    return b == Branch::ascending ? "ascending" : "descending";
}

FerroState FerroState::remnant(int p_sign, const FerroParams& fp) {
    FerroState s;
    s.branch = branch_for(p_sign);
    s.E_applied = 0.0;
    s.P = branch_polarization(s.branch, fp, 0.0);
    return s;
}

double delta_shape(const FerroParams& fp) {
    if (!(fp.P_R > 0.0)) throw DomainError("delta_shape: P_R must be positive (degenerate loop)");
    if (!(fp.P_R < fp.P_S)) throw DomainError("delta_shape: P_R must be below P_S");
    return fp.alpha_or_ec() / std::log((fp.P_S + fp.P_R) / (fp.P_S - fp.P_R));
}

namespace {

double shifted(Branch b, const FerroParams& fp, double E) {
    return b == Branch::ascending ? E - fp.E_C : E + fp.E_C;
}

}  // namespace

double branch_polarization(Branch b, const FerroParams& fp, double E) {
    const double d = delta_shape(fp);
    return fp.P_S * std::tanh(shifted(b, fp, E) / (2.0 * d)) + kEps0 * fp.eps_r * E;
}

double branch_slope(Branch b, const FerroParams& fp, double E) {
    const double d = delta_shape(fp);
    const double c = std::cosh(shifted(b, fp, E) / (2.0 * d));
    return fp.P_S / (2.0 * d * c * c) + kEps0 * fp.eps_r;
}

double polarization_static(FerroState& st, const FerroParams& fp, double E) {
    if (st.branch == Branch::ascending && E >= fp.E_C)
        st.branch = Branch::descending;
    else if (st.branch == Branch::descending && E <= -fp.E_C)
        st.branch = Branch::ascending;
    st.E_applied = E;
    st.P = branch_polarization(st.branch, fp, E);
    return st.P;
}

double ferro_capacitance(const FerroState& st, const FerroParams& fp, double E) {
    return fp.A_PE / fp.t_PE * branch_slope(st.branch, fp, E);
}

TransientResult transient_write(const FerroState& start, const FerroParams& fp,
                                std::span<const double> v_GB, double dt) {
    if (!(dt > 0.0) || dt > fp.tau_PE / 20.0 * (1.0 + 1e-12))
        throw ResolutionError("transient_write: dt must be in (0, tau_PE/20], got " +
                              std::to_string(dt));
    TransientResult r;
    r.final_state = start;
    r.trajectory.reserve(v_GB.size());
    const double decay = -std::expm1(-dt / fp.tau_PE);
    double E = start.E_applied;
    FerroState& st = r.final_state;
    for (std::size_t k = 0; k < v_GB.size(); ++k) {
        const double v = v_GB[k];
        if (!std::isfinite(v)) throw DomainError("transient_write: non-finite waveform sample");
        E += (v / fp.t_PE - E) * decay;
        const Branch before = st.branch;
        polarization_static(st, fp, E);
        if (st.branch != before) ++r.branch_flips;
        r.trajectory.push_back({dt * double(k + 1), v, E, st.P, st.branch});
    }
    return r;
}

TransientResult pulse(const FerroState& start, const FerroParams& fp, double v, double duration,
                      double relax, double dt) {
    if (dt <= 0.0) dt = fp.tau_PE / 100.0;
    const auto n_on = static_cast<std::size_t>(std::llround(duration / dt));
    const auto n_off = static_cast<std::size_t>(std::llround(relax / dt));
    std::vector<double> w(n_on + n_off, 0.0);
    std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n_on), v);
    return transient_write(start, fp, w, dt);
}

}  // namespace stepcim
