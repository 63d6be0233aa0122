#include "stepcim/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "stepcim/errors.hpp"

namespace stepcim {

namespace {

std::string num(double v, int prec = 6) { return fmt::format("{:.{}g}", v, prec); }
std::string fixed(double v, int prec) {
    std::string s = fmt::format("{:.{}f}", v, prec);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

}  // namespace

std::string Table::csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

std::string Table::pretty() const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
    for (const auto& r : rows)
        for (std::size_t k = 0; k < r.size() && k < width.size(); ++k)
            width[k] = std::max(width[k], r[k].size());
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k)
            out += fmt::format("{:<{}}{}", cells[k], width[k], k + 1 < cells.size() ? "  " : "");
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

Table pe_loop_table(const FerroParams& fp, int n) {
    Table t{{"E_kV_per_cm", "P_C_per_m2", "branch"}, {}};
    const double Emax = 3.0 * fp.E_C;
    FerroState s = FerroState::remnant(-1, fp);
    auto emit = [&](double E) {
        polarization_static(s, fp, E);
        t.rows.push_back({fixed(E / 1e5, 4), fixed(s.P, 6), to_string(s.branch)});
    };
    for (int k = 0; k <= n; ++k) emit(-Emax + 2.0 * Emax * k / n);
    for (int k = 1; k <= n; ++k) emit(Emax - 2.0 * Emax * k / n);
    return t;
}

Table strain_sweep_table(const DeviceParams& dp, double step) {
    Table t{{"V_GB_V", "P_sign", "S_PE", "sigma_PE_MPa", "sigma_TMD_MPa", "dE_G_meV"}, {}};
    const double vc = dp.ferro.coercive_voltage();
    const int n = int(std::floor(vc / step - 1e-9));
    for (int p : {+1, -1})
        for (int k = -n; k <= n; ++k) {
            const double v = k * step;
            if (std::abs(v) >= vc) continue;
            const StressResult r = transduce(p, v, dp.piezo, dp.ferro);
            t.rows.push_back({fixed(v, 3), std::to_string(p), num(r.S_PE), fixed(r.sigma_PE / 1e6, 4),
                              fixed(r.sigma_TMD / 1e6, 4), fixed(r.dE_G * 1e3, 4)});
        }
    return t;
}

Table device_iv_table(const DeviceParams& dp, int points) {
    Table t{{"curve", "dE_G_meV", "V_GS_V", "V_DS_V", "I_DS_uA"}, {}};
    const TmdFet fet(dp.fet);
    const double dE = transduce(+1, dp.V_R, dp.piezo, dp.ferro).dE_G;
    for (double d : {-dE, 0.0, dE}) {
        for (int k = 0; k < points; ++k) {
            const double vgs = dp.V_DD * k / (points - 1);
            const double i = fet.drain_current({vgs, dp.V_DD, d});
            t.rows.push_back({"transfer", fixed(d * 1e3, 1), fixed(vgs, 3), fixed(dp.V_DD, 3), num(i * 1e6)});
        }
        for (int k = 0; k < points; ++k) {
            const double vds = dp.V_DD * k / (points - 1);
            const double i = fet.drain_current({dp.V_GS_sense, vds, d});
            t.rows.push_back({"output", fixed(d * 1e3, 1), fixed(dp.V_GS_sense, 3), fixed(vds, 3), num(i * 1e6)});
        }
    }
    return t;
}

Table cell_truth_table(const DeviceParams& dp, const CellParams& cp) {
    Table t{{"w", "i", "I_RBL1_uA", "I_RBL2_uA", "o"}, {}};
    const PeFET dev(dp);
    for (int w : {-1, 0, 1})
        for (int i : {-1, 0, 1}) {
            CellState s = CellState::from_weight(w, dp.ferro);
            const ComputeResult r = scalar_product(s, encode_input(i, dp.V_DD), dev, cp);
            t.rows.push_back({std::to_string(w), std::to_string(i), fixed(r.i_rbl1 * 1e6, 4),
                              fixed(r.i_rbl2 * 1e6, 4), std::to_string(r.o)});
        }
    return t;
}

std::vector<MacCase> parse_mac_cases(const std::string& text) {
    std::vector<MacCase> cases;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
                   line.end());
        if (line.empty() || line[0] == '#') continue;
        std::vector<int> v;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell != "-1" && cell != "0" && cell != "1" && cell != "+1")
                throw ConfigError(fmt::format("mac input line {}: '{}' is not -1, 0 or 1", lineno, cell));
            v.push_back(std::stoi(cell));
        }
        if (v.size() % 2 != 0)
            throw ConfigError(fmt::format("mac input line {}: expected weights then inputs (even count)", lineno));
        const auto half = static_cast<std::ptrdiff_t>(v.size() / 2);
        cases.push_back({{v.begin(), v.begin() + half}, {v.begin() + half, v.end()}});
    }
    return cases;
}

Table mac_table(const std::vector<MacCase>& cases, const ColumnModel& col) {
    Table t{{"row", "o", "o_ideal", "s_n", "a", "I_RBL1_uA", "I_RBL2_uA", "V_RBL1_V", "V_RBL2_V"}, {}};
    int k = 0;
    for (const auto& c : cases) {
        const MacResult m = col.mac(c.w, c.x);
        t.rows.push_back({std::to_string(++k), std::to_string(m.o), std::to_string(m.o_ideal),
                          std::to_string(m.s_n), std::to_string(m.a), fixed(m.i_rbl1 * 1e6, 4),
                          fixed(m.i_rbl2 * 1e6, 4), fixed(m.v_rbl1, 5), fixed(m.v_rbl2, 5)});
    }
    return t;
}

Table sense_margin_table(const std::vector<SenseMarginRow>& rows) {
    Table t{{"a", "SM_uA", "I_minload_1_uA", "I_minload_2_uA", "I_maxload_1_uA", "I_maxload_2_uA"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.a), fixed(r.sm * 1e6, 5), fixed(r.min1 * 1e6, 4),
                          fixed(r.min2 * 1e6, 4), fixed(r.max1 * 1e6, 4), fixed(r.max2 * 1e6, 4)});
    return t;
}

Table monte_carlo_table(const McReport& rep) {
    Table t{{"a", "p_error", "n_plus1", "n_minus1"}, {}};
    for (const auto& l : rep.levels)
        t.rows.push_back({std::to_string(l.a), fixed(l.p_error(), 6), std::to_string(l.n_plus1),
                          std::to_string(l.n_minus1)});
    return t;
}

Table system_table(const ComparisonReport& rep) {
    Table t{{"benchmark", "org", "latency_s", "energy_J", "speedup", "energy_reduction"}, {}};
    for (const auto& b : rep.rows)
        for (std::size_t k = 0; k < rep.org_names.size(); ++k)
            t.rows.push_back({b.name, rep.org_names[k], num(b.latency[k]), num(b.energy[k]),
                              fixed(b.latency[k] / b.latency[0], 4), fixed(b.energy[k] / b.energy[0], 4)});
    return t;
}

Table system_summary_table(const ComparisonReport& rep) {
    Table t{{"metric", "value"}, {}};
    for (std::size_t k = 1; k < rep.org_names.size(); ++k) {
        t.rows.push_back({"geomean_speedup_vs_" + rep.org_names[k], fixed(rep.speedup[k], 4)});
        t.rows.push_back({"geomean_energy_reduction_vs_" + rep.org_names[k], fixed(rep.energy_ratio[k], 4)});
    }
    t.rows.push_back({"TOPS_per_W", fixed(rep.tops_per_w, 2)});
    t.rows.push_back({"TOPS_per_mm2", fixed(rep.tops_per_mm2, 2)});
    for (const auto& p : reference_points()) {
        t.rows.push_back({fmt::format("reference_TOPS_per_W[{} {}]", p.name, p.tech), num(p.tops_w)});
        t.rows.push_back({fmt::format("reference_TOPS_per_mm2[{} {}]", p.name, p.tech), num(p.tops_mm2)});
    }
    return t;
}

Table calibration_table(const CalibrationReport& r, const CalibrationTargets& t) {
    Table out{{"quantity", "value", "target"}, {}};
    out.rows = {
        {"calib_gain_Pa_per_V_per_m", num(r.calib_gain, 15), ""},
        {"E_s_pos_eV", num(r.E_s_pos, 15), ""},
        {"E_s_neg_eV", num(r.E_s_neg, 15), ""},
        {"R_drv_ohm", num(r.R_drv, 15), ""},
        {"dE_G_meV", num(r.dE_G * 1e3, 10), num(t.dE_G * 1e3)},
        {"I_LRS_over_I_ref", num(r.lrs_gain, 10), num(t.lrs_gain)},
        {"I_ref_over_I_HRS", num(r.hrs_loss, 10), num(t.hrs_loss)},
        {"min_sense_margin_uA", num(r.min_sm * 1e6, 10), num(t.sm_target * 1e6)},
        {"ideal_driver_sense_margin_uA", num(r.sm_ideal * 1e6, 10), ""},
    };
    return out;
}

}  // namespace stepcim
