#pragma once

#include <string>
#include <vector>

#include "stepcim/calibrate.hpp"
#include "stepcim/config.hpp"

namespace stepcim {

// Each table is a header row plus data rows, formatted with a fixed
// decimal point independent of the process locale.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string csv() const;
    std::string pretty() const;
};

Table pe_loop_table(const FerroParams& fp, int points_per_leg = 200);
Table strain_sweep_table(const DeviceParams& dp, double v_step = 0.02);
Table device_iv_table(const DeviceParams& dp, int points = 41);
Table cell_truth_table(const DeviceParams& dp, const CellParams& cp = {});

struct MacCase {
    std::vector<int> w;
    std::vector<int> x;
};
std::vector<MacCase> parse_mac_cases(const std::string& text);
Table mac_table(const std::vector<MacCase>& cases, const ColumnModel& col);

Table sense_margin_table(const std::vector<SenseMarginRow>& rows);
Table monte_carlo_table(const McReport& rep);
Table system_table(const ComparisonReport& rep);
Table system_summary_table(const ComparisonReport& rep);
Table calibration_table(const CalibrationReport& r, const CalibrationTargets& t);

}  // namespace stepcim
