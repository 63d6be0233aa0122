#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stepcim/calibrate.hpp"
#include "stepcim/config.hpp"
#include "stepcim/errors.hpp"
#include "stepcim/report.hpp"

using namespace stepcim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("no file means defaults") {
    const GlobalConfig c = load_config(std::nullopt);
    CHECK(c.device.V_DD == 0.8);
    CHECK(c.device.V_R == 0.4);
    CHECK(c.device.ferro.P_R == 0.32);
    CHECK(c.device.ferro.E_C == 9e5);
    CHECK(c.device.fet.E_0 == 1.5);
    CHECK(c.device.piezo.kappa == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK(c.array.N_R == 256);
    CHECK(c.variation.sigma_vth == 0.01);
    CHECK(c.orgs().size() == 5);
}

TEST_CASE("schema version is required") {
    CHECK(error_of("{}").find("schema_version") != std::string::npos);
    CHECK(error_of(R"({"schema_version": "2"})").find("not supported") != std::string::npos);
    CHECK_NOTHROW(parse_config(R"({"schema_version": "1"})"));
}

TEST_CASE("thinner ferroelectric lowers the coercive voltage") {
    const GlobalConfig c = parse_config(R"({"schema_version": "1", "device": {"ferro": {"t_PE": 300e-9}}})");
    CHECK(c.device.ferro.coercive_voltage() == doctest::Approx(0.27).epsilon(1e-12));
}

TEST_CASE("unknown keys are named with their path") {
    const std::string e = error_of(R"({"schema_version": "1", "device": {"fet": {"Iref": 1}}})");
    CHECK(e.find("device.fet.Iref") != std::string::npos);
    CHECK(error_of(R"({"schema_version": "1", "colour": 1})").find("colour") != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
    const std::string e = error_of("{\n  \"schema_version\": \"1\",\n  \"device\": {\n    \"V_DD\": ,\n  }\n}");
    CHECK(e.find("line 4") != std::string::npos);
}

TEST_CASE("type errors name the field") {
    const std::string e = error_of(R"({"schema_version": "1", "array": {"N_V": "sixteen"}})");
    CHECK(e.find("array.N_V") != std::string::npos);
}

TEST_CASE("invariant violations name the rule") {
    const std::string k = error_of(R"({"schema_version": "1", "device": {"geometry": {"L_TMD": 1e-6}}})");
    CHECK(k.find("invariant violated") != std::string::npos);
    CHECK(k.find("kappa") != std::string::npos);
    const std::string p = error_of(R"({"schema_version": "1", "device": {"ferro": {"P_R": 0.4}}})");
    CHECK(p.find("P_R") != std::string::npos);
    CHECK_THROWS_AS(parse_config(R"({"schema_version": "1", "array": {"blocks": 3}})"), ConfigError);
}

TEST_CASE("dumped configuration round-trips") {
    GlobalConfig c = parse_config(R"({"schema_version": "1", "seed": 9, "device": {"fet": {"I_ref": 2.5e-6}},
                                      "array": {"R_drv": 1234.5}})");
    const std::string once = dump_config(c);
    const GlobalConfig back = parse_config(once);
    CHECK(dump_config(back) == once);
    CHECK(back.seed == 9);
    CHECK(back.variation.seed == 9);
    CHECK(back.device.fet.I_ref == 2.5e-6);
    CHECK(back.array.R_drv == 1234.5);
}

TEST_CASE("resolved config snapshot is written") {
    const auto dir = std::filesystem::temp_directory_path() / "stepcim_cfg_test";
    std::filesystem::remove_all(dir);
    GlobalConfig c = load_config(std::nullopt);
    write_resolved_config(c, dir.string());
    const GlobalConfig back = load_config((dir / "resolved_config.json").string());
    CHECK(dump_config(back) == dump_config(c));
    std::filesystem::remove_all(dir);
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(load_config(std::string("/nonexistent/stepcim.json")), ConfigError);
}

TEST_CASE("shipped suite matches the built-in suite") {
    const std::string path = std::string(STEPCIM_DATA_DIR) + "/suite_default.json";
    CHECK(slurp(path) == dump_suite(default_suite()));
    const Suite s = load_suite(path);
    CHECK(s.benchmarks.size() == 5);
    CHECK(dump_suite(s) == dump_suite(default_suite()));
}

TEST_CASE("suite parsing rejects bad layers") {
    CHECK_THROWS_AS(parse_suite(R"({"schema_version": "1", "batch": 1, "benchmarks": [
        {"name": "x", "layers": [{"name": "l", "kind": "pool", "K": 1, "N": 1}]}]})"), ConfigError);
    CHECK_THROWS_AS(parse_suite(R"({"schema_version": "1", "batch": 1, "benchmarks": [
        {"name": "x", "layers": [{"name": "l", "kind": "fc", "K": 1, "N": 1, "stride": 2}]}]})"), ConfigError);
}

TEST_CASE("organization overrides") {
    const GlobalConfig c = parse_config(R"({"schema_version": "1", "system": {"organizations": [
        {"name": "step_cim", "tech": "step_cim"},
        {"name": "sram_small", "tech": "sram_nm", "n_arrays": 8, "rows_per_access": 1, "pcu": 0}]}})");
    const auto orgs = c.orgs();
    REQUIRE(orgs.size() == 2);
    CHECK(orgs[1].tech == Tech::sram_nm);
    CHECK(orgs[1].n_arrays == 8);
}

TEST_CASE("calibration reproduces the shipped defaults") {
    GlobalConfig c = load_config(std::nullopt);
    const GlobalConfig before = c;
    const CalibrationReport r = calibrate(c);
    CHECK(r.dE_G == doctest::Approx(0.0484).epsilon(1e-9));
    CHECK(std::abs(r.dE_G - 0.0484) < 1e-6);
    CHECK(r.lrs_gain == doctest::Approx(2.3).epsilon(1e-9));
    CHECK(r.hrs_loss == doctest::Approx(2.2).epsilon(1e-9));
    CHECK(r.min_sm > 1e-6);
    CHECK(r.min_sm == doctest::Approx(1.2e-6).epsilon(1e-6));
    CHECK(c.array.R_drv == doctest::Approx(before.array.R_drv).epsilon(1e-9));
    CHECK(c.device.piezo.calib_gain == doctest::Approx(before.device.piezo.calib_gain).epsilon(1e-9));
    CHECK(c.device.fet.E_s_pos == doctest::Approx(before.device.fet.E_s_pos).epsilon(1e-9));
    CHECK(c.device.fet.E_s_neg == doctest::Approx(before.device.fet.E_s_neg).epsilon(1e-9));
}

TEST_CASE("calibration is idempotent") {
    GlobalConfig c = load_config(std::nullopt);
    calibrate(c);
    const GlobalConfig once = c;
    calibrate(c);
    CHECK(c.array.R_drv == doctest::Approx(once.array.R_drv).epsilon(1e-9));
    CHECK(c.device.piezo.calib_gain == doctest::Approx(once.device.piezo.calib_gain).epsilon(1e-9));
}

TEST_CASE("calibration after a geometry change refits the gain") {
    GlobalConfig c = parse_config(R"({"schema_version": "1", "device": {"geometry": {"W_PE": 90e-9}}})");
    const CalibrationReport r = calibrate(c);
    CHECK(r.dE_G == doctest::Approx(0.0484).epsilon(1e-9));
    CHECK(r.min_sm > 1e-6);
}

TEST_CASE("halving the reference current is infeasible") {
    GlobalConfig c = parse_config(R"({"schema_version": "1", "device": {"fet": {"I_ref": 1e-6}}})");
    DeviceParams dp = c.device;
    ArrayConfig ideal = c.array;
    ideal.R_drv = 0.0;
    // Oracle: the ideal-driver margin already falls below the floor.
    CHECK(min_sense_margin(dp, ideal) < 1e-6);
    CHECK_THROWS_AS(calibrate(c), InfeasibleError);
}

TEST_CASE("calibration needs the sense bias below the coercive voltage") {
    GlobalConfig c = parse_config(R"({"schema_version": "1", "device": {"ferro": {"t_PE": 300e-9}}})");
    CHECK_THROWS_AS(calibrate(c), InfeasibleError);
}

TEST_CASE("report tables are stable") {
    const GlobalConfig c = load_config(std::nullopt);
    const Table t = cell_truth_table(c.device, c.cell);
    REQUIRE(t.rows.size() == 9);
    CHECK(t.csv().substr(0, t.csv().find('\n')) == "w,i,I_RBL1_uA,I_RBL2_uA,o");
    CHECK(pe_loop_table(c.device.ferro).header.size() == 3);
    CHECK(strain_sweep_table(c.device).header[5] == "dE_G_meV");
    const auto cases = parse_mac_cases("# c\n1,0,1,1\n\n-1,-1\n");
    REQUIRE(cases.size() == 2);
    CHECK(cases[0].w == std::vector<int>{1, 0});
    CHECK(cases[0].x == std::vector<int>{1, 1});
    CHECK_THROWS_AS(parse_mac_cases("1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_mac_cases("1,1,1\n"), ConfigError);
}
