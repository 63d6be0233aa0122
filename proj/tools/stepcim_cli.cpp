#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "stepcim/calibrate.hpp"
#include "stepcim/config.hpp"
#include "stepcim/errors.hpp"
#include "stepcim/report.hpp"
#include "stepcim/svg.hpp"

namespace fs = std::filesystem;
using namespace stepcim;

namespace {

enum Exit { ok = 0, other = 1, usage = 2, config = 3, solver = 4, infeasible = 5 };

struct Options {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool svg = false;
    std::optional<int> iters;
    std::string suite;
    std::string org = "all";
    std::string cost;
    std::string input;
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << text;
}

class Runner {
public:
    Runner(std::string name, const Options& o) : name_(std::move(name)), o_(o) {
        cfg_ = load_config(o.config_path.empty() ? std::nullopt : std::optional(o.config_path));
        if (o.seed) cfg_.seed = *o.seed;
        if (o.iters) cfg_.variation.iters = *o.iters;
        if (!o.out.empty()) cfg_.output_dir = o.out;
        cfg_.resolve();
        fs::create_directories(cfg_.output_dir);
    }

    GlobalConfig& cfg() { return cfg_; }

    void emit(const Table& t, bool show) {
        const fs::path p = fs::path(cfg_.output_dir) / (name_ + ".csv");
        write_file(p, t.csv());
        if (show) std::cout << t.pretty();
        std::cout << "wrote " << p.string() << "\n";
    }

    void plot(const std::string& svg_text) {
        if (!o_.svg) return;
        const fs::path p = fs::path(cfg_.output_dir) / (name_ + ".svg");
        write_file(p, svg_text);
        std::cout << "wrote " << p.string() << "\n";
    }

    void finish() {
        write_resolved_config(cfg_, cfg_.output_dir);
        std::cout << "wrote " << (fs::path(cfg_.output_dir) / "resolved_config.json").string() << "\n";
    }

private:
    std::string name_;
    const Options& o_;
    GlobalConfig cfg_;
};

double cell(const Table& t, std::size_t r, std::size_t c) { return std::stod(t.rows[r][c]); }

void cmd_pe_loop(Runner& r) {
    const Table t = pe_loop_table(r.cfg().device.ferro);
    r.emit(t, false);
    svg::Series s{"P(E)", {}, {}};
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        s.x.push_back(cell(t, k, 0));
        s.y.push_back(cell(t, k, 1));
    }
    r.plot(svg::line_chart("P-E loop", "E (kV/cm)", "P (C/m^2)", {s}));
}

void cmd_strain_sweep(Runner& r) {
    const Table t = strain_sweep_table(r.cfg().device);
    r.emit(t, false);
    svg::Series p{"+P", {}, {}}, m{"-P", {}, {}};
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        svg::Series& s = t.rows[k][1] == "1" ? p : m;
        s.x.push_back(cell(t, k, 0));
        s.y.push_back(cell(t, k, 5));
    }
    r.plot(svg::line_chart("Bandgap change vs V_GB", "V_GB (V)", "dE_G (meV)", {p, m}));
}

void cmd_device_iv(Runner& r) {
    const Table t = device_iv_table(r.cfg().device);
    r.emit(t, false);
    std::vector<svg::Series> ss;
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        if (t.rows[k][0] != "transfer") continue;
        const std::string label = "dE_G " + t.rows[k][1] + " meV";
        if (ss.empty() || ss.back().label != label) ss.push_back({label, {}, {}});
        ss.back().x.push_back(cell(t, k, 2));
        ss.back().y.push_back(cell(t, k, 4));
    }
    r.plot(svg::line_chart("Transfer characteristics", "V_GS (V)", "I_DS (uA)", ss));
}

void cmd_cell_truth(Runner& r) {
    r.emit(cell_truth_table(r.cfg().device, r.cfg().cell), true);
}

void cmd_mac_sim(Runner& r, const std::string& input) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw ConfigError("cannot open mac input '" + input + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto cases = parse_mac_cases(ss.str());
    const ColumnModel col(PeFET(r.cfg().device), r.cfg().array);
    r.emit(mac_table(cases, col), true);
}

void cmd_sense_margin(Runner& r) {
    const ColumnModel col(PeFET(r.cfg().device), r.cfg().array);
    const auto rows = col.sense_margin_curve();
    r.emit(sense_margin_table(rows), true);
    svg::Series s{"SM", {}, {}};
    for (const auto& x : rows) {
        s.x.push_back(x.a);
        s.y.push_back(x.sm * 1e6);
    }
    r.plot(svg::line_chart("Sense margin", "expected output a", "SM (uA)", {s}));
}

void cmd_monte_carlo(Runner& r) {
    const ColumnModel col(PeFET(r.cfg().device), r.cfg().array);
    const McReport rep = col.monte_carlo(r.cfg().variation);
    r.emit(monte_carlo_table(rep), true);
    std::cout << fmt::format("total errors over {} levels x {} trials: {}\n",
                             rep.levels.size(), r.cfg().variation.iters, rep.total_errors);
    svg::Series s{"P(error)", {}, {}};
    for (const auto& l : rep.levels) {
        s.x.push_back(l.a);
        s.y.push_back(l.p_error());
    }
    r.plot(svg::line_chart("Sensing error probability", "expected output a", "P(error)", {s}));
}

void cmd_system_eval(Runner& r, const Options& o) {
    GlobalConfig& c = r.cfg();
    if (!o.cost.empty()) c.cost = load_cost(o.cost, c.cost);
    const Suite suite = o.suite.empty() ? default_suite() : load_suite(o.suite);
    std::vector<Organization> orgs = c.orgs();
    if (o.org != "all") {
        orgs = {orgs.front(), find_organization(orgs, o.org)};
        if (orgs[1].name == orgs[0].name) orgs.pop_back();
    }
    const ComparisonReport rep = run_benchmark(suite, orgs, c.cost);
    r.emit(system_table(rep), false);
    const Table summary = system_summary_table(rep);
    const fs::path sp = fs::path(c.output_dir) / "system-eval_summary.csv";
    write_file(sp, summary.csv());
    std::cout << summary.pretty() << "(speedups and energy reductions are geometric means over benchmarks)\n"
              << "wrote " << sp.string() << "\n";
    std::vector<std::string> cats;
    for (const auto& b : rep.rows) cats.push_back(b.name);
    std::vector<svg::Series> ss;
    for (std::size_t k = 1; k < orgs.size(); ++k) {
        svg::Series s{orgs[k].name, {}, {}};
        for (const auto& b : rep.rows) s.y.push_back(b.latency[k] / b.latency[0]);
        ss.push_back(s);
    }
    r.plot(svg::bar_chart("Speedup of the CiM design", "speedup (x)", cats, ss));
}

void cmd_calibrate(Runner& r) {
    const CalibrationTargets t;
    const CalibrationReport rep = calibrate(r.cfg(), t);
    r.emit(calibration_table(rep, t), true);
}

int run(int argc, char** argv) {
    CLI::App app{"Ternary compute-in-memory simulator: device, cell, array and system models"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "JSON configuration file (defaults when omitted)");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--seed", o.seed, "random seed");
    app.add_flag("--svg", o.svg, "also write an SVG plot");

    const std::vector<std::pair<const char*, const char*>> names = {
        {"pe-loop", "ferroelectric P-E hysteresis loop"},
        {"strain-sweep", "stress and bandgap change versus V_GB"},
        {"device-iv", "transfer and output characteristics"},
        {"cell-truth", "ternary scalar-product truth table"},
        {"mac-sim", "column MAC for vectors read from a file"},
        {"sense-margin", "sense margin versus expected output"},
        {"monte-carlo", "threshold-variation Monte Carlo of the MAC"},
        {"system-eval", "benchmark comparison against near-memory baselines"},
        {"calibrate", "fit the transduction, bandgap and driver constants"},
    };
    for (const auto& [n, d] : names) {
        CLI::App* s = app.add_subcommand(n, d);
        if (std::string(n) == "monte-carlo") s->add_option("--iters", o.iters, "trials per output level");
        if (std::string(n) == "system-eval") {
            s->add_option("--suite", o.suite, "benchmark suite file");
            s->add_option("--org", o.org, "baseline organization name or 'all'");
            s->add_option("--cost", o.cost, "cost model override file");
        }
        if (std::string(n) == "mac-sim") s->add_option("input", o.input, "vector file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        Runner r(sub, o);
        if (sub == "pe-loop") cmd_pe_loop(r);
        else if (sub == "strain-sweep") cmd_strain_sweep(r);
        else if (sub == "device-iv") cmd_device_iv(r);
        else if (sub == "cell-truth") cmd_cell_truth(r);
        else if (sub == "mac-sim") cmd_mac_sim(r, o.input);
        else if (sub == "sense-margin") cmd_sense_margin(r);
        else if (sub == "monte-carlo") cmd_monte_carlo(r);
        else if (sub == "system-eval") cmd_system_eval(r, o);
        else if (sub == "calibrate") cmd_calibrate(r);
        r.finish();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return Exit::config;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return Exit::solver;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return Exit::infeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::other;
    }
    return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
