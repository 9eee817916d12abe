// mmlink: blockage-aware mmWave link-selection toolkit.
//
// Subcommands:
//   run             throughput + delay decision for one scenario
//   sweep-blockage  throughput vs. blockage fraction over a nu sweep
//   region          delay-optimal decision region over (theta, blockage)
//   validate        Monte Carlo cross-check of the closed forms
//
// Every subcommand writes CSV files plus a manifest.json into --out. Output
// is deterministic: identical inputs (including --seed) give identical bytes.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmlink/analysis.hpp"
#include "mmlink/blockage.hpp"
#include "mmlink/channel.hpp"
#include "mmlink/delay.hpp"
#include "mmlink/rates.hpp"
#include "mmlink/scenario.hpp"
#include "mmlink/textio.hpp"

namespace fs = std::filesystem;
using namespace mmlink;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = "out";
    bool gain_both_ends = false;
    bool paper_literal_eq12 = false;
    bool paper_literal_eq15 = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt)
{
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file (JSON)")->required();
    cmd->add_option("--out", opt.out_dir, "Output directory (created if missing)");
    cmd->add_flag("--gain-both-ends", opt.gain_both_ends,
                  "Apply the main-lobe gain at both ends of mmWave links");
    cmd->add_flag("--paper-literal-eq12", opt.paper_literal_eq12,
                  "Use the uncorrected +log2(L) finite-blocklength term");
    cmd->add_flag("--paper-literal-eq15", opt.paper_literal_eq15,
                  "Drop the alignment overhead from the relay service rate");
}

ScenarioConfig load_with_overrides(const CommonOptions& opt)
{
    ScenarioConfig cfg = load_scenario(opt.scenario_path);
    if (opt.gain_both_ends) cfg.gain_both_ends = true;
    if (opt.paper_literal_eq12) cfg.eq12_paper_literal = true;
    if (opt.paper_literal_eq15) cfg.eq15_paper_literal = true;
    return cfg;
}

std::string fmt(double v) { return format_number(v); }

std::string fmt_opt(const std::optional<double>& v)
{
    return v ? format_number(*v) : "inf";
}

void write_manifest(const CommonOptions& opt, const std::string& command,
                    const ScenarioConfig& cfg, const std::vector<std::string>& outputs,
                    std::optional<std::uint64_t> seed, std::optional<std::uint64_t> slots)
{
    nlohmann::json m;
    m["command"] = command;
    m["scenario_path"] = opt.scenario_path;
    if (seed) m["seed"] = *seed;
    if (slots) m["slots"] = *slots;
    m["output_paths"] = outputs;
    m["tool_version"] = kToolVersion;
    m["config_echo"] = nlohmann::json::parse(scenario_to_json(cfg));

    std::ofstream out(fs::path(opt.out_dir) / "manifest.json", std::ios::binary);
    out << m.dump(2) << "\n";
}

// ---------------------------------------------------------------- run ------

int cmd_run(const CommonOptions& opt)
{
    const ScenarioConfig cfg = load_with_overrides(opt);
    fs::create_directories(opt.out_dir);

    const BlockageStats stats = blockage_stats(cfg.obstacles);
    const RateSet rates = rate_set(cfg);
    const double t_a = alignment_overhead_s(cfg.antenna);
    const DecisionOutcome dec = throughput_decision(rates, stats, t_a);

    {
        CsvWriter csv(fs::path(opt.out_dir) / "throughput.csv",
                      {"blockage_fraction", "mean_nonlos_s", "mean_los_s", "mean_slot_s",
                       "c_d_mu_x_bps", "c_d_m_y_bps", "c_rm_bps", "alignment_overhead_s",
                       "fallback_bits_per_slot", "relay_bits_per_slot", "fallback_bps",
                       "relay_bps", "margin_bits_per_slot", "decision"});
        const double fb = fallback_throughput(rates, stats);
        const double rl = relay_throughput_approx(rates.c_rm_bps, stats, t_a);
        csv.write_row({fmt(stats.blockage_fraction), fmt(stats.mean_nonlos_s),
                       fmt(stats.mean_los_s), fmt(stats.mean_slot_s), fmt(rates.c_d_mu_x_bps),
                       fmt(rates.c_d_m_y_bps), fmt(rates.c_rm_bps), fmt(t_a), fmt(fb), fmt(rl),
                       fmt(fb / stats.mean_slot_s), fmt(rl / stats.mean_slot_s),
                       fmt(dec.margin_bits_per_slot), choice_name(dec.choice)});
    }

    const DelayDecision dd = delay_decision(cfg);
    {
        const double g = cfg.traffic.offered_load_bps;
        CsvWriter csv(fs::path(opt.out_dir) / "delay.csv",
                      {"offered_load_bps", "service_rate_fallback_bps", "service_rate_relay_bps",
                       "utilization_fallback", "utilization_relay", "delay_fallback_s",
                       "delay_relay_s", "throughput_fallback_bps", "throughput_relay_bps",
                       "decision"});
        csv.write_row({fmt(g), fmt(dd.report.service_rate_fallback_bps),
                       fmt(dd.report.service_rate_relay_bps), fmt(dd.report.utilization_fallback),
                       fmt(dd.report.utilization_relay), fmt_opt(dd.report.delay_fallback_s),
                       fmt_opt(dd.report.delay_relay_s),
                       fmt(std::min(g, dd.report.service_rate_fallback_bps)),
                       fmt(std::min(g, dd.report.service_rate_relay_bps)),
                       delay_choice_name(dd.choice)});
    }

    write_manifest(opt, "run", cfg, {"throughput.csv", "delay.csv"}, std::nullopt, std::nullopt);
    return 0;
}

// ------------------------------------------------------- sweep-blockage ----

struct SweepOptions {
    std::string nu_range = "0.5:1.0:11";
    std::uint64_t slots = 20000;
    std::uint64_t seed = 1;
};

std::vector<double> parse_range(const std::string& text)
{
    double lo = 0, hi = 0;
    long steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 ||
        !(lo > 0) || !(hi >= lo)) {
        throw std::invalid_argument("bad range '" + text + "', expected min:max:steps");
    }
    std::vector<double> vals;
    vals.reserve(std::size_t(steps));
    if (steps == 1) {
        vals.push_back(lo);
        return vals;
    }
    for (long i = 0; i < steps; ++i) {
        vals.push_back(lo + (hi - lo) * double(i) / double(steps - 1));
    }
    return vals;
}

int cmd_sweep_blockage(const CommonOptions& opt, const SweepOptions& sweep)
{
    const ScenarioConfig cfg = load_with_overrides(opt);
    const std::vector<double> nus = parse_range(sweep.nu_range);
    fs::create_directories(opt.out_dir);

    const RateSet rates = rate_set(cfg);
    const double t_a = alignment_overhead_s(cfg.antenna);

    CsvWriter csv(fs::path(opt.out_dir) / "sweep.csv",
                  {"nu_per_s", "blockage_fraction", "mean_nonlos_s", "mean_los_s",
                   "fallback_bits_per_slot", "relay_bits_per_slot_approx",
                   "relay_bits_per_slot_mc", "relay_mc_half_width", "assumption1_satisfied",
                   "decision"});

    for (std::size_t i = 0; i < nus.size(); ++i) {
        ObstacleProcess proc{cfg.obstacles.lambda_per_s, nus[i]};
        const BlockageStats stats = blockage_stats(proc);
        const PeriodSamples samples = simulate_periods(proc, sweep.slots, sweep.seed + i);
        const ThroughputReport rep = throughput_report(rates, stats, samples, t_a);
        const DecisionOutcome dec = throughput_decision(rates, stats, t_a);
        csv.write_row({fmt(nus[i]), fmt(stats.blockage_fraction), fmt(stats.mean_nonlos_s),
                       fmt(stats.mean_los_s), fmt(rep.fallback_bits_per_slot),
                       fmt(rep.relay_bits_per_slot_approx), fmt(rep.relay_bits_per_slot_mc.mean),
                       fmt(rep.relay_bits_per_slot_mc.half_width),
                       rep.assumption1_satisfied ? "1" : "0", choice_name(dec.choice)});
    }

    write_manifest(opt, "sweep-blockage", cfg, {"sweep.csv"}, sweep.seed, sweep.slots);
    return 0;
}

// -------------------------------------------------------------- region -----

struct RegionOptions {
    std::vector<double> theta_deg;
    std::vector<double> blockage;
    double target_rate_bps = 2.0e9;
};

int cmd_region(const CommonOptions& opt, const RegionOptions& reg)
{
    const ScenarioConfig cfg = load_with_overrides(opt);

    std::vector<double> theta_rad;
    for (double deg : reg.theta_deg.empty() ? std::vector<double>{1, 5, 10, 20} : reg.theta_deg) {
        theta_rad.push_back(deg_to_rad(deg));
    }
    std::vector<double> fractions = reg.blockage;
    if (fractions.empty()) {
        for (int i = 1; i <= 19; ++i) fractions.push_back(0.05 * i);
    }

    const RegionGrid grid = decision_region(cfg, theta_rad, fractions, reg.target_rate_bps);
    fs::create_directories(opt.out_dir);

    CsvWriter csv(fs::path(opt.out_dir) / "region.csv",
                  {"theta_deg", "blockage_fraction", "choice", "delay_fallback_s",
                   "delay_relay_s", "service_rate_fallback_bps", "service_rate_relay_bps"});
    for (const RegionCell& cell : grid.cells) {
        csv.write_row({fmt(rad_to_deg(cell.theta_rad)), fmt(cell.blockage_fraction),
                       region_choice_name(cell.choice), fmt_opt(cell.report.delay_fallback_s),
                       fmt_opt(cell.report.delay_relay_s),
                       fmt(cell.report.service_rate_fallback_bps),
                       fmt(cell.report.service_rate_relay_bps)});
    }

    write_manifest(opt, "region", cfg, {"region.csv"}, std::nullopt, std::nullopt);
    return 0;
}

// ------------------------------------------------------------- validate ----

struct ValidateOptions {
    std::uint64_t slots = 100000;
    std::uint64_t seed = 1;
};

int cmd_validate(const CommonOptions& opt, const ValidateOptions& val)
{
    if (val.slots < 1000) {
        throw std::invalid_argument("validate: --slots must be >= 1000");
    }
    const ScenarioConfig cfg = load_with_overrides(opt);
    fs::create_directories(opt.out_dir);

    const BlockageStats stats = blockage_stats(cfg.obstacles);
    const PeriodSamples samples = simulate_periods(cfg.obstacles, val.slots, val.seed);
    const RateSet rates = rate_set(cfg);
    const double t_a = alignment_overhead_s(cfg.antenna);

    // Base tolerances hold at 1e5 slots and scale with 1/sqrt(slots).
    const double scale = std::sqrt(1.0e5 / double(val.slots));
    const double tol_mean = 0.02 * scale;
    const double tol_ratio = 0.005 * scale;

    const McEstimate mc = relay_throughput_mc(rates.c_rm_bps, samples, t_a);
    const double approx = relay_throughput_approx(rates.c_rm_bps, stats, t_a);

    struct Row {
        const char* name;
        double analytic;
        double sampled;
        double half_width;
        double tolerance;
    };
    const double z = 1.96;
    const std::size_t n = samples.n_slots;
    const Row rows[] = {
        {"mean_nonlos_s", stats.mean_nonlos_s, samples.mean_nonlos(),
         z * sample_std(samples.nonlos_s) / std::sqrt(double(n)), tol_mean},
        {"mean_los_s", stats.mean_los_s, samples.mean_los(),
         z * sample_std(samples.los_s) / std::sqrt(double(n)), tol_mean},
        {"busy_fraction", stats.blockage_fraction, samples.busy_fraction(), 0.0, tol_mean},
        {"mean_occupancy", cfg.obstacles.lambda_per_s / cfg.obstacles.nu_per_s,
         samples.mean_occupancy(), 0.0, tol_mean},
        {"relay_bits_per_slot", approx, mc.mean, mc.half_width, tol_ratio},
    };

    bool all_ok = true;
    CsvWriter csv(fs::path(opt.out_dir) / "validation.csv",
                  {"check", "analytic", "sampled", "rel_error", "half_width", "tolerance",
                   "pass"});
    for (const Row& r : rows) {
        const double rel = std::abs(r.sampled - r.analytic) / std::abs(r.analytic);
        const bool ok = rel <= r.tolerance;
        all_ok = all_ok && ok;
        csv.write_row({r.name, fmt(r.analytic), fmt(r.sampled), fmt(rel), fmt(r.half_width),
                       fmt(r.tolerance), ok ? "1" : "0"});
    }

    write_periods_csv(samples, fs::path(opt.out_dir) / "periods.csv");
    write_manifest(opt, "validate", cfg, {"validation.csv", "periods.csv"}, val.seed, val.slots);

    if (!all_ok) {
        std::cerr << "validate: at least one comparison exceeded its tolerance\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Blockage-aware mmWave relay/fallback link-selection toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Throughput and delay decision for one scenario");
    add_common(run, run_opt);

    CommonOptions sweep_opt;
    SweepOptions sweep_extra;
    CLI::App* sweep = app.add_subcommand(
        "sweep-blockage", "Throughput of both options across a departure-rate sweep");
    add_common(sweep, sweep_opt);
    sweep->add_option("--nu-range", sweep_extra.nu_range, "Departure rate sweep min:max:steps");
    sweep->add_option("--slots", sweep_extra.slots, "Simulated slots per sweep point");
    sweep->add_option("--seed", sweep_extra.seed, "RNG seed");

    CommonOptions region_opt;
    RegionOptions region_extra;
    CLI::App* region = app.add_subcommand(
        "region", "Delay-optimal decision region over (beamwidth, blockage fraction)");
    add_common(region, region_opt);
    region->add_option("--theta-list", region_extra.theta_deg, "Beamwidths in degrees")
        ->delimiter(',');
    region->add_option("--blockage-list", region_extra.blockage, "Blockage fractions in (0,1)")
        ->delimiter(',');
    region->add_option("--target-rate", region_extra.target_rate_bps, "Target data rate in bps");

    CommonOptions val_opt;
    ValidateOptions val_extra;
    CLI::App* validate = app.add_subcommand(
        "validate", "Monte Carlo validation of the blockage and throughput closed forms");
    add_common(validate, val_opt);
    validate->add_option("--slots", val_extra.slots, "Simulated slots (>= 1000)");
    validate->add_option("--seed", val_extra.seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (sweep->parsed()) return cmd_sweep_blockage(sweep_opt, sweep_extra);
        if (region->parsed()) return cmd_region(region_opt, region_extra);
        if (validate->parsed()) return cmd_validate(val_opt, val_extra);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
