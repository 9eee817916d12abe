#include <doctest.h>

#include <filesystem>

#include "mmlink/blockage.hpp"
#include "mmlink/scenario.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace mmlink;
using testutil::CsvTable;
using testutil::parse_csv;
using testutil::read_file;
using testutil::run_cli;
using testutil::TempDir;
using testutil::write_file;

namespace {

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

fs::path make_scenario(const TempDir& tmp, const std::string& name, const std::string& body)
{
    const fs::path path = tmp.path() / name;
    write_file(path, body);
    return path;
}

}  // namespace

TEST_CASE("run: reference scenario picks the relay under heavy blockage")
{
    TempDir tmp("cli_run");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("run --scenario " + quoted(scenario) + " --out " + quoted(out)) == 0);
    REQUIRE(fs::exists(out / "throughput.csv"));
    REQUIRE(fs::exists(out / "delay.csv"));
    REQUIRE(fs::exists(out / "manifest.json"));

    const CsvTable th = parse_csv(out / "throughput.csv");
    REQUIRE(th.rows.size() == 1);
    CHECK(th.cell(0, "decision") == "relay");
    CHECK(th.number(0, "blockage_fraction") == doctest::Approx(0.6321).epsilon(1e-3));
    CHECK(th.number(0, "fallback_bits_per_slot") ==
          doctest::Approx(14.296e9).epsilon(0.001));
    CHECK(th.number(0, "relay_bits_per_slot") == doctest::Approx(18.24e9).epsilon(0.001));
    // per-second view is the per-slot view over the mean slot
    CHECK(th.number(0, "fallback_bps") ==
          doctest::Approx(th.number(0, "fallback_bits_per_slot") /
                          th.number(0, "mean_slot_s")).epsilon(1e-9));

    const CsvTable dl = parse_csv(out / "delay.csv");
    REQUIRE(dl.rows.size() == 1);
    CHECK(dl.cell(0, "decision") == "relay");
    // achievable throughput never exceeds the service rate
    CHECK(dl.number(0, "throughput_fallback_bps") <=
          dl.number(0, "service_rate_fallback_bps"));
    CHECK(dl.number(0, "throughput_relay_bps") <= dl.number(0, "service_rate_relay_bps"));

    CHECK(read_file(out / "manifest.json").find("\"command\": \"run\"") != std::string::npos);
}

TEST_CASE("run: light blockage picks the fallback")
{
    TempDir tmp("cli_run_fb");
    const double nu = nu_for_blockage_fraction(0.5, 0.3);
    const auto scenario = make_scenario(
        tmp, "light.json",
        "{\"schema\": 1, \"obstacles\": {\"lambda_per_s\": 0.5, \"nu_per_s\": " +
            std::to_string(nu) + "}}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("run --scenario " + quoted(scenario) + " --out " + quoted(out)) == 0);
    const CsvTable th = parse_csv(out / "throughput.csv");
    CHECK(th.cell(0, "decision") == "fallback");
}

TEST_CASE("run: invalid scenario exits nonzero and writes nothing")
{
    TempDir tmp("cli_bad");
    const auto scenario = make_scenario(
        tmp, "bad.json", "{\"schema\": 1, \"antenna\": {\"epsilon\": 1.2}}\n");
    const auto out = tmp.path() / "out";

    CHECK(run_cli("run --scenario " + quoted(scenario) + " --out " + quoted(out)) != 0);
    CHECK_FALSE(fs::exists(out));

    CHECK(run_cli("run --scenario " + quoted(tmp.path() / "missing.json") + " --out " +
                  quoted(out)) != 0);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("sweep-blockage: curve shapes across the departure-rate sweep")
{
    TempDir tmp("cli_sweep");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("sweep-blockage --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --nu-range 0.5:1.0:21 --slots 20000 --seed 5") == 0);
    const CsvTable sw = parse_csv(out / "sweep.csv");
    REQUIRE(sw.rows.size() == 21);

    double fb_min = 1e300, fb_max = 0.0, prev_relay = 1e300, prev_frac = 1e300;
    bool saw_fallback = false, saw_relay = false;
    for (std::size_t i = 0; i < sw.rows.size(); ++i) {
        const double frac = sw.number(i, "blockage_fraction");
        const double fb = sw.number(i, "fallback_bits_per_slot");
        const double relay = sw.number(i, "relay_bits_per_slot_approx");
        const double mc = sw.number(i, "relay_bits_per_slot_mc");
        const double hw = sw.number(i, "relay_mc_half_width");
        fb_min = std::min(fb_min, fb);
        fb_max = std::max(fb_max, fb);
        // nu sweeps upward, fraction and relay throughput downward
        if (i > 0) {
            CHECK(frac < prev_frac);
            CHECK(relay < prev_relay);
        }
        prev_frac = frac;
        prev_relay = relay;
        // smoke-level agreement at this slot budget; the acceptance suite
        // checks the 0.5% bound at full scale
        CHECK(std::abs(mc - relay) <= std::max(3.0 * hw, 0.005 * relay));
        if (sw.cell(i, "decision") == "fallback") saw_fallback = true;
        if (sw.cell(i, "decision") == "relay") saw_relay = true;
    }
    // the mmWave LoS term dominates the fallback option: near-flat curve
    CHECK(fb_max / fb_min - 1.0 < 0.05);
    // the decision crosses over inside the sweep
    CHECK(saw_fallback);
    CHECK(saw_relay);
}

TEST_CASE("region: degenerate grid and feasibility labels")
{
    TempDir tmp("cli_region");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("region --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --theta-list 20 --blockage-list 0.2 --target-rate 2e9") == 0);
    const CsvTable rg = parse_csv(out / "region.csv");
    REQUIRE(rg.rows.size() == 1);
    CHECK(rg.cell(0, "choice") == "both-feasible-fallback-faster");
    CHECK(rg.number(0, "theta_deg") == doctest::Approx(20.0));

    REQUIRE(run_cli("region --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --theta-list 1,20 --blockage-list 0.3,0.9 --target-rate 1e12") == 0);
    const CsvTable all_inf = parse_csv(out / "region.csv");
    for (const auto& row : all_inf.rows) {
        CHECK(row.at(all_inf.column("choice")) == "infeasible");
        CHECK(row.at(all_inf.column("delay_fallback_s")) == "inf");
        CHECK(row.at(all_inf.column("delay_relay_s")) == "inf");
    }
}

TEST_CASE("determinism: identical seeds produce byte-identical outputs")
{
    TempDir tmp("cli_det");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out1 = tmp.path() / "a";
    const auto out2 = tmp.path() / "b";

    SUBCASE("validate")
    {
        const std::string args = " --scenario " + quoted(scenario) +
                                 " --slots 5000 --seed 7";
        REQUIRE(run_cli("validate" + args + " --out " + quoted(out1)) == 0);
        REQUIRE(run_cli("validate" + args + " --out " + quoted(out2)) == 0);
        CHECK(read_file(out1 / "validation.csv") == read_file(out2 / "validation.csv"));
        CHECK(read_file(out1 / "periods.csv") == read_file(out2 / "periods.csv"));
        CHECK(read_file(out1 / "manifest.json") == read_file(out2 / "manifest.json"));
        CHECK_FALSE(read_file(out1 / "periods.csv").empty());
    }

    SUBCASE("sweep-blockage")
    {
        const std::string args = " --scenario " + quoted(scenario) +
                                 " --nu-range 0.5:1.0:6 --slots 4000 --seed 7";
        REQUIRE(run_cli("sweep-blockage" + args + " --out " + quoted(out1)) == 0);
        REQUIRE(run_cli("sweep-blockage" + args + " --out " + quoted(out2)) == 0);
        CHECK(read_file(out1 / "sweep.csv") == read_file(out2 / "sweep.csv"));

        // a different seed perturbs only the Monte Carlo columns
        REQUIRE(run_cli("sweep-blockage --scenario " + quoted(scenario) +
                        " --nu-range 0.5:1.0:6 --slots 4000 --seed 8 --out " +
                        quoted(out2)) == 0);
        const CsvTable a = parse_csv(out1 / "sweep.csv");
        const CsvTable b = parse_csv(out2 / "sweep.csv");
        CHECK(a.number(0, "relay_bits_per_slot_mc") != b.number(0, "relay_bits_per_slot_mc"));
        CHECK(a.number(0, "relay_bits_per_slot_approx") ==
              b.number(0, "relay_bits_per_slot_approx"));
    }
}

TEST_CASE("validate: tolerances scale with the slot budget")
{
    TempDir tmp("cli_val");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("validate --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --slots 2000 --seed 3") == 0);
    const CsvTable v = parse_csv(out / "validation.csv");
    const double tol_small = v.number(0, "tolerance");

    REQUIRE(run_cli("validate --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --slots 100000 --seed 3") == 0);
    const CsvTable w = parse_csv(out / "validation.csv");
    CHECK(w.number(0, "tolerance") < tol_small);
    CHECK(w.number(0, "tolerance") == doctest::Approx(0.02));
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        CHECK(w.cell(i, "pass") == "1");
    }

    CHECK(run_cli("validate --scenario " + quoted(scenario) + " --out " + quoted(out) +
                  " --slots 500 --seed 3") != 0);
}

TEST_CASE("flag overrides are echoed into the manifest")
{
    TempDir tmp("cli_flags");
    const auto scenario = make_scenario(tmp, "default.json", "{\"schema\": 1}\n");
    const auto out = tmp.path() / "out";

    REQUIRE(run_cli("run --scenario " + quoted(scenario) + " --out " + quoted(out) +
                    " --gain-both-ends --paper-literal-eq12 --paper-literal-eq15") == 0);
    const std::string manifest = read_file(out / "manifest.json");
    CHECK(manifest.find("\"gain_both_ends\": true") != std::string::npos);
    CHECK(manifest.find("\"eq12_paper_literal\": true") != std::string::npos);
    CHECK(manifest.find("\"eq15_paper_literal\": true") != std::string::npos);
}
