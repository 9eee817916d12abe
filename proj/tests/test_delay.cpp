#include <doctest.h>

#include <cmath>
#include <limits>

#include "mmlink/channel.hpp"
#include "mmlink/delay.hpp"
#include "test_util.hpp"

using namespace mmlink;
using testutil::rel_err;

namespace {

BlockageStats literal_stats(double ex, double ey)
{
    return {ex, ey, ex + ey, ex / (ex + ey)};
}

ScenarioConfig scenario_at(double fraction, double theta_deg)
{
    ScenarioConfig cfg = default_scenario();
    cfg.antenna.theta_rad = deg_to_rad(theta_deg);
    cfg.obstacles.nu_per_s = nu_for_blockage_fraction(cfg.obstacles.lambda_per_s, fraction);
    return cfg;
}

}  // namespace

TEST_CASE("fallback service rate is the time-shared mix of both bands")
{
    const RateSet rs{254e6, 6.74e9, 6.74e9, Regime::short_packet};
    // 55% blockage
    const BlockageStats st = literal_stats(5.5, 4.5);
    CHECK(rel_err(fallback_service_rate_bps(rs, st), 0.55 * 254e6 + 0.45 * 6.74e9) < 1e-14);
    CHECK(rel_err(fallback_service_rate_bps(rs, st), 3.17e9) < 0.001);

    CHECK(fallback_service_rate_bps(rs, {0.0, 2.0, 2.0, 0.0}) == 6.74e9);

    const RateSet flat{1e9, 1e9, 2e9, Regime::short_packet};
    for (double f : {0.1, 0.5, 0.9}) {
        CHECK(rel_err(fallback_service_rate_bps(flat, literal_stats(f * 8, (1 - f) * 8)), 1e9) <
              1e-12);
    }
}

TEST_CASE("relay service rate")
{
    const BlockageStats st = literal_stats(3.4366, 2.0);

    SUBCASE("printed form halves the relay rate exactly")
    {
        CHECK(relay_service_rate_bps(6.74e9, st, 0.5e-3, true) == 6.74e9 / 2.0);
        CHECK(relay_service_rate_bps(6.74e9, literal_stats(0.1, 0.1), 123.0, true) ==
              6.74e9 / 2.0);
    }

    SUBCASE("default form charges the per-slot overhead")
    {
        const double s = relay_service_rate_bps(6.74e9, st, 0.5e-3, false);
        CHECK(rel_err(s, 6.74e9 * (5.4366 - 0.0005) / (2.0 * 5.4366)) < 1e-14);
        CHECK(rel_err(s, 3.3697e9) < 1e-4);
        CHECK(relay_service_rate_bps(6.74e9, st, st.mean_slot_s, false) == 0.0);
        CHECK(relay_service_rate_bps(6.74e9, st, st.mean_slot_s * 2, false) == 0.0);
    }

    SUBCASE("independent of the blockage split at fixed slot length")
    {
        const double a = relay_service_rate_bps(1e9, literal_stats(2.0, 3.0), 0.01, false);
        const double b = relay_service_rate_bps(1e9, literal_stats(3.0, 2.0), 0.01, false);
        CHECK(a == b);
    }

    SUBCASE("fallback rate falls strictly with blockage when mmWave dominates")
    {
        const RateSet rs{254e6, 6.74e9, 6.74e9, Regime::short_packet};
        double prev = std::numeric_limits<double>::infinity();
        for (double f = 0.05; f < 1.0; f += 0.05) {
            const double s =
                fallback_service_rate_bps(rs, literal_stats(f * 6.0, (1.0 - f) * 6.0));
            CHECK(s < prev);
            prev = s;
        }
    }

    SUBCASE("strictly decreasing in the overhead")
    {
        CHECK(relay_service_rate_bps(1e9, st, 0.1, false) >
              relay_service_rate_bps(1e9, st, 0.2, false));
    }
}

TEST_CASE("M|D|1 delay")
{
    const double S = 3.2e9;
    CHECK(*md1_delay_s(0.0, S) == 1.0 / S);
    CHECK(rel_err(*md1_delay_s(0.5 * S, S), 1.5 / S) < 1e-14);
    CHECK_FALSE(md1_delay_s(S, S).has_value());
    CHECK_FALSE(md1_delay_s(1.5 * S, S).has_value());

    SUBCASE("strictly increasing in the offered load")
    {
        double prev = *md1_delay_s(0.0, S);
        for (double g = 0.05; g < 1.0; g += 0.05) {
            const double tau = *md1_delay_s(g * S, S);
            CHECK(tau > prev);
            prev = tau;
        }
    }

    SUBCASE("blows up near the stability boundary")
    {
        CHECK(*md1_delay_s(0.99 * S, S) / *md1_delay_s(0.5 * S, S) > 30.0);
    }

    CHECK_THROWS_AS(md1_delay_s(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(md1_delay_s(-1.0, S), std::domain_error);
}

TEST_CASE("delay decision")
{
    SUBCASE("light blockage, light load: fallback is faster")
    {
        ScenarioConfig cfg = scenario_at(0.2, 20.0);
        cfg.traffic.offered_load_bps = 2e9;
        const DelayDecision d = delay_decision(cfg);
        REQUIRE(d.report.delay_fallback_s.has_value());
        REQUIRE(d.report.delay_relay_s.has_value());
        CHECK(*d.report.delay_fallback_s < *d.report.delay_relay_s);
        CHECK(d.choice == DelayChoice::fallback);
    }

    SUBCASE("load beyond both service rates: infeasible")
    {
        ScenarioConfig cfg = scenario_at(0.5, 20.0);
        cfg.traffic.offered_load_bps = 1e12;
        CHECK(delay_decision(cfg).choice == DelayChoice::infeasible);
    }

    SUBCASE("heavy blockage with a narrow beam: relay")
    {
        ScenarioConfig cfg = scenario_at(0.8, 1.0);
        cfg.traffic.offered_load_bps = 2e9;
        CHECK(delay_decision(cfg).choice == DelayChoice::relay);
    }

    SUBCASE("the lone stable option wins regardless of its delay")
    {
        ScenarioConfig cfg = scenario_at(0.2, 20.0);
        const DelayDecision probe = delay_decision(cfg);
        const double s_relay = probe.report.service_rate_relay_bps;
        const double s_fb = probe.report.service_rate_fallback_bps;
        REQUIRE(s_relay < s_fb);
        cfg.traffic.offered_load_bps = 0.5 * (s_relay + s_fb);
        const DelayDecision d = delay_decision(cfg);
        CHECK_FALSE(d.report.delay_relay_s.has_value());
        REQUIRE(d.report.delay_fallback_s.has_value());
        CHECK(d.choice == DelayChoice::fallback);
    }

    SUBCASE("delay model always uses finite-blocklength rates")
    {
        ScenarioConfig long_mode = scenario_at(0.5, 20.0);
        long_mode.traffic.long_packet_mode = true;
        ScenarioConfig short_mode = long_mode;
        short_mode.traffic.long_packet_mode = false;
        const DelayDecision a = delay_decision(long_mode);
        const DelayDecision b = delay_decision(short_mode);
        CHECK(a.report.service_rate_fallback_bps == b.report.service_rate_fallback_bps);
        CHECK(a.report.service_rate_relay_bps == b.report.service_rate_relay_bps);
    }
}

TEST_CASE("decision region grid")
{
    const ScenarioConfig cfg = default_scenario();

    SUBCASE("degenerate single-cell grid at a fallback-friendly point")
    {
        const RegionGrid g = decision_region(cfg, {deg_to_rad(20.0)}, {0.2}, 2e9);
        REQUIRE(g.cells.size() == 1);
        CHECK(g.at(0, 0).choice == RegionChoice::both_fallback_faster);
    }

    SUBCASE("unrealizable blockage fraction is reported by cell")
    {
        CHECK_THROWS_WITH_AS(decision_region(cfg, {deg_to_rad(20.0)}, {0.5, 1.0}, 2e9),
                             doctest::Contains("column 1"), std::domain_error);
    }

    SUBCASE("theta axis outside the sector is rejected")
    {
        CHECK_THROWS_AS(decision_region(cfg, {deg_to_rad(120.0)}, {0.5}, 2e9),
                        std::invalid_argument);
        CHECK_THROWS_AS(decision_region(cfg, {}, {0.5}, 2e9), std::invalid_argument);
    }

    SUBCASE("unreachable target rate marks every cell infeasible")
    {
        const RegionGrid g =
            decision_region(cfg, {deg_to_rad(5.0), deg_to_rad(20.0)}, {0.3, 0.6, 0.9}, 1e12);
        for (const RegionCell& cell : g.cells) {
            CHECK(cell.choice == RegionChoice::infeasible);
        }
    }

    SUBCASE("columns flip from fallback side to relay side at most once")
    {
        std::vector<double> thetas;
        for (double deg : {1.0, 5.0, 10.0, 20.0}) thetas.push_back(deg_to_rad(deg));
        std::vector<double> fractions;
        for (int i = 1; i <= 19; ++i) fractions.push_back(0.05 * i);

        const RegionGrid g = decision_region(cfg, thetas, fractions, 2e9);
        REQUIRE(g.cells.size() == thetas.size() * fractions.size());

        for (std::size_t t = 0; t < thetas.size(); ++t) {
            int transitions = 0;
            bool prev_relay_side = false;
            for (std::size_t f = 0; f < fractions.size(); ++f) {
                const RegionCell& cell = g.at(t, f);
                const bool relay_side = cell.choice == RegionChoice::relay_only ||
                                        cell.choice == RegionChoice::both_relay_faster;
                if (f > 0 && relay_side != prev_relay_side) ++transitions;
                prev_relay_side = relay_side;

                // the label must agree with the per-cell delay comparison
                const bool fb = cell.report.delay_fallback_s.has_value();
                const bool rl = cell.report.delay_relay_s.has_value();
                if (fb && rl) {
                    const bool faster_relay =
                        *cell.report.delay_relay_s < *cell.report.delay_fallback_s;
                    CHECK(relay_side == faster_relay);
                } else if (fb) {
                    CHECK(cell.choice == RegionChoice::fallback_only);
                } else if (rl) {
                    CHECK(cell.choice == RegionChoice::relay_only);
                }
            }
            CHECK(transitions <= 1);
        }
    }

    SUBCASE("narrow beams leave relay-only cells to the deep-blockage corner")
    {
        const RegionGrid g = decision_region(cfg, {deg_to_rad(1.0)}, {0.85, 0.89}, 2e9);
        CHECK(g.at(0, 0).choice == RegionChoice::both_relay_faster);
        CHECK(g.at(0, 1).choice == RegionChoice::relay_only);
    }

    SUBCASE("pinned slot length reaches short-slot regimes")
    {
        // 56 ms slots: the 1 deg alignment overhead (0.162 s) exceeds the
        // whole slot, so the relay cannot serve at all
        const RegionGrid g =
            decision_region(cfg, {deg_to_rad(1.0)}, {0.5}, 2e9, 0.056);
        CHECK(g.at(0, 0).report.service_rate_relay_bps == 0.0);
        CHECK(g.at(0, 0).choice == RegionChoice::fallback_only);

        // without the override the same fraction is a multi-second regime
        const RegionGrid h = decision_region(cfg, {deg_to_rad(1.0)}, {0.5}, 2e9);
        CHECK(h.at(0, 0).report.service_rate_relay_bps > 2e9);

        CHECK_THROWS_AS(decision_region(cfg, {deg_to_rad(1.0)}, {0.5}, 2e9, -1.0),
                        std::domain_error);
    }
}
