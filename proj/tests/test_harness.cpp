#include "leosim/metrics.hpp"
#include "leosim/runner.hpp"
#include "leosim/scenario.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace leosim;

namespace {

Scenario
loadFromString(const std::string& text, const char* stem)
{
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / (std::string("leosim_") + stem + ".json");
  {
    std::ofstream out(path);
    out << text;
  }
  Scenario sc = load_scenario(path.string());
  fs::remove(path);
  return sc;
}

mobility::ConsumerApp::Segment
seg(double emit_s, double delivered_s, int attempts = 1)
{
  mobility::ConsumerApp::Segment s;
  s.firstEmit = secs(emit_s);
  s.lastEmit = s.firstEmit;
  s.attempts = attempts;
  s.delivered = delivered_s < 0 ? -1 : secs(delivered_s);
  return s;
}

HandoverRecord
producerSwitch(double t_s, double gap_s, int newCloser)
{
  HandoverRecord h;
  h.side = HandoverRecord::Side::Producer;
  h.t_switch_s = t_s;
  h.gap_s = gap_s;
  h.new_closer = newCloser;
  return h;
}

} // namespace

TEST_SUITE("harness")
{
  TEST_CASE("empty config yields the defaults")
  {
    Scenario sc = loadFromString("{}", "defaults");
    CHECK(sc.duration_s == 10000.0);
    CHECK(sc.seed == 1);
    CHECK(sc.handover_s == 1.0);
    CHECK(sc.shell.planes == 72);
    CHECK(sc.shell.sats_per_plane == 22);
    CHECK(sc.shell.altitude_m == doctest::Approx(550e3));
    CHECK(sc.mask_deg == 25.0);
    CHECK(sc.cs_capacity == 10000);
    CHECK(sc.rate_hz == 100.0);
    CHECK(sc.stop_s == -1.0);
    CHECK(sc.producer.lon_deg > 0);
    CHECK(sc.consumer.lon_deg < 0);
  }

  TEST_CASE("the shipped baseline matches the defaults")
  {
    Scenario sc =
        load_scenario(LEOSIM_TEST_DATA_DIR "/../../scenarios/baseline.json");
    Scenario def;
    CHECK(sc.duration_s == def.duration_s);
    CHECK(sc.seed == def.seed);
    CHECK(sc.handover_s == def.handover_s);
    CHECK(sc.shell.planes == def.shell.planes);
    CHECK(sc.shell.altitude_m == doctest::Approx(def.shell.altitude_m));
    CHECK(sc.producer.lon_deg == doctest::Approx(def.producer.lon_deg));
    CHECK(sc.consumer.lon_deg == doctest::Approx(def.consumer.lon_deg));
    CHECK(sc.content_prefix == def.content_prefix);
    CHECK(sc.sat_prefix == def.sat_prefix);
    CHECK(sc.rate_hz == def.rate_hz);
  }

  TEST_CASE("overrides in nested objects are applied")
  {
    Scenario sc = loadFromString(R"({
      "duration_s": 600,
      "handover_s": 0.25,
      "shell": {"planes": 12, "sats_per_plane": 8, "altitude_km": 600},
      "radio": {"mask_deg": 30},
      "protocol": {"cs_capacity": 50},
      "traffic": {"rate_hz": 10, "stop_s": 400}
    })",
                                 "overrides");
    CHECK(sc.duration_s == 600.0);
    CHECK(sc.handover_s == 0.25);
    CHECK(sc.shell.planes == 12);
    CHECK(sc.shell.sats_per_plane == 8);
    CHECK(sc.shell.altitude_m == doctest::Approx(600e3));
    CHECK(sc.mask_deg == 30.0);
    CHECK(sc.cs_capacity == 50);
    CHECK(sc.rate_hz == 10.0);
    CHECK(sc.stop_s == 400.0);
    CHECK(sc.shell.inclination_deg == 53.0); // untouched default
  }

  TEST_CASE("config errors are reported as ScenarioError")
  {
    CHECK_THROWS_AS(loadFromString(R"({"durations": 1})", "unknown"), ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"shell": {"planez": 10}})", "unknown_nested"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"duration_s": "long"})", "wrong_type"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"duration_s": -5})", "bad_range"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"handover_s": -1})", "bad_margin"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"protocol": {"content_prefix": "video"}})",
                                   "bad_prefix"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString(R"({"traffic": {"start_s": 20000}})", "bad_start"),
                    ScenarioError);
    CHECK_THROWS_AS(loadFromString("{", "truncated"), ScenarioError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
  }

  TEST_CASE("loss periods are grouped, classified and attributed")
  {
    RunResult run;
    run.duration_s = 100.0;
    run.lifetime = kNsPerSec;
    run.period = millis(10.0);

    run.handovers.push_back(producerSwitch(20.0, 29.8, 0));
    run.handovers.push_back(producerSwitch(49.8, 21.2, 0));
    HandoverRecord consumer;
    consumer.side = HandoverRecord::Side::Consumer;
    consumer.t_switch_s = 60.0;
    consumer.gap_s = 40.0;
    run.handovers.push_back(consumer);
    run.handovers.push_back(producerSwitch(71.0, 29.0, 1));

    run.segments.push_back(seg(1.000, 1.020));
    run.segments.push_back(seg(50.000, -1, 2));   // lost, never answered
    run.segments.push_back(seg(50.010, 53.000));  // answered after the lifetime
    run.segments.push_back(seg(50.020, 51.500));
    run.segments.push_back(seg(50.030, 51.400));
    run.segments.push_back(seg(51.000, 51.045));  // emissions succeed again
    run.segments.push_back(seg(70.000, -1));
    run.segments.push_back(seg(70.010, 70.060));
    run.segments.push_back(seg(98.600, -1)); // beyond the observation window

    run.queryTimeouts.push_back(secs(50.5));
    run.reemissions.push_back(secs(50.3));
    run.reemissions.push_back(secs(50.4));

    RunMetrics m = compute_metrics(run);

    CHECK(m.producer_handovers == 3);
    CHECK(m.consumer_handovers == 1);
    CHECK(m.mean_gap_s == doctest::Approx((29.8 + 21.2 + 29.0) / 3));
    CHECK(m.segments_total == 8);
    CHECK(m.segments_lost == 5);
    CHECK(m.segments_unrecovered == 2);
    CHECK(m.query_timeouts == 1);
    CHECK(m.reemissions == 2);

    REQUIRE(m.periods.size() == 2);

    const LossPeriod& p1 = m.periods[0];
    CHECK(p1.t_first_loss == secs(50.0));
    CHECK(p1.t_recovery == secs(51.0)); // first answered emission after the run
    CHECK(p1.packets_lost == 4);
    CHECK(p1.timeout_cause);
    CHECK(p1.handover_t_s == doctest::Approx(49.8));
    CHECK(p1.new_closer == 0);
    CHECK(p1.length_s() == doctest::Approx(1.0));

    const LossPeriod& p2 = m.periods[1];
    CHECK(p2.t_first_loss == secs(70.0));
    CHECK(p2.t_recovery == secs(70.010));
    CHECK(p2.packets_lost == 1);
    CHECK_FALSE(p2.timeout_cause);
    CHECK(p2.handover_t_s == doctest::Approx(71.0));
    CHECK(p2.new_closer == 1);

    CHECK(m.timeout_periods == 1);
    CHECK(m.distance_periods == 1);
    CHECK(m.lossy_handovers == 2);
    CHECK(m.lossy_fraction == doctest::Approx(2.0 / 3.0));
    CHECK(m.mean_loss_s == doctest::Approx((1.0 + 0.010) / 2));
  }

  TEST_CASE("a loss run without recovery ends at the horizon")
  {
    RunResult run;
    run.duration_s = 10.0;
    run.lifetime = kNsPerSec;
    run.period = millis(10.0);
    run.handovers.push_back(producerSwitch(5.0, 5.0, 0));
    run.segments.push_back(seg(1.00, 1.02));
    run.segments.push_back(seg(5.00, -1));
    run.segments.push_back(seg(5.01, -1));

    RunMetrics m = compute_metrics(run);
    REQUIRE(m.periods.size() == 1);
    CHECK(m.periods[0].t_recovery == secs(10.0));
    CHECK(m.periods[0].packets_lost == 2);
    CHECK(m.lossy_fraction == doctest::Approx(1.0));
  }

  TEST_CASE("a clean run has no loss periods")
  {
    RunResult run;
    run.duration_s = 10.0;
    run.lifetime = kNsPerSec;
    run.period = millis(10.0);
    run.handovers.push_back(producerSwitch(5.0, 5.0, 1));
    for (int i = 0; i < 100; ++i) {
      run.segments.push_back(seg(0.5 + i * 0.01, 0.55 + i * 0.01));
    }

    RunMetrics m = compute_metrics(run);
    CHECK(m.periods.empty());
    CHECK(m.segments_lost == 0);
    CHECK(m.lossy_fraction == 0.0);
    CHECK(m.mean_loss_s == 0.0);
  }

  TEST_CASE("csv writers are deterministic")
  {
    RunResult run;
    run.duration_s = 100.0;
    run.lifetime = kNsPerSec;
    run.period = millis(10.0);
    run.handovers.push_back(producerSwitch(20.0, 30.0, 0));
    run.segments.push_back(seg(1.0, 1.02));
    run.segments.push_back(seg(20.0, -1));
    run.segments.push_back(seg(21.0, 21.05));
    run.queryTimeouts.push_back(secs(20.4));
    RunMetrics m = compute_metrics(run);

    Scenario sc;
    sc.duration_s = run.duration_s;

    auto render = [&] {
      std::ostringstream summary, handovers, periods, segments;
      write_summary_csv(summary, sc, run, m);
      write_handovers_csv(handovers, run);
      write_loss_periods_csv(periods, m);
      write_segments_csv(segments, run);
      return summary.str() + handovers.str() + periods.str() + segments.str();
    };
    std::string first = render();
    CHECK(first == render());
    CHECK(first.find("timeout") != std::string::npos);
    CHECK(first.find("producer,20.000000000") != std::string::npos);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "handover_s,duration_s,seed,rate_hz,producer_handovers,consumer_handovers,"
          "segments,segments_lost,segments_unrecovered,loss_periods,timeout_periods,"
          "relative_distance_periods,lossy_handover_fraction,mean_loss_s,mean_gap_s,"
          "loss_to_gap_pct,query_timeouts,reemissions");
  }
}
