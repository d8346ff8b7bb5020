#include "leosim/metrics.hpp"
#include "leosim/runner.hpp"
#include "leosim/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace leosim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> handover_s;
  std::optional<double> rate_hz;
  std::optional<double> duration_s;
};

void
add_override_flags(CLI::App* cmd, Overrides& ov)
{
  cmd->add_option("--seed", ov.seed, "Override the scenario seed");
  cmd->add_option("--handover", ov.handover_s, "Override the handover margin, seconds");
  cmd->add_option("--rate", ov.rate_hz, "Override the consumer Interest rate, Hz");
  cmd->add_option("--duration", ov.duration_s, "Override the run length, seconds");
}

Scenario
load_with_overrides(const std::string& config, const Overrides& ov)
{
  Scenario sc = load_scenario(config);
  if (ov.seed) {
    sc.seed = *ov.seed;
  }
  if (ov.handover_s) {
    sc.handover_s = *ov.handover_s;
  }
  if (ov.rate_hz) {
    sc.rate_hz = *ov.rate_hz;
  }
  if (ov.duration_s) {
    sc.duration_s = *ov.duration_s;
  }
  validate_scenario(sc);
  return sc;
}

std::ofstream
open_out(const fs::path& dir, const char* file)
{
  std::ofstream out(dir / file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + (dir / file).string());
  }
  return out;
}

void
write_run_outputs(const fs::path& dir, const Scenario& sc, const RunResult& run,
                  const RunMetrics& m)
{
  fs::create_directories(dir);
  auto summary = open_out(dir, "summary.csv");
  write_summary_csv(summary, sc, run, m);
  auto handovers = open_out(dir, "handovers.csv");
  write_handovers_csv(handovers, run);
  auto periods = open_out(dir, "loss_periods.csv");
  write_loss_periods_csv(periods, m);
  auto segments = open_out(dir, "segments.csv");
  write_segments_csv(segments, run);
}

void
print_run_summary(const Scenario& sc, const RunMetrics& m)
{
  std::cout << "handover " << sc.handover_s << " s, " << m.producer_handovers
            << " producer / " << m.consumer_handovers << " consumer switches, "
            << m.periods.size() << " loss periods (" << m.timeout_periods
            << " timeout, " << m.distance_periods << " relative-distance), "
            << "lossy fraction " << m.lossy_fraction << ", mean loss "
            << m.mean_loss_s << " s\n";
}

int
cmd_validate(const std::string& config)
{
  Scenario sc = load_scenario(config);
  SchedulePreview p = preview_schedules(sc);
  auto describe = [](const char* side, const std::vector<orbit::AccessWindow>& w) {
    int shortest = w.empty() ? 0 : w[0].end_s - w[0].start_s;
    int longest = shortest;
    for (const auto& win : w) {
      shortest = std::min(shortest, win.end_s - win.start_s);
      longest = std::max(longest, win.end_s - win.start_s);
    }
    std::cout << side << ": " << w.size() << " access windows, length "
              << shortest << ".." << longest << " s\n";
  };
  describe("producer", p.producer);
  describe("consumer", p.consumer);
  std::cout << "ok\n";
  return kExitOk;
}

int
cmd_run(const std::string& config, const std::string& outDir, const Overrides& ov,
        bool trace)
{
  Scenario sc = load_with_overrides(config, ov);
  fs::path dir(outDir);
  fs::create_directories(dir);

  std::ofstream traceFile;
  std::unique_ptr<CsvTraceSink> sink;
  if (trace) {
    traceFile = open_out(dir, "packets.csv");
    sink = std::make_unique<CsvTraceSink>(traceFile);
  }

  RunResult run = run_scenario(sc, sink.get());
  RunMetrics m = compute_metrics(run);
  write_run_outputs(dir, sc, run, m);
  print_run_summary(sc, m);
  return kExitOk;
}

// Minimal static line chart; enough to eyeball the sweep trends.
void
write_svg_plot(std::ostream& out, const std::string& title, const std::string& yLabel,
               const std::vector<double>& xs,
               const std::vector<std::pair<std::string, std::vector<double>>>& series)
{
  const double w = 640, h = 420, ml = 70, mr = 30, mt = 50, mb = 60;
  double xMin = xs.front(), xMax = xs.back();
  if (xMax <= xMin) {
    xMax = xMin + 1;
  }
  double yMax = 0;
  for (const auto& s : series) {
    for (double v : s.second) {
      yMax = std::max(yMax, v);
    }
  }
  if (yMax <= 0) {
    yMax = 1;
  }
  yMax *= 1.1;

  auto px = [&](double x) { return ml + (x - xMin) / (xMax - xMin) * (w - ml - mr); };
  auto py = [&](double y) { return h - mb - y / yMax * (h - mt - mb); };

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
      << "' font-family='sans-serif' font-size='12'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='15'>"
      << title << "</text>\n";
  out << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='"
      << h - mb << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
      << "' stroke='black'/>\n";
  out << "<text x='" << w / 2 << "' y='" << h - 16
      << "' text-anchor='middle'>handover margin H, s</text>\n";
  out << "<text x='18' y='" << h / 2 << "' text-anchor='middle' transform='rotate(-90 18 "
      << h / 2 << ")'>" << yLabel << "</text>\n";

  for (double x : xs) {
    out << "<line x1='" << px(x) << "' y1='" << h - mb << "' x2='" << px(x) << "' y2='"
        << h - mb + 5 << "' stroke='black'/>\n";
    out << "<text x='" << px(x) << "' y='" << h - mb + 20 << "' text-anchor='middle'>"
        << x << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    double y = yMax * i / 4;
    out << "<line x1='" << ml - 5 << "' y1='" << py(y) << "' x2='" << ml << "' y2='"
        << py(y) << "' stroke='black'/>\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", y);
    out << "<text x='" << ml - 9 << "' y='" << py(y) + 4 << "' text-anchor='end'>" << buf
        << "</text>\n";
  }

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 4];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << px(xs[i]) << ',' << py(series[s].second[i]) << ' ';
    }
    out << "'/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << "<circle cx='" << px(xs[i]) << "' cy='" << py(series[s].second[i])
          << "' r='3' fill='" << color << "'/>\n";
    }
    double lx = ml + 14, ly = mt + 8 + 18 * static_cast<double>(s);
    out << "<line x1='" << lx << "' y1='" << ly << "' x2='" << lx + 22 << "' y2='" << ly
        << "' stroke='" << color << "' stroke-width='2'/>\n";
    out << "<text x='" << lx + 28 << "' y='" << ly + 4 << "'>" << series[s].first
        << "</text>\n";
  }
  out << "</svg>\n";
}

int
cmd_sweep(const std::string& config, const std::string& outDir, const Overrides& ov,
          std::vector<double> hValues, bool plots)
{
  if (hValues.empty()) {
    hValues = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0};
  }
  std::sort(hValues.begin(), hValues.end());

  Scenario base = load_with_overrides(config, ov);
  fs::path dir(outDir);
  fs::create_directories(dir);

  std::vector<SweepRow> rows;
  for (double hv : hValues) {
    Scenario sc = base;
    sc.handover_s = hv;
    validate_scenario(sc);
    std::cout << "H = " << hv << " s ..." << std::flush;
    RunResult run = run_scenario(sc);
    SweepRow row;
    row.handover_s = hv;
    row.metrics = compute_metrics(run);
    std::cout << " " << row.metrics.periods.size() << " loss periods, lossy fraction "
              << row.metrics.lossy_fraction << "\n";
    rows.push_back(std::move(row));
  }

  auto csv = open_out(dir, "sweep_summary.csv");
  write_sweep_csv(csv, rows);

  if (plots) {
    std::vector<double> xs;
    std::vector<double> lossyPct, timeoutPct, distancePct, meanLoss, lossOfGapPct;
    for (const auto& r : rows) {
      xs.push_back(r.handover_s);
      const RunMetrics& m = r.metrics;
      double n = std::max(1, m.producer_handovers);
      lossyPct.push_back(100.0 * m.lossy_fraction);
      timeoutPct.push_back(100.0 * m.timeout_periods / n);
      distancePct.push_back(100.0 * m.distance_periods / n);
      meanLoss.push_back(m.mean_loss_s);
      lossOfGapPct.push_back(m.mean_gap_s > 0 ? 100.0 * m.mean_loss_s / m.mean_gap_s : 0);
    }
    auto f1 = open_out(dir, "loss_cause.svg");
    write_svg_plot(f1, "Lossy handovers by cause", "% of handovers", xs,
                   {{"any loss", lossyPct},
                    {"timeout", timeoutPct},
                    {"relative distance", distancePct}});
    auto f2 = open_out(dir, "loss_length.svg");
    write_svg_plot(f2, "Average loss period length", "seconds / % of gap", xs,
                   {{"mean loss, s", meanLoss}, {"% of inter-handover gap", lossOfGapPct}});
  }
  return kExitOk;
}

int
cmd_consumer_trace(const std::string& config, const std::string& outDir,
                   const Overrides& ov)
{
  Scenario sc = load_with_overrides(config, ov);
  if (!ov.rate_hz) {
    sc.rate_hz = 1000.0;
  }

  // Find the first consumer-side switch past the bootstrap transient and
  // trim the run to a short window around it.
  SchedulePreview preview = preview_schedules(sc);
  double tSwitch = -1;
  for (std::size_t k = 1; k < preview.consumer.size(); ++k) {
    if (preview.consumer[k].start_s >= 60) {
      tSwitch = preview.consumer[k].start_s;
      break;
    }
  }
  if (tSwitch < 0) {
    throw ScenarioError("no consumer handover after t = 60 s inside the run");
  }
  sc.duration_s = tSwitch + 5.0;
  sc.stop_s = tSwitch + 2.0;
  validate_scenario(sc);

  RunResult run = run_scenario(sc);

  const HandoverRecord* h = nullptr;
  for (const auto& rec : run.handovers) {
    if (rec.side == HandoverRecord::Side::Consumer &&
        std::abs(rec.t_switch_s - tSwitch) < 0.5) {
      h = &rec;
      break;
    }
  }
  if (h == nullptr) {
    throw std::runtime_error("consumer handover missing from the run record");
  }

  SimTime tSw = secs(tSwitch);
  SimTime winStart = tSw - millis(500.0);
  SimTime winEnd = tSw + kNsPerSec;

  fs::path dir(outDir);
  fs::create_directories(dir);
  auto csv = open_out(dir, "consumer_trace.csv");
  csv << "seq,emit_ns,delivered_ns,attempts\n";

  long unrecovered = 0;
  SimTime firstRecovery = -1;
  SimTime burstEnd = -1;
  int pendingRecovered = 0;
  for (std::size_t i = 0; i < run.segments.size(); ++i) {
    const auto& s = run.segments[i];
    if (s.firstEmit < winStart || s.firstEmit > winEnd) {
      continue;
    }
    csv << i << ',' << s.firstEmit << ',' << s.delivered << ',' << s.attempts << '\n';
    if (s.delivered < 0) {
      ++unrecovered;
    }
    if (s.firstEmit < tSw && s.delivered >= tSw) {
      ++pendingRecovered;
      if (firstRecovery < 0 || s.delivered < firstRecovery) {
        firstRecovery = s.delivered;
      }
      burstEnd = std::max(burstEnd, s.delivered);
    }
  }

  double rtt = consumer_recovery_rtt_s(sc, *h);
  std::cout << "consumer switch at " << tSwitch << " s: /lsat/" << h->oldSat.plane << '/'
            << h->oldSat.index << " -> /lsat/" << h->newSat.plane << '/'
            << h->newSat.index << "\n";
  std::cout << "computed recovery round trip " << rtt * 1e3 << " ms\n";
  std::cout << pendingRecovered << " in-flight packets recovered";
  if (firstRecovery >= 0) {
    std::cout << ", burst " << to_secs(firstRecovery - tSw) * 1e3 << " .. "
              << to_secs(burstEnd - tSw) * 1e3 << " ms after the switch";
  }
  std::cout << "\n";
  std::cout << "unrecovered sequence numbers in the window: " << unrecovered << "\n";
  return unrecovered == 0 ? kExitOk : kExitRuntime;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Deterministic NDN-over-LEO constellation simulator"};
  app.require_subcommand(1);

  std::string config, outDir;
  Overrides ov;
  bool trace = false;
  bool plots = false;
  std::vector<double> hValues;

  CLI::App* validate = app.add_subcommand("validate-config", "Check a scenario file");
  validate->add_option("--config", config, "Scenario file")->required();

  CLI::App* runCmd = app.add_subcommand("run", "Run one scenario");
  runCmd->add_option("--config", config, "Scenario file")->required();
  runCmd->add_option("--out", outDir, "Output directory")->required();
  runCmd->add_flag("--trace", trace, "Also write the full packet trace (packets.csv)");
  add_override_flags(runCmd, ov);

  CLI::App* sweepCmd = app.add_subcommand("sweep", "Run the handover-margin sweep");
  sweepCmd->add_option("--config", config, "Scenario file")->required();
  sweepCmd->add_option("--out", outDir, "Output directory")->required();
  sweepCmd->add_option("--H", hValues, "Margin values, seconds")->delimiter(',');
  sweepCmd->add_flag("--plots", plots, "Also write SVG charts");
  add_override_flags(sweepCmd, ov);

  CLI::App* traceCmd = app.add_subcommand(
      "consumer-trace", "Per-packet timing around a consumer-side switch");
  traceCmd->add_option("--config", config, "Scenario file")->required();
  traceCmd->add_option("--out", outDir, "Output directory")->required();
  add_override_flags(traceCmd, ov);

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(config);
    }
    if (runCmd->parsed()) {
      return cmd_run(config, outDir, ov, trace);
    }
    if (sweepCmd->parsed()) {
      return cmd_sweep(config, outDir, ov, hValues, plots);
    }
    return cmd_consumer_trace(config, outDir, ov);
  }
  catch (const ScenarioError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
