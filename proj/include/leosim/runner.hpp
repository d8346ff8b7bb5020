#pragma once

#include "leosim/mobility.hpp"
#include "leosim/scenario.hpp"
#include "leosim/trace.hpp"

#include <vector>

namespace leosim {

// One gateway radio switch. `gap_s` is the time from this switch to the
// next one on the same side (the length of the window it opens), capped at
// the end of the run.
struct HandoverRecord {
  enum class Side { Producer, Consumer };

  Side side = Side::Producer;
  double t_switch_s = 0.0;
  grid::Coord oldSat;
  grid::Coord newSat;
  double gap_s = 0.0;
  // Producer switches only: 1 if the new satellite is nearer the consumer
  // gateway in propagation delay than the old one, else 0; -1 when not
  // applicable.
  int new_closer = -1;
};

// Everything a finished run hands to the metrics stage.
struct RunResult {
  double duration_s = 0.0;
  SimTime lifetime = 0;
  SimTime period = 0;

  std::vector<HandoverRecord> handovers; // both sides, ordered by t_switch_s
  std::vector<mobility::ConsumerApp::Segment> segments;
  std::vector<SimTime> queryTimeouts;
  std::vector<SimTime> reemissions;
};

// Builds the full constellation, both gateways and their applications,
// plays the attachment schedules and runs the engine to the scenario's
// duration. Throws ScenarioError on configuration problems that only show
// up against the geometry (handover margin at least as long as an access
// window, schedule gaps).
RunResult run_scenario(const Scenario& sc, TraceSink* sink = nullptr);

// Builds just the geometry and reports the access schedules; used by the
// config check and by tests. Throws like run_scenario.
struct SchedulePreview {
  std::vector<orbit::AccessWindow> producer;
  std::vector<orbit::AccessWindow> consumer;
};
SchedulePreview preview_schedules(const Scenario& sc);

// Propagation round trip from the consumer gateway up to its new access
// satellite, across the grid to the old one and back, frozen at the switch
// instant. The post-switch recovery burst is judged against this budget.
double consumer_recovery_rtt_s(const Scenario& sc, const HandoverRecord& h);

} // namespace leosim
