#pragma once

#include "leosim/runner.hpp"

#include <iosfwd>
#include <vector>

namespace leosim {

// A run of consecutive segments whose first emission went unanswered.
// Recovery is the moment emissions start succeeding again: the emission
// instant of the first answered segment after the run. Counting until the
// next arrival instead would add one round trip to every period and report
// a single lost packet as a loss lasting a full RTT.
struct LossPeriod {
  SimTime t_first_loss = 0; // first emission of the first lost segment
  SimTime t_recovery = 0;
  int packets_lost = 0;
  bool timeout_cause = false; // a locator-query timeout fell inside the period
  double handover_t_s = -1.0; // nearest producer switch
  int new_closer = -1;        // copied from that handover's record

  double
  length_s() const
  {
    return to_secs(t_recovery - t_first_loss);
  }
};

struct RunMetrics {
  std::vector<LossPeriod> periods;

  int producer_handovers = 0;
  int consumer_handovers = 0;
  int lossy_handovers = 0; // producer switches with at least one period
  int timeout_periods = 0;
  int distance_periods = 0;

  double lossy_fraction = 0.0; // lossy_handovers / producer_handovers
  double mean_loss_s = 0.0;    // mean period length
  double mean_gap_s = 0.0;     // mean producer inter-handover gap

  long segments_total = 0;     // segments inside the observation window
  long segments_lost = 0;      // first emission unanswered
  long segments_unrecovered = 0;

  int query_timeouts = 0;
  int reemissions = 0;
};

// Groups unanswered first emissions into loss periods, attributes each to
// the nearest producer handover and classifies its cause. Segments emitted
// too close to the end of the run to observe a timeout are left out.
RunMetrics compute_metrics(const RunResult& run);

// CSV emitters. Schemas are documented in the README; all of them write a
// header line first and format times deterministically.
void write_summary_csv(std::ostream& out, const Scenario& sc, const RunResult& run,
                       const RunMetrics& m);
void write_handovers_csv(std::ostream& out, const RunResult& run);
void write_loss_periods_csv(std::ostream& out, const RunMetrics& m);
void write_segments_csv(std::ostream& out, const RunResult& run);

struct SweepRow {
  double handover_s = 0.0;
  RunMetrics metrics;
};
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace leosim
