#include "leosim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace leosim {

namespace {

// Fixed-width decimal seconds so equal inputs always print identically.
std::string
fmt_s(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string
fmt_frac(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

const char*
cause_label(bool timeout)
{
  return timeout ? "timeout" : "relative-distance";
}

} // namespace

RunMetrics
compute_metrics(const RunResult& run)
{
  RunMetrics m;

  for (const auto& h : run.handovers) {
    if (h.side == HandoverRecord::Side::Producer) {
      ++m.producer_handovers;
      m.mean_gap_s += h.gap_s;
    }
    else {
      ++m.consumer_handovers;
    }
  }
  if (m.producer_handovers > 0) {
    m.mean_gap_s /= m.producer_handovers;
  }
  m.query_timeouts = static_cast<int>(run.queryTimeouts.size());
  m.reemissions = static_cast<int>(run.reemissions.size());

  // A segment whose lifetime ends near the run's horizon cannot tell a loss
  // from a still-pending answer; leave the tail out of the classification.
  SimTime horizon = secs(run.duration_s);
  SimTime observeEnd = horizon - run.lifetime - kNsPerSec / 2;

  const auto& segs = run.segments;
  std::size_t observed = 0;
  while (observed < segs.size() && segs[observed].firstEmit <= observeEnd) {
    ++observed;
  }
  m.segments_total = static_cast<long>(observed);

  auto lost = [&](const mobility::ConsumerApp::Segment& s) {
    return !(s.delivered >= 0 && s.delivered - s.firstEmit <= run.lifetime);
  };

  for (std::size_t i = 0; i < observed; ++i) {
    if (lost(segs[i])) {
      ++m.segments_lost;
    }
    if (segs[i].delivered < 0) {
      ++m.segments_unrecovered;
    }
  }

  // Group consecutive lost segments.
  std::size_t i = 0;
  while (i < observed) {
    if (!lost(segs[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < observed && lost(segs[j + 1])) {
      ++j;
    }

    LossPeriod p;
    p.t_first_loss = segs[i].firstEmit;
    p.t_recovery = j + 1 < observed ? segs[j + 1].firstEmit : horizon;
    p.packets_lost = static_cast<int>(j - i + 1);

    for (SimTime t : run.queryTimeouts) {
      if (t >= p.t_first_loss && t <= p.t_recovery) {
        p.timeout_cause = true;
        break;
      }
    }

    double tFirst = to_secs(p.t_first_loss);
    double bestDist = std::numeric_limits<double>::max();
    for (const auto& h : run.handovers) {
      if (h.side != HandoverRecord::Side::Producer) {
        continue;
      }
      double d = std::abs(h.t_switch_s - tFirst);
      if (d < bestDist) {
        bestDist = d;
        p.handover_t_s = h.t_switch_s;
        p.new_closer = h.new_closer;
      }
    }

    m.periods.push_back(p);
    i = j + 1;
  }

  std::vector<double> lossyAt;
  for (const auto& p : m.periods) {
    (p.timeout_cause ? m.timeout_periods : m.distance_periods)++;
    m.mean_loss_s += p.length_s();
    if (p.handover_t_s >= 0) {
      lossyAt.push_back(p.handover_t_s);
    }
  }
  if (!m.periods.empty()) {
    m.mean_loss_s /= static_cast<double>(m.periods.size());
  }
  std::sort(lossyAt.begin(), lossyAt.end());
  lossyAt.erase(std::unique(lossyAt.begin(), lossyAt.end()), lossyAt.end());
  m.lossy_handovers = static_cast<int>(lossyAt.size());
  if (m.producer_handovers > 0) {
    m.lossy_fraction = static_cast<double>(m.lossy_handovers) / m.producer_handovers;
  }
  return m;
}

void
write_summary_csv(std::ostream& out, const Scenario& sc, const RunResult& run,
                  const RunMetrics& m)
{
  out << "handover_s,duration_s,seed,rate_hz,producer_handovers,consumer_handovers,"
         "segments,segments_lost,segments_unrecovered,loss_periods,timeout_periods,"
         "relative_distance_periods,lossy_handover_fraction,mean_loss_s,mean_gap_s,"
         "loss_to_gap_pct,query_timeouts,reemissions\n";
  double lossToGap = m.mean_gap_s > 0 ? 100.0 * m.mean_loss_s / m.mean_gap_s : 0.0;
  out << fmt_s(sc.handover_s) << ',' << fmt_s(run.duration_s) << ',' << sc.seed << ','
      << fmt_s(sc.rate_hz) << ',' << m.producer_handovers << ','
      << m.consumer_handovers << ',' << m.segments_total << ',' << m.segments_lost
      << ',' << m.segments_unrecovered << ',' << m.periods.size() << ','
      << m.timeout_periods << ',' << m.distance_periods << ','
      << fmt_frac(m.lossy_fraction) << ',' << fmt_s(m.mean_loss_s) << ','
      << fmt_s(m.mean_gap_s) << ',' << fmt_frac(lossToGap) << ',' << m.query_timeouts
      << ',' << m.reemissions << '\n';
}

void
write_handovers_csv(std::ostream& out, const RunResult& run)
{
  out << "side,t_switch_s,old_plane,old_index,new_plane,new_index,gap_s,new_closer\n";
  for (const auto& h : run.handovers) {
    out << (h.side == HandoverRecord::Side::Producer ? "producer" : "consumer") << ','
        << fmt_s(h.t_switch_s) << ',' << h.oldSat.plane << ',' << h.oldSat.index << ','
        << h.newSat.plane << ',' << h.newSat.index << ',' << fmt_s(h.gap_s) << ','
        << h.new_closer << '\n';
  }
}

void
write_loss_periods_csv(std::ostream& out, const RunMetrics& m)
{
  out << "t_first_loss_ns,t_recovery_ns,length_s,packets_lost,cause,"
         "handover_t_switch_s,new_closer\n";
  for (const auto& p : m.periods) {
    out << p.t_first_loss << ',' << p.t_recovery << ',' << fmt_s(p.length_s()) << ','
        << p.packets_lost << ',' << cause_label(p.timeout_cause) << ','
        << fmt_s(p.handover_t_s) << ',' << p.new_closer << '\n';
  }
}

void
write_segments_csv(std::ostream& out, const RunResult& run)
{
  out << "seq,first_emit_ns,last_emit_ns,attempts,delivered_ns\n";
  for (std::size_t i = 0; i < run.segments.size(); ++i) {
    const auto& s = run.segments[i];
    out << i << ',' << s.firstEmit << ',' << s.lastEmit << ',' << s.attempts << ','
        << s.delivered << '\n';
  }
}

void
write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
  out << "handover_s,producer_handovers,lossy_handover_fraction,loss_periods,"
         "timeout_periods,relative_distance_periods,mean_loss_s,mean_gap_s,"
         "loss_to_gap_pct\n";
  for (const auto& r : rows) {
    const RunMetrics& m = r.metrics;
    double lossToGap = m.mean_gap_s > 0 ? 100.0 * m.mean_loss_s / m.mean_gap_s : 0.0;
    out << fmt_s(r.handover_s) << ',' << m.producer_handovers << ','
        << fmt_frac(m.lossy_fraction) << ',' << m.periods.size() << ','
        << m.timeout_periods << ',' << m.distance_periods << ',' << fmt_s(m.mean_loss_s)
        << ',' << fmt_s(m.mean_gap_s) << ',' << fmt_frac(lossToGap) << '\n';
  }
}

} // namespace leosim
