#include "leosim/runner.hpp"

#include "leosim/node.hpp"
#include "leosim/olc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace leosim {

namespace {

using ndn::FaceId;
using ndn::Name;
using ndn::Node;

// Satellite face layout. The four ISL faces are indexed by grid::Dir.
constexpr FaceId kFaceFore = 0;
constexpr FaceId kFaceAft = 1;
constexpr FaceId kFacePort = 2;
constexpr FaceId kFaceStarboard = 3;
constexpr FaceId kFaceProducerRadio = 4;
constexpr FaceId kFaceConsumerRadio = 5;

Name
gateway_name(const orbit::GroundSite& site)
{
  return Name::fromComponents(olc::to_name_components(olc::encode(site.lat_deg, site.lon_deg)));
}

int
schedule_horizon(const Scenario& sc)
{
  return static_cast<int>(std::ceil(sc.duration_s));
}

void
check_windows(const std::vector<orbit::AccessWindow>& windows, double handover_s,
              const char* side)
{
  for (const auto& w : windows) {
    if (handover_s >= static_cast<double>(w.end_s - w.start_s)) {
      throw ScenarioError(std::string(side) + " access window [" +
                          std::to_string(w.start_s) + ", " + std::to_string(w.end_s) +
                          ") is not longer than the handover margin");
    }
  }
}

// Propagation delay along the path the grid steers a packet over, from
// `from` to `to`, satellites frozen at time t.
double
grid_path_delay(const orbit::Ephemeris& eph, grid::Coord from, grid::Coord to, double t)
{
  grid::Dims dims = eph.dims();
  double delay = 0.0;
  grid::Coord cur = from;
  while (cur != to) {
    grid::Plan plan = grid::disseminate(cur, {to}, dims);
    grid::Coord next = cur;
    for (grid::Dir d : grid::kAllDirs) {
      if (!plan.sets[static_cast<int>(d)].empty()) {
        next = grid::neighbor(cur, d, dims);
        break;
      }
    }
    delay += orbit::propagation_delay(eph.sat_position(cur, t), eph.sat_position(next, t));
    cur = next;
  }
  return delay;
}

} // namespace

double
consumer_recovery_rtt_s(const Scenario& sc, const HandoverRecord& h)
{
  orbit::Ephemeris eph(sc.shell, {sc.producer, sc.consumer});
  double t = h.t_switch_s;
  double up = orbit::propagation_delay(eph.site_position(1, t), eph.sat_position(h.newSat, t));
  double across = grid_path_delay(eph, h.newSat, h.oldSat, t);
  return 2.0 * (up + across);
}

SchedulePreview
preview_schedules(const Scenario& sc)
{
  validate_scenario(sc);
  orbit::Ephemeris eph(sc.shell, {sc.producer, sc.consumer});
  SchedulePreview p;
  int horizon = schedule_horizon(sc);
  try {
    p.producer = orbit::build_schedule(eph, 0, sc.mask_deg, horizon);
    p.consumer = orbit::build_schedule(eph, 1, sc.mask_deg, horizon);
  }
  catch (const std::runtime_error& e) {
    throw ScenarioError(e.what());
  }
  check_windows(p.producer, sc.handover_s, "producer");
  check_windows(p.consumer, 0.0, "consumer");
  return p;
}

RunResult
run_scenario(const Scenario& sc, TraceSink* sink)
{
  validate_scenario(sc);

  orbit::Ephemeris eph(sc.shell, {sc.producer, sc.consumer});
  grid::Dims dims = eph.dims();

  std::vector<orbit::AccessWindow> prodSched, consSched;
  int horizon = schedule_horizon(sc);
  try {
    prodSched = orbit::build_schedule(eph, 0, sc.mask_deg, horizon);
    consSched = orbit::build_schedule(eph, 1, sc.mask_deg, horizon);
  }
  catch (const std::runtime_error& e) {
    throw ScenarioError(e.what());
  }
  check_windows(prodSched, sc.handover_s, "producer");

  sim::Engine engine(sc.seed);

  Name satPrefix(sc.sat_prefix);
  Name contentPrefix(sc.content_prefix);
  Name pgwName = gateway_name(sc.producer);

  // Gateways first: the radio channels need their faces at construction.
  Node pgwNode(engine, "pgw", sc.cs_capacity, sink);
  FaceId pgwAppFace = pgwNode.addFace(ndn::FaceKind::App);
  FaceId pgwRadioFace = pgwNode.addFace(ndn::FaceKind::Ground);
  FaceId producerFace = pgwNode.addFace(ndn::FaceKind::App);

  Node cgwNode(engine, "cgw", sc.cs_capacity, sink);
  FaceId consumerFace = cgwNode.addFace(ndn::FaceKind::App);
  FaceId cgwRadioFace = cgwNode.addFace(ndn::FaceKind::Ground);
  FaceId cgwAppFace = cgwNode.addFace(ndn::FaceKind::App);

  ndn::GroundChannel pgwRadio(engine, eph, sc.ground_bit_rate, 0, pgwNode, pgwRadioFace);
  ndn::GroundChannel cgwRadio(engine, eph, sc.ground_bit_rate, 1, cgwNode, cgwRadioFace);
  pgwNode.bindChannel(pgwRadioFace, &pgwRadio);
  cgwNode.bindChannel(cgwRadioFace, &cgwRadio);

  // Producer gateway: the locator query answerer, the producer itself, and
  // plain unicast routes to both. Hints naming the gateway stop here.
  mobility::PgwApp::Config pgwCfg;
  pgwCfg.gateway = pgwName;
  pgwCfg.satPrefix = satPrefix;
  pgwCfg.schedule = prodSched;
  pgwCfg.handover = secs(sc.handover_s);
  pgwCfg.maxFreshness = secs(sc.freshness_cap_s);
  mobility::PgwApp pgwApp(pgwNode, pgwAppFace, pgwCfg);
  pgwNode.bindApp(pgwAppFace, &pgwApp);

  mobility::ProducerApp::Config prodCfg;
  prodCfg.prefix = contentPrefix;
  prodCfg.freshness = secs(sc.data_freshness_s);
  mobility::ProducerApp producerApp(pgwNode, producerFace, prodCfg);
  pgwNode.bindApp(producerFace, &producerApp);

  ndn::BestRouteStrategy best;
  pgwNode.fib().add(pgwName, pgwAppFace, &best);
  pgwNode.fib().add(contentPrefix, producerFace, &best);
  pgwNode.addRegion(pgwName);

  // Consumer gateway: all outbound Interests pass through the wrap handler.
  mobility::CgwApp::Config cgwCfg;
  cgwCfg.producerGateway = pgwName;
  cgwCfg.satPrefix = satPrefix;
  cgwCfg.producerSite = 0;
  cgwCfg.maskDeg = sc.mask_deg;
  cgwCfg.queryLifetime = secs(sc.interest_lifetime_s);
  mobility::CgwApp cgwApp(cgwNode, cgwAppFace, cgwRadioFace, eph, cgwCfg);
  cgwNode.bindApp(cgwAppFace, &cgwApp);

  ndn::GatewayStrategy cgwStrategy(
      [&cgwApp](Node& n, const ndn::Interest& i) { cgwApp.handleOutbound(n, i); });
  cgwNode.fib().add(contentPrefix, -1, &cgwStrategy);
  cgwNode.fib().add(satPrefix, -1, &cgwStrategy);

  mobility::ConsumerApp::Config consCfg;
  consCfg.prefix = contentPrefix;
  consCfg.rateHz = sc.rate_hz;
  consCfg.lifetime = secs(sc.interest_lifetime_s);
  consCfg.start = secs(sc.start_s);
  consCfg.stop = secs(sc.stop_s < 0 ? sc.duration_s : sc.stop_s);
  mobility::ConsumerApp consumerApp(cgwNode, consumerFace, consCfg);
  cgwNode.bindApp(consumerFace, &consumerApp);

  // The constellation: one node and one grid strategy per satellite, four
  // ISL faces plus one radio face toward each gateway.
  std::size_t satCount = static_cast<std::size_t>(dims.planes) * dims.sats_per_plane;
  std::vector<std::unique_ptr<Node>> sats(satCount);
  std::vector<std::unique_ptr<ndn::GridStrategy>> strategies(satCount);

  auto satIndex = [&](grid::Coord c) {
    return static_cast<std::size_t>(c.plane) * dims.sats_per_plane + c.index;
  };

  for (int p = 0; p < dims.planes; ++p) {
    for (int i = 0; i < dims.sats_per_plane; ++i) {
      grid::Coord c{p, i};
      auto node = std::make_unique<Node>(engine, grid::satellite_name(satPrefix, c).toUri(),
                                         sc.cs_capacity, sink);
      for (int f = 0; f < 4; ++f) {
        node->addFace(ndn::FaceKind::Link);
      }
      node->addFace(ndn::FaceKind::Ground, &pgwRadio);
      node->addFace(ndn::FaceKind::Ground, &cgwRadio);

      auto strategy = std::make_unique<ndn::GridStrategy>(
          dims, c, satPrefix,
          std::array<FaceId, 4>{kFaceFore, kFaceAft, kFacePort, kFaceStarboard});
      strategy->addGateway(pgwName, kFaceProducerRadio, &pgwRadio);
      node->fib().add(satPrefix, -1, strategy.get());

      sats[satIndex(c)] = std::move(node);
      strategies[satIndex(c)] = std::move(strategy);
    }
  }

  // Fore and starboard links; the neighbor's matching face is the opposite
  // direction, covering the whole torus exactly once.
  std::vector<std::unique_ptr<ndn::PointToPointLink>> links;
  links.reserve(satCount * 2);
  for (int p = 0; p < dims.planes; ++p) {
    for (int i = 0; i < dims.sats_per_plane; ++i) {
      grid::Coord a{p, i};
      grid::Coord fore = grid::neighbor(a, grid::Dir::Fore, dims);
      auto inPlane = std::make_unique<ndn::PointToPointLink>(engine, eph, sc.isl_bit_rate);
      inPlane->connect(*sats[satIndex(a)], a, kFaceFore,
                       *sats[satIndex(fore)], fore, kFaceAft);
      sats[satIndex(a)]->bindChannel(kFaceFore, inPlane.get());
      sats[satIndex(fore)]->bindChannel(kFaceAft, inPlane.get());
      links.push_back(std::move(inPlane));

      grid::Coord star = grid::neighbor(a, grid::Dir::Starboard, dims);
      auto crossPlane = std::make_unique<ndn::PointToPointLink>(engine, eph, sc.isl_bit_rate);
      crossPlane->connect(*sats[satIndex(a)], a, kFaceStarboard,
                          *sats[satIndex(star)], star, kFacePort);
      sats[satIndex(a)]->bindChannel(kFaceStarboard, crossPlane.get());
      sats[satIndex(star)]->bindChannel(kFacePort, crossPlane.get());
      links.push_back(std::move(crossPlane));
    }
  }

  // Attachment schedules. The radio retunes and the gateway application
  // learns about it inside one event, so nothing can slip in between.
  for (std::size_t k = 0; k < prodSched.size(); ++k) {
    const auto& w = prodSched[k];
    SimTime t = secs(static_cast<double>(w.start_s));
    engine.at(t, sim::EventClass::Delivery, [&, k] {
      const auto& win = prodSched[k];
      pgwRadio.attach(*sats[satIndex(win.sat)], win.sat, kFaceProducerRadio);
      if (k > 0) {
        pgwApp.onAttachmentChange();
      }
    });
  }
  for (std::size_t k = 0; k < consSched.size(); ++k) {
    const auto& w = consSched[k];
    SimTime t = secs(static_cast<double>(w.start_s));
    engine.at(t, sim::EventClass::Delivery, [&, k] {
      const auto& win = consSched[k];
      cgwRadio.attach(*sats[satIndex(win.sat)], win.sat, kFaceConsumerRadio);
      if (k > 0) {
        cgwApp.onAttachmentChange(consSched[k - 1].sat);
      }
    });
  }

  consumerApp.start();
  engine.run_until(secs(sc.duration_s));

  // Handover records, both sides merged by switch time.
  RunResult result;
  result.duration_s = sc.duration_s;
  result.lifetime = consCfg.lifetime;
  result.period = consumerApp.period();

  auto consumerSatAt = [&](double t) {
    for (const auto& w : consSched) {
      if (t >= w.start_s && t < w.end_s) {
        return w.sat;
      }
    }
    return consSched.back().sat;
  };

  for (std::size_t k = 1; k < prodSched.size(); ++k) {
    double t = prodSched[k].start_s;
    if (t >= sc.duration_s) {
      break;
    }
    HandoverRecord rec;
    rec.side = HandoverRecord::Side::Producer;
    rec.t_switch_s = t;
    rec.oldSat = prodSched[k - 1].sat;
    rec.newSat = prodSched[k].sat;
    rec.gap_s = std::min(static_cast<double>(prodSched[k].end_s), sc.duration_s) - t;

    grid::Coord cas = consumerSatAt(t);
    double up = orbit::propagation_delay(eph.site_position(1, t), eph.sat_position(cas, t));
    double dOld = up + grid_path_delay(eph, cas, rec.oldSat, t);
    double dNew = up + grid_path_delay(eph, cas, rec.newSat, t);
    rec.new_closer = dNew < dOld ? 1 : 0;
    result.handovers.push_back(rec);
  }
  for (std::size_t k = 1; k < consSched.size(); ++k) {
    double t = consSched[k].start_s;
    if (t >= sc.duration_s) {
      break;
    }
    HandoverRecord rec;
    rec.side = HandoverRecord::Side::Consumer;
    rec.t_switch_s = t;
    rec.oldSat = consSched[k - 1].sat;
    rec.newSat = consSched[k].sat;
    rec.gap_s = std::min(static_cast<double>(consSched[k].end_s), sc.duration_s) - t;
    result.handovers.push_back(rec);
  }
  std::stable_sort(result.handovers.begin(), result.handovers.end(),
                   [](const HandoverRecord& a, const HandoverRecord& b) {
                     return a.t_switch_s < b.t_switch_s;
                   });

  result.segments = consumerApp.segments();
  result.queryTimeouts = cgwApp.queryTimeouts;
  result.reemissions = cgwApp.reemissions;
  return result;
}

} // namespace leosim
