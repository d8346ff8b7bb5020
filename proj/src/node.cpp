#include "leosim/node.hpp"

namespace leosim::ndn {

Node::Node(sim::Engine& engine, std::string id, std::size_t csCapacity, TraceSink* sink)
  : m_engine(engine)
  , m_id(std::move(id))
  , m_sink(sink)
  , m_cs(csCapacity)
{
}

FaceId
Node::addFace(FaceKind kind, Channel* channel, Application* app)
{
  m_faces.push_back(Face{kind, channel, app});
  return static_cast<FaceId>(m_faces.size() - 1);
}

void
Node::trace(TraceKind kind, const Name& name, FaceId face, const std::string& aux)
{
  if (m_sink != nullptr) {
    m_sink->record(m_engine.now(), m_id, kind, name, face, aux);
  }
}

void
Node::receiveInterest(FaceId inFace, Interest interest)
{
  trace(TraceKind::InterestRecv, interest.name, inFace);

  if (!interest.hint.empty() && !m_regions.empty()) {
    bool arrived = false;
    for (const Name& delegation : interest.hint) {
      for (const Name& region : m_regions) {
        if (region == delegation || region.isPrefixOf(delegation)) {
          arrived = true;
          break;
        }
      }
      if (arrived) {
        break;
      }
    }
    if (arrived) {
      interest.hint.clear();
    }
  }

  if (auto cached = m_cs.find(interest.name, m_engine.now())) {
    trace(TraceKind::CsHit, interest.name, inFace);
    sendData(inFace, *cached);
    return;
  }

  auto outcome = m_pit.insert(interest, inFace, m_engine.now());
  if (outcome == Pit::InsertOutcome::Loop) {
    trace(TraceKind::Drop, interest.name, inFace, "duplicate-nonce");
    return;
  }
  armPitTimer(interest.name, m_pit.find(interest.name)->expiry);
  if (outcome == Pit::InsertOutcome::Aggregated) {
    return;
  }

  const Name& key = interest.hint.empty() ? interest.name : interest.hint.front();
  const Fib::Route* route = m_fib.lpm(key);
  if (route == nullptr) {
    trace(TraceKind::Drop, interest.name, inFace, "no-route");
    return;
  }
  route->strategy->afterReceiveInterest(*this, inFace, interest, *route);
}

void
Node::receiveData(FaceId inFace, Data data)
{
  trace(TraceKind::DataRecv, data.name, inFace);

  Pit::Entry* entry = m_pit.find(data.name);
  if (entry == nullptr) {
    trace(TraceKind::Drop, data.name, inFace, "unsolicited");
    return;
  }

  std::vector<FaceId> downstream = entry->inFaces;
  m_pit.erase(data.name);
  m_cs.insert(data, m_engine.now());
  for (FaceId f : downstream) {
    if (f != inFace) {
      sendData(f, data);
    }
  }
  if (onPitSatisfied) {
    onPitSatisfied(data.name);
  }
}

void
Node::sendInterest(FaceId outFace, const Interest& interest)
{
  trace(TraceKind::InterestSend, interest.name, outFace);
  Face& f = m_faces.at(outFace);
  if (f.kind == FaceKind::App) {
    if (f.app != nullptr) {
      f.app->onInterest(interest);
    }
    return;
  }
  if (f.channel != nullptr) {
    f.channel->send(*this, outFace, Packet{interest});
  }
}

void
Node::sendData(FaceId outFace, const Data& data)
{
  trace(TraceKind::DataSend, data.name, outFace);
  Face& f = m_faces.at(outFace);
  if (f.kind == FaceKind::App) {
    if (f.app != nullptr) {
      f.app->onData(data);
    }
    return;
  }
  if (f.channel != nullptr) {
    f.channel->send(*this, outFace, Packet{data});
  }
}

void
Node::armPitTimer(const Name& name, SimTime expiry)
{
  m_engine.at(expiry, sim::EventClass::Timer, [this, name] {
    Pit::Entry* entry = m_pit.find(name);
    if (entry == nullptr || entry->expiry > m_engine.now()) {
      return; // already satisfied, or the entry was extended since
    }
    std::vector<FaceId> requesters = entry->inFaces;
    m_pit.erase(name);
    trace(TraceKind::PitExpire, name, -1);
    if (onPitExpired) {
      onPitExpired(name);
    }
    for (FaceId f : requesters) {
      const Face& fc = m_faces.at(f);
      if (fc.kind == FaceKind::App && fc.app != nullptr) {
        fc.app->onInterestTimeout(name);
      }
    }
  });
}

PointToPointLink::PointToPointLink(sim::Engine& engine, const orbit::Ephemeris& eph,
                                   double bitRate)
  : m_engine(engine)
  , m_eph(eph)
  , m_rate(bitRate)
{
}

void
PointToPointLink::connect(Node& a, grid::Coord coordA, FaceId faceA,
                          Node& b, grid::Coord coordB, FaceId faceB)
{
  m_ends[0] = End{&a, coordA, faceA, m_engine.now()};
  m_ends[1] = End{&b, coordB, faceB, m_engine.now()};
}

void
PointToPointLink::send(Node& from, FaceId fromFace, Packet pkt)
{
  int src = (m_ends[0].node == &from && m_ends[0].face == fromFace) ? 0 : 1;
  End& tx = m_ends[src];
  End& rx = m_ends[1 - src];

  SimTime ser = secs(static_cast<double>(wire_size(pkt)) * 8.0 / m_rate);
  SimTime departure = std::max(m_engine.now(), tx.busy);
  tx.busy = departure + ser;

  double t = to_secs(tx.busy);
  double prop = orbit::propagation_delay(m_eph.sat_position(tx.coord, t),
                                         m_eph.sat_position(rx.coord, t));
  SimTime arrival = tx.busy + secs(prop);

  Node* dst = rx.node;
  FaceId dstFace = rx.face;
  m_engine.at(arrival, sim::EventClass::Delivery, [dst, dstFace, pkt = std::move(pkt)]() mutable {
    deliver_packet(*dst, dstFace, std::move(pkt));
  });
}

GroundChannel::GroundChannel(sim::Engine& engine, const orbit::Ephemeris& eph,
                             double bitRate, std::size_t site, Node& gateway,
                             FaceId gatewayFace)
  : m_engine(engine)
  , m_eph(eph)
  , m_rate(bitRate)
  , m_site(site)
  , m_gateway(&gateway)
  , m_gwFace(gatewayFace)
{
}

void
GroundChannel::attach(Node& sat, grid::Coord coord, FaceId satFace)
{
  m_sat = &sat;
  m_coord = coord;
  m_satFace = satFace;
  ++m_epoch;
  m_lastFlip = m_engine.now();
  m_busyUp = m_engine.now();
  m_busyDown = m_engine.now();
}

void
GroundChannel::send(Node& from, FaceId fromFace, Packet pkt)
{
  SimTime ser = secs(static_cast<double>(wire_size(pkt)) * 8.0 / m_rate);

  if (&from == m_gateway) {
    // Uplink. Remember the target at send time: a transmission that starts
    // before a retune still reaches the satellite it was aimed at.
    SimTime departure = std::max(m_engine.now(), m_busyUp);
    m_busyUp = departure + ser;
    double t = to_secs(m_busyUp);
    double prop = orbit::propagation_delay(m_eph.site_position(m_site, t),
                                           m_eph.sat_position(m_coord, t));
    SimTime arrival = m_busyUp + secs(prop);

    Node* sat = m_sat;
    FaceId satFace = m_satFace;
    std::uint64_t epoch = m_epoch;
    m_engine.at(arrival, sim::EventClass::Delivery,
                [this, sat, satFace, epoch, departure, pkt = std::move(pkt)]() mutable {
      if (epoch == m_epoch || (epoch + 1 == m_epoch && departure <= m_lastFlip)) {
        deliver_packet(*sat, satFace, std::move(pkt));
      }
      else {
        m_gateway->trace(TraceKind::Drop, packet_name(pkt), m_gwFace, "radio-flip");
      }
    });
    return;
  }

  // Downlink. Only the currently serving satellite may transmit, and the
  // gateway antenna stops listening to it the instant it retunes, so
  // anything still in the air at a switch is lost.
  if (&from != m_sat || fromFace != m_satFace) {
    from.trace(TraceKind::Drop, packet_name(pkt), fromFace, "detached");
    return;
  }

  SimTime departure = std::max(m_engine.now(), m_busyDown);
  m_busyDown = departure + ser;
  double t = to_secs(m_busyDown);
  double prop = orbit::propagation_delay(m_eph.sat_position(m_coord, t),
                                         m_eph.site_position(m_site, t));
  SimTime arrival = m_busyDown + secs(prop);

  std::uint64_t epoch = m_epoch;
  m_engine.at(arrival, sim::EventClass::Delivery,
              [this, epoch, pkt = std::move(pkt)]() mutable {
    if (epoch == m_epoch) {
      deliver_packet(*m_gateway, m_gwFace, std::move(pkt));
    }
    else {
      m_gateway->trace(TraceKind::Drop, packet_name(pkt), m_gwFace, "radio-flip");
    }
  });
}

GridStrategy::GridStrategy(grid::Dims dims, grid::Coord self, Name satPrefix,
                           std::array<FaceId, 4> islFaces)
  : m_dims(dims)
  , m_self(self)
  , m_satPrefix(std::move(satPrefix))
  , m_isl(islFaces)
{
}

void
GridStrategy::addGateway(const Name& gateway, FaceId groundFace, GroundChannel* channel)
{
  m_gateways[gateway] = GatewayLink{groundFace, channel};
}

void
GridStrategy::deliverTail(Node& node, FaceId inFace, const Interest& interest,
                          const std::vector<Name>& tail)
{
  if (tail.empty()) {
    node.trace(TraceKind::Drop, interest.name, inFace, "hint-exhausted");
    return;
  }
  auto it = m_gateways.find(tail.front());
  if (it == m_gateways.end()) {
    node.trace(TraceKind::Drop, interest.name, inFace, "unknown-gateway");
    return;
  }
  if (!it->second.channel->serves(node)) {
    node.trace(TraceKind::Drop, interest.name, inFace, "gateway-not-attached");
    return;
  }
  node.sendInterest(it->second.face, interest);
}

void
GridStrategy::afterReceiveInterest(Node& node, FaceId inFace, const Interest& interest,
                                   const Fib::Route&)
{
  if (interest.hint.empty()) {
    node.trace(TraceKind::Drop, interest.name, inFace, "no-hint");
    return;
  }

  std::vector<grid::Coord> coords;
  std::vector<Name> tail;
  for (const Name& delegation : interest.hint) {
    if (auto c = grid::parse_satellite_name(m_satPrefix, delegation, m_dims)) {
      coords.push_back(*c);
    }
    else {
      tail.push_back(delegation);
    }
  }

  if (coords.empty()) {
    deliverTail(node, inFace, interest, tail);
    return;
  }

  grid::Plan plan = grid::disseminate(m_self, coords, m_dims);
  if (plan.deliver_local) {
    deliverTail(node, inFace, interest, tail);
  }

  auto hints = grid::plan_to_hints(plan, m_satPrefix,
                                   tail.empty() ? std::nullopt
                                                : std::optional<Name>(tail.front()));
  for (auto& [dir, names] : hints) {
    for (std::size_t i = 1; i < tail.size(); ++i) {
      names.push_back(tail[i]);
    }
    Interest copy = interest;
    copy.hint = std::move(names);
    node.sendInterest(m_isl[static_cast<int>(dir)], copy);
  }
}

} // namespace leosim::ndn
