#include "leosim/mobility.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace leosim::mobility {

using ndn::Data;
using ndn::Interest;
using ndn::Name;

std::string
encode_delegations(const std::vector<Name>& delegations)
{
  std::string out;
  for (const Name& d : delegations) {
    if (!out.empty()) {
      out += '\n';
    }
    out += d.toUri();
  }
  return out;
}

std::vector<Name>
decode_delegations(const std::string& payload)
{
  std::vector<Name> out;
  std::istringstream in(payload);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      out.emplace_back(line);
    }
  }
  return out;
}

PgwApp::PgwApp(ndn::Node& node, ndn::FaceId appFace, Config cfg)
  : m_node(node)
  , m_face(appFace)
  , m_cfg(std::move(cfg))
{
}

SimTime
PgwApp::switchTime() const
{
  return static_cast<SimTime>(m_cfg.schedule.at(m_index).end_s) * kNsPerSec;
}

bool
PgwApp::inHandover(SimTime now) const
{
  return m_cfg.handover > 0 && m_index + 1 < m_cfg.schedule.size()
         && now >= switchTime() - m_cfg.handover;
}

std::vector<Name>
PgwApp::delegations(SimTime now) const
{
  std::vector<Name> out;
  out.push_back(grid::satellite_name(m_cfg.satPrefix, m_cfg.schedule.at(m_index).sat));
  if (inHandover(now)) {
    out.push_back(grid::satellite_name(m_cfg.satPrefix, m_cfg.schedule.at(m_index + 1).sat));
  }
  out.push_back(m_cfg.gateway);
  return out;
}

SimTime
PgwApp::freshness(SimTime now) const
{
  if (inHandover(now)) {
    return std::max(m_cfg.handover, m_cfg.minFreshness);
  }
  SimTime remaining = switchTime() - now;
  if (m_index + 1 < m_cfg.schedule.size()) {
    // Expire exactly when the two-satellite handover object takes over.
    remaining -= m_cfg.handover;
  }
  return std::clamp(remaining, m_cfg.minFreshness, m_cfg.maxFreshness);
}

void
PgwApp::onInterest(const Interest& interest)
{
  if (!olc::name_matches_gateway(interest.name, m_cfg.gateway)) {
    m_node.trace(TraceKind::Drop, interest.name, m_face, "not-our-locator");
    return;
  }
  SimTime now = m_node.engine().now();
  m_node.putData(m_face, Data{interest.name, freshness(now),
                              encode_delegations(delegations(now))});
  ++answered;
}

void
PgwApp::onAttachmentChange()
{
  if (m_index + 1 < m_cfg.schedule.size()) {
    ++m_index;
  }
}

CgwApp::CgwApp(ndn::Node& node, ndn::FaceId appFace, ndn::FaceId groundFace,
               const orbit::Ephemeris& eph, Config cfg)
  : m_node(node)
  , m_appFace(appFace)
  , m_groundFace(groundFace)
  , m_eph(eph)
  , m_cfg(std::move(cfg))
{
  m_accessName = m_cfg.producerGateway;
  m_accessName.append(m_cfg.accessComponent);

  m_node.onPitSatisfied = [this](const Name& n) { m_pending.erase(n); };
  m_node.onPitExpired = [this](const Name& n) { m_pending.erase(n); };

  // First query once the radio has been tuned for the first time.
  m_node.engine().at(0, sim::EventClass::Timer, [this] {
    if (!m_cached && !m_queryInflight) {
      m_lastKnown = visibleHint();
      sendQuery(m_lastKnown);
    }
  });
}

std::vector<Name>
CgwApp::visibleHint() const
{
  double t = to_secs(m_node.engine().now());
  std::vector<Name> hint;
  for (grid::Coord c : m_eph.visible_set(m_cfg.producerSite, t, m_cfg.maskDeg)) {
    hint.push_back(grid::satellite_name(m_cfg.satPrefix, c));
  }
  hint.push_back(m_cfg.producerGateway);
  return hint;
}

void
CgwApp::sendQuery(std::vector<Name> hint)
{
  ++queriesSent;
  m_queryInflight = true;
  m_node.expressInterest(m_appFace, Interest{m_accessName, std::move(hint),
                                             m_node.engine().rand64(),
                                             m_cfg.queryLifetime});
}

std::vector<Name>
CgwApp::wrapHint()
{
  SimTime now = m_node.engine().now();
  if (m_cached && now < m_staleAt) {
    return *m_cached;
  }
  if (m_queryInflight) {
    return m_lastKnown;
  }
  // Nothing cached and nothing on the way: flood the producer site's whole
  // visible set and ask for a fresh object alongside.
  m_lastKnown = visibleHint();
  sendQuery(m_lastKnown);
  return m_lastKnown;
}

void
CgwApp::handleOutbound(ndn::Node& node, const Interest& interest)
{
  if (!interest.hint.empty()) {
    node.sendInterest(m_groundFace, interest);
    return;
  }
  Interest copy = interest;
  copy.hint = wrapHint();
  m_pending.emplace(interest.name, node.engine().now());
  node.sendInterest(m_groundFace, copy);
}

void
CgwApp::onData(const Data& data)
{
  if (data.name != m_accessName) {
    return;
  }
  m_queryInflight = false;
  std::vector<Name> delegations = decode_delegations(data.payload);
  if (delegations.empty()) {
    return;
  }
  m_lastKnown = delegations;
  m_cached = std::move(delegations);
  m_staleAt = m_node.engine().now() + data.freshness;

  std::uint64_t gen = ++m_generation;
  m_node.engine().at(m_staleAt, sim::EventClass::Timer, [this, gen] {
    if (gen != m_generation || m_queryInflight) {
      return; // superseded by a newer object or an already running query
    }
    if (m_cached) {
      m_lastKnown = *m_cached;
      m_cached.reset();
    }
    sendQuery(m_lastKnown);
  });
}

void
CgwApp::onInterestTimeout(const Name& name)
{
  if (name != m_accessName) {
    return;
  }
  m_queryInflight = false;
  queryTimeouts.push_back(m_node.engine().now());
  m_lastKnown = visibleHint();
  sendQuery(m_lastKnown);
}

void
CgwApp::onAttachmentChange(std::optional<grid::Coord> previous)
{
  if (!previous) {
    return;
  }
  // Interests that left before the switch would be answered through the old
  // satellite; ask it directly, bypassing the pending table so the original
  // entries keep pointing at the requesters.
  Name oldSat = grid::satellite_name(m_cfg.satPrefix, *previous);
  for (const auto& [name, firstEmit] : m_pending) {
    (void)firstEmit;
    reemissions.push_back(m_node.engine().now());
    m_node.sendInterest(m_groundFace, Interest{name, {oldSat},
                                               m_node.engine().rand64(),
                                               m_cfg.queryLifetime});
  }
}

ConsumerApp::ConsumerApp(ndn::Node& node, ndn::FaceId appFace, Config cfg)
  : m_node(node)
  , m_face(appFace)
  , m_cfg(std::move(cfg))
  , m_period(secs(1.0 / m_cfg.rateHz))
{
}

void
ConsumerApp::start()
{
  m_node.engine().at(m_cfg.start, sim::EventClass::Timer, [this] { emitNext(); });
}

void
ConsumerApp::emitNext()
{
  SimTime now = m_node.engine().now();
  if (now >= m_cfg.stop) {
    return;
  }
  std::size_t seq = m_segments.size();
  m_segments.push_back(Segment{});
  express(seq);
  m_node.engine().at(m_cfg.start + static_cast<SimTime>(seq + 1) * m_period,
                     sim::EventClass::Timer, [this] { emitNext(); });
}

void
ConsumerApp::express(std::size_t seq)
{
  Segment& s = m_segments.at(seq);
  SimTime now = m_node.engine().now();
  if (s.firstEmit < 0) {
    s.firstEmit = now;
  }
  s.lastEmit = now;
  ++s.attempts;

  Name name = m_cfg.prefix;
  name.append(std::to_string(seq));
  m_node.expressInterest(m_face, Interest{name, {}, m_node.engine().rand64(),
                                          m_cfg.lifetime});
}

std::optional<std::size_t>
ConsumerApp::parseSeq(const Name& name) const
{
  if (name.size() != m_cfg.prefix.size() + 1 || !m_cfg.prefix.isPrefixOf(name)) {
    return std::nullopt;
  }
  const std::string& comp = name.at(name.size() - 1);
  std::size_t seq = 0;
  auto [ptr, ec] = std::from_chars(comp.data(), comp.data() + comp.size(), seq);
  if (ec != std::errc() || ptr != comp.data() + comp.size() || seq >= m_segments.size()) {
    return std::nullopt;
  }
  return seq;
}

void
ConsumerApp::onData(const Data& data)
{
  if (auto seq = parseSeq(data.name)) {
    Segment& s = m_segments[*seq];
    if (s.delivered < 0) {
      s.delivered = m_node.engine().now();
    }
  }
}

void
ConsumerApp::onInterestTimeout(const Name& name)
{
  if (auto seq = parseSeq(name)) {
    if (m_segments[*seq].delivered < 0) {
      express(*seq);
    }
  }
}

ProducerApp::ProducerApp(ndn::Node& node, ndn::FaceId appFace, Config cfg)
  : m_node(node)
  , m_face(appFace)
  , m_cfg(std::move(cfg))
{
}

void
ProducerApp::onInterest(const Interest& interest)
{
  if (!m_cfg.prefix.isPrefixOf(interest.name)) {
    m_node.trace(TraceKind::Drop, interest.name, m_face, "wrong-prefix");
    return;
  }
  m_node.putData(m_face, Data{interest.name, m_cfg.freshness, "segment"});
  ++served;
}

} // namespace leosim::mobility
