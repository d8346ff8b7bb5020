#pragma once

#include "leosim/node.hpp"
#include "leosim/olc.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leosim::mobility {

// Link object payload: one delegation URI per line, most preferred first.
// The last entry is the gateway's own name so a consumer can hand the
// Interest down once the grid part of the hint is consumed.
std::string encode_delegations(const std::vector<ndn::Name>& delegations);
std::vector<ndn::Name> decode_delegations(const std::string& payload);

// Producer-side gateway application. Owns the locator name and answers
// queries under it with a Link object listing the satellites that can hand
// Interests down to this gateway. Outside a handover that is the serving
// satellite alone and the object stays valid until the next switch comes
// within the handover margin; during the final margin before a switch the
// object lists the leaving and the arriving satellite and only stays valid
// for that margin.
class PgwApp : public ndn::Application
{
public:
  struct Config {
    ndn::Name gateway;
    ndn::Name satPrefix{"/lsat"};
    std::vector<orbit::AccessWindow> schedule;
    SimTime handover = 0;
    SimTime maxFreshness = 30 * kNsPerSec;
    SimTime minFreshness = kNsPerMs;
  };

  PgwApp(ndn::Node& node, ndn::FaceId appFace, Config cfg);

  void onInterest(const ndn::Interest& interest) override;

  // The run loop calls this when the gateway's radio retunes.
  void onAttachmentChange();

  std::vector<ndn::Name> delegations(SimTime now) const;
  SimTime freshness(SimTime now) const;

  int answered = 0;

private:
  bool inHandover(SimTime now) const;
  SimTime switchTime() const;

  ndn::Node& m_node;
  ndn::FaceId m_face;
  Config m_cfg;
  std::size_t m_index = 0;
};

// Consumer-side gateway application. Keeps the producer gateway's Link
// object cached and stamps its delegations onto outbound Interests; when the
// cache runs out it asks again, falling back to every satellite the producer
// site can currently see if even the last known list went unanswered. Also
// repairs this gateway's own radio switches: Interests still pending from
// before a switch are re-sent toward the satellite that served the gateway
// when they left, where the missed Data waits in a cache or pending entry.
class CgwApp : public ndn::Application
{
public:
  struct Config {
    ndn::Name producerGateway;
    std::string accessComponent = "access";
    ndn::Name satPrefix{"/lsat"};
    std::size_t producerSite = 0;
    double maskDeg = 25.0;
    SimTime queryLifetime = kNsPerSec;
  };

  CgwApp(ndn::Node& node, ndn::FaceId appFace, ndn::FaceId groundFace,
         const orbit::Ephemeris& eph, Config cfg);

  // GatewayStrategy handler: every Interest leaving the gateway.
  void handleOutbound(ndn::Node& node, const ndn::Interest& interest);

  void onData(const ndn::Data& data) override;
  void onInterestTimeout(const ndn::Name& name) override;

  // The run loop calls this right after the radio retunes; `previous` is
  // the satellite it was tuned to before, if any.
  void onAttachmentChange(std::optional<grid::Coord> previous);

  const ndn::Name&
  accessName() const
  {
    return m_accessName;
  }

  std::size_t
  pendingCount() const
  {
    return m_pending.size();
  }

  // Observable behavior, read by the run summaries.
  std::vector<SimTime> queryTimeouts;
  std::vector<SimTime> reemissions;
  int queriesSent = 0;

private:
  void sendQuery(std::vector<ndn::Name> hint);
  std::vector<ndn::Name> wrapHint();
  std::vector<ndn::Name> visibleHint() const;

  ndn::Node& m_node;
  ndn::FaceId m_appFace;
  ndn::FaceId m_groundFace;
  const orbit::Ephemeris& m_eph;
  Config m_cfg;
  ndn::Name m_accessName;

  std::optional<std::vector<ndn::Name>> m_cached;
  SimTime m_staleAt = 0;
  std::uint64_t m_generation = 0;
  std::vector<ndn::Name> m_lastKnown;
  bool m_queryInflight = false;
  std::map<ndn::Name, SimTime> m_pending; // name -> first emission
};

// Fixed-rate requester: one numbered segment per tick, retried on timeout
// until it arrives. Keeps the full per-segment history the loss metrics are
// computed from.
class ConsumerApp : public ndn::Application
{
public:
  struct Config {
    ndn::Name prefix{"/video"};
    double rateHz = 100.0;
    SimTime lifetime = kNsPerSec;
    SimTime start = 0;
    SimTime stop = 0;
  };

  struct Segment {
    SimTime firstEmit = -1;
    SimTime lastEmit = -1;
    int attempts = 0;
    SimTime delivered = -1;
  };

  ConsumerApp(ndn::Node& node, ndn::FaceId appFace, Config cfg);

  // Schedules the emission chain; call once before the run.
  void start();

  void onData(const ndn::Data& data) override;
  void onInterestTimeout(const ndn::Name& name) override;

  const std::vector<Segment>&
  segments() const
  {
    return m_segments;
  }

  SimTime
  period() const
  {
    return m_period;
  }

private:
  void emitNext();
  void express(std::size_t seq);
  std::optional<std::size_t> parseSeq(const ndn::Name& name) const;

  ndn::Node& m_node;
  ndn::FaceId m_face;
  Config m_cfg;
  SimTime m_period;
  std::vector<Segment> m_segments;
};

// Answers every Interest under its prefix immediately.
class ProducerApp : public ndn::Application
{
public:
  struct Config {
    ndn::Name prefix{"/video"};
    SimTime freshness = 10 * kNsPerSec;
  };

  ProducerApp(ndn::Node& node, ndn::FaceId appFace, Config cfg);

  void onInterest(const ndn::Interest& interest) override;

  int served = 0;

private:
  ndn::Node& m_node;
  ndn::FaceId m_face;
  Config m_cfg;
};

} // namespace leosim::mobility
