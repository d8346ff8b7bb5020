#pragma once

#include "leosim/grid.hpp"
#include "leosim/orbit.hpp"
#include "leosim/packets.hpp"
#include "leosim/simcore.hpp"
#include "leosim/tables.hpp"
#include "leosim/trace.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace leosim::ndn {

class Node;

// Local producer or consumer logic behind an app face.
class Application
{
public:
  virtual ~Application() = default;

  virtual void
  onInterest(const Interest&)
  {
  }

  virtual void
  onData(const Data&)
  {
  }

  // The node's pending entry for this name expired with the app among the
  // requesters.
  virtual void
  onInterestTimeout(const Name&)
  {
  }
};

// Transport a non-app face hands packets to.
class Channel
{
public:
  virtual ~Channel() = default;

  virtual void
  send(Node& from, FaceId fromFace, Packet pkt) = 0;
};

enum class FaceKind { Link, Ground, App };

struct Face {
  FaceKind kind = FaceKind::App;
  Channel* channel = nullptr; // Link and Ground faces
  Application* app = nullptr; // App faces
};

// Decides where an Interest goes once the content store and pending table
// have passed on it.
class Strategy
{
public:
  virtual ~Strategy() = default;

  virtual void
  afterReceiveInterest(Node& node, FaceId inFace, const Interest& interest,
                       const Fib::Route& route) = 0;
};

inline const Name&
packet_name(const Packet& pkt)
{
  return std::visit([](const auto& p) -> const Name& { return p.name; }, pkt);
}

// One forwarder: faces, content store, pending table, forwarding table.
class Node
{
public:
  Node(sim::Engine& engine, std::string id, std::size_t csCapacity,
       TraceSink* sink = nullptr);

  const std::string&
  id() const
  {
    return m_id;
  }

  sim::Engine&
  engine()
  {
    return m_engine;
  }

  FaceId addFace(FaceKind kind, Channel* channel = nullptr, Application* app = nullptr);

  // For channels that need their own face id at construction time.
  void
  bindChannel(FaceId f, Channel* channel)
  {
    m_faces.at(f).channel = channel;
  }

  // Same for applications constructed against an existing face.
  void
  bindApp(FaceId f, Application* app)
  {
    m_faces.at(f).app = app;
  }

  const Face&
  face(FaceId f) const
  {
    return m_faces.at(f);
  }

  Fib&
  fib()
  {
    return m_fib;
  }

  Pit&
  pit()
  {
    return m_pit;
  }

  Cs&
  cs()
  {
    return m_cs;
  }

  // Interests whose hint mentions a name under `region` have arrived: the
  // hint is dropped and forwarding continues on the content name.
  void
  addRegion(Name region)
  {
    m_regions.push_back(std::move(region));
  }

  // Wire-side entry points.
  void receiveInterest(FaceId inFace, Interest interest);
  void receiveData(FaceId inFace, Data data);

  // App-side entry points; packets run through the normal pipeline.
  void
  expressInterest(FaceId appFace, Interest interest)
  {
    receiveInterest(appFace, std::move(interest));
  }

  void
  putData(FaceId appFace, Data data)
  {
    receiveData(appFace, std::move(data));
  }

  // Raw sends: trace, then hand to the face's app or channel.
  void sendInterest(FaceId outFace, const Interest& interest);
  void sendData(FaceId outFace, const Data& data);

  // Observers for mobility logic that mirrors the pending table.
  std::function<void(const Name&)> onPitSatisfied;
  std::function<void(const Name&)> onPitExpired;

  void trace(TraceKind kind, const Name& name, FaceId face, const std::string& aux = {});

private:
  void armPitTimer(const Name& name, SimTime expiry);

  sim::Engine& m_engine;
  std::string m_id;
  TraceSink* m_sink;
  std::vector<Face> m_faces;
  std::vector<Name> m_regions;
  Fib m_fib;
  Pit m_pit;
  Cs m_cs;
};

inline void
deliver_packet(Node& node, FaceId face, Packet&& pkt)
{
  if (auto* interest = std::get_if<Interest>(&pkt)) {
    node.receiveInterest(face, std::move(*interest));
  }
  else {
    node.receiveData(face, std::move(std::get<Data>(pkt)));
  }
}

// Inter-satellite link: full duplex pipe between two fixed satellites with
// per-end serialization queues and light-time propagation taken from the
// ephemeris when the last bit leaves.
class PointToPointLink : public Channel
{
public:
  PointToPointLink(sim::Engine& engine, const orbit::Ephemeris& eph, double bitRate);

  void connect(Node& a, grid::Coord coordA, FaceId faceA,
               Node& b, grid::Coord coordB, FaceId faceB);

  void send(Node& from, FaceId fromFace, Packet pkt) override;

private:
  struct End {
    Node* node = nullptr;
    grid::Coord coord;
    FaceId face = -1;
    SimTime busy = 0;
  };

  sim::Engine& m_engine;
  const orbit::Ephemeris& m_eph;
  double m_rate;
  std::array<End, 2> m_ends;
};

// Radio between one gateway and whichever satellite currently serves it.
// Retuning is instant: an uplink transmission that began before the switch
// still reaches the old satellite, but anything later addressed to it and
// every downlink packet still in the air is lost.
class GroundChannel : public Channel
{
public:
  GroundChannel(sim::Engine& engine, const orbit::Ephemeris& eph, double bitRate,
                std::size_t site, Node& gateway, FaceId gatewayFace);

  void attach(Node& sat, grid::Coord coord, FaceId satFace);

  bool
  serves(const Node& sat) const
  {
    return m_sat == &sat;
  }

  Node*
  currentSat() const
  {
    return m_sat;
  }

  grid::Coord
  currentCoord() const
  {
    return m_coord;
  }

  void send(Node& from, FaceId fromFace, Packet pkt) override;

private:
  sim::Engine& m_engine;
  const orbit::Ephemeris& m_eph;
  double m_rate;
  std::size_t m_site;
  Node* m_gateway;
  FaceId m_gwFace;
  Node* m_sat = nullptr;
  grid::Coord m_coord;
  FaceId m_satFace = -1;
  std::uint64_t m_epoch = 0;
  SimTime m_lastFlip = 0;
  SimTime m_busyUp = 0;
  SimTime m_busyDown = 0;
};

// Forwards out the route's fixed face; the plain unicast strategy.
class BestRouteStrategy : public Strategy
{
public:
  void
  afterReceiveInterest(Node& node, FaceId, const Interest& interest,
                       const Fib::Route& route) override
  {
    node.sendInterest(route.face, interest);
  }
};

// Gateway upstream handler: every Interest leaving the gateway goes through
// the registered callback, which attaches a delegation hint if the Interest
// does not already carry one and pushes it up the radio.
class GatewayStrategy : public Strategy
{
public:
  using Handler = std::function<void(Node&, const Interest&)>;

  explicit GatewayStrategy(Handler handler)
    : m_handler(std::move(handler))
  {
  }

  void
  afterReceiveInterest(Node& node, FaceId, const Interest& interest,
                       const Fib::Route&) override
  {
    m_handler(node, interest);
  }

private:
  Handler m_handler;
};

// Satellite forwarding: consume the hint's delegations, walking each one
// strictly closer to its satellite over the grid, and hand the Interest
// down the radio wherever a delegation names this satellite and the trailing
// gateway is attached here.
class GridStrategy : public Strategy
{
public:
  GridStrategy(grid::Dims dims, grid::Coord self, Name satPrefix,
               std::array<FaceId, 4> islFaces);

  void addGateway(const Name& gateway, FaceId groundFace, GroundChannel* channel);

  void
  afterReceiveInterest(Node& node, FaceId inFace, const Interest& interest,
                       const Fib::Route& route) override;

private:
  void deliverTail(Node& node, FaceId inFace, const Interest& interest,
                   const std::vector<Name>& tail);

  struct GatewayLink {
    FaceId face = -1;
    GroundChannel* channel = nullptr;
  };

  grid::Dims m_dims;
  grid::Coord m_self;
  Name m_satPrefix;
  std::array<FaceId, 4> m_isl;
  std::map<Name, GatewayLink> m_gateways;
};

} // namespace leosim::ndn
