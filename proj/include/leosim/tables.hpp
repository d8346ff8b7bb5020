#pragma once

#include "leosim/packets.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace leosim::ndn {

using FaceId = int;

// Pending Interest table. One entry per name; entries remember every face
// an Interest arrived on so returning Data fans out to all of them.
class Pit
{
public:
  struct Entry {
    std::vector<FaceId> inFaces; // unique, in arrival order
    std::set<std::uint64_t> nonces;
    SimTime expiry = 0;
  };

  enum class InsertOutcome {
    New,        // first Interest for this name: forward it
    Aggregated, // pending, a new downstream face joined: do not forward
    Retransmit, // pending, same face asking again: forward it again
    Loop,       // nonce already seen: drop
  };

  InsertOutcome
  insert(const Interest& interest, FaceId inFace, SimTime now)
  {
    auto it = m_entries.find(interest.name);
    if (it != m_entries.end() && it->second.expiry <= now) {
      // expired entry whose timer has not swept it yet
      m_entries.erase(it);
      it = m_entries.end();
    }
    if (it == m_entries.end()) {
      Entry& e = m_entries[interest.name];
      e.nonces.insert(interest.nonce);
      e.inFaces.push_back(inFace);
      e.expiry = now + interest.lifetime;
      return InsertOutcome::New;
    }
    Entry& e = it->second;
    if (e.nonces.count(interest.nonce)) {
      return InsertOutcome::Loop;
    }
    e.nonces.insert(interest.nonce);
    e.expiry = std::max(e.expiry, now + interest.lifetime);
    if (std::find(e.inFaces.begin(), e.inFaces.end(), inFace) == e.inFaces.end()) {
      e.inFaces.push_back(inFace);
      return InsertOutcome::Aggregated;
    }
    return InsertOutcome::Retransmit;
  }

  Entry*
  find(const Name& name)
  {
    auto it = m_entries.find(name);
    return it == m_entries.end() ? nullptr : &it->second;
  }

  void
  erase(const Name& name)
  {
    m_entries.erase(name);
  }

  std::size_t
  size() const
  {
    return m_entries.size();
  }

private:
  std::map<Name, Entry> m_entries;
};

// Content store with least-recently-used replacement. Lookups only return
// entries that are still fresh (strictly before their stale time); stale
// entries linger until the LRU sweep pushes them out.
class Cs
{
public:
  explicit Cs(std::size_t capacity)
    : m_capacity(capacity)
  {
  }

  void
  insert(const Data& data, SimTime now)
  {
    if (m_capacity == 0) {
      return;
    }
    auto it = m_index.find(data.name);
    if (it != m_index.end()) {
      m_lru.erase(it->second);
      m_index.erase(it);
    }
    m_lru.push_front(Slot{data, now + data.freshness});
    m_index[data.name] = m_lru.begin();
    if (m_lru.size() > m_capacity) {
      m_index.erase(m_lru.back().data.name);
      m_lru.pop_back();
    }
  }

  // Fresh hit moves the entry to the front and returns a copy carrying the
  // freshness that is still left, so downstream caches cannot keep the
  // object alive past its original stale time.
  std::optional<Data>
  find(const Name& name, SimTime now)
  {
    auto it = m_index.find(name);
    if (it == m_index.end()) {
      return std::nullopt;
    }
    if (now >= it->second->staleAt) {
      return std::nullopt;
    }
    m_lru.splice(m_lru.begin(), m_lru, it->second);
    Data out = m_lru.front().data;
    out.freshness = m_lru.front().staleAt - now;
    return out;
  }

  std::size_t
  size() const
  {
    return m_lru.size();
  }

private:
  struct Slot {
    Data data;
    SimTime staleAt = 0;
  };

  std::size_t m_capacity;
  std::list<Slot> m_lru;
  std::map<Name, std::list<Slot>::iterator> m_index;
};

class Strategy;

// Forwarding table: longest prefix match from a name prefix to an outgoing
// face and the strategy that decides what to do with the match.
class Fib
{
public:
  struct Route {
    Name prefix;
    FaceId face = -1; // meaningful only to strategies that use a fixed face
    Strategy* strategy = nullptr;
  };

  void
  add(const Name& prefix, FaceId face, Strategy* strategy)
  {
    m_routes[prefix] = Route{prefix, face, strategy};
  }

  const Route*
  lpm(const Name& name) const
  {
    for (std::size_t len = name.size() + 1; len-- > 0;) {
      auto it = m_routes.find(name.prefix(len));
      if (it != m_routes.end()) {
        return &it->second;
      }
    }
    return nullptr;
  }

private:
  std::map<Name, Route> m_routes;
};

} // namespace leosim::ndn
