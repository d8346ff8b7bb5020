#pragma once

#include "leosim/time.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace leosim::sim {

// Events at the same instant run deliveries first, then timers. A Data
// packet arriving exactly when the matching table entry would expire must
// still be delivered, so expiry sweeps go in the later class.
enum class EventClass : int {
  Delivery = 0,
  Timer = 1,
};

// Deterministic discrete event engine. Events run in (time, class,
// insertion order); the only randomness is the seeded generator exposed
// through rand64(), so equal seeds replay identical runs.
class Engine
{
public:
  explicit Engine(std::uint64_t seed)
    : m_rng(seed)
  {
  }

  SimTime
  now() const
  {
    return m_now;
  }

  void
  at(SimTime t, EventClass cls, std::function<void()> fn);

  void
  after(SimTime delay, EventClass cls, std::function<void()> fn)
  {
    at(m_now + delay, cls, std::move(fn));
  }

  // Runs every event with time <= horizon, then parks the clock there.
  // Events scheduled beyond the horizon stay queued for a later call.
  void
  run_until(SimTime horizon);

  std::uint64_t
  rand64()
  {
    return m_rng();
  }

  std::size_t
  pending() const
  {
    return m_heap.size();
  }

private:
  struct Ev {
    SimTime t;
    int cls;
    std::uint64_t seq;
    std::function<void()> fn;
  };

  // std::push_heap builds a max-heap, so "greater key" must mean
  // "runs later"
  static bool
  laterFirst(const Ev& a, const Ev& b)
  {
    if (a.t != b.t) {
      return a.t > b.t;
    }
    if (a.cls != b.cls) {
      return a.cls > b.cls;
    }
    return a.seq > b.seq;
  }

  SimTime m_now = 0;
  std::uint64_t m_seq = 0;
  std::vector<Ev> m_heap;
  std::mt19937_64 m_rng;
};

} // namespace leosim::sim
