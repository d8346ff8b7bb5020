#include "leosim/simcore.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace leosim::sim {

void
Engine::at(SimTime t, EventClass cls, std::function<void()> fn)
{
  if (t < m_now) {
    throw std::logic_error("event scheduled in the past (t=" + std::to_string(t) +
                           " now=" + std::to_string(m_now) + ")");
  }
  m_heap.push_back(Ev{t, static_cast<int>(cls), m_seq++, std::move(fn)});
  std::push_heap(m_heap.begin(), m_heap.end(), &Engine::laterFirst);
}

void
Engine::run_until(SimTime horizon)
{
  while (!m_heap.empty() && m_heap.front().t <= horizon) {
    std::pop_heap(m_heap.begin(), m_heap.end(), &Engine::laterFirst);
    Ev ev = std::move(m_heap.back());
    m_heap.pop_back();
    m_now = ev.t;
    ev.fn();
  }
  m_now = horizon;
}

} // namespace leosim::sim
