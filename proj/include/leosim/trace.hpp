#pragma once

#include "leosim/name.hpp"
#include "leosim/time.hpp"

#include <ostream>
#include <string>

namespace leosim {

enum class TraceKind {
  InterestSend,
  InterestRecv,
  DataSend,
  DataRecv,
  Drop,
  PitExpire,
  CsHit,
};

inline const char*
trace_kind_label(TraceKind k)
{
  switch (k) {
    case TraceKind::InterestSend: return "interest_send";
    case TraceKind::InterestRecv: return "interest_recv";
    case TraceKind::DataSend:     return "data_send";
    case TraceKind::DataRecv:     return "data_recv";
    case TraceKind::Drop:         return "drop";
    case TraceKind::PitExpire:    return "pit_expire";
    case TraceKind::CsHit:        return "cs_hit";
  }
  return "?";
}

// Receives one record per packet event. The simulator calls this from the
// node pipeline; sinks that write files should buffer internally.
class TraceSink
{
public:
  virtual ~TraceSink() = default;

  virtual void
  record(SimTime time, const std::string& node, TraceKind kind,
         const ndn::Name& name, int face, const std::string& aux) = 0;
};

// Writes the flat CSV trace format: time_ns,node,event,name,face,aux
class CsvTraceSink : public TraceSink
{
public:
  explicit CsvTraceSink(std::ostream& os)
    : m_os(os)
  {
    m_os << "time_ns,node_id,event_kind,name,face,aux\n";
  }

  void
  record(SimTime time, const std::string& node, TraceKind kind,
         const ndn::Name& name, int face, const std::string& aux) override
  {
    m_os << time << ',' << node << ',' << trace_kind_label(kind) << ','
         << name.toUri() << ',' << face << ',' << aux << '\n';
  }

private:
  std::ostream& m_os;
};

} // namespace leosim
