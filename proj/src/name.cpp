#include "leosim/name.hpp"

#include <ostream>
#include <stdexcept>

namespace leosim::ndn {

Name::Name(std::string_view uri)
{
  std::size_t pos = 0;
  while (pos < uri.size()) {
    while (pos < uri.size() && uri[pos] == '/') {
      ++pos;
    }
    std::size_t end = uri.find('/', pos);
    if (end == std::string_view::npos) {
      end = uri.size();
    }
    if (end > pos) {
      m_comps.emplace_back(uri.substr(pos, end - pos));
    }
    pos = end;
  }
}

Name
Name::fromComponents(std::vector<std::string> comps)
{
  for (const auto& c : comps) {
    if (c.empty() || c.find('/') != std::string::npos) {
      throw std::invalid_argument("bad name component: '" + c + "'");
    }
  }
  Name n;
  n.m_comps = std::move(comps);
  return n;
}

Name
Name::prefix(std::size_t n) const
{
  Name out;
  if (n > m_comps.size()) {
    n = m_comps.size();
  }
  out.m_comps.assign(m_comps.begin(), m_comps.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Name&
Name::append(std::string_view comp)
{
  if (comp.empty() || comp.find('/') != std::string_view::npos) {
    throw std::invalid_argument("bad name component: '" + std::string(comp) + "'");
  }
  m_comps.emplace_back(comp);
  return *this;
}

Name&
Name::append(const Name& suffix)
{
  m_comps.insert(m_comps.end(), suffix.m_comps.begin(), suffix.m_comps.end());
  return *this;
}

bool
Name::isPrefixOf(const Name& other) const
{
  if (m_comps.size() > other.m_comps.size()) {
    return false;
  }
  for (std::size_t i = 0; i < m_comps.size(); ++i) {
    if (m_comps[i] != other.m_comps[i]) {
      return false;
    }
  }
  return true;
}

std::string
Name::toUri() const
{
  if (m_comps.empty()) {
    return "/";
  }
  std::string out;
  for (const auto& c : m_comps) {
    out += '/';
    out += c;
  }
  return out;
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

} // namespace leosim::ndn
