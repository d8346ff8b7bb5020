#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace leosim::ndn {

// Hierarchical name made of plain text components, e.g. /video/segment/17.
// Components never contain '/'. The empty name prints as "/".
class Name
{
public:
  Name() = default;

  // Parses a URI of the form "/a/b/c". Empty segments are ignored, so
  // "", "/" and "//" all yield the empty name.
  explicit Name(std::string_view uri);

  static Name
  fromComponents(std::vector<std::string> comps);

  const std::vector<std::string>&
  components() const
  {
    return m_comps;
  }

  std::size_t
  size() const
  {
    return m_comps.size();
  }

  bool
  empty() const
  {
    return m_comps.empty();
  }

  const std::string&
  at(std::size_t i) const
  {
    return m_comps.at(i);
  }

  // First n components (all of them if n >= size()).
  Name
  prefix(std::size_t n) const;

  Name&
  append(std::string_view comp);

  Name&
  append(const Name& suffix);

  bool
  isPrefixOf(const Name& other) const;

  std::string
  toUri() const;

  auto operator<=>(const Name&) const = default;

private:
  std::vector<std::string> m_comps;
};

std::ostream&
operator<<(std::ostream& os, const Name& name);

} // namespace leosim::ndn
