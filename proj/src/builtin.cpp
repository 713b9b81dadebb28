#include "seatplan/builtin.hpp"

#include "seatplan/io.hpp"

namespace seatplan {

namespace embedded {
extern char const* const kClassroom1;
extern char const* const kClassroom2;
extern char const* const kClassroom3;
}  // namespace embedded

std::vector<NamedInstance> const& builtin_classrooms() {
  static auto const classrooms = [] {
    std::vector<NamedInstance> out;
    for (auto const& [key, text] :
         {std::pair{"classroom1", embedded::kClassroom1},
          std::pair{"classroom2", embedded::kClassroom2},
          std::pair{"classroom3", embedded::kClassroom3}}) {
      out.push_back({key, instance_from_json(json::parse(text))});
    }
    return out;
  }();
  return classrooms;
}

std::optional<Instance> builtin_classroom(std::string const& key) {
  for (auto const& named : builtin_classrooms()) {
    if (named.key == key || named.instance.name == key) {
      return named.instance;
    }
  }
  return std::nullopt;
}

}  // namespace seatplan
