#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

struct NamedInstance {
  std::string key;  // classroom1, classroom2, classroom3
  Instance instance;
};

// The three real classrooms, embedded at build time from data/.
std::vector<NamedInstance> const& builtin_classrooms();
std::optional<Instance> builtin_classroom(std::string const& key);

}  // namespace seatplan
