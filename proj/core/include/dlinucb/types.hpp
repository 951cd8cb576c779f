#pragma once

#include <cstdint>
#include <span>

#include "dlinucb/linalg.hpp"

namespace dlinucb {

using ArmId = std::uint32_t;
/// Interaction round. Round 0 is "before the first interaction"; play starts at 1.
using Round = std::uint64_t;
/// Unique, monotonically assigned identifier of a slave model within one master.
using SlaveId = std::uint32_t;

struct Arm {
  ArmId id = 0;
  Vector x;
};

using ArmPool = std::span<const Arm>;

}  // namespace dlinucb
