#pragma once

#include <cstdint>
#include <limits>

namespace rdfalign {

// Dense node identifier, contiguous from 0 within one TripleGraph.
using NodeId = std::uint32_t;

// Interned color identifier. Equal ids mean structurally equal descriptions.
using Color = std::uint32_t;

using Weight = double;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr Color kNoColor = std::numeric_limits<Color>::max();

enum class Origin : std::uint8_t { Source = 0, Target = 1 };

} // namespace rdfalign
