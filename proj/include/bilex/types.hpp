#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bilex {

using WordId = std::uint32_t;
using DocId = std::uint32_t;
using Topic = std::uint32_t;

// Language e is the target side (candidate translations), language j the
// source side (query words). Values double as array indices.
enum class Side : std::size_t { kTarget = 0, kSource = 1 };

inline constexpr std::size_t index_of(Side side) { return static_cast<std::size_t>(side); }
inline constexpr Side other(Side side) { return side == Side::kTarget ? Side::kSource : Side::kTarget; }

std::string_view side_name(Side side);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bilex
