#pragma once

#include <compare>
#include <cstddef>
#include <functional>

namespace prp {

// One-based identifier with a tag so pods, places and stations cannot be mixed.
template <class Tag>
class StrongId {
 public:
  constexpr StrongId() = default;
  constexpr explicit StrongId(int v) : value_(v) {}

  constexpr int value() const { return value_; }
  // Zero-based offset for indexing dense tables.
  constexpr std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

 private:
  int value_ = 0;
};

struct PodTag {};
struct PlaceTag {};
struct StationTag {};

using PodId = StrongId<PodTag>;
using PlaceId = StrongId<PlaceTag>;
using StationId = StrongId<StationTag>;

}  // namespace prp

template <class Tag>
struct std::hash<prp::StrongId<Tag>> {
  std::size_t operator()(prp::StrongId<Tag> id) const noexcept {
    return std::hash<int>{}(id.value());
  }
};
