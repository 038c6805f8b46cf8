#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freechoice/causal_order.hpp"

namespace freechoice {

/// Classification tolerance on the squared interval. Pairs with |s^2| near
/// this value are unreliable and should not be relied on.
inline constexpr double kIntervalTolerance = 1e-9;

/// A labeled point in 1+1 to 3+1 Minkowski space, c = 1.
struct SpacetimeEvent {
  std::string label;
  double t = 0.0;
  std::vector<double> x;

  friend bool operator==(const SpacetimeEvent&, const SpacetimeEvent&) = default;
};

enum class IntervalClass { Timelike, Lightlike, Spacelike, Coincident };

const char* to_string(IntervalClass c);

/// s^2 = dt^2 - |dx|^2.
double squared_interval(const SpacetimeEvent& e1, const SpacetimeEvent& e2);

IntervalClass interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2);

/// a -> b iff a == b, or b is later and inside or on a's future light cone.
/// Distinct coincident events are left unordered.
CausalOrder derive_order(const std::vector<SpacetimeEvent>& events);

/// Lorentz boost with velocity v (|v| < 1) along spatial axis `axis`.
std::vector<SpacetimeEvent> boost(const std::vector<SpacetimeEvent>& events, double v, std::size_t axis);

}  // namespace freechoice
