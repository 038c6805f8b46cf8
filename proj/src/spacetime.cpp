#include "freechoice/spacetime.hpp"

#include <cmath>
#include <unordered_set>

#include "freechoice/error.hpp"

namespace freechoice {
namespace {

void check_event(const SpacetimeEvent& e) {
  if (e.x.empty() || e.x.size() > 3) {
    throw Error(ErrorCode::DimensionMismatch, e.label + " needs 1 to 3 spatial coordinates");
  }
  if (!std::isfinite(e.t)) {
    throw Error(ErrorCode::NonFiniteCoordinate, e.label);
  }
  for (double c : e.x) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::NonFiniteCoordinate, e.label);
    }
  }
}

void check_pair(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
  check_event(e1);
  check_event(e2);
  if (e1.x.size() != e2.x.size()) {
    throw Error(ErrorCode::DimensionMismatch, e1.label + " vs " + e2.label);
  }
}

}  // namespace

const char* to_string(IntervalClass c) {
  switch (c) {
    case IntervalClass::Timelike: return "Timelike";
    case IntervalClass::Lightlike: return "Lightlike";
    case IntervalClass::Spacelike: return "Spacelike";
    case IntervalClass::Coincident: return "Coincident";
  }
  return "?";
}

double squared_interval(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
  check_pair(e1, e2);
  const double dt = e2.t - e1.t;
  double dx2 = 0.0;
  for (std::size_t k = 0; k < e1.x.size(); ++k) {
    const double d = e2.x[k] - e1.x[k];
    dx2 += d * d;
  }
  return dt * dt - dx2;
}

IntervalClass interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
  const double s2 = squared_interval(e1, e2);
  if (e1.t == e2.t && e1.x == e2.x) {
    return IntervalClass::Coincident;
  }
  if (s2 > kIntervalTolerance) {
    return IntervalClass::Timelike;
  }
  if (s2 < -kIntervalTolerance) {
    return IntervalClass::Spacelike;
  }
  return IntervalClass::Lightlike;
}

CausalOrder derive_order(const std::vector<SpacetimeEvent>& events) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> labels;
  for (const auto& e : events) {
    check_event(e);
    if (e.x.size() != events.front().x.size()) {
      throw Error(ErrorCode::DimensionMismatch, e.label);
    }
    if (!seen.insert(e.label).second) {
      throw Error(ErrorCode::DuplicateLabel, e.label);
    }
    labels.push_back(e.label);
  }
  std::vector<Edge> edges;
  for (const auto& a : events) {
    for (const auto& b : events) {
      if (&a == &b || !(b.t - a.t > 0.0)) {
        continue;
      }
      const auto c = interval_class(a, b);
      if (c == IntervalClass::Timelike || c == IntervalClass::Lightlike) {
        edges.emplace_back(a.label, b.label);
      }
    }
  }
  return CausalOrder::from_edges(std::move(labels), edges);
}

std::vector<SpacetimeEvent> boost(const std::vector<SpacetimeEvent>& events, double v, std::size_t axis) {
  if (!std::isfinite(v) || std::abs(v) >= 1.0) {
    throw Error(ErrorCode::SuperluminalBoost, "|v| must be < 1");
  }
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  std::vector<SpacetimeEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) {
    check_event(e);
    if (e.x.size() != events.front().x.size()) {
      throw Error(ErrorCode::DimensionMismatch, e.label);
    }
    if (axis >= e.x.size()) {
      throw Error(ErrorCode::BadAxis, "axis " + std::to_string(axis) + " for " +
                                          std::to_string(e.x.size()) + " spatial dimensions");
    }
    SpacetimeEvent b = e;
    b.t = gamma * (e.t - v * e.x[axis]);
    b.x[axis] = gamma * (e.x[axis] - v * e.t);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace freechoice
