#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "contactmax/expr.hpp"

namespace contactmax {

/// Axis-aligned box domain of the chart.
struct Box {
  std::array<double, 3> min{-1.0, -1.0, -1.0};
  std::array<double, 3> max{1.0, 1.0, 1.0};

  bool contains(const Point& p) const;
};

/// Deterministic point cloud standing in for "every point of the domain".
///
/// Coordinates are drawn with std::mt19937_64 (whose output sequence the C++
/// standard fixes) and mapped to [0, 1) by taking the top 53 bits, so the same
/// (box, count, seed) reproduces bit-identical points on every platform.
class SampleSet {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/top53-uniform";

  static SampleSet generate(const Box& box, std::size_t count, std::uint64_t seed);
  /// Explicit points; every point must lie in the box.
  SampleSet(Box box, std::vector<Point> points, std::uint64_t seed = 0);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::uint64_t seed() const { return seed_; }
  const Box& box() const { return box_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  Box box_;
  std::vector<Point> points_;
  std::uint64_t seed_ = 0;
};

}  // namespace contactmax
