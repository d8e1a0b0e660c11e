#include "contactmax/sampling.hpp"

#include <cmath>
#include <random>

#include "contactmax/error.hpp"

namespace contactmax {

namespace {

void validate_box(const Box& box) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(box.min[i]) || !std::isfinite(box.max[i]) || !(box.min[i] < box.max[i])) {
      throw PreconditionError("box must satisfy min < max componentwise with finite bounds");
    }
  }
}

}  // namespace

bool Box::contains(const Point& p) const {
  for (int i = 0; i < 3; ++i) {
    if (p[i] < min[i] || p[i] > max[i]) return false;
  }
  return true;
}

SampleSet::SampleSet(Box box, std::vector<Point> points, std::uint64_t seed)
    : box_(box), points_(std::move(points)), seed_(seed) {
  validate_box(box_);
  for (const auto& p : points_) {
    if (!box_.contains(p)) throw PreconditionError("sample point outside the box");
  }
}

SampleSet SampleSet::generate(const Box& box, std::size_t count, std::uint64_t seed) {
  validate_box(box);
  if (count == 0) throw PreconditionError("sample count must be at least 1");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double c[3];
    for (int i = 0; i < 3; ++i) c[i] = box.min[i] + (box.max[i] - box.min[i]) * unit();
    pts.push_back(Point{c[0], c[1], c[2]});
  }
  return SampleSet(box, std::move(pts), seed);
}

}  // namespace contactmax
