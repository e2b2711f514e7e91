#include <cmath>
#include <string>
#include <utility>

#include "cubesec/error.hpp"
#include "cubesec/sections.hpp"

namespace cubesec::sections {

Direction::Direction(int n, Kind kind, int axis_index, std::vector<double> coords)
    : n_(n), kind_(kind), axis_index_(axis_index), coords_(std::move(coords)) {}

Direction Direction::diagonal(int n) {
  if (n < 1) throw DimensionError("Direction::diagonal: n must be >= 1");
  return Direction(n, Kind::diagonal, 0, {});
}

Direction Direction::axis(int n, int index) {
  if (n < 1) throw DimensionError("Direction::axis: n must be >= 1");
  if (index < 0 || index >= n) {
    throw DomainError("Direction::axis: index " + std::to_string(index) + " out of range");
  }
  return Direction(n, Kind::axis, index, {});
}

Direction Direction::two_coord(int n) {
  if (n < 2) throw DimensionError("Direction::two_coord: n must be >= 2");
  return Direction(n, Kind::two_coord, 0, {});
}

Direction Direction::from_coordinates(std::vector<double> coordinates) {
  if (coordinates.empty()) throw DimensionError("Direction: no coordinates");
  double norm2 = 0.0;
  for (double c : coordinates) {
    if (!std::isfinite(c)) throw DomainError("Direction: non-finite coordinate");
    norm2 += c * c;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
    throw DomainError("Direction: coordinates must have unit norm (got " +
                      std::to_string(std::sqrt(norm2)) + ")");
  }
  const int n = static_cast<int>(coordinates.size());
  return Direction(n, Kind::explicit_coords, 0, std::move(coordinates));
}

std::vector<double> Direction::coordinates() const {
  switch (kind_) {
    case Kind::diagonal:
      return std::vector<double>(static_cast<std::size_t>(n_), 1.0 / std::sqrt(double(n_)));
    case Kind::axis: {
      std::vector<double> v(static_cast<std::size_t>(n_), 0.0);
      v[static_cast<std::size_t>(axis_index_)] = 1.0;
      return v;
    }
    case Kind::two_coord: {
      std::vector<double> v(static_cast<std::size_t>(n_), 0.0);
      v[0] = v[1] = 1.0 / std::sqrt(2.0);
      return v;
    }
    case Kind::explicit_coords:
      return coords_;
  }
  return {};
}

Direction Direction::negated() const {
  std::vector<double> v = coordinates();
  for (double& c : v) c = -c;
  return Direction(n_, Kind::explicit_coords, 0, std::move(v));
}

std::string_view to_string(Direction::Kind kind) {
  switch (kind) {
    case Direction::Kind::diagonal: return "diagonal";
    case Direction::Kind::axis: return "axis";
    case Direction::Kind::two_coord: return "two_coord";
    case Direction::Kind::explicit_coords: return "explicit";
  }
  return "unknown";
}

}  // namespace cubesec::sections
