#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace symcartan {

enum class CoordKind { Affine, Angle };

struct Coordinate {
  std::string name;
  CoordKind kind = CoordKind::Affine;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// A coordinate chart.  Every affine coordinate contributes one polynomial
/// generator, every angle coordinate t contributes two generators cos(t),
/// sin(t), in declaration order.
class Chart {
 public:
  explicit Chart(std::vector<Coordinate> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Coordinate>& coords() const { return coords_; }
  const Coordinate& coord(int i) const { return coords_.at(i); }
  bool is_angle(int i) const { return coords_.at(i).kind == CoordKind::Angle; }
  bool has_angles() const { return !angle_pairs_.empty(); }
  int index_of(const std::string& name) const;  // -1 if absent

  int num_generators() const { return num_gens_; }
  // First generator of coordinate i (the cosine for angles).
  int generator(int i) const { return first_gen_.at(i); }
  // (cos, sin) generator pairs of the angle coordinates.
  const std::vector<std::pair<int, int>>& angle_pairs() const { return angle_pairs_; }

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Coordinate> coords_;
  std::vector<int> first_gen_;
  std::vector<std::pair<int, int>> angle_pairs_;
  int num_gens_ = 0;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<Coordinate> coords);
// Affine chart with the given names.
ChartPtr affine_chart(const std::vector<std::string>& names);
// Product chart: coordinates of a followed by those of b.
ChartPtr product_chart(const Chart& a, const Chart& b);

bool same_chart(const ChartPtr& a, const ChartPtr& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace symcartan
