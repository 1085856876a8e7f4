#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qharm/vec3.hpp"

namespace qharm {

enum class Shape { Box, Ball };

// Bounded domain in R^3 (axis-aligned box or closed ball) together with its
// node lattice at spacing h. Every node is classified interior xor boundary:
// box nodes on a face are boundary; ball nodes with |x-c| in (R-h, R] are
// boundary. Immutable after construction; shared between fields.
class Domain {
 public:
  static std::shared_ptr<const Domain> box(const Vec3& lo, const Vec3& hi, double h);
  static std::shared_ptr<const Domain> ball(const Vec3& center, double radius, double h);

  Shape shape() const { return shape_; }
  double spacing() const { return h_; }
  const Vec3& lo() const { return lo_; }
  const Vec3& hi() const { return hi_; }
  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const Vec3& node(std::size_t i) const { return nodes_[i]; }
  bool is_boundary(std::size_t i) const { return boundary_[i] != 0; }
  const std::array<int, 3>& node_ijk(std::size_t i) const { return ijk_[i]; }

  const std::array<int, 3>& dims() const { return dims_; }
  const Vec3& lattice_origin() const { return origin_; }
  const Vec3& lattice_step() const { return step_; }

  // Node index at lattice position, or -1 when out of range / outside Omega.
  int node_at(int i, int j, int k) const;

  bool contains(const Vec3& x, double tol = 0.0) const;

  // Distance from x to the boundary surface (nonnegative inside).
  double boundary_distance(const Vec3& x) const;

  // Distance from an outside point to the closed domain (0 if inside).
  double exterior_distance(const Vec3& x) const;

  bool operator==(const Domain& o) const;
  std::string describe() const;

 private:
  Domain() = default;
  void build_lattice();

  Shape shape_{};
  double h_{};
  Vec3 lo_{}, hi_{};      // box
  Vec3 center_{};         // ball
  double radius_{};       // ball

  std::array<int, 3> dims_{};
  Vec3 origin_{};
  Vec3 step_{};
  std::vector<Vec3> nodes_;
  std::vector<uint8_t> boundary_;
  std::vector<std::array<int, 3>> ijk_;
  std::vector<int32_t> lattice_;
};

using DomainPtr = std::shared_ptr<const Domain>;

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace qharm
