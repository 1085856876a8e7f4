#include "qharm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qharm {

namespace {
// Slack for membership tests: k*h accumulates rounding of order 1e-16 * extent.
double geom_eps(double scale) { return 1e-9 * std::max(1.0, scale); }
}  // namespace

std::shared_ptr<const Domain> Domain::box(const Vec3& lo, const Vec3& hi, double h) {
  if (h <= 0) throw std::invalid_argument("Domain::box: h must be positive");
  for (int a = 0; a < 3; ++a)
    if (!(hi[a] > lo[a])) throw std::invalid_argument("Domain::box: empty interior");
  auto d = std::shared_ptr<Domain>(new Domain());
  d->shape_ = Shape::Box;
  d->h_ = h;
  d->lo_ = lo;
  d->hi_ = hi;
  d->center_ = 0.5 * (lo + hi);
  d->build_lattice();
  return d;
}

std::shared_ptr<const Domain> Domain::ball(const Vec3& center, double radius, double h) {
  if (h <= 0) throw std::invalid_argument("Domain::ball: h must be positive");
  if (!(radius > 0)) throw std::invalid_argument("Domain::ball: radius must be positive");
  auto d = std::shared_ptr<Domain>(new Domain());
  d->shape_ = Shape::Ball;
  d->h_ = h;
  d->center_ = center;
  d->radius_ = radius;
  d->lo_ = center - Vec3{radius, radius, radius};
  d->hi_ = center + Vec3{radius, radius, radius};
  d->build_lattice();
  return d;
}

void Domain::build_lattice() {
  if (shape_ == Shape::Box) {
    // Endpoints included on each axis; per-axis step snaps to the box extent.
    for (int a = 0; a < 3; ++a) {
      double len = hi_[a] - lo_[a];
      int segs = std::max(1, (int)std::llround(len / h_));
      dims_[a] = segs + 1;
      step_[a] = len / segs;
    }
    origin_ = lo_;
  } else {
    int k = (int)std::floor(radius_ / h_ + geom_eps(radius_));
    for (int a = 0; a < 3; ++a) dims_[a] = 2 * k + 1;
    step_ = {h_, h_, h_};
    origin_ = center_ - Vec3{k * h_, k * h_, k * h_};
  }

  lattice_.assign((std::size_t)dims_[0] * dims_[1] * dims_[2], -1);
  double eps = geom_eps(shape_ == Shape::Ball ? radius_ : norm(hi_ - lo_));
  for (int i = 0; i < dims_[0]; ++i)
    for (int j = 0; j < dims_[1]; ++j)
      for (int kk = 0; kk < dims_[2]; ++kk) {
        Vec3 x = origin_ + Vec3{i * step_.x, j * step_.y, kk * step_.z};
        bool inside, bd;
        if (shape_ == Shape::Box) {
          inside = true;
          bd = (i == 0 || i == dims_[0] - 1 || j == 0 || j == dims_[1] - 1 ||
                kk == 0 || kk == dims_[2] - 1);
        } else {
          double r = norm(x - center_);
          inside = r <= radius_ + eps;
          bd = inside && r > radius_ - h_ + eps;
        }
        if (!inside) continue;
        std::size_t flat =
            ((std::size_t)i * dims_[1] + j) * dims_[2] + kk;
        lattice_[flat] = (int32_t)nodes_.size();
        nodes_.push_back(x);
        boundary_.push_back(bd ? 1 : 0);
        ijk_.push_back({i, j, kk});
      }
}

int Domain::node_at(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i >= dims_[0] || j >= dims_[1] || k >= dims_[2])
    return -1;
  return lattice_[((std::size_t)i * dims_[1] + j) * dims_[2] + k];
}

bool Domain::contains(const Vec3& x, double tol) const {
  double eps = tol + geom_eps(shape_ == Shape::Ball ? radius_ : norm(hi_ - lo_));
  if (shape_ == Shape::Box) {
    for (int a = 0; a < 3; ++a)
      if (x[a] < lo_[a] - eps || x[a] > hi_[a] + eps) return false;
    return true;
  }
  return norm(x - center_) <= radius_ + eps;
}

double Domain::boundary_distance(const Vec3& x) const {
  if (shape_ == Shape::Ball) return radius_ - norm(x - center_);
  double d = hi_.x - lo_.x;
  for (int a = 0; a < 3; ++a)
    d = std::min({d, x[a] - lo_[a], hi_[a] - x[a]});
  return d;
}

double Domain::exterior_distance(const Vec3& x) const {
  if (shape_ == Shape::Ball) return std::max(0.0, norm(x - center_) - radius_);
  Vec3 gap{};
  for (int a = 0; a < 3; ++a)
    gap[a] = std::max({lo_[a] - x[a], 0.0, x[a] - hi_[a]});
  return norm(gap);
}

bool Domain::operator==(const Domain& o) const {
  if (shape_ != o.shape_ || h_ != o.h_) return false;
  if (shape_ == Shape::Box) return lo_ == o.lo_ && hi_ == o.hi_;
  return center_ == o.center_ && radius_ == o.radius_;
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (shape_ == Shape::Box)
    os << "box [" << lo_.x << "," << hi_.x << "]x[" << lo_.y << "," << hi_.y
       << "]x[" << lo_.z << "," << hi_.z << "]";
  else
    os << "ball c=(" << center_.x << "," << center_.y << "," << center_.z
       << ") R=" << radius_;
  os << " h=" << h_ << " nodes=" << nodes_.size();
  return os.str();
}

}  // namespace qharm
