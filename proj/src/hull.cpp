// Incremental 3D convex hull used for volume estimates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "steerkit/geometry.hpp"

namespace steerkit {

namespace {

using Vec3 = Eigen::Vector3d;

struct Face {
  std::array<int, 3> v;
  Vec3 normal;  // outward, unit
  double offset = 0.0;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class Hull {
 public:
  Hull(const std::vector<Vec3>& pts, const Vec3& interior, double eps)
      : p_(pts), interior_(interior), eps_(eps) {}

  void add_face(int a, int b, int c) {
    Face f{{a, b, c}, (p_[b] - p_[a]).cross(p_[c] - p_[a]), 0.0, true};
    const double n = f.normal.norm();
    f.normal /= n;
    f.offset = f.normal.dot(p_[a]);
    if (f.normal.dot(interior_) > f.offset) {
      std::swap(f.v[1], f.v[2]);
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    const int id = static_cast<int>(faces_.size());
    for (int k = 0; k < 3; ++k) edges_[edge_key(f.v[k], f.v[(k + 1) % 3])] = id;
    faces_.push_back(f);
  }

  void insert(int idx) {
    const Vec3& q = p_[idx];
    visible_.clear();
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (faces_[i].alive && faces_[i].normal.dot(q) - faces_[i].offset > eps_) {
        visible_.push_back(static_cast<int>(i));
      }
    }
    if (visible_.empty()) return;
    for (int f : visible_) faces_[static_cast<std::size_t>(f)].alive = false;

    horizon_.clear();
    for (int f : visible_) {
      const auto& v = faces_[static_cast<std::size_t>(f)].v;
      for (int k = 0; k < 3; ++k) {
        const int a = v[k];
        const int b = v[(k + 1) % 3];
        const auto twin = edges_.find(edge_key(b, a));
        if (twin != edges_.end() && faces_[static_cast<std::size_t>(twin->second)].alive) {
          horizon_.push_back({a, b});
        }
      }
    }
    for (int f : visible_) {
      const auto& v = faces_[static_cast<std::size_t>(f)].v;
      for (int k = 0; k < 3; ++k) edges_.erase(edge_key(v[k], v[(k + 1) % 3]));
    }
    for (const auto& [a, b] : horizon_) add_face(a, b, idx);
  }

  double volume() const {
    double vol = 0.0;
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      const Vec3 a = p_[f.v[0]] - interior_;
      const Vec3 b = p_[f.v[1]] - interior_;
      const Vec3 c = p_[f.v[2]] - interior_;
      vol += std::abs(a.dot(b.cross(c))) / 6.0;
    }
    return vol;
  }

 private:
  const std::vector<Vec3>& p_;
  Vec3 interior_;
  double eps_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::vector<int> visible_;
  std::vector<std::pair<int, int>> horizon_;
};

}  // namespace

double hull_volume(const std::vector<Eigen::Vector3d>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) return 0.0;

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  const double eps = 1e-12 * scale;

  // Initial tetrahedron: extreme pair along some axis, the point farthest
  // from their line, then the point farthest from their plane.
  int i0 = 0, i1 = 0;
  for (int axis = 0; axis < 3; ++axis) {
    i0 = i1 = 0;
    for (int i = 1; i < n; ++i) {
      if (pts[static_cast<std::size_t>(i)](axis) < pts[static_cast<std::size_t>(i0)](axis)) i0 = i;
      if (pts[static_cast<std::size_t>(i)](axis) > pts[static_cast<std::size_t>(i1)](axis)) i1 = i;
    }
    if ((pts[static_cast<std::size_t>(i1)] - pts[static_cast<std::size_t>(i0)]).norm() > eps) break;
  }
  const Eigen::Vector3d& a = pts[static_cast<std::size_t>(i0)];
  const Eigen::Vector3d ab = pts[static_cast<std::size_t>(i1)] - a;
  if (ab.norm() <= eps) return 0.0;

  int i2 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = ab.cross(pts[static_cast<std::size_t>(i)] - a).norm() / ab.norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0 || best <= eps) return 0.0;

  const Eigen::Vector3d normal = ab.cross(pts[static_cast<std::size_t>(i2)] - a).normalized();
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(normal.dot(pts[static_cast<std::size_t>(i)] - a));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0 || best <= 1e-10 * scale) return 0.0;

  const Eigen::Vector3d interior = (pts[static_cast<std::size_t>(i0)] + pts[static_cast<std::size_t>(i1)] +
                                    pts[static_cast<std::size_t>(i2)] + pts[static_cast<std::size_t>(i3)]) /
                                   4.0;
  Hull hull(pts, interior, eps);
  hull.add_face(i0, i1, i2);
  hull.add_face(i0, i1, i3);
  hull.add_face(i0, i2, i3);
  hull.add_face(i1, i2, i3);
  for (int i = 0; i < n; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    hull.insert(i);
  }
  return hull.volume();
}

double hull_volume(const PointCloud& cloud) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(cloud.points.size());
  for (const auto& p : cloud.points) pts.push_back(p.vec());
  return hull_volume(pts);
}

}  // namespace steerkit
