#ifndef ZIPPER_VEC3_HPP_
#define ZIPPER_VEC3_HPP_

#include <cmath>

namespace zipper {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr bool operator==(const Vec3&) const = default;
  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  constexpr double length_sq() const { return dot(*this); }
  double length() const { return std::sqrt(length_sq()); }
  Vec3 normalized() const { return *this / length(); }
  double dist(const Vec3& o) const { return (*this - o).length(); }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Angle at `b` in degrees.
inline double angle_deg(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 u = a - b, v = c - b;
  double cosv = u.dot(v) / (u.length() * v.length());
  cosv = cosv > 1.0 ? 1.0 : (cosv < -1.0 ? -1.0 : cosv);
  return std::acos(cosv) * 180.0 / 3.14159265358979323846;
}

} // namespace zipper

#endif
