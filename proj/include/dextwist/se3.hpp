#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "dextwist/errors.hpp"

namespace dextwist {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEpsLen = 1e-9; // shortest vector we will normalize [m]
inline constexpr double kEpsLog = 1e-6; // rotation angles >= pi - kEpsLog are rejected [rad]

inline constexpr double deg2rad(double d) { return d * (kPi / 180.0); }
inline constexpr double rad2deg(double r) { return r * (180.0 / kPi); }

inline Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

inline Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

// Unit-norm direction. Construct via unit() or from_unit(); the unchecked
// path is for values that are unit by construction.
class UnitVec3 {
public:
    static UnitVec3 from_unit(const Vec3& v);
    static UnitVec3 trusted(const Vec3& v) { return UnitVec3(v); }

    const Vec3& vec() const { return v_; }
    double dot(const UnitVec3& o) const { return v_.dot(o.v_); }
    double dot(const Vec3& o) const { return v_.dot(o); }
    UnitVec3 negated() const { return UnitVec3(-v_); }

private:
    explicit UnitVec3(const Vec3& v) : v_(v) {}
    Vec3 v_;
};

// Orthonormal, det +1. Validated on from_matrix(); internal results that are
// rotations by construction use trusted().
class Rotation {
public:
    Rotation() : m_(Mat3::Identity()) {}

    static Rotation identity() { return Rotation(); }
    static Rotation from_matrix(const Mat3& m);
    static Rotation trusted(const Mat3& m) { return Rotation(m); }
    static Rotation from_columns(const UnitVec3& x, const UnitVec3& y, const UnitVec3& z);
    static Rotation axis_angle(const UnitVec3& axis, double angle_rad);

    const Mat3& matrix() const { return m_; }
    Rotation transposed() const { return Rotation(m_.transpose()); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }
    Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }
    Vec3 col(int i) const { return m_.col(i); }

private:
    explicit Rotation(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

// Rigid transform: p -> R p + t.
struct Transform {
    Rotation rotation;
    Vec3 translation = Vec3::Zero();

    static Transform identity() { return Transform{}; }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    Transform operator*(const Transform& o) const {
        return Transform{rotation * o.rotation, rotation * o.translation + translation};
    }
    Transform inverse() const {
        Rotation rt = rotation.transposed();
        return Transform{rt, -(rt * translation)};
    }
};

// v / |v|; DegenerateVector if |v| <= kEpsLen.
UnitVec3 unit(const Vec3& v);

// Rotation-vector logarithm theta*axis, theta in [0, pi - kEpsLog).
// NearPiRotation otherwise: near pi the axis sign is ambiguous and a wrong
// branch would flip the sign of every accumulated increment downstream.
Vec3 so3_log(const Rotation& r);

// Rodrigues exponential. Defined for any finite w; callers keep |w| < pi.
Rotation so3_exp(const Vec3& w);

// Gram-Schmidt on columns. NotARotation if the input is farther than
// ||R^T R - I||_F < 0.1 from orthonormal or projects to a reflection.
Rotation reorthonormalize(const Mat3& m);

} // namespace dextwist
