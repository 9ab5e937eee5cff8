#include "dextwist/se3.hpp"

#include <algorithm>
#include <cmath>

namespace dextwist {

UnitVec3 UnitVec3::from_unit(const Vec3& v) {
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw DegenerateVector("UnitVec3::from_unit: input norm deviates from 1 by more than 1e-9");
    }
    return UnitVec3(v);
}

UnitVec3 unit(const Vec3& v) {
    const double n = v.norm();
    if (!(n > kEpsLen)) {
        throw DegenerateVector("unit: vector norm below 1e-9");
    }
    return UnitVec3::trusted(v / n);
}

Rotation Rotation::from_matrix(const Mat3& m) {
    const double ortho_err = (m.transpose() * m - Mat3::Identity()).norm();
    if (ortho_err > 1e-8) {
        throw NotARotation("Rotation::from_matrix: R^T R deviates from identity beyond 1e-8");
    }
    if (std::abs(m.determinant() - 1.0) > 1e-8) {
        throw NotARotation("Rotation::from_matrix: determinant is not +1 within 1e-8");
    }
    return Rotation(m);
}

Rotation Rotation::from_columns(const UnitVec3& x, const UnitVec3& y, const UnitVec3& z) {
    Mat3 m;
    m.col(0) = x.vec();
    m.col(1) = y.vec();
    m.col(2) = z.vec();
    return Rotation(m);
}

Rotation Rotation::axis_angle(const UnitVec3& axis, double angle_rad) {
    return Rotation(Eigen::AngleAxisd(angle_rad, axis.vec()).toRotationMatrix());
}

Vec3 so3_log(const Rotation& r) {
    const Mat3& m = r.matrix();
    // vee(R - R^T) = 2 sin(theta) * axis
    const Vec3 v(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
    const double s = 0.5 * v.norm();                                   // sin(theta), theta in [0, pi]
    const double c = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);   // cos(theta)
    const double theta = std::atan2(s, c);
    if (theta >= kPi - kEpsLog) {
        throw NearPiRotation("so3_log: rotation angle within 1e-6 of pi; axis sign undefined");
    }
    if (theta < 1e-10) {
        return 0.5 * v; // theta/(2 sin theta) -> 1/2, error O(theta^2)
    }
    return (theta / (2.0 * s)) * v;
}

Rotation so3_exp(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 k = skew(w);
    double a; // sin(theta)/theta
    double b; // (1 - cos(theta))/theta^2
    if (theta < 1e-4) {
        const double t2 = theta * theta;
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
        a = std::sin(theta) / theta;
        const double sh = std::sin(0.5 * theta);
        b = 2.0 * sh * sh / (theta * theta);
    }
    return Rotation::trusted(Mat3::Identity() + a * k + b * (k * k));
}

Rotation reorthonormalize(const Mat3& m) {
    if ((m.transpose() * m - Mat3::Identity()).norm() >= 0.1) {
        throw NotARotation("reorthonormalize: input farther than the 0.1 Frobenius bound");
    }
    Vec3 c0 = m.col(0);
    c0.normalize();
    Vec3 c1 = m.col(1) - c0.dot(m.col(1)) * c0;
    c1.normalize();
    Vec3 c2 = m.col(2) - c0.dot(m.col(2)) * c0 - c1.dot(m.col(2)) * c1;
    c2.normalize();
    Mat3 r;
    r.col(0) = c0;
    r.col(1) = c1;
    r.col(2) = c2;
    if (r.determinant() < 0.0) {
        throw NotARotation("reorthonormalize: input projects to a reflection");
    }
    return Rotation::trusted(r);
}

} // namespace dextwist
