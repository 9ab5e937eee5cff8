#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dextwist/se3.hpp"

namespace dextwist {

// 16 joint angles, rad: thumb[0..3], index[4..7], middle[8..11], ring[12..15].
using JointVector = Eigen::Matrix<double, 16, 1>;

struct FingerJoint {
    UnitVec3 axis;        // in the parent link frame
    Vec3 offset;          // m, parent pivot to this pivot, applied before the rotation
    double lower = 0.0;   // rad
    double upper = 0.0;   // rad
};

struct FingerChain {
    Transform base_pose;  // finger root in the robot palm frame {P_r}
    std::vector<FingerJoint> joints;
    Vec3 tip_offset = Vec3::Zero();
};

struct HandModel {
    std::map<std::string, FingerChain> fingers;

    // Fixed q-vector layout; the first three are the tripod fingers.
    static const std::array<std::string, 4>& finger_order();
    static constexpr int kTripodJointCount = 12;

    const FingerChain& finger(const std::string& name) const;
    void validate() const; // all four fingers, 4 joints each, lower < upper
};

// Tip of one chain for arbitrary joint count (q.size() == joints.size()).
Vec3 fk_tip(const FingerChain& chain, const Eigen::VectorXd& q);

// All four fingertips in {P_r}. Out-of-limit angles are evaluated as given.
std::map<std::string, Vec3> fk_fingertips(const HandModel& model, const JointVector& q);

// Tripod (thumb, index, middle) tips only; the hot path for the solver.
std::array<Vec3, 3> fk_tripod_tips(const HandModel& model, const JointVector& q);

JointVector clamp_to_limits(const HandModel& model, const JointVector& q);
void joint_limits(const HandModel& model, JointVector& lower, JointVector& upper);

HandModel hand_model_from_json(const std::string& json_text);
HandModel load_hand_model(const std::string& path);
HandModel default_model(); // compiled-in copy of data/default_hand.json

} // namespace dextwist
