#pragma once

#include <map>
#include <string>
#include <vector>

#include "dextwist/se3.hpp"

namespace dextwist {

// One tracked frame: named keypoints in the headset frame {H}.
struct HandFrameSample {
    double t = 0.0; // seconds
    std::map<std::string, Vec3> keypoints;

    static const std::vector<std::string>& required_keypoints();
    const Vec3& keypoint(const std::string& name) const;
    bool has(const std::string& name) const { return keypoints.count(name) != 0; }
};

// Palm pose T_P^H built from wrist and knuckle keypoints.
struct PalmFrame {
    Transform pose;

    // Re-express a headset-frame point in palm coordinates {P_h}.
    Vec3 to_palm(const Vec3& p_in_headset) const { return pose.inverse().apply(p_in_headset); }
};

struct ArmCommandConfig {
    Transform base_alignment;      // T_H^B
    double translation_scale = 1.0; // workspace scaling, in (0, 10]
};

struct ArmCommand {
    Transform pose; // T_cmd
    double t = 0.0;
};

// Orthonormal palm basis: x along wrist->index-knuckle, z the palm normal
// from the cross with wrist->pinky-knuckle, y completing the frame.
// DegenerateKeypoints on missing, coincident, or collinear keypoints.
PalmFrame build_palm_frame(const HandFrameSample& sample);

// T_cmd = T_H^B * T_scale * T_P^H; the scale acts on translation only.
ArmCommand compose_arm_command(const PalmFrame& frame, const ArmCommandConfig& cfg, double t = 0.0);

} // namespace dextwist
