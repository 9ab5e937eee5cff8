#pragma once

#include <optional>

#include "dextwist/se3.hpp"

namespace dextwist {

struct PinchGateConfig {
    double d_on = 0.045;  // m, both pair distances below -> pinch candidate
    double d_off = 0.065; // m, either above -> release candidate
    int n_on = 3;         // consecutive frames to activate
    int n_off = 3;        // consecutive frames to deactivate

    void validate() const;
};

struct PinchGateState {
    bool active = false;
    int consecutive_on = 0;
    int consecutive_off = 0;
    int episode_id = 0; // increments once per activation edge
};

// Tripod-defined tool frame in palm coordinates: origin at the fingertip
// centroid, z along the screw axis, x toward the thumb (projected off-axis).
struct ToolFrame {
    Rotation rotation = Rotation::trusted(Mat3::Identity());
    Vec3 origin = Vec3::Zero();
};

struct IntentConfig {
    double dtheta_clip = 0.2;   // rad per frame
    bool axis_flip_guard = true;

    void validate() const;
};

struct IntentState {
    double theta_task = 0.0; // rad, accumulated; ratchets across episodes
    UnitVec3 a_task = UnitVec3::trusted(Vec3::UnitZ()); // latched per episode, in {P_h}
    std::optional<ToolFrame> prev_tool;
    PinchGateState gate;
};

PinchGateState update_gate(const PinchGateState& state, double d_thumb_index,
                           double d_thumb_middle, const PinchGateConfig& cfg);

// Tripod normal, sign-disambiguated: toward prev_axis when present, else
// toward the palm normal. DegenerateTripod on collinear tips.
UnitVec3 human_screw_axis(const Vec3& p_th, const Vec3& p_ind, const Vec3& p_mid,
                          const UnitVec3& palm_normal,
                          const std::optional<UnitVec3>& prev_axis);

ToolFrame build_tool_frame(const Vec3& p_th, const Vec3& p_ind, const Vec3& p_mid,
                           const UnitVec3& axis);

// theta_task <- theta_task + clip(a_task . log(prev^T tool)); the first active
// frame of an episode latches a_task (the tool z-axis) without incrementing.
// A near-pi relative rotation drops the frame (prev_tool kept).
IntentState update_intent(const IntentState& state, const ToolFrame& tool,
                          const IntentConfig& cfg, bool active);

} // namespace dextwist
