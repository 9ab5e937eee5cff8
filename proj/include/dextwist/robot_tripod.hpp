#pragma once

#include <array>
#include <optional>

#include "dextwist/hand_model.hpp"
#include "dextwist/tripod_intent.hpp"

namespace dextwist {

// Robot-side tripod geometry in {P_r}: tips ordered thumb, index, middle.
struct RobotTripodState {
    std::array<Vec3, 3> tips;
    Vec3 centroid = Vec3::Zero();
    UnitVec3 normal = UnitVec3::trusted(Vec3::UnitZ());
    Vec3 closure = Vec3::Zero(); // pairwise distances: thumb-index, thumb-middle, index-middle
    ToolFrame tool;
};

// Immutable per-episode reference captured at tripod activation.
struct TripodReference {
    ToolFrame tool_ref;
    UnitVec3 a_ref = UnitVec3::trusted(Vec3::UnitZ());
    Vec3 e_ref = Vec3::Zero();
    Vec3 c_ref = Vec3::Zero();
};

// Shared geometry rule for synthetic or FK-produced tips. The normal is
// sign-aligned to prev_axis, or to the palm +z when absent.
RobotTripodState tripod_state_from_tips(const std::array<Vec3, 3>& tips,
                                        const std::optional<UnitVec3>& prev_axis);

RobotTripodState compute_tripod_state(const HandModel& model, const JointVector& q,
                                      const std::optional<UnitVec3>& prev_axis);

TripodReference latch_reference(const RobotTripodState& state);

// theta_r = a_ref . log(R_ref^T R), the turn advance about the latched axis.
double robot_turn_angle(const RobotTripodState& state, const TripodReference& ref);

} // namespace dextwist
