#include "dextwist/robot_tripod.hpp"

#include "dextwist/errors.hpp"

namespace dextwist {

RobotTripodState tripod_state_from_tips(const std::array<Vec3, 3>& tips,
                                        const std::optional<UnitVec3>& prev_axis) {
    RobotTripodState st;
    st.tips = tips;
    st.centroid = (tips[0] + tips[1] + tips[2]) / 3.0;
    st.normal = human_screw_axis(tips[0], tips[1], tips[2],
                                 UnitVec3::trusted(Vec3::UnitZ()), prev_axis);
    st.closure = Vec3((tips[0] - tips[1]).norm(), (tips[0] - tips[2]).norm(),
                      (tips[1] - tips[2]).norm());
    st.tool = build_tool_frame(tips[0], tips[1], tips[2], st.normal);
    return st;
}

RobotTripodState compute_tripod_state(const HandModel& model, const JointVector& q,
                                      const std::optional<UnitVec3>& prev_axis) {
    return tripod_state_from_tips(fk_tripod_tips(model, q), prev_axis);
}

TripodReference latch_reference(const RobotTripodState& state) {
    return TripodReference{state.tool, state.normal, state.closure, state.centroid};
}

double robot_turn_angle(const RobotTripodState& state, const TripodReference& ref) {
    // Body-frame log re-expressed in {P_r} so the projection axis and the
    // rotation increment live in the same coordinates.
    Vec3 w = ref.tool_ref.rotation * so3_log(ref.tool_ref.rotation.transposed() * state.tool.rotation);
    return ref.a_ref.dot(w);
}

} // namespace dextwist
