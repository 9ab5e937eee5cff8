#include "dextwist/tripod_intent.hpp"

#include <algorithm>

#include "dextwist/errors.hpp"

namespace dextwist {

void PinchGateConfig::validate() const {
    if (!(d_on > 0.0 && d_on < d_off)) throw ConfigInvalid("require 0 < d_on < d_off");
    if (n_on < 1 || n_off < 1) throw ConfigInvalid("n_on and n_off must be >= 1");
}

void IntentConfig::validate() const {
    if (!(dtheta_clip > 0.0)) throw ConfigInvalid("dtheta_clip must be > 0");
}

PinchGateState update_gate(const PinchGateState& state, double d_thumb_index,
                           double d_thumb_middle, const PinchGateConfig& cfg) {
    cfg.validate();
    PinchGateState next = state;
    const bool pinch = d_thumb_index < cfg.d_on && d_thumb_middle < cfg.d_on;
    const bool release = d_thumb_index > cfg.d_off || d_thumb_middle > cfg.d_off;

    if (pinch) {
        next.consecutive_off = 0;
        if (!next.active) {
            if (++next.consecutive_on >= cfg.n_on) {
                next.active = true;
                next.episode_id += 1;
                next.consecutive_on = 0;
            }
        } else {
            next.consecutive_on = 0;
        }
    } else if (release) {
        next.consecutive_on = 0;
        if (next.active) {
            if (++next.consecutive_off >= cfg.n_off) {
                next.active = false;
                next.consecutive_off = 0;
            }
        } else {
            next.consecutive_off = 0;
        }
    } else {
        // Hysteresis band: hold state, reset both counters.
        next.consecutive_on = 0;
        next.consecutive_off = 0;
    }
    return next;
}

UnitVec3 human_screw_axis(const Vec3& p_th, const Vec3& p_ind, const Vec3& p_mid,
                          const UnitVec3& palm_normal,
                          const std::optional<UnitVec3>& prev_axis) {
    Vec3 n = (p_ind - p_th).cross(p_mid - p_th);
    if (n.norm() <= kEpsLen) throw DegenerateTripod("collinear tripod fingertips");
    UnitVec3 a = unit(n);
    const double ref = prev_axis ? a.dot(*prev_axis) : a.dot(palm_normal);
    if (ref < 0.0) a = a.negated();
    return a;
}

ToolFrame build_tool_frame(const Vec3& p_th, const Vec3& p_ind, const Vec3& p_mid,
                           const UnitVec3& axis) {
    if ((p_ind - p_th).cross(p_mid - p_th).norm() <= kEpsLen)
        throw DegenerateTripod("collinear tripod fingertips");
    ToolFrame tf;
    tf.origin = (p_th + p_ind + p_mid) / 3.0;
    Vec3 r = p_th - tf.origin;
    Vec3 x = r - axis.dot(r) * axis.vec(); // project off the screw axis
    if (x.norm() <= kEpsLen) throw ThumbOnAxis("thumb tip sits on the screw axis");
    UnitVec3 x_t = unit(x);
    UnitVec3 y_t = UnitVec3::trusted(axis.vec().cross(x_t.vec()));
    tf.rotation = Rotation::from_columns(x_t, y_t, axis);
    return tf;
}

IntentState update_intent(const IntentState& state, const ToolFrame& tool,
                          const IntentConfig& cfg, bool active) {
    cfg.validate();
    IntentState next = state;
    if (!active) {
        next.prev_tool.reset(); // theta_task ratchets: untouched while released
        return next;
    }
    if (!state.prev_tool) {
        // First active frame of the episode: latch the axis, no increment.
        next.a_task = UnitVec3::trusted(tool.rotation.col(2));
        next.prev_tool = tool;
        return next;
    }
    Vec3 w;
    try {
        // Body-frame log re-expressed in {P_h}: a_task lives in palm coords.
        const Rotation& prev = state.prev_tool->rotation;
        w = prev * so3_log(prev.transposed() * tool.rotation);
    } catch (const NearPiRotation&) {
        return next; // drop the frame, keep prev_tool
    }
    double dtheta = next.a_task.dot(w);
    dtheta = std::clamp(dtheta, -cfg.dtheta_clip, cfg.dtheta_clip);
    next.theta_task += dtheta;
    next.prev_tool = tool;
    return next;
}

} // namespace dextwist
