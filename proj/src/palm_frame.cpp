#include "dextwist/palm_frame.hpp"

#include "dextwist/errors.hpp"

namespace dextwist {

const std::vector<std::string>& HandFrameSample::required_keypoints() {
    static const std::vector<std::string> names = {
        "wrist", "index_knuckle", "pinky_knuckle", "thumb_tip", "index_tip", "middle_tip",
    };
    return names;
}

const Vec3& HandFrameSample::keypoint(const std::string& name) const {
    auto it = keypoints.find(name);
    if (it == keypoints.end()) throw DegenerateKeypoints("missing keypoint '" + name + "'");
    return it->second;
}

PalmFrame build_palm_frame(const HandFrameSample& sample) {
    const Vec3& p_w = sample.keypoint("wrist");
    const Vec3& p_ind = sample.keypoint("index_knuckle");
    const Vec3& p_pnk = sample.keypoint("pinky_knuckle");

    Vec3 u = p_ind - p_w;
    if (u.norm() <= kEpsLen) throw DegenerateKeypoints("index knuckle coincides with wrist");
    UnitVec3 x_p = unit(u);

    Vec3 v = p_pnk - p_w;
    Vec3 n = x_p.vec().cross(v);
    if (n.norm() <= kEpsLen)
        throw DegenerateKeypoints("wrist/index/pinky keypoints are collinear");
    UnitVec3 z_p = unit(n);
    UnitVec3 y_p = UnitVec3::trusted(z_p.vec().cross(x_p.vec()));

    PalmFrame out;
    out.pose.rotation = Rotation::from_columns(x_p, y_p, z_p);
    out.pose.translation = p_w;
    return out;
}

ArmCommand compose_arm_command(const PalmFrame& frame, const ArmCommandConfig& cfg, double t) {
    if (!(cfg.translation_scale > 0.0 && cfg.translation_scale <= 10.0))
        throw ConfigInvalid("translation_scale must lie in (0, 10]");
    // Scale the palm position, keep the orientation: T_H^B * diag-scale * T_P^H.
    Transform scaled = frame.pose;
    scaled.translation *= cfg.translation_scale;
    ArmCommand cmd;
    cmd.pose = cfg.base_alignment * scaled;
    cmd.t = t;
    return cmd;
}

} // namespace dextwist
