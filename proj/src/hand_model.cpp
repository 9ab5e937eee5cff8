#include "dextwist/hand_model.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dextwist/errors.hpp"
#include "default_hand_data.hpp"

namespace dextwist {

using nlohmann::json;

const std::array<std::string, 4>& HandModel::finger_order() {
    static const std::array<std::string, 4> order = {"thumb", "index", "middle", "ring"};
    return order;
}

const FingerChain& HandModel::finger(const std::string& name) const {
    auto it = fingers.find(name);
    if (it == fingers.end()) throw ConfigInvalid("hand model has no finger '" + name + "'");
    return it->second;
}

void HandModel::validate() const {
    for (const auto& name : finger_order()) {
        auto it = fingers.find(name);
        if (it == fingers.end()) throw ConfigInvalid("hand model missing finger '" + name + "'");
        const FingerChain& c = it->second;
        if (c.joints.size() != 4)
            throw ConfigInvalid("finger '" + name + "' must have exactly 4 joints to fill the 16-vector");
        for (const FingerJoint& j : c.joints)
            if (!(j.lower < j.upper))
                throw ConfigInvalid("finger '" + name + "' has a joint with lower >= upper");
    }
}

Vec3 fk_tip(const FingerChain& chain, const Eigen::VectorXd& q) {
    if (q.size() != static_cast<Eigen::Index>(chain.joints.size()))
        throw ConfigInvalid("fk_tip: joint count mismatch");
    Transform t = chain.base_pose;
    for (size_t j = 0; j < chain.joints.size(); ++j) {
        const FingerJoint& joint = chain.joints[j];
        t = t * Transform{Rotation::axis_angle(joint.axis, q[static_cast<Eigen::Index>(j)]),
                          joint.offset};
    }
    return t.apply(chain.tip_offset);
}

static Vec3 fk_tip_16(const HandModel& model, const JointVector& q, int finger_index) {
    const FingerChain& chain = model.finger(HandModel::finger_order()[finger_index]);
    Eigen::VectorXd seg = q.segment<4>(4 * finger_index);
    return fk_tip(chain, seg);
}

std::map<std::string, Vec3> fk_fingertips(const HandModel& model, const JointVector& q) {
    std::map<std::string, Vec3> tips;
    for (int f = 0; f < 4; ++f) tips[HandModel::finger_order()[f]] = fk_tip_16(model, q, f);
    return tips;
}

std::array<Vec3, 3> fk_tripod_tips(const HandModel& model, const JointVector& q) {
    return {fk_tip_16(model, q, 0), fk_tip_16(model, q, 1), fk_tip_16(model, q, 2)};
}

JointVector clamp_to_limits(const HandModel& model, const JointVector& q) {
    JointVector lo, hi;
    joint_limits(model, lo, hi);
    return q.cwiseMax(lo).cwiseMin(hi);
}

void joint_limits(const HandModel& model, JointVector& lower, JointVector& upper) {
    for (int f = 0; f < 4; ++f) {
        const FingerChain& chain = model.finger(HandModel::finger_order()[f]);
        for (int j = 0; j < 4; ++j) {
            lower[4 * f + j] = chain.joints[static_cast<size_t>(j)].lower;
            upper[4 * f + j] = chain.joints[static_cast<size_t>(j)].upper;
        }
    }
}

static Vec3 vec3_from(const json& a, const std::string& what) {
    if (!a.is_array() || a.size() != 3)
        throw ConfigInvalid(what + " must be an array of 3 numbers");
    return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

static void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
    }
}

static HandModel hand_model_from_parsed(const json& root);

HandModel hand_model_from_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("hand model: invalid JSON: ") + e.what());
    }
    try {
        return hand_model_from_parsed(root);
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("hand model: ") + e.what());
    }
}

static HandModel hand_model_from_parsed(const json& root) {
    reject_unknown(root, {"fingers"}, "hand model");
    if (!root.contains("fingers") || !root["fingers"].is_object())
        throw ConfigInvalid("hand model: top-level 'fingers' object required");

    HandModel model;
    for (auto it = root["fingers"].begin(); it != root["fingers"].end(); ++it) {
        const json& f = it.value();
        reject_unknown(f, {"base_position", "base_rotation_rpy", "joints", "tip_offset"},
                       "finger '" + it.key() + "'");
        FingerChain chain;
        chain.base_pose.translation = vec3_from(f.at("base_position"), "base_position");
        Vec3 rpy = vec3_from(f.at("base_rotation_rpy"), "base_rotation_rpy");
        Mat3 r = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                  Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                     .toRotationMatrix();
        chain.base_pose.rotation = Rotation::trusted(r);
        if (!f.contains("joints") || !f["joints"].is_array() || f["joints"].empty())
            throw ConfigInvalid("finger '" + it.key() + "' needs a non-empty joints array");
        for (const json& jj : f["joints"]) {
            reject_unknown(jj, {"axis", "offset", "lower", "upper"},
                           "joint of finger '" + it.key() + "'");
            FingerJoint joint{unit(vec3_from(jj.at("axis"), "joint axis")),
                              vec3_from(jj.at("offset"), "joint offset"),
                              jj.at("lower").get<double>(), jj.at("upper").get<double>()};
            chain.joints.push_back(joint);
        }
        chain.tip_offset = vec3_from(f.at("tip_offset"), "tip_offset");
        model.fingers.emplace(it.key(), std::move(chain));
    }
    model.validate();
    return model;
}

HandModel load_hand_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open hand model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return hand_model_from_json(ss.str());
}

HandModel default_model() { return hand_model_from_json(kDefaultHandJson); }

} // namespace dextwist
