#include <cmath>
#include <random>

#include <doctest.h>

#include "dextwist/hand_model.hpp"

using namespace dextwist;

namespace {

// Minimal valid model: every finger is the same straight 4-joint chain.
std::string uniform_hand_json(const char* axis = "[0, -1, 0]") {
    std::string finger = std::string(R"({
        "base_position": [0.0, 0.0, 0.0],
        "base_rotation_rpy": [0.0, 0.0, 0.0],
        "joints": [
            {"axis": [0, 0, 1], "offset": [0, 0, 0], "lower": -0.5, "upper": 0.5},
            {"axis": )") + axis + R"(, "offset": [0.05, 0, 0], "lower": -0.3, "upper": 1.7},
            {"axis": )" + axis + R"(, "offset": [0.04, 0, 0], "lower": -0.3, "upper": 1.7},
            {"axis": )" + axis + R"(, "offset": [0, 0, 0], "lower": -0.3, "upper": 1.7}
        ],
        "tip_offset": [0.03, 0, 0]
    })";
    std::string out = R"({"fingers": {)";
    const char* names[4] = {"thumb", "index", "middle", "ring"};
    for (int i = 0; i < 4; ++i) {
        if (i) out += ",";
        out += "\"" + std::string(names[i]) + "\": " + finger;
    }
    out += "}}";
    return out;
}

} // namespace

TEST_CASE("straight chain at q=0 composes the link offsets") {
    const HandModel model = hand_model_from_json(uniform_hand_json());
    const JointVector q = JointVector::Zero();
    const auto tips = fk_fingertips(model, q);
    // 0.05 + 0.04 + 0 + tip 0.03 along x from the base.
    for (const auto& name : HandModel::finger_order())
        CHECK((tips.at(name) - Vec3(0.12, 0, 0)).norm() < 1e-15);
}

TEST_CASE("two active joints reproduce the planar trig oracle") {
    const HandModel model = hand_model_from_json(uniform_hand_json());
    JointVector q = JointVector::Zero();
    q[5] = kPi / 2; // index joint 1 (first flexion)
    const Vec3 tip = fk_fingertips(model, q).at("index");
    // Joint 1 pivots at its 0.05 offset; the distal 0.04 + 0 + 0.03 rotates
    // by rot((0,-1,0), 90deg), which sends +x to +z.
    const Vec3 expect =
        Vec3(0.05, 0, 0) + Mat3(Eigen::AngleAxisd(kPi / 2, Vec3(0, -1, 0))) * Vec3(0.07, 0, 0);
    CHECK((tip - expect).norm() < 1e-12);
    CHECK((tip - Vec3(0.05, 0, 0.07)).norm() < 1e-12);

    // Two-joint elbow: proximal 90 deg up, next 90 deg back. The 0.04 link
    // climbs +z from (0.05, 0, 0); the counter-bent 0.03 tip re-levels, but
    // in the lifted frame +x points up, so it exits along world +x.
    q[6] = -kPi / 2;
    const Vec3 tip2 = fk_fingertips(model, q).at("index");
    CHECK((tip2 - Vec3(0.08, 0, 0.04)).norm() < 1e-12);
}

TEST_CASE("abduction joint swings the whole finger about z") {
    const HandModel model = hand_model_from_json(uniform_hand_json());
    JointVector q = JointVector::Zero();
    q[4] = 0.5; // index abduction
    const Vec3 tip = fk_fingertips(model, q).at("index");
    const Vec3 expect = Mat3(Eigen::AngleAxisd(0.5, Vec3::UnitZ())) * Vec3(0.12, 0, 0);
    CHECK((tip - expect).norm() < 1e-12);
}

TEST_CASE("base pose places and orients the chain") {
    std::string text = uniform_hand_json();
    // Move the index base and yaw it 90 deg.
    auto pos = text.find("\"index\": ");
    REQUIRE(pos != std::string::npos);
    auto bp = text.find("\"base_position\": [0.0, 0.0, 0.0]", pos);
    text.replace(bp, std::string("\"base_position\": [0.0, 0.0, 0.0]").size(),
                 "\"base_position\": [0.1, 0.2, 0.0]");
    auto br = text.find("\"base_rotation_rpy\": [0.0, 0.0, 0.0]", pos);
    text.replace(br, std::string("\"base_rotation_rpy\": [0.0, 0.0, 0.0]").size(),
                 "\"base_rotation_rpy\": [0.0, 0.0, 1.5707963267948966]");
    const HandModel model = hand_model_from_json(text);
    const Vec3 tip = fk_fingertips(model, JointVector::Zero()).at("index");
    CHECK((tip - Vec3(0.1, 0.32, 0)).norm() < 1e-12);
}

TEST_CASE("ring joints never move the tripod tips") {
    const HandModel model = default_model();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.3, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        JointVector q = JointVector::Zero();
        for (int i = 0; i < 16; ++i) q[i] = u(rng);
        JointVector q2 = q;
        for (int i = 12; i < 16; ++i) q2[i] = u(rng);
        const auto a = fk_tripod_tips(model, q);
        const auto b = fk_tripod_tips(model, q2);
        for (int i = 0; i < 3; ++i) CHECK((a[i] - b[i]).norm() == 0.0);
        // ...but they do move the ring tip.
        CHECK((fk_fingertips(model, q).at("ring") - fk_fingertips(model, q2).at("ring")).norm() >
              0.0);
    }
}

TEST_CASE("limits clamp componentwise and FK accepts out-of-limit input") {
    const HandModel model = hand_model_from_json(uniform_hand_json());
    JointVector q = JointVector::Zero();
    q[0] = 2.0;   // above upper 0.5
    q[5] = -1.0;  // below lower -0.3
    q[9] = 1.0;   // inside
    const JointVector c = clamp_to_limits(model, q);
    CHECK(c[0] == 0.5);
    CHECK(c[5] == -0.3);
    CHECK(c[9] == 1.0);
    // FK evaluates the given angles verbatim, limits or not.
    CHECK_NOTHROW(fk_fingertips(model, q));
    CHECK((fk_fingertips(model, q).at("middle") -
           fk_fingertips(model, c).at("middle")).norm() == 0.0);

    JointVector lo, hi;
    joint_limits(model, lo, hi);
    CHECK(lo[0] == -0.5);
    CHECK(hi[5] == 1.7);
}

TEST_CASE("default model is valid and starts with a usable tripod") {
    const HandModel model = default_model();
    CHECK_NOTHROW(model.validate());
    CHECK(HandModel::kTripodJointCount == 12);
    const auto tips = fk_tripod_tips(model, JointVector::Zero());
    const double area = 0.5 * (tips[1] - tips[0]).cross(tips[2] - tips[0]).norm();
    CHECK(area > 1e-5); // tripod spans a real plane at rest
    // Rest tips are inside the plausible workspace (under 25 cm from origin).
    for (const auto& p : tips) CHECK(p.norm() < 0.25);
}

TEST_CASE("fingertip map is smooth: central differences converge at 2nd order") {
    const HandModel model = default_model();
    JointVector q = JointVector::Zero();
    for (int i = 0; i < 16; ++i) q[i] = 0.2 + 0.01 * i;
    auto tip_x = [&](double v) {
        JointVector qq = q;
        qq[6] = v;
        return fk_fingertips(model, qq).at("index").x();
    };
    const double h1 = 1e-3, h2 = 5e-4;
    const double g1 = (tip_x(q[6] + h1) - tip_x(q[6] - h1)) / (2 * h1);
    const double g2 = (tip_x(q[6] + h2) - tip_x(q[6] - h2)) / (2 * h2);
    // Richardson: error(h) ~ C h^2, so g2 - g_true ~ (g1 - g2)/3.
    const double g_extrap = g2 + (g2 - g1) / 3.0;
    CHECK(std::abs(g2 - g_extrap) < std::abs(g1 - g_extrap));
    CHECK(std::abs(g1 - g2) < 1e-6);
}

TEST_CASE("model loader rejects malformed input") {
    CHECK_THROWS_AS(hand_model_from_json("not json"), ConfigInvalid);
    CHECK_THROWS_AS(hand_model_from_json("{}"), ConfigInvalid);

    // Unknown top-level key.
    CHECK_THROWS_AS(hand_model_from_json(R"({"fingers": {}, "extra": 1})"), ConfigInvalid);

    // Missing a finger.
    std::string text = uniform_hand_json();
    std::string no_ring = text.substr(0, text.rfind(",\"ring\"")) + "}}";
    CHECK_THROWS_AS(hand_model_from_json(no_ring), ConfigInvalid);

    // Wrong joint count.
    std::string extra_joint = text;
    const std::string joint = R"({"axis": [0, -1, 0], "offset": [0, 0, 0], "lower": -0.3, "upper": 1.7})";
    auto jpos = extra_joint.find(joint);
    REQUIRE(jpos != std::string::npos);
    extra_joint.replace(jpos, joint.size(), joint + ", " + joint);
    CHECK_THROWS_AS(hand_model_from_json(extra_joint), ConfigInvalid);

    // Unknown joint key.
    std::string bad_key = text;
    bad_key.replace(bad_key.find("\"lower\""), 7, "\"lowest\"");
    CHECK_THROWS_AS(hand_model_from_json(bad_key), ConfigInvalid);

    // Degenerate limits.
    std::string bad_limits = text;
    auto lpos = bad_limits.find("\"lower\": -0.5, \"upper\": 0.5");
    bad_limits.replace(lpos, std::string("\"lower\": -0.5, \"upper\": 0.5").size(),
                       "\"lower\": 0.5, \"upper\": 0.5");
    CHECK_THROWS_AS(hand_model_from_json(bad_limits), ConfigInvalid);

    // Zero-length joint axis.
    std::string bad_axis = text;
    auto apos = bad_axis.find("\"axis\": [0, 0, 1]");
    bad_axis.replace(apos, std::string("\"axis\": [0, 0, 1]").size(), "\"axis\": [0, 0, 0]");
    CHECK_THROWS_AS(hand_model_from_json(bad_axis), DegenerateVector);

    CHECK_THROWS_AS(load_hand_model("/nonexistent/hand.json"), ConfigInvalid);
}
