#include "dextwist/scenario.hpp"

#include <cmath>
#include <random>

#include "dextwist/errors.hpp"

namespace dextwist {

namespace {

// Human hand layout in palm coordinates, before human_scale is applied.
const Vec3 kWrist(0.0, 0.0, 0.0);
const Vec3 kIndexKnuckle(0.095, 0.0, 0.0);
const Vec3 kPinkyKnuckle(0.060, 0.050, 0.0);
const Vec3 kRingTip(0.085, 0.035, 0.025);
const Vec3 kTripodCenter(0.080, -0.010, 0.045);
// Slightly uneven tripod: real pinches are not equilateral.
constexpr double kRadiusFactor[3] = {0.88, 1.04, 1.08};   // thumb, index, middle
constexpr double kBaseAngleDeg[3] = {-95.0, 38.0, 152.0};
constexpr double kOpenFactor = 2.4; // radius multiple that clears the gate band

double smoothstep(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

// Fixed operator palm pose in the headset frame.
Transform palm_pose_in_headset() {
    Mat3 r = (Eigen::AngleAxisd(0.4, Vec3::UnitZ()) * Eigen::AngleAxisd(-0.3, Vec3::UnitY()) *
              Eigen::AngleAxisd(0.2, Vec3::UnitX()))
                 .toRotationMatrix();
    return Transform{Rotation::trusted(r), Vec3(0.12, -0.18, 0.35)};
}

struct FramePlan {
    double phi = 0.0;      // tool angle actually executed, rad
    double radius = 1.0;   // pinch-radius multiple
    double gt = 0.0;       // accumulated turning intent, rad
    bool active = true;    // pinch intended
};

} // namespace

void ScenarioConfig::validate() const {
    if (!(frame_rate > 0.0)) throw ConfigInvalid("frame_rate must be > 0");
    if (!(noise_sigma >= 0.0)) throw ConfigInvalid("noise_sigma must be >= 0");
    if (!(human_tripod_radius > 0.0)) throw ConfigInvalid("human_tripod_radius must be > 0");
    if (!(human_scale > 0.0 && human_scale <= 10.0))
        throw ConfigInvalid("human_scale must lie in (0, 10]");
    if (!(lead_in_s >= 0.0)) throw ConfigInvalid("lead_in_s must be >= 0");
    if (axis_in_palm.norm() <= kEpsLen) throw ConfigInvalid("axis_in_palm is degenerate");
    for (const ScenarioSegment& s : segments) {
        if (!(s.duration_s > 0.0)) throw ConfigInvalid("segment durations must be > 0");
        if (s.kind == ScenarioSegment::Kind::release_and_rewind && !(s.rewind_deg >= 0.0))
            throw ConfigInvalid("rewind_deg must be >= 0");
    }
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const UnitVec3 axis = unit(cfg.axis_in_palm);
    // In-plane basis for the orbit circle.
    Vec3 seed_dir = std::abs(axis.vec().x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const UnitVec3 u = unit(seed_dir - axis.dot(seed_dir) * axis.vec());
    const Vec3 v = axis.vec().cross(u.vec());

    const double rate_rad = deg2rad(cfg.turn_rate_deg_s);
    const Transform palm = palm_pose_in_headset();

    // Segment start offsets on the time axis.
    double total = cfg.lead_in_s;
    std::vector<double> seg_start;
    for (const ScenarioSegment& s : cfg.segments) {
        seg_start.push_back(total);
        total += s.duration_s;
    }
    const long n_frames = std::llround(total * cfg.frame_rate);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, cfg.noise_sigma > 0.0 ? cfg.noise_sigma : 1.0);

    Scenario out;
    for (long k = 0; k < n_frames; ++k) {
        // Sample at segment-phase ends so the final frame lands exactly on
        // the total duration and gt reaches its closed-form terminal value.
        const double t = static_cast<double>(k + 1) / cfg.frame_rate;

        // Accumulate the plan across completed segments, then refine within
        // the current one; this keeps phi/gt exact at every boundary.
        FramePlan plan;
        if (t < cfg.lead_in_s) {
            // Approach phase: hold open while the follower converges, close,
            // then settle pinched so the gate latches at a steady pose.
            const double uu = t / cfg.lead_in_s;
            if (uu < 0.55) {
                plan.radius = kOpenFactor;
            } else if (uu < 0.85) {
                plan.radius = kOpenFactor - (kOpenFactor - 1.0) * smoothstep((uu - 0.55) / 0.3);
            } else {
                plan.radius = 1.0;
            }
            plan.active = uu >= 0.85;
        }
        for (size_t i = 0; i < cfg.segments.size(); ++i) {
            const ScenarioSegment& s = cfg.segments[i];
            const double t0 = seg_start[i];
            if (t < t0) break;
            const double local = std::min(t - t0, s.duration_s);
            const bool inside = t < t0 + s.duration_s;
            switch (s.kind) {
            case ScenarioSegment::Kind::turn:
                plan.phi += rate_rad * local;
                plan.gt += rate_rad * local;
                if (inside) plan.active = true;
                break;
            case ScenarioSegment::Kind::hold:
                if (inside) plan.active = true;
                break;
            case ScenarioSegment::Kind::release_and_rewind: {
                const double uu = local / s.duration_s;
                const double rew = deg2rad(s.rewind_deg);
                if (!inside) {
                    plan.phi -= rew;
                    break;
                }
                plan.active = uu >= 0.85;
                if (uu < 0.3) {
                    plan.radius = 1.0 + (kOpenFactor - 1.0) * smoothstep(uu / 0.3);
                } else if (uu < 0.7) {
                    plan.radius = kOpenFactor;
                    plan.phi -= rew * smoothstep((uu - 0.3) / 0.4);
                } else if (uu < 0.85) {
                    plan.radius = kOpenFactor - (kOpenFactor - 1.0) * smoothstep((uu - 0.7) / 0.15);
                    plan.phi -= rew;
                } else {
                    plan.radius = 1.0;
                    plan.phi -= rew;
                }
                break;
            }
            }
        }

        HandFrameSample sample;
        sample.t = t;
        auto place = [&](const std::string& name, const Vec3& p_palm) {
            sample.keypoints[name] = palm.apply(cfg.human_scale * p_palm);
        };
        place("wrist", kWrist);
        place("index_knuckle", kIndexKnuckle);
        place("pinky_knuckle", kPinkyKnuckle);
        place("ring_tip", kRingTip);
        const char* tip_names[3] = {"thumb_tip", "index_tip", "middle_tip"};
        for (int f = 0; f < 3; ++f) {
            const double r = cfg.human_tripod_radius * kRadiusFactor[f] * plan.radius;
            const double ang = deg2rad(kBaseAngleDeg[f]) + plan.phi;
            place(tip_names[f], kTripodCenter + r * (std::cos(ang) * u.vec() + std::sin(ang) * v));
        }
        if (cfg.noise_sigma > 0.0) {
            // Map order is name-sorted, so the draw sequence is deterministic.
            for (auto& [name, p] : sample.keypoints)
                p += Vec3(gauss(rng), gauss(rng), gauss(rng));
        }

        out.trajectory.push_back(std::move(sample));
        out.gt.t.push_back(t);
        out.gt.value.push_back(plan.gt);
        out.gt.active.push_back(plan.active);
    }
    return out;
}

} // namespace dextwist
