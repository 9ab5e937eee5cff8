#pragma once

#include <vector>

#include "dextwist/metrics.hpp"
#include "dextwist/palm_frame.hpp"

namespace dextwist {

struct ScenarioSegment {
    enum class Kind { turn, hold, release_and_rewind };
    Kind kind = Kind::turn;
    double duration_s = 0.0;
    double rewind_deg = 0.0; // release_and_rewind only
};

// Synthetic operator trajectory: a fixed palm pose in {H} with a fingertip
// tripod orbiting axis_in_palm; release segments open past the gate band,
// rewind the tool, and re-pinch without advancing ground truth.
struct ScenarioConfig {
    double frame_rate = 50.0;                          // Hz
    Vec3 axis_in_palm = Vec3(0.0, 0.0, 1.0);           // normalized on use
    double turn_rate_deg_s = 30.0;
    std::vector<ScenarioSegment> segments;
    double noise_sigma = 0.0;                          // m, per keypoint coordinate
    double human_tripod_radius = 0.025;                // m, before human_scale
    double human_scale = 0.8;                          // human-vs-robot size mismatch
    unsigned long long seed = 1;
    double lead_in_s = 0.0;                            // pinched, stationary preroll

    void validate() const;
};

struct Scenario {
    std::vector<HandFrameSample> trajectory;
    AngleSeries gt; // rad; active = pinch intended
};

Scenario generate_scenario(const ScenarioConfig& cfg);

} // namespace dextwist
