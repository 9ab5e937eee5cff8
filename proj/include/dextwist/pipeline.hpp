#pragma once

#include <map>
#include <string>
#include <vector>

#include "dextwist/retarget.hpp"
#include "dextwist/scenario.hpp"

namespace dextwist {

// Everything one run needs; mirrors the config file sections.
struct RunConfig {
    PinchGateConfig gate;
    IntentConfig intent;
    RefineConfig refine;
    VectorRetargetConfig baseline;
    std::string hand_model_path; // empty: use the compiled-in default model
    ScenarioConfig scenario;
};

struct FrameRecord {
    double t = 0.0;
    bool gate_active = false;
    double theta_task_deg = 0.0;
    double theta_r_deg = 0.0;
    double theta_gt_deg = 0.0; // NaN when no ground truth was supplied
    double axis_dev_deg = 0.0;
    double J_total = 0.0, J_rot = 0.0, J_conn = 0.0, J_axis = 0.0, J_pos = 0.0;
    JointVector q_cmd = JointVector::Zero();
};

struct PipelineResult {
    std::vector<FrameRecord> records;
    std::vector<double> frame_seconds; // wall-clock per frame, reported separately
};

// Full per-frame loop: palm frame, palm-coordinate re-expression, gate,
// intent accumulation, retargeting, robot tripod measurement, record.
// gt may be empty (theta_gt_deg becomes NaN). Never aborts on a degenerate
// tripod; those frames fall back per the retargeting rules.
PipelineResult run_pipeline(const std::vector<HandFrameSample>& trajectory, const AngleSeries& gt,
                            RetargetMethod method, const HandModel& model, const RunConfig& cfg,
                            RefineAudit* audit = nullptr);

// theta_r vs gt plus axis-deviation stats over the joint active mask.
MetricsReport method_report(const std::vector<FrameRecord>& records, const AngleSeries& gt);
// theta_task vs gt (intent estimator quality); axis fields stay zero.
MetricsReport intent_report(const std::vector<FrameRecord>& records, const AngleSeries& gt);

struct RunReport {
    std::string scenario_digest;
    MetricsReport intent;
    std::map<std::string, MetricsReport> methods;
};

} // namespace dextwist
