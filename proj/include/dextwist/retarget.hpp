#pragma once

#include <map>
#include <optional>
#include <string>

#include "dextwist/robot_tripod.hpp"
#include "dextwist/solver.hpp"

namespace dextwist {

struct RefineConfig {
    double w_rot = 1.0;
    double w_conn = 200.0; // m^2 terms scaled up against rad^2 terms
    double w_axis = 1.0;
    double w_pos = 400.0;
    int iterations = 5;
    double fd_step = 1e-3;
    double step_size = 0.02;
    double per_iter_clip = 0.05;

    void validate() const;
    fdgd::Options solver() const { return {iterations, fd_step, step_size, per_iter_clip}; }
};

struct ObjectiveBreakdown {
    double total = 0.0;
    double rot_term = 0.0;
    double conn_term = 0.0;
    double axis_term = 0.0;
    double pos_term = 0.0;
};

struct VectorRetargetConfig {
    double alpha = 1.25; // human-to-robot vector scale, in (0, 5]
    int iterations = 20;
    double fd_step = 1e-3;
    double step_size = 0.02;
    double per_iter_clip = 0.05;

    void validate() const;
    fdgd::Options solver() const { return {iterations, fd_step, step_size, per_iter_clip}; }
};

struct RetargetOutput {
    JointVector q_cmd = JointVector::Zero();
    ObjectiveBreakdown breakdown;
    int iterations_used = 0;
};

ObjectiveBreakdown objective_from_state(const RobotTripodState& state, const TripodReference& ref,
                                        double theta_task, const RefineConfig& cfg);

// Eq-style virtual-object cost at q; the tripod normal is sign-aligned to
// cycle_axis so the landscape stays fixed within one solve.
ObjectiveBreakdown objective(const HandModel& model, const JointVector& q,
                             const TripodReference& ref, double theta_task,
                             const RefineConfig& cfg,
                             const std::optional<UnitVec3>& cycle_axis);

// Bounded residual refinement over the 12 tripod joints; best iterate wins.
RetargetOutput refine(const HandModel& model, const JointVector& q_init,
                      const TripodReference& ref, double theta_task, const RefineConfig& cfg,
                      const std::optional<UnitVec3>& cycle_axis);

// Baseline: match alpha-scaled human palm->tip and tripod tip-to-tip vectors
// over all 16 joints, warm-started at q_prev. Missing keypoints hold q_prev.
RetargetOutput vector_retarget(const std::map<std::string, Vec3>& human_tips_in_palm,
                               const Vec3& palm_origin, const HandModel& model,
                               const JointVector& q_prev, const VectorRetargetConfig& cfg);

// Per-refine-call audit counters for contract checks.
struct RefineAudit {
    long calls = 0;
    long monotone_violations = 0; // J(out) > J(init)
    double max_update_inf = 0.0;  // max ||q_out - q_init||_inf over calls
    double max_allowed_inf = 0.0; // iterations * per_iter_clip at call time
    long ring_changed = 0;        // calls where any ring component changed
};

enum class RetargetMethod { dextwist, vector_baseline };

struct StepResult {
    JointVector q_cmd = JointVector::Zero();
    bool gate_active = false;
    bool activation_edge = false;
    double theta_r = 0.0;        // accumulated across episodes, rad
    double axis_dev_rad = 0.0;   // vs the latched reference; 0 when unreferenced
    ObjectiveBreakdown breakdown; // evaluated at q_cmd; zeros when unreferenced
};

// Owns the per-trajectory retargeting state: warm start, episode reference,
// accumulated turn angle, and the robot-side axis sign chain.
class RetargetSession {
public:
    RetargetSession(const HandModel& model, RetargetMethod method, RefineConfig refine_cfg,
                    VectorRetargetConfig baseline_cfg);

    // One control cycle. human_tips holds thumb/index/middle/ring tips in
    // {P_h}; theta_task is the accumulated intent angle; edges re-latch.
    StepResult step(const std::map<std::string, Vec3>& human_tips, const Vec3& palm_origin,
                    bool gate_active, bool activation_edge, double theta_task);

    void attach_audit(RefineAudit* audit) { audit_ = audit; }
    const JointVector& q_prev() const { return q_prev_; }

private:
    const HandModel& model_;
    RetargetMethod method_;
    RefineConfig refine_cfg_;
    VectorRetargetConfig baseline_cfg_;
    JointVector q_prev_;
    std::optional<UnitVec3> robot_axis_;   // sign chain for the tripod normal
    std::optional<TripodReference> ref_;   // latched at activation
    double theta_at_latch_ = 0.0;          // theta_task when the episode began
    double theta_accum_base_ = 0.0;        // theta_r carried from closed episodes
    double theta_episode_ = 0.0;           // theta_r within the current episode
    RefineAudit* audit_ = nullptr;
};

} // namespace dextwist
