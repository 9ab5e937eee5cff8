#include "dextwist/retarget.hpp"

#include <algorithm>
#include <cmath>

#include "dextwist/errors.hpp"

namespace dextwist {

void RefineConfig::validate() const {
    if (w_rot < 0 || w_conn < 0 || w_axis < 0 || w_pos < 0)
        throw ConfigInvalid("refine weights must be non-negative");
    solver().validate();
}

void VectorRetargetConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 5.0)) throw ConfigInvalid("alpha must lie in (0, 5]");
    solver().validate();
}

ObjectiveBreakdown objective_from_state(const RobotTripodState& state, const TripodReference& ref,
                                        double theta_task, const RefineConfig& cfg) {
    ObjectiveBreakdown b;
    const double dtheta = robot_turn_angle(state, ref) - theta_task;
    b.rot_term = cfg.w_rot * dtheta * dtheta;
    b.conn_term = cfg.w_conn * (state.closure - ref.e_ref).squaredNorm();
    const double ca = state.normal.dot(ref.a_ref);
    b.axis_term = cfg.w_axis * (1.0 - ca * ca);
    b.pos_term = cfg.w_pos * (state.centroid - ref.c_ref).squaredNorm();
    b.total = b.rot_term + b.conn_term + b.axis_term + b.pos_term;
    return b;
}

ObjectiveBreakdown objective(const HandModel& model, const JointVector& q,
                             const TripodReference& ref, double theta_task,
                             const RefineConfig& cfg,
                             const std::optional<UnitVec3>& cycle_axis) {
    return objective_from_state(compute_tripod_state(model, q, cycle_axis), ref, theta_task, cfg);
}

static const std::vector<int>& tripod_indices() {
    static const std::vector<int> idx = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return idx;
}

static const std::vector<int>& all_indices() {
    static const std::vector<int> idx = {0, 1, 2,  3,  4,  5,  6,  7,
                                         8, 9, 10, 11, 12, 13, 14, 15};
    return idx;
}

RetargetOutput refine(const HandModel& model, const JointVector& q_init,
                      const TripodReference& ref, double theta_task, const RefineConfig& cfg,
                      const std::optional<UnitVec3>& cycle_axis) {
    cfg.validate();
    // Fail fast when the start is already degenerate; the session falls back.
    compute_tripod_state(model, q_init, cycle_axis);

    JointVector lo, hi;
    joint_limits(model, lo, hi);
    const Eigen::VectorXd lower = lo, upper = hi;
    auto f = [&](const Eigen::VectorXd& q) {
        return objective(model, JointVector(q), ref, theta_task, cfg, cycle_axis).total;
    };
    fdgd::Result r = fdgd::minimize(f, q_init, tripod_indices(), cfg.solver(), &lower, &upper);

    RetargetOutput out;
    out.q_cmd = r.q;
    out.iterations_used = r.iterations;
    out.breakdown = objective(model, out.q_cmd, ref, theta_task, cfg, cycle_axis);
    return out;
}

RetargetOutput vector_retarget(const std::map<std::string, Vec3>& human_tips_in_palm,
                               const Vec3& palm_origin, const HandModel& model,
                               const JointVector& q_prev, const VectorRetargetConfig& cfg) {
    cfg.validate();
    RetargetOutput out;
    const std::array<std::string, 4>& order = HandModel::finger_order();
    for (int i = 0; i < 3; ++i) {
        if (human_tips_in_palm.count(order[static_cast<size_t>(i)]) == 0) {
            out.q_cmd = q_prev; // tripod input incomplete: hold the previous command
            out.iterations_used = 0;
            return out;
        }
    }
    // Targets: palm->tip per finger (ring optional), then the tripod edges.
    const bool with_ring = human_tips_in_palm.count("ring") != 0;
    const int n_tips = with_ring ? 4 : 3;
    std::array<Vec3, 4> tip_targets;
    for (int i = 0; i < n_tips; ++i)
        tip_targets[static_cast<size_t>(i)] =
            cfg.alpha * (human_tips_in_palm.at(order[static_cast<size_t>(i)]) - palm_origin);
    const std::array<std::pair<int, int>, 3> edges = {{{0, 1}, {0, 2}, {1, 2}}};
    std::array<Vec3, 3> edge_targets;
    for (size_t e = 0; e < 3; ++e)
        edge_targets[e] = tip_targets[static_cast<size_t>(edges[e].second)] -
                          tip_targets[static_cast<size_t>(edges[e].first)];

    JointVector lo, hi;
    joint_limits(model, lo, hi);
    const Eigen::VectorXd lower = lo, upper = hi;
    auto f = [&](const Eigen::VectorXd& qx) {
        const JointVector q(qx);
        std::map<std::string, Vec3> tips = fk_fingertips(model, q);
        double s = 0.0;
        for (int i = 0; i < n_tips; ++i)
            s += (tip_targets[static_cast<size_t>(i)] - tips.at(order[static_cast<size_t>(i)]))
                     .squaredNorm();
        for (size_t e = 0; e < 3; ++e) {
            const Vec3 v = tips.at(order[static_cast<size_t>(edges[e].second)]) -
                           tips.at(order[static_cast<size_t>(edges[e].first)]);
            s += (edge_targets[e] - v).squaredNorm();
        }
        return s;
    };
    fdgd::Result r = fdgd::minimize(f, q_prev, all_indices(), cfg.solver(), &lower, &upper);
    out.q_cmd = r.q;
    out.iterations_used = r.iterations;
    out.breakdown.total = r.objective;
    out.breakdown.pos_term = r.objective; // single-term objective
    return out;
}

RetargetSession::RetargetSession(const HandModel& model, RetargetMethod method,
                                 RefineConfig refine_cfg, VectorRetargetConfig baseline_cfg)
    : model_(model),
      method_(method),
      refine_cfg_(refine_cfg),
      baseline_cfg_(baseline_cfg),
      q_prev_(clamp_to_limits(model, JointVector::Zero())) {
    refine_cfg_.validate();
    baseline_cfg_.validate();
}

StepResult RetargetSession::step(const std::map<std::string, Vec3>& human_tips,
                                 const Vec3& palm_origin, bool gate_active, bool activation_edge,
                                 double theta_task) {
    StepResult res;
    res.gate_active = gate_active;
    res.activation_edge = activation_edge;

    RetargetOutput base = vector_retarget(human_tips, palm_origin, model_, q_prev_, baseline_cfg_);
    res.q_cmd = base.q_cmd;

    if (!gate_active) {
        // Episode closed (or not yet open): freeze the accumulated angle.
        if (ref_) {
            theta_accum_base_ += theta_episode_;
            theta_episode_ = 0.0;
            ref_.reset();
        }
        res.theta_r = theta_accum_base_;
        q_prev_ = res.q_cmd;
        return res;
    }

    if (activation_edge || !ref_) {
        // Fresh episode: latch the reference at the vector-retargeted pose.
        RobotTripodState st = compute_tripod_state(model_, res.q_cmd, robot_axis_);
        robot_axis_ = st.normal;
        ref_ = latch_reference(st);
        theta_at_latch_ = theta_task;
        theta_episode_ = 0.0;
        res.theta_r = theta_accum_base_; // theta_episode is 0 by construction
        res.breakdown = objective_from_state(st, *ref_, 0.0, refine_cfg_);
        q_prev_ = res.q_cmd;
        return res;
    }

    const double target = theta_task - theta_at_latch_;
    if (method_ == RetargetMethod::dextwist) {
        try {
            RetargetOutput refined = refine(model_, base.q_cmd, ref_.value(), target,
                                            refine_cfg_, robot_axis_);
            if (audit_) {
                audit_->calls += 1;
                const double j_init =
                    objective(model_, base.q_cmd, ref_.value(), target, refine_cfg_, robot_axis_)
                        .total;
                if (refined.breakdown.total > j_init) audit_->monotone_violations += 1;
                const double dq_inf = (refined.q_cmd - base.q_cmd).cwiseAbs().maxCoeff();
                audit_->max_update_inf = std::max(audit_->max_update_inf, dq_inf);
                audit_->max_allowed_inf = refine_cfg_.iterations * refine_cfg_.per_iter_clip;
                if ((refined.q_cmd.tail<4>() - base.q_cmd.tail<4>()).cwiseAbs().maxCoeff() > 0.0)
                    audit_->ring_changed += 1;
            }
            res.q_cmd = refined.q_cmd;
        } catch (const DegenerateTripod&) {
            res.q_cmd = base.q_cmd; // keep teleoperation alive on a bad tripod
        }
    }

    try {
        RobotTripodState st = compute_tripod_state(model_, res.q_cmd, robot_axis_);
        robot_axis_ = st.normal;
        theta_episode_ = robot_turn_angle(st, ref_.value());
        res.axis_dev_rad = std::acos(std::clamp(std::abs(st.normal.dot(ref_->a_ref)), -1.0, 1.0));
        res.breakdown = objective_from_state(st, *ref_, target, refine_cfg_);
    } catch (const Error&) {
        // Degenerate geometry or a near-pi turn: keep the last good estimate.
    }
    res.theta_r = theta_accum_base_ + theta_episode_;
    q_prev_ = res.q_cmd;
    return res;
}

} // namespace dextwist
