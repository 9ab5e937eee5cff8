#include "dextwist/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "dextwist/errors.hpp"

namespace dextwist {

PipelineResult run_pipeline(const std::vector<HandFrameSample>& trajectory, const AngleSeries& gt,
                            RetargetMethod method, const HandModel& model, const RunConfig& cfg,
                            RefineAudit* audit) {
    const bool have_gt = !gt.t.empty();
    if (have_gt) {
        gt.validate();
        if (gt.t.size() != trajectory.size())
            throw MisalignedSeries("ground truth length differs from trajectory length");
    }

    PipelineResult out;
    out.records.reserve(trajectory.size());
    out.frame_seconds.reserve(trajectory.size());

    PinchGateState gate;
    IntentState intent;
    std::optional<UnitVec3> human_axis; // per-episode sign chain
    RetargetSession session(model, method, cfg.refine, cfg.baseline);
    if (audit) session.attach_audit(audit);
    const UnitVec3 palm_z = UnitVec3::trusted(Vec3::UnitZ());

    for (size_t i = 0; i < trajectory.size(); ++i) {
        const auto t_begin = std::chrono::steady_clock::now();
        const HandFrameSample& sample = trajectory[i];

        PalmFrame palm = build_palm_frame(sample);
        std::map<std::string, Vec3> tips;
        for (const char* name : {"thumb_tip", "index_tip", "middle_tip", "ring_tip"}) {
            const std::string key(name);
            if (key == "ring_tip" && !sample.has(key)) continue; // ring is optional input
            // "thumb_tip" -> "thumb": the session indexes tips by finger.
            tips[key.substr(0, key.size() - 4)] = palm.to_palm(sample.keypoint(key));
        }
        const Vec3 origin = palm.to_palm(sample.keypoint("wrist"));

        const double d_ti = (tips.at("thumb") - tips.at("index")).norm();
        const double d_tm = (tips.at("thumb") - tips.at("middle")).norm();
        const PinchGateState prev_gate = gate;
        gate = update_gate(gate, d_ti, d_tm, cfg.gate);
        const bool edge = gate.active && !prev_gate.active;

        if (gate.active) {
            try {
                UnitVec3 axis = human_screw_axis(tips.at("thumb"), tips.at("index"),
                                                 tips.at("middle"), palm_z, human_axis);
                ToolFrame tool =
                    build_tool_frame(tips.at("thumb"), tips.at("index"), tips.at("middle"), axis);
                intent = update_intent(intent, tool, cfg.intent, true);
                human_axis = axis;
            } catch (const Error&) {
                // Collinear tripod or thumb-on-axis: drop the frame, keep state.
            }
        } else {
            intent = update_intent(intent, ToolFrame{}, cfg.intent, false);
            human_axis.reset();
        }

        StepResult step = session.step(tips, origin, gate.active, edge, intent.theta_task);

        FrameRecord rec;
        rec.t = sample.t;
        rec.gate_active = gate.active;
        rec.theta_task_deg = rad2deg(intent.theta_task);
        rec.theta_r_deg = rad2deg(step.theta_r);
        rec.theta_gt_deg =
            have_gt ? rad2deg(gt.value[i]) : std::numeric_limits<double>::quiet_NaN();
        rec.axis_dev_deg = rad2deg(step.axis_dev_rad);
        rec.J_total = step.breakdown.total;
        rec.J_rot = step.breakdown.rot_term;
        rec.J_conn = step.breakdown.conn_term;
        rec.J_axis = step.breakdown.axis_term;
        rec.J_pos = step.breakdown.pos_term;
        rec.q_cmd = step.q_cmd;
        out.records.push_back(rec);

        out.frame_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count());
    }
    return out;
}

static AngleSeries series_from_records(const std::vector<FrameRecord>& records, bool use_intent) {
    AngleSeries s;
    for (const FrameRecord& r : records) {
        s.t.push_back(r.t);
        s.value.push_back(deg2rad(use_intent ? r.theta_task_deg : r.theta_r_deg));
        s.active.push_back(r.gate_active);
    }
    return s;
}

static MetricsReport report_against(const std::vector<FrameRecord>& records, const AngleSeries& gt,
                                    bool use_intent) {
    AngleSeries method = series_from_records(records, use_intent);
    std::vector<double> errors = tracking_error(method, gt);
    MetricsReport rep;
    std::tie(rep.rmse_deg, rep.mae_deg) = rmse_mae(errors);
    rep.n_samples = static_cast<long>(errors.size());

    std::vector<double> mv, gv;
    double axis_sum = 0.0, axis_max = 0.0;
    for (size_t i = 0; i < records.size(); ++i) {
        if (!(method.active[i] && gt.active[i])) continue;
        mv.push_back(method.value[i]);
        gv.push_back(gt.value[i]);
        if (!use_intent) {
            axis_sum += records[i].axis_dev_deg;
            axis_max = std::max(axis_max, records[i].axis_dev_deg);
        }
    }
    rep.corr = pearson(mv, gv);
    if (!use_intent && !mv.empty()) {
        rep.axis_dev_mean_deg = axis_sum / static_cast<double>(mv.size());
        rep.axis_dev_max_deg = axis_max;
    }
    return rep;
}

MetricsReport method_report(const std::vector<FrameRecord>& records, const AngleSeries& gt) {
    return report_against(records, gt, false);
}

MetricsReport intent_report(const std::vector<FrameRecord>& records, const AngleSeries& gt) {
    return report_against(records, gt, true);
}

} // namespace dextwist
