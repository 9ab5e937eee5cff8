#include "dextwist/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dextwist/errors.hpp"

namespace dextwist {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // no platform newline translation
    if (!out) throw ConfigInvalid("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigInvalid("cannot open for reading: " + path);
    return in;
}

std::string fmt_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

std::string fmt_val(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
    }
}

template <typename T>
void read_if(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) target = obj.at(key).get<T>();
}

Vec3 vec3_from(const json& a, const std::string& what) {
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number())
        throw ConfigInvalid(what + " must be an array of 3 numbers");
    return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

constexpr const char* kRecordsHeader =
    "t,gate_active,theta_task_deg,theta_r_deg,theta_gt_deg,axis_dev_deg,"
    "J_total,J_rot,J_conn,J_axis,J_pos,"
    "q_cmd_0,q_cmd_1,q_cmd_2,q_cmd_3,q_cmd_4,q_cmd_5,q_cmd_6,q_cmd_7,"
    "q_cmd_8,q_cmd_9,q_cmd_10,q_cmd_11,q_cmd_12,q_cmd_13,q_cmd_14,q_cmd_15";

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigInvalid("bad number '" + s + "' in " + where);
    }
}

} // namespace

void write_trajectory_jsonl(const std::string& path, const std::vector<HandFrameSample>& traj) {
    std::ofstream out = open_out(path);
    for (const HandFrameSample& s : traj) {
        json o;
        o["t"] = s.t;
        json kp = json::object();
        for (const auto& [name, p] : s.keypoints) kp[name] = {p.x(), p.y(), p.z()};
        o["keypoints"] = kp;
        out << o.dump() << '\n';
    }
}

std::vector<HandFrameSample> read_trajectory_jsonl(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<HandFrameSample> traj;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json o;
        try {
            o = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ConfigInvalid("trajectory line " + std::to_string(lineno) + ": " + e.what());
        }
        reject_unknown(o, {"t", "keypoints"}, "trajectory line " + std::to_string(lineno));
        if (!o.contains("t") || !o["t"].is_number() || !o.contains("keypoints") ||
            !o["keypoints"].is_object())
            throw ConfigInvalid("trajectory line " + std::to_string(lineno) +
                                ": need numeric 't' and a 'keypoints' object");
        HandFrameSample s;
        s.t = o.at("t").get<double>();
        for (auto it = o.at("keypoints").begin(); it != o.at("keypoints").end(); ++it) {
            const Vec3 p = vec3_from(it.value(), "keypoint " + it.key());
            if (!p.allFinite())
                throw ConfigInvalid("trajectory line " + std::to_string(lineno) +
                                    ": non-finite keypoint '" + it.key() + "'");
            s.keypoints[it.key()] = p;
        }
        for (const std::string& need : HandFrameSample::required_keypoints())
            if (!s.has(need))
                throw ConfigInvalid("trajectory line " + std::to_string(lineno) +
                                    ": missing keypoint '" + need + "'");
        if (!traj.empty() && !(s.t > traj.back().t))
            throw ConfigInvalid("trajectory line " + std::to_string(lineno) +
                                ": timestamps must be strictly increasing");
        traj.push_back(std::move(s));
    }
    return traj;
}

void write_gt_csv(const std::string& path, const AngleSeries& gt) {
    gt.validate();
    std::ofstream out = open_out(path);
    out << "t,theta_gt_deg,active\n";
    for (size_t i = 0; i < gt.t.size(); ++i)
        out << fmt_time(gt.t[i]) << ',' << fmt_val(rad2deg(gt.value[i])) << ','
            << (gt.active[i] ? 1 : 0) << '\n';
}

AngleSeries read_gt_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "t,theta_gt_deg,active")
        throw ConfigInvalid("ground-truth CSV header mismatch in " + path);
    AngleSeries gt;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 3)
            throw ConfigInvalid("ground-truth CSV line " + std::to_string(lineno) +
                                ": expected 3 columns");
        const std::string where = path + ":" + std::to_string(lineno);
        gt.t.push_back(parse_double(cells[0], where));
        gt.value.push_back(deg2rad(parse_double(cells[1], where)));
        gt.active.push_back(parse_double(cells[2], where) != 0.0);
    }
    gt.validate();
    return gt;
}

void write_records_csv(const std::string& path, const std::vector<FrameRecord>& records) {
    std::ofstream out = open_out(path);
    out << kRecordsHeader << '\n';
    for (const FrameRecord& r : records) {
        out << fmt_time(r.t) << ',' << (r.gate_active ? 1 : 0) << ','
            << fmt_val(r.theta_task_deg) << ',' << fmt_val(r.theta_r_deg) << ','
            << fmt_val(r.theta_gt_deg) << ',' << fmt_val(r.axis_dev_deg) << ','
            << fmt_val(r.J_total) << ',' << fmt_val(r.J_rot) << ',' << fmt_val(r.J_conn) << ','
            << fmt_val(r.J_axis) << ',' << fmt_val(r.J_pos);
        for (int j = 0; j < 16; ++j) out << ',' << fmt_val(r.q_cmd[j]);
        out << '\n';
    }
}

std::vector<FrameRecord> read_records_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader)
        throw ConfigInvalid("records CSV header mismatch in " + path);
    std::vector<FrameRecord> records;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 27)
            throw ConfigInvalid("records CSV line " + std::to_string(lineno) +
                                ": expected 27 columns");
        const std::string where = path + ":" + std::to_string(lineno);
        FrameRecord r;
        r.t = parse_double(cells[0], where);
        r.gate_active = parse_double(cells[1], where) != 0.0;
        r.theta_task_deg = parse_double(cells[2], where);
        r.theta_r_deg = parse_double(cells[3], where);
        r.theta_gt_deg = parse_double(cells[4], where);
        r.axis_dev_deg = parse_double(cells[5], where);
        r.J_total = parse_double(cells[6], where);
        r.J_rot = parse_double(cells[7], where);
        r.J_conn = parse_double(cells[8], where);
        r.J_axis = parse_double(cells[9], where);
        r.J_pos = parse_double(cells[10], where);
        for (int j = 0; j < 16; ++j)
            r.q_cmd[j] = parse_double(cells[static_cast<size_t>(11 + j)], where);
        records.push_back(r);
    }
    return records;
}

namespace {

json scenario_to_json(const ScenarioConfig& s) {
    json o;
    o["frame_rate"] = s.frame_rate;
    o["axis_in_palm"] = {s.axis_in_palm.x(), s.axis_in_palm.y(), s.axis_in_palm.z()};
    o["turn_rate_deg_s"] = s.turn_rate_deg_s;
    json segs = json::array();
    for (const ScenarioSegment& seg : s.segments) {
        json so;
        switch (seg.kind) {
        case ScenarioSegment::Kind::turn: so["type"] = "turn"; break;
        case ScenarioSegment::Kind::hold: so["type"] = "hold"; break;
        case ScenarioSegment::Kind::release_and_rewind:
            so["type"] = "release_and_rewind";
            so["rewind_deg"] = seg.rewind_deg;
            break;
        }
        so["duration_s"] = seg.duration_s;
        segs.push_back(so);
    }
    o["segments"] = segs;
    o["noise_sigma"] = s.noise_sigma;
    o["human_tripod_radius"] = s.human_tripod_radius;
    o["human_scale"] = s.human_scale;
    o["seed"] = s.seed;
    o["lead_in_s"] = s.lead_in_s;
    return o;
}

ScenarioConfig scenario_from_json(const json& o) {
    reject_unknown(o,
                   {"frame_rate", "axis_in_palm", "turn_rate_deg_s", "segments", "noise_sigma",
                    "human_tripod_radius", "human_scale", "seed", "lead_in_s"},
                   "scenario");
    ScenarioConfig s;
    read_if(o, "frame_rate", s.frame_rate);
    if (o.contains("axis_in_palm")) s.axis_in_palm = vec3_from(o["axis_in_palm"], "axis_in_palm");
    read_if(o, "turn_rate_deg_s", s.turn_rate_deg_s);
    if (o.contains("segments")) {
        if (!o["segments"].is_array()) throw ConfigInvalid("scenario segments must be an array");
        for (const json& so : o["segments"]) {
            ScenarioSegment seg;
            const std::string type = so.at("type").get<std::string>();
            if (type == "turn") {
                reject_unknown(so, {"type", "duration_s"}, "turn segment");
                seg.kind = ScenarioSegment::Kind::turn;
            } else if (type == "hold") {
                reject_unknown(so, {"type", "duration_s"}, "hold segment");
                seg.kind = ScenarioSegment::Kind::hold;
            } else if (type == "release_and_rewind") {
                reject_unknown(so, {"type", "duration_s", "rewind_deg"},
                               "release_and_rewind segment");
                seg.kind = ScenarioSegment::Kind::release_and_rewind;
                read_if(so, "rewind_deg", seg.rewind_deg);
            } else {
                throw ConfigInvalid("unknown segment type '" + type + "'");
            }
            seg.duration_s = so.at("duration_s").get<double>();
            s.segments.push_back(seg);
        }
    }
    read_if(o, "noise_sigma", s.noise_sigma);
    read_if(o, "human_tripod_radius", s.human_tripod_radius);
    read_if(o, "human_scale", s.human_scale);
    read_if(o, "seed", s.seed);
    read_if(o, "lead_in_s", s.lead_in_s);
    s.validate();
    return s;
}

} // namespace

static RunConfig run_config_from_parsed(const json& root);

RunConfig run_config_from_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("run config: invalid JSON: ") + e.what());
    }
    try {
        return run_config_from_parsed(root);
    } catch (const json::exception& e) {
        // Wrong value types surface as validation failures, not crashes.
        throw ConfigInvalid(std::string("run config: ") + e.what());
    }
}

static RunConfig run_config_from_parsed(const json& root) {
    reject_unknown(root, {"gate", "intent", "refine", "baseline", "hand_model_path", "scenario"},
                   "run config");
    RunConfig cfg;
    if (root.contains("gate")) {
        const json& g = root["gate"];
        reject_unknown(g, {"d_on", "d_off", "n_on", "n_off"}, "gate");
        read_if(g, "d_on", cfg.gate.d_on);
        read_if(g, "d_off", cfg.gate.d_off);
        read_if(g, "n_on", cfg.gate.n_on);
        read_if(g, "n_off", cfg.gate.n_off);
    }
    cfg.gate.validate();
    if (root.contains("intent")) {
        const json& g = root["intent"];
        reject_unknown(g, {"dtheta_clip", "axis_flip_guard"}, "intent");
        read_if(g, "dtheta_clip", cfg.intent.dtheta_clip);
        read_if(g, "axis_flip_guard", cfg.intent.axis_flip_guard);
    }
    cfg.intent.validate();
    if (root.contains("refine")) {
        const json& g = root["refine"];
        reject_unknown(g,
                       {"w_rot", "w_conn", "w_axis", "w_pos", "iterations", "fd_step", "step_size",
                        "per_iter_clip"},
                       "refine");
        read_if(g, "w_rot", cfg.refine.w_rot);
        read_if(g, "w_conn", cfg.refine.w_conn);
        read_if(g, "w_axis", cfg.refine.w_axis);
        read_if(g, "w_pos", cfg.refine.w_pos);
        read_if(g, "iterations", cfg.refine.iterations);
        read_if(g, "fd_step", cfg.refine.fd_step);
        read_if(g, "step_size", cfg.refine.step_size);
        read_if(g, "per_iter_clip", cfg.refine.per_iter_clip);
    }
    cfg.refine.validate();
    if (root.contains("baseline")) {
        const json& g = root["baseline"];
        reject_unknown(g, {"alpha", "iterations", "fd_step", "step_size", "per_iter_clip"},
                       "baseline");
        read_if(g, "alpha", cfg.baseline.alpha);
        read_if(g, "iterations", cfg.baseline.iterations);
        read_if(g, "fd_step", cfg.baseline.fd_step);
        read_if(g, "step_size", cfg.baseline.step_size);
        read_if(g, "per_iter_clip", cfg.baseline.per_iter_clip);
    }
    cfg.baseline.validate();
    read_if(root, "hand_model_path", cfg.hand_model_path);
    if (root.contains("scenario")) cfg.scenario = scenario_from_json(root["scenario"]);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return run_config_from_json(ss.str());
}

static json metrics_to_json(const MetricsReport& m, bool with_axis) {
    json o;
    o["rmse_deg"] = m.rmse_deg;
    o["mae_deg"] = m.mae_deg;
    o["corr"] = m.corr;
    if (with_axis) {
        o["axis_dev_mean_deg"] = m.axis_dev_mean_deg;
        o["axis_dev_max_deg"] = m.axis_dev_max_deg;
    }
    o["n_samples"] = m.n_samples;
    return o;
}

std::string report_to_json(const RunReport& report) {
    json o;
    o["scenario_digest"] = report.scenario_digest;
    o["intent"] = metrics_to_json(report.intent, false);
    json methods = json::object();
    for (const auto& [name, m] : report.methods) methods[name] = metrics_to_json(m, true);
    o["methods"] = methods;
    return o.dump(2) + "\n";
}

void write_report_json(const std::string& path, const RunReport& report) {
    std::ofstream out = open_out(path);
    out << report_to_json(report);
}

std::string scenario_digest(const ScenarioConfig& cfg) {
    const std::string canon = scenario_to_json(cfg).dump();
    uint64_t h = 1469598103934665603ULL; // FNV-1a 64 offset basis
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

} // namespace dextwist
