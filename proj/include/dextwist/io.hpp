#pragma once

#include <string>
#include <vector>

#include "dextwist/pipeline.hpp"

namespace dextwist {

// Trajectory: one JSON object per line, {"t": s, "keypoints": {name: [x,y,z]}}.
// The reader rejects non-monotone timestamps and missing required keypoints.
void write_trajectory_jsonl(const std::string& path, const std::vector<HandFrameSample>& traj);
std::vector<HandFrameSample> read_trajectory_jsonl(const std::string& path);

// Ground truth: CSV "t,theta_gt_deg,active".
void write_gt_csv(const std::string& path, const AngleSeries& gt);
AngleSeries read_gt_csv(const std::string& path);

// Per-frame records: CSV with the documented fixed column order.
void write_records_csv(const std::string& path, const std::vector<FrameRecord>& records);
std::vector<FrameRecord> read_records_csv(const std::string& path);

// Strict run config: unknown keys anywhere are ConfigInvalid.
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_json(const std::string& json_text);

void write_report_json(const std::string& path, const RunReport& report);
std::string report_to_json(const RunReport& report);

// FNV-1a over the canonical scenario serialization; stable across runs.
std::string scenario_digest(const ScenarioConfig& cfg);

} // namespace dextwist
