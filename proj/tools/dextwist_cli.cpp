#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dextwist/errors.hpp"
#include "dextwist/io.hpp"

namespace {

using namespace dextwist;

RetargetMethod parse_method(const std::string& name) {
    if (name == "dextwist") return RetargetMethod::dextwist;
    if (name == "vector") return RetargetMethod::vector_baseline;
    throw ConfigInvalid("unknown method '" + name + "' (expected dextwist or vector)");
}

HandModel model_from_config(const RunConfig& cfg) {
    return cfg.hand_model_path.empty() ? default_model() : load_hand_model(cfg.hand_model_path);
}

void print_timing(const std::string& label, std::vector<double> seconds) {
    if (seconds.empty()) return;
    std::sort(seconds.begin(), seconds.end());
    const auto pick = [&](double q) {
        const size_t i = static_cast<size_t>(q * static_cast<double>(seconds.size() - 1));
        return seconds[i] * 1e3;
    };
    std::fprintf(stderr, "[timing] %s: median %.3f ms, p99 %.3f ms over %zu frames\n",
                 label.c_str(), pick(0.5), pick(0.99), seconds.size());
}

int run_generate(const std::string& config_path, const std::string& out_path,
                 const std::string& gt_path) {
    RunConfig cfg = load_run_config(config_path);
    Scenario sc = generate_scenario(cfg.scenario);
    write_trajectory_jsonl(out_path, sc.trajectory);
    if (!gt_path.empty()) write_gt_csv(gt_path, sc.gt);
    std::fprintf(stderr, "[generate] %zu frames, digest %s\n", sc.trajectory.size(),
                 scenario_digest(cfg.scenario).c_str());
    return 0;
}

int run_run(const std::string& traj_path, const std::string& method_name,
            const std::string& config_path, const std::string& out_path,
            const std::string& gt_path) {
    RunConfig cfg = load_run_config(config_path);
    HandModel model = model_from_config(cfg);
    std::vector<HandFrameSample> traj = read_trajectory_jsonl(traj_path);
    AngleSeries gt;
    if (!gt_path.empty()) gt = read_gt_csv(gt_path);
    PipelineResult res = run_pipeline(traj, gt, parse_method(method_name), model, cfg);
    write_records_csv(out_path, res.records);
    print_timing(method_name, res.frame_seconds);
    return 0;
}

int run_compare(const std::string& config_path, const std::string& methods_csv,
                const std::string& report_path, const std::string& records_dir) {
    RunConfig cfg = load_run_config(config_path);
    HandModel model = model_from_config(cfg);
    Scenario sc = generate_scenario(cfg.scenario);

    std::vector<std::string> methods;
    std::stringstream ss(methods_csv);
    std::string name;
    while (std::getline(ss, name, ',')) methods.push_back(name);
    if (methods.empty()) throw ConfigInvalid("--methods must name at least one method");

    RunReport report;
    report.scenario_digest = scenario_digest(cfg.scenario);
    bool intent_done = false;
    for (const std::string& m : methods) {
        PipelineResult res = run_pipeline(sc.trajectory, sc.gt, parse_method(m), model, cfg);
        report.methods[m] = method_report(res.records, sc.gt);
        if (!intent_done) {
            report.intent = intent_report(res.records, sc.gt);
            intent_done = true;
        }
        if (!records_dir.empty())
            write_records_csv(records_dir + "/records_" + m + ".csv", res.records);
        print_timing(m, res.frame_seconds);
    }
    write_report_json(report_path, report);
    return 0;
}

int run_metrics(const std::string& records_path, const std::string& gt_path) {
    std::vector<FrameRecord> records = read_records_csv(records_path);
    AngleSeries gt = read_gt_csv(gt_path);
    RunReport report;
    report.scenario_digest = "";
    report.intent = intent_report(records, gt);
    report.methods["method"] = method_report(records, gt);
    std::cout << report_to_json(report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Functional twist retargeting harness"};
    app.require_subcommand(1);

    std::string config_path, out_path, gt_path, traj_path, method_name, methods_csv, report_path,
        records_dir, records_path;

    CLI::App* gen = app.add_subcommand("generate", "Synthesize a trajectory and ground truth");
    gen->add_option("--config", config_path, "Run config JSON")->required();
    gen->add_option("--out", out_path, "Output trajectory JSONL")->required();
    gen->add_option("--gt", gt_path, "Output ground-truth CSV");

    CLI::App* run = app.add_subcommand("run", "Run one retargeting method over a trajectory");
    run->add_option("--traj", traj_path, "Input trajectory JSONL")->required();
    run->add_option("--method", method_name, "dextwist or vector")->required();
    run->add_option("--config", config_path, "Run config JSON")->required();
    run->add_option("--out", out_path, "Output records CSV")->required();
    run->add_option("--gt", gt_path, "Ground-truth CSV (fills theta_gt_deg)");

    CLI::App* cmp = app.add_subcommand("compare", "Generate, run methods, and report metrics");
    cmp->add_option("--config", config_path, "Run config JSON")->required();
    cmp->add_option("--methods", methods_csv, "Comma-separated methods")->required();
    cmp->add_option("--report", report_path, "Output report JSON")->required();
    cmp->add_option("--records-dir", records_dir, "Also write per-method records CSVs here");

    CLI::App* met = app.add_subcommand("metrics", "Metrics from an existing records CSV");
    met->add_option("--records", records_path, "Records CSV")->required();
    met->add_option("--gt", gt_path, "Ground-truth CSV")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_generate(config_path, out_path, gt_path);
        if (run->parsed()) return run_run(traj_path, method_name, config_path, out_path, gt_path);
        if (cmp->parsed()) return run_compare(config_path, methods_csv, report_path, records_dir);
        if (met->parsed()) return run_metrics(records_path, gt_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigInvalid& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
}
