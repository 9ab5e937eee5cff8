// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, independent of the unit suite.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dextwist/io.hpp"

using namespace dextwist;

namespace {

struct Criterion {
    bool ok = false;
    std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

RunConfig suite_config(const std::string& name) {
    return load_run_config(std::string(DEXTWIST_CONFIG_DIR) + "/" + name);
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- A1 ----
Criterion check_a1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 3.0);

    double worst_vec = 0.0, worst_mat = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vec3 axis(coord(rng), coord(rng), coord(rng));
        while (axis.norm() < 1e-3) axis = Vec3(coord(rng), coord(rng), coord(rng));
        const Vec3 w = axis.normalized() * angle(rng);
        const Rotation r = so3_exp(w);
        const Vec3 w2 = so3_log(r);
        worst_vec = std::max(worst_vec, (w - w2).norm());
        worst_mat = std::max(worst_mat, (so3_exp(w2).matrix() - r.matrix()).cwiseAbs().maxCoeff());
    }

    double worst_orth = 0.0, worst_det = 0.0;
    int built = 0;
    while (built < 1000) {
        HandFrameSample s;
        for (const std::string& name : HandFrameSample::required_keypoints())
            s.keypoints[name] = 0.5 * Vec3(coord(rng), coord(rng), coord(rng));
        try {
            const PalmFrame f = build_palm_frame(s);
            const Mat3 m = f.pose.rotation.matrix();
            worst_orth = std::max(
                worst_orth, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
            worst_det = std::max(worst_det, std::abs(m.determinant() - 1.0));
            ++built;
        } catch (const DegenerateKeypoints&) {
            // vanishingly rare with random points; resample
        }
    }
    const double elapsed = seconds_since(t0);

    Criterion c;
    c.ok = worst_vec <= 1e-9 && worst_mat <= 1e-9 && worst_orth <= 1e-9 && worst_det <= 1e-9 &&
           elapsed < 1.0;
    c.detail = "log/exp round-trip " + fmt(worst_vec) + ", palm orthonormality " + fmt(worst_orth) +
               ", det " + fmt(worst_det) + ", " + fmt(elapsed) + " s";
    return c;
}

// ---------------------------------------------------------------- A2 ----
Criterion check_a2(const PipelineResult& ratchet_run) {
    // (a) 45 noise-free 2-degree steps accumulate to 90 degrees.
    IntentState st;
    const IntentConfig icfg;
    const UnitVec3 z = UnitVec3::trusted(Vec3::UnitZ());
    for (int k = 0; k <= 45; ++k) {
        ToolFrame tool;
        tool.rotation = Rotation::axis_angle(z, deg2rad(2.0) * k);
        tool.origin = Vec3(0.05, 0.02, 0.03);
        st = update_intent(st, tool, icfg, true);
    }
    const double step_err = std::abs(rad2deg(st.theta_task) - 90.0);

    // (b) the three-ratchet run ends near 180 degrees of accumulated intent.
    const double ratchet_theta = ratchet_run.records.back().theta_task_deg;
    const double ratchet_err = std::abs(ratchet_theta - 180.0);

    // (c) exact constancy over every inactive interval of that run.
    bool frozen = true;
    int inactive_frames = 0;
    for (size_t i = 1; i < ratchet_run.records.size(); ++i) {
        if (!ratchet_run.records[i].gate_active && !ratchet_run.records[i - 1].gate_active) {
            ++inactive_frames;
            if (ratchet_run.records[i].theta_task_deg !=
                ratchet_run.records[i - 1].theta_task_deg)
                frozen = false;
        }
    }

    Criterion c;
    c.ok = step_err <= 0.001 && ratchet_err <= 2.0 && frozen && inactive_frames > 20;
    c.detail = "45x2deg err " + fmt(step_err) + " deg, ratchet theta_task " + fmt(ratchet_theta) +
               " deg, frozen over " + std::to_string(inactive_frames) + " inactive frames" +
               (frozen ? "" : " (VARIED)");
    return c;
}

// ---------------------------------------------------------------- A3 ----
// Independent reference: plain consecutive-run counting per the definition.
struct ReferenceGate {
    bool active = false;
    int run = 0;
    int episode = 0;

    void step(bool pinch_sym, int n_on, int n_off) {
        if (!active) {
            run = pinch_sym ? run + 1 : 0;
            if (run >= n_on) {
                active = true;
                ++episode;
                run = 0;
            }
        } else {
            run = pinch_sym ? 0 : run + 1;
            if (run >= n_off) {
                active = false;
                run = 0;
            }
        }
    }
};

Criterion check_a3() {
    const PinchGateConfig cfg; // defaults
    long mismatches = 0, strings = 0;
    for (int len = 1; len <= 8; ++len) {
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
            ++strings;
            PinchGateState gate;
            ReferenceGate ref;
            for (int i = 0; i < len; ++i) {
                const bool pinch = (bits >> i) & 1u;
                const double d = pinch ? 0.030 : 0.080;
                gate = update_gate(gate, d, d, cfg);
                ref.step(pinch, cfg.n_on, cfg.n_off);
                if (gate.active != ref.active || gate.episode_id != ref.episode) ++mismatches;
            }
        }
    }

    // Direct corollaries: sub-threshold runs never activate; a single-frame
    // glitch in either direction never toggles a settled gate.
    PinchGateState g;
    g = update_gate(g, 0.03, 0.03, cfg);
    g = update_gate(g, 0.03, 0.03, cfg);
    const bool two_not_enough = !g.active;
    g = update_gate(g, 0.03, 0.03, cfg);
    const bool three_activates = g.active;
    PinchGateState glitched = update_gate(g, 0.08, 0.08, cfg); // one release frame
    glitched = update_gate(glitched, 0.03, 0.03, cfg);
    const bool glitch_held = glitched.active && glitched.episode_id == g.episode_id;

    Criterion c;
    c.ok = mismatches == 0 && two_not_enough && three_activates && glitch_held;
    c.detail = std::to_string(strings) + " strings vs reference automaton, " +
               std::to_string(mismatches) + " mismatches";
    return c;
}

// ----------------------------------------------------------- A4 - A6 ----
struct SuiteRow {
    std::string name;
    MetricsReport dx;
    MetricsReport vec;
};

std::vector<SuiteRow> run_suite(double noise_sigma, std::vector<RefineAudit>* audits) {
    const char* names[3] = {"turn120.json", "ratchet3x60.json", "holds.json"};
    std::vector<SuiteRow> rows;
    for (const char* name : names) {
        RunConfig cfg = suite_config(name);
        cfg.scenario.noise_sigma = noise_sigma;
        const HandModel model = default_model();
        const Scenario sc = generate_scenario(cfg.scenario);

        RefineAudit audit;
        const PipelineResult dx =
            run_pipeline(sc.trajectory, sc.gt, RetargetMethod::dextwist, model, cfg, &audit);
        if (audits) audits->push_back(audit);
        const PipelineResult vec =
            run_pipeline(sc.trajectory, sc.gt, RetargetMethod::vector_baseline, model, cfg);

        SuiteRow row;
        row.name = name;
        row.dx = method_report(dx.records, sc.gt);
        row.vec = method_report(vec.records, sc.gt);
        rows.push_back(row);
    }
    return rows;
}

Criterion check_a4(const std::vector<RefineAudit>& audits) {
    long calls = 0, monotone = 0, ring = 0;
    bool bound_ok = true;
    for (const RefineAudit& a : audits) {
        calls += a.calls;
        monotone += a.monotone_violations;
        ring += a.ring_changed;
        if (a.max_update_inf > a.max_allowed_inf + 1e-15) bound_ok = false;
    }

    // 1-D toy: descent on (q - 0.05)^2 with the default options contracts
    // the gap by 0.96 per iteration; five iterations leave the iterate
    // 0.05 * 0.96^5 = 0.0408 rad short of the 0.05 rad optimum.
    const auto f = [](const Eigen::VectorXd& q) {
        return (q[0] - 0.05) * (q[0] - 0.05);
    };
    const fdgd::Options opt; // defaults: 5 iterations, step 0.02, clip 0.05
    const fdgd::Result r = fdgd::minimize(f, Eigen::VectorXd::Zero(1), {0}, opt);
    const double dist = std::abs(r.q[0] - 0.05);

    Criterion c;
    c.ok = calls > 500 && monotone == 0 && ring == 0 && bound_ok && dist >= 0.04 && dist <= 0.05;
    c.detail = std::to_string(calls) + " refine calls, " + std::to_string(monotone) +
               " objective increases, " + std::to_string(ring) +
               " ring changes, toy gap " + fmt(dist) + " rad";
    return c;
}

Criterion check_a5(const std::vector<SuiteRow>& rows, double elapsed_s) {
    bool ordering = true;
    double dx_axis_sum = 0.0, vec_axis_sum = 0.0;
    long dx_n = 0, vec_n = 0;
    std::string per;
    for (const SuiteRow& r : rows) {
        if (!(r.dx.rmse_deg < r.vec.rmse_deg) || !(r.dx.mae_deg < r.vec.mae_deg)) ordering = false;
        dx_axis_sum += r.dx.axis_dev_mean_deg * static_cast<double>(r.dx.n_samples);
        vec_axis_sum += r.vec.axis_dev_mean_deg * static_cast<double>(r.vec.n_samples);
        dx_n += r.dx.n_samples;
        vec_n += r.vec.n_samples;
        per += " " + r.name + " rmse " + fmt(r.dx.rmse_deg) + "/" + fmt(r.vec.rmse_deg) + ";";
    }
    const double dx_axis = dx_n > 0 ? dx_axis_sum / static_cast<double>(dx_n) : 1e9;
    const double vec_axis = vec_n > 0 ? vec_axis_sum / static_cast<double>(vec_n) : 0.0;
    const bool axis_ok = vec_axis > 0.0 && dx_axis <= 0.60 * vec_axis;

    Criterion c;
    c.ok = ordering && axis_ok && elapsed_s < 30.0;
    c.detail = "twist/vector:" + per + " axis " + fmt(dx_axis) + "/" + fmt(vec_axis) + " deg (ratio " +
               fmt(vec_axis > 0 ? dx_axis / vec_axis : -1.0) + "), " + fmt(elapsed_s) + " s";
    return c;
}

Criterion check_a6(const std::vector<std::vector<SuiteRow>>& sweeps) {
    bool ok = true;
    std::string detail;
    const char* labels[3] = {"0mm", "1mm", "3mm"};
    for (size_t s = 0; s < sweeps.size(); ++s) {
        for (const SuiteRow& r : sweeps[s]) {
            if (!(r.dx.rmse_deg < r.vec.rmse_deg)) {
                ok = false;
                detail += " INVERTED " + std::string(labels[s]) + " " + r.name + ";";
            }
        }
    }
    if (ok) detail = "twist < vector RMSE held for all 3 scenarios at sigma in {0, 1, 3} mm";
    Criterion c;
    c.ok = ok;
    c.detail = detail;
    return c;
}

// ---------------------------------------------------------------- A7 ----
Criterion check_a7() {
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> err(-0.5, 0.5);
    std::uniform_int_distribution<int> len(2, 200);

    double worst = 0.0;
    bool order_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = len(rng);
        std::vector<double> e(static_cast<size_t>(n));
        for (double& v : e) v = err(rng);

        long double sq = 0.0L, ab = 0.0L;
        for (double v : e) {
            sq += static_cast<long double>(v) * v;
            ab += std::abs(static_cast<long double>(v));
        }
        const double ref_rmse = rad2deg(static_cast<double>(std::sqrt(sq / n)));
        const double ref_mae = rad2deg(static_cast<double>(ab / n));

        const auto [rmse, mae] = rmse_mae(e);
        worst = std::max({worst, std::abs(rmse - ref_rmse), std::abs(mae - ref_mae)});
        if (rmse < mae - 1e-12) order_ok = false;
    }

    for (int trial = 0; trial < 1000; ++trial) {
        const int n = len(rng);
        std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)] = err(rng) + 0.01 * i; // guarantees spread
            b[static_cast<size_t>(i)] = err(rng) - 0.02 * i;
        }
        long double ma = 0.0L, mb = 0.0L;
        for (int i = 0; i < n; ++i) { ma += a[static_cast<size_t>(i)]; mb += b[static_cast<size_t>(i)]; }
        ma /= n;
        mb /= n;
        long double cov = 0.0L, va = 0.0L, vb = 0.0L;
        for (int i = 0; i < n; ++i) {
            const long double da = a[static_cast<size_t>(i)] - ma;
            const long double db = b[static_cast<size_t>(i)] - mb;
            cov += da * db;
            va += da * da;
            vb += db * db;
        }
        const double ref = static_cast<double>(cov / std::sqrt(va * vb));
        const double got = pearson(a, b);
        worst = std::max(worst, std::abs(got - ref));
        if (std::abs(got) > 1.0 + 1e-15) order_ok = false;
    }

    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vec3 u(coord(rng), coord(rng), coord(rng)), v(coord(rng), coord(rng), coord(rng));
        if (u.norm() < 1e-3 || v.norm() < 1e-3) { --trial; continue; }
        const UnitVec3 a = unit(u), b = unit(v);
        const double dot = std::min(1.0, std::abs(a.vec().dot(b.vec())));
        const double ref = rad2deg(std::acos(dot));
        worst = std::max(worst, std::abs(axis_deviation(a, b) - ref));
    }

    Criterion c;
    c.ok = worst <= 1e-9 && order_ok;
    c.detail = "worst oracle gap " + fmt(worst) + " deg over 3000 random series, RMSE >= MAE held";
    return c;
}

// ---------------------------------------------------------------- A8 ----
Criterion check_a8(const std::vector<double>& frame_seconds) {
    std::vector<double> s = frame_seconds;
    std::sort(s.begin(), s.end());
    const size_t n = s.size();
    Criterion c;
    if (n == 0) {
        c.detail = "no frames timed";
        return c;
    }
    const double median = s[n / 2];
    const size_t p99_idx = static_cast<size_t>(std::ceil(0.99 * static_cast<double>(n))) - 1;
    const double p99 = s[std::min(p99_idx, n - 1)];
    c.ok = median <= 0.005 && p99 <= 0.015;
    c.detail = "median " + fmt(median * 1e3) + " ms, p99 " + fmt(p99 * 1e3) + " ms over " +
               std::to_string(n) + " frames";
    return c;
}

// ---------------------------------------------------------------- A9 ----
Criterion check_a9() {
    namespace fs = std::filesystem;
    const fs::path root =
        fs::temp_directory_path() / ("dextwist_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");

    const std::string config = std::string(DEXTWIST_CONFIG_DIR) + "/default.json";
    auto run_once = [&](const std::string& tag) {
        const std::string cmd = std::string("\"") + DEXTWIST_CLI_PATH + "\" compare --config \"" +
                                config + "\" --methods dextwist,vector --report \"" +
                                (root / tag / "report.json").string() + "\" --records-dir \"" +
                                (root / tag).string() + "\" > /dev/null";
        return std::system(cmd.c_str());
    };
    const int rc_a = run_once("a");
    const int rc_b = run_once("b");

    bool identical = rc_a == 0 && rc_b == 0;
    std::string what = "exit codes " + std::to_string(rc_a) + "/" + std::to_string(rc_b);
    if (identical) {
        const char* files[3] = {"report.json", "records_dextwist.csv", "records_vector.csv"};
        for (const char* f : files) {
            const std::string xa = read_file_bytes((root / "a" / f).string());
            const std::string xb = read_file_bytes((root / "b" / f).string());
            if (xa != xb || xa.empty()) {
                identical = false;
                what += std::string(", ") + f + " differs";
            }
        }
        if (identical) what = "report.json and both records CSVs byte-identical across runs";
    }
    fs::remove_all(root);
    Criterion c;
    c.ok = identical;
    c.detail = what;
    return c;
}

} // namespace

int main() {
    Criterion crit[10];

    crit[1] = check_a1();
    crit[3] = check_a3();

    // Shared pipeline runs: suite at three noise levels, ratchet intent run,
    // default-scenario timing run.
    std::vector<RefineAudit> audits;
    const auto suite_t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<SuiteRow>> sweeps;
    sweeps.push_back(run_suite(0.0, &audits));
    const double suite_elapsed = seconds_since(suite_t0);
    sweeps.push_back(run_suite(0.001, nullptr));
    sweeps.push_back(run_suite(0.003, nullptr));

    {
        RunConfig cfg = suite_config("ratchet3x60.json");
        const HandModel model = default_model();
        const Scenario sc = generate_scenario(cfg.scenario);
        const PipelineResult run =
            run_pipeline(sc.trajectory, sc.gt, RetargetMethod::dextwist, model, cfg);
        crit[2] = check_a2(run);
    }

    std::vector<double> default_frame_seconds;
    {
        RunConfig cfg = suite_config("default.json");
        const HandModel model = default_model();
        const Scenario sc = generate_scenario(cfg.scenario);
        RefineAudit audit;
        const PipelineResult run =
            run_pipeline(sc.trajectory, sc.gt, RetargetMethod::dextwist, model, cfg, &audit);
        audits.push_back(audit);
        default_frame_seconds = run.frame_seconds;
    }

    crit[4] = check_a4(audits);
    crit[5] = check_a5(sweeps[0], suite_elapsed);
    crit[6] = check_a6(sweeps);
    crit[7] = check_a7();
    crit[8] = check_a8(default_frame_seconds);
    crit[9] = check_a9();

    const char* names[10] = {"",
                             "math kernel round-trips and palm orthonormality",
                             "intent accumulation and ratchet constancy",
                             "gate state machine vs reference automaton",
                             "refinement contract and 1-D toy solve",
                             "twist beats vector baseline on the suite",
                             "noise sweep preserves the RMSE ordering",
                             "metrics match brute-force oracles",
                             "refine-path frame time budget",
                             "byte-identical compare runs"};
    int failures = 0;
    for (int i = 1; i <= 9; ++i) {
        const bool ok = crit[i].ok;
        failures += ok ? 0 : 1;
        std::cout << (ok ? "[PASS] A" : "[FAIL] A") << i << " " << names[i] << ": "
                  << crit[i].detail << "\n";
    }
    return failures == 0 ? 0 : 1;
}
