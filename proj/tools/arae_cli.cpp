// Command-line front end: kinematics queries, pose estimation over a
// trajectory, gravity-compensation torques, synthetic-scene simulation,
// estimator evaluation, and the sEMG envelope chain.
//
// Exit codes: 0 ok, 2 parse/config error, 3 numeric/solver error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "arae/config.hpp"
#include "arae/control.hpp"
#include "arae/metrics.hpp"
#include "arae/scenario.hpp"

using namespace arae;

namespace {

std::vector<double> parse_numbers(const std::string& csv, size_t count, const char* what) {
    std::vector<double> out;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) {
        try {
            size_t used = 0;
            const double v = std::stod(cur, &used);
            if (used != cur.size() || !std::isfinite(v)) throw std::invalid_argument(cur);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError,
                        std::string(what) + ": bad numeric value '" + cur + "'");
        }
    }
    if (out.size() != count) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": expected " +
                                               std::to_string(count) + " comma-separated values");
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + out_path);
    out << text;
}

nlohmann::ordered_json vec_json(const Vec3& v) {
    return nlohmann::ordered_json::array({v.x(), v.y(), v.z()});
}

EstimatorModel parse_model(const std::string& name) {
    if (name == "fixed") return EstimatorModel::FixedTorso;
    if (name == "sagittal") return EstimatorModel::Sagittal;
    throw Error(ErrorCode::ParseError, "unknown estimator model '" + name + "'");
}

ControlMode parse_mode(const std::string& name) {
    if (name == "transparent") return ControlMode::Transparent;
    if (name == "fixed") return ControlMode::AdaptiveFixedTorso;
    if (name == "sagittal") return ControlMode::AdaptiveSagittal;
    throw Error(ErrorCode::ParseError, "unknown control mode '" + name + "'");
}

struct Args {
    std::string config_path;
    std::string out_path;
    std::string q_csv;
    std::string p3_csv;
    std::string traj_path;
    std::string scenario_path;
    std::string model = "fixed";
    std::string mode = "transparent";
    std::string in_path;
    std::string baseline_path;
    uint64_t seed = 0;
};

ToolkitConfig load_or_default(const Args& args) {
    if (args.config_path.empty()) return default_config();
    return load_config(args.config_path);
}

int run_fk(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const auto q = parse_numbers(args.q_csv, 5, "--q");
    const RobotJointState joints{q[0], q[1], q[2], q[3], q[4]};
    validate_joint_limits(cfg.controller.robot, joints);
    const RobotFk fk = fk_chain(cfg.controller.robot, joints);
    nlohmann::ordered_json j;
    j["p3"] = vec_json(fk.p3);
    j["p5"] = vec_json(fk.p5);
    j["p6"] = vec_json(fk.p6);
    j["p7"] = vec_json(fk.p7);
    emit(j.dump(2) + "\n", args.out_path);
    return 0;
}

int run_ik(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const auto p = parse_numbers(args.p3_csv, 3, "--p3");
    const ActiveJoints sol = ik_active(cfg.controller.robot, Vec3(p[0], p[1], p[2]));
    nlohmann::ordered_json j;
    j["q1"] = sol.q1;
    j["q2"] = sol.q2;
    j["q3"] = sol.q3;
    emit(j.dump(2) + "\n", args.out_path);
    return 0;
}

int run_estimate(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const EstimatorModel model = parse_model(args.model);
    const auto samples = read_trajectory_csv(args.traj_path);

    std::vector<double> t;
    std::array<std::vector<double>, 4> h;
    std::array<std::vector<double>, 3> shoulder;
    std::vector<double> l_u_cal;
    for (const auto& s : samples) {
        const CuffPoints cuff = cuff_points(cfg.controller.robot, s.q);
        HumanJointAngles angles;
        if (model == EstimatorModel::FixedTorso) {
            const FixedTorsoEstimate est = estimate_fixed_torso(
                cuff.elbow, cuff.wrist, cfg.controller.calib_shoulder, cfg.controller.human.l_F);
            angles = est.h;
            l_u_cal.push_back(est.l_U_cal);
        } else {
            const SagittalEstimate est = estimate_sagittal(
                cuff.elbow, cuff.wrist, cfg.controller.calib_pelvis, cfg.controller.torso,
                cfg.controller.human.l_U, cfg.controller.human.l_F,
                cfg.controller.sagittal_clamp_tol);
            angles = est.h;
            for (int i = 0; i < 3; ++i) shoulder[static_cast<size_t>(i)].push_back(est.shoulder_p(i));
        }
        t.push_back(s.t);
        const auto arr = angles.as_array();
        for (size_t j = 0; j < 4; ++j) h[j].push_back(arr[j]);
    }

    std::vector<std::string> header = {"t", "h1", "h2", "h3", "h4"};
    std::vector<std::vector<double>> cols = {t, h[0], h[1], h[2], h[3]};
    if (model == EstimatorModel::FixedTorso) {
        header.push_back("l_U_cal");
        cols.push_back(l_u_cal);
    } else {
        header.insert(header.end(), {"sx", "sy", "sz"});
        cols.insert(cols.end(), {shoulder[0], shoulder[1], shoulder[2]});
    }
    const std::string out = args.out_path.empty() ? "estimate.csv" : args.out_path;
    write_columns_csv(out, header, cols);
    std::printf("wrote %s (%zu samples, %s model)\n", out.c_str(), t.size(),
                estimator_model_name(model));
    return 0;
}

int run_gc(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const auto q = parse_numbers(args.q_csv, 5, "--q");
    const TorqueCommand cmd = control_step({q[0], q[1], q[2], q[3], q[4]},
                                           parse_mode(args.mode), cfg.controller);
    nlohmann::ordered_json j;
    j["mode"] = args.mode;
    j["tau"] = {cmd.tau1, cmd.tau2, cmd.tau3};
    j["flags"] = {{"clamped", cmd.clamped},
                  {"estimator_fallback", cmd.estimator_fallback},
                  {"degenerate_jacobian", cmd.degenerate_jacobian},
                  {"sagittal_clamped", cmd.sagittal_clamped}};
    emit(j.dump(2) + "\n", args.out_path);
    return 0;
}

int run_simulate(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const SyntheticScenario scenario = load_scenario(args.scenario_path);
    const auto samples = generate_scenario(scenario, cfg.controller.robot, args.seed);
    const std::string out = args.out_path.empty() ? "trajectory.csv" : args.out_path;
    write_trajectory_csv(out, samples);
    std::printf("wrote %s (%zu samples)\n", out.c_str(), samples.size());
    return 0;
}

int run_evaluate(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const EstimatorModel model = parse_model(args.model);
    const auto samples = read_trajectory_csv(args.traj_path);
    EvalSeries series;
    const EvalReport report = evaluate(samples, cfg.controller, model, &series);

    const std::string stem = args.out_path.empty() ? "report" : args.out_path;
    write_report_json(stem + ".json", report);
    write_eval_csvs(stem, report, series);
    std::printf("%s model: mean MAE %.4f deg over %zu samples (wrote %s.json)\n",
                estimator_model_name(model), report.mae.mean_deg, report.samples, stem.c_str());
    return 0;
}

int run_emg(const Args& args) {
    const ToolkitConfig cfg = load_or_default(args);
    const EmgRecord rec = read_emg_csv(args.in_path);
    const auto envelopes = emg_pipeline(rec, cfg.filters);

    EmgSummary summary;
    for (size_t c = 0; c < 4; ++c) summary.mav[c] = mav(envelopes[c]);
    if (!args.baseline_path.empty()) {
        const EmgRecord base = read_emg_csv(args.baseline_path);
        const auto base_env = emg_pipeline(base, cfg.filters);
        std::array<double, 4> delta{};
        for (size_t c = 0; c < 4; ++c) {
            delta[c] = delta_mav_percent(summary.mav[c], mav(base_env[c]));
        }
        summary.delta_mav_percent = delta;
    }

    if (!args.out_path.empty()) {
        EmgRecord env_rec = rec;
        env_rec.channels = envelopes;
        write_emg_csv(args.out_path, env_rec);
    }

    nlohmann::ordered_json j;
    for (size_t c = 0; c < 4; ++c) {
        nlohmann::ordered_json ch;
        ch["mav"] = summary.mav[c];
        if (summary.delta_mav_percent) ch["delta_mav_percent"] = (*summary.delta_mav_percent)[c];
        j[EmgRecord::kChannelNames[c]] = ch;
    }
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arm-support robot toolkit: kinematics, pose estimation, "
                 "gravity compensation, evaluation harness"};
    app.require_subcommand(1);

    Args args;
    app.add_option("--config", args.config_path, "JSON config file")->capture_default_str();

    auto* fk = app.add_subcommand("fk", "forward kinematics of the interaction points");
    fk->add_option("--q", args.q_csv, "five joint angles q1,q2,q3,q4,q5 (rad)")->required();
    fk->add_option("--out", args.out_path, "output path (default: stdout)");

    auto* ik = app.add_subcommand("ik", "closed-form inverse kinematics of the active joints");
    ik->add_option("--p3", args.p3_csv, "target point x,y,z (m, robot frame)")->required();
    ik->add_option("--out", args.out_path, "output path (default: stdout)");

    auto* est = app.add_subcommand("estimate", "arm joint angles from a robot trajectory");
    est->add_option("--model", args.model, "fixed | sagittal")->required();
    est->add_option("--traj", args.traj_path, "trajectory CSV")->required();
    est->add_option("--out", args.out_path, "output CSV (default: estimate.csv)");

    auto* gc = app.add_subcommand("gc", "gravity-compensation torques for one joint snapshot");
    gc->add_option("--mode", args.mode, "transparent | fixed | sagittal")->required();
    gc->add_option("--q", args.q_csv, "five joint angles q1,q2,q3,q4,q5 (rad)")->required();
    gc->add_option("--out", args.out_path, "output path (default: stdout)");

    auto* sim = app.add_subcommand("simulate", "generate a ground-truth trajectory");
    sim->add_option("--scenario", args.scenario_path, "scenario JSON")->required();
    sim->add_option("--seed", args.seed, "seed for randomized profile phases");
    sim->add_option("--out", args.out_path, "output CSV (default: trajectory.csv)");

    auto* ev = app.add_subcommand("evaluate", "estimator accuracy report for a trajectory");
    ev->add_option("--traj", args.traj_path, "trajectory CSV with ground truth")->required();
    ev->add_option("--model", args.model, "fixed | sagittal")->required();
    ev->add_option("--out", args.out_path, "report stem (default: report)");

    auto* emg = app.add_subcommand("emg", "sEMG envelope chain and MAV metrics");
    emg->add_option("--in", args.in_path, "raw EMG CSV (t,pm,dm,bb,tb)")->required();
    emg->add_option("--baseline", args.baseline_path, "baseline EMG CSV for delta-MAV%");
    emg->add_option("--out", args.out_path, "envelope CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fk->parsed()) return run_fk(args);
        if (ik->parsed()) return run_ik(args);
        if (est->parsed()) return run_estimate(args);
        if (gc->parsed()) return run_gc(args);
        if (sim->parsed()) return run_simulate(args);
        if (ev->parsed()) return run_evaluate(args);
        if (emg->parsed()) return run_emg(args);
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", error_code_name(e.code()), e.what());
        return e.is_input_error() ? 2 : 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
