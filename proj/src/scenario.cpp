#include "arae/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace arae {

namespace {

constexpr double kClosureTol = 1e-9;

}  // namespace

double SineProfile::eval(double t) const {
    double v = offset;
    for (const auto& c : components) {
        v += c.amp * std::sin(2.0 * std::numbers::pi * c.freq_hz * t + c.phase);
    }
    return v;
}

double LeanProfile::eval(double t, double duration_s) const {
    const double s = duration_s > 0 ? std::clamp(t / duration_s, 0.0, 1.0) : 0.0;
    const double ramp = start_rad + (end_rad - start_rad) * (3.0 * s * s - 2.0 * s * s * s);
    return ramp + wobble.eval(t);
}

Vec3 SyntheticScenario::shoulder_at(double lean_rad) const {
    return torso.hip() + torso.l_SH * Vec3(0.0, -std::sin(lean_rad), std::cos(lean_rad));
}

FrameCalibration SyntheticScenario::shoulder_calibration() const {
    const Vec3 anchor = shoulder_at(calibration_lean_rad);
    FrameCalibration calib;
    calib.mode = Frame::Shoulder;
    calib.x = calib_pelvis.x - anchor.x();
    calib.y = calib_pelvis.y - anchor.y();
    calib.z = calib_pelvis.z - anchor.z();
    calib.psi = calib_pelvis.psi;
    return calib;
}

void SyntheticScenario::validate() const {
    human.validate();
    torso.validate();
    calib_pelvis.validate();
    if (calib_pelvis.mode != Frame::Pelvis) {
        throw Error(ErrorCode::ConfigError, "scenario: calibration must be pelvis-mode");
    }
    if (!(duration_s > 0.0) || !(rate_hz > 0.0)) {
        throw Error(ErrorCode::ConfigError, "scenario: duration and rate must be > 0");
    }
}

PassiveSolution solve_passive(const RobotGeometry& geom, const ActiveJoints& active,
                              const Vec3& forearm_dir_r) {
    const double norm = forearm_dir_r.norm();
    if (norm < 1e-12) {
        throw Error(ErrorCode::SolverFailure, "solve_passive: direction not normalizable");
    }
    const RobotFk fk = fk_chain(geom, {active.q1, active.q2, active.q3, 0.0, 0.0});
    const Eigen::Matrix3d r03 = fk.frames[2].block<3, 3>(0, 0);
    const Vec3 d3 = r03.transpose() * (forearm_dir_r / norm);

    PassiveSolution out;
    const double c5 = std::hypot(d3.x(), d3.y());
    out.q5 = std::atan2(-d3.z(), c5) - geom.passive_zero_q5;
    if (c5 < 1e-9) {
        out.q4 = 0.0;  // direction along the q4 axis, q4 arbitrary
        out.gimbal_degenerate = true;
    } else {
        out.q4 = std::atan2(d3.y(), d3.x()) - geom.passive_zero_q4;
    }
    return out;
}

RobotJointState solve_robot_cuff(const RobotGeometry& geom, const Vec3& elbow_r,
                                 const Vec3& forearm_dir_r) {
    const Vec3 dir = forearm_dir_r.normalized();
    Vec3 p3_target = elbow_r;
    RobotJointState joints;
    double err = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < 200; ++iter) {
        ActiveJoints active;
        try {
            active = ik_active(geom, p3_target);
        } catch (const Error& e) {
            throw Error(ErrorCode::WorkspaceViolation,
                        std::string("solve_robot_cuff: cuff target outside workspace (") +
                            e.what() + ")");
        }
        const PassiveSolution passive = solve_passive(geom, active, dir);
        joints = {active.q1, active.q2, active.q3, passive.q4, passive.q5};
        const RobotFk fk = fk_chain(geom, joints);
        const Vec3 residual = elbow_r - fk.p6;
        err = residual.norm();
        if (err < 1e-13) break;
        p3_target += residual;  // module offsets are small; contraction in practice
    }
    if (!(err < kClosureTol)) {
        throw Error(ErrorCode::SolverFailure, "solve_robot_cuff: closure iteration stalled");
    }
    return joints;
}

std::vector<TrajectorySample> generate_scenario(const SyntheticScenario& scenario,
                                                const RobotGeometry& geom, uint64_t seed) {
    scenario.validate();
    geom.validate();
    if (std::abs(geom.cuff_length() - scenario.human.l_F) > 1e-12) {
        throw Error(ErrorCode::ConfigError,
                    "generate_scenario: configured cuff length must equal the forearm length");
    }

    SyntheticScenario sc = scenario;
    if (sc.randomize_phases) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        for (auto& profile : sc.joint_profiles) {
            for (auto& c : profile.components) c.phase += phase(rng);
        }
        for (auto& c : sc.lean.wobble.components) c.phase += phase(rng);
    }

    const size_t n = static_cast<size_t>(std::llround(sc.duration_s * sc.rate_hz)) + 1;
    std::vector<TrajectorySample> samples;
    samples.reserve(n);

    for (size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sc.rate_hz;
        const HumanJointAngles h{sc.joint_profiles[0].eval(t), sc.joint_profiles[1].eval(t),
                                 sc.joint_profiles[2].eval(t), sc.joint_profiles[3].eval(t)};
        const double lean = sc.lean.eval(t, sc.duration_s);
        const Vec3 shoulder_p = sc.shoulder_at(lean);

        const HumanFk arm = human_fk(sc.human, h);
        const Vec3 elbow_p = shoulder_p + arm.elbow;
        const Vec3 wrist_p = shoulder_p + arm.wrist;

        const Vec3 elbow_r = from_human_frame(elbow_p, sc.calib_pelvis);
        const Vec3 wrist_r = from_human_frame(wrist_p, sc.calib_pelvis);

        const RobotJointState joints = solve_robot_cuff(geom, elbow_r, wrist_r - elbow_r);

        // closure certificate on both cuff endpoints
        const RobotFk fk = fk_chain(geom, joints);
        if ((fk.p6 - elbow_r).norm() > kClosureTol || (fk.p7 - wrist_r).norm() > kClosureTol) {
            throw Error(ErrorCode::SolverFailure, "generate_scenario: cuff closure failed");
        }

        TrajectorySample s;
        s.t = t;
        s.q = joints;
        s.truth_h = h;
        s.truth_shoulder_p = shoulder_p;
        samples.push_back(s);
    }
    return samples;
}

}  // namespace arae
