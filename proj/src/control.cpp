#include "arae/control.hpp"

#include <algorithm>
#include <cmath>

namespace arae {

const char* control_mode_name(ControlMode mode) {
    switch (mode) {
        case ControlMode::Transparent: return "transparent";
        case ControlMode::AdaptiveFixedTorso: return "fixed";
        case ControlMode::AdaptiveSagittal: return "sagittal";
    }
    return "?";
}

void ControllerConfig::validate() const {
    robot.validate();
    robot_mass.validate();
    human.validate();
    calib_shoulder.validate();
    calib_pelvis.validate();
    torso.validate();
    if (calib_shoulder.mode != Frame::Shoulder || calib_pelvis.mode != Frame::Pelvis) {
        throw Error(ErrorCode::ConfigError, "controller config: calibration modes swapped");
    }
    if (!(torque_limit > 0.0) || !(sagittal_clamp_tol >= 0.0)) {
        throw Error(ErrorCode::ConfigError, "controller config: bad limit/tolerance");
    }
}

Vec3 compute_tau_h(const Eigen::Matrix3d& jacobian_r, const Vec3& force_r) {
    return jacobian_r.transpose() * force_r;
}

Vec3 force_to_robot_frame(const Vec3& force_human, const FrameCalibration& calib) {
    const double c = std::cos(calib.psi), s = std::sin(calib.psi);
    // Rz(psi)^T applied to the free vector
    return {c * force_human.x() + s * force_human.y(),
            -s * force_human.x() + c * force_human.y(),
            force_human.z()};
}

TorqueCommand control_step(const RobotJointState& joints, ControlMode mode,
                           const ControllerConfig& cfg) {
    validate_joint_limits(cfg.robot, joints);

    const Vec3 tau_r = gravity_torque_robot(cfg.robot_mass, cfg.robot, joints);

    TorqueCommand cmd;
    Vec3 tau = tau_r;
    if (mode != ControlMode::Transparent) {
        try {
            const CuffPoints cuff = cuff_points(cfg.robot, joints);
            HumanJointAngles h;
            if (mode == ControlMode::AdaptiveFixedTorso) {
                h = estimate_fixed_torso(cuff.elbow, cuff.wrist, cfg.calib_shoulder,
                                         cfg.human.l_F)
                        .h;
            } else {
                const SagittalEstimate est =
                    estimate_sagittal(cuff.elbow, cuff.wrist, cfg.calib_pelvis, cfg.torso,
                                      cfg.human.l_U, cfg.human.l_F, cfg.sagittal_clamp_tol);
                h = est.h;
                cmd.sagittal_clamped = est.clamped;
            }
            const SupportForce force = support_force(cfg.human, h);
            cmd.degenerate_jacobian = force.degenerate_jacobian;
            const FrameCalibration& calib = (mode == ControlMode::AdaptiveFixedTorso)
                                                ? cfg.calib_shoulder
                                                : cfg.calib_pelvis;
            const Vec3 force_r = force_to_robot_frame(force.f, calib);
            const Eigen::Matrix3d j_r =
                jacobian_active(cfg.robot, joints.q1, joints.q2, joints.q3);
            tau = tau_r + compute_tau_h(j_r, force_r);
        } catch (const Error&) {
            // fail safe: keep the structure compensated, report the fallback
            tau = tau_r;
            cmd.sagittal_clamped = false;
            cmd.degenerate_jacobian = false;
            cmd.estimator_fallback = true;
        }
    }

    const double lim = cfg.torque_limit;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(tau(i)) > lim) {
            tau(i) = std::clamp(tau(i), -lim, lim);
            cmd.clamped = true;
        }
    }
    cmd.tau1 = tau(0);
    cmd.tau2 = tau(1);
    cmd.tau3 = tau(2);
    return cmd;
}

}  // namespace arae
