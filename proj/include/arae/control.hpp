#pragma once

#include "arae/human_model.hpp"
#include "arae/pose_estimation.hpp"
#include "arae/robot_model.hpp"

namespace arae {

enum class ControlMode { Transparent, AdaptiveFixedTorso, AdaptiveSagittal };

const char* control_mode_name(ControlMode mode);

/// Reference torques for the three active motors plus quality flags raised
/// while producing them.
struct TorqueCommand {
    double tau1 = 0;
    double tau2 = 0;
    double tau3 = 0;
    bool clamped = false;              ///< some component hit the torque limit
    bool estimator_fallback = false;   ///< estimator failed; transparent output
    bool degenerate_jacobian = false;  ///< rank-deficient arm Jacobian
    bool sagittal_clamped = false;     ///< shoulder arcs clamped to tangency

    Vec3 tau() const { return {tau1, tau2, tau3}; }
};

/// Everything one controller instance needs; immutable after construction.
struct ControllerConfig {
    RobotGeometry robot;
    RobotMassModel robot_mass;
    HumanArmParams human;
    FrameCalibration calib_shoulder{Frame::Shoulder};
    FrameCalibration calib_pelvis{Frame::Pelvis};
    TorsoParams torso;
    double torque_limit = 48.0;        ///< per-motor peak, N*m
    double sagittal_clamp_tol = 0.005; ///< shoulder-arc clamp window, m

    void validate() const;
};

/// Maps a cuff force (robot-frame components) to active-joint torques:
/// tau_h = J_R^T * F.
Vec3 compute_tau_h(const Eigen::Matrix3d& jacobian_r, const Vec3& force_r);

/// Rotates a force from a human frame (shoulder/pelvis) back into the robot
/// frame; only the calibration yaw matters for free vectors.
Vec3 force_to_robot_frame(const Vec3& force_human, const FrameCalibration& calib);

/// One control step: robot-structure gravity torque always; in the adaptive
/// modes the arm-support torque from the selected pose estimator is added.
/// If the estimator fails the command falls back to the transparent output
/// with estimator_fallback set: the arm is never left uncompensated.
/// Components are clamped to +-torque_limit (flagged). Deterministic.
TorqueCommand control_step(const RobotJointState& joints, ControlMode mode,
                           const ControllerConfig& cfg);

}  // namespace arae
