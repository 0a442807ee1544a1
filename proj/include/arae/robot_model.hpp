#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "arae/types.hpp"

namespace arae {

/// Inclusive joint range, radians.
struct JointRange {
    double lo;
    double hi;
};

/// Link lengths of the 5-DOF arm-support robot (meters). The drive mechanism
/// is a parallelogram, so the kinematics reduce to a serial chain with an
/// effective distal link of length l22 - l31. cuff_offset_elbow/_wrist locate
/// the two cuff endpoints p6/p7 along the forearm-support axis (frame-5 x)
/// beyond the frame-5 origin; their difference is the rigid cuff length.
struct RobotGeometry {
    double l1 = 0.068;
    double l21 = 0.43;
    double l22 = 0.446;
    double l31 = 0.1;
    double l32 = 0.43;
    double l4 = 0.111;
    double l5 = 0.0895;
    double d5 = 0.01;
    double cuff_offset_elbow = 0.0;
    double cuff_offset_wrist = 0.2643;

    /// Zero-position calibration of the two passive encoders, added to the
    /// reported q4/q5 before entering the chain.
    double passive_zero_q4 = 0.0;
    double passive_zero_q5 = 0.0;

    /// Optional protective-stop ranges for q1..q5; unrestricted by default.
    std::array<std::optional<JointRange>, 5> joint_limits{};

    double distal_length() const { return l22 - l31; }
    double cuff_length() const { return cuff_offset_wrist - cuff_offset_elbow; }

    /// Throws ConfigError if any length is non-positive or l22 <= l31.
    void validate() const;
};

/// Snapshot of the five joint angles: q1..q3 active motors, q4/q5 passive
/// encoder joints of the end-effector module.
struct RobotJointState {
    double q1 = 0;
    double q2 = 0;
    double q3 = 0;
    double q4 = 0;
    double q5 = 0;

    std::array<double, 5> as_array() const { return {q1, q2, q3, q4, q5}; }
};

/// Throws JointLimitViolation if a declared limit is exceeded.
void validate_joint_limits(const RobotGeometry& geom, const RobotJointState& joints);

/// Standard Denavit-Hartenberg row (theta, alpha in rad; a, d in m).
struct DHRow {
    double theta;
    double alpha;
    double a;
    double d;
};

/// Point mass attached to one frame of the serial-equivalent chain.
/// `frame` is 1..5; `com` is the mass location in that frame's coordinates.
struct LinkMass {
    int frame = 1;
    double mass = 0.0;
    Vec3 com = Vec3::Zero();
};

/// Gravity model of the structure. An empty model is valid and produces zero
/// gravity torque.
struct RobotMassModel {
    std::vector<LinkMass> links;

    void validate() const;
};

/// Parallelogram coupling: the D-H angle of the distal link follows the two
/// drive motors as q22 = q3 - (pi/2 - q2) + pi.
double coupled_joint_angle(double q2, double q3);

/// Standard D-H homogeneous transform for one row.
Eigen::Matrix4d dh_transform(const DHRow& row);

/// D-H table of the serial-equivalent chain at a given joint state.
std::array<DHRow, 5> dh_table(const RobotGeometry& geom, const RobotJointState& joints);

struct RobotFk {
    /// Cumulative transforms T0_1 .. T0_5.
    std::array<Eigen::Matrix4d, 5> frames;
    Vec3 p3;  ///< origin of frame 3 (joint-4 point, the active-chain end-effector)
    Vec3 p5;  ///< origin of frame 5 (end-effector module)
    Vec3 p6;  ///< cuff endpoint at the elbow side
    Vec3 p7;  ///< cuff endpoint at the wrist side
};

/// Forward kinematics to every interaction point, robot base frame. Total:
/// defined for all finite joint angles.
RobotFk fk_chain(const RobotGeometry& geom, const RobotJointState& joints);

struct ActiveJoints {
    double q1;
    double q2;
    double q3;
};

/// Closed-form inverse kinematics of the three active joints from a target
/// p3. Returns the configuration with the distal-link angle q22 in (0, pi)
/// and a non-negative radial coordinate, which is the branch fk_chain
/// produces for the physical mechanism; roundtrips with fk_chain to 1e-9.
///
/// Throws BaseSingularity when x = y = 0 and Unreachable when the target is
/// outside the annulus |l21 - (l22-l31)| <= dist <= l21 + (l22-l31) around
/// the shoulder point (0, 0, l1).
ActiveJoints ik_active(const RobotGeometry& geom, const Vec3& p3);

/// Analytic Jacobian of p3 with respect to (q1, q2, q3). Element (3,1) is
/// exactly zero: base rotation never changes height.
Eigen::Matrix3d jacobian_active(const RobotGeometry& geom, double q1, double q2, double q3);

/// Gravity torque of the structure on the three active joints: the exact
/// gradient of the total gravitational potential of the modeled links
/// (g = 9.81 m/s^2 along -z). This is the torque the motors must produce to
/// hold the structure static; the passive angles enter through the pose of
/// the end-effector module links.
Vec3 gravity_torque_robot(const RobotMassModel& mass, const RobotGeometry& geom,
                          const RobotJointState& joints);

/// Potential energy of the modeled links at a joint state (used by the
/// gravity-gradient cross-checks).
double gravity_potential_robot(const RobotMassModel& mass, const RobotGeometry& geom,
                               const RobotJointState& joints);

}  // namespace arae
