#pragma once

#include <Eigen/Core>

#include "arae/types.hpp"

namespace arae {

/// Anthropometrics of the supported arm. Lengths in meters, masses in kg,
/// COM ratios measured from the proximal end of each segment.
struct HumanArmParams {
    double l_U = 0.2991;   ///< upper-arm length
    double l_F = 0.2643;   ///< forearm length
    double m_U = 2.1;      ///< upper-arm mass
    double m_F = 1.2;      ///< forearm mass
    double com_U = 0.436;  ///< upper-arm COM ratio in [0,1]
    double com_F = 0.430;  ///< forearm COM ratio in [0,1]
    double g = 9.81;

    void validate() const;
};

/// The 4-DOF arm pose: shoulder abduction/adduction (h1), shoulder
/// flexion/extension (h2), shoulder internal/external rotation (h3), elbow
/// flexion/extension (h4). All radians.
struct HumanJointAngles {
    double h1 = 0;
    double h2 = 0;
    double h3 = 0;
    double h4 = 0;

    std::array<double, 4> as_array() const { return {h1, h2, h3, h4}; }
};

/// Compensatory force at the cuff, shoulder-frame components (N).
/// degenerate_jacobian flags a rank-deficient arm Jacobian; the force is
/// still the minimum-norm least-squares solution in that case.
struct SupportForce {
    Vec3 f = Vec3::Zero();
    bool degenerate_jacobian = false;
};

struct HumanFk {
    Vec3 elbow;
    Vec3 wrist;
    Vec3 cuff;  ///< forearm midpoint, where the robot applies the support force
};

/// Unit direction of the forearm for a given pose (shoulder frame).
Vec3 forearm_direction(const HumanJointAngles& h);

/// Forward kinematics of the arm in the shoulder frame:
///   elbow = l_U * (sin h1 cos h2, -cos h1 cos h2, -sin h2)
///   cuff  = elbow + (l_F / 2) * forearm_direction(h)
///   wrist = elbow + l_F * forearm_direction(h)
/// Depends on segment lengths only.
HumanFk human_fk(const HumanArmParams& params, const HumanJointAngles& h);

/// Closed-form inverse kinematics from elbow and wrist positions (shoulder
/// frame). l_U_cal is the shoulder-to-elbow distance to invert against; the
/// forearm vector is re-normalized as long as its length is within
/// `forearm_slack` (relative) of l_F.
///
/// Branch: h2 in [-pi/2, pi/2], h4 in (-pi/2, pi/2); when the forearm aligns
/// with the upper-arm rotation axis (|cos h4| ~ 0) h3 is unobservable and is
/// returned as 0, which reproduces the same wrist position.
///
/// Throws ElevationSingularity when |cos h2| < 1e-6 and InconsistentLengths
/// when either segment length disagrees with the inputs beyond tolerance.
HumanJointAngles human_ik(const Vec3& elbow, const Vec3& wrist, double l_U_cal, double l_F,
                          double forearm_slack = 0.05);

/// Analytic 3x4 Jacobian of the cuff point with respect to (h1..h4).
/// Element (3,1) is exactly zero.
Eigen::Matrix<double, 3, 4> human_jacobian(const HumanArmParams& params,
                                           const HumanJointAngles& h);

/// Arm gravity vector: gradient of the arm's gravitational potential with
/// respect to (h1..h4). First component is identically zero.
Eigen::Vector4d human_gravity(const HumanArmParams& params, const HumanJointAngles& h);

/// Gravitational potential of the two arm segments (for gradient checks).
double human_gravity_potential(const HumanArmParams& params, const HumanJointAngles& h);

/// Support force at the cuff: F = pinv(J_h^T) * G_h, Moore-Penrose via SVD
/// with singular values below sigma_max * 1e-8 treated as zero. Minimizes
/// ||J_h^T F - G_h|| over all F; minimum-norm when rank deficient.
SupportForce support_force(const HumanArmParams& params, const HumanJointAngles& h);

}  // namespace arae
