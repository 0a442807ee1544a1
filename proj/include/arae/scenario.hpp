#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "arae/csv.hpp"
#include "arae/pose_estimation.hpp"

namespace arae {

/// Offset plus a sum of sinusoids; the building block for smooth synthetic
/// joint and lean profiles.
struct SineProfile {
    struct Component {
        double amp = 0;
        double freq_hz = 0;
        double phase = 0;
    };

    double offset = 0;
    std::vector<Component> components;

    double eval(double t) const;
};

/// Torso lean angle: smoothstep ramp from start to end over the scenario
/// duration, plus an optional sinusoidal wobble.
struct LeanProfile {
    double start_rad = 0;
    double end_rad = 0;
    SineProfile wobble;

    double eval(double t, double duration_s) const;
};

/// Synthetic scene with exact ground truth: arm joint profiles h(t) in a
/// torso-attached-but-non-rotating shoulder frame, and a shoulder that leans
/// in the sagittal plane as a rotation of the torso about the hip.
struct SyntheticScenario {
    HumanArmParams human;
    TorsoParams torso;
    FrameCalibration calib_pelvis{Frame::Pelvis};
    /// Lean angle at which the fixed-torso shoulder origin was calibrated.
    double calibration_lean_rad = 0.0;
    std::array<SineProfile, 4> joint_profiles;
    LeanProfile lean;
    double duration_s = 12.0;
    double rate_hz = 100.0;
    /// When set, the seed adds a uniform phase to every sinusoid component.
    bool randomize_phases = false;

    /// Pelvis-frame shoulder position at a given lean angle: the torso pivots
    /// about the hip inside the plane x = -l_PH.
    Vec3 shoulder_at(double lean_rad) const;

    /// Shoulder calibration implied by the scene: the fixed-torso frame is
    /// anchored at the shoulder position of the calibration lean angle.
    FrameCalibration shoulder_calibration() const;

    void validate() const;
};

struct PassiveSolution {
    double q4 = 0;
    double q5 = 0;
    /// Direction aligned with the q4 axis: q4 unobservable, returned as 0.
    bool gimbal_degenerate = false;
};

/// Passive end-effector angles that align the frame-5 cuff axis with a
/// desired forearm direction (robot frame), given the active joints.
PassiveSolution solve_passive(const RobotGeometry& geom, const ActiveJoints& active,
                              const Vec3& forearm_dir_r);

/// Full joint state whose cuff endpoint p6 lands on a desired elbow position
/// with the cuff axis along a desired forearm direction. Solved by a short
/// fixed-point iteration over the p3 target; closure is verified to 1e-9.
RobotJointState solve_robot_cuff(const RobotGeometry& geom, const Vec3& elbow_r,
                                 const Vec3& forearm_dir_r);

/// Generates the trajectory of robot joints that reproduces the scene's cuff
/// points exactly, with ground-truth angles and shoulder position attached.
/// Throws WorkspaceViolation when the scene leaves the robot's reach and
/// ConfigError when the configured cuff length does not match the forearm.
std::vector<TrajectorySample> generate_scenario(const SyntheticScenario& scenario,
                                                const RobotGeometry& geom, uint64_t seed = 0);

}  // namespace arae
