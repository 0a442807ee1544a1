#pragma once

#include <numbers>

#include "arae/human_model.hpp"
#include "arae/robot_model.hpp"
#include "arae/types.hpp"

namespace arae {

/// Rigid placement of the robot base inside a human frame: the base origin
/// expressed in the shoulder (mode = Shoulder) or pelvis (mode = Pelvis)
/// frame plus the yaw angle psi between the frames.
struct FrameCalibration {
    Frame mode = Frame::Shoulder;
    double x = 0;
    double y = 0;
    double z = 0;
    double psi = -std::numbers::pi / 2.0;

    Vec3 offset() const { return {x, y, z}; }

    void validate() const;
};

/// Torso geometry for the sagittal shoulder solve: hip-to-shoulder length
/// and half torso width. The hip sits at (-l_PH, 0, 0) in the pelvis frame.
struct TorsoParams {
    double l_SH = 0.385;
    double l_PH = 0.1793;

    Vec3 hip() const { return {-l_PH, 0.0, 0.0}; }

    void validate() const;
};

struct CuffPoints {
    FramePoint elbow;  ///< cuff endpoint p6 (frame R), taken as the elbow
    FramePoint wrist;  ///< cuff endpoint p7 (frame R), taken as the wrist
};

/// The forearm is strapped to the cuff, so the elbow and wrist are read off
/// the robot FK as the two cuff endpoints.
CuffPoints cuff_points(const RobotGeometry& geom, const RobotJointState& joints);

/// Applies p' = Rz(psi) * p + offset, robot frame -> shoulder frame.
FramePoint to_shoulder_frame(const FramePoint& pt, const FrameCalibration& calib);

/// Same transform into the pelvis frame (calib.mode must be Pelvis).
FramePoint to_pelvis_frame(const FramePoint& pt, const FrameCalibration& calib);

/// Inverse mapping, human frame -> robot frame (used by the scenario
/// generator): p = Rz(psi)^T * (p' - offset).
Vec3 from_human_frame(const Vec3& p_human, const FrameCalibration& calib);

struct FixedTorsoEstimate {
    HumanJointAngles h;
    double l_U_cal;  ///< shoulder-origin-to-elbow distance used by the IK
};

/// Fixed-torso estimator: shoulder assumed pinned at the calibrated origin.
/// The upper-arm length is replaced by the measured shoulder-elbow distance.
/// Throws ZeroElbow if the elbow lands on the shoulder origin; human_ik
/// errors propagate.
FixedTorsoEstimate estimate_fixed_torso(const FramePoint& elbow_r, const FramePoint& wrist_r,
                                        const FrameCalibration& calib_s, double l_F);

struct SagittalShoulder {
    Vec3 shoulder;  ///< pelvis-frame shoulder position
    bool clamped = false;  ///< circles missed by < clamp_tol and were clamped
};

/// Locates the shoulder in the pelvis frame as the intersection of two arcs
/// in the sagittal plane x = -l_PH: a hip-centered circle of radius l_SH and
/// a circle around the projected elbow of radius sqrt(l_U^2 - dx^2), where
/// dx is the elbow's lateral offset from the plane. Of two intersections the
/// higher-z one is returned (shoulder above hip).
///
/// Circles that miss by less than clamp_tol (meters, along the center line)
/// are clamped to the nearest point on the hip circle and flagged; larger
/// misses throw NoIntersection. Throws LateralOverreach if |dx| > l_U.
SagittalShoulder solve_shoulder_sagittal(const Vec3& elbow_p, const TorsoParams& torso,
                                         double l_U, double clamp_tol = 0.005);

struct SagittalEstimate {
    HumanJointAngles h;
    Vec3 shoulder_p;  ///< derived shoulder, pelvis frame
    bool clamped = false;
};

/// Sagittal-plane estimator: transforms the cuff points into the pelvis
/// frame, solves the shoulder position, then runs the arm IK in the derived
/// shoulder frame with the actual upper-arm length.
SagittalEstimate estimate_sagittal(const FramePoint& elbow_r, const FramePoint& wrist_r,
                                   const FrameCalibration& calib_p, const TorsoParams& torso,
                                   double l_U, double l_F, double clamp_tol = 0.005);

}  // namespace arae
