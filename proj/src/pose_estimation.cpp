#include "arae/pose_estimation.hpp"

#include <cmath>

namespace arae {

namespace {

Eigen::Matrix3d rot_z(double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    Eigen::Matrix3d r;
    r << c, -s, 0,
         s,  c, 0,
         0,  0, 1;
    return r;
}

FramePoint apply_calibration(const FramePoint& pt, const FrameCalibration& calib) {
    expect_frame(pt, Frame::Robot, "frame transform");
    return {calib.mode, rot_z(calib.psi) * pt.p + calib.offset()};
}

}  // namespace

void FrameCalibration::validate() const {
    if (mode == Frame::Robot) {
        throw Error(ErrorCode::ConfigError, "calibration: mode must be shoulder or pelvis");
    }
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || !std::isfinite(psi)) {
        throw Error(ErrorCode::ConfigError, "calibration: offsets and psi must be finite");
    }
}

void TorsoParams::validate() const {
    if (!(l_SH > 0.0) || !(l_PH > 0.0)) {
        throw Error(ErrorCode::ConfigError, "torso params: lengths must be > 0");
    }
}

CuffPoints cuff_points(const RobotGeometry& geom, const RobotJointState& joints) {
    const RobotFk fk = fk_chain(geom, joints);
    return {robot_point(fk.p6), robot_point(fk.p7)};
}

FramePoint to_shoulder_frame(const FramePoint& pt, const FrameCalibration& calib) {
    if (calib.mode != Frame::Shoulder) {
        throw Error(ErrorCode::FrameMismatch, "to_shoulder_frame: calibration is not shoulder-mode");
    }
    return apply_calibration(pt, calib);
}

FramePoint to_pelvis_frame(const FramePoint& pt, const FrameCalibration& calib) {
    if (calib.mode != Frame::Pelvis) {
        throw Error(ErrorCode::FrameMismatch, "to_pelvis_frame: calibration is not pelvis-mode");
    }
    return apply_calibration(pt, calib);
}

Vec3 from_human_frame(const Vec3& p_human, const FrameCalibration& calib) {
    return rot_z(calib.psi).transpose() * (p_human - calib.offset());
}

FixedTorsoEstimate estimate_fixed_torso(const FramePoint& elbow_r, const FramePoint& wrist_r,
                                        const FrameCalibration& calib_s, double l_F) {
    const Vec3 elbow_s = to_shoulder_frame(elbow_r, calib_s).p;
    const Vec3 wrist_s = to_shoulder_frame(wrist_r, calib_s).p;
    const double l_u_cal = elbow_s.norm();
    if (l_u_cal < 1e-9) {
        throw Error(ErrorCode::ZeroElbow, "estimate_fixed_torso: elbow at the shoulder origin");
    }
    return {human_ik(elbow_s, wrist_s, l_u_cal, l_F), l_u_cal};
}

SagittalShoulder solve_shoulder_sagittal(const Vec3& elbow_p, const TorsoParams& torso,
                                         double l_U, double clamp_tol) {
    const double dx = elbow_p.x() + torso.l_PH;  // lateral offset from the shoulder plane
    if (std::abs(dx) > l_U * (1.0 + 1e-12)) {
        throw Error(ErrorCode::LateralOverreach,
                    "solve_shoulder_sagittal: elbow laterally beyond the upper-arm length");
    }
    const double r1 = torso.l_SH;
    const double r2 = std::sqrt(std::max(l_U * l_U - dx * dx, 0.0));

    // in-plane circle intersection, (y,z) coordinates, hip at the origin
    const double ey = elbow_p.y(), ez = elbow_p.z();
    const double d = std::hypot(ey, ez);
    if (d < 1e-12) {
        throw Error(ErrorCode::NoIntersection,
                    "solve_shoulder_sagittal: projected elbow coincides with the hip");
    }
    const double ux = ey / d, uz = ez / d;
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    double hh_sq = r1 * r1 - a * a;

    bool clamped = false;
    if (hh_sq < 0.0) {
        // gap along the center line to the nearest configuration that touches
        const double miss =
            (d > r1 + r2) ? d - (r1 + r2) : std::max(std::abs(r1 - r2) - d, 0.0);
        if (miss > clamp_tol) {
            throw Error(ErrorCode::NoIntersection,
                        "solve_shoulder_sagittal: shoulder arcs do not intersect");
        }
        if (miss > 1e-9) clamped = true;  // sub-certificate misses count as tangency
        hh_sq = 0.0;
    }
    const double hh = std::sqrt(hh_sq);

    // clamped point: nearest point of the hip circle to the elbow circle,
    // on the center line (sign of `a` picks the correct side when nested)
    const double base = clamped ? std::copysign(r1, a) : a;
    // of the two roots b +- hh*n, n = (-uz, ux), the larger z needs sign(ux)
    const double sign = (ux >= 0.0) ? 1.0 : -1.0;

    SagittalShoulder out;
    out.shoulder = Vec3(-torso.l_PH, base * ux - sign * hh * uz, base * uz + sign * hh * ux);
    out.clamped = clamped;
    return out;
}

SagittalEstimate estimate_sagittal(const FramePoint& elbow_r, const FramePoint& wrist_r,
                                   const FrameCalibration& calib_p, const TorsoParams& torso,
                                   double l_U, double l_F, double clamp_tol) {
    const Vec3 elbow_p = to_pelvis_frame(elbow_r, calib_p).p;
    const Vec3 wrist_p = to_pelvis_frame(wrist_r, calib_p).p;
    const SagittalShoulder sol = solve_shoulder_sagittal(elbow_p, torso, l_U, clamp_tol);
    // derived shoulder frame shares the pelvis orientation: pure translation
    const HumanJointAngles h = human_ik(elbow_p - sol.shoulder, wrist_p - sol.shoulder, l_U, l_F);
    return {h, sol.shoulder, sol.clamped};
}

}  // namespace arae
