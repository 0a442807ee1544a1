#include "arae/robot_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace arae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGravity = 9.81;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

void RobotGeometry::validate() const {
    const struct {
        const char* name;
        double value;
    } lengths[] = {{"l1", l1}, {"l21", l21}, {"l22", l22}, {"l31", l31},
                   {"l32", l32}, {"l4", l4}, {"l5", l5}, {"d5", d5}};
    for (const auto& l : lengths) {
        if (!(l.value > 0.0) || !std::isfinite(l.value)) {
            throw Error(ErrorCode::ConfigError,
                        std::string("robot geometry: ") + l.name + " must be > 0");
        }
    }
    if (!(l22 > l31)) {
        throw Error(ErrorCode::ConfigError, "robot geometry: l22 must exceed l31");
    }
    if (!std::isfinite(cuff_offset_elbow) || !std::isfinite(cuff_offset_wrist) ||
        !(cuff_length() > 0.0)) {
        throw Error(ErrorCode::ConfigError,
                    "robot geometry: cuff offsets must be finite with wrist beyond elbow");
    }
    if (!std::isfinite(passive_zero_q4) || !std::isfinite(passive_zero_q5)) {
        throw Error(ErrorCode::ConfigError, "robot geometry: passive encoder zeros must be finite");
    }
    for (const auto& lim : joint_limits) {
        if (lim && !(lim->lo <= lim->hi)) {
            throw Error(ErrorCode::ConfigError, "robot geometry: joint limit lo > hi");
        }
    }
}

void validate_joint_limits(const RobotGeometry& geom, const RobotJointState& joints) {
    const auto q = joints.as_array();
    for (int i = 0; i < 5; ++i) {
        const auto& lim = geom.joint_limits[static_cast<size_t>(i)];
        if (lim && (q[static_cast<size_t>(i)] < lim->lo || q[static_cast<size_t>(i)] > lim->hi)) {
            throw Error(ErrorCode::JointLimitViolation,
                        "q" + std::to_string(i + 1) + " outside declared protective range");
        }
    }
}

void RobotMassModel::validate() const {
    for (const auto& link : links) {
        if (link.frame < 1 || link.frame > 5) {
            throw Error(ErrorCode::ConfigError, "mass model: frame index must be 1..5");
        }
        if (!(link.mass >= 0.0) || !std::isfinite(link.mass) || !link.com.allFinite()) {
            throw Error(ErrorCode::ConfigError, "mass model: mass must be >= 0 and finite");
        }
    }
}

double coupled_joint_angle(double q2, double q3) {
    return q3 - (kPi / 2.0 - q2) + kPi;
}

Eigen::Matrix4d dh_transform(const DHRow& row) {
    const double ct = std::cos(row.theta), st = std::sin(row.theta);
    const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);
    Eigen::Matrix4d t;
    t << ct, -ca * st,  sa * st, row.a * ct,
         st,  ca * ct, -sa * ct, row.a * st,
          0,       sa,       ca,      row.d,
          0,        0,        0,          1;
    return t;
}

std::array<DHRow, 5> dh_table(const RobotGeometry& geom, const RobotJointState& joints) {
    return {{
        {joints.q1, kPi / 2.0, 0.0, geom.l1},
        {kPi / 2.0 - joints.q2, 0.0, geom.l21, 0.0},
        {coupled_joint_angle(joints.q2, joints.q3), 0.0, geom.distal_length(), 0.0},
        {joints.q4 + geom.passive_zero_q4, -kPi / 2.0, 0.0, -geom.l4},
        {joints.q5 + geom.passive_zero_q5, 0.0, geom.l5, geom.d5},
    }};
}

RobotFk fk_chain(const RobotGeometry& geom, const RobotJointState& joints) {
    const auto rows = dh_table(geom, joints);
    RobotFk fk;
    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    for (size_t i = 0; i < rows.size(); ++i) {
        t = t * dh_transform(rows[i]);
        fk.frames[i] = t;
    }
    fk.p3 = fk.frames[2].block<3, 1>(0, 3);
    fk.p5 = fk.frames[4].block<3, 1>(0, 3);
    const Vec3 cuff_axis = fk.frames[4].block<3, 1>(0, 0);
    fk.p6 = fk.p5 + geom.cuff_offset_elbow * cuff_axis;
    fk.p7 = fk.p5 + geom.cuff_offset_wrist * cuff_axis;
    return fk;
}

ActiveJoints ik_active(const RobotGeometry& geom, const Vec3& p3) {
    const double x = p3.x(), y = p3.y(), z = p3.z();
    const double r2 = x * x + y * y;
    if (r2 < 1e-18) {
        throw Error(ErrorCode::BaseSingularity, "ik_active: x = y = 0, base angle undefined");
    }
    const double lp = geom.l21;
    const double ld = geom.distal_length();
    const double dz = z - geom.l1;
    const double delta = dz * dz + r2;
    const double dist = std::sqrt(delta);
    // reachable annulus, with a hair of slack for roundtripped FK outputs
    if (dist > lp + ld + 1e-12 || dist < std::abs(lp - ld) - 1e-12) {
        throw Error(ErrorCode::Unreachable, "ik_active: target outside reachable annulus");
    }

    const double q1 = std::atan2(y, x);
    const double gamma = std::atan2(dz, std::sqrt(r2));
    const double cos_a = clamp_unit((lp * lp + delta - ld * ld) / (2.0 * lp * dist));
    const double a = std::acos(cos_a);
    const double cos_q22 = clamp_unit((delta - lp * lp - ld * ld) / (2.0 * lp * ld));
    const double q22 = std::acos(cos_q22);  // branch: q22 in [0, pi]

    // proximal link sits below the chord (theta2 = gamma - a), pairing with
    // the positive q22 branch of the parallelogram
    const double q2 = kPi / 2.0 - gamma + a;
    const double q3 = q22 - q2 - kPi / 2.0;
    return {q1, q2, q3};
}

Eigen::Matrix3d jacobian_active(const RobotGeometry& geom, double q1, double q2, double q3) {
    const double lp = geom.l21;
    const double ld = geom.distal_length();
    const double s1 = std::sin(q1), c1 = std::cos(q1);
    const double sg1 = std::cos(q2 - kPi / 2.0);
    const double sg2 = std::sin(q2 - kPi / 2.0);
    const double beta = q2 + q3 + kPi / 2.0;
    const double cb = std::cos(beta), sb = std::sin(beta);

    Eigen::Matrix3d j;
    j(0, 0) = -lp * sg1 * s1 - cb * sg1 * s1 * ld - sb * s1 * sg2 * ld;
    j(0, 1) = -lp * c1 * sg2;
    j(0, 2) = cb * c1 * sg2 * ld - sb * c1 * sg1 * ld;
    j(1, 0) = lp * c1 * sg1 + cb * c1 * sg1 * ld + sb * c1 * sg2 * ld;
    j(1, 1) = -lp * s1 * sg2;
    j(1, 2) = cb * s1 * sg2 * ld - sb * sg1 * s1 * ld;
    j(2, 0) = 0.0;
    j(2, 1) = -lp * sg1;
    j(2, 2) = cb * sg1 * ld + sb * sg2 * ld;
    return j;
}

double gravity_potential_robot(const RobotMassModel& mass, const RobotGeometry& geom,
                               const RobotJointState& joints) {
    const RobotFk fk = fk_chain(geom, joints);
    double u = 0.0;
    for (const auto& link : mass.links) {
        const Eigen::Matrix4d& t = fk.frames[static_cast<size_t>(link.frame - 1)];
        const double z = (t.block<3, 3>(0, 0) * link.com + t.block<3, 1>(0, 3)).z();
        u += link.mass * kGravity * z;
    }
    return u;
}

Vec3 gravity_torque_robot(const RobotMassModel& mass, const RobotGeometry& geom,
                          const RobotJointState& joints) {
    const RobotFk fk = fk_chain(geom, joints);
    // D-H angles of the active chain: theta2 = pi/2 - q2 turns about (z1, o1),
    // theta3 = q22(q2, q3) about (z2, o2); q1 turns about base z, which never
    // changes any height, so tau1 is identically zero.
    const Vec3 z1 = fk.frames[0].block<3, 1>(0, 2);
    const Vec3 o1 = fk.frames[0].block<3, 1>(0, 3);
    const Vec3 z2 = fk.frames[1].block<3, 1>(0, 2);
    const Vec3 o2 = fk.frames[1].block<3, 1>(0, 3);

    Vec3 tau = Vec3::Zero();
    for (const auto& link : mass.links) {
        const Eigen::Matrix4d& t = fk.frames[static_cast<size_t>(link.frame - 1)];
        const Vec3 p = t.block<3, 3>(0, 0) * link.com + t.block<3, 1>(0, 3);
        const double w = link.mass * kGravity;
        if (link.frame >= 2) {
            double dz_dq2 = -z1.cross(p - o1).z();
            if (link.frame >= 3) dz_dq2 += z2.cross(p - o2).z();
            tau(1) += w * dz_dq2;
        }
        if (link.frame >= 3) {
            tau(2) += w * z2.cross(p - o2).z();
        }
    }
    return tau;
}

}  // namespace arae
