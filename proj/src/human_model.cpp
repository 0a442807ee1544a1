#include "arae/human_model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace arae {

namespace {

constexpr double kElevationEps = 1e-6;   // |cos h2| below this is singular
constexpr double kElbowRadiusTol = 1e-6; // relative elbow-distance consistency
constexpr double kPinvCutoff = 1e-8;     // relative singular-value cutoff

struct Trig {
    double c1, s1, c2, s2, c3, s3, c4, s4;
    double lam1, lam2;

    explicit Trig(const HumanJointAngles& h)
        : c1(std::cos(h.h1)), s1(std::sin(h.h1)),
          c2(std::cos(h.h2)), s2(std::sin(h.h2)),
          c3(std::cos(h.h3)), s3(std::sin(h.h3)),
          c4(std::cos(h.h4)), s4(std::sin(h.h4)) {
        lam1 = c1 * c3 - s1 * s2 * s3;
        lam2 = c3 * s1 + c1 * s2 * s3;
    }
};

}  // namespace

void HumanArmParams::validate() const {
    if (!(l_U > 0.0) || !(l_F > 0.0)) {
        throw Error(ErrorCode::ConfigError, "human params: segment lengths must be > 0");
    }
    if (!(m_U >= 0.0) || !(m_F >= 0.0)) {
        throw Error(ErrorCode::ConfigError, "human params: masses must be >= 0");
    }
    if (!(com_U >= 0.0 && com_U <= 1.0) || !(com_F >= 0.0 && com_F <= 1.0)) {
        throw Error(ErrorCode::ConfigError, "human params: COM ratios must be in [0,1]");
    }
    if (!(g > 0.0)) {
        throw Error(ErrorCode::ConfigError, "human params: g must be > 0");
    }
}

Vec3 forearm_direction(const HumanJointAngles& h) {
    const Trig t(h);
    return {t.c4 * t.lam1 - t.s1 * t.c2 * t.s4,
            t.c4 * t.lam2 + t.c1 * t.c2 * t.s4,
            t.s2 * t.s4 - t.c2 * t.s3 * t.c4};
}

HumanFk human_fk(const HumanArmParams& params, const HumanJointAngles& h) {
    const Trig t(h);
    HumanFk fk;
    fk.elbow = params.l_U * Vec3(t.s1 * t.c2, -t.c1 * t.c2, -t.s2);
    const Vec3 d = forearm_direction(h);
    fk.cuff = fk.elbow + 0.5 * params.l_F * d;
    fk.wrist = fk.elbow + params.l_F * d;
    return fk;
}

HumanJointAngles human_ik(const Vec3& elbow, const Vec3& wrist, double l_U_cal, double l_F,
                          double forearm_slack) {
    if (!(l_U_cal > 0.0) || !(l_F > 0.0)) {
        throw Error(ErrorCode::InconsistentLengths, "human_ik: lengths must be > 0");
    }
    const double r = elbow.norm();
    if (std::abs(r - l_U_cal) > kElbowRadiusTol * l_U_cal) {
        throw Error(ErrorCode::InconsistentLengths,
                    "human_ik: elbow distance disagrees with calibrated upper-arm length");
    }
    Vec3 f = wrist - elbow;
    const double fl = f.norm();
    if (std::abs(fl - l_F) > forearm_slack * l_F || fl < 1e-12) {
        throw Error(ErrorCode::InconsistentLengths,
                    "human_ik: forearm length outside configured slack");
    }
    f /= fl;  // re-normalize: cuff geometry error must not leak into angles

    const double s2 = std::clamp(-elbow.z() / l_U_cal, -1.0, 1.0);
    const double h2 = std::asin(s2);
    const double c2 = std::cos(h2);
    if (std::abs(c2) < kElevationEps) {
        throw Error(ErrorCode::ElevationSingularity,
                    "human_ik: arm at elevation singularity, h1/h3 indeterminate");
    }
    const double h1 = std::atan2(elbow.x(), -elbow.y());

    // rotate the forearm into the post-(h1,h2) frame; there it reads
    // (cos h3 cos h4, sin h4, -sin h3 cos h4)
    const double c1 = std::cos(h1), s1 = std::sin(h1);
    const Vec3 g(c1 * f.x() + s1 * f.y(), -s1 * f.x() + c1 * f.y(), f.z());
    const Vec3 w(g.x(), c2 * g.y() + s2 * g.z(), -s2 * g.y() + c2 * g.z());

    const double c4 = std::hypot(w.x(), w.z());
    const double h4 = std::atan2(w.y(), c4);
    const double h3 = (c4 < 1e-9) ? 0.0 : std::atan2(-w.z(), w.x());
    return {h1, h2, h3, h4};
}

Eigen::Matrix<double, 3, 4> human_jacobian(const HumanArmParams& params,
                                           const HumanJointAngles& h) {
    const Trig t(h);
    const double lu = params.l_U;
    const double f = 0.5 * params.l_F;

    Eigen::Matrix<double, 3, 4> j;
    j(0, 0) = lu * t.c1 * t.c2 - f * t.c4 * t.lam2 - f * t.c1 * t.c2 * t.s4;
    j(0, 1) = f * t.s1 * t.s2 * t.s4 - lu * t.s1 * t.s2 - f * t.c2 * t.c4 * t.s1 * t.s3;
    j(0, 2) = -f * t.c4 * (t.c1 * t.s3 + t.c3 * t.s1 * t.s2);
    j(0, 3) = -f * t.s4 * t.lam1 - f * t.c2 * t.c4 * t.s1;
    j(1, 0) = lu * t.c2 * t.s1 + f * t.c4 * t.lam1 - f * t.c2 * t.s1 * t.s4;
    j(1, 1) = lu * t.c1 * t.s2 - f * t.c1 * t.s2 * t.s4 + f * t.c1 * t.c2 * t.c4 * t.s3;
    // elbow term sign differs from the h1-column pattern: d(lam2)/dh3
    j(1, 2) = -f * t.c4 * (t.s1 * t.s3 - t.c1 * t.c3 * t.s2);
    j(1, 3) = f * t.c1 * t.c2 * t.c4 - f * t.s4 * t.lam2;
    j(2, 0) = 0.0;
    j(2, 1) = f * t.c2 * t.s4 - lu * t.c2 + f * t.c4 * t.s2 * t.s3;
    j(2, 2) = -f * t.c2 * t.c3 * t.c4;
    j(2, 3) = f * t.c4 * t.s2 + f * t.c2 * t.s3 * t.s4;
    return j;
}

double human_gravity_potential(const HumanArmParams& params, const HumanJointAngles& h) {
    const double z_upper = -params.com_U * params.l_U * std::sin(h.h2);
    const double z_fore = -params.l_U * std::sin(h.h2) +
                          params.com_F * params.l_F * forearm_direction(h).z();
    return params.m_U * params.g * z_upper + params.m_F * params.g * z_fore;
}

Eigen::Vector4d human_gravity(const HumanArmParams& params, const HumanJointAngles& h) {
    const Trig t(h);
    const double g = params.g;
    const double lu = params.l_U;
    const double fr = params.com_F * params.l_F;

    Eigen::Vector4d grav;
    grav(0) = 0.0;
    grav(1) = g * (params.m_F * (fr * t.c2 * t.s4 - lu * t.c2 + fr * t.c4 * t.s2 * t.s3) -
                   lu * params.com_U * params.m_U * t.c2);
    grav(2) = -fr * params.m_F * t.c2 * t.c3 * t.c4 * g;
    grav(3) = g * params.m_F * (fr * t.c4 * t.s2 + fr * t.c2 * t.s3 * t.s4);
    return grav;
}

SupportForce support_force(const HumanArmParams& params, const HumanJointAngles& h) {
    const Eigen::Matrix<double, 4, 3> jt = human_jacobian(params, h).transpose();
    const Eigen::Vector4d grav = human_gravity(params, h);

    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(jt,
                                                      Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv(0) * kPinvCutoff;

    Eigen::Vector3d inv_sv = Eigen::Vector3d::Zero();
    int rank = 0;
    for (int i = 0; i < 3; ++i) {
        if (sv(i) > cutoff) {
            inv_sv(i) = 1.0 / sv(i);
            ++rank;
        }
    }

    SupportForce out;
    out.f = svd.matrixV().leftCols<3>() * inv_sv.asDiagonal() *
            svd.matrixU().leftCols<3>().transpose() * grav;
    out.degenerate_jacobian = rank < 3;
    return out;
}

}  // namespace arae
