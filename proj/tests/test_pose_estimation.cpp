#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arae/pose_estimation.hpp"
#include "arae/scenario.hpp"
#include "oracles.hpp"
#include "test_scenes.hpp"

using namespace arae;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const RobotGeometry kGeom{};
const TorsoParams kTorso{};
}  // namespace

TEST_CASE("cuff points alias the fk cuff endpoints") {
    oracle::RobotPoseSampler sampler(41, kGeom);
    for (int i = 0; i < 50; ++i) {
        const RobotJointState q = sampler.next(true);
        const CuffPoints cuff = cuff_points(kGeom, q);
        const RobotFk fk = fk_chain(kGeom, q);
        CHECK(cuff.elbow.frame == Frame::Robot);
        CHECK(cuff.elbow.p == fk.p6);  // definitional aliasing, bit for bit
        CHECK(cuff.wrist.p == fk.p7);
        CHECK((cuff.wrist.p - cuff.elbow.p).norm() == Approx(kGeom.cuff_length()).epsilon(1e-12));
    }

    // frozen from the pre-build composition oracle at q = (0, 0.6, -1.2, 0.1, -0.2)
    const CuffPoints cuff = cuff_points(kGeom, {0.0, 0.6, -1.2, 0.1, -0.2});
    CHECK((cuff.elbow.p - Vec3(0.06872078824925931, 0.09321909489384207, 0.8190169849448155))
              .norm() < 1e-12);
    CHECK((cuff.wrist.p - Vec3(-0.04877493926044818, 0.04071079076470741, 1.0498678502549694))
              .norm() < 1e-12);
}

TEST_CASE("shoulder-frame transform") {
    FrameCalibration identity{Frame::Shoulder, 0, 0, 0, 0.0};
    CHECK((to_shoulder_frame(robot_point(Vec3(0.3, -0.2, 0.7)), identity).p -
           Vec3(0.3, -0.2, 0.7))
              .norm() < 1e-15);

    FrameCalibration quarter{Frame::Shoulder, 0, 0, 0, -kPi / 2};
    CHECK((to_shoulder_frame(robot_point(Vec3(1, 0, 0)), quarter).p - Vec3(0, -1, 0)).norm() <
          1e-15);

    FrameCalibration offset{Frame::Shoulder, 0.3, -0.2, 0.1, -kPi / 2};
    CHECK((to_shoulder_frame(robot_point(Vec3(1, 2, 3)), offset).p - Vec3(2.3, -1.2, 3.1)).norm() <
          1e-12);

    // transforms are rigid: pairwise distances survive to 1e-12
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        FrameCalibration calib{Frame::Shoulder, u(rng), u(rng), u(rng), u(rng) * kPi};
        const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
        const Vec3 ta = to_shoulder_frame(robot_point(a), calib).p;
        const Vec3 tb = to_shoulder_frame(robot_point(b), calib).p;
        CHECK(std::abs((ta - tb).norm() - (a - b).norm()) < 1e-12);
        // and the inverse mapping really inverts
        CHECK((from_human_frame(ta, calib) - a).norm() < 1e-12);
    }

    // frame tags are enforced
    FrameCalibration pelvis{Frame::Pelvis, 0, 0, 0, -kPi / 2};
    CHECK_THROWS_AS(static_cast<void>(to_shoulder_frame(robot_point(Vec3(1, 2, 3)), pelvis)),
                    Error);
    CHECK_THROWS_AS(
        static_cast<void>(to_pelvis_frame(shoulder_point(Vec3(1, 2, 3)), pelvis)), Error);
}

TEST_CASE("sagittal shoulder solve: frozen example and certificates") {
    // frozen from the pre-build circle-intersection oracle
    const SagittalShoulder sol =
        solve_shoulder_sagittal(Vec3(-0.1793, 0.25, 0.30), kTorso, 0.2991);
    CHECK(sol.shoulder.x() == Approx(-0.1793).epsilon(1e-15));
    CHECK(sol.shoulder.y() == Approx(-0.03729844543936239).epsilon(1e-11));
    CHECK(sol.shoulder.z() == Approx(0.38318902119946874).epsilon(1e-11));
    CHECK_FALSE(sol.clamped);

    // certificates + branch determinism + oracle agreement on random feasible placements
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ux(-0.28, -0.08), uy(-0.45, 0.45), uz(-0.1, 0.55),
        ul(0.25, 0.34);
    int solved = 0;
    while (solved < 1000) {
        const Vec3 elbow(ux(rng), uy(rng), uz(rng));
        const double l_u = ul(rng);
        SagittalShoulder a;
        try {
            a = solve_shoulder_sagittal(elbow, kTorso, l_u);
        } catch (const Error&) {
            continue;  // infeasible placement, not part of this property
        }
        if (a.clamped) continue;
        ++solved;
        CHECK(std::abs((a.shoulder - kTorso.hip()).norm() - kTorso.l_SH) < 1e-9);
        CHECK(std::abs((a.shoulder - elbow).norm() - l_u) < 1e-9);

        const SagittalShoulder b = solve_shoulder_sagittal(elbow, kTorso, l_u);
        CHECK(a.shoulder.x() == b.shoulder.x());
        CHECK(a.shoulder.y() == b.shoulder.y());
        CHECK(a.shoulder.z() == b.shoulder.z());

        double pts[4];
        const double r2 = std::sqrt(l_u * l_u - std::pow(elbow.x() + kTorso.l_PH, 2));
        const int n = oracle::circle_circle(0, 0, kTorso.l_SH, elbow.y(), elbow.z(), r2, pts);
        REQUIRE(n >= 1);
        const double best_z = (n == 2) ? std::max(pts[1], pts[3]) : pts[1];
        CHECK(a.shoulder.z() == Approx(best_z).epsilon(1e-9));
    }
}

TEST_CASE("sagittal shoulder solve: tangency, clamping, errors") {
    // tangent: elbow placed on the far side so the circles just touch
    const double l_u = 0.2991;
    const double d = kTorso.l_SH + l_u;  // center distance = r1 + r2 (dx = 0)
    const Vec3 elbow_t(-kTorso.l_PH, d * std::sin(0.4), d * std::cos(0.4));
    const SagittalShoulder tangent = solve_shoulder_sagittal(elbow_t, kTorso, l_u);
    CHECK_FALSE(tangent.clamped);
    CHECK(std::abs((tangent.shoulder - kTorso.hip()).norm() - kTorso.l_SH) < 1e-9);
    CHECK((tangent.shoulder.tail<2>() -
           kTorso.l_SH / d * elbow_t.tail<2>()).norm() < 1e-9);

    // small external miss (3 mm): clamp to the hip circle, flag set
    const Vec3 elbow_c(-kTorso.l_PH, (d + 0.003) * std::sin(0.4), (d + 0.003) * std::cos(0.4));
    const SagittalShoulder clamped = solve_shoulder_sagittal(elbow_c, kTorso, l_u);
    CHECK(clamped.clamped);
    CHECK(std::abs((clamped.shoulder - kTorso.hip()).norm() - kTorso.l_SH) < 1e-12);

    // large miss (10 mm): hard error
    const Vec3 elbow_m(-kTorso.l_PH, (d + 0.010) * std::sin(0.4), (d + 0.010) * std::cos(0.4));
    try {
        static_cast<void>(solve_shoulder_sagittal(elbow_m, kTorso, l_u));
        FAIL("expected NoIntersection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoIntersection);
    }

    // lateral overreach: elbow farther from the shoulder plane than l_U
    try {
        static_cast<void>(
            solve_shoulder_sagittal(Vec3(-kTorso.l_PH + l_u + 0.01, 0.1, 0.3), kTorso, l_u));
        FAIL("expected LateralOverreach");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LateralOverreach);
    }

    // degenerate second radius: elbow exactly l_U off-plane must coincide
    // with a point of the hip circle, otherwise no intersection
    const Vec3 on_circle(-kTorso.l_PH + l_u, kTorso.l_SH * std::sin(0.3),
                         kTorso.l_SH * std::cos(0.3));
    const SagittalShoulder degen = solve_shoulder_sagittal(on_circle, kTorso, l_u);
    CHECK((degen.shoulder.tail<2>() - on_circle.tail<2>()).norm() < 1e-9);
    const Vec3 off_circle(-kTorso.l_PH + l_u, (kTorso.l_SH + 0.02) * std::sin(0.3),
                          (kTorso.l_SH + 0.02) * std::cos(0.3));
    CHECK_THROWS_AS(static_cast<void>(solve_shoulder_sagittal(off_circle, kTorso, l_u)), Error);
}

TEST_CASE("fixed-torso estimator is exact when the shoulder never moves") {
    const SyntheticScenario sc = scenes::fixed_scene(3.0);
    const ControllerConfig cfg = scenes::scene_config(sc);
    const auto samples = generate_scenario(sc, kGeom);

    double worst = 0;
    for (const auto& s : samples) {
        const CuffPoints cuff = cuff_points(kGeom, s.q);
        const FixedTorsoEstimate est =
            estimate_fixed_torso(cuff.elbow, cuff.wrist, cfg.calib_shoulder, cfg.human.l_F);
        const auto truth = s.truth_h->as_array();
        const auto got = est.h.as_array();
        for (size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(truth[j] - got[j]));
        // with a pinned shoulder the measured radius is the true length
        CHECK(est.l_U_cal == Approx(cfg.human.l_U).epsilon(1e-9));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("fixed-torso estimator degrades under forward lean") {
    const SyntheticScenario lean = scenes::lean_scene(3.0);
    const ControllerConfig cfg = scenes::scene_config(lean);
    const auto samples = generate_scenario(lean, kGeom);

    double mae_rad = 0;
    size_t n = 0;
    for (const auto& s : samples) {
        const CuffPoints cuff = cuff_points(kGeom, s.q);
        const FixedTorsoEstimate est =
            estimate_fixed_torso(cuff.elbow, cuff.wrist, cfg.calib_shoulder, cfg.human.l_F);
        const auto truth = s.truth_h->as_array();
        const auto got = est.h.as_array();
        for (size_t j = 0; j < 4; ++j) mae_rad += std::abs(truth[j] - got[j]);
        n += 4;
    }
    mae_rad /= static_cast<double>(n);
    CHECK(mae_rad > 1e-3);  // clearly nonzero once the shoulder moves
}

TEST_CASE("zero elbow is rejected") {
    FrameCalibration calib{Frame::Shoulder, 0, 0, 0, 0.0};
    CHECK_THROWS_AS(static_cast<void>(estimate_fixed_torso(robot_point(Vec3::Zero()),
                                                           robot_point(Vec3(0.1, 0, 0)), calib,
                                                           0.2643)),
                    Error);
}

TEST_CASE("sagittal estimator tracks a leaning shoulder exactly") {
    const SyntheticScenario lean = scenes::lean_scene(3.0);
    const ControllerConfig cfg = scenes::scene_config(lean);
    const auto samples = generate_scenario(lean, kGeom);

    double worst_angle = 0, worst_shoulder = 0;
    for (const auto& s : samples) {
        const CuffPoints cuff = cuff_points(kGeom, s.q);
        const SagittalEstimate est =
            estimate_sagittal(cuff.elbow, cuff.wrist, cfg.calib_pelvis, cfg.torso, cfg.human.l_U,
                              cfg.human.l_F);
        const auto truth = s.truth_h->as_array();
        const auto got = est.h.as_array();
        for (size_t j = 0; j < 4; ++j) worst_angle = std::max(worst_angle,
                                                              std::abs(truth[j] - got[j]));
        worst_shoulder = std::max(worst_shoulder, (est.shoulder_p - *s.truth_shoulder_p).norm());
        CHECK_FALSE(est.clamped);
    }
    CHECK(worst_angle < 1e-6);
    CHECK(worst_shoulder < 1e-9);
}

TEST_CASE("both estimators coincide when the torso is truly fixed") {
    const SyntheticScenario sc = scenes::fixed_scene(2.0);
    const ControllerConfig cfg = scenes::scene_config(sc);
    const auto samples = generate_scenario(sc, kGeom);

    for (const auto& s : samples) {
        const CuffPoints cuff = cuff_points(kGeom, s.q);
        const FixedTorsoEstimate fixed =
            estimate_fixed_torso(cuff.elbow, cuff.wrist, cfg.calib_shoulder, cfg.human.l_F);
        const SagittalEstimate sag =
            estimate_sagittal(cuff.elbow, cuff.wrist, cfg.calib_pelvis, cfg.torso, cfg.human.l_U,
                              cfg.human.l_F);
        const auto a = fixed.h.as_array();
        const auto b = sag.h.as_array();
        for (size_t j = 0; j < 4; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-6);
    }
}
