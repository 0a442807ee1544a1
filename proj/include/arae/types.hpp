#pragma once

#include <Eigen/Core>

#include "arae/errors.hpp"

namespace arae {

using Vec3 = Eigen::Vector3d;

/// Coordinate frames used across the toolkit: robot base (R), human shoulder
/// (S) and human pelvis (P).
enum class Frame { Robot, Shoulder, Pelvis };

const char* frame_name(Frame f);

/// A 3D point tagged with the frame it is expressed in. Consumers check the
/// tag instead of trusting call-site discipline.
struct FramePoint {
    Frame frame;
    Vec3 p;
};

inline FramePoint robot_point(const Vec3& p) { return {Frame::Robot, p}; }
inline FramePoint shoulder_point(const Vec3& p) { return {Frame::Shoulder, p}; }
inline FramePoint pelvis_point(const Vec3& p) { return {Frame::Pelvis, p}; }

inline void expect_frame(const FramePoint& pt, Frame want, const char* where) {
    if (pt.frame != want) {
        throw Error(ErrorCode::FrameMismatch,
                    std::string(where) + ": point is in frame " + frame_name(pt.frame) +
                        ", expected " + frame_name(want));
    }
}

}  // namespace arae
