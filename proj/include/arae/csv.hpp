#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arae/emg.hpp"
#include "arae/human_model.hpp"
#include "arae/robot_model.hpp"
#include "arae/types.hpp"

namespace arae {

/// One timestamped robot joint record, optionally carrying synthetic ground
/// truth (arm angles and the pelvis-frame shoulder position).
struct TrajectorySample {
    double t = 0;
    RobotJointState q;
    std::optional<HumanJointAngles> truth_h;
    std::optional<Vec3> truth_shoulder_p;
};

/// Trajectory CSV: header `t,q1,q2,q3,q4,q5[,h1,h2,h3,h4[,sx,sy,sz]]`,
/// radians/meters, UTF-8, LF line endings. Values are printed with 17
/// significant digits so write-then-read is lossless.
std::vector<TrajectorySample> read_trajectory_csv(const std::string& path);
void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples);

/// EMG CSV: header `t,pm,dm,bb,tb`, millivolts. The sample rate is inferred
/// from the time column and validated for uniformity.
EmgRecord read_emg_csv(const std::string& path);
void write_emg_csv(const std::string& path, const EmgRecord& rec);

/// Generic labeled-columns CSV writer (plot-ready outputs).
void write_columns_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

/// Shortest decimal form that reparses to the identical double.
std::string format_double(double v);

}  // namespace arae
