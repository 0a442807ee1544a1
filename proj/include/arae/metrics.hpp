#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arae/control.hpp"
#include "arae/csv.hpp"

namespace arae {

enum class EstimatorModel { FixedTorso, Sagittal };

const char* estimator_model_name(EstimatorModel m);

/// Mean absolute error between two equally long angle series, in degrees.
/// Per-joint means plus their average; `pooled` averages over all
/// joint-frame pairs (identical for rectangular series, reported for
/// completeness of multi-trial aggregation).
struct MaeStats {
    std::array<double, 4> per_joint_deg{};
    double mean_deg = 0;
    double pooled_deg = 0;
    size_t frames = 0;
};

MaeStats mae(const std::vector<HumanJointAngles>& truth,
             const std::vector<HumanJointAngles>& estimate);

inline constexpr int kDistanceGroups = 7;

/// Bins an elbow-to-calibrated-shoulder distance ratio into the seven 10%
/// groups spanning [80%, 150%]; returns 0..6, or -1 when out of range. The
/// last bin is closed at 150%.
int classify_distance_group(double ratio);
int classify_distance_group(const Vec3& elbow, const Vec3& shoulder_init, double l_U);
std::string distance_group_label(int group);

/// Divergences between the transcribed source expressions and the
/// implemented (independently certified) forms. Emitted with every report so
/// systematic discrepancies stay visible instead of being silently patched.
struct ConformanceNote {
    std::string id;
    std::string observation;
    std::string resolution;
};

const std::vector<ConformanceNote>& conformance_notes();

struct GroupStat {
    int group = 0;
    size_t count = 0;
    double mae_deg = 0;  ///< NaN when the bin is empty
};

struct EmgSummary {
    std::array<double, 4> mav{};
    std::optional<std::array<double, 4>> delta_mav_percent;
};

/// Machine-readable evaluation output: MAE metrics, distance-group
/// breakdown, solver quality-flag counts, optional EMG section.
struct EvalReport {
    EstimatorModel model = EstimatorModel::FixedTorso;
    size_t samples = 0;
    MaeStats mae;
    std::vector<GroupStat> groups;  ///< all seven bins, in order
    size_t out_of_range_samples = 0;
    size_t estimator_failures = 0;
    size_t sagittal_clamped = 0;
    std::optional<EmgSummary> emg;
};

/// Per-sample estimates of an evaluation run (plot-ready CSV content).
struct EvalSeries {
    std::vector<double> t;
    std::array<std::vector<double>, 4> estimate;
    std::array<std::vector<double>, 4> truth;
    std::vector<double> ratio;
    std::vector<double> group;
};

/// Runs the chosen estimator over every sample of a ground-truth trajectory
/// and aggregates MAE overall and per distance group. Samples where the
/// estimator fails are counted and excluded from the averages.
/// Throws MissingGroundTruth when the trajectory has no truth columns.
EvalReport evaluate(const std::vector<TrajectorySample>& samples, const ControllerConfig& cfg,
                    EstimatorModel model, EvalSeries* series = nullptr);

/// Serializes a report as indented JSON (stable key order, LF endings).
std::string report_to_json(const EvalReport& report);
void write_report_json(const std::string& path, const EvalReport& report);

/// Writes the per-sample angle series and the per-group table next to a
/// report: <stem>_angles.csv and <stem>_groups.csv.
void write_eval_csvs(const std::string& stem, const EvalReport& report, const EvalSeries& series);

}  // namespace arae
