#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "arae/errors.hpp"

namespace arae {

/// sEMG processing chain parameters. The chain runs notch (powerline), notch
/// (heartbeat), high-pass, full-wave rectification, low-pass; zero-phase
/// (forward-backward) by default, causal single-pass optionally.
struct FilterConfig {
    double notch_powerline_hz = 50.0;
    double notch_powerline_q = 30.0;
    double notch_heartbeat_hz = 1.67;
    double notch_heartbeat_q = 5.0;
    double highpass_hz = 20.0;
    double lowpass_hz = 4.0;
    int butterworth_order = 10;  ///< must be even; realized as cascaded biquads
    bool zero_phase = true;

    void validate() const;
};

/// One second-order section y[n] = b0 x + b1 x' + b2 x'' - a1 y' - a2 y''.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

/// Butterworth low/high-pass designed by bilinear transform with frequency
/// prewarping, returned as order/2 cascaded sections.
std::vector<Biquad> butterworth_sos(int order, double cutoff_hz, double sample_rate_hz,
                                    bool highpass);

/// Single-notch biquad at f0 with quality factor q.
Biquad notch_biquad(double f0_hz, double sample_rate_hz, double q);

std::vector<double> sos_filter(std::span<const double> x, const std::vector<Biquad>& sos);

/// Forward-backward application with odd-reflection edge padding.
std::vector<double> sos_filtfilt(std::span<const double> x, const std::vector<Biquad>& sos);

/// Raw four-channel sEMG record: pm, dm, bb, tb (mV), uniform sampling.
struct EmgRecord {
    static constexpr std::array<const char*, 4> kChannelNames = {"pm", "dm", "bb", "tb"};

    double sample_rate_hz = 2000.0;
    std::vector<double> t;
    std::array<std::vector<double>, 4> channels;
    std::array<double, 4> mvc = {1.0, 1.0, 1.0, 1.0};  ///< per-channel normalization

    size_t size() const { return t.size(); }
    void validate() const;
};

/// Full envelope chain for one channel; mvc divides the final envelope.
/// Throws SampleRateTooLow if the rate is below twice the highest filter
/// frequency in the chain.
std::vector<double> emg_envelope(std::span<const double> x, double sample_rate_hz,
                                 const FilterConfig& cfg, double mvc = 1.0);

/// Envelope chain over all four channels of a record.
std::array<std::vector<double>, 4> emg_pipeline(const EmgRecord& rec, const FilterConfig& cfg);

/// Mean of an (already rectified) envelope.
double mav(std::span<const double> envelope);

/// Percent change of MAV between a condition and a baseline.
double delta_mav_percent(double mav_condition, double mav_baseline);

/// Decimation by two after a zero-phase anti-alias low-pass, for ingesting
/// 200 Hz ground-truth streams against 100 Hz robot logs.
std::vector<double> downsample_by_2(std::span<const double> x, double sample_rate_hz,
                                    double antialias_hz = 40.0);

}  // namespace arae
