#include "arae/emg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace arae {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> reverse(std::vector<double> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

}  // namespace

void FilterConfig::validate() const {
    if (butterworth_order < 2 || butterworth_order % 2 != 0) {
        throw Error(ErrorCode::ConfigError, "filters: butterworth order must be even and >= 2");
    }
    for (double f : {notch_powerline_hz, notch_heartbeat_hz, highpass_hz, lowpass_hz}) {
        if (!(f > 0.0)) throw Error(ErrorCode::ConfigError, "filters: frequencies must be > 0");
    }
    if (!(notch_powerline_q > 0.0) || !(notch_heartbeat_q > 0.0)) {
        throw Error(ErrorCode::ConfigError, "filters: notch Q must be > 0");
    }
}

std::vector<Biquad> butterworth_sos(int order, double cutoff_hz, double sample_rate_hz,
                                    bool highpass) {
    if (order < 2 || order % 2 != 0) {
        throw Error(ErrorCode::ConfigError, "butterworth_sos: order must be even and >= 2");
    }
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0)) {
        throw Error(ErrorCode::SampleRateTooLow, "butterworth_sos: cutoff at or above Nyquist");
    }
    const double k = 2.0 * sample_rate_hz;
    const double wc = k * std::tan(kPi * cutoff_hz / sample_rate_hz);  // prewarped

    std::vector<Biquad> sos;
    sos.reserve(static_cast<size_t>(order / 2));
    for (int i = 0; i < order / 2; ++i) {
        // conjugate pole pair of the analog prototype, |p| = 1
        const double theta = kPi * (2.0 * i + 1.0 + order) / (2.0 * order);
        const double re = std::cos(theta);
        const double a = k * k;
        const double b = -2.0 * re * wc * k;
        const double c = wc * wc;
        const double den0 = a + b + c;
        Biquad s{};
        if (highpass) {
            s.b0 = a / den0;
            s.b1 = -2.0 * a / den0;
            s.b2 = a / den0;
        } else {
            s.b0 = c / den0;
            s.b1 = 2.0 * c / den0;
            s.b2 = c / den0;
        }
        s.a1 = (-2.0 * a + 2.0 * c) / den0;
        s.a2 = (a - b + c) / den0;
        sos.push_back(s);
    }
    return sos;
}

Biquad notch_biquad(double f0_hz, double sample_rate_hz, double q) {
    if (!(f0_hz > 0.0) || !(f0_hz < sample_rate_hz / 2.0)) {
        throw Error(ErrorCode::SampleRateTooLow, "notch_biquad: center at or above Nyquist");
    }
    const double w0 = 2.0 * kPi * f0_hz / sample_rate_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    return {1.0 / a0, -2.0 * std::cos(w0) / a0, 1.0 / a0, -2.0 * std::cos(w0) / a0,
            (1.0 - alpha) / a0};
}

std::vector<double> sos_filter(std::span<const double> x, const std::vector<Biquad>& sos) {
    std::vector<double> y(x.begin(), x.end());
    for (const Biquad& s : sos) {
        double s1 = 0.0, s2 = 0.0;  // transposed direct form II
        for (double& v : y) {
            const double in = v;
            const double out = s.b0 * in + s1;
            s1 = s.b1 * in - s.a1 * out + s2;
            s2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
    return y;
}

std::vector<double> sos_filtfilt(std::span<const double> x, const std::vector<Biquad>& sos) {
    const size_t padlen = 3 * (2 * sos.size() + 1);
    if (x.size() <= padlen + 1) {
        throw Error(ErrorCode::LengthMismatch, "sos_filtfilt: signal shorter than edge padding");
    }
    // odd reflection about the endpoints suppresses edge transients
    std::vector<double> ext;
    ext.reserve(x.size() + 2 * padlen);
    for (size_t i = padlen; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (size_t i = 2; i <= padlen + 1; ++i) ext.push_back(2.0 * x[x.size() - 1] - x[x.size() - i]);

    std::vector<double> y = sos_filter(ext, sos);
    y = reverse(sos_filter(reverse(std::move(y)), sos));
    return {y.begin() + static_cast<long>(padlen), y.end() - static_cast<long>(padlen)};
}

void EmgRecord::validate() const {
    if (!(sample_rate_hz > 0.0)) {
        throw Error(ErrorCode::ConfigError, "emg record: sample rate must be > 0");
    }
    for (const auto& ch : channels) {
        if (ch.size() != t.size()) {
            throw Error(ErrorCode::LengthMismatch, "emg record: channel length mismatch");
        }
    }
    const double dt = 1.0 / sample_rate_hz;
    for (size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt + 1e-9) {
            throw Error(ErrorCode::ParseError, "emg record: non-uniform sampling");
        }
    }
}

std::vector<double> emg_envelope(std::span<const double> x, double sample_rate_hz,
                                 const FilterConfig& cfg, double mvc) {
    cfg.validate();
    const double highest =
        std::max({cfg.notch_powerline_hz, cfg.notch_heartbeat_hz, cfg.highpass_hz, cfg.lowpass_hz});
    if (sample_rate_hz < 2.0 * highest) {
        throw Error(ErrorCode::SampleRateTooLow,
                    "emg_envelope: sample rate below twice the highest filter frequency");
    }
    if (!(mvc > 0.0)) {
        throw Error(ErrorCode::ConfigError, "emg_envelope: MVC constant must be > 0");
    }

    const auto apply = [&](std::span<const double> in, const std::vector<Biquad>& sos) {
        return cfg.zero_phase ? sos_filtfilt(in, sos) : sos_filter(in, sos);
    };

    std::vector<double> y = apply(x, {notch_biquad(cfg.notch_powerline_hz, sample_rate_hz,
                                                   cfg.notch_powerline_q)});
    y = apply(y, {notch_biquad(cfg.notch_heartbeat_hz, sample_rate_hz, cfg.notch_heartbeat_q)});
    y = apply(y, butterworth_sos(cfg.butterworth_order, cfg.highpass_hz, sample_rate_hz, true));
    for (double& v : y) v = std::abs(v);  // full-wave rectification
    y = apply(y, butterworth_sos(cfg.butterworth_order, cfg.lowpass_hz, sample_rate_hz, false));
    if (mvc != 1.0) {
        for (double& v : y) v /= mvc;
    }
    return y;
}

std::array<std::vector<double>, 4> emg_pipeline(const EmgRecord& rec, const FilterConfig& cfg) {
    rec.validate();
    std::array<std::vector<double>, 4> env;
    for (size_t c = 0; c < 4; ++c) {
        env[c] = emg_envelope(rec.channels[c], rec.sample_rate_hz, cfg, rec.mvc[c]);
    }
    return env;
}

double mav(std::span<const double> envelope) {
    if (envelope.empty()) {
        throw Error(ErrorCode::LengthMismatch, "mav: empty series");
    }
    double sum = 0.0;
    for (double v : envelope) sum += v;
    return sum / static_cast<double>(envelope.size());
}

double delta_mav_percent(double mav_condition, double mav_baseline) {
    if (mav_baseline == 0.0) {
        throw Error(ErrorCode::ZeroBaseline, "delta_mav: baseline MAV is zero");
    }
    return (mav_condition - mav_baseline) / mav_baseline * 100.0;
}

std::vector<double> downsample_by_2(std::span<const double> x, double sample_rate_hz,
                                    double antialias_hz) {
    const auto lp = butterworth_sos(4, antialias_hz, sample_rate_hz, false);
    const std::vector<double> smooth = sos_filtfilt(x, lp);
    std::vector<double> out;
    out.reserve((smooth.size() + 1) / 2);
    for (size_t i = 0; i < smooth.size(); i += 2) out.push_back(smooth[i]);
    return out;
}

}  // namespace arae
