#include "arae/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace arae {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) {
            throw Error(ErrorCode::ParseError, name_ + ": expected an object");
        }
    }

    ~Section() = default;

    void get(const char* key, double& out) {
        take(key, [&](const json& v) {
            if (!v.is_number()) fail(key, "number");
            out = v.get<double>();
        });
    }

    void get(const char* key, bool& out) {
        take(key, [&](const json& v) {
            if (!v.is_boolean()) fail(key, "boolean");
            out = v.get<bool>();
        });
    }

    void get(const char* key, int& out) {
        take(key, [&](const json& v) {
            if (!v.is_number_integer()) fail(key, "integer");
            out = v.get<int>();
        });
    }

    template <typename Fn>
    void custom(const char* key, Fn&& fn) {
        take(key, std::forward<Fn>(fn));
    }

    void finish() {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw Error(ErrorCode::ParseError, name_ + ": unknown key '" + it.key() + "'");
            }
        }
    }

private:
    template <typename Fn>
    void take(const char* key, Fn&& fn) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it != j_.end()) fn(*it);
    }

    [[noreturn]] void fail(const char* key, const char* type) {
        throw Error(ErrorCode::ParseError, name_ + "." + key + ": expected " + type);
    }

    const json& j_;
    std::string name_;
    std::set<std::string> seen_;
};

Vec3 parse_vec3(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
        throw Error(ErrorCode::ParseError, where + ": expected [x, y, z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void parse_robot(const json& j, RobotGeometry& geom, RobotMassModel& mass) {
    Section s(j, "robot");
    s.get("l1", geom.l1);
    s.get("l21", geom.l21);
    s.get("l22", geom.l22);
    s.get("l31", geom.l31);
    s.get("l32", geom.l32);
    s.get("l4", geom.l4);
    s.get("l5", geom.l5);
    s.get("d5", geom.d5);
    s.custom("cuff_offsets", [&](const json& v) {
        if (!v.is_array() || v.size() != 2) {
            throw Error(ErrorCode::ParseError, "robot.cuff_offsets: expected [elbow, wrist]");
        }
        geom.cuff_offset_elbow = v[0].get<double>();
        geom.cuff_offset_wrist = v[1].get<double>();
    });
    s.custom("passive_zero", [&](const json& v) {
        if (!v.is_array() || v.size() != 2) {
            throw Error(ErrorCode::ParseError, "robot.passive_zero: expected [q4, q5]");
        }
        geom.passive_zero_q4 = v[0].get<double>();
        geom.passive_zero_q5 = v[1].get<double>();
    });
    s.custom("joint_limits", [&](const json& v) {
        if (!v.is_array() || v.size() != 5) {
            throw Error(ErrorCode::ParseError,
                        "robot.joint_limits: expected five entries ([lo, hi] or null)");
        }
        for (size_t i = 0; i < 5; ++i) {
            if (v[i].is_null()) continue;
            if (!v[i].is_array() || v[i].size() != 2) {
                throw Error(ErrorCode::ParseError, "robot.joint_limits: entry must be [lo, hi]");
            }
            geom.joint_limits[i] = JointRange{v[i][0].get<double>(), v[i][1].get<double>()};
        }
    });
    s.custom("mass_model", [&](const json& v) {
        if (!v.is_array()) {
            throw Error(ErrorCode::ParseError, "robot.mass_model: expected an array");
        }
        mass.links.clear();
        for (const auto& entry : v) {
            Section link(entry, "robot.mass_model[]");
            LinkMass lm;
            link.get("frame", lm.frame);
            link.get("mass", lm.mass);
            link.custom("com", [&](const json& c) { lm.com = parse_vec3(c, "mass_model.com"); });
            link.finish();
            mass.links.push_back(lm);
        }
    });
    s.finish();
}

void parse_human(const json& j, HumanArmParams& human) {
    Section s(j, "human");
    s.get("l_U", human.l_U);
    s.get("l_F", human.l_F);
    s.get("m_U", human.m_U);
    s.get("m_F", human.m_F);
    s.get("com_U", human.com_U);
    s.get("com_F", human.com_F);
    s.get("g", human.g);
    s.finish();
}

void parse_calibration(const json& j, const char* name, FrameCalibration& calib) {
    Section s(j, name);
    s.get("x", calib.x);
    s.get("y", calib.y);
    s.get("z", calib.z);
    s.get("psi", calib.psi);
    s.finish();
}

void parse_torso(const json& j, TorsoParams& torso) {
    Section s(j, "torso");
    s.get("l_SH", torso.l_SH);
    s.get("l_PH", torso.l_PH);
    s.finish();
}

void parse_control(const json& j, ControllerConfig& ctrl) {
    Section s(j, "control");
    s.get("torque_limit", ctrl.torque_limit);
    s.get("sagittal_clamp_tol", ctrl.sagittal_clamp_tol);
    s.finish();
}

void parse_filters(const json& j, FilterConfig& f) {
    Section s(j, "filters");
    s.get("notch_powerline_hz", f.notch_powerline_hz);
    s.get("notch_powerline_q", f.notch_powerline_q);
    s.get("notch_heartbeat_hz", f.notch_heartbeat_hz);
    s.get("notch_heartbeat_q", f.notch_heartbeat_q);
    s.get("highpass_hz", f.highpass_hz);
    s.get("lowpass_hz", f.lowpass_hz);
    s.get("butterworth_order", f.butterworth_order);
    s.get("zero_phase", f.zero_phase);
    s.finish();
}

SineProfile parse_profile(const json& j, const std::string& where) {
    SineProfile profile;
    Section s(j, where);
    s.get("offset", profile.offset);
    s.custom("components", [&](const json& v) {
        if (!v.is_array()) {
            throw Error(ErrorCode::ParseError, where + ".components: expected an array");
        }
        for (const auto& entry : v) {
            Section c(entry, where + ".components[]");
            SineProfile::Component comp;
            c.get("amp", comp.amp);
            c.get("freq_hz", comp.freq_hz);
            c.get("phase", comp.phase);
            c.finish();
            profile.components.push_back(comp);
        }
    });
    s.finish();
    return profile;
}

ordered profile_to_json(const SineProfile& p) {
    ordered j;
    j["offset"] = p.offset;
    ordered comps = ordered::array();
    for (const auto& c : p.components) {
        comps.push_back({{"amp", c.amp}, {"freq_hz", c.freq_hz}, {"phase", c.phase}});
    }
    j["components"] = comps;
    return j;
}

}  // namespace

ToolkitConfig default_config() {
    return {};
}

ToolkitConfig load_config(const std::string& path) {
    const json root = load_json_file(path);
    if (!root.is_object()) {
        throw Error(ErrorCode::ParseError, path + ": expected a JSON object");
    }
    static const std::set<std::string> known = {"robot",  "human",   "calibration_shoulder",
                                                "calibration_pelvis", "torso", "control",
                                                "filters"};
    for (auto it = root.begin(); it != root.end(); ++it) {
        if (!known.count(it.key())) {
            throw Error(ErrorCode::ParseError, path + ": unknown section '" + it.key() + "'");
        }
    }

    ToolkitConfig cfg = default_config();
    if (root.contains("robot")) parse_robot(root["robot"], cfg.controller.robot,
                                            cfg.controller.robot_mass);
    if (root.contains("human")) parse_human(root["human"], cfg.controller.human);
    if (root.contains("calibration_shoulder")) {
        parse_calibration(root["calibration_shoulder"], "calibration_shoulder",
                          cfg.controller.calib_shoulder);
    }
    if (root.contains("calibration_pelvis")) {
        parse_calibration(root["calibration_pelvis"], "calibration_pelvis",
                          cfg.controller.calib_pelvis);
    }
    if (root.contains("torso")) parse_torso(root["torso"], cfg.controller.torso);
    if (root.contains("control")) parse_control(root["control"], cfg.controller);
    if (root.contains("filters")) parse_filters(root["filters"], cfg.filters);

    cfg.controller.validate();
    cfg.filters.validate();
    return cfg;
}

std::string config_to_json(const ToolkitConfig& cfg) {
    const ControllerConfig& c = cfg.controller;
    ordered j;
    j["robot"] = {
        {"l1", c.robot.l1},   {"l21", c.robot.l21}, {"l22", c.robot.l22}, {"l31", c.robot.l31},
        {"l32", c.robot.l32}, {"l4", c.robot.l4},   {"l5", c.robot.l5},   {"d5", c.robot.d5},
        {"cuff_offsets", {c.robot.cuff_offset_elbow, c.robot.cuff_offset_wrist}},
        {"passive_zero", {c.robot.passive_zero_q4, c.robot.passive_zero_q5}},
    };
    ordered limits = ordered::array();
    for (const auto& lim : c.robot.joint_limits) {
        if (lim) {
            limits.push_back({lim->lo, lim->hi});
        } else {
            limits.push_back(nullptr);
        }
    }
    j["robot"]["joint_limits"] = limits;
    ordered mass = ordered::array();
    for (const auto& link : c.robot_mass.links) {
        mass.push_back({{"frame", link.frame},
                        {"mass", link.mass},
                        {"com", {link.com.x(), link.com.y(), link.com.z()}}});
    }
    j["robot"]["mass_model"] = mass;
    j["human"] = {
        {"l_U", c.human.l_U},     {"l_F", c.human.l_F},     {"m_U", c.human.m_U},
        {"m_F", c.human.m_F},     {"com_U", c.human.com_U}, {"com_F", c.human.com_F},
        {"g", c.human.g},
    };
    j["calibration_shoulder"] = {{"x", c.calib_shoulder.x},
                                 {"y", c.calib_shoulder.y},
                                 {"z", c.calib_shoulder.z},
                                 {"psi", c.calib_shoulder.psi}};
    j["calibration_pelvis"] = {{"x", c.calib_pelvis.x},
                               {"y", c.calib_pelvis.y},
                               {"z", c.calib_pelvis.z},
                               {"psi", c.calib_pelvis.psi}};
    j["torso"] = {{"l_SH", c.torso.l_SH}, {"l_PH", c.torso.l_PH}};
    j["control"] = {{"torque_limit", c.torque_limit},
                    {"sagittal_clamp_tol", c.sagittal_clamp_tol}};
    j["filters"] = {
        {"notch_powerline_hz", cfg.filters.notch_powerline_hz},
        {"notch_powerline_q", cfg.filters.notch_powerline_q},
        {"notch_heartbeat_hz", cfg.filters.notch_heartbeat_hz},
        {"notch_heartbeat_q", cfg.filters.notch_heartbeat_q},
        {"highpass_hz", cfg.filters.highpass_hz},
        {"lowpass_hz", cfg.filters.lowpass_hz},
        {"butterworth_order", cfg.filters.butterworth_order},
        {"zero_phase", cfg.filters.zero_phase},
    };
    return j.dump(2) + "\n";
}

SyntheticScenario load_scenario(const std::string& path) {
    const json root = load_json_file(path);
    if (!root.is_object()) {
        throw Error(ErrorCode::ParseError, path + ": expected a JSON object");
    }

    SyntheticScenario sc;
    Section s(root, "scenario");
    s.custom("human", [&](const json& v) { parse_human(v, sc.human); });
    s.custom("torso", [&](const json& v) { parse_torso(v, sc.torso); });
    s.custom("calibration_pelvis", [&](const json& v) {
        parse_calibration(v, "calibration_pelvis", sc.calib_pelvis);
    });
    s.get("calibration_lean_rad", sc.calibration_lean_rad);
    s.custom("joints", [&](const json& v) {
        if (!v.is_array() || v.size() != 4) {
            throw Error(ErrorCode::ParseError, "scenario.joints: expected four profiles");
        }
        for (size_t i = 0; i < 4; ++i) {
            sc.joint_profiles[i] = parse_profile(v[i], "scenario.joints[]");
        }
    });
    s.custom("lean", [&](const json& v) {
        Section lean(v, "scenario.lean");
        lean.get("start_rad", sc.lean.start_rad);
        lean.get("end_rad", sc.lean.end_rad);
        lean.custom("wobble",
                    [&](const json& w) { sc.lean.wobble = parse_profile(w, "scenario.lean.wobble"); });
        lean.finish();
    });
    s.get("duration_s", sc.duration_s);
    s.get("rate_hz", sc.rate_hz);
    s.get("randomize_phases", sc.randomize_phases);
    s.finish();

    sc.validate();
    return sc;
}

std::string scenario_to_json(const SyntheticScenario& sc) {
    ordered j;
    j["human"] = {
        {"l_U", sc.human.l_U},     {"l_F", sc.human.l_F},     {"m_U", sc.human.m_U},
        {"m_F", sc.human.m_F},     {"com_U", sc.human.com_U}, {"com_F", sc.human.com_F},
        {"g", sc.human.g},
    };
    j["torso"] = {{"l_SH", sc.torso.l_SH}, {"l_PH", sc.torso.l_PH}};
    j["calibration_pelvis"] = {{"x", sc.calib_pelvis.x},
                               {"y", sc.calib_pelvis.y},
                               {"z", sc.calib_pelvis.z},
                               {"psi", sc.calib_pelvis.psi}};
    j["calibration_lean_rad"] = sc.calibration_lean_rad;
    ordered joints = ordered::array();
    for (const auto& p : sc.joint_profiles) joints.push_back(profile_to_json(p));
    j["joints"] = joints;
    j["lean"] = {{"start_rad", sc.lean.start_rad},
                 {"end_rad", sc.lean.end_rad},
                 {"wobble", profile_to_json(sc.lean.wobble)}};
    j["duration_s"] = sc.duration_s;
    j["rate_hz"] = sc.rate_hz;
    j["randomize_phases"] = sc.randomize_phases;
    return j.dump(2) + "\n";
}

}  // namespace arae
