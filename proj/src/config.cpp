#include "mhauv/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace mhauv {

namespace {

std::string where(const std::string& source, const YAML::Mark& mark) {
    if (mark.is_null()) return source;
    return source + ":" + std::to_string(mark.line + 1);
}

/// A mapping node whose keys must all be consumed before finish().
class Section {
public:
    Section(YAML::Node node, std::string path, const std::string& source)
        : node_(std::move(node)), path_(std::move(path)), source_(source) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) {
            throw ConfigError(where(source_, node_.Mark()) + ": '" + path_ +
                              "' must be a mapping");
        }
    }

    [[nodiscard]] bool present() const { return node_ && node_.IsMap(); }

    template <typename T>
    void get(const char* key, T& out) {
        if (const auto n = lookup(key)) {
            try {
                out = n->as<T>();
            } catch (const YAML::Exception&) {
                throw bad_value(key, *n);
            }
        }
    }

    template <typename V>
    void vec(const char* key, V& out, int size) {
        if (const auto found = lookup(key)) {
            const YAML::Node& n = *found;
            if (!n.IsSequence() || static_cast<int>(n.size()) != size) {
                throw ConfigError(where(source_, n.Mark()) + ": '" + full(key) + "' must be a list of " +
                                  std::to_string(size) + " numbers");
            }
            try {
                for (int i = 0; i < size; ++i) out[i] = n[i].as<double>();
            } catch (const YAML::Exception&) {
                throw bad_value(key, n);
            }
        }
    }

    Section child(const char* key) {
        return Section(lookup(key).value_or(YAML::Node()), full(key), source_);
    }

    std::optional<YAML::Node> raw(const char* key) { return lookup(key); }

    void finish() const {
        if (!present()) return;
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            const std::string k = it->first.as<std::string>();
            if (!used_.count(k)) {
                throw ConfigError(where(source_, it->first.Mark()) + ": unknown key '" + full(k) +
                                  "'");
            }
        }
    }

    [[nodiscard]] std::string full(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }
    [[nodiscard]] const std::string& source() const { return source_; }

    ConfigError bad_value(const std::string& key, const YAML::Node& n) const {
        return ConfigError(where(source_, n.Mark()) + ": invalid value for '" + full(key) + "'");
    }

private:
    std::optional<YAML::Node> lookup(const char* key) {
        used_.insert(key);
        if (!present()) return std::nullopt;
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (it->first.as<std::string>() == key) return it->second;
        }
        return std::nullopt;
    }

    YAML::Node node_;
    std::string path_;
    const std::string& source_;
    std::set<std::string> used_;
};

void read_pid(Section s, PidGains& g) {
    s.get("kp", g.kp);
    s.get("ki", g.ki);
    s.get("kd", g.kd);
    s.get("output_limit", g.output_limit);
    s.finish();
}

void read_cascade(Section s, CascadeGains& g) {
    read_pid(s.child("x"), g.x);
    read_pid(s.child("y"), g.y);
    read_pid(s.child("z"), g.z);
    read_pid(s.child("roll"), g.roll);
    read_pid(s.child("pitch"), g.pitch);
    read_pid(s.child("yaw"), g.yaw);
    s.get("max_tilt", g.max_tilt);
    s.get("thrust_min", g.thrust_min);
    s.get("thrust_max", g.thrust_max);
    s.finish();
}

void read_step(Section s, StepReference& r) {
    s.get("z_from", r.z_from);
    s.get("z_to", r.z_to);
    s.get("t_step", r.t_step);
    s.finish();
}

template <typename Wave>
void read_wave(Section s, Wave& r) {
    s.get("amplitude", r.amplitude);
    s.get("period", r.period);
    s.get("offset", r.offset);
    s.finish();
}

ReferenceSpec read_reference(Section s, const ReferenceSpec& fallback) {
    if (!s.present()) return fallback;
    std::string type = "step";
    s.get("type", type);
    ReferenceSpec out;
    if (type == "step") {
        StepReference r;
        s.get("z_from", r.z_from);
        s.get("z_to", r.z_to);
        s.get("t_step", r.t_step);
        out = r;
    } else if (type == "sine" || type == "cosine") {
        double a = 0.5, p = 10.0, o = 0.0;
        s.get("amplitude", a);
        s.get("period", p);
        s.get("offset", o);
        if (type == "sine") {
            out = SineReference{a, p, o};
        } else {
            out = CosineReference{a, p, o};
        }
    } else if (type == "profile") {
        ProfileReference r;
        if (const auto knots = s.raw("knots")) {
            if (!knots->IsSequence()) throw s.bad_value("knots", *knots);
            for (const YAML::Node& k : *knots) {
                if (!k.IsSequence() || k.size() != 2) throw s.bad_value("knots", k);
                try {
                    r.knots.emplace_back(k[0].as<double>(), k[1].as<double>());
                } catch (const YAML::Exception&) {
                    throw s.bad_value("knots", k);
                }
            }
        }
        out = r;
    } else {
        throw ConfigError(s.source() + ": unknown reference type '" + type + "'");
    }
    s.finish();
    return out;
}

Pulse read_pulse(Section s) {
    Pulse p;
    s.get("start", p.start);
    s.get("duration", p.duration);
    s.vec("force", p.force, 3);
    s.vec("torque", p.torque, 3);
    s.finish();
    return p;
}

void read_document(const YAML::Node& root, const std::string& source, Config& c) {
    Section top(root, "", source);
    Scenario& sc = c.scenario;

    {
        Section s = top.child("vehicle");
        VehicleParams& v = sc.vehicle;
        s.get("mass", v.mass);
        s.get("added_mass", v.added_mass);
        s.vec("inertia", v.inertia, 3);
        s.vec("added_inertia", v.added_inertia, 3);
        s.get("rotor_inertia", v.rotor_inertia);
        s.get("arm_length", v.arm_length);
        s.get("height", v.height);
        s.get("displaced_volume", v.displaced_volume);
        s.vec("drag_areas", v.drag_areas, 6);
        s.get("drag_coefficient", v.drag_coefficient);
        s.get("rotor_offset", v.rotor_offset);
        s.finish();
    }
    {
        Section s = top.child("environment");
        s.get("rho_water", sc.environment.rho_water);
        s.get("rho_air", sc.environment.rho_air);
        s.get("g0", sc.environment.g0);
        s.finish();
    }
    {
        Section s = top.child("thrust");
        ThrustModel& t = sc.thrust;
        s.get("ct_air", t.ct_air);
        s.get("ct_water", t.ct_water);
        s.get("h_air_mm", t.h_air_mm);
        s.get("h_water_mm", t.h_water_mm);
        s.get("diameter", t.diameter);
        s.get("torque_ratio", t.torque_ratio);
        s.get("omega_max", t.omega_max);
        s.finish();
    }
    {
        Section s = top.child("control");
        std::string mode(to_string(sc.mode));
        s.get("mode", mode);
        try {
            sc.mode = parse_control_mode(mode);
        } catch (const InvalidArgument&) {
            throw s.bad_value("mode", s.raw("mode").value_or(YAML::Node()));
        }
        s.get("period", sc.control_period);
        read_cascade(s.child("pid_air"), sc.gains.air);
        read_cascade(s.child("pid_water"), sc.gains.water);
        {
            Section t = s.child("twsmc");
            TwsmcGains& g = sc.gains.twsmc;
            t.vec("surface", g.surface, 4);
            t.get("r1", g.r1);
            t.get("r2", g.r2);
            t.get("k_m", g.k_m);
            t.get("k_M", g.k_M);
            t.get("c_bound", g.c_bound);
            t.get("thrust_min", g.thrust_min);
            t.get("thrust_max", g.thrust_max);
            t.vec("torque_limit", g.torque_limit, 3);
            t.get("error_floor", g.error_floor);
            t.finish();
        }
        {
            Section w = s.child("switching");
            SwitchConfig& g = sc.switching;
            w.get("delta_z", g.delta_z);
            w.get("max_angle", g.max_angle);
            w.get("max_rate", g.max_rate);
            w.get("dwell_time", g.dwell_time);
            w.finish();
        }
        s.finish();
    }
    sc.reference = read_reference(top.child("reference"), sc.reference);
    {
        Section s = top.child("initial");
        if (s.present()) {
            s.vec("position", sc.initial.position, 3);
            s.vec("body_velocity", sc.initial.body_velocity, 3);
            s.vec("attitude", sc.initial.attitude, 3);
            s.vec("body_rates", sc.initial.body_rates, 3);
        } else {
            sc.initial = VehicleState{};
            try {
                sc.initial.position.z() = sample_reference(sc.reference, 0.0).position.z();
            } catch (const InvalidArgument& e) {
                throw ConfigError(source + ": reference: " + e.what());
            }
        }
        s.finish();
    }
    {
        Section s = top.child("simulation");
        s.get("duration", sc.duration);
        s.get("physics_step", sc.physics_step);
        s.get("seed", sc.seed);
        s.finish();
    }
    {
        Section s = top.child("disturbance");
        if (const auto pulses = s.raw("pulses")) {
            if (!pulses->IsSequence()) throw s.bad_value("pulses", *pulses);
            sc.disturbance.pulses.clear();
            for (std::size_t i = 0; i < pulses->size(); ++i) {
                sc.disturbance.pulses.push_back(read_pulse(
                    Section((*pulses)[i], "disturbance.pulses[" + std::to_string(i) + "]", source)));
            }
        }
        {
            Section r = s.child("random");
            RandomPulses& g = sc.disturbance.random;
            r.get("count", g.count);
            r.get("t_min", g.t_min);
            r.get("t_max", g.t_max);
            r.get("duration", g.duration);
            r.get("torque_max", g.torque_max);
            r.finish();
        }
        s.finish();
    }
    {
        Section s = top.child("comparison");
        s.get("duration", c.comparison.duration);
        read_step(s.child("step"), c.comparison.step);
        read_wave(s.child("sine"), c.comparison.sine);
        read_wave(s.child("cosine"), c.comparison.cosine);
        s.finish();
    }
    top.finish();
}

template <typename V>
void emit_vec(YAML::Emitter& e, const char* key, const V& v, int size) {
    e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (int i = 0; i < size; ++i) e << v[i];
    e << YAML::EndSeq;
}

void emit_pid(YAML::Emitter& e, const char* key, const PidGains& g) {
    e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "kp" << YAML::Value << g.kp;
    e << YAML::Key << "ki" << YAML::Value << g.ki;
    e << YAML::Key << "kd" << YAML::Value << g.kd;
    e << YAML::Key << "output_limit" << YAML::Value << g.output_limit;
    e << YAML::EndMap;
}

void emit_cascade(YAML::Emitter& e, const char* key, const CascadeGains& g) {
    e << YAML::Key << key << YAML::Value << YAML::BeginMap;
    emit_pid(e, "x", g.x);
    emit_pid(e, "y", g.y);
    emit_pid(e, "z", g.z);
    emit_pid(e, "roll", g.roll);
    emit_pid(e, "pitch", g.pitch);
    emit_pid(e, "yaw", g.yaw);
    e << YAML::Key << "max_tilt" << YAML::Value << g.max_tilt;
    e << YAML::Key << "thrust_min" << YAML::Value << g.thrust_min;
    e << YAML::Key << "thrust_max" << YAML::Value << g.thrust_max;
    e << YAML::EndMap;
}

template <typename Wave>
void emit_wave(YAML::Emitter& e, const Wave& w) {
    e << YAML::Key << "amplitude" << YAML::Value << w.amplitude;
    e << YAML::Key << "period" << YAML::Value << w.period;
    e << YAML::Key << "offset" << YAML::Value << w.offset;
}

void emit_step(YAML::Emitter& e, const StepReference& r) {
    e << YAML::Key << "z_from" << YAML::Value << r.z_from;
    e << YAML::Key << "z_to" << YAML::Value << r.z_to;
    e << YAML::Key << "t_step" << YAML::Value << r.t_step;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(where(source, e.mark) + ": " + e.msg);
    }
    Config c;
    if (!root || root.IsNull()) return c;
    read_document(root, source, c);
    try {
        c.scenario.validate();
        c.comparison.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

std::string dump_config(const Config& config) {
    const Scenario& sc = config.scenario;
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;

    const VehicleParams& v = sc.vehicle;
    e << YAML::Key << "vehicle" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "mass" << YAML::Value << v.mass;
    e << YAML::Key << "added_mass" << YAML::Value << v.added_mass;
    emit_vec(e, "inertia", v.inertia, 3);
    emit_vec(e, "added_inertia", v.added_inertia, 3);
    e << YAML::Key << "rotor_inertia" << YAML::Value << v.rotor_inertia;
    e << YAML::Key << "arm_length" << YAML::Value << v.arm_length;
    e << YAML::Key << "height" << YAML::Value << v.height;
    e << YAML::Key << "displaced_volume" << YAML::Value << v.displaced_volume;
    emit_vec(e, "drag_areas", v.drag_areas, 6);
    e << YAML::Key << "drag_coefficient" << YAML::Value << v.drag_coefficient;
    e << YAML::Key << "rotor_offset" << YAML::Value << v.rotor_offset;
    e << YAML::EndMap;

    e << YAML::Key << "environment" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "rho_water" << YAML::Value << sc.environment.rho_water;
    e << YAML::Key << "rho_air" << YAML::Value << sc.environment.rho_air;
    e << YAML::Key << "g0" << YAML::Value << sc.environment.g0;
    e << YAML::EndMap;

    const ThrustModel& t = sc.thrust;
    e << YAML::Key << "thrust" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "ct_air" << YAML::Value << t.ct_air;
    e << YAML::Key << "ct_water" << YAML::Value << t.ct_water;
    e << YAML::Key << "h_air_mm" << YAML::Value << t.h_air_mm;
    e << YAML::Key << "h_water_mm" << YAML::Value << t.h_water_mm;
    e << YAML::Key << "diameter" << YAML::Value << t.diameter;
    e << YAML::Key << "torque_ratio" << YAML::Value << t.torque_ratio;
    e << YAML::Key << "omega_max" << YAML::Value << t.omega_max;
    e << YAML::EndMap;

    e << YAML::Key << "control" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "mode" << YAML::Value << std::string(to_string(sc.mode));
    e << YAML::Key << "period" << YAML::Value << sc.control_period;
    emit_cascade(e, "pid_air", sc.gains.air);
    emit_cascade(e, "pid_water", sc.gains.water);
    const TwsmcGains& g = sc.gains.twsmc;
    e << YAML::Key << "twsmc" << YAML::Value << YAML::BeginMap;
    emit_vec(e, "surface", g.surface, 4);
    e << YAML::Key << "r1" << YAML::Value << g.r1;
    e << YAML::Key << "r2" << YAML::Value << g.r2;
    e << YAML::Key << "k_m" << YAML::Value << g.k_m;
    e << YAML::Key << "k_M" << YAML::Value << g.k_M;
    e << YAML::Key << "c_bound" << YAML::Value << g.c_bound;
    e << YAML::Key << "thrust_min" << YAML::Value << g.thrust_min;
    e << YAML::Key << "thrust_max" << YAML::Value << g.thrust_max;
    emit_vec(e, "torque_limit", g.torque_limit, 3);
    e << YAML::Key << "error_floor" << YAML::Value << g.error_floor;
    e << YAML::EndMap;
    const SwitchConfig& w = sc.switching;
    e << YAML::Key << "switching" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "delta_z" << YAML::Value << w.delta_z;
    e << YAML::Key << "max_angle" << YAML::Value << w.max_angle;
    e << YAML::Key << "max_rate" << YAML::Value << w.max_rate;
    e << YAML::Key << "dwell_time" << YAML::Value << w.dwell_time;
    e << YAML::EndMap;
    e << YAML::EndMap;

    e << YAML::Key << "reference" << YAML::Value << YAML::BeginMap;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, StepReference>) {
                e << YAML::Key << "type" << YAML::Value << "step";
                emit_step(e, r);
            } else if constexpr (std::is_same_v<T, SineReference>) {
                e << YAML::Key << "type" << YAML::Value << "sine";
                emit_wave(e, r);
            } else if constexpr (std::is_same_v<T, CosineReference>) {
                e << YAML::Key << "type" << YAML::Value << "cosine";
                emit_wave(e, r);
            } else {
                e << YAML::Key << "type" << YAML::Value << "profile";
                e << YAML::Key << "knots" << YAML::Value << YAML::BeginSeq;
                for (const auto& [kt, kz] : r.knots) {
                    e << YAML::Flow << YAML::BeginSeq << kt << kz << YAML::EndSeq;
                }
                e << YAML::EndSeq;
            }
        },
        sc.reference);
    e << YAML::EndMap;

    e << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    emit_vec(e, "position", sc.initial.position, 3);
    emit_vec(e, "body_velocity", sc.initial.body_velocity, 3);
    emit_vec(e, "attitude", sc.initial.attitude, 3);
    emit_vec(e, "body_rates", sc.initial.body_rates, 3);
    e << YAML::EndMap;

    e << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "duration" << YAML::Value << sc.duration;
    e << YAML::Key << "physics_step" << YAML::Value << sc.physics_step;
    e << YAML::Key << "seed" << YAML::Value << sc.seed;
    e << YAML::EndMap;

    e << YAML::Key << "disturbance" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "pulses" << YAML::Value << YAML::BeginSeq;
    for (const Pulse& p : sc.disturbance.pulses) {
        e << YAML::Flow << YAML::BeginMap;
        e << YAML::Key << "start" << YAML::Value << p.start;
        e << YAML::Key << "duration" << YAML::Value << p.duration;
        emit_vec(e, "force", p.force, 3);
        emit_vec(e, "torque", p.torque, 3);
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;
    const RandomPulses& r = sc.disturbance.random;
    e << YAML::Key << "random" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "count" << YAML::Value << r.count;
    e << YAML::Key << "t_min" << YAML::Value << r.t_min;
    e << YAML::Key << "t_max" << YAML::Value << r.t_max;
    e << YAML::Key << "duration" << YAML::Value << r.duration;
    e << YAML::Key << "torque_max" << YAML::Value << r.torque_max;
    e << YAML::EndMap;
    e << YAML::EndMap;

    const ComparisonSpec& cmp = config.comparison;
    e << YAML::Key << "comparison" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "duration" << YAML::Value << cmp.duration;
    e << YAML::Key << "step" << YAML::Value << YAML::BeginMap;
    emit_step(e, cmp.step);
    e << YAML::EndMap;
    e << YAML::Key << "sine" << YAML::Value << YAML::BeginMap;
    emit_wave(e, cmp.sine);
    e << YAML::EndMap;
    e << YAML::Key << "cosine" << YAML::Value << YAML::BeginMap;
    emit_wave(e, cmp.cosine);
    e << YAML::EndMap;
    e << YAML::EndMap;

    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

}  // namespace mhauv
