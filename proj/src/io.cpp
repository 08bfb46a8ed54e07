#include "mhauv/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace mhauv::io {

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

template <typename Vec>
void put(std::ostream& os, const Vec& v) {
    for (int i = 0; i < v.size(); ++i) os << ',' << number(v[i]);
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : ""; }

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void write_log(std::ostream& os, const std::vector<SimRecord>& records) {
    os << kLogHeader << '\n';
    for (const SimRecord& r : records) {
        os << number(r.t);
        put(os, r.state.position);
        put(os, r.state.body_velocity);
        put(os, r.state.attitude);
        put(os, r.state.body_rates);
        os << ',' << number(r.z_ref);
        put(os, r.attitude_ref);
        os << ',' << to_string(r.zone) << ',' << to_string(r.strategy) << ','
           << number(r.thrust);
        put(os, r.torque);
        for (double w : r.rotors.omega) os << ',' << number(w);
        const Vec4 sigma = r.sigma.value_or(Vec4::Constant(std::nan("")));
        put(os, sigma);
        os << ',' << r.saturation << '\n';
    }
}

void write_events(std::ostream& os, const std::vector<SwitchEvent>& events) {
    os << kEventHeader << '\n';
    for (const SwitchEvent& e : events) {
        os << number(e.time) << ',' << to_string(e.from) << ',' << to_string(e.to) << ','
           << number(e.z) << ',' << number(e.z_rate) << ',' << number(e.roll) << ','
           << number(e.pitch) << ',' << number(e.roll_rate) << ',' << number(e.pitch_rate)
           << '\n';
    }
}

std::string metrics_json(const SimResult& result) {
    const Metrics& m = result.metrics;
    nlohmann::ordered_json j;
    j["diverged"] = result.diverged();
    j["divergence_time"] = result.divergence ? nlohmann::ordered_json(result.divergence->time)
                                             : nlohmann::ordered_json(nullptr);
    j["divergence_reason"] = result.divergence ? result.divergence->reason : "";
    j["records"] = result.records.size();
    j["rms_z_error"] = m.rms_z_error;
    j["max_z_error"] = m.max_z_error;
    j["steady_state_z_error"] = m.steady_state_z_error;
    for (std::size_t i = 0; i < m.holds.size(); ++i) {
        const std::string key = "hold_" + std::to_string(i);
        j[key + "_start"] = m.holds[i].window.start;
        j[key + "_end"] = m.holds[i].window.end;
        j[key + "_mean_abs_z_error"] = m.holds[i].mean_abs_error;
    }
    j["attitude_envelope"] = m.attitude_envelope;
    j["chattering_air"] = m.chattering.air;
    j["chattering_hybrid"] = m.chattering.hybrid;
    j["chattering_water"] = m.chattering.water;
    j["hold_chattering_air"] = m.hold_chattering.air;
    j["hold_chattering_hybrid"] = m.hold_chattering.hybrid;
    j["hold_chattering_water"] = m.hold_chattering.water;
    for (std::size_t i = 0; i < m.chatter.size(); ++i) {
        const std::string key = "segment_" + std::to_string(i);
        j[key + "_zone"] = std::string(to_string(m.chatter[i].zone));
        j[key + "_start"] = m.chatter[i].start;
        j[key + "_end"] = m.chatter[i].end;
        j[key + "_chattering_index"] = m.chatter[i].index;
    }
    j["crossing_time_down"] = optional_json(m.crossing_time(true));
    j["crossing_time_up"] = optional_json(m.crossing_time(false));
    j["switch_count"] = m.switch_count;
    return j.dump(2) + "\n";
}

void write_comparison(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << kComparisonHeader << '\n';
    for (const ComparisonRow& row : rows) {
        const SimResult& r = row.result;
        const Metrics& m = r.metrics;
        os << row.shape << ',' << to_string(row.mode) << ',' << (r.diverged() ? 1 : 0) << ','
           << number(m.rms_z_error) << ',' << number(m.max_z_error) << ','
           << number(m.steady_state_z_error) << ',' << number(m.attitude_envelope) << ','
           << number(m.chattering.air) << ',' << number(m.chattering.hybrid) << ','
           << number(m.chattering.water) << ',' << number(m.hold_chattering.air) << ','
           << number(m.hold_chattering.hybrid) << ',' << number(m.hold_chattering.water) << ','
           << optional_number(m.crossing_time(true)) << ','
           << optional_number(m.crossing_time(false)) << ',' << m.switch_count << '\n';
    }
}

void write_ct_curve(std::ostream& os, double h_min, double h_max, int n,
                    const ThrustModel& model) {
    if (!(std::isfinite(h_min) && std::isfinite(h_max) && h_min < h_max)) {
        throw InvalidArgument("ct-dump: need finite h_min < h_max");
    }
    if (n < 2) throw InvalidArgument("ct-dump: need at least 2 samples");
    model.validate();
    os << kCtHeader << '\n';
    for (int i = 0; i < n; ++i) {
        const double h = i == n - 1 ? h_max : h_min + (h_max - h_min) * i / (n - 1);
        os << number(h) << ',' << number(thrust_coefficient(h, model)) << '\n';
    }
}

}  // namespace mhauv::io
