#include "mhauv/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mhauv {

std::optional<double> Metrics::crossing_time(bool downward) const {
    for (const Crossing& c : crossings) {
        if (c.downward == downward && c.duration) return c.duration;
    }
    return std::nullopt;
}

namespace {

bool inside(const TimeWindow& w, double t) { return t >= w.start && t < w.end; }

ZoneChatter aggregate(const std::vector<SimRecord>& records, double dt,
                      const std::vector<TimeWindow>* holds) {
    double tv[3] = {0.0, 0.0, 0.0};
    double time[3] = {0.0, 0.0, 0.0};
    auto in_holds = [&](double t) {
        if (!holds) return true;
        return std::any_of(holds->begin(), holds->end(),
                           [t](const TimeWindow& w) { return inside(w, t); });
    };
    for (std::size_t k = 0; k < records.size(); ++k) {
        const SimRecord& r = records[k];
        if (!in_holds(r.t)) continue;
        const int z = static_cast<int>(r.zone);
        time[z] += dt;
        if (k > 0 && records[k - 1].zone == r.zone && in_holds(records[k - 1].t)) {
            tv[z] += std::abs(r.thrust - records[k - 1].thrust);
        }
    }
    auto rate = [&](int z) { return time[z] > 0.0 ? tv[z] / time[z] : 0.0; };
    return {rate(0), rate(1), rate(2)};
}

}  // namespace

Metrics compute_metrics(const std::vector<SimRecord>& records,
                        const std::vector<SwitchEvent>& events,
                        const std::vector<TimeWindow>& holds, double dt, double height) {
    Metrics m;
    m.switch_count = static_cast<int>(events.size());
    if (records.empty()) return m;

    double sq = 0.0;
    for (const SimRecord& r : records) {
        const double e = std::abs(r.state.position.z() - r.z_ref);
        sq += e * e;
        m.max_z_error = std::max(m.max_z_error, e);
        m.attitude_envelope = std::max(
            {m.attitude_envelope, std::abs(r.state.attitude.x()), std::abs(r.state.attitude.y())});
    }
    m.rms_z_error = std::sqrt(sq / static_cast<double>(records.size()));

    std::vector<TimeWindow> steady;
    for (const TimeWindow& h : holds) {
        HoldError he;
        he.window = {std::max(h.start, h.end - kSteadyStateWindow), h.end};
        double sum = 0.0;
        int n = 0;
        for (const SimRecord& r : records) {
            if (inside(he.window, r.t)) {
                sum += std::abs(r.state.position.z() - r.z_ref);
                ++n;
            }
        }
        if (n == 0) continue;  // run ended before this hold
        he.mean_abs_error = sum / n;
        m.steady_state_z_error = std::max(m.steady_state_z_error, he.mean_abs_error);
        m.holds.push_back(he);
    }

    // Zone segments.
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= records.size(); ++k) {
        if (k == records.size() || records[k].zone != records[begin].zone) {
            ChatterSegment seg;
            seg.zone = records[begin].zone;
            seg.start = records[begin].t;
            seg.end = records[k - 1].t + dt;
            for (std::size_t i = begin + 1; i < k; ++i) {
                seg.total_variation += std::abs(records[i].thrust - records[i - 1].thrust);
            }
            seg.index = seg.total_variation / ((k - begin) * dt);
            m.chatter.push_back(seg);
            begin = k;
        }
    }
    m.chattering = aggregate(records, dt, nullptr);
    m.hold_chattering = aggregate(records, dt, &holds);

    // Reference crossing one boundary until the vehicle crosses the other.
    const double half = 0.5 * height;
    for (std::size_t k = 1; k < records.size(); ++k) {
        const double prev = records[k - 1].z_ref;
        const double cur = records[k].z_ref;
        const bool down = prev >= half && cur < half;
        const bool up = prev <= -half && cur > -half;
        if (!down && !up) continue;
        Crossing c;
        c.downward = down;
        c.reference_time = records[k].t;
        for (std::size_t j = k; j < records.size(); ++j) {
            const double z = records[j].state.position.z();
            if ((down && z <= -half) || (up && z >= half)) {
                c.duration = records[j].t - c.reference_time;
                break;
            }
        }
        m.crossings.push_back(c);
    }
    return m;
}

}  // namespace mhauv
