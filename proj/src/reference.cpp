#include "mhauv/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mhauv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Reference vertical(double z, double rate = 0.0, double accel = 0.0) {
    Reference r;
    r.position.z() = z;
    r.z_rate = rate;
    r.z_accel = accel;
    return r;
}

}  // namespace

void validate(const ReferenceSpec& spec) {
    std::visit(overloaded{
                   [](const StepReference& s) {
                       if (!std::isfinite(s.z_from) || !std::isfinite(s.z_to) ||
                           !std::isfinite(s.t_step) || s.t_step < 0.0) {
                           throw InvalidArgument("step reference: non-finite level or negative t_step");
                       }
                   },
                   [](const SineReference& s) {
                       if (!std::isfinite(s.amplitude) || !std::isfinite(s.offset) ||
                           !(s.period > 0.0)) {
                           throw InvalidArgument("sine reference: amplitude/offset finite, period > 0");
                       }
                   },
                   [](const CosineReference& s) {
                       if (!std::isfinite(s.amplitude) || !std::isfinite(s.offset) ||
                           !(s.period > 0.0)) {
                           throw InvalidArgument("cosine reference: amplitude/offset finite, period > 0");
                       }
                   },
                   [](const ProfileReference& p) {
                       if (p.knots.empty()) {
                           throw InvalidArgument("profile reference: no knots");
                       }
                       for (std::size_t i = 0; i < p.knots.size(); ++i) {
                           if (!std::isfinite(p.knots[i].first) || !std::isfinite(p.knots[i].second)) {
                               throw InvalidArgument("profile reference: non-finite knot");
                           }
                           if (i > 0 && !(p.knots[i].first > p.knots[i - 1].first)) {
                               throw InvalidArgument("profile reference: knot times must strictly increase");
                           }
                       }
                   },
               },
               spec);
}

Reference sample_reference(const ReferenceSpec& spec, double t) {
    return std::visit(
        overloaded{
            [t](const StepReference& s) { return vertical(t < s.t_step ? s.z_from : s.z_to); },
            [t](const SineReference& s) {
                const double w = kTwoPi / s.period;
                return vertical(s.offset + s.amplitude * std::sin(w * t),
                                s.amplitude * w * std::cos(w * t),
                                -s.amplitude * w * w * std::sin(w * t));
            },
            [t](const CosineReference& s) {
                const double w = kTwoPi / s.period;
                return vertical(s.offset + s.amplitude * std::cos(w * t),
                                -s.amplitude * w * std::sin(w * t),
                                -s.amplitude * w * w * std::cos(w * t));
            },
            [t](const ProfileReference& p) {
                const auto& k = p.knots;
                if (t <= k.front().first) return vertical(k.front().second);
                if (t >= k.back().first) return vertical(k.back().second);
                const auto it = std::upper_bound(
                    k.begin(), k.end(), t, [](double x, const auto& knot) { return x < knot.first; });
                const auto& [t1, z1] = *it;
                const auto& [t0, z0] = *(it - 1);
                const double slope = (z1 - z0) / (t1 - t0);
                return vertical(z0 + slope * (t - t0), slope);
            },
        },
        spec);
}

std::vector<TimeWindow> hold_segments(const ReferenceSpec& spec, double duration) {
    std::vector<TimeWindow> out;
    auto push = [&](double a, double b) {
        a = std::max(a, 0.0);
        b = std::min(b, duration);
        if (b > a) out.push_back({a, b});
    };
    std::visit(overloaded{
                   [&](const StepReference& s) {
                       push(0.0, s.t_step);
                       push(s.t_step, duration);
                   },
                   [](const SineReference&) {},
                   [](const CosineReference&) {},
                   [&](const ProfileReference& p) {
                       const auto& k = p.knots;
                       std::vector<std::pair<TimeWindow, double>> flat;
                       flat.push_back({{0.0, k.front().first}, k.front().second});
                       for (std::size_t i = 0; i + 1 < k.size(); ++i) {
                           if (k[i].second == k[i + 1].second) {
                               flat.push_back({{k[i].first, k[i + 1].first}, k[i].second});
                           }
                       }
                       flat.push_back({{k.back().first, duration}, k.back().second});
                       std::vector<std::pair<TimeWindow, double>> merged;
                       for (const auto& seg : flat) {
                           if (!merged.empty() && merged.back().second == seg.second &&
                               merged.back().first.end >= seg.first.start) {
                               merged.back().first.end = std::max(merged.back().first.end, seg.first.end);
                           } else {
                               merged.push_back(seg);
                           }
                       }
                       for (const auto& [w, level] : merged) push(w.start, w.end);
                   },
               },
               spec);
    return out;
}

ProfileReference crossing_profile(double level, double hold, double ramp_speed, double lead_in) {
    const double up = level / ramp_speed;
    const double cross = 2.0 * level / ramp_speed;
    ProfileReference p;
    double t = 0.0;
    p.knots.emplace_back(t, 0.0);
    t += lead_in;
    p.knots.emplace_back(t, 0.0);
    t += up;
    p.knots.emplace_back(t, level);
    t += hold;
    p.knots.emplace_back(t, level);
    t += cross;
    p.knots.emplace_back(t, -level);
    t += hold;
    p.knots.emplace_back(t, -level);
    t += cross;
    p.knots.emplace_back(t, level);
    t += hold;
    p.knots.emplace_back(t, level);
    return p;
}

}  // namespace mhauv
