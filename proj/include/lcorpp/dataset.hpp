#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lcorpp/domain.hpp"
#include "lcorpp/errors.hpp"
#include "lcorpp/reasoner.hpp"
#include "lcorpp/rng.hpp"

namespace lcorpp {

// Trajectories are 2-D positions in millimeters, nominally sampled every
// 33 ms. Instances are the fixed-length feature encoding fed to the
// classifier: the first 30 points, min-max scaled by the arena bounds and
// interleaved as (x1, y1, ..., x30, y30).

inline constexpr int kSequenceLength = 30;
inline constexpr int kFeaturesPerStep = 2;
inline constexpr int kInstanceLength = kSequenceLength * kFeaturesPerStep;

struct TrajectoryPoint {
    double x = 0.0;
    double y = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    Intention label = Intention::not_interested;
};

struct Instance {
    std::vector<double> features;

    bool operator==(const Instance&) const = default;
};

struct Dataset {
    std::vector<std::pair<Instance, Intention>> items;

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    std::size_t count(Intention label) const {
        std::size_t n = 0;
        for (const auto& [_, l] : items)
            if (l == label) ++n;
        return n;
    }

    bool operator==(const Dataset&) const = default;
};

struct ArenaBounds {
    double x_min = 0.0, x_max = 10000.0;
    double y_min = 0.0, y_max = 10000.0;
};

// Class-conditional kinematic generator. Both classes start at a side edge
// and head across the corridor; interested walkers veer off toward the robot
// partway through, pass-by walkers keep going. `overlap` is the probability
// of following the other class's motion profile, which sets the Bayes error
// of the generated data.
struct TrajectoryGenConfig {
    ArenaBounds arena;
    double robot_x = 5000.0, robot_y = 2500.0;
    double approach_radius = 600.0;
    double step_mm = 260.0;
    int min_points = 34, max_points = 42;
    double noise_mm = 120.0;
    double overlap = 0.0;
    double positive_rate = 0.027;
    std::uint64_t seed = 1;

    void validate() const {
        if (arena.x_max <= arena.x_min || arena.y_max <= arena.y_min)
            throw config_error("trajectory generator: degenerate arena bounds");
        if (step_mm <= 0.0 || approach_radius <= 0.0)
            throw config_error("trajectory generator: lengths must be positive");
        if (min_points < kSequenceLength || max_points < min_points)
            throw config_error("trajectory generator: bad point-count range");
        if (noise_mm < 0.0) throw config_error("trajectory generator: negative noise");
        if (overlap < 0.0 || overlap > 1.0)
            throw config_error("trajectory generator: overlap outside [0,1]");
        if (positive_rate < 0.0 || positive_rate > 1.0)
            throw config_error("trajectory generator: positive_rate outside [0,1]");
    }
};

inline Trajectory synthesize_trajectory(Intention label, Rng& rng,
                                        const TrajectoryGenConfig& cfg) {
    cfg.validate();

    // motion profile, possibly swapped by the overlap knob
    Intention profile = label;
    if (cfg.overlap > 0.0 && rng.bernoulli(cfg.overlap))
        profile = label == Intention::interested ? Intention::not_interested
                                                 : Intention::interested;

    const double width = cfg.arena.x_max - cfg.arena.x_min;
    const double height = cfg.arena.y_max - cfg.arena.y_min;
    const bool from_left = rng.bernoulli(0.5);
    const double x0 = from_left ? cfg.arena.x_min : cfg.arena.x_max;
    const double y0 = cfg.arena.y_min + rng.uniform(0.40, 0.70) * height;
    const double x_far = from_left ? cfg.arena.x_max : cfg.arena.x_min;

    const int n = cfg.min_points +
                  static_cast<int>(rng.uniform_index(
                      static_cast<std::size_t>(cfg.max_points - cfg.min_points + 1)));

    // both classes share the first leg toward a mid-corridor via point
    const double via_x = cfg.arena.x_min + 0.5 * width + rng.uniform(-0.05, 0.05) * width;
    const double via_y = y0 + rng.uniform(-0.04, 0.04) * height;
    const int veer_at = static_cast<int>(std::ceil(0.4 * n));

    // interested walkers stop just inside the approach radius
    const double hold_dist = 0.6 * cfg.approach_radius;

    Trajectory traj;
    traj.label = label;
    traj.points.reserve(static_cast<std::size_t>(n));

    double x = x0, y = y0;
    double exit_y = cfg.arena.y_min + rng.uniform(0.40, 0.70) * height;
    for (int i = 0; i < n; ++i) {
        traj.points.push_back({x, y});
        double tx, ty;
        if (i < veer_at) {
            tx = via_x;
            ty = via_y;
        } else if (profile == Intention::interested) {
            tx = cfg.robot_x;
            ty = cfg.robot_y;
        } else {
            tx = x_far;
            ty = exit_y;
        }
        double dx = tx - x, dy = ty - y;
        double dist = std::hypot(dx, dy);
        if (profile == Intention::interested && i >= veer_at && dist <= hold_dist) {
            dx = 0.0;
            dy = 0.0;  // arrived: hold position near the robot
        } else if (dist > cfg.step_mm) {
            dx *= cfg.step_mm / dist;
            dy *= cfg.step_mm / dist;
        }
        x += dx + (cfg.noise_mm > 0.0 ? rng.normal(0.0, cfg.noise_mm) : 0.0);
        y += dy + (cfg.noise_mm > 0.0 ? rng.normal(0.0, cfg.noise_mm) : 0.0);
        x = std::clamp(x, cfg.arena.x_min, cfg.arena.x_max);
        y = std::clamp(y, cfg.arena.y_min, cfg.arena.y_max);
    }
    return traj;
}

// First ceil(fraction * len) points, label preserved.
inline Trajectory truncate(const Trajectory& traj, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw input_error("truncate: fraction must be in (0,1]");
    const auto keep = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(traj.points.size())));
    Trajectory out;
    out.label = traj.label;
    out.points.assign(traj.points.begin(),
                      traj.points.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
}

inline Instance featurize(const Trajectory& traj, const ArenaBounds& arena = {}) {
    if (traj.points.empty()) throw input_error("featurize: empty trajectory");
    Instance inst;
    inst.features.reserve(kInstanceLength);
    for (int i = 0; i < kSequenceLength; ++i) {
        // shorter trajectories repeat their final point
        const auto& p =
            traj.points[std::min(static_cast<std::size_t>(i), traj.points.size() - 1)];
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw input_error("featurize: non-finite coordinate");
        const double fx = (p.x - arena.x_min) / (arena.x_max - arena.x_min);
        const double fy = (p.y - arena.y_min) / (arena.y_max - arena.y_min);
        inst.features.push_back(std::clamp(fx, 0.0, 1.0));
        inst.features.push_back(std::clamp(fy, 0.0, 1.0));
    }
    return inst;
}

// Stratified split preserving the class ratio within one instance per class.
inline std::pair<Dataset, Dataset> split(const Dataset& ds, double train_ratio, Rng& rng) {
    if (ds.empty()) throw input_error("split: empty dataset");
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw input_error("split: train_ratio must be in (0,1)");

    Dataset train, test;
    for (const Intention label : {Intention::interested, Intention::not_interested}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ds.items.size(); ++i)
            if (ds.items[i].second == label) idx.push_back(i);
        if (idx.empty()) continue;
        rng.shuffle(idx);
        const auto n_train = static_cast<std::size_t>(
            std::llround(train_ratio * static_cast<double>(idx.size())));
        for (std::size_t j = 0; j < idx.size(); ++j)
            (j < n_train ? train : test).items.push_back(ds.items[idx[j]]);
    }
    return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// Dataset file: one record per line, `label,f1,...,f60` with label 1 for
// interested. Load(save(ds)) reproduces ds exactly.
// ---------------------------------------------------------------------------

inline void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    char buf[64];
    for (const auto& [inst, label] : ds.items) {
        out << (label == Intention::interested ? '1' : '0');
        for (const double f : inst.features) {
            std::snprintf(buf, sizeof buf, ",%.17g", f);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw input_error("write to '" + path + "' failed");
}

inline Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    Dataset ds;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (cells.size() != kInstanceLength + 1)
            throw parse_error("expected 1 label and " + std::to_string(kInstanceLength) +
                                  " features, got " + std::to_string(cells.size() - 1) +
                                  " features",
                              line_no);
        if (cells[0] != "0" && cells[0] != "1")
            throw parse_error("label must be 0 or 1, got '" + cells[0] + "'", line_no);
        Instance inst;
        inst.features.reserve(kInstanceLength);
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cells[i], &used);
                if (used != cells[i].size() || !std::isfinite(v))
                    throw std::invalid_argument("trailing");
                inst.features.push_back(v);
            } catch (const std::exception&) {
                throw parse_error("malformed feature value '" + cells[i] + "'", line_no);
            }
        }
        ds.items.emplace_back(std::move(inst), cells[0] == "1" ? Intention::interested
                                                               : Intention::not_interested);
    }
    return ds;
}

// ---------------------------------------------------------------------------
// World sampling from a ground-truth model (a knowledge base over the four
// domain variables; a high-accuracy KB file doubles as the ground truth).
// ---------------------------------------------------------------------------

class GroundTruthModel {
public:
    static GroundTruthModel from_kb(KnowledgeBase kb) {
        GroundTruthModel gt;
        gt.identity_ = require_var(kb, kIdentityVar, kIdentityNames);
        gt.time_ = require_var(kb, kTimeVar, kTimeNames);
        gt.location_ = require_var(kb, kLocationVar, kLocationNames);
        gt.intention_ = require_var(kb, kIntentionVar, kIntentionNames);
        gt.kb_ = std::move(kb);
        return gt;
    }

    const KnowledgeBase& kb() const { return kb_; }

    WorldState sample(Rng& rng) const {
        const auto assign = sample_assignment(kb_, rng);
        WorldState w;
        w.identity = static_cast<Identity>(assign[static_cast<std::size_t>(identity_)]);
        w.time = static_cast<TimeOfDay>(assign[static_cast<std::size_t>(time_)]);
        w.location = static_cast<Location>(assign[static_cast<std::size_t>(location_)]);
        w.intention = static_cast<Intention>(assign[static_cast<std::size_t>(intention_)]);
        return w;
    }

private:
    template <std::size_t N>
    static int require_var(const KnowledgeBase& kb, const char* name,
                           const std::array<std::string_view, N>& range) {
        const int v = kb.var_index(name);
        if (v < 0)
            throw config_error("ground truth: variable '" + std::string(name) +
                               "' missing");
        const auto& r = kb.variables[static_cast<std::size_t>(v)].range;
        if (r.size() != N)
            throw config_error("ground truth: '" + std::string(name) + "' has wrong range");
        for (std::size_t i = 0; i < N; ++i)
            if (r[i] != range[i])
                throw config_error("ground truth: '" + std::string(name) +
                                   "' range must list " + std::string(range[i]) +
                                   " at position " + std::to_string(i));
        return v;
    }

    KnowledgeBase kb_;
    int identity_ = -1, time_ = -1, location_ = -1, intention_ = -1;
};

inline WorldState sample_world(const GroundTruthModel& gt, Rng& rng) {
    return gt.sample(rng);
}

// Labels drawn Bernoulli(positive_rate), then a trajectory per label.
inline Dataset generate_dataset(std::size_t count, const TrajectoryGenConfig& cfg,
                                Rng& rng) {
    cfg.validate();
    Dataset ds;
    ds.items.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Intention label = rng.bernoulli(cfg.positive_rate)
                                    ? Intention::interested
                                    : Intention::not_interested;
        const auto traj = synthesize_trajectory(label, rng, cfg);
        ds.items.emplace_back(featurize(traj, cfg.arena), label);
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Generator config file: `key = value` lines, `#` comments. Keys:
// arena_bounds (four numbers), overlap, positive_rate, seed, and optionally
// robot, approach_radius, step_mm, noise_mm, points (two numbers).
// ---------------------------------------------------------------------------

inline TrajectoryGenConfig load_gen_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    TrajectoryGenConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        std::string eq;
        if (!(ss >> eq) || eq != "=") throw parse_error("expected '=' after key", line_no);
        auto num = [&](double& slot) {
            if (!(ss >> slot)) throw parse_error("expected a number", line_no);
        };
        if (key == "arena_bounds") {
            num(cfg.arena.x_min);
            num(cfg.arena.x_max);
            num(cfg.arena.y_min);
            num(cfg.arena.y_max);
        } else if (key == "overlap") {
            num(cfg.overlap);
        } else if (key == "positive_rate") {
            num(cfg.positive_rate);
        } else if (key == "seed") {
            double s;
            num(s);
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "robot") {
            num(cfg.robot_x);
            num(cfg.robot_y);
        } else if (key == "approach_radius") {
            num(cfg.approach_radius);
        } else if (key == "step_mm") {
            num(cfg.step_mm);
        } else if (key == "noise_mm") {
            num(cfg.noise_mm);
        } else if (key == "points") {
            double lo, hi;
            num(lo);
            num(hi);
            cfg.min_points = static_cast<int>(lo);
            cfg.max_points = static_cast<int>(hi);
        } else {
            throw parse_error("unknown key '" + key + "'", line_no);
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace lcorpp
