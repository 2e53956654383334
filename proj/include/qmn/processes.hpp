#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qmn/binomial.hpp"
#include "qmn/params.hpp"

namespace qmn {

/// Draws jumps j ~ phi(.|m) for arbitrary headroom m, caching one
/// inverse-CDF table per distinct m. Unbounded headroom uses the
/// infinite-m table truncated at tail_epsilon.
class JumpSampler {
public:
    explicit JumpSampler(DeformParams<double> params, double tail_epsilon = 1e-12)
        : params_(std::move(params)), tail_epsilon_(tail_epsilon) {}

    long draw(SampleStream& stream, long headroom) {
        if (headroom == 0) return 0;
        auto it = tables_.find(headroom);
        if (it == tables_.end()) {
            it = tables_.emplace(headroom, CdfTable(pmf_table(params_, headroom))).first;
        }
        return it->second.sample(stream);
    }

    long draw_unbounded(SampleStream& stream) {
        if (!unbounded_) {
            unbounded_.emplace(pmf_table_infinite(params_, tail_epsilon_));
        }
        return unbounded_->sample(stream);
    }

    const DeformParams<double>& params() const { return params_; }

private:
    DeformParams<double> params_;
    double tail_epsilon_;
    std::map<long, CdfTable> tables_;
    std::optional<CdfTable> unbounded_;
};

/// Ordered particles on the infinite line. With direction +1 positions are
/// strictly decreasing and particle 0 is the rightmost leader; with
/// direction -1 the configuration is mirrored (strictly increasing,
/// leader leftmost).
struct ParticleConfig {
    std::vector<long long> positions;
    long time = 0;
};

inline void validate_particles(const ParticleConfig& config, int direction) {
    if (config.positions.empty()) {
        throw std::invalid_argument("ParticleConfig: needs at least one particle");
    }
    for (std::size_t i = 1; i < config.positions.size(); ++i) {
        const bool ordered = direction > 0
                                 ? config.positions[i] < config.positions[i - 1]
                                 : config.positions[i] > config.positions[i - 1];
        if (!ordered) {
            throw std::invalid_argument(
                "ParticleConfig: positions must be strictly ordered in the jump direction");
        }
    }
}

/// One parallel update: every particle draws its jump against the
/// pre-step gaps, the leader against unbounded headroom, then all move
/// simultaneously. Draws consume the stream in ascending particle index.
inline ParticleConfig tasep_step(const ParticleConfig& config, JumpSampler& sampler,
                                 SampleStream& stream, int direction = +1) {
    ParticleConfig next = config;
    const std::size_t n = config.positions.size();
    for (std::size_t i = 0; i < n; ++i) {
        long jump;
        if (i == 0) {
            jump = sampler.draw_unbounded(stream);
        } else {
            const long long gap = direction > 0
                                      ? config.positions[i - 1] - config.positions[i] - 1
                                      : config.positions[i] - config.positions[i - 1] - 1;
            jump = sampler.draw(stream, static_cast<long>(gap));
        }
        next.positions[i] += direction > 0 ? jump : -jump;
    }
    next.time = config.time + 1;
    // The support bound j <= gap makes the parallel update collision-free.
    validate_particles(next, direction);
    return next;
}

/// Site occupancies on a ring of size L; total particle count is conserved.
struct OccupationConfig {
    long ring_size = 0;
    std::vector<long> counts;
    long time = 0;
};

inline void validate_occupation(const OccupationConfig& config) {
    if (config.ring_size < 1 ||
        config.counts.size() != static_cast<std::size_t>(config.ring_size)) {
        throw std::invalid_argument("OccupationConfig: counts must have ring_size entries");
    }
    for (long c : config.counts) {
        if (c < 0) throw std::invalid_argument("OccupationConfig: negative occupancy");
    }
}

/// One parallel zero-range update: every site k with m_k particles draws
/// j_k ~ phi(.|m_k) against the pre-step counts and ships j_k particles one
/// site over (default: to site k-1). Draws consume the stream in ascending
/// site index. Returns the new configuration and the number moved.
inline OccupationConfig boson_step(const OccupationConfig& config, JumpSampler& sampler,
                                   SampleStream& stream, long* moved_out = nullptr,
                                   int direction = -1) {
    const long L = config.ring_size;
    OccupationConfig next = config;
    long moved = 0;
    for (long k = 0; k < L; ++k) {
        const long jump = sampler.draw(stream, config.counts[static_cast<std::size_t>(k)]);
        if (jump == 0) continue;
        const long target = ((k + direction) % L + L) % L;
        next.counts[static_cast<std::size_t>(k)] -= jump;
        next.counts[static_cast<std::size_t>(target)] += jump;
        moved += jump;
    }
    next.time = config.time + 1;
    const auto total = [](const std::vector<long>& v) {
        return std::accumulate(v.begin(), v.end(), 0LL);
    };
    if (total(next.counts) != total(config.counts)) {
        throw std::logic_error("boson_step: particle count not conserved");
    }
    if (moved_out) *moved_out = moved;
    return next;
}

/// One observable snapshot. For TASEP the histogram counts jump sizes of
/// the step just taken; for the Boson process it is the occupancy
/// histogram (entry c = number of sites holding c particles).
struct StepRecord {
    long replica = 0;
    long time = 0;
    long long current = 0;          // total displacement during this step
    double mean_displacement = 0.0; // per particle, cumulative since start
    std::vector<long> histogram;
};

struct EnsembleSummary {
    std::vector<StepRecord> records;
};

/// Independent replicas with streams seeded base_seed + r. Deterministic
/// given base_seed.
inline EnsembleSummary run_tasep_ensemble(const ParticleConfig& init,
                                          const DeformParams<double>& params,
                                          long steps, long replicas,
                                          std::uint64_t base_seed,
                                          int direction = +1,
                                          double tail_epsilon = 1e-12) {
    if (replicas < 1) throw std::invalid_argument("run_tasep_ensemble: replicas must be >= 1");
    validate_particles(init, direction);
    EnsembleSummary summary;
    const double n = static_cast<double>(init.positions.size());
    for (long r = 0; r < replicas; ++r) {
        JumpSampler sampler(params, tail_epsilon);
        SampleStream stream(base_seed + static_cast<std::uint64_t>(r));
        ParticleConfig config = init;
        summary.records.push_back({r, 0, 0, 0.0, {}});
        for (long step = 0; step < steps; ++step) {
            ParticleConfig next = tasep_step(config, sampler, stream, direction);
            StepRecord rec;
            rec.replica = r;
            rec.time = next.time;
            long long max_jump = 0;
            std::vector<long long> jumps(config.positions.size());
            for (std::size_t i = 0; i < jumps.size(); ++i) {
                jumps[i] = direction > 0 ? next.positions[i] - config.positions[i]
                                         : config.positions[i] - next.positions[i];
                rec.current += jumps[i];
                max_jump = std::max(max_jump, jumps[i]);
            }
            rec.histogram.assign(static_cast<std::size_t>(max_jump) + 1, 0);
            for (long long j : jumps) ++rec.histogram[static_cast<std::size_t>(j)];
            double total_disp = 0.0;
            for (std::size_t i = 0; i < jumps.size(); ++i) {
                total_disp += static_cast<double>(
                    direction > 0 ? next.positions[i] - init.positions[i]
                                  : init.positions[i] - next.positions[i]);
            }
            rec.mean_displacement = total_disp / n;
            summary.records.push_back(std::move(rec));
            config = std::move(next);
        }
    }
    return summary;
}

inline EnsembleSummary run_boson_ensemble(const OccupationConfig& init,
                                          const DeformParams<double>& params,
                                          long steps, long replicas,
                                          std::uint64_t base_seed,
                                          int direction = -1,
                                          double tail_epsilon = 1e-12) {
    if (replicas < 1) throw std::invalid_argument("run_boson_ensemble: replicas must be >= 1");
    validate_occupation(init);
    EnsembleSummary summary;
    const double total_particles = static_cast<double>(
        std::accumulate(init.counts.begin(), init.counts.end(), 0LL));
    const auto occupancy_histogram = [](const OccupationConfig& c) {
        long max_count = 0;
        for (long v : c.counts) max_count = std::max(max_count, v);
        std::vector<long> hist(static_cast<std::size_t>(max_count) + 1, 0);
        for (long v : c.counts) ++hist[static_cast<std::size_t>(v)];
        return hist;
    };
    for (long r = 0; r < replicas; ++r) {
        JumpSampler sampler(params, tail_epsilon);
        SampleStream stream(base_seed + static_cast<std::uint64_t>(r));
        OccupationConfig config = init;
        summary.records.push_back({r, 0, 0, 0.0, occupancy_histogram(init)});
        long long cumulative_moved = 0;
        for (long step = 0; step < steps; ++step) {
            long moved = 0;
            config = boson_step(config, sampler, stream, &moved, direction);
            cumulative_moved += moved;
            StepRecord rec;
            rec.replica = r;
            rec.time = config.time;
            rec.current = moved;
            rec.mean_displacement = total_particles > 0
                                        ? static_cast<double>(cumulative_moved) / total_particles
                                        : 0.0;
            rec.histogram = occupancy_histogram(config);
            summary.records.push_back(std::move(rec));
        }
    }
    return summary;
}

}  // namespace qmn
