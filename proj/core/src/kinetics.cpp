#include "photostat/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"
#include "photostat/spectral.hpp"

namespace photostat {

CavityState CavityState::make(std::size_t modes, double x, double atoms) {
    if (modes == 0 || !(x > 0.0) || !(atoms >= 0.0)) {
        throw DomainError("cavity needs at least one mode, x > 0 and atoms >= 0");
    }
    CavityState s;
    s.occupations.assign(modes, 0);
    s.ground = atoms;
    s.excited = atoms * std::exp(-x);
    s.x = x;
    return s;
}

std::uint64_t CavityState::total_quanta() const {
    return std::accumulate(occupations.begin(), occupations.end(), std::uint64_t{0});
}

RateTable rate_table(const CavityState& state, double A) {
    const std::size_t M = state.occupations.size();
    RateTable r;
    r.spontaneous.resize(M);
    r.stimulated.resize(M);
    r.absorption.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        const auto n = static_cast<double>(state.occupations[k]);
        r.spontaneous[k] = state.excited * A;
        r.stimulated[k] = state.excited * A * n;
        r.absorption[k] = state.ground * A * n;
        r.total += r.spontaneous[k] + r.stimulated[k] + r.absorption[k];
    }
    return r;
}

std::optional<StepOutcome> step_gillespie(CavityState& state, const RateTable& rates, Rng& rng) {
    if (!(rates.total > 0.0)) {
        return std::nullopt;
    }
    StepOutcome out;
    out.wait = -std::log(rng.uniform_pos()) / rates.total;
    double target = rng.uniform() * rates.total;
    const std::size_t M = state.occupations.size();
    std::size_t k = 0;
    Channel ch = Channel::absorption;
    bool picked = false;
    for (; k < M && !picked; ++k) {
        const double parts[3] = {rates.spontaneous[k], rates.stimulated[k], rates.absorption[k]};
        for (int c = 0; c < 3; ++c) {
            if (target < parts[c]) {
                ch = static_cast<Channel>(c);
                picked = true;
                break;
            }
            target -= parts[c];
        }
    }
    if (!picked) {
        // Rounding left target past the end; take the last positive channel.
        for (k = M; k-- > 0;) {
            if (rates.absorption[k] > 0.0) {
                ch = Channel::absorption;
                break;
            }
            if (rates.stimulated[k] > 0.0) {
                ch = Channel::stimulated;
                break;
            }
            if (rates.spontaneous[k] > 0.0) {
                ch = Channel::spontaneous;
                break;
            }
        }
        ++k;
    }
    out.mode = k - 1;
    out.channel = ch;
    if (ch == Channel::absorption) {
        --state.occupations[out.mode];
        --state.bath_ledger;
    } else {
        ++state.occupations[out.mode];
        ++state.bath_ledger;
    }
    return out;
}

namespace {

std::size_t bin(std::uint64_t n, std::size_t levels) {
    return static_cast<std::size_t>(std::min<std::uint64_t>(n, levels));
}

}  // namespace

RunRecord equilibration_run(const KineticsConfig& cfg, Rng& rng) {
    if (!(cfg.A > 0.0) || cfg.levels < 2) {
        throw ConfigError("kinetics needs A > 0 and at least two histogram levels");
    }
    if (!(cfg.t_max > 0.0) && cfg.max_events == 0) {
        throw ConfigError("kinetics needs a time limit or an event limit");
    }
    CavityState state = CavityState::make(cfg.modes, cfg.x, cfg.atoms);
    if (!cfg.initial.empty()) {
        if (cfg.initial.size() != cfg.modes) {
            throw ConfigError("initial occupations must list every mode");
        }
        state.occupations = cfg.initial;
    }
    const std::size_t M = cfg.modes;
    const std::size_t L = cfg.levels;
    const double relax_rate = cfg.A * (state.ground - state.excited);
    const double relax_time = relax_rate > 0.0 ? 1.0 / relax_rate : 1.0;
    const double start_max = static_cast<double>(
        *std::max_element(state.occupations.begin(), state.occupations.end()));
    const double burn_in =
        cfg.burn_in >= 0.0 ? cfg.burn_in : (20.0 + std::log1p(start_max)) * relax_time;
    const double interval = cfg.snapshot_interval > 0.0 ? cfg.snapshot_interval : 5.0 * relax_time;

    RunRecord rec;
    rec.occupancy_time.assign(M, std::vector<double>(L + 1, 0.0));
    rec.snapshot_histogram.assign(M, std::vector<double>(L + 1, 0.0));
    if (M >= 2) {
        rec.joint_snapshots.assign(L + 1, std::vector<double>(L + 1, 0.0));
    }
    rec.level_time.assign(L + 1, 0.0);
    rec.up_count.assign(L + 1, 0.0);
    rec.down_count.assign(L + 1, 0.0);
    const std::uint64_t conserved_start = state.total_quanta();

    MomentAccumulator pooled;
    double t = 0.0;
    double next_snapshot = burn_in + interval;
    std::vector<double> checkpoints = cfg.checkpoints;
    std::sort(checkpoints.begin(), checkpoints.end());
    std::size_t next_checkpoint = 0;
    const double b = std::exp(-cfg.x);
    std::vector<double> bose(L + 1);
    for (std::size_t n = 0; n < L; ++n) {
        bose[n] = BoseGeometric::from_ratio(b).pmf(n);
    }
    bose[L] = BoseGeometric::from_ratio(b).tail(L);

    auto checkpoint_tv = [&] {
        std::vector<double> law(L + 1, 0.0);
        double total = 0.0;
        for (std::size_t n = 0; n <= L; ++n) {
            total += rec.level_time[n];
        }
        for (std::size_t n = 0; n <= L && total > 0.0; ++n) {
            law[n] = rec.level_time[n] / total;
        }
        rec.checkpoint_tv.push_back(total_variation(law, bose));
    };
    // Progress fraction uses time when limited by time, else events.
    auto progress = [&](double time, std::uint64_t events) {
        if (cfg.t_max > 0.0) {
            return time / cfg.t_max;
        }
        return static_cast<double>(events) / static_cast<double>(cfg.max_events);
    };

    // Credits the interval (t, t_new) to `held`, the state occupied throughout it.
    auto advance = [&](const CavityState& held, double t_new) {
        const double dt = t_new - t;
        for (std::size_t k = 0; k < M; ++k) {
            const std::size_t lv = bin(held.occupations[k], L);
            rec.occupancy_time[k][lv] += dt;
            rec.level_time[lv] += dt;
        }
        while (next_snapshot < t_new) {
            for (std::size_t k = 0; k < M; ++k) {
                rec.snapshot_histogram[k][bin(held.occupations[k], L)] += 1.0;
                pooled.push(static_cast<double>(held.occupations[k]));
            }
            if (M >= 2) {
                rec.joint_snapshots[bin(held.occupations[0], L)][bin(held.occupations[1], L)] +=
                    1.0;
            }
            next_snapshot += interval;
        }
        t = t_new;
    };

    bool atoms_present = true;
    while (true) {
        if (cfg.max_events > 0 && rec.events >= cfg.max_events) {
            break;
        }
        const RateTable rates = rate_table(state, cfg.A);
        const CavityState before = state;
        const auto step = step_gillespie(state, rates, rng);
        double t_new = step ? t + step->wait : INFINITY;
        if (atoms_present && cfg.remove_atoms_at && t_new > *cfg.remove_atoms_at) {
            // Memoryless rates: the pending event is discarded at the removal time.
            state = before;
            advance(state, *cfg.remove_atoms_at);
            state.ground = 0.0;
            state.excited = 0.0;
            atoms_present = false;
            continue;
        }
        if (!step) {
            rec.frozen = true;
            rec.frozen_at = t;
            if (cfg.t_max > 0.0) {
                advance(state, cfg.t_max);
            }
            break;
        }
        const bool stop = cfg.t_max > 0.0 && t_new > cfg.t_max;
        if (stop) {
            state = before;
            t_new = cfg.t_max;
        }
        while (next_checkpoint < checkpoints.size()
               && progress(t_new, rec.events) >= checkpoints[next_checkpoint]
               && checkpoints[next_checkpoint] < 1.0) {
            checkpoint_tv();
            ++next_checkpoint;
        }
        advance(before, t_new);
        if (stop) {
            break;
        }
        ++rec.events;
        const auto lv_from = bin(before.occupations[step->mode], L);
        switch (step->channel) {
        case Channel::spontaneous:
            ++rec.spontaneous;
            rec.up_count[lv_from] += 1.0;
            break;
        case Channel::stimulated:
            ++rec.stimulated;
            rec.up_count[lv_from] += 1.0;
            break;
        case Channel::absorption:
            ++rec.absorbed;
            rec.down_count[lv_from] += 1.0;
            break;
        }
        if (cfg.keep_event_log) {
            rec.log.push_back({t, static_cast<std::uint32_t>(step->mode), step->channel});
        }
        const auto moved = static_cast<std::int64_t>(state.total_quanta())
                           - static_cast<std::int64_t>(before.total_quanta());
        if (std::abs(moved) != 1
            || static_cast<std::int64_t>(state.total_quanta()) - state.bath_ledger
                   != static_cast<std::int64_t>(conserved_start)) {
            rec.conservation_ok = false;
        }
    }
    while (next_checkpoint < checkpoints.size()) {
        checkpoint_tv();
        ++next_checkpoint;
    }
    rec.t_end = t;
    rec.final_state = state;
    rec.occupation = pooled.stats();
    return rec;
}

std::vector<double> detailed_balance_ratios(const RunRecord& rec, std::size_t max_level) {
    const std::size_t top = std::min(max_level, rec.level_time.size() - 2);
    std::vector<double> ratios;
    for (std::size_t n = 0; n <= top; ++n) {
        const double up = rec.up_count[n] / rec.level_time[n];
        const double down = rec.down_count[n + 1] / rec.level_time[n + 1];
        ratios.push_back(rec.level_time[n] > 0.0 && down > 0.0 ? up / down : NAN);
    }
    return ratios;
}

ChannelSplit channel_split(const RunRecord& rec, double x, std::size_t batches) {
    if (rec.log.empty()) {
        throw ConfigError("channel split needs the event log");
    }
    if (batches < 2) {
        throw ConfigError("channel split needs at least two batches");
    }
    ChannelSplit s;
    s.predicted = mean_occupation(x);
    std::vector<double> stim(batches, 0.0), spont(batches, 0.0);
    const double span = rec.t_end > 0.0 ? rec.t_end : rec.log.back().time;
    for (const auto& e : rec.log) {
        const auto idx = std::min(
            batches - 1, static_cast<std::size_t>(e.time / span * static_cast<double>(batches)));
        if (e.channel == Channel::spontaneous) {
            ++s.spontaneous;
            spont[idx] += 1.0;
        } else if (e.channel == Channel::stimulated) {
            ++s.stimulated;
            stim[idx] += 1.0;
        }
    }
    const auto est = batch_ratio(stim, spont);
    s.ratio = est.ratio;
    s.se = est.se;
    return s;
}

}  // namespace photostat
