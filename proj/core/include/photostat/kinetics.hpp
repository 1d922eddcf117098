#pragma once

/**
 * \file kinetics.hpp
 * Cavity modes equilibrating through a bath of two-level atoms.
 *
 * The atoms are held at the Boltzmann ratio N2/N1 = e^{-x}. Mode k gains a
 * quantum at rate N2 A (n_k + 1), split into a spontaneous part N2 A and a
 * stimulated part N2 A n_k, and loses one at rate N1 A n_k. With
 * u = Z h nu n the rate u-proportional terms become the n-proportional ones.
 * Modes never exchange quanta directly, so the stationary law is a product
 * of geometric laws with ratio e^{-x}.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "photostat/random.hpp"
#include "photostat/stats.hpp"

namespace photostat {

struct CavityState {
    std::vector<std::uint64_t> occupations;
    double ground = 0.0;   ///< N1
    double excited = 0.0;  ///< N2 = N1 e^{-x}
    double x = 0.0;
    /// Quanta released by the bath minus quanta absorbed; sum(occupations) - ledger is constant.
    std::int64_t bath_ledger = 0;

    /// `atoms` ground-state atoms with the matching excited population.
    static CavityState make(std::size_t modes, double x, double atoms);
    std::uint64_t total_quanta() const;
};

enum class Channel { spontaneous, stimulated, absorption };

struct RateTable {
    std::vector<double> spontaneous;  ///< N2 A
    std::vector<double> stimulated;   ///< N2 A n
    std::vector<double> absorption;   ///< N1 A n
    double total = 0.0;
};
RateTable rate_table(const CavityState& state, double A = 1.0);

struct StepOutcome {
    double wait = 0.0;
    std::size_t mode = 0;
    Channel channel = Channel::spontaneous;
};

/// One exact stochastic step. Returns nullopt, leaving the state unchanged, when every rate is zero.
std::optional<StepOutcome> step_gillespie(CavityState& state, const RateTable& rates, Rng& rng);

struct EventRecord {
    double time = 0.0;
    std::uint32_t mode = 0;
    Channel channel = Channel::spontaneous;
};

struct KineticsConfig {
    std::size_t modes = 1;
    double x = 0.6931471805599453;
    double atoms = 100.0;  ///< N1
    double A = 1.0;
    std::vector<std::uint64_t> initial;  ///< empty means all modes empty
    double t_max = 0.0;                  ///< zero means unlimited
    std::uint64_t max_events = 1'000'000;
    double burn_in = -1.0;               ///< negative means automatic
    double snapshot_interval = -1.0;     ///< negative means automatic
    std::size_t levels = 64;             ///< histogram bins 0..levels-1 plus overflow
    bool keep_event_log = false;
    std::optional<double> remove_atoms_at;
    std::vector<double> checkpoints = {0.01, 0.1, 1.0};  ///< fractions of the run for TV monitoring
};

struct RunRecord {
    CavityState final_state;
    double t_end = 0.0;
    std::uint64_t events = 0;
    bool frozen = false;
    std::optional<double> frozen_at;
    bool conservation_ok = true;

    std::vector<std::vector<double>> occupancy_time;      ///< per mode, time in each level
    std::vector<std::vector<double>> snapshot_histogram;  ///< per mode, snapshot counts
    std::vector<std::vector<double>> joint_snapshots;     ///< modes 0 and 1, levels x levels
    std::vector<double> level_time;  ///< pooled over modes
    std::vector<double> up_count;    ///< pooled n -> n+1 transitions from level n
    std::vector<double> down_count;  ///< pooled n -> n-1 transitions from level n

    std::uint64_t spontaneous = 0;
    std::uint64_t stimulated = 0;
    std::uint64_t absorbed = 0;
    std::vector<EventRecord> log;

    EnsembleStats occupation;  ///< pooled snapshot values
    std::vector<double> checkpoint_tv;  ///< TV of the time-weighted law against Bose at each checkpoint
};

/// Runs until t_max or max_events, whichever comes first, or until frozen.
RunRecord equilibration_run(const KineticsConfig& cfg, Rng& rng);

/// Empirical rate ratio (up from n per unit time) / (down from n+1 per unit time); tends to e^{-x}.
std::vector<double> detailed_balance_ratios(const RunRecord& rec, std::size_t max_level);

struct ChannelSplit {
    std::uint64_t spontaneous = 0;
    std::uint64_t stimulated = 0;
    double ratio = 0.0;  ///< stimulated / spontaneous
    double se = 0.0;
    double predicted = 0.0;  ///< 1 / (e^x - 1)
};
/// Requires the event log. Standard error from `batches` equal-time batches.
ChannelSplit channel_split(const RunRecord& rec, double x, std::size_t batches = 50);

}  // namespace photostat
