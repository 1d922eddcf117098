#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json_config.hpp"
#include "photostat/errors.hpp"

namespace photostat::cli {
namespace {

struct Common {
    std::uint64_t seed = default_seed;
    std::size_t samples = 0;  ///< zero keeps the subcommand default
    std::string out;
    std::string format = "json";
    std::string config;
};

CLI::App* add_subcommand(CLI::App& app, const std::string& name, const std::string& help,
                         Common& common, bool with_samples = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    if (with_samples) {
        sub->add_option("--samples", common.samples, "sample count; 0 keeps the default");
    }
    sub->add_option("--out", common.out, "output file; standard output when omitted");
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--config", common.config, "JSON file of option values; flags override it");
    return sub;
}

void emit(const Report& r, const Common& common, std::ostream& out) {
    const Table& table = r.table.columns.empty() ? checks_table(r.checks) : r.table;
    auto write = [&](std::ostream& os) {
        if (common.format == "csv") {
            write_csv(os, table);
        } else {
            os << r.data.dump(2) << '\n';
        }
    };
    if (common.out.empty()) {
        write(out);
        return;
    }
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file " + common.out);
    }
    write(file);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Black-body radiation statistics laboratory", "photostat"};
    app.require_subcommand(1);
    Common common;

    SpectrumParams spectrum;
    auto* sp = add_subcommand(app, "spectrum", "Planck law, its limits, displacement law and T^4 law",
                              common, false);
    sp->add_option("--T", spectrum.T, "temperatures in K")->capture_default_str();
    sp->add_option("--nu-min", spectrum.nu_min, "lowest frequency in Hz")->capture_default_str();
    sp->add_option("--nu-max", spectrum.nu_max, "highest frequency in Hz")->capture_default_str();
    sp->add_option("--points", spectrum.points, "log-spaced frequencies per temperature")
        ->capture_default_str();

    FluctuationParams fluct;
    auto* fl = add_subcommand(app, "fluctuation",
                              "Band energy variance by four routes, mirror and emission checks",
                              common, false);
    fl->add_option("--x", fluct.x, "reduced frequencies h nu / kT")->capture_default_str();
    fl->add_option("--n-bar", fluct.n_bar, "mean occupations; replace --x");
    fl->add_option("--modes", fluct.modes, "modes in the band")->capture_default_str();
    fl->add_option("--T", fluct.T, "temperature in K")->capture_default_str();

    DecomposeParams dec;
    auto* de = add_subcommand(app, "decompose",
                              "Poisson-multiplet and binary-photon decompositions of the Bose law",
                              common);
    de->add_option("--b", dec.b, "ratio e^-x in (0, 1)")->capture_default_str();
    de->add_option("--kind", dec.kind, "decomposition")
        ->check(CLI::IsMember({"binary", "poisson"}))
        ->capture_default_str();
    de->add_option("--tol", dec.tol, "neglected mass per decomposition")->capture_default_str();

    StringParams str;
    auto* st = add_subcommand(app, "string", "Interference fluctuations of a classical string segment",
                              common);
    st->add_option("--Z", str.Z, "modes in the band")->capture_default_str();
    st->add_option("--z", str.z, "modes resolved by the segment")->capture_default_str();
    st->add_option("--law", str.law, "squared-amplitude law")
        ->check(CLI::IsMember({"fixed", "bose", "classical"}))
        ->capture_default_str();
    st->add_option("--n-bar", str.n_bar, "mean quanta per mode for the bose law")
        ->capture_default_str();

    PulseTrainParams pulse;
    auto* pt = add_subcommand(app, "pulse-train",
                              "Fluctuation of a train of finite wave pulses and a random-phase field",
                              common);
    pt->add_option("--R", pulse.R, "observation time over pulse duration")->capture_default_str();
    pt->add_option("--mu", pulse.mu, "mean overlapping pulses per level")->capture_default_str();
    pt->add_option("--baseline-realizations", pulse.baseline_realizations,
                   "random-phase realizations per level")
        ->capture_default_str();
    pt->add_option("--baseline-length", pulse.baseline_length,
                   "random-phase interval in pulse durations")
        ->capture_default_str();
    pt->add_option("--samples-per-window", pulse.samples_per_window, "grid points per window")
        ->capture_default_str();

    BhjParams bhj;
    auto* bh = add_subcommand(app, "bhj", "Energy fluctuation of a quantized string segment", common);
    bh->add_option("--modes", bhj.modes, "mode indices")->capture_default_str();
    bh->add_option("--cutoff", bhj.cutoff, "occupation cutoff per mode")->capture_default_str();
    bh->add_option("--kT", bhj.kT, "temperature in units of hbar c pi / L")->capture_default_str();
    bh->add_option("--l", bhj.l, "segment length")->capture_default_str();
    bh->add_option("--L", bhj.L, "string length")->capture_default_str();
    bh->add_flag("--resonant-only,!--full-kernel", bhj.resonant_only,
                 "drop the sum-frequency kernel parts")
        ->capture_default_str();
    bh->add_option("--leakage-bound", bhj.leakage_bound, "allowed thermal weight at the cutoff")
        ->capture_default_str();

    CombinatoricsParams comb;
    auto* co = add_subcommand(app, "combinatorics", "Exact counting identities of quanta in receptacles",
                              common, false);
    co->add_option("--N-max", comb.N_max, "largest receptacle count")->capture_default_str();
    co->add_option("--n-max", comb.n_max, "largest quantum count")->capture_default_str();
    co->add_option("--stirling-N", comb.stirling_N, "size of the large-number check")
        ->capture_default_str();

    KineticsParams kin;
    auto* ki = add_subcommand(app, "kinetics", "Cavity modes equilibrating through two-level atoms",
                              common);
    ki->add_option("--modes", kin.modes, "cavity modes")->capture_default_str();
    ki->add_option("--x", kin.x, "h nu / kT of the bath")->capture_default_str();
    ki->add_option("--atoms", kin.atoms, "ground-state atoms")->capture_default_str();
    ki->add_option("--t-max", kin.t_max, "time limit; 0 for none")->capture_default_str();
    ki->add_option("--initial", kin.initial, "initial occupation per mode");
    ki->add_flag("--log,!--no-log", kin.log, "keep the event log for the channel split")
        ->capture_default_str();

    auto* va = add_subcommand(app, "verify-all", "Run every check at its default configuration",
                              common, false);

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (!common.config.empty()) {
            // Reparse with the file's values appended for options the command line left unset.
            std::vector<std::string> args(argv + 1, argv + argc);
            const auto extra = config_arguments(common.config, *sub);
            args.insert(args.end(), extra.begin(), extra.end());
            std::reverse(args.begin(), args.end());
            app.clear();
            app.parse(args);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    Report report;
    try {
        if (chosen == sp) {
            report = run_spectrum(spectrum);
        } else if (chosen == fl) {
            report = run_fluctuation(fluct);
        } else if (chosen == de) {
            dec.seed = common.seed;
            if (common.samples > 0) {
                dec.samples = common.samples;
            }
            report = run_decompose(dec);
        } else if (chosen == st) {
            str.seed = common.seed;
            if (common.samples > 0) {
                str.samples = common.samples;
            }
            report = run_string(str);
        } else if (chosen == pt) {
            pulse.seed = common.seed;
            if (common.samples > 0) {
                pulse.realizations = common.samples;
            }
            report = run_pulse_train(pulse);
        } else if (chosen == bh) {
            bhj.seed = common.seed;
            if (common.samples > 0) {
                bhj.samples = common.samples;
            }
            report = run_bhj(bhj);
        } else if (chosen == co) {
            report = run_combinatorics(comb);
        } else if (chosen == ki) {
            kin.seed = common.seed;
            if (common.samples > 0) {
                kin.events = common.samples;
            }
            report = run_kinetics(kin);
        } else if (chosen == va) {
            report = run_verify_all(common.seed);
        }
        emit(report, common, out);
    } catch (const LeakageError& e) {
        err << name << ": " << e.what() << '\n';
        return usage_error;
    } catch (const std::logic_error& e) {
        err << name << ": invalid configuration: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << name << ": evaluation failed: " << e.what() << '\n';
        return assertion_failed;
    }

    const std::size_t failed = report.failures();
    for (const auto& c : report.checks) {
        if (!c.pass) {
            err << "FAILED " << c.name << ": value " << num(c.value) << ", " << c.relation << ' '
                << num(c.target);
            if (c.relation == "within") {
                err << " +/- " << num(c.tolerance);
            }
            err << '\n';
        }
    }
    err << name << ": " << report.checks.size() - failed << " passed, " << failed << " failed\n";
    return failed == 0 ? ok : assertion_failed;
}

}  // namespace photostat::cli
