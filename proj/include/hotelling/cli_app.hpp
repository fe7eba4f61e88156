#pragma once

// The `hotelling` command-line tool.
//
// Subcommands: eval (exact payoffs, optional midpoint-rule cross-check),
// verify (both equilibrium routes plus the necessary conditions), synth
// (canonical or sampled equilibria), dynamics (grid best-response walk),
// and repro (replay of the eight-vendor counterexample showing that the
// classical pairing conditions do not imply equilibrium).
//
// Exit codes: 0 success (verify: equilibrium); 1 verified non-equilibrium;
// 2 internal consistency failure (notably the two verification routes
// disagreeing, which should be impossible); 3 a repro claim failed;
// 64 usage or input errors. Input denominators are capped by the
// HOTELLING_MAX_DENOM environment variable (default 10^9).

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "city.hpp"
#include "dynamics.hpp"
#include "equilibrium.hpp"
#include "payoff.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "synthesis.hpp"

namespace hotelling::cli {

namespace exit_code {
constexpr int ok = 0;
constexpr int not_equilibrium = 1;
constexpr int internal = 2;
constexpr int repro_failed = 3;
constexpr int usage = 64;
} // namespace exit_code

namespace detail {

inline std::int64_t max_denominator() {
    const char* env = std::getenv("HOTELLING_MAX_DENOM");
    if (env == nullptr || *env == '\0')
        return 1'000'000'000;
    std::int64_t v{};
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end || v < 1)
        throw std::invalid_argument("HOTELLING_MAX_DENOM must be a positive integer, got '" +
                                    std::string(env) + "'");
    return v;
}

// Positional location arguments may arrive space- or comma-separated.
inline std::vector<std::string> expand_tokens(const std::vector<std::string>& raw) {
    std::vector<std::string> tokens;
    for (const std::string& arg : raw) {
        std::string cur;
        for (char c : arg) {
            if (c == ',' || c == ' ' || c == '\t') {
                if (!cur.empty()) tokens.push_back(std::exchange(cur, {}));
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) tokens.push_back(std::move(cur));
    }
    return tokens;
}

inline Profile parse_profile(const std::vector<std::string>& raw, std::int64_t max_den) {
    std::vector<std::string> tokens = expand_tokens(raw);
    if (tokens.empty())
        throw std::invalid_argument("no vendor locations given");
    std::vector<Rat> xs;
    xs.reserve(tokens.size());
    for (const std::string& tok : tokens) {
        Rat r = parse_rat(tok);
        if (r.den() > max_den)
            throw std::invalid_argument(
                "location " + tok + " has denominator " + std::to_string(r.den()) +
                " above the cap " + std::to_string(max_den) +
                " (raise HOTELLING_MAX_DENOM to allow it)");
        xs.push_back(r);
    }
    return Profile(std::move(xs)); // checks range and ordering
}

inline std::vector<Profile> collect_profiles(const std::vector<std::string>& locs,
                                             const std::string& file,
                                             std::int64_t max_den) {
    std::vector<Profile> out;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            throw std::invalid_argument("cannot open '" + file + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::vector<std::string> tokens = expand_tokens({line});
            if (tokens.empty() || tokens.front().front() == '#')
                continue;
            try {
                out.push_back(parse_profile(tokens, max_den));
            } catch (const std::exception& e) {
                throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": " +
                                            e.what());
            }
        }
        if (out.empty())
            throw std::invalid_argument("'" + file + "' contains no profiles");
    } else {
        out.push_back(parse_profile(locs, max_den));
    }
    return out;
}

inline std::string join(const std::vector<Rat>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += to_string(xs[i]);
    }
    return s;
}

inline void emit_json(const nlohmann::json& j, bool batch, std::ostream& out) {
    out << (batch ? j.dump() : j.dump(2)) << '\n';
}

} // namespace detail

namespace detail {

struct OracleOutcome {
    std::int64_t cells;
    Rat max_difference;
    Rat bound;
    bool within_bound;
};

inline OracleOutcome run_oracle(const Profile& p, std::int64_t cells) {
    PayoffVector closed = payoff_closed_form(p);
    PayoffVector numeric = payoff_numeric_all(p, cells);
    Rat worst(0);
    for (int k = 1; k <= p.n(); ++k)
        worst = max(worst, abs(closed.value(k) - numeric.value(k)));
    Rat bound(p.n(), cells);
    return {cells, worst, bound, !(bound < worst)};
}

inline int run_eval(const std::vector<Profile>& profiles, std::int64_t oracle_cells,
                    bool json, bool batch, std::ostream& out, std::ostream& err) {
    bool first = true;
    for (const Profile& p : profiles) {
        PayoffVector f = payoff_closed_form(p);
        std::optional<OracleOutcome> oracle;
        if (oracle_cells > 0)
            oracle = run_oracle(p, oracle_cells);

        if (json) {
            nlohmann::json j = report::envelope("eval");
            j["profile"] = p;
            j["payoffs"] = f;
            j["total"] = f.total();
            j["oracle"] = nullptr;
            if (oracle)
                j["oracle"] = {{"cells", oracle->cells},
                               {"max_difference", oracle->max_difference},
                               {"bound", oracle->bound},
                               {"within_bound", oracle->within_bound}};
            emit_json(j, batch, out);
        } else {
            if (!first) out << '\n';
            out << "profile: " << join(p.positions()) << '\n';
            out << "payoffs: " << join(f.values()) << '\n';
            out << "total:   " << f.total() << '\n';
            if (oracle)
                out << "oracle:  " << oracle->cells << " cells, max difference "
                    << oracle->max_difference << ", bound " << oracle->bound << ", "
                    << (oracle->within_bound ? "within bound" : "OUT OF BOUND") << '\n';
        }
        first = false;

        if (oracle && !oracle->within_bound) {
            err << "internal error: midpoint-rule payoff differs from the closed form "
                   "beyond its error bound on profile "
                << join(p.positions()) << '\n';
            return exit_code::internal;
        }
    }
    return exit_code::ok;
}

inline void print_findings(const std::vector<Finding>& fs, std::ostream& out) {
    for (const Finding& f : fs)
        out << "    [" << f.code << "] " << f.detail << '\n';
}

inline int run_verify(const std::vector<Profile>& profiles, bool json, bool batch,
                      std::ostream& out, std::ostream& err) {
    int rc = exit_code::ok;
    bool first = true;
    for (const Profile& p : profiles) {
        if (p.n() < 2)
            throw std::invalid_argument("verify needs at least two vendors");
        AgreementRecord ar = cross_validate(p);
        Verdict nec = check_necessary(p);
        std::optional<FloorCheck> floor;
        if (p.n() >= 4 && ar.conditions.holds)
            floor = payoff_floor_check(p);
        PayoffVector f = payoff_closed_form(p);

        if (json) {
            nlohmann::json j = report::envelope("verify");
            j["profile"] = p;
            j["payoffs"] = f;
            j["equilibrium"] = ar.definition.holds;
            j["definition"] = ar.definition;
            j["conditions"] = ar.conditions;
            j["necessary"] = nec;
            j["floor"] = floor ? nlohmann::json(*floor) : nlohmann::json(nullptr);
            j["agree"] = ar.agree;
            emit_json(j, batch, out);
        } else {
            if (!first) out << '\n';
            out << "profile: " << join(p.positions()) << '\n';
            out << "payoffs: " << join(f.values()) << '\n';
            out << "equilibrium: " << (ar.definition.holds ? "yes" : "no") << '\n';
            out << "  deviation check: "
                << (ar.definition.holds ? "no vendor can improve" : "profitable moves exist")
                << '\n';
            print_findings(ar.definition.findings, out);
            out << "  interval conditions: " << (ar.conditions.holds ? "hold" : "violated")
                << '\n';
            print_findings(ar.conditions.findings, out);
            out << "  necessary conditions: " << (nec.holds ? "hold" : "violated") << '\n';
            print_findings(nec.findings, out);
            if (floor)
                out << "  payoff floor: minimum payoff " << floor->min_payoff << " (vendor "
                    << floor->argmin_vendor << ") vs outer gap " << floor->floor_value
                    << ": " << (floor->holds ? "holds" : "VIOLATED") << '\n';
            out << "  routes agree: " << (ar.agree ? "yes" : "NO") << '\n';
        }
        first = false;

        if (!ar.agree) {
            nlohmann::json dump = report::envelope("verify");
            dump["profile"] = p;
            dump["definition"] = ar.definition;
            dump["conditions"] = ar.conditions;
            err << "internal error: the deviation check and the interval conditions "
                   "disagree on "
                << join(p.positions()) << '\n'
                << dump.dump(2) << '\n';
            return exit_code::internal;
        }
        if (floor && !floor->holds) {
            err << "internal error: payoff floor violated although the interval "
                   "conditions hold on "
                << join(p.positions()) << '\n';
            return exit_code::internal;
        }
        if (!ar.definition.holds)
            rc = exit_code::not_equilibrium;
    }
    return rc;
}

inline int run_synth(int n, int count, std::uint64_t seed, bool canonical, bool json,
                     std::ostream& out, std::ostream& err) {
    std::vector<Profile> profiles;
    if (canonical)
        profiles.push_back(canonical_equilibrium(n));
    else
        profiles = sample_equilibria(n, count, seed);

    for (const Profile& p : profiles) {
        AgreementRecord ar = cross_validate(p);
        if (!ar.agree || !ar.definition.holds) {
            err << "internal error: synthesized profile " << join(p.positions())
                << " failed verification\n";
            return exit_code::internal;
        }
    }

    if (json) {
        nlohmann::json j = report::envelope("synth");
        j["n"] = n;
        j["mode"] = canonical ? "canonical" : "sample";
        j["count"] = static_cast<int>(profiles.size());
        j["seed"] = canonical ? nlohmann::json(nullptr) : nlohmann::json(seed);
        j["profiles"] = profiles;
        j["verified"] = true;
        emit_json(j, false, out);
    } else {
        for (const Profile& p : profiles)
            out << join(p.positions()) << '\n';
    }
    return exit_code::ok;
}

inline int run_dynamics_cmd(const Profile& start, int grid, int steps, std::uint64_t seed,
                            bool json, bool csv, std::ostream& out) {
    DynamicsTrace tr = run_dynamics(start, grid, steps, seed);
    if (json) {
        nlohmann::json j = report::envelope("dynamics");
        j["start"] = start;
        j["grid"] = grid;
        j["step_limit"] = steps;
        j["outcome"] = to_string(tr.outcome);
        j["steps"] = tr.steps;
        j["final"] = tr.final_state;
        j["cycle_period"] = tr.cycle_period;
        j["exact_equilibrium"] = tr.exact_equilibrium;
        emit_json(j, false, out);
    } else {
        out << "start:   " << join(start.positions()) << "   (grid 1/" << grid << ")\n";
        switch (tr.outcome) {
            case DynamicsOutcome::fixed_point:
                out << "outcome: fixed point after " << tr.steps.size() << " moves\n";
                break;
            case DynamicsOutcome::cycle:
                out << "outcome: cycle of period " << tr.cycle_period << " after "
                    << tr.steps.size() << " moves\n";
                break;
            case DynamicsOutcome::step_limit:
                out << "outcome: step limit (" << steps << ") reached\n";
                break;
        }
        out << "final:   " << join(tr.final_state.positions()) << '\n';
        if (tr.outcome == DynamicsOutcome::fixed_point)
            out << "exact equilibrium: " << (tr.exact_equilibrium ? "yes" : "no") << '\n';
        if (csv)
            out << trace_csv(tr);
    }
    return exit_code::ok;
}

inline int run_repro(bool json, std::ostream& out, std::ostream& err) {
    struct Claim {
        std::string name;
        bool holds;
        std::string detail;
    };
    const Rat d10(1, 10);
    Profile cx({d10, d10, Rat(3, 10), Rat(3, 10), Rat(7, 10), Rat(7, 10), Rat(9, 10),
                Rat(9, 10)});

    std::vector<Claim> claims;
    PayoffVector f = payoff_closed_form(cx);
    const std::vector<Rat> expected{d10,        d10,        Rat(3, 20), Rat(3, 20),
                                    Rat(3, 20), Rat(3, 20), d10,        d10};
    claims.push_back({"payoff_pattern", f.values() == expected,
                      "payoffs are (1/10, 1/10, 3/20, 3/20, 3/20, 3/20, 1/10, 1/10)"});

    Verdict nec = check_necessary(cx);
    claims.push_back({"necessary_conditions_hold", nec.holds,
                      "no boundary vendor, no triple point, both extremes paired"});

    Verdict def = verify_equilibrium(cx);
    claims.push_back({"not_an_equilibrium", !def.holds,
                      "yet some vendor has a strictly profitable relocation"});

    Rat gain = payoff_closed_form(move_vendor(cx, 3, Rat(1, 2))).value(3);
    claims.push_back({"profitable_center_move",
                      gain == Rat(1, 5) && f.value(3) < gain,
                      "vendor 3 moving from 3/10 to 1/2 earns 1/5 instead of 3/20"});

    Verdict cond = check_theorem_conditions(cx);
    bool pinpointed = !cond.holds && cond.findings.size() == 1 &&
                      cond.findings.front().code == "main2.max_length" &&
                      cond.findings.front().vendor == 4;
    claims.push_back({"interval_conditions_pinpoint_failure",
                      pinpointed && cond.holds == def.holds,
                      "the gap-length route agrees and blames exactly the middle gap "
                      "I_4 = 2/5 > 2*I_0 = 1/5"});

    bool all = true;
    for (const Claim& c : claims) all = all && c.holds;

    if (json) {
        nlohmann::json j = report::envelope("repro");
        j["profile"] = cx;
        j["payoffs"] = f;
        j["claims"] = nlohmann::json::array();
        for (const Claim& c : claims)
            j["claims"].push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
        j["all_hold"] = all;
        emit_json(j, false, out);
    } else {
        out << "profile: " << join(cx.positions()) << '\n';
        for (const Claim& c : claims)
            out << (c.holds ? "  ok   " : "  FAIL ") << c.name << ": " << c.detail << '\n';
        if (all)
            out << "all claims hold: passing the classical necessary conditions does not "
                   "make a profile an equilibrium\n";
    }

    if (!all) {
        for (const Claim& c : claims) {
            if (!c.holds) {
                err << "repro failed at claim '" << c.name << "'\n";
                break;
            }
        }
        return exit_code::repro_failed;
    }
    return exit_code::ok;
}

} // namespace detail

/// Runs the tool on `args` (without the program name), writing to the
/// given streams. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"exact analysis of the n-vendor location game on [0,1]"};
    app.name("hotelling");
    app.require_subcommand(1);

    std::vector<std::string> eval_locs;
    std::string eval_file;
    bool eval_json = false;
    std::int64_t eval_oracle = 0;
    CLI::App* eval = app.add_subcommand("eval", "exact payoffs of one or more profiles");
    CLI::Option* eval_pos = eval->add_option(
        "locations", eval_locs, "vendor locations in weakly increasing order, e.g. 1/4 1/4 3/4 3/4");
    eval->add_option("--file", eval_file, "read profiles from a file, one per line")
        ->excludes(eval_pos);
    eval->add_flag("--json", eval_json, "emit a JSON report");
    eval->add_option("--oracle", eval_oracle,
                     "cross-check payoffs with a midpoint rule of this many cells")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> verify_locs;
    std::string verify_file;
    bool verify_json = false;
    CLI::App* verify =
        app.add_subcommand("verify", "decide equilibrium by two independent routes");
    CLI::Option* verify_pos =
        verify->add_option("locations", verify_locs, "vendor locations in weakly increasing order");
    verify->add_option("--file", verify_file, "read profiles from a file, one per line")
        ->excludes(verify_pos);
    verify->add_flag("--json", verify_json, "emit a JSON report");

    int synth_n = 0;
    int synth_count = 1;
    std::uint64_t synth_seed = 0;
    bool synth_canonical = false;
    bool synth_json = false;
    CLI::App* synth = app.add_subcommand("synth", "construct equilibria for n vendors");
    synth->add_option("--n", synth_n, "number of vendors")->required();
    CLI::Option* count_opt =
        synth->add_option("--count", synth_count, "number of sampled equilibria")
            ->check(CLI::PositiveNumber);
    CLI::Option* seed_opt = synth->add_option("--seed", synth_seed, "sampling seed");
    synth->add_flag("--canonical", synth_canonical, "emit the canonical equilibrium")
        ->excludes(count_opt)
        ->excludes(seed_opt);
    synth->add_flag("--json", synth_json, "emit a JSON report");

    std::vector<std::string> dyn_locs;
    int dyn_grid = 0;
    int dyn_steps = 1000;
    std::uint64_t dyn_seed = 0;
    bool dyn_json = false;
    bool dyn_csv = false;
    CLI::App* dyn =
        app.add_subcommand("dynamics", "largest-improvement best-response walk on a grid");
    dyn->add_option("locations", dyn_locs, "starting profile, all multiples of 1/m")
        ->required();
    dyn->add_option("--grid", dyn_grid, "grid resolution m")->required()->check(
        CLI::PositiveNumber);
    dyn->add_option("--steps", dyn_steps, "step limit (default 1000)")
        ->check(CLI::NonNegativeNumber);
    dyn->add_option("--seed", dyn_seed, "reserved; the schedule is deterministic");
    dyn->add_flag("--json", dyn_json, "emit a JSON report");
    dyn->add_flag("--csv", dyn_csv, "append the step table as CSV");

    bool repro_json = false;
    CLI::App* repro = app.add_subcommand(
        "repro", "replay the eight-vendor counterexample to the pairing conditions");
    repro->add_flag("--json", repro_json, "emit a JSON report");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hotelling");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*eval) {
            if (eval_locs.empty() && eval_file.empty())
                throw std::invalid_argument("give vendor locations or --file");
            auto profiles =
                detail::collect_profiles(eval_locs, eval_file, detail::max_denominator());
            return detail::run_eval(profiles, eval_oracle, eval_json, !eval_file.empty(),
                                    out, err);
        }
        if (*verify) {
            if (verify_locs.empty() && verify_file.empty())
                throw std::invalid_argument("give vendor locations or --file");
            auto profiles =
                detail::collect_profiles(verify_locs, verify_file, detail::max_denominator());
            return detail::run_verify(profiles, verify_json, !verify_file.empty(), out, err);
        }
        if (*synth)
            return detail::run_synth(synth_n, synth_count, synth_seed, synth_canonical,
                                     synth_json, out, err);
        if (*dyn) {
            Profile start = detail::parse_profile(dyn_locs, detail::max_denominator());
            return detail::run_dynamics_cmd(start, dyn_grid, dyn_steps, dyn_seed, dyn_json,
                                            dyn_csv, out);
        }
        if (*repro)
            return detail::run_repro(repro_json, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << " (inputs too large for exact evaluation)\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
    return exit_code::usage; // unreachable: a subcommand is required
}

} // namespace hotelling::cli
