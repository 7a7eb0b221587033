// Command-line front door: every experiment as a reproducible run emitting
// CSV/JSON with embedded config, seed, and per-value method tags.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "cornermix/io.hpp"

using namespace cornermix;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_CAP = 3;
constexpr int EXIT_VERIFY = 4;

struct GridSpec {
    double tmin = 0, tmax = 20;
    int points = 21;
    bool log_spaced = false;
};

// t-grid syntax: min:max:points[:log]
GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    std::istringstream in(s);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() < 3 || parts.size() > 4)
        throw CLI::ValidationError("--t", "expected min:max:points[:log]");
    g.tmin = std::stod(parts[0]);
    g.tmax = std::stod(parts[1]);
    g.points = std::stoi(parts[2]);
    if (parts.size() == 4) {
        if (parts[3] != "log")
            throw CLI::ValidationError("--t", "fourth field must be 'log'");
        g.log_spaced = true;
    }
    return g;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text_file(out_path, content);
}

void config_error(const std::string& msg) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", msg}}.dump() << "\n";
    std::exit(EXIT_CONFIG);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corner-rotation shuffle laboratory"};
    app.require_subcommand(1);

    std::string family_name_opt = "S";
    int n = 4, k = 1, m = 9;
    std::string grid_str = "0:20:21";
    long long reps = 10000;
    uint64_t seed = 1;
    double tol = 1e-9;
    double comparison_c = 0, lambda2 = 0;
    std::string out_path = "-";
    bool unsafe_caps = false, exhaustive = false;
    long long state_cap = 20000;

    auto add_common = [&](CLI::App* sub, bool with_grid = true) {
        sub->add_option("--family", family_name_opt, "shuffle family: S0, S or R");
        sub->add_option("--n", n, "array side length");
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--tol", tol, "truncation tolerance");
        sub->add_option("--out,-o", out_path, "output path ('-' for stdout)");
        sub->add_flag("--unsafe-caps", unsafe_caps,
                      "acknowledge overriding built-in size caps");
        sub->add_option("--state-cap", state_cap,
                        "tuple-state cap (requires --unsafe-caps to raise)");
        if (with_grid) sub->add_option("--t", grid_str, "t grid: min:max:points[:log]");
    };

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo k-set distance curve");
    add_common(sim);
    sim->add_option("--k", k, "tuple size");
    sim->add_option("--reps", reps, "replicates per grid point");

    CLI::App* exact = app.add_subcommand("exact", "exact k-set distance curve");
    add_common(exact);
    exact->add_option("--k", k, "tuple size");

    CLI::App* exact_full = app.add_subcommand("exact-full", "exact full-deck TV (n <= 3)");
    add_common(exact_full);

    CLI::App* bounds = app.add_subcommand("bounds", "counting and stuck-card lower bounds");
    add_common(bounds);

    CLI::App* verify =
        app.add_subcommand("verify-decomposition", "decompose three-cycles and verify");
    add_common(verify, false);
    verify->add_flag("--exhaustive", exhaustive, "all three-cycles (default)");

    CLI::App* compare = app.add_subcommand("compare-constant", "comparison constant B");
    add_common(compare, false);

    CLI::App* chars = app.add_subcommand("characters", "character table of the R walk");
    chars->add_option("--m", m, "symmetric group degree");
    chars->add_option("--out,-o", out_path, "output path");

    CLI::App* sbound = app.add_subcommand("spectral-bound", "upper bound curve");
    add_common(sbound);
    sbound->add_option("--c", comparison_c, "comparison constant (0 = compute)");
    sbound->add_option("--lambda2", lambda2, "mean alternating sign (with --c)");

    CLI::App* geom = app.add_subcommand("geometry", "jump sets, rates, common jumps");
    add_common(geom, false);

    CLI::App* coup = app.add_subcommand("coupling", "maximal-coupling meeting times");
    add_common(coup, false);
    coup->add_option("--k", k, "tuple size");
    coup->add_option("--reps", reps, "replicates");

    CLI::App* self = app.add_subcommand("selftest", "deterministic artifact bundle");
    self->add_option("--seed", seed, "RNG seed");
    self->add_option("--out,-o", out_path, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return EXIT_OK;
        std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump()
                  << "\n";
        return EXIT_CONFIG;
    }

    std::ostringstream cfg;
    for (int i = 1; i < argc; ++i) cfg << (i > 1 ? " " : "") << argv[i];

    try {
        if (n < 2) config_error("--n must be at least 2");
        if (state_cap > 20000 && !unsafe_caps)
            config_error("--state-cap above 20000 requires --unsafe-caps");
        Family fam = family_from_name(family_name_opt);
        ShuffleFamily f{fam, n};

        if (sim->parsed()) {
            GridSpec g = parse_grid(grid_str);
            DistanceCurve c =
                kset_curve_mc(f, k, t_grid(g.tmin, g.tmax, g.points, g.log_spaced), reps,
                              seed);
            emit(out_path, curve_csv(c, cfg.str()));
        } else if (exact->parsed()) {
            GridSpec g = parse_grid(grid_str);
            DistanceCurve c = kset_curve_exact(
                f, k, t_grid(g.tmin, g.tmax, g.points, g.log_spaced), tol, state_cap);
            emit(out_path, curve_csv(c, cfg.str()));
        } else if (exact_full->parsed()) {
            GridSpec g = parse_grid(grid_str);
            DistanceCurve c =
                full_tv_curve_exact(f, t_grid(g.tmin, g.tmax, g.points, g.log_spaced), tol);
            emit(out_path, curve_csv(c, cfg.str()));
        } else if (bounds->parsed()) {
            GridSpec g = parse_grid(grid_str);
            DistanceCurve c;
            c.family = f;
            c.k = 0;
            for (double t : t_grid(g.tmin, g.tmax, g.points, g.log_spaced)) {
                double v = counting_lower_bound(f, t);
                if (fam == Family::S0) v = std::max(v, stuck_card_lower_bound(n, t));
                c.points.push_back({t, v, v, v, "bound"});
            }
            emit(out_path, curve_csv(c, cfg.str()));
        } else if (verify->parsed() || compare->parsed()) {
            if (fam == Family::R) config_error("decompositions target S0/S");
            ComparisonReport r = comparison_constant(n, fam);
            emit(out_path, comparison_json(r, cfg.str()).dump(2) + "\n");
            if (!r.failures.empty() || r.max_word_length > 640) return EXIT_VERIFY;
        } else if (chars->parsed()) {
            emit(out_path, characters_csv(m, cfg.str()));
        } else if (sbound->parsed()) {
            GridSpec g = parse_grid(grid_str);
            double c_used = comparison_c;
            double l2_used = lambda2;
            if (c_used <= 0) {
                c_used = comparison_constant(n, Family::S).B.to_double();
                l2_used = alternating_mean_sign(n, Family::S).to_double();
            }
            DistanceCurve c;
            c.family = f;
            c.k = 0;
            for (double t : t_grid(g.tmin, g.tmax, g.points, g.log_spaced)) {
                double v = ubl_bound(n, t, c_used, l2_used);
                c.points.push_back({t, v, v, v, "bound"});
            }
            emit(out_path, curve_csv(c, cfg.str()));
        } else if (geom->parsed()) {
            emit(out_path, geometry_json(n, cfg.str()).dump(2) + "\n");
        } else if (coup->parsed()) {
            CouplingResult r = coupling_times(n, k, reps, seed, 1.0, -1, fam);
            emit(out_path, coupling_csv(r, cfg.str()));
        } else if (self->parsed()) {
            auto bundle = selftest_bundle(seed);
            if (out_path.empty() || out_path == "-") {
                for (const auto& [name, content] : bundle)
                    std::cout << "== " << name << " ==\n" << content;
            } else {
                std::filesystem::create_directories(out_path);
                for (const auto& [name, content] : bundle)
                    write_text_file(out_path + "/" + name, content);
            }
        }
    } catch (const cap_error& e) {
        std::cerr << nlohmann::json{{"error", "cap"}, {"message", e.what()}}.dump()
                  << "\n";
        return EXIT_CAP;
    } catch (const std::domain_error& e) {
        std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump()
                  << "\n";
        return EXIT_CONFIG;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "verify"}, {"message", e.what()}}.dump()
                  << "\n";
        return EXIT_VERIFY;
    }
    return EXIT_OK;
}
