#include "cornermix/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cornermix {

const char* tool_version() { return "cornermix 1.0.0"; }

namespace {

std::string now_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json meta(const std::string& config, uint64_t seed, const std::string& ts) {
    return {{"version", tool_version()},
            {"config", config},
            {"seed", seed},
            {"timestamp", ts.empty() ? now_utc() : ts}};
}

}  // namespace

std::string csv_header(const std::string& config, uint64_t seed, const std::string& ts) {
    std::ostringstream o;
    o << "# version=" << tool_version() << "\n";
    o << "# config=" << config << "\n";
    o << "# seed=" << seed << "\n";
    o << "# timestamp=" << (ts.empty() ? now_utc() : ts) << "\n";
    return o.str();
}

std::string curve_csv(const DistanceCurve& c, const std::string& config,
                      const std::string& ts) {
    std::ostringstream o;
    o << csv_header(config, c.seed, ts);
    o << "t,value,lo,hi,method\n";
    for (const CurvePoint& p : c.points)
        o << fmt(p.t) << ',' << fmt(p.value) << ',' << fmt(p.lo) << ',' << fmt(p.hi)
          << ',' << p.method << "\n";
    return o.str();
}

nlohmann::json curve_json(const DistanceCurve& c, const std::string& config,
                          const std::string& ts) {
    nlohmann::json points = nlohmann::json::array();
    for (const CurvePoint& p : c.points)
        points.push_back({{"t", p.t},
                          {"value", p.value},
                          {"lo", p.lo},
                          {"hi", p.hi},
                          {"method", p.method}});
    return {{"meta", meta(config, c.seed, ts)},
            {"family", family_name(c.family.tag)},
            {"n", c.family.n},
            {"k", c.k},
            {"reps", c.reps},
            {"tol", c.tol},
            {"points", points}};
}

std::string characters_csv(int m, const std::string& config, const std::string& ts) {
    std::ostringstream o;
    o << csv_header(config, 0, ts);
    o << "partition,d,chi3,r,bound,case\n";
    Partition three;
    three.parts.push_back(3);
    for (int i = 3; i < m; ++i) three.parts.push_back(1);
    for (const SpectrumEntry& e : r_spectrum(m)) {
        long long chi3 = mn_character(e.partition, three);
        o << e.partition.str() << ',' << e.d << ',' << chi3 << ',' << e.r.str();
        if (e.partition.parts.size() == 1) {
            o << ",1,trivial\n";  // char_bounds requires a nontrivial partition
        } else {
            CharBound b = char_bounds(e.partition);
            o << ',' << b.bound.str() << ',' << b.which << "\n";
        }
    }
    return o.str();
}

nlohmann::json comparison_json(const ComparisonReport& r, const std::string& config,
                               const std::string& ts) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [len, cnt] : r.length_histogram) hist[std::to_string(len)] = cnt;
    nlohmann::json cases = nlohmann::json::object();
    for (const auto& [name, cnt] : r.case_counts) cases[name] = cnt;
    return {{"meta", meta(config, 0, ts)},
            {"n", r.n},
            {"family", family_name(r.family)},
            {"B", r.B.str()},
            {"B_value", r.B.to_double()},
            {"max_sum", r.max_sum},
            {"max_support_a3", r.max_support_a3},
            {"three_cycles", r.a3_count},
            {"decomposed", r.total_cycles},
            {"max_word_length", r.max_word_length},
            {"length_histogram", hist},
            {"case_counts", cases},
            {"failures", r.failures}};
}

nlohmann::json geometry_json(int n, const std::string& config, const std::string& ts) {
    Region ab = Region::corner_union(n);
    Rational min_rate(2, 1);
    Position argmin{1, 1};
    bool formula_ok = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Position x{i, j};
            Rational rate = jump_rate_into(n, x, ab);
            if (rate < min_rate) { min_rate = rate; argmin = x; }
            JumpSet js = jump_set(n, x);
            for (int c = 0; c < n * n; ++c)
                if ((js.gen_count[c] > 0) !=
                    jump_set_formula_contains(n, x, cell_position(n, c)))
                    formula_ok = false;
        }
    CommonJump cj = min_common_jump(n, ab);
    return {{"meta", meta(config, 0, ts)},
            {"n", n},
            {"region", ab.tag},
            {"region_size", static_cast<long long>(ab.cells(n).size())},
            {"min_jump_rate", min_rate.str()},
            {"min_jump_rate_value", min_rate.to_double()},
            {"rate_claim_1_over_3n", min_rate >= Rational(1, 3LL * n)},
            {"min_rate_argmin", {argmin.row, argmin.col}},
            {"min_common_jump", cj.minimum},
            {"common_jump_witness",
             {{cj.witness_x.row, cj.witness_x.col}, {cj.witness_y.row, cj.witness_y.col}}},
            {"common_vs_n2_over_9", cj.minimum >= static_cast<long long>(n) * n / 9},
            {"common_vs_n2_over_3", cj.minimum >= static_cast<long long>(n) * n / 3},
            {"formula_matches_enumeration", formula_ok}};
}

std::string coupling_csv(const CouplingResult& r, const std::string& config,
                         const std::string& ts) {
    std::ostringstream o;
    o << csv_header(config, r.seed, ts);
    o << "replicate,time\n";
    for (size_t i = 0; i < r.times.size(); ++i) o << i << ',' << fmt(r.times[i]) << "\n";
    o << "# mean=" << fmt(r.mean_time()) << " q50=" << fmt(r.quantile(0.5))
      << " q90=" << fmt(r.quantile(0.9)) << " q99=" << fmt(r.quantile(0.99)) << "\n";
    return o.str();
}

std::map<std::string, std::string> selftest_bundle(uint64_t seed) {
    std::map<std::string, std::string> out;
    std::string cfg = "selftest --seed " + std::to_string(seed);

    DistanceCurve exact = kset_curve_exact({Family::S, 3}, 1, t_grid(0, 20, 11, false));
    out["exact_k1_n3.csv"] = curve_csv(exact, cfg);

    DistanceCurve mc = kset_curve_mc({Family::S, 3}, 1, {1.0, 4.0}, 2000, seed);
    out["mc_k1_n3.csv"] = curve_csv(mc, cfg);

    DistanceCurve bounds;
    bounds.family = {Family::S0, 4};
    bounds.k = 0;
    for (double t : t_grid(0, 20, 6, false)) {
        double v = stuck_card_lower_bound(4, t);
        bounds.points.push_back({t, v, v, v, "bound"});
    }
    out["stuck_card_n4.csv"] = curve_csv(bounds, cfg);

    out["characters_m9.csv"] = characters_csv(9, cfg);
    out["comparison_n3.json"] =
        comparison_json(comparison_constant(3, Family::S0), cfg).dump(2) + "\n";
    out["geometry_n6.json"] = geometry_json(6, cfg).dump(2) + "\n";
    out["coupling_n3.csv"] = coupling_csv(coupling_times(3, 1, 200, seed), cfg);
    return out;
}

std::string strip_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# timestamp=", 0) == 0) continue;
        size_t pos = line.find("\"timestamp\"");
        if (pos != std::string::npos) continue;
        out << line << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

}  // namespace cornermix
