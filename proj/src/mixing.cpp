#include "cornermix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cornermix/parallel.hpp"
#include "cornermix/rng.hpp"

namespace cornermix {

std::vector<double> t_grid(double tmin, double tmax, int points, bool log_spaced) {
    if (points < 1 || tmax < tmin) throw std::domain_error("t_grid: bad grid");
    std::vector<double> ts(points);
    if (points == 1) { ts[0] = tmin; return ts; }
    if (log_spaced) {
        if (tmin <= 0) throw std::domain_error("t_grid: log spacing needs tmin > 0");
        double r = std::log(tmax / tmin) / (points - 1);
        for (int i = 0; i < points; ++i) ts[i] = tmin * std::exp(r * i);
    } else {
        double d = (tmax - tmin) / (points - 1);
        for (int i = 0; i < points; ++i) ts[i] = tmin + d * i;
    }
    return ts;
}

double tv_from_uniform(const Eigen::VectorXd& p) {
    double u = 1.0 / static_cast<double>(p.size());
    double s = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) s += std::abs(p[i] - u);
    return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Exact k-set curves

namespace {

// Coordinate permutations of the tuple (card relabeling) for k <= 3.
std::vector<std::vector<int>> coord_perms(int k) {
    std::vector<int> base(k);
    for (int i = 0; i < k; ++i) base[i] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// Representatives of state orbits under cell symmetries x card relabelings.
std::vector<long long> orbit_reps(const SparseKernel& K) {
    const TupleSpace& sp = *K.space;
    auto syms = family_symmetries(K.family);
    auto cps = coord_perms(sp.k());
    long long M = sp.count();
    std::vector<long long> reps;
    int k = sp.k();
    int32_t mapped[8], permuted[8];
    for (long long s = 0; s < M; ++s) {
        const int32_t* t = sp.tuple(s);
        long long mn = s;
        for (const auto& sym : syms) {
            for (int i = 0; i < k; ++i) mapped[i] = sym[t[i]];
            for (const auto& cp : cps) {
                for (int i = 0; i < k; ++i) permuted[i] = mapped[cp[i]];
                mn = std::min(mn, sp.rank(permuted));
            }
        }
        if (mn == s) reps.push_back(s);
    }
    return reps;
}

}  // namespace

DistanceCurve kset_curve_exact(ShuffleFamily f, int k, const std::vector<double>& ts,
                               double tol, long long state_cap) {
    SparseKernel K = marginal_kernel(f, k, state_cap);
    std::vector<long long> reps = orbit_reps(K);
    std::vector<std::vector<double>> per_rep(reps.size(), std::vector<double>(ts.size(), 0));
    parallel_for(reps.size(), [&](size_t i) {
        auto dists = transient_grid(K, reps[i], ts, tol);
        for (size_t j = 0; j < ts.size(); ++j) per_rep[i][j] = tv_from_uniform(dists[j]);
    });
    DistanceCurve c;
    c.family = f;
    c.k = k;
    c.tol = tol;
    for (size_t j = 0; j < ts.size(); ++j) {
        double v = 0;
        for (size_t i = 0; i < reps.size(); ++i) v = std::max(v, per_rep[i][j]);
        c.points.push_back({ts[j], v, v, v, "exact"});
    }
    return c;
}

double kset_distance_exact(ShuffleFamily f, int k, double t, double tol, long long state_cap) {
    return kset_curve_exact(f, k, {t}, tol, state_cap).points[0].value;
}

// ---------------------------------------------------------------------------
// Monte Carlo k-set estimates

namespace {

// Track only the images of the first k cells along a Poissonized trajectory.
void sample_tuple(ShuffleFamily f, int k, double t, std::mt19937_64& rng, int32_t* out) {
    int n = f.n;
    for (int i = 0; i < k; ++i) out[i] = i;
    std::poisson_distribution<long long> pois(t);
    long long jumps = t == 0 ? 0 : pois(rng);
    long long G = generator_count(f);
    if (f.tag == Family::R) {
        int N = n * n;
        std::uniform_int_distribution<int> cell(0, N - 1);
        std::uniform_int_distribution<int> orient(0, 1);
        for (long long j = 0; j < jumps; ++j) {
            int a = cell(rng), b, c;
            do { b = cell(rng); } while (b == a);
            do { c = cell(rng); } while (c == a || c == b);
            if (orient(rng)) std::swap(b, c);
            for (int i = 0; i < k; ++i) {
                if (out[i] == a) out[i] = b;
                else if (out[i] == b) out[i] = c;
                else if (out[i] == c) out[i] = a;
            }
        }
        return;
    }
    std::uniform_int_distribution<long long> gen(0, G - 1);
    for (long long j = 0; j < jumps; ++j) {
        CornerMove m = generator_move(f, gen(rng));
        for (int i = 0; i < k; ++i) {
            int r = out[i] / n + 1, s = out[i] % n + 1;
            if (m.corner == Corner::UL) {
                if (r <= m.i && s <= m.j) out[i] = (m.i - r) * n + (m.j - s);
            } else {
                if (r >= m.i && s >= m.j) out[i] = (n + m.i - r - 1) * n + (n + m.j - s - 1);
            }
        }
    }
}

double plug_in_tv(const std::unordered_map<long long, long long>& counts, long long reps,
                  double nstates) {
    double s = 0;
    double u = 1.0 / nstates;
    for (const auto& [state, c] : counts)
        s += std::abs(static_cast<double>(c) / reps - u);
    s += (nstates - static_cast<double>(counts.size())) * u;
    return 0.5 * s;
}

}  // namespace

McEstimate kset_distance_mc(ShuffleFamily f, int k, double t, long long reps, uint64_t seed) {
    int N = f.n * f.n;
    double nstates = 1;
    for (int i = 0; i < k; ++i) nstates *= (N - i);
    std::vector<long long> outcomes(reps);
    int32_t tup[8];
    for (long long r = 0; r < reps; ++r) {
        std::mt19937_64 rng = derive_rng(seed, static_cast<uint64_t>(r));
        sample_tuple(f, k, t, rng, tup);
        long long code = 0;
        for (int i = 0; i < k; ++i) code = code * N + tup[i];
        outcomes[r] = code;
    }
    std::unordered_map<long long, long long> counts;
    for (long long o : outcomes) ++counts[o];
    McEstimate e;
    e.t = t;
    e.reps = reps;
    e.seed = seed;
    e.value = plug_in_tv(counts, reps, nstates);
    e.bias_note = std::min(1.0, nstates / (2.0 * static_cast<double>(reps)));
    // percentile bootstrap over replicate outcomes
    const int B = 200;
    std::vector<double> bs(B);
    std::mt19937_64 brng = derive_rng(seed, 0xb007);
    std::uniform_int_distribution<long long> pick(0, reps - 1);
    for (int b = 0; b < B; ++b) {
        std::unordered_map<long long, long long> bc;
        for (long long r = 0; r < reps; ++r) ++bc[outcomes[pick(brng)]];
        bs[b] = plug_in_tv(bc, reps, nstates);
    }
    std::sort(bs.begin(), bs.end());
    // widen to include the point estimate (bootstrap resampling inflates the
    // plug-in bias, which can push the whole percentile band above it)
    e.lo = std::min(bs[static_cast<size_t>(0.025 * (B - 1))], e.value);
    e.hi = std::max(bs[static_cast<size_t>(0.975 * (B - 1))], e.value);
    return e;
}

DistanceCurve kset_curve_mc(ShuffleFamily f, int k, const std::vector<double>& ts,
                            long long reps, uint64_t seed) {
    DistanceCurve c;
    c.family = f;
    c.k = k;
    c.reps = reps;
    c.seed = seed;
    c.points.resize(ts.size());
    parallel_for(ts.size(), [&](size_t i) {
        McEstimate e = kset_distance_mc(f, k, ts[i], reps, seed + 1000 * i);
        c.points[i] = {ts[i], e.value, e.lo, e.hi, "mc"};
    });
    return c;
}

// ---------------------------------------------------------------------------
// Full-deck TV and lower bounds

DistanceCurve full_tv_curve_exact(ShuffleFamily f, const std::vector<double>& ts, double tol) {
    GroupWalk g = build_group_walk(f);
    DistanceCurve c;
    c.family = f;
    c.k = 0;
    c.tol = tol;
    auto dists = group_transient_grid(g, ts, tol);
    for (size_t i = 0; i < ts.size(); ++i) {
        double v = tv_from_uniform(dists[i]);
        c.points.push_back({ts[i], v, v, v, "exact"});
    }
    return c;
}

double full_tv_exact(ShuffleFamily f, double t, double tol) {
    return full_tv_curve_exact(f, {t}, tol).points[0].value;
}

double counting_lower_bound(ShuffleFamily f, double t) {
    long long G = f.tag == Family::S0 ? static_cast<long long>(f.n) * f.n
                                      : 2LL * f.n * f.n;
    double m = static_cast<double>(f.n) * f.n;
    double log_group = std::lgamma(m + 1.0);  // log (n^2)!
    double logG = std::log(static_cast<double>(G));
    long long kmax = static_cast<long long>(std::ceil(t + 10.0 * std::sqrt(std::max(t, 1.0))));
    double best = -1.0;
    double cdf = 0;
    for (long long K = 0; K <= kmax; ++K) {
        cdf += t == 0 ? (K == 0 ? 1.0 : 0.0)
                      : std::exp(-t + K * std::log(t) - std::lgamma(static_cast<double>(K) + 1.0));
        double reach = std::exp(static_cast<double>(K) * logG - log_group);
        best = std::max(best, std::min(cdf, 1.0) - reach);
    }
    return std::clamp(best, 0.0, 1.0);
}

double stuck_card_lower_bound(int n, double t) {
    double m = static_cast<double>(n) * n;
    return std::max(0.0, std::exp(-t / m) - 1.0 / m);
}

std::optional<double> crossing_time(const DistanceCurve& c, double level) {
    for (size_t i = 0; i + 1 < c.points.size(); ++i) {
        double a = c.points[i].value, b = c.points[i + 1].value;
        if (a >= level && b < level) {
            double f = (a - level) / (a - b);
            return c.points[i].t + f * (c.points[i + 1].t - c.points[i].t);
        }
    }
    return std::nullopt;
}

bool is_nonincreasing(const DistanceCurve& c, double tol) {
    for (size_t i = 0; i + 1 < c.points.size(); ++i)
        if (c.points[i + 1].value > c.points[i].value + tol) return false;
    return true;
}

}  // namespace cornermix
