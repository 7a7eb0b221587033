#include "cornermix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cornermix/rng.hpp"

namespace cornermix {

std::vector<Position> Region::cells(int n) const {
    std::vector<Position> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (contains({i, j})) out.push_back({i, j});
    return out;
}

Region Region::corner_A(int n) {
    int b = n / 3;
    return {"A", [b](Position p) { return p.row <= b && p.col <= b; }};
}

Region Region::corner_B(int n) {
    int lo = n - n / 3 + 1;
    return {"B", [lo](Position p) { return p.row >= lo && p.col >= lo; }};
}

Region Region::corner_union(int n) {
    Region a = corner_A(n), b = corner_B(n);
    return {"A+B", [a, b](Position p) { return a.contains(p) || b.contains(p); }};
}

Region Region::whole() {
    return {"all", [](Position) { return true; }};
}

Region Region::rectangle(Position lo, Position hi) {
    return {"rect", [lo, hi](Position p) {
                return lo.row <= p.row && p.row <= hi.row && lo.col <= p.col &&
                       p.col <= hi.col;
            }};
}

Region Region::of_cells(std::vector<Position> cells, std::string tag) {
    return {std::move(tag), [cells = std::move(cells)](Position p) {
                return std::find(cells.begin(), cells.end(), p) != cells.end();
            }};
}

std::vector<Position> JumpSet::cells() const {
    std::vector<Position> out;
    for (int c = 0; c < n * n; ++c)
        if (gen_count[c] > 0) out.push_back(cell_position(n, c));
    return out;
}

long long JumpSet::size() const {
    long long s = 0;
    for (int c : gen_count) s += c > 0;
    return s;
}

namespace {

// Image of x under one generator: the covering rotation target, else x.
Position move_target(int n, CornerMove m, Position x) {
    if (m.corner == Corner::UL) {
        if (x.row <= m.i && x.col <= m.j) return {m.i + 1 - x.row, m.j + 1 - x.col};
    } else {
        if (x.row >= m.i && x.col >= m.j) return {n + m.i - x.row, n + m.j - x.col};
    }
    return x;
}

bool move_covers(CornerMove m, Position x) {
    return m.corner == Corner::UL ? (x.row <= m.i && x.col <= m.j)
                                  : (x.row >= m.i && x.col >= m.j);
}

}  // namespace

JumpSet jump_set(int n, Position x) {
    JumpSet js;
    js.n = n;
    js.x = x;
    js.gen_count.assign(n * n, 0);
    ShuffleFamily f{Family::S, n};
    long long G = generator_count(f);
    for (long long g = 0; g < G; ++g) {
        CornerMove m = generator_move(f, g);
        // only generators whose rectangle covers x contribute a jump target
        if (!move_covers(m, x)) continue;
        ++js.gen_count[cell_index(n, move_target(n, m, x))];
    }
    return js;
}

bool jump_set_formula_contains(int n, Position x, Position target) {
    long long u = n + 1 - target.row - x.row;
    long long v = n + 1 - target.col - x.col;
    return u * v >= 0;
}

std::vector<Position> jump_set_formula(int n, Position x) {
    std::vector<Position> out;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (jump_set_formula_contains(n, x, {a, b})) out.push_back({a, b});
    return out;
}

Rational jump_rate_into(int n, Position x, const Region& R) {
    ShuffleFamily f{Family::S, n};
    long long G = generator_count(f);
    long long hits = 0;
    for (long long g = 0; g < G; ++g) {
        Position y = move_target(n, generator_move(f, g), x);
        if (!(y == x) && R.contains(y)) ++hits;
    }
    return Rational(hits, G);
}

CommonJump min_common_jump(int n, const Region& R) {
    std::vector<Position> cells = R.cells(n);
    if (cells.size() < 2) throw std::domain_error("min_common_jump: |R| < 2");
    std::vector<std::vector<char>> masks(cells.size(), std::vector<char>(n * n, 0));
    for (size_t i = 0; i < cells.size(); ++i)
        for (Position p : jump_set_formula(n, cells[i]))
            masks[i][cell_index(n, p)] = 1;
    CommonJump best;
    best.minimum = -1;
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) {
            long long common = 0;
            for (int c = 0; c < n * n; ++c) common += masks[i][c] & masks[j][c];
            if (best.minimum < 0 || common < best.minimum) {
                best.minimum = common;
                best.witness_x = cells[i];
                best.witness_y = cells[j];
            }
        }
    return best;
}

// ---------------------------------------------------------------------------
// Coupling simulator

double CouplingResult::mean_time() const {
    double s = 0;
    for (double t : times) s += t;
    return times.empty() ? 0 : s / static_cast<double>(times.size());
}

double CouplingResult::quantile(double q) const {
    if (times.empty()) return 0;
    std::vector<double> s = times;
    std::sort(s.begin(), s.end());
    size_t idx = static_cast<size_t>(q * (s.size() - 1));
    return s[idx];
}

std::pair<std::vector<int32_t>, std::vector<int32_t>> adversarial_starts(int n, int k) {
    if (k > n) throw std::domain_error("adversarial_starts: k > n");
    std::vector<int32_t> a(k), b(k);
    for (int i = 0; i < k; ++i) {
        a[i] = cell_index(n, {1, n - i});
        b[i] = cell_index(n, {n, 1 + i});
    }
    return {a, b};
}

namespace {

// Epoch-kernel rows exp(dt(K-I))[s, .], cached with a crude size bound.
class RowCache {
public:
    RowCache(const SparseKernel& K, double dt) : K_(K), dt_(dt) {
        long long budget = 40'000'000 / std::max<long long>(1, K.states());
        cap_ = std::max<long long>(16, budget);
    }

    const Eigen::VectorXd& row(long long s) {
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        if (static_cast<long long>(cache_.size()) >= cap_) cache_.clear();
        Eigen::VectorXd r = transient_distribution(K_, s, dt_, 1e-12);
        r /= r.sum();
        return cache_.emplace(s, std::move(r)).first->second;
    }

private:
    const SparseKernel& K_;
    double dt_;
    long long cap_;
    std::unordered_map<long long, Eigen::VectorXd> cache_;
};

long long sample_row(const Eigen::VectorXd& p, std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    return p.size() - 1;
}

}  // namespace

CouplingResult coupling_times(int n, int k, long long reps, uint64_t seed,
                              double review_dt, int checkpoint_epoch, Family family,
                              const std::vector<int32_t>* start_x,
                              const std::vector<int32_t>* start_y) {
    ShuffleFamily f{family, n};
    SparseKernel K = marginal_kernel(f, k);
    auto [sa, sb] = adversarial_starts(n, k);
    if (start_x) sa = *start_x;
    if (start_y) sb = *start_y;
    CouplingResult res;
    res.n = n;
    res.k = k;
    res.family = family;
    res.seed = seed;
    res.review_dt = review_dt;
    res.start_x = K.space->rank(sa.data());
    res.start_y = K.space->rank(sb.data());
    res.checkpoint_epoch = checkpoint_epoch;
    res.times.resize(reps);
    if (checkpoint_epoch >= 0) {
        res.x_at_checkpoint.resize(reps);
        res.y_at_checkpoint.resize(reps);
    }
    RowCache rows(K, review_dt);
    const long long max_epochs = 1'000'000;
    Eigen::VectorXd overlap(K.states());
    for (long long rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng = derive_rng(seed, static_cast<uint64_t>(rep));
        long long x = res.start_x, y = res.start_y;
        long long met_epoch = x == y ? 0 : -1;
        if (checkpoint_epoch == 0) {
            res.x_at_checkpoint[rep] = x;
            res.y_at_checkpoint[rep] = y;
        }
        for (long long e = 0; met_epoch < 0 || e < checkpoint_epoch; ++e) {
            if (e >= max_epochs) throw std::runtime_error("coupling_times: epoch cap hit");
            if (x == y) {
                long long z = sample_row(rows.row(x), rng);
                x = y = z;
            } else {
                const Eigen::VectorXd& p = rows.row(x);
                const Eigen::VectorXd& q = rows.row(y);
                overlap = p.cwiseMin(q);
                double alpha = overlap.sum();
                double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                if (u < alpha) {
                    // meet: sample from the normalized overlap
                    double target = u;  // u is uniform on [0, alpha) here
                    double acc = 0;
                    long long z = K.states() - 1;
                    for (Eigen::Index i = 0; i < overlap.size(); ++i) {
                        acc += overlap[i];
                        if (target < acc) { z = i; break; }
                    }
                    x = y = z;
                } else {
                    // residuals (p - min)/(1-alpha), (q - min)/(1-alpha), independent
                    Eigen::VectorXd rp = (p - overlap) / (1.0 - alpha);
                    Eigen::VectorXd rq = (q - overlap) / (1.0 - alpha);
                    x = sample_row(rp, rng);
                    y = sample_row(rq, rng);
                }
            }
            if (met_epoch < 0 && x == y) met_epoch = e + 1;
            if (e + 1 == checkpoint_epoch) {
                res.x_at_checkpoint[rep] = x;
                res.y_at_checkpoint[rep] = y;
            }
        }
        res.times[rep] = static_cast<double>(met_epoch) * review_dt;
    }
    return res;
}

}  // namespace cornermix
