#include "cornermix/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "cornermix/rng.hpp"

namespace cornermix {

const char* family_name(Family f) {
    switch (f) {
        case Family::S0: return "S0";
        case Family::S: return "S";
        case Family::R: return "R";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    if (s == "S0") return Family::S0;
    if (s == "S") return Family::S;
    if (s == "R") return Family::R;
    throw std::domain_error("unknown shuffle family: " + s);
}

long long generator_count(ShuffleFamily f) {
    long long N = static_cast<long long>(f.n) * f.n;
    switch (f.tag) {
        case Family::S0: return N;
        case Family::S: return 2 * N;
        case Family::R: return N * (N - 1) * (N - 2) / 3;  // 2*C(N,3)
    }
    return 0;
}

CornerMove generator_move(ShuffleFamily f, long long g) {
    long long N = static_cast<long long>(f.n) * f.n;
    if (f.tag == Family::R || g < 0 || g >= generator_count(f))
        throw std::domain_error("generator_move: bad generator index");
    if (g < N) {
        return {Corner::UL, static_cast<int>(g) / f.n + 1, static_cast<int>(g) % f.n + 1};
    }
    g -= N;
    return {Corner::LR, static_cast<int>(g) / f.n + 1, static_cast<int>(g) % f.n + 1};
}

// Apply a corner move to a single cell in O(1).
static inline int move_cell(int n, CornerMove m, int cell) {
    int r = cell / n + 1, s = cell % n + 1;
    if (m.corner == Corner::UL) {
        if (r <= m.i && s <= m.j) return (m.i - r) * n + (m.j - s);
    } else {
        if (r >= m.i && s >= m.j) return (n + m.i - r - 1) * n + (n + m.j - s - 1);
    }
    return cell;
}

// ---------------------------------------------------------------------------
// TupleSpace

TupleSpace::TupleSpace(int n, int k, long long cap) : n_(n), k_(k) {
    if (k < 1) throw std::domain_error("TupleSpace: k must be >= 1");
    int N = n * n;
    if (k > N) throw std::domain_error("TupleSpace: k exceeds cell count");
    long long cnt = 1;
    for (int i = 0; i < k; ++i) cnt *= (N - i);
    if (cnt > cap)
        throw cap_error("tuple state space " + std::to_string(cnt) +
                        " exceeds cap " + std::to_string(cap));
    long long keys = 1;
    for (int i = 0; i < k; ++i) keys *= N;
    lookup_.assign(static_cast<size_t>(keys), -1);
    tuples_.reserve(static_cast<size_t>(cnt) * k);

    std::vector<int32_t> cur(k, 0);
    std::vector<char> used(N, 0);
    long long rank = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            for (int i = 0; i < k; ++i) tuples_.push_back(cur[i]);
            lookup_[key(cur.data())] = static_cast<int32_t>(rank++);
            return;
        }
        for (int c = 0; c < N; ++c) {
            if (used[c]) continue;
            cur[depth] = c;
            used[c] = 1;
            self(self, depth + 1);
            used[c] = 0;
        }
    };
    rec(rec, 0);
}

long long TupleSpace::key(const int32_t* cells) const {
    long long N = n_ * n_, k = 0;
    for (int i = 0; i < k_; ++i) k = k * N + cells[i];
    return k;
}

long long TupleSpace::rank(const int32_t* cells) const {
    int32_t r = lookup_[key(cells)];
    if (r < 0) throw std::domain_error("TupleSpace::rank: invalid tuple");
    return r;
}

long long TupleSpace::rank_mapped(long long idx, const std::vector<int32_t>& map) const {
    const int32_t* t = tuple(idx);
    int32_t m[8];
    for (int i = 0; i < k_; ++i) m[i] = map[t[i]];
    return rank(m);
}

// ---------------------------------------------------------------------------
// marginal_kernel

namespace {

struct RowBuilder {
    std::vector<std::pair<int32_t, long long>> entries;
    void add(long long colidx, long long c) { entries.push_back({static_cast<int32_t>(colidx), c}); }
    void flush(SparseKernel& K) {
        std::sort(entries.begin(), entries.end());
        for (size_t i = 0; i < entries.size();) {
            size_t j = i;
            long long tot = 0;
            while (j < entries.size() && entries[j].first == entries[i].first)
                tot += entries[j++].second;
            K.col.push_back(entries[i].first);
            K.count.push_back(tot);
            i = j;
        }
        K.row_ptr.push_back(static_cast<long long>(K.col.size()));
        entries.clear();
    }
};

}  // namespace

SparseKernel marginal_kernel(ShuffleFamily f, int k, long long state_cap) {
    SparseKernel K;
    K.family = f;
    K.space = std::make_shared<TupleSpace>(f.n, k, state_cap);
    K.denom = generator_count(f);
    const TupleSpace& sp = *K.space;
    long long M = sp.count();
    int N = sp.cells();
    K.row_ptr.push_back(0);
    RowBuilder rb;
    int32_t img[8];

    if (f.tag != Family::R) {
        long long G = K.denom;
        std::vector<CornerMove> moves(G);
        for (long long g = 0; g < G; ++g) moves[g] = generator_move(f, g);
        for (long long s = 0; s < M; ++s) {
            const int32_t* t = sp.tuple(s);
            for (long long g = 0; g < G; ++g) {
                for (int i = 0; i < k; ++i) img[i] = move_cell(f.n, moves[g], t[i]);
                rb.add(sp.rank(img), 1);
            }
            rb.flush(K);
        }
    } else {
        // Count three-cycles combinatorially instead of enumerating 2*C(N,3)
        // generators: classified by how many tuple coordinates they move.
        long long rest = N - k;
        long long stay = rest * (rest - 1) * (rest - 2) / 3;  // 2*C(N-k,3)
        std::vector<char> marked(N, 0);
        for (long long s = 0; s < M; ++s) {
            const int32_t* t = sp.tuple(s);
            for (int i = 0; i < k; ++i) marked[t[i]] = 1;
            if (stay > 0) rb.add(s, stay);
            // one coordinate moved: cycle (t[a] -> z -> w), z target, w free
            if (rest >= 2) {
                for (int a = 0; a < k; ++a) {
                    for (int i = 0; i < k; ++i) img[i] = t[i];
                    for (int z = 0; z < N; ++z) {
                        if (marked[z]) continue;
                        img[a] = z;
                        rb.add(sp.rank(img), rest - 1);
                    }
                    img[a] = t[a];
                }
            }
            // two coordinates: cycle (t[a] -> t[b] -> w)
            if (rest >= 1) {
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) {
                        if (a == b) continue;
                        for (int i = 0; i < k; ++i) img[i] = t[i];
                        img[a] = t[b];
                        for (int w = 0; w < N; ++w) {
                            if (marked[w]) continue;
                            img[b] = w;
                            rb.add(sp.rank(img), 1);
                        }
                    }
            }
            // three coordinates: both orientations of each marked triple
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    for (int c = b + 1; c < k; ++c) {
                        for (int i = 0; i < k; ++i) img[i] = t[i];
                        img[a] = t[b]; img[b] = t[c]; img[c] = t[a];
                        rb.add(sp.rank(img), 1);
                        img[a] = t[c]; img[b] = t[a]; img[c] = t[b];
                        rb.add(sp.rank(img), 1);
                    }
            rb.flush(K);
            for (int i = 0; i < k; ++i) marked[t[i]] = 0;
        }
    }
    K.prob.resize(K.count.size());
    for (size_t i = 0; i < K.count.size(); ++i)
        K.prob[i] = static_cast<double>(K.count[i]) / static_cast<double>(K.denom);
    return K;
}

// ---------------------------------------------------------------------------
// Uniformization

std::vector<double> poisson_weights(double t, double tol) {
    if (t < 0) throw std::domain_error("poisson_weights: negative t");
    if (t == 0) return {1.0};
    std::vector<double> w;
    double cum = 0;
    long long jcap = static_cast<long long>(t + 20.0 * std::sqrt(t) + 60.0);
    for (long long j = 0; j <= jcap; ++j) {
        double lw = -t + j * std::log(t) - std::lgamma(static_cast<double>(j) + 1.0);
        double wj = std::exp(lw);
        w.push_back(wj);
        cum += wj;
        if (j >= static_cast<long long>(t) && 1.0 - cum < tol) break;
    }
    return w;
}

double poisson_cdf(double t, long long k) {
    if (k < 0) return 0.0;
    if (t == 0) return 1.0;
    double cum = 0;
    for (long long j = 0; j <= k; ++j)
        cum += std::exp(-t + j * std::log(t) - std::lgamma(static_cast<double>(j) + 1.0));
    return std::min(cum, 1.0);
}

void kernel_apply(const SparseKernel& K, const Eigen::VectorXd& v, Eigen::VectorXd& out) {
    out.setZero(v.size());
    long long M = K.states();
    for (long long r = 0; r < M; ++r) {
        double vr = v[r];
        if (vr == 0.0) continue;
        for (long long p = K.row_ptr[r]; p < K.row_ptr[r + 1]; ++p)
            out[K.col[p]] += vr * K.prob[p];
    }
}

std::vector<Eigen::VectorXd> transient_grid(const SparseKernel& K, long long start,
                                            const std::vector<double>& ts, double tol) {
    long long M = K.states();
    std::vector<std::vector<double>> w;
    size_t jmax = 0;
    for (double t : ts) {
        if (t < 0) throw std::domain_error("transient_grid: negative t");
        w.push_back(poisson_weights(t, tol));
        jmax = std::max(jmax, w.back().size());
    }
    std::vector<Eigen::VectorXd> acc(ts.size(), Eigen::VectorXd::Zero(M));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(M), next(M);
    v[start] = 1.0;
    for (size_t j = 0; j < jmax; ++j) {
        for (size_t i = 0; i < ts.size(); ++i)
            if (j < w[i].size() && w[i][j] > 0) acc[i] += w[i][j] * v;
        if (j + 1 < jmax) {
            kernel_apply(K, v, next);
            v.swap(next);
        }
    }
    return acc;
}

Eigen::VectorXd transient_distribution(const SparseKernel& K, long long start, double t,
                                       double tol) {
    return transient_grid(K, start, {t}, tol)[0];
}

// ---------------------------------------------------------------------------
// Full-group walk (n <= 3)

static uint64_t pack_perm(const Perm& p) {
    uint64_t k = 0;
    for (int i = p.size() - 1; i >= 0; --i) k = (k << 4) | static_cast<uint64_t>(p(i));
    return k;
}

Perm unpack_group_element(const GroupWalk& g, long long idx) {
    int n = g.family.n;
    int N = n * n;
    uint64_t k = g.packed[idx];
    std::vector<int32_t> img(N);
    for (int i = 0; i < N; ++i) { img[i] = static_cast<int32_t>(k & 0xF); k >>= 4; }
    return Perm(n, std::move(img));
}

GroupWalk build_group_walk(ShuffleFamily f) {
    if (f.n > 3) throw cap_error("full_group_distribution: n > 3 (cap n<=3)");
    if (f.tag == Family::R) throw std::domain_error("build_group_walk: S0/S only");
    long long G = generator_count(f);
    std::vector<Perm> gens;
    for (long long g = 0; g < G; ++g) gens.push_back(corner_move_perm(f.n, generator_move(f, g)));

    GroupWalk w;
    w.family = f;
    w.gens = static_cast<int>(G);
    std::unordered_map<uint64_t, int32_t> index;
    Perm id = Perm::identity(f.n);
    w.packed.push_back(pack_perm(id));
    index[w.packed[0]] = 0;
    std::vector<Perm> elems{id};
    std::queue<int32_t> q;
    q.push(0);
    while (!q.empty()) {
        int32_t cur = q.front();
        q.pop();
        Perm base = elems[cur];
        for (long long g = 0; g < G; ++g) {
            Perm nxt = compose(base, gens[g]);
            uint64_t key = pack_perm(nxt);
            auto it = index.find(key);
            int32_t di;
            if (it == index.end()) {
                di = static_cast<int32_t>(w.packed.size());
                index[key] = di;
                w.packed.push_back(key);
                elems.push_back(nxt);
                q.push(di);
            } else {
                di = it->second;
            }
            // transition row filled below once indices are stable
        }
    }
    long long order = w.order();
    w.trans.resize(static_cast<size_t>(order) * w.gens);
    for (long long i = 0; i < order; ++i) {
        Perm base = elems[i];
        for (long long g = 0; g < G; ++g)
            w.trans[i * w.gens + g] = index.at(pack_perm(compose(base, gens[g])));
    }
    return w;
}

std::vector<Eigen::VectorXd> group_transient_grid(const GroupWalk& g,
                                                  const std::vector<double>& ts,
                                                  double tol) {
    long long M = g.order();
    std::vector<std::vector<double>> ws(ts.size());
    size_t steps = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        ws[i] = poisson_weights(ts[i], tol);
        steps = std::max(steps, ws[i].size());
    }
    std::vector<Eigen::VectorXd> out(ts.size(), Eigen::VectorXd::Zero(M));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(M), next(M);
    v[0] = 1.0;
    double inv = 1.0 / g.gens;
    for (size_t j = 0; j < steps; ++j) {
        for (size_t i = 0; i < ts.size(); ++i)
            if (j < ws[i].size() && ws[i][j] > 0) out[i] += ws[i][j] * v;
        if (j + 1 < steps) {
            next.setZero();
            for (long long s = 0; s < M; ++s) {
                double vs = v[s];
                if (vs == 0.0) continue;
                const int32_t* row = g.trans.data() + s * g.gens;
                double add = vs * inv;
                for (int x = 0; x < g.gens; ++x) next[row[x]] += add;
            }
            v.swap(next);
        }
    }
    return out;
}

Eigen::VectorXd group_transient(const GroupWalk& g, double t, double tol) {
    long long M = g.order();
    std::vector<double> w = poisson_weights(t, tol);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(M), next(M), acc = Eigen::VectorXd::Zero(M);
    v[0] = 1.0;
    double inv = 1.0 / g.gens;
    for (size_t j = 0; j < w.size(); ++j) {
        if (w[j] > 0) acc += w[j] * v;
        if (j + 1 < w.size()) {
            next.setZero();
            for (long long s = 0; s < M; ++s) {
                double vs = v[s];
                if (vs == 0.0) continue;
                const int32_t* row = g.trans.data() + s * g.gens;
                double add = vs * inv;
                for (int x = 0; x < g.gens; ++x) next[row[x]] += add;
            }
            v.swap(next);
        }
    }
    return acc;
}

Eigen::VectorXd full_group_distribution(ShuffleFamily f, double t, double tol) {
    GroupWalk g = build_group_walk(f);
    return group_transient(g, t, tol);
}

// ---------------------------------------------------------------------------

Perm sample_trajectory(ShuffleFamily f, double t, uint64_t seed) {
    if (t < 0) throw std::domain_error("sample_trajectory: negative t");
    std::mt19937_64 rng = derive_rng(seed, 0);
    std::poisson_distribution<long long> pois(t);
    long long jumps = t == 0 ? 0 : pois(rng);
    Perm cur = Perm::identity(f.n);
    if (f.tag == Family::R) {
        int N = f.n * f.n;
        std::uniform_int_distribution<int> cell(0, N - 1);
        std::uniform_int_distribution<int> orient(0, 1);
        for (long long j = 0; j < jumps; ++j) {
            int a = cell(rng), b, c;
            do { b = cell(rng); } while (b == a);
            do { c = cell(rng); } while (c == a || c == b);
            if (orient(rng)) std::swap(b, c);
            cur = compose(cur, three_cycle_perm(f.n, cell_position(f.n, a),
                                                cell_position(f.n, b), cell_position(f.n, c)));
        }
        return cur;
    }
    long long G = generator_count(f);
    std::uniform_int_distribution<long long> gen(0, G - 1);
    for (long long j = 0; j < jumps; ++j)
        cur = compose(cur, corner_move_perm(f.n, generator_move(f, gen(rng))));
    return cur;
}

std::vector<std::vector<int32_t>> family_symmetries(ShuffleFamily f) {
    int n = f.n, N = n * n;
    auto build = [&](auto&& posmap) {
        std::vector<int32_t> m(N);
        for (int c = 0; c < N; ++c) {
            Position p = cell_position(n, c);
            m[c] = cell_index(n, posmap(p));
        }
        return m;
    };
    std::vector<std::vector<int32_t>> out;
    out.push_back(build([](Position p) { return p; }));
    out.push_back(build([](Position p) { return Position{p.col, p.row}; }));
    if (f.tag != Family::S0) {
        out.push_back(build([n](Position p) { return Position{n + 1 - p.row, n + 1 - p.col}; }));
        out.push_back(build([n](Position p) { return Position{n + 1 - p.col, n + 1 - p.row}; }));
    }
    return out;
}

}  // namespace cornermix
