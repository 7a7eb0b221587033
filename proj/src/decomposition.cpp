#include "cornermix/decomposition.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "cornermix/parallel.hpp"

namespace cornermix {

Perm word_product(int n, const std::vector<CornerMove>& moves) {
    Perm p = Perm::identity(n);
    for (const CornerMove& m : moves) p = compose(p, corner_move_perm(n, m));
    return p;
}

const char* decomp_case_name(DecompCase c) {
    switch (c) {
        case DecompCase::Z: return "Z";
        case DecompCase::W: return "W";
        case DecompCase::FiveW: return "5W";
        case DecompCase::Split: return "split";
        case DecompCase::Bfs: return "bfs";
    }
    return "?";
}

namespace {

inline CornerMove ul(int i, int j) { return {Corner::UL, i, j}; }

std::vector<CornerMove> x_moves(int /*n*/, int i, int j) {
    if (i >= 3) return {ul(i, j), ul(i - 1, j), ul(i - 2, j), ul(i - 1, j)};
    return {ul(i, j)};
}

// Case split: general for i,j >= 3, Y = X when only i >= 3,
// the four-X form when only j >= 3, and the bare rotation when i,j < 3.
std::vector<CornerMove> y_moves(int n, int i, int j) {
    auto append = [](std::vector<CornerMove>& w, const std::vector<CornerMove>& x) {
        w.insert(w.end(), x.begin(), x.end());
    };
    if (i >= 3 && j < 3) return x_moves(n, i, j);
    if (j >= 3 || (i >= 3 && j >= 3)) {
        std::vector<CornerMove> w;
        append(w, x_moves(n, i, j));
        append(w, x_moves(n, i, j - 1));
        append(w, x_moves(n, i, j - 2));
        append(w, x_moves(n, i, j - 1));
        return w;
    }
    return {ul(i, j)};
}

}  // namespace

MoveWord build_X(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::domain_error("build_X: pivot out of range");
    MoveWord w;
    w.n = n;
    w.moves = x_moves(n, i, j);
    w.target = word_product(n, w.moves);
    return w;
}

Perm y_claimed_target(int n, int i, int j) {
    if (i < 2 || j < 2) throw std::domain_error("y_claimed_target: needs i,j >= 2");
    Perm p(n);
    std::vector<int32_t> img = p.image();
    std::swap(img[cell_index(n, {i, j})], img[cell_index(n, {1, 1})]);
    std::swap(img[cell_index(n, {i, 1})], img[cell_index(n, {1, j})]);
    return Perm(n, std::move(img));
}

MoveWord build_Y(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::domain_error("build_Y: pivot out of range");
    MoveWord w;
    w.n = n;
    w.moves = y_moves(n, i, j);
    w.target = word_product(n, w.moves);
    if (i >= 2 && j >= 2 && !(w.target == y_claimed_target(n, i, j)))
        throw std::logic_error("build_Y: product differs from claimed double transposition");
    return w;
}

namespace {

// Per-n cache of verified Y words and of Z words (Z is the workhorse of the
// exhaustive comparison scans).
struct WordCache {
    int n;
    std::vector<MoveWord> y;                       // n*n entries
    std::mutex z_mu;
    std::unordered_map<int, MoveWord> z;           // keyed by pair of cells
    explicit WordCache(int nn) : n(nn), y(static_cast<size_t>(nn) * nn) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                y[cell_index(n, {i, j})] = build_Y(n, i, j);
    }
    const MoveWord& Y(Position p) const { return y[cell_index(n, p)]; }
};

WordCache& word_cache(int n) {
    static std::mutex mu;
    static std::unordered_map<int, WordCache*> caches;
    std::lock_guard<std::mutex> lock(mu);
    auto it = caches.find(n);
    if (it == caches.end()) it = caches.emplace(n, new WordCache(n)).first;
    return *it->second;
}

void check_z_args(int n, Position p1, Position p2) {
    Position T{1, 1};
    if (p1 == T || p2 == T) throw std::domain_error("build_Z: cell equals the top element");
    if (p1.row == p2.row || p1.col == p2.col)
        throw std::domain_error("build_Z: cells share a row or column");
    if (p1.row > n || p2.row > n || p1.col > n || p2.col > n || p1.row < 1 || p2.row < 1 ||
        p1.col < 1 || p2.col < 1)
        throw std::domain_error("build_Z: cell out of range");
}

MoveWord z_word(WordCache& wc, Position p1, Position p2) {
    int n = wc.n;
    int key = cell_index(n, p1) * n * n + cell_index(n, p2);
    {
        std::lock_guard<std::mutex> lock(wc.z_mu);
        auto it = wc.z.find(key);
        if (it != wc.z.end()) return it->second;
    }
    const MoveWord &y1 = wc.Y(p1), &y2 = wc.Y(p2);
    MoveWord w;
    w.n = n;
    w.moves.reserve(2 * (y1.moves.size() + y2.moves.size()));
    for (const auto* part : {&y1, &y2, &y1, &y2})
        w.moves.insert(w.moves.end(), part->moves.begin(), part->moves.end());
    w.target = compose(compose(y1.target, y2.target), compose(y1.target, y2.target));
    if (!(w.target == three_cycle_perm(n, {1, 1}, p2, p1)))
        throw std::logic_error("build_Z: product is not the expected three-cycle");
    std::lock_guard<std::mutex> lock(wc.z_mu);
    wc.z.emplace(key, w);
    return w;
}

MoveWord concat_words(const std::vector<const MoveWord*>& parts) {
    MoveWord w;
    w.n = parts.front()->n;
    size_t len = 0;
    for (auto* p : parts) len += p->moves.size();
    w.moves.reserve(len);
    w.target = Perm::identity(w.n);
    for (auto* p : parts) {
        w.moves.insert(w.moves.end(), p->moves.begin(), p->moves.end());
        w.target = compose(w.target, p->target);
    }
    return w;
}

void check_w_args(int n, Position p1, Position p2, Position p3) {
    Position T{1, 1};
    for (Position p : {p1, p2, p3})
        if (p == T) throw std::domain_error("build_W: cell equals the top element");
    if (p1.row == p2.row || p1.row == p3.row || p2.row == p3.row || p1.col == p2.col ||
        p1.col == p3.col || p2.col == p3.col)
        throw std::domain_error("build_W: cells share a row or column");
    (void)n;
}

MoveWord w_word(WordCache& wc, Position p1, Position p2, Position p3) {
    MoveWord z1 = z_word(wc, p1, p2);
    MoveWord z2 = z_word(wc, p2, p3);
    MoveWord w = concat_words({&z1, &z2});
    if (!(w.target == three_cycle_perm(wc.n, p1, p3, p2)))
        throw std::logic_error("build_W: product is not the expected three-cycle");
    return w;
}

}  // namespace

MoveWord build_Z(int n, Position p1, Position p2) {
    check_z_args(n, p1, p2);
    return z_word(word_cache(n), p1, p2);
}

MoveWord build_W(int n, Position p1, Position p2, Position p3) {
    check_w_args(n, p1, p2, p3);
    return w_word(word_cache(n), p1, p2, p3);
}

// ---------------------------------------------------------------------------
// General three-cycle decomposition

namespace {

constexpr Position kTop{1, 1};

struct Cycle3 {
    Position a, b, c;  // a -> b -> c -> a
};

Cycle3 extract_cycle(int n, const Perm& p) {
    if (!is_three_cycle(p)) throw std::domain_error("decompose_three_cycle: not a three-cycle");
    int first = -1;
    for (int i = 0; i < p.size(); ++i)
        if (p(i) != i) { first = i; break; }
    int second = p(first), third = p(second);
    return {cell_position(n, first), cell_position(n, second), cell_position(n, third)};
}

bool distinct_rows_cols(Position a, Position b, Position c) {
    return a.row != b.row && a.row != c.row && b.row != c.row && a.col != b.col &&
           a.col != c.col && b.col != c.col;
}

bool contains_top(const Cycle3& cy) {
    return cy.a == kTop || cy.b == kTop || cy.c == kTop;
}

// Z/W for cycles with pairwise distinct rows and columns.
std::optional<MoveWord> direct_word(WordCache& wc, const Cycle3& cy, const Perm& target) {
    if (!distinct_rows_cols(cy.a, cy.b, cy.c)) return std::nullopt;
    int n = wc.n;
    if (contains_top(cy)) {
        std::vector<Position> others;
        for (Position p : {cy.a, cy.b, cy.c})
            if (!(p == kTop)) others.push_back(p);
        for (auto [p1, p2] : {std::pair{others[0], others[1]}, std::pair{others[1], others[0]}}) {
            MoveWord w = z_word(wc, p1, p2);
            if (w.target == target) return w;
        }
        throw std::logic_error("direct_word: no Z orientation matched");
    }
    // W(p1,p2,p3) realizes p1 -> p3 -> p2, so (a, c, b) realizes a -> b -> c.
    MoveWord w = w_word(wc, cy.a, cy.c, cy.b);
    if (w.target == target) return w;
    throw std::logic_error("direct_word: W orientation mismatch");
    (void)n;
}

// Taxicab-6 neighborhood scan, row-major, for helper cells with rows and
// columns distinct from all cycle cells; the top element is excluded (it
// cannot appear in a W).
std::vector<Position> helper_candidates(int n, const std::vector<Position>& cells) {
    std::vector<Position> out;
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            Position h{x, y};
            if (h == kTop) continue;
            bool near = false, clash = false;
            for (Position p : cells) {
                if (std::abs(x - p.row) + std::abs(y - p.col) <= 6) near = true;
                if (x == p.row || y == p.col) clash = true;
            }
            if (near && !clash) out.push_back(h);
        }
    return out;
}

std::optional<MoveWord> five_w(WordCache& wc, const Cycle3& cy, const Perm& target) {
    int n = wc.n;
    if (contains_top(cy)) return std::nullopt;
    auto cand = helper_candidates(n, {cy.a, cy.b, cy.c});
    for (Position d : cand) {
        for (Position e : cand) {
            if (d.row == e.row || d.col == e.col) continue;
            // orientation: the five-factor product with (a,b,c) gives a->c->b,
            // so target a->b->c uses (a, c, b)
            for (auto [p, q, r] : {std::tuple{cy.a, cy.c, cy.b}, std::tuple{cy.a, cy.b, cy.c}}) {
                MoveWord wa = w_word(wc, p, d, e);
                MoveWord wb = w_word(wc, q, d, e);
                MoveWord wr = w_word(wc, r, d, e);
                MoveWord w = concat_words({&wa, &wb, &wr, &wa, &wb});
                if (w.target == target && w.length() <= 640) return w;
            }
            // first valid helper pair decides; deeper scanning is pointless
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Two-factor split (p q r) = (p q e)(p e r), recursing on both factors.
std::optional<MoveWord> split_word(WordCache& wc, const Cycle3& cy, const Perm& target,
                                   int depth) {
    int n = wc.n;
    auto attempt = [&](const Cycle3& c2, const Perm& t2,
                       int d) -> std::optional<MoveWord> {
        if (auto w = direct_word(wc, c2, t2)) return w;
        if (d == 0) return std::nullopt;
        return split_word(wc, c2, t2, d);
    };
    Cycle3 rots[3] = {{cy.a, cy.b, cy.c}, {cy.b, cy.c, cy.a}, {cy.c, cy.a, cy.b}};
    for (const Cycle3& rot : rots) {
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y) {
                Position e{x, y};
                if (e == kTop || e == rot.a || e == rot.b || e == rot.c) continue;
                bool near = std::abs(x - rot.a.row) + std::abs(y - rot.a.col) <= 6 ||
                            std::abs(x - rot.b.row) + std::abs(y - rot.b.col) <= 6 ||
                            std::abs(x - rot.c.row) + std::abs(y - rot.c.col) <= 6;
                if (!near) continue;
                Cycle3 f1{rot.a, rot.b, e};
                Cycle3 f2{rot.a, e, rot.c};
                Perm t1 = three_cycle_perm(n, f1.a, f1.b, f1.c);
                Perm t2 = three_cycle_perm(n, f2.a, f2.b, f2.c);
                auto w1 = attempt(f1, t1, depth - 1);
                if (!w1) continue;
                auto w2 = attempt(f2, t2, depth - 1);
                if (!w2) continue;
                MoveWord w = concat_words({&*w1, &*w2});
                if (w.length() > 640) continue;
                if (!(w.target == target)) throw std::logic_error("split_word: bad product");
                return w;
            }
    }
    return std::nullopt;
}

// Shortest-word fallback for n <= 3, where taxicab helpers may not exist:
// breadth-first search over the group generated by the UL moves.
struct BfsTable {
    GroupWalk walk;
    std::vector<int32_t> parent;
    std::vector<int16_t> via;
    std::unordered_map<uint64_t, int32_t> index;
};

uint64_t pack_small(const Perm& p) {
    uint64_t k = 0;
    for (int i = p.size() - 1; i >= 0; --i) k = (k << 4) | static_cast<uint64_t>(p(i));
    return k;
}

BfsTable& bfs_table(int n) {
    static std::mutex mu;
    static std::unordered_map<int, BfsTable*> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(n);
    if (it != tables.end()) return *it->second;
    auto* tb = new BfsTable;
    tb->walk = build_group_walk({Family::S0, n});
    long long M = tb->walk.order();
    for (long long i = 0; i < M; ++i) tb->index[tb->walk.packed[i]] = static_cast<int32_t>(i);
    tb->parent.assign(M, -1);
    tb->via.assign(M, -1);
    std::vector<int32_t> frontier{0};
    tb->parent[0] = 0;
    while (!frontier.empty()) {
        std::vector<int32_t> next;
        for (int32_t s : frontier) {
            const int32_t* row = tb->walk.trans.data() + static_cast<long long>(s) * tb->walk.gens;
            for (int g = 0; g < tb->walk.gens; ++g) {
                int32_t d = row[g];
                if (tb->parent[d] < 0) {
                    tb->parent[d] = s;
                    tb->via[d] = static_cast<int16_t>(g);
                    next.push_back(d);
                }
            }
        }
        frontier.swap(next);
    }
    tables.emplace(n, tb);
    return *tb;
}

std::optional<MoveWord> bfs_word(int n, const Perm& target) {
    BfsTable& tb = bfs_table(n);
    auto it = tb.index.find(pack_small(target));
    if (it == tb.index.end()) return std::nullopt;
    std::vector<CornerMove> rev;
    for (int32_t s = it->second; s != 0; s = tb.parent[s])
        rev.push_back(generator_move(tb.walk.family, tb.via[s]));
    std::reverse(rev.begin(), rev.end());
    MoveWord w;
    w.n = n;
    w.moves = std::move(rev);
    w.target = word_product(n, w.moves);
    if (!(w.target == target)) throw std::logic_error("bfs_word: bad product");
    return w;
}

}  // namespace

Decomposition decompose_three_cycle(int n, const Perm& c) {
    WordCache& wc = word_cache(n);
    Cycle3 cy = extract_cycle(n, c);
    if (auto w = direct_word(wc, cy, c))
        return {*w, contains_top(cy) ? DecompCase::Z : DecompCase::W};
    if (auto w = five_w(wc, cy, c)) return {*w, DecompCase::FiveW};
    if (auto w = split_word(wc, cy, c, 2)) return {*w, DecompCase::Split};
    if (n <= 3) {
        if (auto w = bfs_word(n, c)) return {*w, DecompCase::Bfs};
    }
    throw std::domain_error("decompose_three_cycle: no valid helper points at n=" +
                            std::to_string(n));
}

// ---------------------------------------------------------------------------
// Comparison constant

ComparisonReport comparison_constant(int n, Family family, long long exhaustive_cap) {
    if (n > exhaustive_cap)
        throw cap_error("comparison_constant: exhaustive mode capped at n=" +
                        std::to_string(exhaustive_cap));
    word_cache(n);  // warm the shared cache before the parallel scan
    int N = n * n;
    long long a1 = family == Family::S0 ? N : 2LL * N;
    long long a2 = static_cast<long long>(N) * (N - 1) * (N - 2) / 3;

    ComparisonReport rep;
    rep.n = n;
    rep.family = family;
    rep.total_cycles = a2;

    // enumerate unordered triples x both orientations, in fixed chunks with a
    // deterministic merge
    std::vector<std::array<int, 3>> triples;
    for (int x = 0; x < N; ++x)
        for (int y = x + 1; y < N; ++y)
            for (int z = y + 1; z < N; ++z) triples.push_back({x, y, z});

    struct Tally {
        std::vector<long long> weighted;   // sum |pi| N(sigma,pi) per UL generator
        std::vector<long long> support_a3; // #{pi in A3 : N(sigma,pi)>0}
        std::map<int, long long> hist;
        std::map<std::string, long long> cases;
        long long a3 = 0;
        int max_len = 0;
        std::vector<std::string> failures;
    };
    const size_t nchunks = 64;
    std::vector<Tally> tallies(nchunks);
    for (auto& t : tallies) {
        t.weighted.assign(N, 0);
        t.support_a3.assign(N, 0);
    }

    parallel_for(nchunks, [&](size_t chunk) {
        Tally& t = tallies[chunk];
        std::vector<int> occur(N);
        for (size_t ti = chunk; ti < triples.size(); ti += nchunks) {
            auto [x, y, z] = triples[ti];
            Position a = cell_position(n, x), b = cell_position(n, y), c = cell_position(n, z);
            for (int orient = 0; orient < 2; ++orient) {
                Perm cyc = orient == 0 ? three_cycle_perm(n, a, b, c)
                                       : three_cycle_perm(n, a, c, b);
                bool in_a3 = distinct_rows_cols(a, b, c);
                Decomposition d;
                try {
                    d = decompose_three_cycle(n, cyc);
                } catch (const std::exception& e) {
                    t.failures.push_back(e.what());
                    continue;
                }
                int len = d.word.length();
                t.max_len = std::max(t.max_len, len);
                ++t.hist[len];
                ++t.cases[decomp_case_name(d.kind)];
                if (in_a3) ++t.a3;
                std::fill(occur.begin(), occur.end(), 0);
                for (const CornerMove& m : d.word.moves)
                    ++occur[(m.i - 1) * n + (m.j - 1)];
                for (int g = 0; g < N; ++g) {
                    if (!occur[g]) continue;
                    t.weighted[g] += static_cast<long long>(len) * occur[g];
                    if (in_a3) ++t.support_a3[g];
                }
            }
        }
    });

    std::vector<long long> weighted(N, 0), support(N, 0);
    for (const Tally& t : tallies) {
        for (int g = 0; g < N; ++g) {
            weighted[g] += t.weighted[g];
            support[g] += t.support_a3[g];
        }
        for (auto& [l, cnt] : t.hist) rep.length_histogram[l] += cnt;
        for (auto& [k, cnt] : t.cases) rep.case_counts[k] += cnt;
        rep.a3_count += t.a3;
        rep.max_word_length = std::max(rep.max_word_length, t.max_len);
        rep.failures.insert(rep.failures.end(), t.failures.begin(), t.failures.end());
    }
    rep.max_sum = *std::max_element(weighted.begin(), weighted.end());
    rep.max_support_a3 = *std::max_element(support.begin(), support.end());
    rep.B = Rational(a1, a2) * Rational(rep.max_sum);
    return rep;
}

}  // namespace cornermix
