#include "cornermix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace cornermix {

std::string Partition::str() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += '+';
        s += std::to_string(parts[i]);
    }
    return s.empty() ? "0" : s;
}

Partition conjugate(const Partition& p) {
    Partition c;
    if (p.parts.empty()) return c;
    c.parts.assign(p.parts[0], 0);
    for (int part : p.parts)
        for (int j = 0; j < part; ++j) ++c.parts[j];
    return c;
}

namespace {

void emit_partitions(int rem, int maxpart, std::vector<int>& cur,
                     std::vector<Partition>& out) {
    if (rem == 0) {
        out.push_back({cur});
        return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
        cur.push_back(p);
        emit_partitions(rem - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions(int m, int cap) {
    if (m < 0 || m > cap) throw std::domain_error("partitions: m out of range");
    std::vector<Partition> out;
    std::vector<int> cur;
    emit_partitions(m, m, cur, out);
    return out;
}

long long partition_count_pentagonal(int m) {
    if (m < 0) return 0;
    std::vector<long long> p(m + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= m; ++k) {
        for (int j = 1;; ++j) {
            long long g1 = static_cast<long long>(j) * (3 * j - 1) / 2;
            long long g2 = static_cast<long long>(j) * (3 * j + 1) / 2;
            if (g1 > k) break;
            long long s = (j % 2 == 1) ? 1 : -1;
            p[k] += s * p[k - g1];
            if (g2 <= k) p[k] += s * p[k - g2];
        }
    }
    return p[m];
}

long long dimension(const Partition& p) {
    int m = p.m();
    if (m > 25) throw std::domain_error("dimension: m > 25");
    Partition conj = conjugate(p);
    __int128 hooks = 1;
    for (size_t i = 0; i < p.parts.size(); ++i)
        for (int j = 0; j < p.parts[i]; ++j)
            hooks *= p.parts[i] - j + conj.parts[j] - static_cast<int>(i) - 1;
    __int128 fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    return static_cast<long long>(fact / hooks);
}

namespace {

// Beta numbers b_i = lambda_i + (L-1-i); a border strip of size l corresponds
// to lowering one b_i by l into a vacant slot, with sign (-1)^{#b between}.
long long mn_rec(std::vector<int> lam, const std::vector<int>& rho, size_t ri,
                 std::map<std::pair<std::vector<int>, size_t>, long long>& memo) {
    if (ri == rho.size()) return lam.empty() ? 1 : 0;
    auto key = std::make_pair(lam, ri);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int l = rho[ri];
    int L = static_cast<int>(lam.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = lam[i] + (L - 1 - i);
    long long total = 0;
    for (int i = 0; i < L; ++i) {
        int nb = beta[i] - l;
        if (nb < 0) continue;
        bool clash = false;
        int height = 0;
        for (int j = 0; j < L; ++j) {
            if (j == i) continue;
            if (beta[j] == nb) { clash = true; break; }
            if (beta[j] > nb && beta[j] < beta[i]) ++height;
        }
        if (clash) continue;
        std::vector<int> nbeta = beta;
        nbeta[i] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        std::vector<int> nlam;
        for (int j = 0; j < L; ++j) {
            int part = nbeta[j] - (L - 1 - j);
            if (part > 0) nlam.push_back(part);
        }
        long long sub = mn_rec(std::move(nlam), rho, ri + 1, memo);
        total += (height % 2 == 0 ? 1 : -1) * sub;
    }
    memo[key] = total;
    return total;
}

}  // namespace

long long mn_character(const Partition& p, const Partition& cycle_type) {
    if (p.m() != cycle_type.m())
        throw std::domain_error("mn_character: size mismatch");
    std::map<std::pair<std::vector<int>, size_t>, long long> memo;
    return mn_rec(p.parts, cycle_type.parts, 0, memo);
}

Rational ingram_r(const Partition& p) {
    long long m = p.m();
    if (m < 3) throw std::domain_error("ingram_r: needs m >= 3");
    long long s = 0;
    for (size_t i = 0; i < p.parts.size(); ++i)
        for (int j = 0; j < p.parts[i]; ++j) {
            long long c = static_cast<long long>(j) - static_cast<long long>(i);
            s += c * c;
        }
    return Rational(3 * s, m * (m - 1) * (m - 2)) - Rational(3, 2 * (m - 2));
}

CharBound char_bounds(const Partition& p) {
    long long m = p.m();
    if (m < 3) throw std::domain_error("char_bounds: needs m >= 3");
    long long t1 = p.parts.empty() ? 0 : p.parts[0];
    long long t1c = conjugate(p).parts.empty() ? 0 : conjugate(p).parts[0];
    if (2 * t1 >= m) {
        Rational b = Rational(1) - Rational(3 * (t1 - 1) * (m - t1), (m - 1) * (m - 2));
        return {b, "large-t1"};
    }
    return {Rational(std::max(t1, t1c) - 1, m - 2), "small-t1"};
}

std::vector<SpectrumEntry> r_spectrum(int m, int cap) {
    if (m > cap) throw std::domain_error("r_spectrum: m over cap");
    std::vector<SpectrumEntry> out;
    for (const Partition& p : partitions(m))
        out.push_back({p, ingram_r(p), dimension(p)});
    return out;
}

Eigen::MatrixXd r_group_kernel(int m) {
    if (m < 3 || m > 6) throw std::domain_error("r_group_kernel: need 3 <= m <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> id(m);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> cur = id;
    std::map<std::vector<int>, int> index;
    do {
        index[cur] = static_cast<int>(perms.size());
        perms.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    long long G = 2;
    for (int x : {m, m - 1, m - 2}) G *= x;
    G /= 6;  // 2 * C(m,3)
    double w = 1.0 / static_cast<double>(G);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(perms.size(), perms.size());
    for (size_t s = 0; s < perms.size(); ++s) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    if (a == b || b == c || a == c) continue;
                    if (a != std::min({a, b, c})) continue;  // each 3-cycle once
                    std::vector<int> nxt = perms[s];
                    // apply the cycle a -> b -> c -> a after the current state
                    for (int i = 0; i < m; ++i) {
                        int v = perms[s][i];
                        if (v == a) nxt[i] = b;
                        else if (v == b) nxt[i] = c;
                        else if (v == c) nxt[i] = a;
                    }
                    K(static_cast<Eigen::Index>(s), index[nxt]) += w;
                }
    }
    return K;
}

Rational alternating_mean_sign(int n, Family family) {
    if (family == Family::R) return Rational(1);
    ShuffleFamily f{family, n};
    long long G = generator_count(f);
    long long s = 0;
    for (long long g = 0; g < G; ++g)
        s += sign(corner_move_perm(n, generator_move(f, g)));
    return Rational(s, G);
}

double ubl_bound(int n, double t, double c, double lambda2, bool clamp) {
    int m = n * n;
    double acc = std::exp(-2.0 * c * t * (1.0 - lambda2));
    for (const SpectrumEntry& e : r_spectrum(m)) {
        if (static_cast<int>(e.partition.parts.size()) == 1) continue;          // trivial
        if (e.partition.parts[0] == 1) continue;                                // alternating
        double d = static_cast<double>(e.d);
        acc += d * d * std::exp(-2.0 * t * (1.0 - e.r.to_double()));
    }
    double v = 0.5 * std::sqrt(acc);
    return clamp ? std::min(v, 1.0) : v;
}

}  // namespace cornermix
