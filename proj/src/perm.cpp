#include "cornermix/perm.hpp"

#include <algorithm>

namespace cornermix {

void check_move(int n, CornerMove m) {
    if (m.i < 1 || m.i > n || m.j < 1 || m.j > n)
        throw std::domain_error("corner move pivot out of range for n=" + std::to_string(n));
}

Perm corner_move_perm(int n, CornerMove m) {
    check_move(n, m);
    Perm p(n);
    std::vector<int32_t> img = p.image();
    if (m.corner == Corner::UL) {
        for (int r = 1; r <= m.i; ++r)
            for (int s = 1; s <= m.j; ++s)
                img[cell_index(n, {r, s})] = cell_index(n, {m.i + 1 - r, m.j + 1 - s});
    } else {
        for (int r = m.i; r <= n; ++r)
            for (int s = m.j; s <= n; ++s)
                img[cell_index(n, {r, s})] = cell_index(n, {n + m.i - r, n + m.j - s});
    }
    return Perm(n, std::move(img));
}

Perm compose(const Perm& p, const Perm& q) {
    if (p.n() != q.n()) throw std::domain_error("compose: mismatched array sizes");
    std::vector<int32_t> img(p.size());
    for (int i = 0; i < p.size(); ++i) img[i] = q(p(i));
    return Perm(p.n(), std::move(img));
}

Perm inverse(const Perm& p) {
    std::vector<int32_t> img(p.size());
    for (int i = 0; i < p.size(); ++i) img[p(i)] = i;
    return Perm(p.n(), std::move(img));
}

int sign(const Perm& p) {
    // (-1)^(n^2 - #cycles)
    int cycles = 0;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = p(j)) seen[j] = 1;
    }
    return ((p.size() - cycles) % 2 == 0) ? 1 : -1;
}

std::vector<int> cycle_type(const Perm& p) {
    std::vector<int> lens;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p(j)) { seen[j] = 1; ++len; }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

bool is_three_cycle(const Perm& p) {
    int moved = 0;
    for (int i = 0; i < p.size(); ++i)
        if (p(i) != i) ++moved;
    if (moved != 3) return false;
    // three moved points form a single cycle automatically
    return true;
}

Perm three_cycle_perm(int n, Position a, Position b, Position c) {
    int ia = cell_index(n, a), ib = cell_index(n, b), ic = cell_index(n, c);
    if (ia == ib || ib == ic || ia == ic)
        throw std::domain_error("three_cycle_perm: cells not distinct");
    Perm p(n);
    std::vector<int32_t> img = p.image();
    img[ia] = ib;
    img[ib] = ic;
    img[ic] = ia;
    return Perm(n, std::move(img));
}

}  // namespace cornermix
