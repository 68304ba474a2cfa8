#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include "oddarc/arc_algebras.hpp"
#include "oddarc/diagrams.hpp"
#include "oddarc/graded.hpp"
#include "oddarc/integer_matrix.hpp"
#include "oddarc/tqft.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using namespace oddarc;

// Matchings by brute force over all partial involutions: no crossing arcs, no ray under an arc.
inline std::vector<std::vector<int>> brute_force_matchings(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(n, -2);
    std::function<void(int, int)> rec = [&](int i, int arcs) {
        if (i == n) {
            if (arcs == k) out.push_back(p);
            return;
        }
        if (p[i] != -2) {
            rec(i + 1, arcs);
            return;
        }
        p[i] = -1;
        rec(i + 1, arcs);
        for (int j = i + 1; j < n; ++j)
            if (p[j] == -2) {
                p[i] = j;
                p[j] = i;
                rec(i + 1, arcs + 1);
                p[j] = -2;
            }
        p[i] = -2;
    };
    rec(0, 0);
    std::vector<std::vector<int>> valid;
    for (const auto& m : out) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (m[i] <= i) continue;
            for (int j = i + 1; j < m[i] && ok; ++j)
                if (m[j] < 0 || m[j] < i || m[j] > m[i]) ok = false;
        }
        if (ok) valid.push_back(m);
    }
    return valid;
}

inline long long choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Integer leibniz_determinant(const IntegerMatrix& m) {
    std::vector<int> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    Integer total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inversions;
        Integer term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Circles of b-bar t a by graph search; node ids are top points, closed loops, bottom points.
struct TracedCircles {
    std::vector<std::vector<int>> circles;  // sorted node lists, in target order
};

inline std::pair<int, int> tangle_circle_key(const std::vector<int>& c, int m_top, int loops) {
    int v = c.front();
    if (v < m_top) return {0, v};
    if (v < m_top + loops) return {1, v - m_top};
    return {2, v - m_top - loops};
}

inline TracedCircles trace(const FlatTangle& t, const Matching& b, const Matching& a) {
    const int mt = t.m_top(), loops = t.closed(), mb = t.m_bottom();
    const int nodes = mt + loops + mb;
    auto node_of = [&](int e) { return e < mt ? e : mt + loops + (e - mt); };
    std::vector<int> strand(nodes, -1), cap(nodes, -1);
    for (int l = 0; l < loops; ++l) strand[mt + l] = mt + l;
    std::vector<bool> terminal(nodes, false);
    for (int e = 0; e < t.endpoints(); ++e) strand[node_of(e)] = node_of(t.partner(e));
    for (int i = 0; i < mt; ++i) {
        if (b.is_ray(i)) terminal[i] = true;
        else cap[i] = b.partner(i);
    }
    for (int j = 0; j < mb; ++j) {
        int v = mt + loops + j;
        if (a.is_ray(j)) terminal[v] = true;
        else cap[v] = mt + loops + a.partner(j);
    }
    TracedCircles out;
    std::vector<bool> seen(nodes, false);
    for (int s = 0; s < nodes; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = true;
        bool open = false;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            open = open || terminal[v];
            for (int w : {strand[v], cap[v]})
                if (w >= 0 && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        if (open) continue;
        std::sort(comp.begin(), comp.end());
        out.circles.push_back(comp);
    }
    std::sort(out.circles.begin(), out.circles.end(), [&](const auto& x, const auto& y) {
        return tangle_circle_key(x, mt, loops) < tangle_circle_key(y, mt, loops);
    });
    return out;
}

// Image of one basis word under the saddle t -> u on the block (b, a), computed from the traced
// circles and a single merge or split event. Returns false when the saddle touches a path.
inline bool saddle_image(const FlatTangle& t, const FlatTangle& u, const Matching& b, const Matching& a, Word w,
                         GradedElement& out, bool odd) {
    TracedCircles before = trace(t, b, a), after = trace(u, b, a);
    std::vector<int> moved;
    const int mt = t.m_top(), loops = t.closed();
    for (int e = 0; e < t.endpoints(); ++e)
        if (t.partner(e) != u.partner(e)) moved.push_back(e < mt ? e : mt + loops + (e - mt));
    auto holders = [&](const TracedCircles& tc) {
        std::set<int> idx;
        for (int v : moved)
            for (std::size_t c = 0; c < tc.circles.size(); ++c)
                if (std::binary_search(tc.circles[c].begin(), tc.circles[c].end(), v)) idx.insert(static_cast<int>(c));
        return idx;
    };
    std::set<int> hb = holders(before), ha = holders(after);
    auto covers = [&](const TracedCircles& tc, const std::set<int>& idx) {
        std::size_t count = 0;
        for (int v : moved)
            for (int c : idx)
                if (std::binary_search(tc.circles[c].begin(), tc.circles[c].end(), v)) ++count;
        return count == moved.size();
    };
    if (!covers(before, hb) || !covers(after, ha)) return false;
    const int src = static_cast<int>(before.circles.size());
    GradedElement x = GradedElement::basis(src, w);
    std::vector<std::vector<int>> order = before.circles;
    Event e;
    if (hb.size() == 2 && ha.size() == 1) {
        int p = *hb.begin(), q = *hb.rbegin();
        e = Event::merge(p, q);
        order.erase(order.begin() + q);
        order[p] = after.circles[*ha.begin()];
    } else if (hb.size() == 1 && ha.size() == 2) {
        int p = *hb.begin();
        e = Event::split(p, SplitDir::Left);
        auto first = after.circles[*ha.begin()], second = after.circles[*ha.rbegin()];
        if (second.front() < first.front()) std::swap(first, second);
        order[p] = first;
        order.insert(order.begin() + p + 1, second);
    } else {
        return false;
    }
    GradedElement y = odd ? of_apply(e, x) : even_apply(e, x);
    std::vector<int> perm(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        perm[i] = static_cast<int>(std::find(after.circles.begin(), after.circles.end(), order[i]) - after.circles.begin());
    out = permute_factors(y, perm, !odd);
    return true;
}

// All crossingless flat tangles with the given boundary and no closed loops.
inline std::vector<FlatTangle> flat_tangles(int m_bottom, int m_top) {
    std::vector<FlatTangle> out;
    const int m = m_bottom + m_top;
    if (m % 2) return out;
    std::vector<int> p(m, -1);
    std::function<void(int)> rec = [&](int i) {
        while (i < m && p[i] >= 0) ++i;
        if (i == m) {
            try {
                out.emplace_back(m_bottom, m_top, p, 0);
            } catch (const std::invalid_argument&) {
            }
            return;
        }
        for (int j = i + 1; j < m; ++j)
            if (p[j] < 0) {
                p[i] = j;
                p[j] = i;
                rec(i + 1);
                p[i] = p[j] = -1;
            }
    };
    rec(0);
    return out;
}

// Tangles obtained from t by one saddle between two of its strands.
inline std::vector<FlatTangle> saddle_neighbors(const FlatTangle& t) {
    std::vector<FlatTangle> out;
    const int m = t.endpoints();
    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f) {
            int pe = t.partner(e), pf = t.partner(f);
            if (pe < e || pf < f || pe == f) continue;
            for (int variant = 0; variant < 2; ++variant) {
                std::vector<int> p(m);
                for (int g = 0; g < m; ++g) p[g] = t.partner(g);
                int x = e, y = variant ? pf : f, z = pe, w = variant ? f : pf;
                p[x] = y;
                p[y] = x;
                p[z] = w;
                p[w] = z;
                try {
                    FlatTangle u(t.m_bottom(), t.m_top(), p, t.closed());
                    if (u != t) out.push_back(u);
                } catch (const std::invalid_argument&) {
                }
            }
        }
    return out;
}

}  // namespace oracle
