#include "oddarc/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace oddarc {

Matching::Matching(int n, std::vector<int> partner) : n_(n), partner_(std::move(partner)) {
    if (static_cast<int>(partner_.size()) != n_) throw std::invalid_argument("matching: wrong size");
    arc_of_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) {
        int j = partner_[i];
        if (j < 0) {
            rays_.push_back(i);
            continue;
        }
        if (j >= n_ || j == i || partner_[j] != i) throw std::invalid_argument("matching: partner not symmetric");
        if (i < j) arcs_.emplace_back(i, j);
    }
    // arcs must not cross, and no ray may sit under an arc
    for (const auto& [i, j] : arcs_) {
        for (int r = i + 1; r < j; ++r) {
            if (partner_[r] < 0) throw std::invalid_argument("matching: ray nested under an arc");
            if (partner_[r] < i || partner_[r] > j) throw std::invalid_argument("matching: crossing arcs");
        }
    }
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        arc_of_[arcs_[a].first] = static_cast<int>(a);
        arc_of_[arcs_[a].second] = static_cast<int>(a);
    }
}

Matching Matching::parse(const std::string& text) {
    const int n = static_cast<int>(text.size());
    std::vector<int> partner(n, -1);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
        switch (text[i]) {
        case '(': stack.push_back(i); break;
        case ')':
            if (stack.empty()) throw std::invalid_argument("matching: unbalanced ')' in " + text);
            partner[i] = stack.back();
            partner[stack.back()] = i;
            stack.pop_back();
            break;
        case '|':
            if (!stack.empty()) throw std::invalid_argument("matching: ray nested under an arc in " + text);
            break;
        default: throw std::invalid_argument("matching: unexpected character in " + text);
        }
    }
    if (!stack.empty()) throw std::invalid_argument("matching: unbalanced '(' in " + text);
    return Matching(n, partner);
}

std::string Matching::to_string() const {
    std::string s(n_, '|');
    for (const auto& [i, j] : arcs_) {
        s[i] = '(';
        s[j] = ')';
    }
    return s;
}

bool Matching::operator<(const Matching& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return arcs_ < o.arcs_;
}

std::vector<Matching> enumerate_matchings(int n, int k) {
    std::vector<Matching> out;
    if (n < 0 || k < 0 || 2 * k > n) return out;
    std::string cur;
    std::function<void(int, int, int)> rec = [&](int opened, int depth, int rays) {
        if (static_cast<int>(cur.size()) == n) {
            if (depth == 0) out.push_back(Matching::parse(cur));
            return;
        }
        if (opened < k) {
            cur.push_back('(');
            rec(opened + 1, depth + 1, rays);
            cur.pop_back();
        }
        if (depth > 0) {
            cur.push_back(')');
            rec(opened, depth - 1, rays);
            cur.pop_back();
        }
        if (depth == 0 && rays < n - 2 * k) {
            cur.push_back('|');
            rec(opened, depth, rays + 1);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> default_ray_values(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = ((i + 1) % 2 == 0) ? 1 : -1;
    return v;
}

Weight parse_weight(const std::string& text) {
    Weight w;
    for (char c : text) {
        if (c == 'v' || c == 'V') w.push_back(true);
        else if (c == '^') w.push_back(false);
        else throw std::invalid_argument("weight: unexpected character in " + text);
    }
    return w;
}

std::string weight_to_string(const Weight& w) {
    std::string s;
    for (bool d : w) s += d ? 'v' : '^';
    return s;
}

Matching matching_from_weight(const Weight& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> partner(n, -1), downs;
    for (int i = 0; i < n; ++i) {
        if (w[i]) {
            downs.push_back(i);
        } else if (!downs.empty()) {
            partner[i] = downs.back();
            partner[downs.back()] = i;
            downs.pop_back();
        }
    }
    return Matching(n, partner);
}

bool is_valid_weighted(const Matching& a, const Weight& w) {
    if (static_cast<int>(w.size()) != a.n()) return false;
    for (const auto& [i, j] : a.arcs())
        if (!w[i] || w[j]) return false;
    bool seen_down_ray = false;
    for (int r : a.rays()) {
        if (w[r]) seen_down_ray = true;
        else if (seen_down_ray) return false;
    }
    return true;
}

std::vector<int> weighted_ray_values(const Weight& w) {
    std::vector<int> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = ((i + 1 + (w[i] ? 1 : 0)) % 2 == 0) ? 1 : -1;
    return v;
}

std::vector<Weight> enumerate_weights(int n, int k) {
    std::vector<Weight> out;
    if (k < 0 || k > n) return out;
    Weight w(n, false);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            if (left == 0) out.push_back(w);
            return;
        }
        if (left > 0) {
            w[pos] = true;
            rec(pos + 1, left - 1);
            w[pos] = false;
        }
        if (n - pos - 1 >= left) rec(pos + 1, left);
    };
    rec(0, k);
    return out;
}

bool CircleDiagram::empty() const {
    return std::any_of(paths.begin(), paths.end(), [](const Component& c) { return !c.consistent; });
}

CircleDiagram glue(const Matching& top, const Matching& bottom,
                   const std::vector<int>& top_values, const std::vector<int>& bottom_values) {
    const int n = top.n();
    if (bottom.n() != n) throw std::invalid_argument("glue: size mismatch");
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < n; ++i) {
        if (!top.is_ray(i)) parent[find(i)] = find(top.partner(i));
        if (!bottom.is_ray(i)) parent[find(i)] = find(bottom.partner(i));
    }
    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<Component> comps;
    for (auto& g : groups) {
        if (g.empty()) continue;
        Component c;
        c.points = g;
        std::vector<int> ends;
        for (int i : g) {
            if (top.is_ray(i)) ends.push_back(top_values[i]);
            if (bottom.is_ray(i)) ends.push_back(bottom_values[i]);
        }
        c.circle = ends.empty();
        if (!c.circle) {
            c.value = ends.front();
            c.consistent = std::all_of(ends.begin(), ends.end(), [&](int v) { return v == ends.front(); });
        }
        comps.push_back(std::move(c));
    }
    std::sort(comps.begin(), comps.end(),
              [](const Component& x, const Component& y) { return x.points.front() < y.points.front(); });
    CircleDiagram d;
    d.circle_of_point.assign(n, -1);
    for (auto& c : comps) {
        if (c.circle) {
            for (int i : c.points) d.circle_of_point[i] = static_cast<int>(d.circles.size());
            d.circles.push_back(std::move(c));
        } else {
            d.paths.push_back(std::move(c));
        }
    }
    return d;
}

CircleDiagram glue(const Matching& top, const Matching& bottom) {
    return glue(top, bottom, default_ray_values(top.n()), default_ray_values(bottom.n()));
}

namespace {

bool same_except(const std::vector<int>& x, const std::vector<int>& y, std::initializer_list<int> skip) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::find(skip.begin(), skip.end(), static_cast<int>(i)) != skip.end()) continue;
        if (x[i] != y[i]) return false;
    }
    return true;
}

std::vector<int> partners(const Matching& m) {
    std::vector<int> p(m.n());
    for (int i = 0; i < m.n(); ++i) p[i] = m.partner(i);
    return p;
}

}  // namespace

bool arrow(const Matching& a, const Matching& b) {
    if (a.n() != b.n() || a.k() != b.k()) return false;
    const auto pa = partners(a), pb = partners(b);
    for (const auto& [i, j] : a.arcs()) {
        for (const auto& [r, s] : a.arcs()) {
            if (!(j < r)) continue;
            if (pb[i] == s && pb[j] == r && same_except(pa, pb, {i, j, r, s})) return true;
        }
    }
    for (int i : a.rays()) {
        for (const auto& [j, l] : a.arcs()) {
            if (!(i < j)) continue;
            if (pb[i] == j && pb[l] == -1 && same_except(pa, pb, {i, j, l})) return true;
        }
    }
    return false;
}

std::vector<std::vector<bool>> precedes(const std::vector<Matching>& ms) {
    const std::size_t m = ms.size();
    std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
    std::vector<std::vector<int>> out(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && arrow(ms[i], ms[j])) out[i].push_back(static_cast<int>(j));
    for (std::size_t s = 0; s < m; ++s) {
        std::queue<int> q;
        q.push(static_cast<int>(s));
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : out[u])
                if (!reach[s][v]) {
                    reach[s][v] = true;
                    q.push(v);
                }
        }
    }
    return reach;
}

std::vector<int> total_order(const std::vector<Matching>& ms) {
    const auto reach = precedes(ms);
    const std::size_t m = ms.size();
    std::vector<int> order;
    std::vector<bool> placed(m, false);
    while (order.size() < m) {
        bool progressed = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (placed[i]) continue;
            bool minimal = true;
            for (std::size_t j = 0; j < m; ++j)
                if (!placed[j] && j != i && reach[j][i]) minimal = false;
            if (minimal) {
                placed[i] = true;
                order.push_back(static_cast<int>(i));
                progressed = true;
                break;
            }
        }
        if (!progressed) throw std::logic_error("total_order: arrow relation has a cycle");
    }
    return order;
}

std::vector<int> CellStructure::count_by_dimension() const {
    std::vector<int> counts(labels.size() + 1, 0);
    for (const auto& c : cells) ++counts[c.dimension];
    return counts;
}

CellStructure cells(const Matching& a) {
    CellStructure cs;
    const auto& arcs = a.arcs();
    const int k = a.k();
    for (int v = 0; v < k; ++v) {
        int parent = -1;
        for (int w = 0; w < k; ++w) {
            if (w == v) continue;
            bool contains = arcs[w].first < arcs[v].first && arcs[v].second < arcs[w].second;
            if (contains && (parent < 0 || arcs[w].first > arcs[parent].first)) parent = w;
        }
        CellLabel l;
        if (parent < 0) {
            l.is_root = true;
            l.outer = v;
        } else {
            l.outer = parent;
            l.inner = v;
        }
        cs.labels.push_back(l);
    }
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Cell c;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) c.labels.push_back(i);
        c.dimension = k - static_cast<int>(c.labels.size());
        cs.cells.push_back(c);
    }
    return cs;
}

bool in_cell(const Matching& a, const CellStructure& cs, const Cell& cell,
             const std::vector<int>& angle, int steps_per_turn) {
    const auto values = default_ray_values(a.n());
    for (std::size_t li = 0; li < cs.labels.size(); ++li) {
        const CellLabel& l = cs.labels[li];
        bool in_j = std::find(cell.labels.begin(), cell.labels.end(), static_cast<int>(li)) != cell.labels.end();
        bool equal;
        if (l.is_root) {
            int left = a.arcs()[l.outer].first;
            int target = values[left] > 0 ? 0 : steps_per_turn / 2;
            equal = angle[l.outer] == target;
        } else {
            equal = angle[l.outer] == angle[l.inner];
        }
        if (equal != in_j) return false;
    }
    return true;
}

}  // namespace oddarc

namespace oddarc {

namespace {

// position of an endpoint when walking around the boundary rectangle
int boundary_position(int m_top, int m_bottom, int e) {
    return e < m_top ? e : m_top + (m_bottom - 1 - (e - m_top));
}

}  // namespace

FlatTangle::FlatTangle(int m_bottom, int m_top, std::vector<int> partner, int closed)
    : m_bottom_(m_bottom), m_top_(m_top), partner_(std::move(partner)), closed_(closed) {
    const int m = m_bottom + m_top;
    if (m_bottom < 0 || m_top < 0 || closed < 0 || static_cast<int>(partner_.size()) != m)
        throw std::invalid_argument("tangle: bad sizes");
    for (int e = 0; e < m; ++e) {
        int f = partner_[e];
        if (f < 0 || f >= m || f == e || partner_[f] != e) throw std::invalid_argument("tangle: endpoints must be paired");
    }
    for (int e = 0; e < m; ++e)
        for (int g = 0; g < m; ++g) {
            int f = partner_[e], h = partner_[g];
            int pe = boundary_position(m_top, m_bottom, e), pf = boundary_position(m_top, m_bottom, f);
            int pg = boundary_position(m_top, m_bottom, g), ph = boundary_position(m_top, m_bottom, h);
            if (pe < pg && pg < pf && pf < ph) throw std::invalid_argument("tangle: strands cross");
        }
}

FlatTangle FlatTangle::parse(const std::string& text) {
    auto colon = text.find(':');
    auto gt = text.find('>');
    if (colon == std::string::npos || gt == std::string::npos || gt > colon)
        throw std::invalid_argument("tangle: expected 'm_bottom>m_top:...'");
    int mb = 0, mt = 0, closed = 0;
    try {
        mb = std::stoi(text.substr(0, gt));
        mt = std::stoi(text.substr(gt + 1, colon - gt - 1));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("tangle: bad endpoint counts");
    }
    if (mb < 0 || mt < 0 || mb + mt > 64) throw std::invalid_argument("tangle: bad endpoint counts");
    std::vector<int> partner(mb + mt, -1);
    std::string body = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto semi = body.find(';', pos);
        std::string item = body.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        pos = semi == std::string::npos ? body.size() + 1 : semi + 1;
        if (item.empty()) continue;
        try {
            if (item.rfind("o=", 0) == 0) {
                closed = std::stoi(item.substr(2));
                continue;
            }
            auto dash = item.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("");
            int i = std::stoi(item.substr(0, dash)) - 1;
            int j = std::stoi(item.substr(dash + 1)) - 1;
            if (i < 0 || j < 0 || i >= mb + mt || j >= mb + mt || partner[i] >= 0 || partner[j] >= 0)
                throw std::invalid_argument("");
            partner[i] = j;
            partner[j] = i;
        } catch (const std::logic_error&) {
            throw std::invalid_argument("tangle: bad item '" + item + "'");
        }
    }
    return FlatTangle(mb, mt, partner, closed);
}

std::string FlatTangle::to_string() const {
    std::string s = std::to_string(m_bottom_) + ">" + std::to_string(m_top_) + ":";
    for (int e = 0; e < endpoints(); ++e)
        if (partner_[e] > e) s += std::to_string(e + 1) + "-" + std::to_string(partner_[e] + 1) + ";";
    return s + "o=" + std::to_string(closed_);
}

FlatTangle FlatTangle::identity(int n) {
    std::vector<int> p(2 * n);
    for (int i = 0; i < n; ++i) {
        p[i] = n + i;
        p[n + i] = i;
    }
    return FlatTangle(n, n, p);
}

FlatTangle FlatTangle::cup(int m, int i) {
    if (i < 0 || i > m) throw std::invalid_argument("tangle: cup position out of range");
    const int top = m + 2;
    std::vector<int> p(top + m);
    p[i] = i + 1;
    p[i + 1] = i;
    for (int j = 0; j < m; ++j) {
        int t = j < i ? j : j + 2;
        p[t] = top + j;
        p[top + j] = t;
    }
    return FlatTangle(m, top, p);
}

FlatTangle FlatTangle::cap(int m, int i) {
    if (i < 0 || i > m) throw std::invalid_argument("tangle: cap position out of range");
    const int bottom = m + 2;
    std::vector<int> p(m + bottom);
    p[m + i] = m + i + 1;
    p[m + i + 1] = m + i;
    for (int j = 0; j < m; ++j) {
        int b = m + (j < i ? j : j + 2);
        p[j] = b;
        p[b] = j;
    }
    return FlatTangle(bottom, m, p);
}

FlatTangle compose(const FlatTangle& t2, const FlatTangle& t1) {
    if (t2.m_bottom() != t1.m_top()) throw std::invalid_argument("compose: boundary mismatch");
    const int m3 = t2.m_top(), m2 = t2.m_bottom(), m1 = t1.m_bottom();
    // global ids: t2 endpoints first, then t1 endpoints
    const int off = t2.endpoints();
    auto is_middle = [&](int g) { return g < off ? g >= m3 : g - off < m2; };
    auto glued = [&](int g) { return g < off ? off + (g - m3) : m3 + (g - off); };
    auto partner = [&](int g) { return g < off ? t2.partner(g) : off + t1.partner(g - off); };
    auto outer_index = [&](int g) { return g < off ? g : m3 + (g - off - m2); };
    std::vector<int> result(m3 + m1, -1);
    std::vector<bool> seen(off + t1.endpoints(), false);
    std::vector<int> outer;
    for (int i = 0; i < m3; ++i) outer.push_back(i);
    for (int j = 0; j < m1; ++j) outer.push_back(off + m2 + j);
    for (int start : outer) {
        if (seen[start]) continue;
        int g = start;
        seen[g] = true;
        g = partner(g);
        while (is_middle(g)) {
            seen[g] = true;
            g = glued(g);
            seen[g] = true;
            g = partner(g);
        }
        seen[g] = true;
        result[outer_index(start)] = outer_index(g);
        result[outer_index(g)] = outer_index(start);
    }
    int loops = 0;
    for (int g = m3; g < m3 + m2; ++g) {
        if (seen[g]) continue;
        ++loops;
        int h = g;
        do {
            seen[h] = true;
            h = glued(h);
            seen[h] = true;
            h = partner(h);
        } while (h != g);
    }
    return FlatTangle(m1, m3, result, t2.closed() + loops + t1.closed());
}

}  // namespace oddarc
