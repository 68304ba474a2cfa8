#include "oddarc/arc_algebras.hpp"

#include "oddarc/oddcohomology.hpp"
#include "oddarc/tqft.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oddarc {

Flavor parse_flavor(const std::string& text) {
    if (text == "oh") return Flavor::OH;
    if (text == "ok") return Flavor::OK;
    if (text == "even-h") return Flavor::EvenH;
    if (text == "even-k") return Flavor::EvenK;
    throw std::invalid_argument("unknown flavor '" + text + "'");
}

std::string flavor_name(Flavor f) {
    switch (f) {
    case Flavor::OH: return "oh";
    case Flavor::OK: return "ok";
    case Flavor::EvenH: return "even-h";
    case Flavor::EvenK: return "even-k";
    }
    return "?";
}

std::string case_name(SurgeryCase c) {
    switch (c) {
    case SurgeryCase::Merge: return "merge";
    case SurgeryCase::Split: return "split";
    case SurgeryCase::Spawn: return "spawn";
    case SurgeryCase::Retract: return "retract";
    case SurgeryCase::CutReconnect: return "cut-reconnect";
    case SurgeryCase::RayJoin: return "ray-join";
    case SurgeryCase::RayClose: return "ray-close";
    }
    return "?";
}

bool SurgeryPlan::has_pushforward() const {
    return std::any_of(steps.begin(), steps.end(),
                       [](const PlanStep& s) { return s.kind == StepKind::Split || s.kind == StepKind::EtaPush; });
}

std::vector<SurgeryCase> SurgeryPlan::labels() const {
    std::vector<SurgeryCase> out;
    for (const auto& s : steps) out.push_back(s.label);
    return out;
}

GradedElement apply_plan(const SurgeryPlan& plan, const GradedElement& x, bool odd) {
    if (x.arity() != plan.src_arity) throw std::invalid_argument("apply_plan: arity mismatch");
    if (plan.zero || x.is_zero()) return GradedElement(plan.dst_arity);
    GradedElement cur = x;
    for (const auto& s : plan.steps) {
        switch (s.kind) {
        case StepKind::Merge: {
            Event e = Event::merge(s.p, s.q);
            cur = odd ? of_apply(e, cur) : even_apply(e, cur);
            break;
        }
        case StepKind::Split: {
            Event e = Event::split(s.p, SplitDir::Left);
            cur = odd ? of_apply(e, cur) : even_apply(e, cur);
            break;
        }
        case StepKind::EtaPush:
            cur = odd ? geometric_apply(GeomKind::EtaPush, s.p, cur) : even_geometric_apply(GeomKind::EtaPush, s.p, cur);
            break;
        case StepKind::EtaPull:
            cur = odd ? geometric_apply(GeomKind::EtaPull, s.p, cur) : even_geometric_apply(GeomKind::EtaPull, s.p, cur);
            break;
        case StepKind::Identity: break;
        }
        if (cur.is_zero()) return GradedElement(plan.dst_arity);
    }
    return permute_factors(cur, plan.perm, !odd);
}

// ---- engine ----

SurgeryEngine::SurgeryEngine(int nodes, std::vector<std::pair<int, int>> edges, std::vector<Terminal> terminals)
    : nodes_(nodes), edges_(std::move(edges)), terminals_(std::move(terminals)) {
    std::vector<int> incidences(nodes_, 0);
    for (auto [u, v] : edges_) {
        ++incidences.at(u);
        ++incidences.at(v);
    }
    for (const auto& t : terminals_) ++incidences.at(t.node);
    for (int i = 0; i < nodes_; ++i)
        if (incidences[i] != 2) throw std::logic_error("surgery graph: node without two incidences");
}

SurgeryEngine::Components SurgeryEngine::components() const {
    std::vector<int> parent(nodes_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [u, v] : edges_) parent[find(u)] = find(v);
    Components c;
    c.root.resize(nodes_);
    for (int i = 0; i < nodes_; ++i) {
        c.root[i] = find(i);
        c.nodes[c.root[i]].push_back(i);
        c.values[c.root[i]];
    }
    for (const auto& t : terminals_)
        if (t.alive) c.values[c.root[t.node]].push_back(t.value);
    return c;
}

std::vector<std::vector<int>> SurgeryEngine::circles() const {
    Components c = components();
    std::vector<std::vector<int>> out;
    for (const auto& [r, ns] : c.nodes)
        if (c.values.at(r).empty()) out.push_back(ns);
    std::sort(out.begin(), out.end());
    return out;
}

bool SurgeryEngine::consistent() const {
    Components c = components();
    for (const auto& [r, vs] : c.values)
        for (int v : vs)
            if (v != vs.front()) return false;
    return true;
}

void SurgeryEngine::set_order(std::vector<std::vector<int>> order) {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != circles()) throw std::logic_error("surgery: order is not a permutation of the circles");
    order_ = std::move(order);
    plan_ = SurgeryPlan{};
    plan_.src_arity = static_cast<int>(order_.size());
    if (!consistent()) plan_.zero = true;
}

void SurgeryEngine::rewire(const std::vector<std::pair<int, int>>& remove, const std::vector<std::pair<int, int>>& add,
                           const std::vector<int>& drop_terminals, bool ray) {
    std::set<int> touched;
    for (auto [u, v] : remove) touched.insert({u, v});
    for (auto [u, v] : add) touched.insert({u, v});
    for (int t : drop_terminals) touched.insert(terminals_.at(t).node);

    auto affected_circles = [&](const Components& c) {
        std::set<int> roots;
        for (int x : touched) roots.insert(c.root[x]);
        std::vector<std::vector<int>> out;
        bool ok = true;
        for (int r : roots) {
            const auto& vs = c.values.at(r);
            if (vs.empty()) out.push_back(c.nodes.at(r));
            for (int v : vs)
                if (v != vs.front()) ok = false;
        }
        return std::make_pair(out, ok);
    };

    auto before = affected_circles(components());
    for (auto e : remove) {
        auto it = std::find_if(edges_.begin(), edges_.end(), [&](const std::pair<int, int>& f) {
            return f == e || (f.first == e.second && f.second == e.first);
        });
        if (it == edges_.end()) throw std::logic_error("surgery: removing a missing edge");
        edges_.erase(it);
    }
    for (auto e : add) edges_.push_back(e);
    for (int t : drop_terminals) terminals_.at(t).alive = false;
    auto after = affected_circles(components());
    if (!after.second) plan_.zero = true;

    auto position = [&](const std::vector<int>& circle) {
        auto it = std::find(order_.begin(), order_.end(), circle);
        if (it == order_.end()) throw std::logic_error("surgery: lost track of a circle");
        return static_cast<int>(it - order_.begin());
    };
    const auto& cb = before.first;
    const auto& ca = after.first;
    PlanStep step;
    if (cb.size() == 2 && ca.size() == 1) {
        int p = position(cb[0]), q = position(cb[1]);
        if (p > q) std::swap(p, q);
        step = {StepKind::Merge, SurgeryCase::Merge, p, q};
        order_.erase(order_.begin() + q);
        order_[p] = ca[0];
    } else if (cb.size() == 1 && ca.size() == 2) {
        int p = position(cb[0]);
        step = {StepKind::Split, SurgeryCase::Split, p, 0};
        auto first = ca[0], second = ca[1];
        if (second.front() < first.front()) std::swap(first, second);
        order_[p] = first;
        order_.insert(order_.begin() + p + 1, second);
    } else if (cb.empty() && ca.size() == 1) {
        step = {StepKind::EtaPush, ray ? SurgeryCase::RayClose : SurgeryCase::Spawn, static_cast<int>(order_.size()), 0};
        order_.push_back(ca[0]);
    } else if (cb.size() == 1 && ca.empty()) {
        int p = position(cb[0]);
        step = {StepKind::EtaPull, SurgeryCase::Retract, p, 0};
        order_.erase(order_.begin() + p);
    } else if (cb.empty() && ca.empty()) {
        step = {StepKind::Identity, ray ? SurgeryCase::RayJoin : SurgeryCase::CutReconnect, 0, 0};
    } else {
        throw std::logic_error("surgery: unexpected change of circles");
    }
    plan_.steps.push_back(step);
}

SurgeryPlan SurgeryEngine::finish(const KeyFn& key) {
    if (!consistent()) plan_.zero = true;
    auto final_circles = circles();
    std::sort(final_circles.begin(), final_circles.end(),
              [&](const std::vector<int>& x, const std::vector<int>& y) { return key(x) < key(y); });
    plan_.dst_arity = static_cast<int>(final_circles.size());
    if (order_.size() != final_circles.size()) throw std::logic_error("surgery: circle count mismatch");
    plan_.perm.assign(order_.size(), 0);
    for (std::size_t p = 0; p < order_.size(); ++p) {
        auto it = std::find(final_circles.begin(), final_circles.end(), order_[p]);
        if (it == final_circles.end()) throw std::logic_error("surgery: final circle not tracked");
        plan_.perm[p] = static_cast<int>(it - final_circles.begin());
    }
    return plan_;
}

namespace {

// Every step other than a cut-reconnect or ray-join raises 2 * dots - circles by one, so the chain
// preserves the quantum grading exactly when cut-reconnects and ray-closes pair up.
void balance_grading(SurgeryPlan& plan) {
    plan.excess = 0;
    for (const auto& s : plan.steps) {
        if (s.label == SurgeryCase::CutReconnect) ++plan.excess;
        if (s.label == SurgeryCase::RayClose) --plan.excess;
    }
    if (plan.excess != 0) plan.zero = true;
}

// c-bar (b b-bar) a on nodes x_i = i (top) and y_i = n + i (bottom).
SurgeryPlan triple_plan(const Matching& c, const std::vector<int>& vc, const Matching& b, const std::vector<int>& vb,
                        const Matching& a, const std::vector<int>& va) {
    const int n = b.n();
    std::vector<std::pair<int, int>> edges;
    std::vector<SurgeryEngine::Terminal> terms;
    std::vector<int> tx(n, -1), ty(n, -1);
    for (int i = 0; i < n; ++i) {
        if (c.is_ray(i)) terms.push_back({i, vc[i], true});
        else if (c.partner(i) > i) edges.emplace_back(i, c.partner(i));
        if (a.is_ray(i)) terms.push_back({n + i, va[i], true});
        else if (a.partner(i) > i) edges.emplace_back(n + i, n + a.partner(i));
        if (b.is_ray(i)) {
            tx[i] = static_cast<int>(terms.size());
            terms.push_back({i, vb[i], true});
            ty[i] = static_cast<int>(terms.size());
            terms.push_back({n + i, vb[i], true});
        } else if (b.partner(i) > i) {
            edges.emplace_back(i, b.partner(i));
            edges.emplace_back(n + i, n + b.partner(i));
        }
    }
    SurgeryEngine eng(2 * n, edges, terms);
    std::vector<std::vector<int>> top, bottom;
    for (auto& circle : eng.circles()) (circle.front() < n ? top : bottom).push_back(circle);
    top.insert(top.end(), bottom.begin(), bottom.end());
    eng.set_order(top);
    for (int i = 0; i < n; ++i) {
        if (b.is_ray(i)) {
            eng.rewire({}, {{i, n + i}}, {tx[i], ty[i]}, true);
        } else if (b.partner(i) > i) {
            int j = b.partner(i);
            eng.rewire({{i, j}, {n + i, n + j}}, {{i, n + i}, {j, n + j}}, {}, false);
        }
    }
    SurgeryPlan plan = eng.finish([n](const std::vector<int>& nodes) {
        int m = n;
        for (int x : nodes) m = std::min(m, x % n);
        return SurgeryEngine::Key{0, m};
    });
    balance_grading(plan);
    return plan;
}

}  // namespace

std::vector<SurgeryCase> surgery_sequence(const Matching& c, const Matching& b, const Matching& a) {
    if (glue(c, b).empty() || glue(b, a).empty()) throw std::invalid_argument("surgery_sequence: turnback in the input");
    auto v = default_ray_values(b.n());
    return triple_plan(c, v, b, v, a, v).labels();
}

// ---- ledger ----

int SignLedger::sign(int c, int b, int a) const {
    auto it = entries_.find({c, b, a});
    return it == entries_.end() ? 1 : it->second;
}

void SignLedger::set(int c, int b, int a, int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("ledger: sign must be +1 or -1");
    if (s == 1) entries_.erase({c, b, a});
    else entries_[{c, b, a}] = -1;
}

SignLedger SignLedger::parse(const std::string& text, const std::vector<std::string>& labels) {
    SignLedger l;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto lookup = [&](const std::string& tok) {
        auto it = std::find(labels.begin(), labels.end(), tok);
        if (it != labels.end()) return static_cast<int>(it - labels.begin());
        try {
            std::size_t used = 0;
            int i = std::stoi(tok, &used);
            if (used == tok.size() && i >= 1 && i <= static_cast<int>(labels.size())) return i - 1;
        } catch (const std::logic_error&) {
        }
        throw std::invalid_argument("ledger line " + std::to_string(lineno) + ": unknown matching '" + tok + "'");
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 4) throw std::invalid_argument("ledger line " + std::to_string(lineno) + ": expected 'c b a sign'");
        int s = 0;
        if (tok[3] == "+1" || tok[3] == "1") s = 1;
        else if (tok[3] == "-1") s = -1;
        else throw std::invalid_argument("ledger line " + std::to_string(lineno) + ": sign must be +1 or -1");
        l.set(lookup(tok[0]), lookup(tok[1]), lookup(tok[2]), s);
    }
    return l;
}

std::string SignLedger::to_string(const std::vector<std::string>& labels) const {
    std::string out;
    for (const auto& [t, s] : entries_) {
        auto [c, b, a] = t;
        out += labels.at(c) + " " + labels.at(b) + " " + labels.at(a) + " " + (s > 0 ? "+1" : "-1") + "\n";
    }
    return out;
}

// ---- algebra ----

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y, const Integer& s) {
    AlgebraElement out = x;
    for (const auto& [i, c] : y) {
        Integer& slot = out[i];
        slot += s * c;
        if (slot == 0) out.erase(i);
    }
    return out;
}

AlgebraElement reduce_mod2(const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [i, c] : x)
        if (mpz_odd_p(c.get_mpz_t())) out[i] = 1;
    return out;
}

ArcAlgebra ArcAlgebra::build(int n, int k, Flavor flavor, const SignLedger& ledger) {
    if (n < 0 || k < 0 || 2 * k > n || n > 30) throw std::invalid_argument("algebra: need 0 <= 2k <= n");
    ArcAlgebra alg;
    alg.n_ = n;
    alg.k_ = k;
    alg.flavor_ = flavor;
    alg.ledger_ = ledger;
    if (is_weighted(flavor)) {
        for (const auto& w : enumerate_weights(n, k)) {
            alg.matchings_.push_back(matching_from_weight(w));
            alg.ray_values_.push_back(weighted_ray_values(w));
            alg.labels_.push_back(weight_to_string(w));
        }
    } else {
        auto ms = enumerate_matchings(n, k);
        for (int i : total_order(ms)) {
            alg.matchings_.push_back(ms[i]);
            alg.ray_values_.push_back(default_ray_values(n));
            alg.labels_.push_back(ms[i].to_string());
        }
    }
    const int m = static_cast<int>(alg.matchings_.size());
    alg.block_of_.assign(m * m, -1);
    for (int t = 0; t < m; ++t)
        for (int b = 0; b < m; ++b) {
            CircleDiagram d = glue(alg.matchings_[t], alg.matchings_[b], alg.ray_values_[t], alg.ray_values_[b]);
            if (d.empty()) continue;
            Block blk{t, b, d.num_circles(), alg.basis_.size()};
            alg.block_of_[t * m + b] = static_cast<int>(alg.blocks_.size());
            alg.blocks_.push_back(blk);
            for (Word w : words_in_lex_order(blk.circles)) {
                int dots = word_degree(w);
                alg.basis_.push_back({t, b, w, blk.circles, 2 * dots + k - blk.circles, dots});
            }
        }
    const bool odd = is_odd(flavor);
    for (const auto& left : alg.blocks_)
        for (const auto& right : alg.blocks_) {
            if (left.bottom != right.top) continue;
            const int c = left.top, b = left.bottom, a = right.bottom;
            SurgeryPlan plan = triple_plan(alg.matchings_[c], alg.ray_values_[c], alg.matchings_[b], alg.ray_values_[b],
                                           alg.matchings_[a], alg.ray_values_[a]);
            const int target = alg.block_of_[c * m + a];
            if (target < 0 && !plan.zero) throw std::logic_error("algebra: product lands in an empty block");
            const int sign = odd ? ledger.sign(c, b, a) : 1;
            for (std::size_t i = 0; i < (std::size_t(1) << left.circles); ++i)
                for (std::size_t j = 0; j < (std::size_t(1) << right.circles); ++j) {
                    const auto& x = alg.basis_[left.offset + i];
                    const auto& y = alg.basis_[right.offset + j];
                    GradedElement src = GradedElement::basis(plan.src_arity, word_concat(x.dots, left.circles, y.dots));
                    GradedElement img = apply_plan(plan, src, odd);
                    AlgebraElement out;
                    for (const auto& [w, coeff] : img.terms()) out[alg.index_of(c, a, w)] = sign * coeff;
                    if (!out.empty()) alg.products_[{left.offset + i, right.offset + j}] = std::move(out);
                }
            alg.plans_.emplace(std::make_tuple(c, b, a), std::move(plan));
        }
    return alg;
}

int ArcAlgebra::block_index(int top, int bottom) const {
    const int m = static_cast<int>(matchings_.size());
    return block_of_.at(top * m + bottom);
}

std::size_t ArcAlgebra::index_of(int top, int bottom, Word dots) const {
    int b = block_index(top, bottom);
    if (b < 0) throw std::out_of_range("algebra: empty block");
    const Block& blk = blocks_[b];
    // words are stored in lexicographic order
    auto words = words_in_lex_order(blk.circles);
    auto it = std::find(words.begin(), words.end(), dots);
    if (it == words.end()) throw std::out_of_range("algebra: bad dots");
    return blk.offset + (it - words.begin());
}

const SurgeryPlan& ArcAlgebra::plan(int c, int b, int a) const {
    auto it = plans_.find({c, b, a});
    if (it == plans_.end()) throw std::out_of_range("algebra: no surgery plan for this triple");
    return it->second;
}

const AlgebraElement& ArcAlgebra::multiply_basis(std::size_t i, std::size_t j) const {
    auto it = products_.find({i, j});
    return it == products_.end() ? zero_ : it->second;
}

AlgebraElement ArcAlgebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            const auto& p = multiply_basis(i, j);
            if (!p.empty()) out = add(out, p, a * b);
        }
    return out;
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Integer>> ArcAlgebra::structure_constants() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Integer>> out;
    for (const auto& [ij, p] : products_)
        for (const auto& [k, c] : p) out.emplace_back(ij.first, ij.second, k, c);
    return out;
}

std::string ArcAlgebra::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["n"] = n_;
    j["k"] = k_;
    j["flavor"] = flavor_name(flavor_);
    j["basis"] = nlohmann::ordered_json::array();
    for (const auto& e : basis_) {
        nlohmann::ordered_json dots = nlohmann::ordered_json::array();
        for (int p = 0; p < e.circles; ++p)
            if (word_bit(e.dots, p)) dots.push_back(p + 1);
        j["basis"].push_back({{"top", labels_[e.top]}, {"bottom", labels_[e.bottom]}, {"dots", dots}, {"qdeg", e.qdeg}});
    }
    j["constants"] = nlohmann::ordered_json::array();
    for (const auto& [a, b, c, v] : structure_constants()) {
        if (!v.fits_slong_p()) throw std::overflow_error("structure constant does not fit the JSON export");
        j["constants"].push_back({a, b, c, v.get_si()});
    }
    return j.dump();
}

// ---- checks ----

AlgebraCheck check_qgrading(const ArcAlgebra& alg) {
    AlgebraCheck r;
    const auto& B = alg.basis();
    for (const auto& [i, j, k, c] : alg.structure_constants()) {
        ++r.checked;
        if (B[i].qdeg + B[j].qdeg != B[k].qdeg && r.failures.size() < 20)
            r.failures.push_back("q-degree: e" + std::to_string(i) + " * e" + std::to_string(j) + " -> e" +
                                 std::to_string(k));
    }
    return r;
}

AlgebraCheck compare_mod2(const ArcAlgebra& odd, const ArcAlgebra& even) {
    AlgebraCheck r;
    const auto& A = odd.basis();
    const auto& B = even.basis();
    if (A.size() != B.size() || odd.labels() != even.labels()) {
        r.failures.push_back("bases differ");
        return r;
    }
    for (std::size_t i = 0; i < A.size(); ++i)
        if (A[i].top != B[i].top || A[i].bottom != B[i].bottom || A[i].dots != B[i].dots) {
            r.failures.push_back("bases differ at " + std::to_string(i));
            return r;
        }
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            if (A[i].bottom != A[j].top) continue;
            ++r.checked;
            if (reduce_mod2(odd.multiply_basis(i, j)) != reduce_mod2(even.multiply_basis(i, j)) && r.failures.size() < 20)
                r.failures.push_back("mod 2: e" + std::to_string(i) + " * e" + std::to_string(j));
        }
    return r;
}

AssociativityReport check_associativity(const ArcAlgebra& alg) {
    AssociativityReport r;
    const auto& B = alg.basis();
    std::map<int, std::vector<std::size_t>> by_top;
    for (std::size_t i = 0; i < B.size(); ++i) by_top[B[i].top].push_back(i);
    for (std::size_t x = 0; x < B.size(); ++x)
        for (std::size_t y : by_top[B[x].bottom])
            for (std::size_t z : by_top[B[y].bottom]) {
                ++r.triples;
                AlgebraElement left, right;
                for (const auto& [m, c] : alg.multiply_basis(x, y)) left = add(left, alg.multiply_basis(m, z), c);
                for (const auto& [m, c] : alg.multiply_basis(y, z)) right = add(right, alg.multiply_basis(x, m), c);
                if (left.empty() && right.empty()) ++r.zero;
                else if (left == right) ++r.plus;
                else if (left == add({}, right, -1)) ++r.minus;
                else if (r.failures.size() < 20)
                    r.failures.push_back("(e" + std::to_string(x) + " e" + std::to_string(y) + ") e" + std::to_string(z));
            }
    return r;
}

std::vector<std::tuple<int, int, int>> orientation_sensitive_triples(const ArcAlgebra& alg) {
    std::vector<std::tuple<int, int, int>> out;
    const int m = static_cast<int>(alg.matchings().size());
    for (int c = 0; c < m; ++c)
        for (int b = 0; b < m; ++b)
            for (int a = 0; a < m; ++a) {
                if (alg.block_index(c, b) < 0 || alg.block_index(b, a) < 0) continue;
                const auto& p = alg.plan(c, b, a);
                if (!p.zero && p.has_pushforward()) out.emplace_back(c, b, a);
            }
    return out;
}

namespace {

IntegerMatrix stack_rows(const IntegerMatrix& top, const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    IntegerMatrix m(top.rows() + rows.size(), cols);
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(top.rows() + r, c) = rows[r][c];
    return m;
}

IntegerMatrix nonzero_hermite(const IntegerMatrix& m) {
    HermiteForm h = hermite_rows(m);
    IntegerMatrix out(h.pivot_cols.size(), m.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = h.h(r, c);
    return out;
}

}  // namespace

CenterResult odd_center(const ArcAlgebra& alg) {
    CenterResult res;
    const auto& B = alg.basis();
    int max_deg = 0;
    for (const auto& e : B) max_deg = std::max(max_deg, e.hdeg);
    res.degree_basis.resize(max_deg + 1);
    for (std::size_t i = 0; i < B.size(); ++i) res.degree_basis[B[i].hdeg].push_back(i);
    for (int d = 0; d <= max_deg; ++d) {
        const auto& cols = res.degree_basis[d];
        IntegerMatrix acc(0, cols.size());
        std::vector<std::vector<Integer>> pending;
        auto flush = [&]() {
            if (pending.empty()) return;
            acc = nonzero_hermite(stack_rows(acc, pending, cols.size()));
            pending.clear();
        };
        for (std::size_t x = 0; x < B.size(); ++x) {
            // z x - (-1)^{|z||x|} x z for z running over the degree-d basis
            std::map<std::size_t, std::vector<Integer>> rows;
            const int sign = sign_of_parity(static_cast<long long>(d) * B[x].hdeg);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                for (const auto& [o, v] : alg.multiply_basis(cols[c], x)) {
                    auto& row = rows.try_emplace(o, cols.size(), Integer(0)).first->second;
                    row[c] += v;
                }
                for (const auto& [o, v] : alg.multiply_basis(x, cols[c])) {
                    auto& row = rows.try_emplace(o, cols.size(), Integer(0)).first->second;
                    row[c] -= sign * v;
                }
            }
            for (auto& [o, row] : rows)
                if (std::any_of(row.begin(), row.end(), [](const Integer& v) { return v != 0; }))
                    pending.push_back(std::move(row));
            if (pending.size() > 4 * cols.size() + 16) flush();
        }
        flush();
        IntegerMatrix kern = acc.rows() == 0 ? IntegerMatrix::identity(cols.size()) : kernel_basis(acc);
        res.betti.push_back(static_cast<int>(kern.cols()));
        for (std::size_t j = 0; j < kern.cols(); ++j) {
            AlgebraElement z;
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (kern(c, j) != 0) z[cols[c]] = kern(c, j);
            res.elements.push_back(std::move(z));
        }
        res.kernel.push_back(std::move(kern));
    }
    while (res.betti.size() > 1 && res.betti.back() == 0) res.betti.pop_back();
    res.in_diagonal = true;
    for (const auto& z : res.elements)
        for (const auto& [i, c] : z)
            if (B[i].top != B[i].bottom) res.in_diagonal = false;
    // structure constants in the basis of center elements
    res.closed_under_product = true;
    std::vector<int> degree_of;
    std::vector<std::size_t> offset;
    std::size_t off = 0;
    for (std::size_t d = 0; d < res.kernel.size(); ++d) {
        offset.push_back(off);
        for (std::size_t j = 0; j < res.kernel[d].cols(); ++j) degree_of.push_back(static_cast<int>(d));
        off += res.kernel[d].cols();
    }
    for (std::size_t i = 0; i < res.elements.size(); ++i)
        for (std::size_t j = 0; j < res.elements.size(); ++j) {
            AlgebraElement p = alg.multiply(res.elements[i], res.elements[j]);
            if (p.empty()) continue;
            const int d = degree_of[i] + degree_of[j];
            if (d >= static_cast<int>(res.kernel.size())) {
                res.closed_under_product = false;
                continue;
            }
            const auto& cols = res.degree_basis[d];
            std::vector<Integer> v(cols.size(), Integer(0));
            bool outside = false;
            for (const auto& [idx, c] : p) {
                auto it = std::find(cols.begin(), cols.end(), idx);
                if (it == cols.end()) outside = true;
                else v[it - cols.begin()] = c;
            }
            auto sol = outside ? std::nullopt : solve_integer(res.kernel[d], v);
            if (!sol) {
                res.closed_under_product = false;
                continue;
            }
            for (std::size_t t = 0; t < sol->size(); ++t)
                if ((*sol)[t] != 0) res.constants.emplace_back(i, j, offset[d] + t, (*sol)[t]);
        }
    return res;
}

CenterReport verify_center(int n, int k, int random_ledgers, unsigned seed) {
    CenterReport rep;
    ArcAlgebra alg = ArcAlgebra::build(n, k, Flavor::OH);
    CenterResult cen = odd_center(alg);
    rep.betti = cen.betti;
    rep.in_diagonal = cen.in_diagonal;
    rep.rank_ok = static_cast<long long>(cen.rank()) == binomial(n, k);
    if (!cen.closed_under_product) rep.notes.push_back("center not closed under the product");

    // image of ker psi- under H*(T_a) = block (a, a)
    SpringerSequence s = springer_sequence(n, k);
    std::vector<int> to_alg(s.matchings.size());
    for (std::size_t i = 0; i < s.matchings.size(); ++i)
        to_alg[i] = static_cast<int>(std::find(alg.matchings().begin(), alg.matchings().end(), s.matchings[i]) -
                                     alg.matchings().begin());
    std::vector<AlgebraElement> image;
    rep.matches_springer = true;
    for (std::size_t d = 0; d < s.kernel.size(); ++d) {
        const std::vector<std::size_t> cols = d < cen.degree_basis.size() ? cen.degree_basis[d] : std::vector<std::size_t>{};
        IntegerMatrix emb(cols.size(), s.kernel[d].cols());
        for (std::size_t j = 0; j < s.kernel[d].cols(); ++j) {
            AlgebraElement z;
            for (std::size_t r = 0; r < s.domain[d].size(); ++r) {
                if (s.kernel[d](r, j) == 0) continue;
                auto [mi, w] = s.domain[d][r];
                std::size_t idx = alg.index_of(to_alg[mi], to_alg[mi], w);
                z[idx] = s.kernel[d](r, j);
                auto it = std::find(cols.begin(), cols.end(), idx);
                if (it == cols.end()) rep.matches_springer = false;
                else emb(it - cols.begin(), j) = s.kernel[d](r, j);
            }
            image.push_back(std::move(z));
        }
        const IntegerMatrix ck = d < cen.kernel.size() ? cen.kernel[d] : IntegerMatrix(0, 0);
        if (ck.cols() != emb.cols() || !same_rational_span(ck, emb)) rep.matches_springer = false;
    }
    for (std::size_t d = s.kernel.size(); d < cen.kernel.size(); ++d)
        if (cen.kernel[d].cols() != 0) rep.matches_springer = false;

    // products of the image against the componentwise exterior product
    rep.products_match = true;
    auto component = [&](const AlgebraElement& z, int a) {
        GradedElement g(alg.matchings()[a].k());
        for (const auto& [i, c] : z) {
            const auto& e = alg.basis()[i];
            if (e.top == a && e.bottom == a) g.add(e.dots, c);
        }
        return g;
    };
    const int m = static_cast<int>(alg.matchings().size());
    for (const auto& u : image)
        for (const auto& v : image) {
            AlgebraElement expected;
            for (int a = 0; a < m; ++a) {
                const GradedElement prod = lambda_multiply(component(u, a), component(v, a), true);
                for (const auto& [w, c] : prod.terms()) expected[alg.index_of(a, a, w)] = c;
            }
            if (alg.multiply(u, v) != expected) rep.products_match = false;
        }

    rep.ledger_invariant = true;
    const auto sensitive = orientation_sensitive_triples(alg);
    std::mt19937 rng(seed);
    for (int r = 0; r < random_ledgers; ++r) {
        SignLedger l;
        for (const auto& [c, b, a] : sensitive)
            if (rng() & 1u) l.set(c, b, a, -1);
        ArcAlgebra other = ArcAlgebra::build(n, k, Flavor::OH, l);
        CenterResult oc = odd_center(other);
        if (oc.kernel.size() != cen.kernel.size()) {
            rep.ledger_invariant = false;
            continue;
        }
        for (std::size_t d = 0; d < cen.kernel.size(); ++d)
            if (oc.kernel[d].cols() != cen.kernel[d].cols() || !same_rational_span(oc.kernel[d], cen.kernel[d]))
                rep.ledger_invariant = false;
        for (const auto& u : cen.elements)
            for (const auto& v : cen.elements)
                if (other.multiply(u, v) != alg.multiply(u, v)) rep.ledger_invariant = false;
    }
    return rep;
}

// ---- bimodules ----

std::vector<Matching> all_matchings(int m) {
    std::vector<Matching> out;
    for (int k = 0; 2 * k <= m; ++k) {
        auto ms = enumerate_matchings(m, k);
        for (int i : total_order(ms)) out.push_back(ms[i]);
    }
    return out;
}

namespace {

// Node layout of b-bar t a: top points, closed loops of t, bottom points.
struct TangleGraph {
    int m_top = 0;
    int loops = 0;
    int m_bottom = 0;
    int top(int i) const { return i; }
    int loop(int l) const { return m_top + l; }
    int bottom(int j) const { return m_top + loops + j; }
    int nodes() const { return m_top + loops + m_bottom; }
    int endpoint_node(const FlatTangle& t, int e) const { return e < t.m_top() ? top(e) : bottom(e - t.m_top()); }

    SurgeryEngine::Key key(const std::vector<int>& ns) const {
        int c = ns.front();
        if (c < m_top) return {0, c};
        if (c < m_top + loops) return {1, c - m_top};
        return {2, c - m_top - loops};
    }
};

void add_matching_at(const Matching& a, const std::function<int(int)>& node, std::vector<std::pair<int, int>>& edges,
                     std::vector<SurgeryEngine::Terminal>& terms) {
    auto values = default_ray_values(a.n());
    for (int i = 0; i < a.n(); ++i) {
        if (a.is_ray(i)) terms.push_back({node(i), values[i], true});
        else if (a.partner(i) > i) edges.emplace_back(node(i), node(a.partner(i)));
    }
}

SurgeryEngine tangle_engine(const FlatTangle& t, const Matching& b, const Matching& a, TangleGraph& g) {
    g = {t.m_top(), t.closed(), t.m_bottom()};
    std::vector<std::pair<int, int>> edges;
    std::vector<SurgeryEngine::Terminal> terms;
    for (int e = 0; e < t.endpoints(); ++e)
        if (t.partner(e) > e) edges.emplace_back(g.endpoint_node(t, e), g.endpoint_node(t, t.partner(e)));
    for (int l = 0; l < t.closed(); ++l) edges.emplace_back(g.loop(l), g.loop(l));
    add_matching_at(b, [&](int i) { return g.top(i); }, edges, terms);
    add_matching_at(a, [&](int i) { return g.bottom(i); }, edges, terms);
    return SurgeryEngine(g.nodes(), edges, terms);
}

std::vector<std::vector<int>> ordered_circles(const SurgeryEngine& eng, const TangleGraph& g) {
    auto cs = eng.circles();
    std::sort(cs.begin(), cs.end(), [&](const auto& x, const auto& y) { return g.key(x) < g.key(y); });
    return cs;
}

}  // namespace

Bimodule::Bimodule(FlatTangle t) : t_(std::move(t)) {
    top_ = all_matchings(t_.m_top());
    bottom_ = all_matchings(t_.m_bottom());
    for (int b = 0; b < static_cast<int>(top_.size()); ++b)
        for (int a = 0; a < static_cast<int>(bottom_.size()); ++a) {
            TangleGraph g;
            SurgeryEngine eng = tangle_engine(t_, top_[b], bottom_[a], g);
            if (!eng.consistent()) continue;
            BimoduleBlock blk{b, a, static_cast<int>(eng.circles().size()), rank_};
            block_index_[{b, a}] = static_cast<int>(blocks_.size());
            blocks_.push_back(blk);
            rank_ += std::size_t(1) << blk.circles;
        }
}

int Bimodule::block_index(int top, int bottom) const {
    auto it = block_index_.find({top, bottom});
    return it == block_index_.end() ? -1 : it->second;
}

std::size_t Bimodule::index_of(int top, int bottom, Word dots) const {
    int b = block_index(top, bottom);
    if (b < 0) throw std::out_of_range("bimodule: empty block");
    auto words = words_in_lex_order(blocks_[b].circles);
    auto it = std::find(words.begin(), words.end(), dots);
    if (it == words.end()) throw std::out_of_range("bimodule: bad dots");
    return blocks_[b].offset + (it - words.begin());
}

std::pair<int, Word> Bimodule::locate(std::size_t index) const {
    for (int b = static_cast<int>(blocks_.size()) - 1; b >= 0; --b)
        if (blocks_[b].offset <= index) {
            auto words = words_in_lex_order(blocks_[b].circles);
            std::size_t r = index - blocks_[b].offset;
            if (r >= words.size()) break;
            return {b, words[r]};
        }
    throw std::out_of_range("bimodule: index out of range");
}

AlgebraElement convolve(const Bimodule& m2, std::size_t x, const Bimodule& m1, std::size_t y, const Bimodule& target,
                        bool odd) {
    const FlatTangle& t2 = m2.tangle();
    const FlatTangle& t1 = m1.tangle();
    if (t2.m_bottom() != t1.m_top()) throw std::invalid_argument("convolve: boundary mismatch");
    if (target.tangle().m_top() != t2.m_top() || target.tangle().m_bottom() != t1.m_bottom() ||
        target.tangle().closed() != t2.closed() + t1.closed() + (compose(t2, t1).closed() - t2.closed() - t1.closed()))
        throw std::invalid_argument("convolve: target is not the composite tangle");
    auto [bx, wx] = m2.locate(x);
    auto [by, wy] = m1.locate(y);
    const auto& blx = m2.blocks()[bx];
    const auto& bly = m1.blocks()[by];
    if (blx.bottom != bly.top) return {};
    const Matching& c = m2.top_matchings()[blx.top];
    const Matching& b = m2.bottom_matchings()[blx.bottom];
    const Matching& a = m1.bottom_matchings()[bly.bottom];
    const int m3 = t2.m_top(), mid = t2.m_bottom(), m1n = t1.m_bottom();
    const int f2 = t2.closed(), f1 = t1.closed();
    // node layout: C | F2 | U | L | F1 | A
    const int C0 = 0, F20 = m3, U0 = F20 + f2, L0 = U0 + mid, F10 = L0 + mid, A0 = F10 + f1, N = A0 + m1n;
    std::vector<std::pair<int, int>> edges;
    std::vector<SurgeryEngine::Terminal> terms;
    for (int e = 0; e < t2.endpoints(); ++e)
        if (t2.partner(e) > e) {
            auto node = [&](int f) { return f < m3 ? C0 + f : U0 + (f - m3); };
            edges.emplace_back(node(e), node(t2.partner(e)));
        }
    for (int e = 0; e < t1.endpoints(); ++e)
        if (t1.partner(e) > e) {
            auto node = [&](int f) { return f < mid ? L0 + f : A0 + (f - mid); };
            edges.emplace_back(node(e), node(t1.partner(e)));
        }
    for (int l = 0; l < f2; ++l) edges.emplace_back(F20 + l, F20 + l);
    for (int l = 0; l < f1; ++l) edges.emplace_back(F10 + l, F10 + l);
    add_matching_at(c, [&](int i) { return C0 + i; }, edges, terms);
    add_matching_at(a, [&](int i) { return A0 + i; }, edges, terms);
    auto values = default_ray_values(mid);
    std::vector<int> tu(mid, -1), tl(mid, -1);
    for (int i = 0; i < mid; ++i) {
        if (b.is_ray(i)) {
            tu[i] = static_cast<int>(terms.size());
            terms.push_back({U0 + i, values[i], true});
            tl[i] = static_cast<int>(terms.size());
            terms.push_back({L0 + i, values[i], true});
        } else if (b.partner(i) > i) {
            edges.emplace_back(U0 + i, U0 + b.partner(i));
            edges.emplace_back(L0 + i, L0 + b.partner(i));
        }
    }
    SurgeryEngine eng(N, edges, terms);
    auto upper_key = [&](const std::vector<int>& ns) -> SurgeryEngine::Key {
        int v = ns.front();
        if (v < F20) return {0, v - C0};
        if (v < U0) return {1, v - F20};
        return {2, v - U0};
    };
    auto lower_key = [&](const std::vector<int>& ns) -> SurgeryEngine::Key {
        int v = ns.front();
        if (v < F10) return {0, v - L0};
        if (v < A0) return {1, v - F10};
        return {2, v - A0};
    };
    std::vector<std::vector<int>> upper, lower;
    for (auto& circle : eng.circles()) (circle.front() < L0 ? upper : lower).push_back(circle);
    std::sort(upper.begin(), upper.end(), [&](const auto& p, const auto& q) { return upper_key(p) < upper_key(q); });
    std::sort(lower.begin(), lower.end(), [&](const auto& p, const auto& q) { return lower_key(p) < lower_key(q); });
    if (static_cast<int>(upper.size()) != blx.circles || static_cast<int>(lower.size()) != bly.circles)
        throw std::logic_error("convolve: circle count mismatch");
    upper.insert(upper.end(), lower.begin(), lower.end());
    eng.set_order(upper);
    for (int i = 0; i < mid; ++i) {
        if (b.is_ray(i)) {
            eng.rewire({}, {{U0 + i, L0 + i}}, {tu[i], tl[i]}, true);
        } else if (b.partner(i) > i) {
            int j = b.partner(i);
            eng.rewire({{U0 + i, U0 + j}, {L0 + i, L0 + j}}, {{U0 + i, L0 + i}, {U0 + j, L0 + j}}, {}, false);
        }
    }
    SurgeryPlan plan = eng.finish([&](const std::vector<int>& ns) -> SurgeryEngine::Key {
        int v = ns.front();
        if (v < F20) return {0, v};
        if (v < U0) return {1, v - F20};
        if (ns.back() >= A0) {
            int first_a = *std::lower_bound(ns.begin(), ns.end(), A0);
            return {4, first_a - A0};
        }
        int first_f1 = -1;
        for (int u : ns)
            if (u >= F10 && u < A0) first_f1 = u;
        if (first_f1 >= 0) return {3, first_f1 - F10};
        int point = mid;
        for (int u : ns) point = std::min(point, u < L0 ? u - U0 : u - L0);
        return {2, point};
    });
    balance_grading(plan);
    const int tb = target.block_index(blx.top, bly.bottom);
    if (tb < 0) {
        if (!plan.zero) throw std::logic_error("convolve: product lands in an empty block");
        return {};
    }
    GradedElement src = GradedElement::basis(plan.src_arity, word_concat(wx, blx.circles, wy));
    AlgebraElement out;
    const GradedElement img = apply_plan(plan, src, odd);
    for (const auto& [w, coeff] : img.terms()) out[target.index_of(blx.top, bly.bottom, w)] = coeff;
    return out;
}

IntegerMatrix surgery_map(const Bimodule& source, const Bimodule& target, bool odd) {
    const FlatTangle& t = source.tangle();
    const FlatTangle& u = target.tangle();
    if (t.m_top() != u.m_top() || t.m_bottom() != u.m_bottom() || t.closed() != u.closed())
        throw std::invalid_argument("surgery_map: tangles have different boundaries or loop counts");
    std::vector<int> moved;
    for (int e = 0; e < t.endpoints(); ++e)
        if (t.partner(e) != u.partner(e)) moved.push_back(e);
    if (moved.size() != 4) throw std::invalid_argument("surgery_map: tangles are not related by one saddle");
    IntegerMatrix m(target.rank(), source.rank());
    for (const auto& blk : source.blocks()) {
        TangleGraph g;
        SurgeryEngine eng = tangle_engine(t, source.top_matchings()[blk.top], source.bottom_matchings()[blk.bottom], g);
        eng.set_order(ordered_circles(eng, g));
        std::vector<std::pair<int, int>> remove, add;
        for (int e : moved) {
            if (t.partner(e) > e) remove.emplace_back(g.endpoint_node(t, e), g.endpoint_node(t, t.partner(e)));
            if (u.partner(e) > e) add.emplace_back(g.endpoint_node(u, e), g.endpoint_node(u, u.partner(e)));
        }
        eng.rewire(remove, add, {}, false);
        SurgeryPlan plan = eng.finish([&](const std::vector<int>& ns) { return g.key(ns); });
        const int tb = target.block_index(blk.top, blk.bottom);
        if (tb < 0) {
            if (!plan.zero) throw std::logic_error("surgery_map: image in an empty block");
            continue;
        }
        auto words = words_in_lex_order(blk.circles);
        for (std::size_t r = 0; r < words.size(); ++r) {
            GradedElement img = apply_plan(plan, GradedElement::basis(blk.circles, words[r]), odd);
            for (const auto& [w, c] : img.terms()) m(target.index_of(blk.top, blk.bottom, w), blk.offset + r) = c;
        }
    }
    return m;
}

AlgebraCheck check_identity_bimodule(int n) {
    AlgebraCheck r;
    Bimodule M(FlatTangle::identity(n));
    const auto& ms = M.top_matchings();
    std::size_t covered = 0;
    for (int k = 0; 2 * k <= n; ++k) {
        ArcAlgebra alg = ArcAlgebra::build(n, k, Flavor::OH);
        std::vector<int> to_m;
        for (const auto& a : alg.matchings())
            to_m.push_back(static_cast<int>(std::find(ms.begin(), ms.end(), a) - ms.begin()));
        std::vector<std::size_t> idx;
        for (const auto& e : alg.basis()) idx.push_back(M.index_of(to_m[e.top], to_m[e.bottom], e.dots));
        covered += idx.size();
        const auto& B = alg.basis();
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                if (B[i].bottom != B[j].top) continue;
                ++r.checked;
                AlgebraElement expected;
                for (const auto& [o, c] : alg.multiply_basis(i, j)) expected[idx[o]] = c;
                if (convolve(M, idx[i], M, idx[j], M) != expected && r.failures.size() < 20)
                    r.failures.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": e" + std::to_string(i) +
                                         " * e" + std::to_string(j));
            }
    }
    if (covered != M.rank()) r.failures.push_back("OF(id) has blocks outside the arc algebras");
    return r;
}

}  // namespace oddarc
