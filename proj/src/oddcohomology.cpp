#include "oddarc/oddcohomology.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oddarc {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

int inversions(const std::vector<int>& v) {
    int inv = 0;
    for (std::size_t p = 0; p < v.size(); ++p)
        for (std::size_t q = p + 1; q < v.size(); ++q)
            if (v[p] > v[q]) ++inv;
    return inv;
}

std::vector<int> bits_of(Word w) {
    std::vector<int> out;
    for (int i = 0; w; ++i, w >>= 1)
        if (w & 1u) out.push_back(i);
    return out;
}

// ascending index sequences compared lexicographically
bool monomial_order(Word a, Word b) {
    auto x = bits_of(a), y = bits_of(b);
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

std::vector<Word> monomials_of_degree(int n, int d) {
    std::vector<Word> out;
    for (Word w = 0; w < (Word(1) << n); ++w)
        if (word_degree(w) == d) out.push_back(w);
    std::sort(out.begin(), out.end(), monomial_order);
    return out;
}

}  // namespace

OddPolynomial OddPolynomial::constant(int n, const Integer& c) {
    OddPolynomial p(n);
    p.add({}, c);
    return p;
}

OddPolynomial OddPolynomial::variable(int n, int i) { return product(n, {i}); }

OddPolynomial OddPolynomial::product(int n, const std::vector<int>& idx, const Integer& c) {
    for (int i : idx)
        if (i < 0 || i >= n) throw std::invalid_argument("odd polynomial: variable index out of range");
    OddPolynomial p(n);
    Monomial m = idx;
    std::sort(m.begin(), m.end());
    p.add(m, inversions(idx) % 2 ? Integer(-c) : c);
    return p;
}

void OddPolynomial::add(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

OddPolynomial OddPolynomial::operator+(const OddPolynomial& o) const {
    OddPolynomial r = *this;
    if (r.n_ == 0) r.n_ = o.n_;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
}

OddPolynomial OddPolynomial::operator-(const OddPolynomial& o) const { return *this + o.scaled(-1); }

OddPolynomial OddPolynomial::operator*(const OddPolynomial& o) const {
    OddPolynomial r(std::max(n_, o.n_));
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) {
            std::vector<int> idx = a;
            idx.insert(idx.end(), b.begin(), b.end());
            r = r + product(r.n_, idx, x * y);
        }
    return r;
}

OddPolynomial OddPolynomial::scaled(const Integer& c) const {
    OddPolynomial r(n_);
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

int OddPolynomial::degree() const {
    if (terms_.empty()) return -1;
    int d = static_cast<int>(terms_.begin()->first.size());
    for (const auto& [m, c] : terms_)
        if (static_cast<int>(m.size()) != d) return -1;
    return d;
}

std::string OddPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<Monomial> ms;
    for (const auto& t : terms_) ms.push_back(t.first);
    std::stable_sort(ms.begin(), ms.end(),
                     [](const Monomial& a, const Monomial& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
    std::ostringstream os;
    bool first = true;
    for (const auto& m : ms) {
        const Integer& c = terms_.at(m);
        if (c < 0) os << (first ? "-" : " - ");
        else if (!first) os << " + ";
        Integer a = abs(c);
        if (m.empty()) {
            os << a;
        } else {
            if (a != 1) os << a << '*';
            for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "." : "") << 'x' << m[i] + 1;
        }
        first = false;
    }
    return os.str();
}

OddPolynomial OddPolynomial::parse(int n, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("polynomial: empty input");
    OddPolynomial p(n);
    std::size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("polynomial: cannot parse '" + text + "'"); };
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
        } else if (pos != 0) {
            fail();
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) fail();
        Integer coeff = 1;
        std::string vars = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
            if (coeff.set_str(term.substr(0, star), 10) != 0) fail();
            vars = term.substr(star + 1);
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            if (coeff.set_str(term, 10) != 0) fail();
            vars.clear();
        }
        std::vector<int> idx;
        std::istringstream vs(vars);
        std::string v;
        while (!vars.empty() && std::getline(vs, v, '.')) {
            if (v.size() < 2 || v[0] != 'x') fail();
            int i = 0;
            try {
                i = std::stoi(v.substr(1));
            } catch (const std::logic_error&) {
                fail();
            }
            if (i < 1 || i > n) fail();
            idx.push_back(i - 1);
        }
        p = p + product(n, idx, coeff * sign);
        pos = end;
    }
    return p;
}

GradedElement OddPolynomial::to_lambda(bool) const {
    GradedElement out(n_);
    for (const auto& [m, c] : terms_) {
        Word w = 0;
        bool square = false;
        for (int i : m) {
            if (w & (Word(1) << i)) square = true;
            w |= Word(1) << i;
        }
        if (!square) out.add(w, c);
    }
    return out;
}

GradedElement lambda_multiply(const GradedElement& a, const GradedElement& b, bool odd) {
    GradedElement out(a.arity());
    for (const auto& [x, c] : a.terms())
        for (const auto& [y, d] : b.terms()) {
            if (x & y) continue;
            int sign = 1;
            if (odd) {
                int inv = 0;
                for (int j : bits_of(y)) inv += word_degree(x >> (j + 1));
                sign = sign_of_parity(inv);
            }
            out.add(x | y, sign * c * d);
        }
    return out;
}

std::vector<TanisakiGenerator> tanisaki_generators(int n, int k, bool odd) {
    std::vector<TanisakiGenerator> out;
    for (int ell = 1; ell <= n - k; ++ell) {
        const int s = k + ell;
        if (s > n) continue;
        const int delta = ell <= n - 2 * k ? k : n - k - ell;
        for (Word set : monomials_of_degree(n, s)) {
            const auto S = bits_of(set);
            // S carries the order induced from the variables; odd slots get a plus sign
            std::vector<int> positive;
            for (std::size_t j = 0; j < S.size(); ++j)
                if (!odd || j % 2 == 0) positive.push_back(S[j]);
            std::vector<int> sign(n, 0);
            for (int i : S) sign[i] = -1;
            for (int i : positive) sign[i] = 1;
            for (int r = 1 + delta; r <= s; ++r) {
                TanisakiGenerator g;
                g.ell = ell;
                g.r = r;
                g.subset = S;
                g.positive = positive;
                g.poly = OddPolynomial(n);
                for (Word rm : monomials_of_degree(s, r)) {
                    std::vector<int> idx;
                    int sg = 1;
                    for (int j : bits_of(rm)) {
                        idx.push_back(S[j]);
                        sg *= sign[S[j]];
                    }
                    g.poly.add(idx, sg);
                }
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

std::vector<SquareCertificate> verify_squares(int n, int k) {
    const auto gens = tanisaki_generators(n, k, true);
    // degree-2 part of OPol_n: monomials (i, j) with i <= j
    std::map<Monomial, std::size_t> index;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) index[{i, j}] = index.size();
    auto vec = [&](const OddPolynomial& p) {
        std::vector<Integer> v(index.size(), Integer(0));
        for (const auto& [m, c] : p.terms()) v[index.at(m)] = c;
        return v;
    };
    struct Spanner {
        Monomial left;
        int generator;
    };
    std::vector<Spanner> spanners;
    LatticeEchelon lat(index.size());
    std::set<std::vector<Integer>> seen;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const int d = gens[g].poly.degree();
        std::vector<Monomial> lefts;
        if (d == 2) lefts.push_back({});
        if (d == 1)
            for (int j = 0; j < n; ++j) lefts.push_back({j});
        for (const auto& m : lefts) {
            auto v = vec(OddPolynomial::product(n, m) * gens[g].poly);
            if (!seen.insert(v).second) continue;
            spanners.push_back({m, static_cast<int>(g)});
            lat.add(v, static_cast<int>(spanners.size() - 1));
        }
    }
    std::vector<SquareCertificate> certs;
    for (int i = 0; i < n; ++i) {
        SquareCertificate c;
        c.i = i;
        OddPolynomial target = OddPolynomial::product(n, {i, i});
        auto combo = lat.express(vec(target));
        if (combo) {
            OddPolynomial check(n);
            for (const auto& [tag, coeff] : *combo) {
                const auto& sp = spanners[tag];
                c.terms.push_back({coeff, sp.left, sp.generator});
                check = check + (OddPolynomial::product(n, sp.left) * gens[sp.generator].poly).scaled(coeff);
            }
            c.verified = check == target;
        }
        certs.push_back(std::move(c));
    }
    return certs;
}

std::vector<Integer> QuotientRing::reduce(const GradedElement& x) const {
    std::vector<Integer> out(basis.size(), Integer(0));
    std::map<Word, Integer> v(x.terms().begin(), x.terms().end());
    for (int d = 0; d <= n; ++d) {
        for (const auto& [p, row] : pivots[d]) {
            auto it = v.find(p);
            if (it == v.end()) continue;
            Integer f = it->second;
            for (const auto& [w, c] : row) {
                Integer& slot = v[w];
                slot -= f * c;
                if (slot == 0) v.erase(w);
            }
        }
    }
    for (const auto& [w, c] : v) {
        auto it = std::lower_bound(basis.begin(), basis.end(), w, monomial_order);
        if (it == basis.end() || *it != w) throw std::logic_error("quotient: reduction left a pivot monomial");
        out[it - basis.begin()] = c;
    }
    return out;
}

std::vector<Integer> QuotientRing::multiply(std::size_t i, std::size_t j) const {
    return reduce(lambda_multiply(GradedElement::basis(n, basis[i]), GradedElement::basis(n, basis[j]), odd));
}

bool QuotientRing::has_torsion() const {
    return std::any_of(torsion.begin(), torsion.end(), [](const auto& t) { return !t.empty(); });
}

std::string QuotientRing::betti_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t d = 0; d < betti.size(); ++d) os << (d ? "," : "") << betti[d];
    os << ']';
    return os.str();
}

std::string monomial_to_string(Word w, int) {
    if (w == 0) return "1";
    std::string s;
    for (int i : bits_of(w)) s += (s.empty() ? "x" : ".x") + std::to_string(i + 1);
    return s;
}

namespace {

using SparseRow = std::map<Word, Integer>;

void reduce_row(SparseRow& v, const std::map<Word, SparseRow>& piv) {
    for (const auto& [p, row] : piv) {
        auto it = v.find(p);
        if (it == v.end()) continue;
        Integer f = it->second;
        for (const auto& [w, c] : row) {
            Integer& slot = v[w];
            slot -= f * c;
            if (slot == 0) v.erase(w);
        }
    }
}

bool try_pivot(SparseRow v, std::map<Word, SparseRow>& piv) {
    // prefer the largest monomial so that the basis keeps the small ones
    Word best = 0;
    bool found = false;
    for (const auto& [w, c] : v)
        if (abs(c) == 1 && (!found || monomial_order(best, w))) {
            best = w;
            found = true;
        }
    if (!found) return false;
    if (v[best] < 0)
        for (auto& [w, c] : v) c = -c;
    for (auto& [p, row] : piv) {
        auto it = row.find(best);
        if (it == row.end()) continue;
        Integer f = it->second;
        for (const auto& [w, c] : v) {
            Integer& slot = row[w];
            slot -= f * c;
            if (slot == 0) row.erase(w);
        }
    }
    piv.emplace(best, std::move(v));
    return true;
}

}  // namespace

QuotientRing tanisaki_quotient(int n, int k, bool odd) {
    QuotientRing q;
    q.n = n;
    q.k = k;
    q.odd = odd;
    q.pivots.resize(n + 1);
    q.torsion.resize(n + 1);
    q.betti.assign(n + 1, 0);
    q.ideal_rank.assign(n + 1, 0);
    std::vector<std::vector<SparseRow>> gens_by_degree(n + 1);
    for (const auto& g : tanisaki_generators(n, k, odd)) {
        GradedElement l = g.poly.to_lambda(odd);
        if (l.is_zero()) continue;
        gens_by_degree[g.r].emplace_back(l.terms().begin(), l.terms().end());
    }
    for (int d = 0; d <= n; ++d) {
        std::vector<SparseRow> incoming = gens_by_degree[d];
        if (d > 0)
            for (const auto& [p, row] : q.pivots[d - 1])
                for (int i = 0; i < n; ++i) {
                    GradedElement r(n);
                    for (const auto& [w, c] : row) r.add(w, c);
                    GradedElement x = lambda_multiply(GradedElement::basis(n, Word(1) << i), r, odd);
                    if (!x.is_zero()) incoming.emplace_back(x.terms().begin(), x.terms().end());
                }
        auto& piv = q.pivots[d];
        std::vector<SparseRow> pending;
        for (auto& v : incoming) {
            reduce_row(v, piv);
            if (v.empty()) continue;
            if (!try_pivot(v, piv)) pending.push_back(std::move(v));
        }
        for (int round = 0; !pending.empty() && round < 2; ++round) {
            bool progress = true;
            while (progress && !pending.empty()) {
                progress = false;
                std::vector<SparseRow> still;
                for (auto& v : pending) {
                    reduce_row(v, piv);
                    if (v.empty()) {
                        progress = true;
                        continue;
                    }
                    if (try_pivot(v, piv)) progress = true;
                    else still.push_back(std::move(v));
                }
                pending.swap(still);
            }
            if (pending.empty() || round == 1) break;
            // combine stuck rows through a Hermite form before retrying
            auto words = monomials_of_degree(n, d);
            IntegerMatrix m(pending.size(), words.size());
            for (std::size_t r = 0; r < pending.size(); ++r)
                for (std::size_t c = 0; c < words.size(); ++c) {
                    auto it = pending[r].find(words[c]);
                    if (it != pending[r].end()) m(r, c) = it->second;
                }
            HermiteForm h = hermite_rows(m);
            pending.clear();
            for (std::size_t r = 0; r < h.pivot_cols.size(); ++r) {
                SparseRow v;
                for (std::size_t c = 0; c < words.size(); ++c)
                    if (h.h(r, c) != 0) v[words[c]] = h.h(r, c);
                pending.push_back(std::move(v));
            }
        }
        if (!pending.empty()) {
            auto words = monomials_of_degree(n, d);
            IntegerMatrix m(piv.size() + pending.size(), words.size());
            std::size_t r = 0;
            for (const auto& [p, row] : piv) {
                for (std::size_t c = 0; c < words.size(); ++c) {
                    auto it = row.find(words[c]);
                    if (it != row.end()) m(r, c) = it->second;
                }
                ++r;
            }
            for (const auto& v : pending) {
                for (std::size_t c = 0; c < words.size(); ++c) {
                    auto it = v.find(words[c]);
                    if (it != v.end()) m(r, c) = it->second;
                }
                ++r;
            }
            for (const auto& f : smith_normal_form(m).invariants)
                if (f != 1) q.torsion[d].push_back(f);
            q.monomial_basis = false;
            q.ideal_rank[d] = piv.size() + pending.size();
        } else {
            q.ideal_rank[d] = piv.size();
        }
        for (Word w : monomials_of_degree(n, d))
            if (!piv.count(w)) q.basis.push_back(w);
        q.betti[d] = static_cast<int>(binomial(n, d) - static_cast<long long>(q.ideal_rank[d]));
    }
    while (q.betti.size() > 1 && q.betti.back() == 0) q.betti.pop_back();
    return q;
}

GradedElement h_a(const Matching& a, Word monomial) {
    GradedElement out(a.k());
    std::vector<int> arcs;
    for (int i : bits_of(monomial)) {
        int arc = a.arc_of(i);
        if (arc < 0) return out;
        arcs.push_back(arc);
    }
    Word w = 0;
    for (int arc : arcs) {
        if (w & (Word(1) << arc)) return out;
        w |= Word(1) << arc;
    }
    out.add(w, sign_of_parity(inversions(arcs)));
    return out;
}

GradedElement h_a(const Matching& a, const OddPolynomial& f) {
    GradedElement out(a.k());
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> arcs;
        bool zero = false;
        for (int i : m) {
            int arc = a.arc_of(i);
            if (arc < 0 || std::find(arcs.begin(), arcs.end(), arc) != arcs.end()) {
                zero = true;
                break;
            }
            arcs.push_back(arc);
        }
        if (zero) continue;
        Word w = 0;
        for (int arc : arcs) w |= Word(1) << arc;
        out.add(w, c * sign_of_parity(inversions(arcs)));
    }
    return out;
}

GradedElement psi(const Matching& top, const Matching& other, Word arcs_word) {
    CircleDiagram d = glue(top, other);
    if (d.empty()) return GradedElement(0);
    GradedElement out(d.num_circles());
    std::vector<int> circles;
    for (int arc : bits_of(arcs_word)) {
        int c = d.circle_of_point[top.arcs()[arc].first];
        if (c < 0 || std::find(circles.begin(), circles.end(), c) != circles.end()) return out;
        circles.push_back(c);
    }
    Word w = 0;
    for (int c : circles) w |= Word(1) << c;
    out.add(w, sign_of_parity(inversions(circles)));
    return out;
}

std::vector<int> SpringerSequence::betti() const {
    std::vector<int> b;
    for (const auto& kmat : kernel) b.push_back(static_cast<int>(kmat.cols()));
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return b;
}

std::string SpringerSequence::betti_string() const {
    std::ostringstream os;
    auto b = betti();
    os << '[';
    for (std::size_t d = 0; d < b.size(); ++d) os << (d ? "," : "") << b[d];
    os << ']';
    return os.str();
}

std::size_t SpringerSequence::domain_index(int degree, int matching, Word w) const {
    const auto& dom = domain[degree];
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (dom[i].first == matching && dom[i].second == w) return i;
    throw std::out_of_range("domain_index: no such coordinate");
}

SpringerSequence springer_sequence(int n, int k) {
    SpringerSequence s;
    s.n = n;
    s.k = k;
    s.matchings = enumerate_matchings(n, k);
    s.order = total_order(s.matchings);
    const int m = static_cast<int>(s.matchings.size());
    std::vector<int> rank_of(m);
    for (int i = 0; i < m; ++i) rank_of[s.order[i]] = i;
    std::vector<CircleDiagram> diag(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) diag[i * m + j] = glue(s.matchings[i], s.matchings[j]);
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y) {
            int b = s.order[x], c = s.order[y];
            if (!diag[b * m + c].empty()) s.pairs.emplace_back(b, c);
        }
    s.domain.resize(k + 1);
    s.codomain.resize(k + 1);
    for (int d = 0; d <= k; ++d) {
        for (int a = 0; a < m; ++a)
            for (Word w : words_in_lex_order(k))
                if (word_degree(w) == d) s.domain[d].emplace_back(a, w);
        for (std::size_t p = 0; p < s.pairs.size(); ++p) {
            int circles = diag[s.pairs[p].first * m + s.pairs[p].second].num_circles();
            for (Word w : words_in_lex_order(circles))
                if (word_degree(w) == d) s.codomain[d].emplace_back(static_cast<int>(p), w);
        }
        IntegerMatrix psi_minus(s.codomain[d].size(), s.domain[d].size());
        std::map<std::pair<int, Word>, std::size_t> cod_index;
        for (std::size_t i = 0; i < s.codomain[d].size(); ++i) cod_index[s.codomain[d][i]] = i;
        for (std::size_t col = 0; col < s.domain[d].size(); ++col) {
            auto [a, w] = s.domain[d][col];
            for (std::size_t p = 0; p < s.pairs.size(); ++p) {
                auto [b, c] = s.pairs[p];
                if (a != b && a != c) continue;
                GradedElement img = a == b ? psi(s.matchings[b], s.matchings[c], w)
                                           : -psi(s.matchings[c], s.matchings[b], w);
                for (const auto& [v, coeff] : img.terms())
                    psi_minus(cod_index.at({static_cast<int>(p), v}), col) += coeff;
            }
        }
        s.kernel.push_back(kernel_basis(psi_minus));
        s.psi_minus.push_back(std::move(psi_minus));
    }
    return s;
}

HisoReport verify_hiso(int n, int k) {
    HisoReport rep;
    const auto gens = tanisaki_generators(n, k, true);
    const auto ms = enumerate_matchings(n, k);
    rep.generators = gens.size();
    rep.generators_killed = true;
    for (const auto& g : gens)
        for (const auto& a : ms)
            if (!h_a(a, g.poly).is_zero()) rep.generators_killed = false;
    const auto certs = verify_squares(n, k);
    rep.squares_certified = std::all_of(certs.begin(), certs.end(), [](const SquareCertificate& c) { return c.verified; });
    const QuotientRing q = tanisaki_quotient(n, k, true);
    rep.torsion_free = !q.has_torsion() && q.monomial_basis;
    const SpringerSequence s = springer_sequence(n, k);
    rep.quotient_betti = q.betti;
    rep.kernel_betti = s.betti();
    rep.ranks_match = rep.quotient_betti == rep.kernel_betti;
    long long total = std::accumulate(rep.quotient_betti.begin(), rep.quotient_betti.end(), 0LL);
    rep.total_rank_ok = total == binomial(n, k) && rep.ranks_match;
    rep.image_in_kernel = true;
    rep.integral_iso = rep.ranks_match;
    for (int d = 0; d <= k && rep.integral_iso; ++d) {
        std::vector<Word> deg_basis;
        for (Word w : q.basis)
            if (word_degree(w) == d) deg_basis.push_back(w);
        IntegerMatrix h(s.domain[d].size(), deg_basis.size());
        for (std::size_t j = 0; j < deg_basis.size(); ++j)
            for (int a = 0; a < static_cast<int>(ms.size()); ++a) {
                const GradedElement img = h_a(ms[a], deg_basis[j]);
                for (const auto& [w, c] : img.terms()) h(s.domain_index(d, a, w), j) += c;
            }
        if (!(s.psi_minus[d] * h).is_zero()) rep.image_in_kernel = false;
        const IntegerMatrix& kern = s.kernel[d];
        if (kern.cols() != deg_basis.size()) {
            rep.integral_iso = false;
            break;
        }
        IntegerMatrix change(kern.cols(), deg_basis.size());
        for (std::size_t j = 0; j < deg_basis.size(); ++j) {
            auto sol = solve_integer(kern, h.column(j));
            if (!sol) {
                rep.integral_iso = false;
                break;
            }
            for (std::size_t i = 0; i < sol->size(); ++i) change(i, j) = (*sol)[i];
        }
        if (rep.integral_iso) rep.integral_iso = abs(determinant(change)) == 1;
    }
    for (int d = k + 1; d <= n; ++d)
        if (d < static_cast<int>(q.betti.size()) && q.betti[d] != 0) rep.ranks_match = false;
    return rep;
}

bool verify_quotient_mod2(int n, int k, std::string* why) {
    const QuotientRing odd = tanisaki_quotient(n, k, true);
    const QuotientRing even = tanisaki_quotient(n, k, false);
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (odd.has_torsion() || even.has_torsion()) return fail("torsion present");
    for (int d = 0; d <= n; ++d) {
        auto words = monomials_of_degree(n, d);
        auto to_matrix = [&](const QuotientRing& q) {
            IntegerMatrix m(q.pivots[d].size(), words.size());
            std::size_t r = 0;
            for (const auto& [p, row] : q.pivots[d]) {
                for (std::size_t c = 0; c < words.size(); ++c) {
                    auto it = row.find(words[c]);
                    if (it != row.end()) m(r, c) = it->second;
                }
                ++r;
            }
            return m;
        };
        IntegerMatrix a = to_matrix(odd), b = to_matrix(even);
        IntegerMatrix both(a.rows() + b.rows(), words.size());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < words.size(); ++c) both(r, c) = a(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < words.size(); ++c) both(a.rows() + r, c) = b(r, c);
        std::size_t ra = rank_mod(a, 2), rb = rank_mod(b, 2), rab = rank_mod(both, 2);
        if (ra != rb || rab != ra) return fail("ideals differ mod 2 in degree " + std::to_string(d));
    }
    if (odd.basis != even.basis) return fail("monomial bases differ");
    for (std::size_t i = 0; i < odd.basis.size(); ++i)
        for (std::size_t j = 0; j < odd.basis.size(); ++j) {
            auto x = odd.multiply(i, j), y = even.multiply(i, j);
            for (std::size_t t = 0; t < x.size(); ++t)
                if ((x[t] - y[t]) % 2 != 0) return fail("structure constants differ mod 2");
        }
    return true;
}

}  // namespace oddarc
