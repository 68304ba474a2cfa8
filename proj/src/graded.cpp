#include "oddarc/graded.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace oddarc {

Word word_insert(Word w, int p, int bit) {
    Word low = w & ((Word(1) << p) - 1);
    Word high = (w >> p) << (p + 1);
    return low | high | (static_cast<Word>(bit & 1) << p);
}

Word word_erase(Word w, int p) {
    Word low = w & ((Word(1) << p) - 1);
    Word high = (w >> (p + 1)) << p;
    return low | high;
}

Word word_concat(Word left, int left_len, Word right) { return left | (right << left_len); }

bool word_lex_less(Word a, Word b, int len) {
    for (int p = 0; p < len; ++p) {
        int x = word_bit(a, p), y = word_bit(b, p);
        if (x != y) return x < y;
    }
    return false;
}

std::vector<Word> words_in_lex_order(int len) {
    std::vector<Word> out(std::size_t(1) << len);
    for (Word w = 0; w < out.size(); ++w) out[w] = w;
    std::sort(out.begin(), out.end(), [len](Word a, Word b) { return word_lex_less(a, b, len); });
    return out;
}

std::string word_to_string(Word w, int len) {
    std::string s;
    for (int p = 0; p < len; ++p) s += word_bit(w, p) ? '-' : '+';
    return s;
}

Word word_from_string(const std::string& s) {
    Word w = 0;
    for (std::size_t p = 0; p < s.size(); ++p) {
        if (s[p] == '-' || s[p] == '1') w |= Word(1) << p;
        else if (s[p] != '+' && s[p] != '0') throw std::invalid_argument("bad word: " + s);
    }
    return w;
}

GradedElement GradedElement::basis(int arity, Word w) {
    GradedElement e(arity);
    e.add(w, 1);
    return e;
}

Integer GradedElement::coefficient(Word w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Integer(0) : it->second;
}

void GradedElement::add(Word w, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (o.arity_ != arity_ && !o.terms_.empty()) {
        if (terms_.empty()) arity_ = o.arity_;
        else throw std::invalid_argument("GradedElement: arity mismatch");
    }
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

GradedElement GradedElement::operator-() const { return scaled(-1); }

GradedElement GradedElement::scaled(const Integer& c) const {
    GradedElement out(arity_);
    if (c == 0) return out;
    for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
    return out;
}

int GradedElement::degree() const {
    if (terms_.empty()) return -1;
    int d = word_degree(terms_.begin()->first);
    for (const auto& [w, c] : terms_)
        if (word_degree(w) != d) return -1;
    return d;
}

std::string GradedElement::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<Word> ws;
    for (const auto& t : terms_) ws.push_back(t.first);
    std::sort(ws.begin(), ws.end(), [this](Word a, Word b) { return word_lex_less(a, b, arity_); });
    std::ostringstream os;
    bool first = true;
    for (Word w : ws) {
        const Integer& c = terms_.at(w);
        if (c < 0) os << (first ? "-" : " - ");
        else if (!first) os << " + ";
        Integer a = abs(c);
        if (a != 1) os << a << '*';
        os << '[' << word_to_string(w, arity_) << ']';
        first = false;
    }
    return os.str();
}

GradedLinearMap::GradedLinearMap(int src, int dst, int degree)
    : src_(src), dst_(dst), degree_(degree), m_(std::size_t(1) << dst, std::size_t(1) << src) {}

GradedLinearMap GradedLinearMap::identity(int arity) {
    GradedLinearMap f(arity, arity, 0);
    for (Word w = 0; w < (Word(1) << arity); ++w) f.m_(w, w) = 1;
    return f;
}

GradedLinearMap GradedLinearMap::from_table(int src, int dst, int degree,
                                            const std::vector<GradedElement>& images) {
    if (images.size() != (std::size_t(1) << src)) throw std::invalid_argument("from_table: wrong image count");
    GradedLinearMap f(src, dst, degree);
    for (Word w = 0; w < images.size(); ++w)
        for (const auto& [v, c] : images[w].terms()) f.m_(v, w) = c;
    return f;
}

GradedElement GradedLinearMap::apply(const GradedElement& x) const {
    if (x.arity() != src_ && !x.is_zero()) throw std::invalid_argument("apply: arity mismatch");
    GradedElement out(dst_);
    for (const auto& [w, c] : x.terms())
        for (Word v = 0; v < m_.rows(); ++v)
            if (m_(v, w) != 0) out.add(v, m_(v, w) * c);
    return out;
}

GradedLinearMap GradedLinearMap::scaled(const Integer& c) const {
    GradedLinearMap f = *this;
    f.m_ = m_.scaled(c);
    return f;
}

bool GradedLinearMap::is_homogeneous() const {
    for (Word v = 0; v < m_.rows(); ++v)
        for (Word w = 0; w < m_.cols(); ++w)
            if (m_(v, w) != 0 && word_degree(v) != word_degree(w) + degree_) return false;
    return true;
}

GradedLinearMap compose(const GradedLinearMap& g, const GradedLinearMap& f) {
    if (g.src() != f.dst()) throw std::invalid_argument("compose: arity mismatch");
    GradedLinearMap h(f.src(), g.dst(), f.degree() + g.degree());
    IntegerMatrix prod = g.matrix() * f.matrix();
    for (Word v = 0; v < prod.rows(); ++v)
        for (Word w = 0; w < prod.cols(); ++w) h.at(v, w) = prod(v, w);
    return h;
}

namespace {

GradedLinearMap tensor_impl(const GradedLinearMap& f, const GradedLinearMap& g, bool koszul) {
    GradedLinearMap h(f.src() + g.src(), f.dst() + g.dst(), f.degree() + g.degree());
    const Word fs = Word(1) << f.src(), gs = Word(1) << g.src();
    const Word fd = Word(1) << f.dst(), gd = Word(1) << g.dst();
    for (Word m = 0; m < fs; ++m)
        for (Word n = 0; n < gs; ++n) {
            int sign = koszul ? sign_of_parity(static_cast<long long>(g.degree()) * word_degree(m)) : 1;
            Word in = word_concat(m, f.src(), n);
            for (Word a = 0; a < fd; ++a) {
                if (f.at(a, m) == 0) continue;
                for (Word b = 0; b < gd; ++b) {
                    if (g.at(b, n) == 0) continue;
                    h.at(word_concat(a, f.dst(), b), in) = sign * f.at(a, m) * g.at(b, n);
                }
            }
        }
    return h;
}

GradedLinearMap swap_impl(int a, int b, bool koszul) {
    GradedLinearMap t(a + b, a + b, 0);
    for (Word m = 0; m < (Word(1) << a); ++m)
        for (Word n = 0; n < (Word(1) << b); ++n) {
            int sign = koszul ? sign_of_parity(word_degree(m) * word_degree(n)) : 1;
            t.at(word_concat(n, b, m), word_concat(m, a, n)) = sign;
        }
    return t;
}

}  // namespace

GradedLinearMap koszul_tensor(const GradedLinearMap& f, const GradedLinearMap& g) { return tensor_impl(f, g, true); }
GradedLinearMap plain_tensor(const GradedLinearMap& f, const GradedLinearMap& g) { return tensor_impl(f, g, false); }
GradedLinearMap tau(int a, int b) { return swap_impl(a, b, true); }
GradedLinearMap plain_swap(int a, int b) { return swap_impl(a, b, false); }

GradedElement permute_factors(const GradedElement& x, const std::vector<int>& perm, bool plain) {
    const int m = x.arity();
    if (static_cast<int>(perm.size()) != m) throw std::invalid_argument("permute_factors: size mismatch");
    GradedElement out(m);
    for (const auto& [w, c] : x.terms()) {
        Word v = 0;
        int inversions = 0;
        for (int p = 0; p < m; ++p) {
            if (!word_bit(w, p)) continue;
            v |= Word(1) << perm[p];
            for (int q = p + 1; q < m; ++q)
                if (word_bit(w, q) && perm[q] < perm[p]) ++inversions;
        }
        out.add(v, plain ? c : c * sign_of_parity(inversions));
    }
    return out;
}

GradedElement reduce_mod(const GradedElement& x, unsigned long p) {
    GradedElement out(x.arity());
    Integer pp(p);
    for (const auto& [w, c] : x.terms()) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
        out.add(w, r);
    }
    return out;
}

}  // namespace oddarc
