#pragma once

#include "oddarc/integer_matrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oddarc {

// Basis words of A^{(x)m}, A = Z v+ (+) Z v-, with v- of degree 1.
// Bit p of the code is tensor factor p (1 = v-). Codes are limited to 30 factors.
using Word = std::uint32_t;

inline int word_bit(Word w, int p) { return static_cast<int>((w >> p) & 1u); }
inline int word_degree(Word w) { return __builtin_popcount(w); }
// number of v- strictly before position p
inline int degree_before(Word w, int p) { return __builtin_popcount(w & ((Word(1) << p) - 1)); }
Word word_insert(Word w, int p, int bit);
Word word_erase(Word w, int p);
Word word_concat(Word left, int left_len, Word right);
// lexicographic comparison on tensor positions with v+ < v-
bool word_lex_less(Word a, Word b, int len);
std::vector<Word> words_in_lex_order(int len);
std::string word_to_string(Word w, int len);  // e.g. "+-+"
Word word_from_string(const std::string& s);

inline int sign_of_parity(long long e) { return (e & 1) ? -1 : 1; }

class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(int arity) : arity_(arity) {}
    static GradedElement basis(int arity, Word w);

    int arity() const { return arity_; }
    const std::map<Word, Integer>& terms() const { return terms_; }
    Integer coefficient(Word w) const;
    void add(Word w, const Integer& c);
    GradedElement& operator+=(const GradedElement& o);
    GradedElement operator-() const;
    GradedElement scaled(const Integer& c) const;
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const GradedElement& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const GradedElement& o) const { return !(*this == o); }
    // -1 when not homogeneous or zero
    int degree() const;
    std::string to_string() const;

private:
    int arity_ = 0;
    std::map<Word, Integer> terms_;
};

// Homogeneous Z-linear map A^{(x)src} -> A^{(x)dst}; matrix(dst_word, src_word).
class GradedLinearMap {
public:
    GradedLinearMap() = default;
    GradedLinearMap(int src, int dst, int degree);

    static GradedLinearMap identity(int arity);
    static GradedLinearMap from_table(int src, int dst, int degree,
                                      const std::vector<GradedElement>& images);

    int src() const { return src_; }
    int dst() const { return dst_; }
    int degree() const { return degree_; }
    const IntegerMatrix& matrix() const { return m_; }
    Integer& at(Word out, Word in) { return m_(out, in); }
    const Integer& at(Word out, Word in) const { return m_(out, in); }

    GradedElement apply(const GradedElement& x) const;
    GradedLinearMap scaled(const Integer& c) const;
    bool operator==(const GradedLinearMap& o) const {
        return src_ == o.src_ && dst_ == o.dst_ && m_ == o.m_;
    }
    bool operator!=(const GradedLinearMap& o) const { return !(*this == o); }
    // every nonzero entry respects the degree shift
    bool is_homogeneous() const;
    bool is_zero() const { return m_.is_zero(); }

private:
    int src_ = 0;
    int dst_ = 0;
    int degree_ = 0;
    IntegerMatrix m_;
};

// g o f
GradedLinearMap compose(const GradedLinearMap& g, const GradedLinearMap& f);
// (f (x) g)(m (x) n) = (-1)^{|g||m|} f(m) (x) g(n)
GradedLinearMap koszul_tensor(const GradedLinearMap& f, const GradedLinearMap& g);
// tau(m (x) n) = (-1)^{|m||n|} n (x) m, for m in A^{(x)a}, n in A^{(x)b}
GradedLinearMap tau(int a, int b);
// same shapes as above with every sign dropped; used for the even theory
GradedLinearMap plain_tensor(const GradedLinearMap& f, const GradedLinearMap& g);
GradedLinearMap plain_swap(int a, int b);

// Reorders tensor factors: factor p of the input lands at position perm[p].
// Koszul signs from moving degree-one factors past each other are included unless plain.
GradedElement permute_factors(const GradedElement& x, const std::vector<int>& perm, bool plain = false);

GradedElement reduce_mod(const GradedElement& x, unsigned long p);

}  // namespace oddarc
