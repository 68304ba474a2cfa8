#pragma once

#include "oddarc/diagrams.hpp"
#include "oddarc/graded.hpp"
#include "oddarc/integer_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace oddarc {

// Monomial of the odd polynomial ring as a non-decreasing list of 0-based variable indices.
using Monomial = std::vector<int>;

// Z<x_1..x_n> modulo x_i x_j = -x_j x_i (i != j); squares are not killed.
class OddPolynomial {
public:
    OddPolynomial() = default;
    explicit OddPolynomial(int n) : n_(n) {}

    static OddPolynomial constant(int n, const Integer& c);
    static OddPolynomial variable(int n, int i);
    // c * x_{idx[0]} x_{idx[1]} ... in the given order, normalized
    static OddPolynomial product(int n, const std::vector<int>& idx, const Integer& c = 1);
    // "3*x1.x3.x3 - x2 + 1"
    static OddPolynomial parse(int n, const std::string& text);

    int n() const { return n_; }
    const std::map<Monomial, Integer>& terms() const { return terms_; }
    void add(const Monomial& m, const Integer& c);
    OddPolynomial operator+(const OddPolynomial& o) const;
    OddPolynomial operator-(const OddPolynomial& o) const;
    OddPolynomial operator*(const OddPolynomial& o) const;
    OddPolynomial scaled(const Integer& c) const;
    bool operator==(const OddPolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for zero or inhomogeneous
    std::string to_string() const;

    // Image in the square-free quotient; bit i of a word is x_{i+1}.
    GradedElement to_lambda(bool odd = true) const;

private:
    int n_ = 0;
    std::map<Monomial, Integer> terms_;
};

// Product of square-free monomials a * b in Lambda_n; odd uses anticommuting variables.
GradedElement lambda_multiply(const GradedElement& a, const GradedElement& b, bool odd);

struct TanisakiGenerator {
    int ell = 0;
    int r = 0;
    std::vector<int> subset;    // sorted 0-based indices of S
    std::vector<int> positive;  // elements of S in odd positions of the induced order
    OddPolynomial poly;
};

// One generator per (l, r, S) with S ordered by index; the even version has no signs.
std::vector<TanisakiGenerator> tanisaki_generators(int n, int k, bool odd = true);

// Explicit certificate x_i^2 = sum c * m * g with m a monomial and g a generator.
struct SquareCertificate {
    int i = 0;
    struct Term {
        Integer coeff;
        Monomial left;
        int generator = 0;
    };
    std::vector<Term> terms;
    bool verified = false;
};

std::vector<SquareCertificate> verify_squares(int n, int k);

// Quotient of Lambda_n by the image of the Tanisaki ideal.
struct QuotientRing {
    int n = 0;
    int k = 0;
    bool odd = true;
    std::vector<Word> basis;            // square-free monomials, by degree then lexicographic
    std::vector<int> betti;             // rank per degree
    std::vector<std::vector<Integer>> torsion;  // per degree, invariant factors > 1
    bool monomial_basis = true;
    // per degree: reduced rows with unit pivots, stored as pivot word -> row
    std::vector<std::map<Word, std::map<Word, Integer>>> pivots;
    std::vector<std::size_t> ideal_rank;

    // coordinates in basis of a Lambda element
    std::vector<Integer> reduce(const GradedElement& x) const;
    std::vector<Integer> multiply(std::size_t i, std::size_t j) const;
    bool has_torsion() const;
    std::string betti_string() const;  // "[1,3]"
};

QuotientRing tanisaki_quotient(int n, int k, bool odd = true);
std::string monomial_to_string(Word w, int n);

// h_a on a square-free monomial: x_i goes to the dot on the arc through i.
// Result lives in the exterior algebra on the arcs of a (ordered by left endpoint).
GradedElement h_a(const Matching& a, Word monomial);
GradedElement h_a(const Matching& a, const OddPolynomial& f);

// Restriction H*(T_top) -> H*(T_top cap T_other) on exterior words over the arcs of top.
GradedElement psi(const Matching& top, const Matching& other, Word arcs_word);

// The exact sequence 0 -> H*(T) -> (+)_b H*(T_b) -> (+)_{b<c} H*(T_b cap T_c).
struct SpringerSequence {
    int n = 0;
    int k = 0;
    std::vector<Matching> matchings;
    std::vector<int> order;  // total order extending the arrow order
    std::vector<std::pair<int, int>> pairs;  // (b, c) with b before c and nonempty intersection
    // per degree: coordinates of the domain (matching, word) and of the codomain (pair, word)
    std::vector<std::vector<std::pair<int, Word>>> domain;
    std::vector<std::vector<std::pair<int, Word>>> codomain;
    std::vector<IntegerMatrix> psi_minus;
    std::vector<IntegerMatrix> kernel;  // columns: saturated basis of ker psi- in domain coordinates
    std::vector<int> betti() const;
    std::string betti_string() const;
    std::size_t domain_index(int degree, int matching, Word w) const;
};

SpringerSequence springer_sequence(int n, int k);

struct HisoReport {
    bool generators_killed = false;   // every generator lies in ker h_a for all a
    bool squares_certified = false;
    bool image_in_kernel = false;     // psi- o rho o h vanishes
    bool ranks_match = false;         // per degree
    bool integral_iso = false;        // change of basis onto ker psi- is unimodular
    bool total_rank_ok = false;       // sum of ranks is C(n, k)
    bool torsion_free = false;
    std::vector<int> quotient_betti;
    std::vector<int> kernel_betti;
    std::size_t generators = 0;
    bool ok() const {
        return generators_killed && squares_certified && image_in_kernel && ranks_match && integral_iso &&
               total_rank_ok && torsion_free;
    }
};

HisoReport verify_hiso(int n, int k);

// Odd and even quotients agree mod 2: same ideal mod 2, same basis, same structure constants mod 2.
bool verify_quotient_mod2(int n, int k, std::string* why = nullptr);

long long binomial(int n, int k);

}  // namespace oddarc
