#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace oddarc;

namespace {

GradedLinearMap random_map(std::mt19937& rng, int src, int dst, int degree) {
    std::uniform_int_distribution<int> d(-3, 3);
    GradedLinearMap f(src, dst, degree);
    for (Word out = 0; out < (Word(1) << dst); ++out)
        for (Word in = 0; in < (Word(1) << src); ++in)
            if (word_degree(out) - word_degree(in) == degree) f.at(out, in) = d(rng);
    return f;
}

}  // namespace

TEST_CASE("word helpers") {
    Word w = word_from_string("+-+-");
    CHECK(word_to_string(w, 4) == "+-+-");
    CHECK(word_degree(w) == 2);
    CHECK(degree_before(w, 3) == 1);
    CHECK(word_erase(word_insert(w, 2, 1), 2) == w);
    CHECK(word_concat(word_from_string("-+"), 2, word_from_string("+-")) == word_from_string("-++-"));
    auto words = words_in_lex_order(3);
    REQUIRE(words.size() == 8);
    CHECK(word_to_string(words.front(), 3) == "+++");
    CHECK(word_to_string(words.back(), 3) == "---");
    for (std::size_t i = 0; i + 1 < words.size(); ++i) CHECK(word_lex_less(words[i], words[i + 1], 3));
    CHECK_THROWS_AS(word_from_string("+x"), std::invalid_argument);
}

TEST_CASE("koszul sign on a tensor of odd maps") {
    // f: v+ -> v- of degree one
    GradedLinearMap f(1, 1, 1);
    f.at(1, 0) = 1;
    GradedLinearMap id = GradedLinearMap::identity(1);
    GradedElement x = GradedElement::basis(2, word_from_string("-+"));
    GradedElement y = koszul_tensor(id, f).apply(x);
    CHECK(y.coefficient(word_from_string("--")) == -1);
    GradedElement z = koszul_tensor(f, id).apply(GradedElement::basis(2, word_from_string("+-")));
    CHECK(z.coefficient(word_from_string("--")) == 1);
}

TEST_CASE("twist is an involution with the Koszul sign") {
    GradedLinearMap t = tau(1, 1);
    CHECK(t.apply(GradedElement::basis(2, word_from_string("--"))).coefficient(word_from_string("--")) == -1);
    CHECK(t.apply(GradedElement::basis(2, word_from_string("-+"))).coefficient(word_from_string("+-")) == 1);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) CHECK(compose(tau(b, a), tau(a, b)) == GradedLinearMap::identity(a + b));
}

TEST_CASE("interchange law with Koszul signs") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int df = trial % 2, dg = (trial / 2) % 2, df2 = (trial / 4) % 2, dg2 = (trial / 8) % 2;
        GradedLinearMap f = random_map(rng, 1, 1 + df, df), g = random_map(rng, 1, 1 + dg, dg);
        GradedLinearMap f2 = random_map(rng, 1 + df, 1 + df + df2, df2);
        GradedLinearMap g2 = random_map(rng, 1 + dg, 1 + dg + dg2, dg2);
        GradedLinearMap lhs = compose(koszul_tensor(f2, g2), koszul_tensor(f, g));
        GradedLinearMap rhs = koszul_tensor(compose(f2, f), compose(g2, g)).scaled(sign_of_parity(dg2 * df));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("permuting factors matches the twist") {
    for (Word w = 0; w < 4; ++w) {
        GradedElement x = GradedElement::basis(2, w);
        CHECK(permute_factors(x, {1, 0}) == tau(1, 1).apply(x));
        CHECK(permute_factors(x, {1, 0}, true) == plain_swap(1, 1).apply(x));
    }
    // a cyclic shift of three factors equals two adjacent twists
    GradedLinearMap t12 = koszul_tensor(GradedLinearMap::identity(1), tau(1, 1));
    GradedLinearMap t01 = koszul_tensor(tau(1, 1), GradedLinearMap::identity(1));
    for (Word w = 0; w < 8; ++w) {
        GradedElement x = GradedElement::basis(3, w);
        // factor 0 -> 2, 1 -> 0, 2 -> 1
        CHECK(permute_factors(x, {2, 0, 1}) == compose(t12, t01).apply(x));
    }
}

TEST_CASE("homogeneity and reduction mod p") {
    std::mt19937 rng(29);
    CHECK(random_map(rng, 2, 1, -1).is_homogeneous());
    GradedElement x(2);
    x.add(word_from_string("+-"), 4);
    x.add(word_from_string("-+"), 3);
    GradedElement r = reduce_mod(x, 2);
    CHECK(r.coefficient(word_from_string("+-")) == 0);
    CHECK(r.coefficient(word_from_string("-+")) == 1);
    CHECK(x.degree() == 1);
    CHECK(x.to_string() == "4*[+-] + 3*[-+]");
}
