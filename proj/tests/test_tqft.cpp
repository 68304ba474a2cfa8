#include "oracles.hpp"

#include <doctest.h>

using namespace oddarc;

namespace {

GradedElement basis(const char* w) {
    return GradedElement::basis(static_cast<int>(std::string(w).size()), word_from_string(w));
}

GradedElement minus(GradedElement a, const GradedElement& b) {
    a += -b;
    return a;
}

}  // namespace

TEST_CASE("odd generators on basis words") {
    CHECK(of_merge().apply(basis("++")) == basis("+"));
    CHECK(of_merge().apply(basis("-+")) == basis("-"));
    CHECK(of_merge().apply(basis("+-")) == basis("-"));
    CHECK(of_merge().apply(basis("--")).is_zero());
    CHECK(of_split(SplitDir::Left).apply(basis("+")) == minus(basis("+-"), basis("-+")));
    CHECK(of_split(SplitDir::Right).apply(basis("+")) == minus(basis("-+"), basis("+-")));
    CHECK(of_split(SplitDir::Left).apply(basis("-")) == -basis("--"));
    CHECK(of_birth().apply(GradedElement::basis(0, 0)) == basis("+"));
    CHECK(of_death(1).apply(basis("+")).is_zero());
    CHECK(of_death(1).apply(basis("-")) == -of_death(-1).apply(basis("-")));
}

TEST_CASE("odd merge after split vanishes, even gives 2X") {
    ChronCobordism c = ChronCobordism::parse("src=1\ns 1 <\nm 1 2\n");
    CHECK(of_matrix(c).is_zero());
    GradedElement twice = even_apply(c, basis("+"));
    CHECK(twice.coefficient(word_from_string("-")) == 2);
}

TEST_CASE("cobordism text format") {
    ChronCobordism c = ChronCobordism::parse("src=2\n# comment\nm 1 2\ns 1 >\nb 2\nd- 1\nt 1\n");
    CHECK(c.src() == 2);
    CHECK(c.tgt() == 2);
    CHECK(c.degree() == 0);
    CHECK(ChronCobordism::parse(c.to_string()).events() == c.events());
    CHECK_THROWS_AS(ChronCobordism::parse("src=1\nm 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(ChronCobordism::parse("src=1\nq 1\n"), std::invalid_argument);
}

TEST_CASE("element formulas agree with the assembled tensor products") {
    for (const auto& w : enumerate_cobordisms(3, 3)) {
        GradedLinearMap direct = of_matrix(w);
        CHECK(direct == of_matrix_canonical(w));
        CHECK(direct.is_homogeneous());
        CHECK(direct.degree() == w.degree());
    }
}

TEST_CASE("geometric zigzags and relations") {
    CheckReport g = verify_geometric(3);
    CHECK(g.ok());
    CHECK(g.checked > 0);
    CheckReport r = verify_relations(3, 3);
    CHECK(r.ok());
    CheckReport m = verify_mod2_tqft(3, 3);
    CHECK(m.ok());
    for (const auto& f : g.failures) MESSAGE(f);
    for (const auto& f : r.failures) MESSAGE(f);
}

TEST_CASE("odd and even theories agree mod 2 elementwise") {
    for (const auto& w : enumerate_cobordisms(3, 2))
        for (Word x = 0; x < (Word(1) << w.src()); ++x) {
            GradedElement in = GradedElement::basis(w.src(), x);
            CHECK(reduce_mod(of_apply(w, in), 2) == reduce_mod(even_apply(w, in), 2));
        }
}
