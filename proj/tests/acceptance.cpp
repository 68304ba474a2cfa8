// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic, pinned time limits.

#include "oracles.hpp"

#include "oddarc/oddcohomology.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace oddarc;

namespace {

constexpr double kGeomLimitS = 1.0;
constexpr double kRelationsLimitS = 10.0;
constexpr double kHisoLimitS = 300.0;
constexpr double kNoLimit = 0.0;

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> failures;

    void fail(const std::string& why) {
        ok = false;
        failures.push_back(why);
    }
};

std::string nk(int n, int k) { return "n=" + std::to_string(n) + " k=" + std::to_string(k); }

int run(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) out.fail("runtime over limit");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::string limit = limit_s > 0 ? " limit=" + std::to_string(static_cast<int>(limit_s)) + "s" : "";
    std::cout << (out.ok ? "PASS " : "FAIL ") << id << " " << name << " " << out.detail << " time=" << timing << limit
              << "\n";
    const std::size_t shown = 10;
    for (std::size_t i = 0; i < out.failures.size() && i < shown; ++i) std::cout << "  " << out.failures[i] << "\n";
    if (out.failures.size() > shown) std::cout << "  ... " << out.failures.size() - shown << " more\n";
    return out.ok ? 0 : 1;
}

Outcome take(const CheckReport& r, const std::string& what) {
    Outcome o;
    o.detail = what + "=" + std::to_string(r.checked);
    for (const auto& f : r.failures) o.fail(f);
    if (r.checked == 0) o.fail("nothing checked");
    return o;
}

Outcome criterion_hiso() {
    Outcome o;
    int cases = 0;
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; 2 * k <= n; ++k, ++cases) {
            HisoReport r = verify_hiso(n, k);
            if (!r.generators_killed) o.fail(nk(n, k) + " generator outside ker h");
            if (!r.squares_certified) o.fail(nk(n, k) + " square not certified");
            if (!r.ranks_match) o.fail(nk(n, k) + " per-degree ranks differ");
            if (!r.total_rank_ok) o.fail(nk(n, k) + " total rank differs from binomial");
            if (!r.ok()) o.fail(nk(n, k) + " report not ok");
        }
    o.detail = "cases=" + std::to_string(cases);
    return o;
}

Outcome criterion_mod2_grading() {
    Outcome o;
    long long checked = 0;
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            ArcAlgebra odd = ArcAlgebra::build(n, k, Flavor::OH);
            ArcAlgebra even = ArcAlgebra::build(n, k, Flavor::EvenH);
            for (const AlgebraCheck& c : {compare_mod2(odd, even), check_qgrading(odd)}) {
                checked += c.checked;
                for (const auto& f : c.failures) o.fail(nk(n, k) + " " + f);
            }
        }
    o.detail = "checked=" + std::to_string(checked);
    return o;
}

Outcome criterion_associativity() {
    Outcome o;
    long long triples = 0, minus = 0;
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            AssociativityReport r = check_associativity(ArcAlgebra::build(n, k, Flavor::OH));
            triples += r.triples;
            minus += r.minus;
            for (const auto& f : r.failures) o.fail(nk(n, k) + " " + f);
        }
    o.detail = "triples=" + std::to_string(triples) + " sign_flips=" + std::to_string(minus);
    return o;
}

Outcome criterion_center() {
    Outcome o;
    int cases = 0;
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; 2 * k <= n; ++k, ++cases) {
            CenterReport r = verify_center(n, k);
            if (!r.in_diagonal) o.fail(nk(n, k) + " center leaves the diagonal");
            if (!r.rank_ok) o.fail(nk(n, k) + " rank differs from binomial");
            if (!r.matches_springer) o.fail(nk(n, k) + " lattice differs from ker psi-");
            if (!r.products_match) o.fail(nk(n, k) + " products differ from cup products");
            if (!r.ledger_invariant) o.fail(nk(n, k) + " depends on the ledger");
        }
    o.detail = "cases=" + std::to_string(cases);
    return o;
}

Outcome criterion_weighted() {
    Outcome o;
    int cases = 0;
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; 2 * k <= n; ++k, ++cases) {
            auto ws = enumerate_weights(n, k);
            long long valid = 0;
            for (const auto& w : ws)
                if (is_valid_weighted(matching_from_weight(w), w)) ++valid;
            if (valid != oracle::choose(n, k) || static_cast<long long>(ws.size()) != valid)
                o.fail(nk(n, k) + " weighted count " + std::to_string(valid));
        }
    long long checked = 0;
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            AlgebraCheck c = compare_mod2(ArcAlgebra::build(n, k, Flavor::OK), ArcAlgebra::build(n, k, Flavor::EvenK));
            checked += c.checked;
            for (const auto& f : c.failures) o.fail(nk(n, k) + " " + f);
        }
    o.detail = "weight_cases=" + std::to_string(cases) + " mod2_checked=" + std::to_string(checked);
    return o;
}

Outcome criterion_cells() {
    Outcome o;
    long long matchings = 0;
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; 2 * k <= n; ++k)
            for (const auto& a : enumerate_matchings(n, k)) {
                ++matchings;
                auto counts = cells(a).count_by_dimension();
                bool good = counts.size() == static_cast<std::size_t>(k + 1);
                for (int l = 0; good && l <= k; ++l) good = counts[l] == oracle::choose(k, l);
                if (!good) o.fail(nk(n, k) + " " + a.to_string());
            }
    o.detail = "matchings=" + std::to_string(matchings);
    return o;
}

Outcome criterion_bimodules() {
    Outcome o;
    long long checked = 0, columns = 0;
    for (int n = 1; n <= 4; ++n) {
        AlgebraCheck c = check_identity_bimodule(n);
        checked += c.checked;
        for (const auto& f : c.failures) o.fail("identity n=" + std::to_string(n) + " " + f);
    }
    for (int mb = 0; mb <= 4; ++mb)
        for (int mt = 0; mt <= 4; ++mt) {
            if ((mb + mt) % 2 || mb + mt == 0) continue;
            for (const auto& t : oracle::flat_tangles(mb, mt)) {
                Bimodule src(t);
                for (const auto& u : oracle::saddle_neighbors(t)) {
                    Bimodule dst(u);
                    for (bool odd : {true, false}) {
                        IntegerMatrix m = surgery_map(src, dst, odd);
                        for (const auto& blk : src.blocks()) {
                            const Matching& b = src.top_matchings()[blk.top];
                            const Matching& a = src.bottom_matchings()[blk.bottom];
                            for (Word w = 0; w < (Word(1) << blk.circles); ++w) {
                                GradedElement expected;
                                if (!oracle::saddle_image(t, u, b, a, w, expected, odd)) continue;
                                std::vector<Integer> col(dst.rank(), Integer(0));
                                for (const auto& [word, coeff] : expected.terms())
                                    col[dst.index_of(blk.top, blk.bottom, word)] = coeff;
                                ++columns;
                                if (m.column(src.index_of(blk.top, blk.bottom, w)) != col)
                                    o.fail(t.to_string() + " -> " + u.to_string() + " block " + b.to_string() + "/" +
                                           a.to_string() + (odd ? " odd" : " even"));
                            }
                        }
                    }
                }
            }
        }
    o.detail = "identity_checks=" + std::to_string(checked) + " surgery_columns=" + std::to_string(columns);
    return o;
}

}  // namespace

int main() {
    int failed = 0;
    failed += run(1, "geometric-tqft", kGeomLimitS, [] { return take(verify_geometric(4), "checked"); });
    failed += run(2, "cobordism-relations", kRelationsLimitS, [] { return take(verify_relations(4, 3), "checked"); });
    failed += run(3, "tanisaki-presentation", kHisoLimitS, criterion_hiso);
    failed += run(4, "oh-mod2-and-grading", kNoLimit, criterion_mod2_grading);
    failed += run(5, "associativity-up-to-sign", kNoLimit, criterion_associativity);
    failed += run(6, "odd-center", kNoLimit, criterion_center);
    failed += run(7, "weighted-matchings-and-ok-mod2", kNoLimit, criterion_weighted);
    failed += run(8, "cell-counts", kNoLimit, criterion_cells);
    failed += run(9, "bimodule-consistency", kNoLimit, criterion_bimodules);
    std::cout << (failed ? "FAIL " : "PASS ") << "acceptance " << 9 - failed << "/9\n";
    return failed ? 1 : 0;
}
