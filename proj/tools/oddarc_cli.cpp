#include "oddarc/arc_algebras.hpp"
#include "oddarc/diagrams.hpp"
#include "oddarc/oddcohomology.hpp"
#include "oddarc/tqft.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace oddarc;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::optional<int> n_pos, k_pos, n_opt, k_opt;
    std::string flavor = "oh";
    std::string ledger_path;
    std::string out_path;
    int max_n = 10;
    bool weighted = false;
    std::string suite;
    std::string cobordism_path;
    std::string input;
    bool even = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<int, int> resolve_nk(const Args& a) {
    auto pick = [](const std::optional<int>& pos, const std::optional<int>& opt, const char* name) {
        if (pos && opt && *pos != *opt) throw UsageError(std::string("conflicting values for ") + name);
        if (pos) return *pos;
        if (opt) return *opt;
        throw UsageError(std::string("missing ") + name);
    };
    int n = pick(a.n_pos, a.n_opt, "n");
    int k = pick(a.k_pos, a.k_opt, "k");
    if (n < 0 || k < 0 || 2 * k > n) throw UsageError("need 0 <= 2k <= n");
    if (n > a.max_n) throw UsageError("n exceeds --max-n " + std::to_string(a.max_n));
    return {n, k};
}

void emit(const Args& a, const std::string& text) {
    if (a.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(a.out_path);
    if (!out) throw UsageError("cannot write '" + a.out_path + "'");
    out << text;
}

std::string betti_list(const std::vector<int>& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    return s + "]";
}

ArcAlgebra load_algebra(const Args& a, int n, int k) {
    Flavor f = parse_flavor(a.flavor);
    SignLedger ledger;
    if (!a.ledger_path.empty()) {
        // labels are needed to parse the ledger, so build once without it
        ArcAlgebra plain = ArcAlgebra::build(n, k, f);
        ledger = SignLedger::parse(read_file(a.ledger_path), plain.labels());
    }
    return ArcAlgebra::build(n, k, f, ledger);
}

int cmd_enumerate(const Args& a) {
    auto [n, k] = resolve_nk(a);
    std::string out;
    std::size_t count = 0;
    if (a.weighted) {
        for (const auto& w : enumerate_weights(n, k)) {
            out += weight_to_string(w) + "\n";
            ++count;
        }
    } else {
        auto ms = enumerate_matchings(n, k);
        for (int i : total_order(ms)) out += ms[i].to_string() + "\n";
        count = ms.size();
    }
    emit(a, out + "count=" + std::to_string(count) + "\n");
    return 0;
}

int cmd_betti(const Args& a) {
    auto [n, k] = resolve_nk(a);
    SpringerSequence s = springer_sequence(n, k);
    QuotientRing q = tanisaki_quotient(n, k);
    emit(a, s.betti_string() + " | " + q.betti_string() + "\n");
    return 0;
}

int cmd_table(const Args& a) {
    auto [n, k] = resolve_nk(a);
    emit(a, load_algebra(a, n, k).to_json() + "\n");
    return 0;
}

std::string element_string(const ArcAlgebra& alg, const AlgebraElement& z) {
    std::string s;
    for (const auto& [i, c] : z) {
        const auto& e = alg.basis()[i];
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        Integer m = abs(c);
        if (m != 1) s += m.get_str() + "*";
        s += "[" + alg.labels()[e.top] + "," + word_to_string(e.dots, e.circles) + "]";
    }
    return s.empty() ? "0" : s;
}

int cmd_center(const Args& a) {
    auto [n, k] = resolve_nk(a);
    ArcAlgebra alg = load_algebra(a, n, k);
    if (!is_odd(alg.flavor()) || is_weighted(alg.flavor())) throw UsageError("center needs --flavor oh");
    CenterResult c = odd_center(alg);
    std::string out = "rank=" + std::to_string(c.rank()) + "\n";
    out += "betti=" + betti_list(c.betti) + "\n";
    out += "in_diagonal=" + std::string(c.in_diagonal ? "yes" : "no") + "\n";
    for (std::size_t i = 0; i < c.elements.size(); ++i)
        out += "z" + std::to_string(i + 1) + " = " + element_string(alg, c.elements[i]) + "\n";
    for (const auto& [i, j, kk, v] : c.constants)
        out += "z" + std::to_string(i + 1) + " * z" + std::to_string(j + 1) + " = " + v.get_str() + " z" +
               std::to_string(kk + 1) + "\n";
    emit(a, out);
    return 0;
}

// Runs one suite; failure lines are "FAIL <suite> <detail>".
int cmd_verify(const Args& a) {
    std::vector<std::string> failures;
    std::string summary;
    auto cap = [&](int limit) { return std::min(limit, a.max_n); };
    auto take = [&](const std::string& where, const std::vector<std::string>& fs) {
        for (const auto& f : fs) failures.push_back(where + " " + f);
    };
    if (a.suite == "tqft-relations") {
        CheckReport r = verify_relations(4, 3);
        take("tqft-relations", r.failures);
        summary = "checked=" + std::to_string(r.checked);
    } else if (a.suite == "geom-commute") {
        CheckReport r = verify_geometric(4);
        take("geom-commute", r.failures);
        summary = "checked=" + std::to_string(r.checked);
    } else if (a.suite == "hiso") {
        int cases = 0;
        for (int n = 1; n <= cap(8); ++n)
            for (int k = 0; 2 * k <= n; ++k, ++cases) {
                HisoReport r = verify_hiso(n, k);
                if (!r.ok()) failures.push_back("hiso n=" + std::to_string(n) + " k=" + std::to_string(k));
            }
        summary = "cases=" + std::to_string(cases);
    } else if (a.suite == "mod2") {
        long long checked = 0;
        for (int n = 1; n <= cap(6); ++n)
            for (int k = 0; 2 * k <= n; ++k) {
                std::string where = "mod2 n=" + std::to_string(n) + " k=" + std::to_string(k);
                ArcAlgebra odd = ArcAlgebra::build(n, k, Flavor::OH);
                AlgebraCheck m = compare_mod2(odd, ArcAlgebra::build(n, k, Flavor::EvenH));
                AlgebraCheck q = check_qgrading(odd);
                take(where, m.failures);
                take(where, q.failures);
                checked += m.checked + q.checked;
                std::string why;
                if (!verify_quotient_mod2(n, k, &why)) failures.push_back(where + " quotient " + why);
            }
        summary = "checked=" + std::to_string(checked);
    } else if (a.suite == "center") {
        int cases = 0;
        for (int n = 1; n <= cap(6); ++n)
            for (int k = 0; 2 * k <= n; ++k, ++cases) {
                CenterReport r = verify_center(n, k);
                if (!r.ok())
                    failures.push_back("center n=" + std::to_string(n) + " k=" + std::to_string(k) + " betti=" +
                                       betti_list(r.betti));
            }
        summary = "cases=" + std::to_string(cases);
    } else if (a.suite == "assoc") {
        long long triples = 0;
        for (int n = 1; n <= cap(5); ++n)
            for (int k = 0; 2 * k <= n; ++k) {
                AssociativityReport r = check_associativity(ArcAlgebra::build(n, k, Flavor::OH));
                take("assoc n=" + std::to_string(n) + " k=" + std::to_string(k), r.failures);
                triples += r.triples;
            }
        summary = "triples=" + std::to_string(triples);
    } else {
        throw UsageError("unknown suite '" + a.suite + "'");
    }
    std::string out;
    for (const auto& f : failures) out += "FAIL " + f + "\n";
    out += (failures.empty() ? "PASS " : "FAIL ") + a.suite + " " + summary + "\n";
    emit(a, out);
    return failures.empty() ? 0 : kExitFail;
}

int cmd_apply(const Args& a) {
    ChronCobordism w = ChronCobordism::parse(read_file(a.cobordism_path));
    Word x = word_from_string(a.input);
    if (static_cast<int>(a.input.size()) != w.src()) throw UsageError("input word length differs from src");
    GradedElement src = GradedElement::basis(w.src(), x);
    GradedElement img = a.even ? even_apply(w, src) : of_apply(w, src);
    emit(a, img.to_string() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd arc algebras, real Springer fibers and the odd chronological TQFT"};
    app.require_subcommand(1);
    Args args;

    auto add_nk = [&](CLI::App* sub) {
        sub->add_option("N", args.n_pos, "number of points");
        sub->add_option("K", args.k_pos, "number of arcs");
        sub->add_option("--n", args.n_opt, "number of points");
        sub->add_option("--k", args.k_opt, "number of arcs");
    };
    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("--flavor", args.flavor, "oh, ok, even-h or even-k")
            ->check(CLI::IsMember({"oh", "ok", "even-h", "even-k"}));
        sub->add_option("--ledger", args.ledger_path, "sign ledger file");
    };

    auto* enumerate = app.add_subcommand("enumerate", "list crossingless matchings of type (n-k, k)");
    add_nk(enumerate);
    enumerate->add_flag("--weighted", args.weighted, "list valid weighted matchings");
    auto* betti = app.add_subcommand("betti", "graded ranks of ker psi- and of the Tanisaki quotient");
    add_nk(betti);
    auto* table = app.add_subcommand("table", "structure constants as JSON");
    add_nk(table);
    add_algebra(table);
    auto* center = app.add_subcommand("center", "odd center of OH");
    add_nk(center);
    add_algebra(center);
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", args.suite, "tqft-relations, geom-commute, hiso, mod2, center or assoc")->required();
    auto* apply = app.add_subcommand("apply", "apply a chronological cobordism to a basis word");
    apply->add_option("cobordism", args.cobordism_path, "cobordism file")->required();
    apply->add_option("--word", args.input, "basis word such as +-+")->required();
    apply->add_flag("--even", args.even, "use the even TQFT");
    for (auto* sub : {enumerate, betti, table, center, verify, apply}) {
        sub->add_option("--max-n", args.max_n, "largest n accepted")->capture_default_str();
        sub->add_option("--out", args.out_path, "write output to a file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    try {
        if (*enumerate) return cmd_enumerate(args);
        if (*betti) return cmd_betti(args);
        if (*table) return cmd_table(args);
        if (*center) return cmd_center(args);
        if (*verify) return cmd_verify(args);
        if (*apply) return cmd_apply(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
