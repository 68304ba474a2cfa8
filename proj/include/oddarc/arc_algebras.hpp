#pragma once

#include "oddarc/diagrams.hpp"
#include "oddarc/graded.hpp"
#include "oddarc/integer_matrix.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace oddarc {

enum class Flavor { OH, OK, EvenH, EvenK };

Flavor parse_flavor(const std::string& text);  // oh, ok, even-h, even-k
std::string flavor_name(Flavor f);
inline bool is_odd(Flavor f) { return f == Flavor::OH || f == Flavor::OK; }
inline bool is_weighted(Flavor f) { return f == Flavor::OK || f == Flavor::EvenK; }

// ---- surgery engine ----

enum class SurgeryCase { Merge, Split, Spawn, Retract, CutReconnect, RayJoin, RayClose };
std::string case_name(SurgeryCase c);

enum class StepKind { Merge, Split, EtaPush, EtaPull, Identity };

struct PlanStep {
    StepKind kind = StepKind::Identity;
    SurgeryCase label = SurgeryCase::CutReconnect;
    int p = 0;  // circle position (merge: smaller one)
    int q = 0;  // merge: larger position
};

// Linear map obtained from a chain of surgeries, ready to apply to basis words.
struct SurgeryPlan {
    bool zero = false;          // some intermediate space is empty, or the chain breaks the quantum grading
    int excess = 0;             // cut-reconnects minus ray-closes
    int src_arity = 0;
    int dst_arity = 0;
    std::vector<PlanStep> steps;
    std::vector<int> perm;      // final circle p goes to target position perm[p]
    bool has_pushforward() const;
    std::vector<SurgeryCase> labels() const;
};

GradedElement apply_plan(const SurgeryPlan& plan, const GradedElement& x, bool odd);

// Planar graph whose components are circles and ray-ended paths. Every node has exactly two
// incidences (edges or terminals); a terminal pins the coordinate of its node to +-p.
class SurgeryEngine {
public:
    struct Terminal {
        int node = 0;
        int value = 1;
        bool alive = true;
    };
    using Key = std::pair<int, int>;
    using KeyFn = std::function<Key(const std::vector<int>& nodes)>;

    SurgeryEngine(int nodes, std::vector<std::pair<int, int>> edges, std::vector<Terminal> terminals);

    std::vector<std::vector<int>> circles() const;  // sorted node sets
    bool consistent() const;                         // no path joins opposite fixed points
    // initial identification of circles with tensor factors
    void set_order(std::vector<std::vector<int>> order);
    // replace the edges in remove by those in add and drop the listed terminals
    void rewire(const std::vector<std::pair<int, int>>& remove, const std::vector<std::pair<int, int>>& add,
                const std::vector<int>& drop_terminals, bool ray);
    // target order given by sorting circles by key
    SurgeryPlan finish(const KeyFn& key);

private:
    struct Components {
        std::vector<int> root;
        std::map<int, std::vector<int>> nodes;
        std::map<int, std::vector<int>> values;
    };
    Components components() const;

    int nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Terminal> terminals_;
    std::vector<std::vector<int>> order_;
    SurgeryPlan plan_;
};

// ---- sign ledger ----

// One global sign per triple (c, b, a) of matching indices; default +1.
class SignLedger {
public:
    int sign(int c, int b, int a) const;
    void set(int c, int b, int a, int s);
    const std::map<std::tuple<int, int, int>, int>& entries() const { return entries_; }
    // lines "c b a +1|-1", each label a matching/weight string or a 1-based index; '#' comments
    static SignLedger parse(const std::string& text, const std::vector<std::string>& labels);
    std::string to_string(const std::vector<std::string>& labels) const;

private:
    std::map<std::tuple<int, int, int>, int> entries_;
};

// ---- algebras ----

struct ArcBasisElement {
    int top = 0;
    int bottom = 0;
    Word dots = 0;
    int circles = 0;
    int qdeg = 0;
    int hdeg = 0;
};

using AlgebraElement = std::map<std::size_t, Integer>;

struct Block {
    int top = 0;
    int bottom = 0;
    int circles = 0;
    std::size_t offset = 0;
};

class ArcAlgebra {
public:
    static ArcAlgebra build(int n, int k, Flavor flavor, const SignLedger& ledger = {});

    int n() const { return n_; }
    int k() const { return k_; }
    Flavor flavor() const { return flavor_; }
    const std::vector<Matching>& matchings() const { return matchings_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<ArcBasisElement>& basis() const { return basis_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const SignLedger& ledger() const { return ledger_; }
    // block index of (top, bottom), -1 for an empty intersection
    int block_index(int top, int bottom) const;
    std::size_t index_of(int top, int bottom, Word dots) const;

    const SurgeryPlan& plan(int c, int b, int a) const;
    const AlgebraElement& multiply_basis(std::size_t i, std::size_t j) const;
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    // nonzero structure constants (i, j, k, c) in lexicographic order
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Integer>> structure_constants() const;
    std::string to_json() const;

private:
    int n_ = 0;
    int k_ = 0;
    Flavor flavor_ = Flavor::OH;
    std::vector<Matching> matchings_;
    std::vector<std::vector<int>> ray_values_;
    std::vector<std::string> labels_;
    std::vector<ArcBasisElement> basis_;
    std::vector<Block> blocks_;
    std::vector<int> block_of_;  // top * size + bottom -> block index
    SignLedger ledger_;
    std::map<std::tuple<int, int, int>, SurgeryPlan> plans_;
    std::map<std::pair<std::size_t, std::size_t>, AlgebraElement> products_;  // nonzero products only
    AlgebraElement zero_;
};

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y, const Integer& s = 1);
AlgebraElement reduce_mod2(const AlgebraElement& x);

// Surgery cases for c-bar b b-bar a, one per component of b by leftmost endpoint.
std::vector<SurgeryCase> surgery_sequence(const Matching& c, const Matching& b, const Matching& a);

// ---- checks ----

struct AlgebraCheck {
    long long checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Every nonzero structure constant adds quantum degrees.
AlgebraCheck check_qgrading(const ArcAlgebra& alg);
// Odd and even algebras on the same basis agree mod 2.
AlgebraCheck compare_mod2(const ArcAlgebra& odd, const ArcAlgebra& even);

struct AssociativityReport {
    long long triples = 0;
    long long plus = 0;
    long long minus = 0;
    long long zero = 0;
    std::vector<std::string> failures;  // not +-1 related, or not associative mod 2
    bool ok() const { return failures.empty(); }
};

AssociativityReport check_associativity(const ArcAlgebra& alg);

// Triples whose surgery chain contains a pushforward; only these take non-default ledger signs
// in the ledger-invariance test of the center.
std::vector<std::tuple<int, int, int>> orientation_sensitive_triples(const ArcAlgebra& alg);

struct CenterResult {
    std::vector<std::vector<std::size_t>> degree_basis;  // algebra indices of each homological degree
    std::vector<IntegerMatrix> kernel;                   // per degree, columns in those coordinates
    std::vector<AlgebraElement> elements;                // all kernel columns as algebra elements
    std::vector<int> betti;
    std::size_t rank() const { return elements.size(); }
    bool in_diagonal = false;
    // structure constants of the center in the basis `elements`: (i, j, k, c)
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Integer>> constants;
    bool closed_under_product = false;
};

CenterResult odd_center(const ArcAlgebra& alg);

struct CenterReport {
    bool in_diagonal = false;
    bool rank_ok = false;           // total rank C(n, k)
    bool matches_springer = false;  // same lattice as the image of ker psi-
    bool products_match = false;    // products agree with the componentwise cup product
    bool ledger_invariant = false;
    std::vector<int> betti;
    std::vector<std::string> notes;
    bool ok() const { return in_diagonal && rank_ok && matches_springer && products_match && ledger_invariant; }
};

CenterReport verify_center(int n, int k, int random_ledgers = 3, unsigned seed = 1);

// ---- bimodules ----

// All crossingless matchings on m points of every type, k ascending, each type in its total order.
std::vector<Matching> all_matchings(int m);

struct BimoduleBlock {
    int top = 0;     // index into all_matchings(m_top)
    int bottom = 0;  // index into all_matchings(m_bottom)
    int circles = 0;
    std::size_t offset = 0;
};

class Bimodule {
public:
    explicit Bimodule(FlatTangle t);

    const FlatTangle& tangle() const { return t_; }
    const std::vector<Matching>& top_matchings() const { return top_; }
    const std::vector<Matching>& bottom_matchings() const { return bottom_; }
    const std::vector<BimoduleBlock>& blocks() const { return blocks_; }
    std::size_t rank() const { return rank_; }
    int block_index(int top, int bottom) const;
    std::size_t index_of(int top, int bottom, Word dots) const;
    // (block, dots) of a basis index
    std::pair<int, Word> locate(std::size_t index) const;

private:
    FlatTangle t_;
    std::vector<Matching> top_;
    std::vector<Matching> bottom_;
    std::vector<BimoduleBlock> blocks_;
    std::map<std::pair<int, int>, int> block_index_;
    std::size_t rank_ = 0;
};

// Convolution OF(t2) (x) OF(t1) -> OF(t2 t1) on basis elements.
AlgebraElement convolve(const Bimodule& m2, std::size_t x, const Bimodule& m1, std::size_t y,
                        const Bimodule& target, bool odd = true);

// Map OF(t) -> OF(t') for tangles related by one saddle between two strands.
// Matrix rows index OF(t'), columns OF(t).
IntegerMatrix surgery_map(const Bimodule& source, const Bimodule& target, bool odd = true);

// Every product of OF(id_n) reproduces OH^{n-k}_k under the identification of bases.
AlgebraCheck check_identity_bimodule(int n);

}  // namespace oddarc
