#pragma once

#include "oddarc/graded.hpp"

#include <string>
#include <vector>

namespace oddarc {

enum class EventKind { Merge, Split, Birth, Death, Twist };
enum class SplitDir { Right, Left };  // '>' and '<'

// One elementary piece of a chronological cobordism, acting on circle positions (0-based).
//   Merge(i, j): circles i and j merge; the result sits at min(i, j).
//   Split(i, dir): circle i splits into circles i and i + 1.
//   Birth(i): a new circle is inserted at position i.
//   Death(i, sign): circle i is capped off; sign +1 or -1 is the orientation of the cap.
//   Twist(i): circles i and i + 1 are exchanged.
struct Event {
    EventKind kind = EventKind::Twist;
    int i = 0;
    int j = 0;
    SplitDir dir = SplitDir::Right;
    int sign = 1;

    static Event merge(int i, int j) { return {EventKind::Merge, i, j, SplitDir::Right, 1}; }
    static Event split(int i, SplitDir d) { return {EventKind::Split, i, 0, d, 1}; }
    static Event birth(int i = 0) { return {EventKind::Birth, i, 0, SplitDir::Right, 1}; }
    static Event death(int i, int sign) { return {EventKind::Death, i, 0, SplitDir::Right, sign}; }
    static Event twist(int i) { return {EventKind::Twist, i, 0, SplitDir::Right, 1}; }

    int degree() const;              // +1 split, -1 death, 0 otherwise
    int target_arity(int src) const;
    bool valid_for(int src) const;
    std::string to_string() const;   // text format, 1-based positions
    bool operator==(const Event& o) const;
};

class ChronCobordism {
public:
    ChronCobordism() = default;
    explicit ChronCobordism(int src, std::vector<Event> events = {});

    // "src=<count>" followed by one event per line
    static ChronCobordism parse(const std::string& text);
    std::string to_string() const;

    int src() const { return src_; }
    int tgt() const;
    int degree() const;
    const std::vector<Event>& events() const { return events_; }
    void push(const Event& e);

private:
    int src_ = 0;
    std::vector<Event> events_;
};

// The odd TQFT on elements, one event at a time (direct Koszul formulas).
GradedElement of_apply(const Event& e, const GradedElement& x);
GradedElement of_apply(const ChronCobordism& w, const GradedElement& x);
GradedLinearMap of_matrix(const ChronCobordism& w);
// Same map assembled from tensor products of the generators and adjacent twists.
GradedLinearMap of_matrix_canonical(const ChronCobordism& w);

// Generators of the odd TQFT on A.
GradedLinearMap of_merge();
GradedLinearMap of_split(SplitDir d);
GradedLinearMap of_birth();
GradedLinearMap of_death(int sign);
GradedLinearMap of_twist();

// The even TQFT on Z[X]/(X^2), words read with X in place of v-.
GradedElement even_apply(const Event& e, const GradedElement& x);
GradedElement even_apply(const ChronCobordism& w, const GradedElement& x);
GradedLinearMap even_matrix(const ChronCobordism& w);

// Cohomology of the elementary maps between tori.
//   Delta: T^1 -> T^2 diagonal, epsilon: T^1 -> T^0, eta: T^0 -> T^1 onto p, tau: T^2 -> T^2 swap.
enum class GeomKind { DeltaPull, DeltaPush, EpsPull, EpsPush, EtaPull, EtaPush, TauPull };
GradedLinearMap geometric_map(GeomKind k);
int geometric_src(GeomKind k);
std::string geom_name(GeomKind k);

struct ZigzagStep {
    GeomKind kind;
    int pos = 0;          // first affected tensor factor
    int orientation = 1;  // -1 when the source torus carries the reversed orientation
};

struct Zigzag {
    int src = 0;
    std::vector<ZigzagStep> steps;
};

Zigzag theta(const ChronCobordism& w);
GradedLinearMap h_star(const Zigzag& z);
// One geometric map at position pos with the identity on the other factors.
GradedElement geometric_apply(GeomKind k, int pos, const GradedElement& x);
GradedElement even_geometric_apply(GeomKind k, int pos, const GradedElement& x);

struct CheckReport {
    int checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Elementary generators embedded at every position up to max_arity circles.
CheckReport verify_geometric(int max_arity);
// Local relations plus permutation of distant events over all small cobordisms.
CheckReport verify_relations(int max_events, int max_circles);
// The odd and even theories agree after reduction mod 2.
CheckReport verify_mod2_tqft(int max_events, int max_circles);

// All event sequences of bounded length with every intermediate circle count <= max_circles.
std::vector<ChronCobordism> enumerate_cobordisms(int max_events, int max_circles);

}  // namespace oddarc
