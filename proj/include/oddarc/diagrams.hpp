#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oddarc {

// Crossingless matching of n points: arcs below the line, rays going down.
// Points are 0-based internally; text and user-facing output are 1-based.
class Matching {
public:
    Matching() = default;
    Matching(int n, std::vector<int> partner);  // partner[i] == -1 for a ray

    static Matching parse(const std::string& text);  // "(())|()|"
    std::string to_string() const;

    int n() const { return n_; }
    int k() const { return static_cast<int>(arcs_.size()); }
    int partner(int i) const { return partner_[i]; }
    bool is_ray(int i) const { return partner_[i] < 0; }
    // arcs (i, j), i < j, ordered by left endpoint
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    const std::vector<int>& rays() const { return rays_; }
    // index of the arc through point i, -1 on a ray
    int arc_of(int i) const { return arc_of_[i]; }

    bool operator==(const Matching& o) const { return partner_ == o.partner_; }
    bool operator!=(const Matching& o) const { return !(*this == o); }
    bool operator<(const Matching& o) const;  // lexicographic on sorted arc lists

private:
    int n_ = 0;
    std::vector<int> partner_;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<int> rays_;
    std::vector<int> arc_of_;
};

// All crossingless matchings of type (n-k, k), sorted.
std::vector<Matching> enumerate_matchings(int n, int k);

// Ray labels: fixed coordinate of a ray at point i is value[i] * p with value in {+1,-1}.
// The unweighted convention is (-1)^{i} in 1-based numbering.
std::vector<int> default_ray_values(int n);

// Weight sequences: true = down (v), false = up (^).
using Weight = std::vector<bool>;
Weight parse_weight(const std::string& text);  // "v^^^"
std::string weight_to_string(const Weight& w);
Matching matching_from_weight(const Weight& w);
bool is_valid_weighted(const Matching& a, const Weight& w);
std::vector<int> weighted_ray_values(const Weight& w);
// All weights with k downs, lexicographic with v < ^.
std::vector<Weight> enumerate_weights(int n, int k);

// A component of a glued diagram: either a closed circle or a path with two ray ends.
struct Component {
    std::vector<int> points;  // sorted, 0-based
    bool circle = false;
    bool consistent = true;   // path ends carry equal fixed values
    int value = 0;            // fixed value of a consistent path
};

// Diagram b-bar a: a at the bottom, the mirror of b on top.
struct CircleDiagram {
    std::vector<Component> circles;  // ordered by minimal endpoint
    std::vector<Component> paths;
    std::vector<int> circle_of_point;  // -1 for points on paths
    bool empty() const;                // some path is inconsistent
    int num_circles() const { return static_cast<int>(circles.size()); }
};

CircleDiagram glue(const Matching& top, const Matching& bottom,
                   const std::vector<int>& top_values, const std::vector<int>& bottom_values);
CircleDiagram glue(const Matching& top, const Matching& bottom);

// a -> b when b arises from a by one of the two elementary rewrites.
bool arrow(const Matching& a, const Matching& b);
// strict partial order generated by arrows: result[i][j] true when ms[i] < ms[j]
std::vector<std::vector<bool>> precedes(const std::vector<Matching>& ms);
// permutation of indices that extends the partial order, ties broken by index
std::vector<int> total_order(const std::vector<Matching>& ms);

// Cell decomposition of T_a. Edges of the nesting forest and its roots are the labels.
struct CellLabel {
    bool is_root = false;
    int outer = -1;  // arc index: the root itself, or the outer arc of an edge
    int inner = -1;  // inner arc of an edge
};

struct Cell {
    std::vector<int> labels;  // indices into CellStructure::labels
    int dimension = 0;
};

struct CellStructure {
    std::vector<CellLabel> labels;
    std::vector<Cell> cells;
    std::vector<int> count_by_dimension() const;
};

CellStructure cells(const Matching& a);

// A point of T_a given by one angle per arc; angle 0 is the point p, pi is -p.
// Tests whether the point satisfies the conditions of the cell.
bool in_cell(const Matching& a, const CellStructure& cs, const Cell& cell,
             const std::vector<int>& arc_angle_steps, int steps_per_turn);

// Flat tangle from m_bottom points to m_top points. Endpoints are numbered left to right
// along the top (0 .. m_top - 1) and then along the bottom (m_top .. m_top + m_bottom - 1).
class FlatTangle {
public:
    FlatTangle() = default;
    FlatTangle(int m_bottom, int m_top, std::vector<int> partner, int closed = 0);

    // "m_bottom>m_top:i-j;...;o=N", 1-based endpoints
    static FlatTangle parse(const std::string& text);
    std::string to_string() const;

    static FlatTangle identity(int n);
    // cup joining new top points i, i + 1 on m strands (m -> m + 2)
    static FlatTangle cup(int m, int i);
    // cap joining bottom points i, i + 1 of m + 2 strands (m + 2 -> m)
    static FlatTangle cap(int m, int i);

    int m_bottom() const { return m_bottom_; }
    int m_top() const { return m_top_; }
    int closed() const { return closed_; }
    int endpoints() const { return m_bottom_ + m_top_; }
    int partner(int e) const { return partner_[e]; }
    int top(int i) const { return i; }
    int bottom(int j) const { return m_top_ + j; }
    bool operator==(const FlatTangle& o) const {
        return m_bottom_ == o.m_bottom_ && m_top_ == o.m_top_ && partner_ == o.partner_ && closed_ == o.closed_;
    }
    bool operator!=(const FlatTangle& o) const { return !(*this == o); }

private:
    int m_bottom_ = 0;
    int m_top_ = 0;
    std::vector<int> partner_;
    int closed_ = 0;
};

// t2 stacked on top of t1; new closed loops are appended after those of t2 and before
// those of t1 in the closed-loop order.
FlatTangle compose(const FlatTangle& t2, const FlatTangle& t1);

}  // namespace oddarc
