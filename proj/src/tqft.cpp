#include "oddarc/tqft.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oddarc {

int Event::degree() const {
    switch (kind) {
    case EventKind::Split: return 1;
    case EventKind::Death: return -1;
    default: return 0;
    }
}

int Event::target_arity(int src) const {
    switch (kind) {
    case EventKind::Merge: return src - 1;
    case EventKind::Split: return src + 1;
    case EventKind::Birth: return src + 1;
    case EventKind::Death: return src - 1;
    case EventKind::Twist: return src;
    }
    return src;
}

bool Event::valid_for(int src) const {
    switch (kind) {
    case EventKind::Merge: return i != j && i >= 0 && j >= 0 && i < src && j < src;
    case EventKind::Split: return i >= 0 && i < src;
    case EventKind::Birth: return i >= 0 && i <= src;
    case EventKind::Death: return i >= 0 && i < src && (sign == 1 || sign == -1);
    case EventKind::Twist: return i >= 0 && i + 1 < src;
    }
    return false;
}

std::string Event::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case EventKind::Merge: os << "m " << i + 1 << ' ' << j + 1; break;
    case EventKind::Split: os << "s " << i + 1 << ' ' << (dir == SplitDir::Right ? '>' : '<'); break;
    case EventKind::Birth: os << "b " << i + 1; break;
    case EventKind::Death: os << (sign > 0 ? "d+ " : "d- ") << i + 1; break;
    case EventKind::Twist: os << "t " << i + 1; break;
    }
    return os.str();
}

bool Event::operator==(const Event& o) const {
    if (kind != o.kind || i != o.i) return false;
    switch (kind) {
    case EventKind::Merge: return j == o.j;
    case EventKind::Split: return dir == o.dir;
    case EventKind::Death: return sign == o.sign;
    default: return true;
    }
}

ChronCobordism::ChronCobordism(int src, std::vector<Event> events) : src_(src) {
    if (src < 0) throw std::invalid_argument("cobordism: negative source");
    for (const auto& e : events) push(e);
}

void ChronCobordism::push(const Event& e) {
    int m = tgt();
    if (!e.valid_for(m))
        throw std::invalid_argument("cobordism: event '" + e.to_string() + "' invalid on " + std::to_string(m) + " circles");
    events_.push_back(e);
}

int ChronCobordism::tgt() const {
    int m = src_;
    for (const auto& e : events_) m = e.target_arity(m);
    return m;
}

int ChronCobordism::degree() const {
    int d = 0;
    for (const auto& e : events_) d += e.degree();
    return d;
}

ChronCobordism ChronCobordism::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_src = false;
    ChronCobordism w;
    auto fail = [](const std::string& l) { throw std::invalid_argument("cobordism: cannot parse line '" + l + "'"); };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!have_src) {
            if (tok.rfind("src=", 0) != 0) fail(line);
            try {
                w = ChronCobordism(std::stoi(tok.substr(4)));
            } catch (const std::logic_error&) {
                fail(line);
            }
            have_src = true;
            continue;
        }
        Event e;
        int a = 0, b = 0;
        if (tok == "m") {
            if (!(ls >> a >> b)) fail(line);
            e = Event::merge(a - 1, b - 1);
        } else if (tok == "s") {
            std::string d;
            if (!(ls >> a >> d) || (d != ">" && d != "<")) fail(line);
            e = Event::split(a - 1, d == ">" ? SplitDir::Right : SplitDir::Left);
        } else if (tok == "b") {
            if (!(ls >> a)) a = 1;
            e = Event::birth(a - 1);
        } else if (tok == "d+" || tok == "d-") {
            if (!(ls >> a)) fail(line);
            e = Event::death(a - 1, tok == "d+" ? 1 : -1);
        } else if (tok == "t") {
            if (!(ls >> a)) fail(line);
            e = Event::twist(a - 1);
        } else {
            fail(line);
        }
        std::string extra;
        if (ls >> extra) fail(line);
        w.push(e);
    }
    if (!have_src) throw std::invalid_argument("cobordism: missing src=<count> header");
    return w;
}

std::string ChronCobordism::to_string() const {
    std::ostringstream os;
    os << "src=" << src_ << '\n';
    for (const auto& e : events_) os << e.to_string() << '\n';
    return os.str();
}

namespace {

// splits factor i of w into the pair (first, second) at positions i, i + 1
Word split_word(Word w, int i, int first, int second) {
    Word v = word_erase(w, i);
    v = word_insert(v, i, first);
    return word_insert(v, i + 1, second);
}

void apply_event_to_word(const Event& e, Word w, const Integer& c, GradedElement& out, bool odd) {
    switch (e.kind) {
    case EventKind::Merge: {
        int p = std::min(e.i, e.j), q = std::max(e.i, e.j);
        int bp = word_bit(w, p), bq = word_bit(w, q);
        if (bp && bq) return;
        int between = degree_before(w, q) - degree_before(w, p + 1);
        int sign = odd ? sign_of_parity(bq * between) : 1;
        Word v = word_erase(w, q);
        if (bq) v |= Word(1) << p;
        out.add(v, sign * c);
        return;
    }
    case EventKind::Split: {
        int i = e.i;
        int sign = 1;
        if (odd) {
            sign = sign_of_parity(degree_before(w, i));
            if (e.dir == SplitDir::Left) sign = -sign;
        }
        if (word_bit(w, i)) {
            out.add(split_word(w, i, 1, 1), sign * c);
        } else if (odd) {
            // v+ -> v- (x) v+ - v+ (x) v-
            out.add(split_word(w, i, 1, 0), sign * c);
            out.add(split_word(w, i, 0, 1), -sign * c);
        } else {
            // 1 -> X (x) 1 + 1 (x) X
            out.add(split_word(w, i, 1, 0), c);
            out.add(split_word(w, i, 0, 1), c);
        }
        return;
    }
    case EventKind::Birth: out.add(word_insert(w, e.i, 0), c); return;
    case EventKind::Death: {
        if (!word_bit(w, e.i)) return;
        int sign = odd ? sign_of_parity(degree_before(w, e.i)) * -e.sign : 1;
        out.add(word_erase(w, e.i), sign * c);
        return;
    }
    case EventKind::Twist: {
        int a = word_bit(w, e.i), b = word_bit(w, e.i + 1);
        Word v = w & ~((Word(1) << e.i) | (Word(1) << (e.i + 1)));
        v |= static_cast<Word>(b) << e.i;
        v |= static_cast<Word>(a) << (e.i + 1);
        out.add(v, (odd && a && b) ? -c : c);
        return;
    }
    }
}

GradedElement apply_event(const Event& e, const GradedElement& x, bool odd) {
    if (!e.valid_for(x.arity()))
        throw std::invalid_argument("event '" + e.to_string() + "' invalid on " + std::to_string(x.arity()) + " circles");
    GradedElement out(e.target_arity(x.arity()));
    for (const auto& [w, c] : x.terms()) apply_event_to_word(e, w, c, out, odd);
    return out;
}

GradedLinearMap matrix_by_images(const ChronCobordism& w, bool odd) {
    GradedLinearMap f(w.src(), w.tgt(), w.degree());
    for (Word in = 0; in < (Word(1) << w.src()); ++in) {
        GradedElement x = GradedElement::basis(w.src(), in);
        for (const auto& e : w.events()) x = apply_event(e, x, odd);
        for (const auto& [v, c] : x.terms()) f.at(v, in) = c;
    }
    return f;
}

GradedLinearMap local(const GradedLinearMap& f, int pos, int arity) {
    return koszul_tensor(koszul_tensor(GradedLinearMap::identity(pos), f),
                         GradedLinearMap::identity(arity - pos - f.src()));
}

}  // namespace

GradedElement of_apply(const Event& e, const GradedElement& x) { return apply_event(e, x, true); }

GradedElement of_apply(const ChronCobordism& w, const GradedElement& x) {
    GradedElement y = x;
    if (y.arity() != w.src() && !y.is_zero()) throw std::invalid_argument("of_apply: arity mismatch");
    if (y.is_zero()) y = GradedElement(w.src());
    for (const auto& e : w.events()) y = of_apply(e, y);
    return y;
}

GradedLinearMap of_matrix(const ChronCobordism& w) { return matrix_by_images(w, true); }

GradedElement even_apply(const Event& e, const GradedElement& x) { return apply_event(e, x, false); }

GradedElement even_apply(const ChronCobordism& w, const GradedElement& x) {
    GradedElement y = x.is_zero() ? GradedElement(w.src()) : x;
    for (const auto& e : w.events()) y = even_apply(e, y);
    return y;
}

GradedLinearMap even_matrix(const ChronCobordism& w) { return matrix_by_images(w, false); }

GradedLinearMap of_merge() {
    GradedLinearMap f(2, 1, 0);
    f.at(0, 0) = 1;  // ++ -> +
    f.at(1, 2) = 1;  // +- -> -
    f.at(1, 1) = 1;  // -+ -> -
    return f;
}

GradedLinearMap of_split(SplitDir d) {
    GradedLinearMap f(1, 2, 1);
    int s = d == SplitDir::Right ? 1 : -1;
    f.at(word_from_string("-+"), 0) = s;
    f.at(word_from_string("+-"), 0) = -s;
    f.at(word_from_string("--"), 1) = s;
    return f;
}

GradedLinearMap of_birth() {
    GradedLinearMap f(0, 1, 0);
    f.at(0, 0) = 1;
    return f;
}

GradedLinearMap of_death(int sign) {
    GradedLinearMap f(1, 0, -1);
    f.at(0, 1) = -sign;
    return f;
}

GradedLinearMap of_twist() { return tau(1, 1); }

GradedLinearMap of_matrix_canonical(const ChronCobordism& w) {
    GradedLinearMap acc = GradedLinearMap::identity(w.src());
    int m = w.src();
    for (const auto& e : w.events()) {
        switch (e.kind) {
        case EventKind::Merge: {
            int p = std::min(e.i, e.j), q = std::max(e.i, e.j);
            for (int r = q - 1; r > p; --r) acc = compose(local(tau(1, 1), r, m), acc);
            acc = compose(local(of_merge(), p, m), acc);
            break;
        }
        case EventKind::Split: acc = compose(local(of_split(e.dir), e.i, m), acc); break;
        case EventKind::Birth: acc = compose(local(of_birth(), e.i, m), acc); break;
        case EventKind::Death: acc = compose(local(of_death(e.sign), e.i, m), acc); break;
        case EventKind::Twist: acc = compose(local(tau(1, 1), e.i, m), acc); break;
        }
        m = e.target_arity(m);
    }
    return acc;
}

GradedLinearMap geometric_map(GeomKind k) {
    switch (k) {
    case GeomKind::DeltaPull: return of_merge();
    case GeomKind::DeltaPush: {
        GradedLinearMap f(1, 2, 1);
        f.at(word_from_string("-+"), 0) = -1;
        f.at(word_from_string("+-"), 0) = 1;
        f.at(word_from_string("--"), 1) = -1;
        return f;
    }
    case GeomKind::EpsPull: {
        GradedLinearMap f(0, 1, 0);
        f.at(0, 0) = 1;
        return f;
    }
    case GeomKind::EpsPush: {
        GradedLinearMap f(1, 0, -1);
        f.at(0, 1) = 1;
        return f;
    }
    case GeomKind::EtaPull: {
        GradedLinearMap f(1, 0, 0);
        f.at(0, 0) = 1;
        return f;
    }
    case GeomKind::EtaPush: {
        GradedLinearMap f(0, 1, 1);
        f.at(1, 0) = 1;
        return f;
    }
    case GeomKind::TauPull: return tau(1, 1);
    }
    throw std::logic_error("geometric_map: unknown kind");
}

int geometric_src(GeomKind k) { return geometric_map(k).src(); }

std::string geom_name(GeomKind k) {
    switch (k) {
    case GeomKind::DeltaPull: return "Delta^*";
    case GeomKind::DeltaPush: return "Delta_!";
    case GeomKind::EpsPull: return "epsilon^*";
    case GeomKind::EpsPush: return "epsilon_!";
    case GeomKind::EtaPull: return "eta^*";
    case GeomKind::EtaPush: return "eta_!";
    case GeomKind::TauPull: return "tau^*";
    }
    return "?";
}

Zigzag theta(const ChronCobordism& w) {
    Zigzag z;
    z.src = w.src();
    for (const auto& e : w.events()) {
        switch (e.kind) {
        case EventKind::Merge: {
            int p = std::min(e.i, e.j), q = std::max(e.i, e.j);
            for (int r = q - 1; r > p; --r) z.steps.push_back({GeomKind::TauPull, r, 1});
            z.steps.push_back({GeomKind::DeltaPull, p, 1});
            break;
        }
        case EventKind::Split:
            z.steps.push_back({GeomKind::DeltaPush, e.i, e.dir == SplitDir::Left ? 1 : -1});
            break;
        case EventKind::Birth: z.steps.push_back({GeomKind::EpsPull, e.i, 1}); break;
        case EventKind::Death: z.steps.push_back({GeomKind::EpsPush, e.i, e.sign < 0 ? 1 : -1}); break;
        case EventKind::Twist: z.steps.push_back({GeomKind::TauPull, e.i, 1}); break;
        }
    }
    return z;
}

GradedLinearMap h_star(const Zigzag& z) {
    GradedLinearMap acc = GradedLinearMap::identity(z.src);
    int m = z.src;
    for (const auto& s : z.steps) {
        GradedLinearMap g = geometric_map(s.kind);
        if (s.orientation < 0) g = g.scaled(-1);
        acc = compose(local(g, s.pos, m), acc);
        m = acc.dst();
    }
    return acc;
}

namespace {

GradedElement geometric_apply_impl(GeomKind k, int pos, const GradedElement& x, bool odd) {
    auto ev = [&](const Event& e) { return odd ? of_apply(e, x) : even_apply(e, x); };
    switch (k) {
    case GeomKind::DeltaPull: return ev(Event::merge(pos, pos + 1));
    case GeomKind::DeltaPush: return ev(Event::split(pos, SplitDir::Left));
    case GeomKind::EpsPull: return ev(Event::birth(pos));
    case GeomKind::EpsPush: return ev(Event::death(pos, -1));
    case GeomKind::TauPull: return ev(Event::twist(pos));
    case GeomKind::EtaPull: {
        if (pos < 0 || pos >= x.arity()) throw std::invalid_argument("eta^*: bad position");
        GradedElement out(x.arity() - 1);
        for (const auto& [w, c] : x.terms())
            if (!word_bit(w, pos)) out.add(word_erase(w, pos), c);
        return out;
    }
    case GeomKind::EtaPush: {
        if (pos < 0 || pos > x.arity()) throw std::invalid_argument("eta_!: bad position");
        GradedElement out(x.arity() + 1);
        for (const auto& [w, c] : x.terms()) {
            int sign = odd ? sign_of_parity(degree_before(w, pos)) : 1;
            out.add(word_insert(w, pos, 1), sign * c);
        }
        return out;
    }
    }
    throw std::logic_error("geometric_apply: unknown kind");
}

}  // namespace

GradedElement geometric_apply(GeomKind k, int pos, const GradedElement& x) {
    return geometric_apply_impl(k, pos, x, true);
}

GradedElement even_geometric_apply(GeomKind k, int pos, const GradedElement& x) {
    return geometric_apply_impl(k, pos, x, false);
}

std::vector<ChronCobordism> enumerate_cobordisms(int max_events, int max_circles) {
    std::vector<ChronCobordism> out;
    std::function<void(ChronCobordism&, int)> rec = [&](ChronCobordism& w, int left) {
        out.push_back(w);
        if (left == 0) return;
        const int m = w.tgt();
        std::vector<Event> next;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) next.push_back(Event::merge(i, j));
        if (m + 1 <= max_circles) {
            for (int i = 0; i < m; ++i) {
                next.push_back(Event::split(i, SplitDir::Right));
                next.push_back(Event::split(i, SplitDir::Left));
            }
            for (int i = 0; i <= m; ++i) next.push_back(Event::birth(i));
        }
        for (int i = 0; i < m; ++i) {
            next.push_back(Event::death(i, 1));
            next.push_back(Event::death(i, -1));
        }
        for (int i = 0; i + 1 < m; ++i) next.push_back(Event::twist(i));
        for (const auto& e : next) {
            ChronCobordism v = w;
            v.push(e);
            rec(v, left - 1);
        }
    };
    for (int src = 0; src <= max_circles; ++src) {
        ChronCobordism w(src);
        rec(w, max_events);
    }
    return out;
}

CheckReport verify_geometric(int max_arity) {
    CheckReport r;
    auto check = [&](const ChronCobordism& w) {
        ++r.checked;
        GradedLinearMap direct = of_matrix(w);
        if (h_star(theta(w)) != direct)
            r.failures.push_back("H*(Theta(W)) != OF(W) for W = " + w.to_string());
        if (of_matrix_canonical(w) != direct)
            r.failures.push_back("twist-chain route disagrees with direct route for W = " + w.to_string());
    };
    for (int m = 0; m <= max_arity; ++m) {
        for (int i = 0; i <= m; ++i)
            if (m + 1 <= max_arity + 1) check(ChronCobordism(m, {Event::birth(i)}));
        for (int i = 0; i < m; ++i) {
            check(ChronCobordism(m, {Event::split(i, SplitDir::Right)}));
            check(ChronCobordism(m, {Event::split(i, SplitDir::Left)}));
            check(ChronCobordism(m, {Event::death(i, 1)}));
            check(ChronCobordism(m, {Event::death(i, -1)}));
            for (int j = 0; j < m; ++j)
                if (j != i) check(ChronCobordism(m, {Event::merge(i, j)}));
            if (i + 1 < m) check(ChronCobordism(m, {Event::twist(i)}));
        }
    }
    return r;
}

namespace {

// Event on circle identities, used to move events past each other.
struct IdEvent {
    Event shape;                 // kind, direction, sign; positions are recomputed
    std::vector<int> consumed;   // identities touched (merge: 2, split/death: 1, twist: 2)
    std::vector<int> created;    // merge: 1, split: 2, birth: 1
};

std::vector<int> run_ids(const std::vector<int>& start, const IdEvent& e, Event& positional, bool& ok) {
    std::vector<int> ids = start;
    auto pos = [&](int id) {
        auto it = std::find(ids.begin(), ids.end(), id);
        return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
    };
    ok = true;
    positional = e.shape;
    switch (e.shape.kind) {
    case EventKind::Merge: {
        int a = pos(e.consumed[0]), b = pos(e.consumed[1]);
        if (a < 0 || b < 0) { ok = false; return ids; }
        positional.i = a;
        positional.j = b;
        int p = std::min(a, b), q = std::max(a, b);
        ids[p] = e.created[0];
        ids.erase(ids.begin() + q);
        break;
    }
    case EventKind::Split: {
        int a = pos(e.consumed[0]);
        if (a < 0) { ok = false; return ids; }
        positional.i = a;
        ids[a] = e.created[0];
        ids.insert(ids.begin() + a + 1, e.created[1]);
        break;
    }
    case EventKind::Birth: {
        int a = std::min<int>(e.shape.i, static_cast<int>(ids.size()));
        positional.i = a;
        ids.insert(ids.begin() + a, e.created[0]);
        break;
    }
    case EventKind::Death: {
        int a = pos(e.consumed[0]);
        if (a < 0) { ok = false; return ids; }
        positional.i = a;
        ids.erase(ids.begin() + a);
        break;
    }
    case EventKind::Twist: {
        int a = pos(e.consumed[0]), b = pos(e.consumed[1]);
        if (a < 0 || b != a + 1) { ok = false; return ids; }
        positional.i = a;
        std::swap(ids[a], ids[b]);
        break;
    }
    }
    return ids;
}

// Attaches identities to a positional cobordism.
std::vector<IdEvent> label(const ChronCobordism& w, std::vector<int>& ids, int& fresh) {
    std::vector<IdEvent> out;
    for (const auto& e : w.events()) {
        IdEvent ie;
        ie.shape = e;
        switch (e.kind) {
        case EventKind::Merge:
            ie.consumed = {ids[e.i], ids[e.j]};
            ie.created = {fresh++};
            break;
        case EventKind::Split:
            ie.consumed = {ids[e.i]};
            ie.created = {fresh++, fresh++};
            break;
        case EventKind::Birth: ie.created = {fresh++}; break;
        case EventKind::Death: ie.consumed = {ids[e.i]}; break;
        case EventKind::Twist: ie.consumed = {ids[e.i], ids[e.i + 1]}; break;
        }
        Event dummy;
        bool ok;
        ids = run_ids(ids, ie, dummy, ok);
        out.push_back(ie);
    }
    return out;
}

bool touches(const IdEvent& e, int id) {
    return std::find(e.consumed.begin(), e.consumed.end(), id) != e.consumed.end() ||
           std::find(e.created.begin(), e.created.end(), id) != e.created.end();
}

bool distant(const IdEvent& a, const IdEvent& b) {
    for (int id : a.consumed) if (touches(b, id)) return false;
    for (int id : a.created) if (touches(b, id)) return false;
    return true;
}

GradedLinearMap reorder_outputs(const GradedLinearMap& f, const std::vector<int>& have, const std::vector<int>& want) {
    // factor p of `have` goes to the position of the same identity in `want`
    std::vector<int> perm(have.size());
    for (std::size_t p = 0; p < have.size(); ++p)
        perm[p] = static_cast<int>(std::find(want.begin(), want.end(), have[p]) - want.begin());
    GradedLinearMap g(f.src(), f.dst(), f.degree());
    for (Word in = 0; in < (Word(1) << f.src()); ++in) {
        GradedElement col(f.dst());
        for (Word out = 0; out < (Word(1) << f.dst()); ++out) col.add(out, f.at(out, in));
        GradedElement moved = permute_factors(col, perm);
        for (const auto& [w, c] : moved.terms()) g.at(w, in) = c;
    }
    return g;
}

}  // namespace

CheckReport verify_relations(int max_events, int max_circles) {
    CheckReport r;
    auto expect = [&](const ChronCobordism& lhs, const ChronCobordism& rhs, int sign, const std::string& name) {
        ++r.checked;
        if (of_matrix(lhs) != of_matrix(rhs).scaled(sign))
            r.failures.push_back(name + " fails: " + lhs.to_string() + " vs " + rhs.to_string());
    };
    for (int m = 1; m <= max_circles; ++m) {
        ChronCobordism id(m);
        for (int p = 0; p < m; ++p) {
            expect(ChronCobordism(m, {Event::death(p, 1)}), ChronCobordism(m, {Event::death(p, -1)}), -1,
                   "opposite caps");
            {
                expect(ChronCobordism(m, {Event::birth(p), Event::merge(p, p + 1)}), id, 1, "unit on the left");
                expect(ChronCobordism(m, {Event::birth(p + 1), Event::merge(p, p + 1)}), id, 1, "unit on the right");
                expect(ChronCobordism(m, {Event::split(p, SplitDir::Right), Event::death(p + 1, 1)}), id, 1,
                       "counit on the right");
                expect(ChronCobordism(m, {Event::split(p, SplitDir::Right), Event::death(p, -1)}), id, 1,
                       "counit on the left");
                expect(ChronCobordism(m, {Event::split(p, SplitDir::Right), Event::twist(p)}),
                       ChronCobordism(m, {Event::split(p, SplitDir::Left)}), 1, "split orientation");
                expect(ChronCobordism(m, {Event::split(p, SplitDir::Right)}),
                       ChronCobordism(m, {Event::split(p, SplitDir::Left)}), -1, "reversed split");
            }
            if (p + 1 < m) {
                expect(ChronCobordism(m, {Event::twist(p), Event::merge(p, p + 1)}),
                       ChronCobordism(m, {Event::merge(p, p + 1)}), 1, "merge orientation");
                expect(ChronCobordism(m, {Event::twist(p), Event::twist(p)}), id, 1, "twist involution");
            }
            for (int q = 0; q < m; ++q)
                if (q != p)
                    expect(ChronCobordism(m, {Event::merge(p, q)}), ChronCobordism(m, {Event::merge(q, p)}), 1,
                           "merge symmetry");
        }
        if (m >= 3) {
            expect(ChronCobordism(m, {Event::merge(0, 1), Event::merge(0, 1)}),
                   ChronCobordism(m, {Event::merge(1, 2), Event::merge(0, 1)}), 1, "merge associativity");
        }
    }
    for (const auto& w : enumerate_cobordisms(max_events, max_circles)) {
        GradedLinearMap direct = of_matrix(w);
        ++r.checked;
        if (of_matrix_canonical(w) != direct)
            r.failures.push_back("twist-chain route disagrees for " + w.to_string());
        std::vector<int> ids(w.src());
        for (int i = 0; i < w.src(); ++i) ids[i] = i;
        int fresh = w.src();
        std::vector<int> final_ids = ids;
        auto labelled = label(w, final_ids, fresh);
        for (std::size_t t = 0; t + 1 < labelled.size(); ++t) {
            if (!distant(labelled[t], labelled[t + 1])) continue;
            auto swapped = labelled;
            std::swap(swapped[t], swapped[t + 1]);
            std::vector<int> cur(w.src());
            for (int i = 0; i < w.src(); ++i) cur[i] = i;
            ChronCobordism v(w.src());
            bool ok = true;
            for (const auto& ie : swapped) {
                Event pe;
                cur = run_ids(cur, ie, pe, ok);
                if (!ok) break;
                v.push(pe);
            }
            if (!ok) continue;
            ++r.checked;
            int sign = sign_of_parity(labelled[t].shape.degree() * labelled[t + 1].shape.degree());
            GradedLinearMap moved = reorder_outputs(of_matrix(v), cur, final_ids);
            if (moved != direct.scaled(sign))
                r.failures.push_back("distant events do not commute up to sign in " + w.to_string());
        }
    }
    return r;
}

CheckReport verify_mod2_tqft(int max_events, int max_circles) {
    CheckReport r;
    for (const auto& w : enumerate_cobordisms(max_events, max_circles)) {
        ++r.checked;
        GradedLinearMap odd = of_matrix(w), even = even_matrix(w);
        const auto& a = odd.matrix();
        const auto& b = even.matrix();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if ((a(i, j) - b(i, j)) % 2 != 0) {
                    r.failures.push_back("odd and even theories differ mod 2 for " + w.to_string());
                    i = a.rows();
                    break;
                }
    }
    return r;
}

}  // namespace oddarc
