#include "oddarc/arc_algebras.hpp"
#include "oddarc/diagrams.hpp"
#include "oddarc/oddcohomology.hpp"
#include "oddarc/tqft.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace oddarc;

namespace {

py::int_ to_py(const Integer& z) { return py::int_(py::str(z.get_str())); }

std::vector<std::string> matching_strings(int n, int k) {
    auto ms = enumerate_matchings(n, k);
    std::vector<std::string> out;
    for (int i : total_order(ms)) out.push_back(ms[i].to_string());
    return out;
}

py::dict element_dict(const GradedElement& x) {
    py::dict d;
    for (const auto& [w, c] : x.terms()) d[py::str(word_to_string(w, x.arity()))] = to_py(c);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "odd arc algebras, real Springer fibers and the odd chronological TQFT";

    m.def("enumerate_matchings", &matching_strings, py::arg("n"), py::arg("k"),
          "crossingless matchings of type (n-k, k) in the arrow-compatible order");
    m.def(
        "enumerate_weights",
        [](int n, int k) {
            std::vector<std::string> out;
            for (const auto& w : enumerate_weights(n, k)) out.push_back(weight_to_string(w));
            return out;
        },
        py::arg("n"), py::arg("k"));
    m.def(
        "circles",
        [](const std::string& top, const std::string& bottom) {
            CircleDiagram d = glue(Matching::parse(top), Matching::parse(bottom));
            return d.empty() ? -1 : d.num_circles();
        },
        py::arg("top"), py::arg("bottom"), "circle count of top-bar bottom, -1 when empty");
    m.def(
        "betti",
        [](int n, int k) { return std::make_pair(springer_sequence(n, k).betti(), tanisaki_quotient(n, k).betti); },
        py::arg("n"), py::arg("k"), "graded ranks of ker psi- and of the Tanisaki quotient");
    m.def(
        "apply_cobordism",
        [](const std::string& text, const std::string& word, bool even) {
            ChronCobordism w = ChronCobordism::parse(text);
            if (static_cast<int>(word.size()) != w.src()) throw std::invalid_argument("word length differs from src");
            GradedElement x = GradedElement::basis(w.src(), word_from_string(word));
            return element_dict(even ? even_apply(w, x) : of_apply(w, x));
        },
        py::arg("cobordism"), py::arg("word"), py::arg("even") = false);
    m.def(
        "surgery_sequence",
        [](const std::string& c, const std::string& b, const std::string& a) {
            std::vector<std::string> out;
            for (auto s : surgery_sequence(Matching::parse(c), Matching::parse(b), Matching::parse(a)))
                out.push_back(case_name(s));
            return out;
        },
        py::arg("c"), py::arg("b"), py::arg("a"));

    py::class_<ArcAlgebra>(m, "ArcAlgebra")
        .def_static(
            "build",
            [](int n, int k, const std::string& flavor, const std::string& ledger) {
                Flavor f = parse_flavor(flavor);
                if (ledger.empty()) return ArcAlgebra::build(n, k, f);
                ArcAlgebra plain = ArcAlgebra::build(n, k, f);
                return ArcAlgebra::build(n, k, f, SignLedger::parse(ledger, plain.labels()));
            },
            py::arg("n"), py::arg("k"), py::arg("flavor") = "oh", py::arg("ledger") = "")
        .def_property_readonly("n", &ArcAlgebra::n)
        .def_property_readonly("k", &ArcAlgebra::k)
        .def_property_readonly("flavor", [](const ArcAlgebra& a) { return flavor_name(a.flavor()); })
        .def_property_readonly("labels", &ArcAlgebra::labels)
        .def("__len__", [](const ArcAlgebra& a) { return a.basis().size(); })
        .def(
            "basis",
            [](const ArcAlgebra& a) {
                py::list out;
                for (const auto& e : a.basis())
                    out.append(py::make_tuple(a.labels()[e.top], a.labels()[e.bottom],
                                              word_to_string(e.dots, e.circles), e.qdeg));
                return out;
            },
            "(top, bottom, dots, qdeg) per basis element")
        .def(
            "multiply",
            [](const ArcAlgebra& a, std::size_t i, std::size_t j) {
                if (i >= a.basis().size() || j >= a.basis().size()) throw py::index_error("basis index");
                py::dict d;
                for (const auto& [k, c] : a.multiply_basis(i, j)) d[py::int_(k)] = to_py(c);
                return d;
            },
            py::arg("i"), py::arg("j"))
        .def("structure_constants",
             [](const ArcAlgebra& a) {
                 py::list out;
                 for (const auto& [i, j, k, c] : a.structure_constants()) out.append(py::make_tuple(i, j, k, to_py(c)));
                 return out;
             })
        .def("to_json", &ArcAlgebra::to_json)
        .def("check_associativity",
             [](const ArcAlgebra& a) {
                 AssociativityReport r = check_associativity(a);
                 return py::dict(py::arg("triples") = r.triples, py::arg("plus") = r.plus,
                                 py::arg("minus") = r.minus, py::arg("zero") = r.zero,
                                 py::arg("failures") = r.failures);
             })
        .def("center", [](const ArcAlgebra& a) {
            CenterResult c = odd_center(a);
            return py::dict(py::arg("rank") = c.rank(), py::arg("betti") = c.betti,
                            py::arg("in_diagonal") = c.in_diagonal);
        });

    m.def(
        "verify",
        [](const std::string& suite, int n, int k) {
            if (suite == "geom-commute") return verify_geometric(4).ok();
            if (suite == "tqft-relations") return verify_relations(4, 3).ok();
            if (suite == "hiso") return verify_hiso(n, k).ok();
            if (suite == "center") return verify_center(n, k).ok();
            if (suite == "mod2")
                return compare_mod2(ArcAlgebra::build(n, k, Flavor::OH), ArcAlgebra::build(n, k, Flavor::EvenH)).ok() &&
                       verify_quotient_mod2(n, k);
            if (suite == "assoc") return check_associativity(ArcAlgebra::build(n, k, Flavor::OH)).ok();
            throw std::invalid_argument("unknown suite '" + suite + "'");
        },
        py::arg("suite"), py::arg("n") = 4, py::arg("k") = 2);
}
