#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "novikov/cohomology.hpp"
#include "novikov/error.hpp"
#include "novikov/io.hpp"
#include "novikov/models.hpp"
#include "novikov/pairs.hpp"
#include "novikov/theorem_checks.hpp"

namespace py = pybind11;
using namespace novikov;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints and "p/q" strings are accepted too.
Rational to_rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational::parse(py::str(h).cast<std::string>());
    if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
        auto n = py::str(h.attr("numerator")).cast<std::string>();
        auto d = py::str(h.attr("denominator")).cast<std::string>();
        return Rational::parse(n + "/" + d);
    }
    throw Error(ErrorCode::ParseError, "expected an int, a fractions.Fraction or a \"p/q\" string");
}

py::object to_fraction(const Rational& q) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(q.to_fraction_string());
}

std::vector<Rational> to_rationals(const py::iterable& xs) {
    std::vector<Rational> out;
    for (const auto& x : xs) out.push_back(to_rational(x));
    return out;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

LocalSystem system_or_trivial(const ComplexPtr& c, const std::optional<LocalSystem>& s) { return s ? *s : LocalSystem::trivial(c); }

Subcomplex select(const ComplexPtr& c, const std::vector<Simplex>& simplices, bool close) {
    return subcomplex(c, simplices, close ? SelectMode::CloseFaces : SelectMode::Strict);
}

} // namespace

PYBIND11_MODULE(_novikov, m) {
    m.doc() = "Twisted (Morse-Novikov) cohomology of simplicial complexes with rank-1 local systems";

    py::register_exception<Error>(m, "NovikovError", PyExc_ValueError);

    py::class_<Complex, std::shared_ptr<Complex>>(m, "Complex")
        .def_static(
            "from_simplices",
            [](std::size_t n, const std::vector<Simplex>& simplices, const std::string& name) {
                return std::const_pointer_cast<Complex>(Complex::closure(n, simplices, name));
            },
            py::arg("vertex_count"), py::arg("simplices"), py::arg("name") = "", "face closure of the given simplices")
        .def_static(
            "from_json", [](const std::string& text) { return std::const_pointer_cast<Complex>(parse_complex_json(text)); },
            py::arg("text"))
        .def("to_json", [](const Complex& c) { return complex_to_json(c).dump(2); })
        .def_property_readonly("name", &Complex::name)
        .def_property_readonly("vertex_count", &Complex::vertex_count)
        .def_property_readonly("dimension", &Complex::dimension)
        .def("f_vector", &Complex::f_vector)
        .def("euler_characteristic", &Complex::euler_characteristic)
        .def("simplices", &Complex::simplices, py::arg("p"))
        .def("maximal_simplices", &Complex::maximal_simplices)
        .def("__eq__", [](const Complex& a, const Complex& b) { return a == b; })
        .def("__repr__", [](const Complex& c) {
            std::string f;
            for (auto n : c.f_vector()) f += (f.empty() ? "" : ", ") + std::to_string(n);
            return "<Complex " + (c.name().empty() ? std::string("unnamed") : c.name()) + " f=(" + f + ")>";
        });

    py::class_<LocalSystem>(m, "LocalSystem")
        .def_static("trivial", [](const std::shared_ptr<Complex>& c) { return LocalSystem::trivial(c); })
        .def_static(
            "from_edges",
            [](const std::shared_ptr<Complex>& c, const py::dict& edges) {
                std::map<std::pair<Vertex, Vertex>, Rational> w;
                for (const auto& [k, v] : edges) {
                    auto uv = k.cast<std::pair<Vertex, Vertex>>();
                    w[uv] = to_rational(v);
                }
                LocalSystem s = LocalSystem::from_edges(c, w);
                if (auto err = validate_system(s)) throw Error(ErrorCode::InvalidSystem, err->message());
                return s;
            },
            py::arg("complex"), py::arg("edges"), "edge weights {(u, v): t}; missing edges get 1")
        .def_static(
            "from_json",
            [](const std::shared_ptr<Complex>& c, const std::string& text) { return parse_system_json(text, c); },
            py::arg("complex"), py::arg("text"))
        .def("to_json", [](const LocalSystem& s) { return system_to_json(s).dump(2); })
        .def("weight", [](const LocalSystem& s, Vertex u, Vertex v) { return to_fraction(s.weight(u, v)); })
        .def("transport", [](const LocalSystem& s, Vertex to, Vertex from) { return to_fraction(s.transport(to, from)); })
        .def("is_trivial", &LocalSystem::is_trivial)
        .def("fingerprint", &LocalSystem::fingerprint)
        .def("__eq__", [](const LocalSystem& a, const LocalSystem& b) { return a == b; });

    m.def(
        "validate_system",
        [](const LocalSystem& s) -> std::optional<std::string> {
            if (auto v = validate_system(s)) return v->message();
            return std::nullopt;
        },
        "None when valid, otherwise the violated triangle condition");
    m.def(
        "monodromy", [](const LocalSystem& s, const std::vector<Vertex>& loop) { return to_fraction(monodromy(s, loop)); },
        py::arg("system"), py::arg("loop"));
    m.def(
        "gauge_transform", [](const LocalSystem& s, const py::iterable& g) { return gauge_transform(s, to_rationals(g)); },
        py::arg("system"), py::arg("gauge"));
    m.def(
        "betti",
        [](const std::shared_ptr<Complex>& c, const std::optional<LocalSystem>& s) {
            return betti(c, system_or_trivial(c, s), false).betti;
        },
        py::arg("complex"), py::arg("system") = py::none(), "twisted Betti numbers; trivial system by default");
    m.def(
        "relative_betti",
        [](const std::shared_ptr<Complex>& c, const std::vector<Simplex>& z, const std::optional<LocalSystem>& s, bool close) {
            return relative_betti(c, select(c, z, close), system_or_trivial(c, s), false).betti;
        },
        py::arg("complex"), py::arg("subcomplex"), py::arg("system") = py::none(), py::arg("close") = true);
    m.def(
        "long_exact_sequence",
        [](const std::shared_ptr<Complex>& c, const std::vector<Simplex>& z, const std::optional<LocalSystem>& s, bool close) {
            PairLES les = assemble_les(c, select(c, z, close), system_or_trivial(c, s));
            py::dict d;
            d["relative"] = les.relative;
            d["absolute"] = les.absolute;
            d["subcomplex"] = les.sub;
            d["exact"] = les.exact();
            return d;
        },
        py::arg("complex"), py::arg("subcomplex"), py::arg("system") = py::none(), py::arg("close") = true);
    m.def(
        "product", [](const std::shared_ptr<Complex>& a, const std::shared_ptr<Complex>& b) {
            return std::const_pointer_cast<Complex>(product(a, b).complex);
        });
    m.def(
        "pullback_to_product",
        [](const std::shared_ptr<Complex>& a, const std::shared_ptr<Complex>& b, const LocalSystem& s) {
            Product p = product(a, b);
            return pullback_system(p.pr1, s);
        },
        py::arg("base"), py::arg("fiber"), py::arg("system"), "pr1^* of a system on the base of base x fiber");

    m.def(
        "model",
        [](const std::string& name, const std::vector<long>& params) {
            return std::const_pointer_cast<Complex>(build_model(name, params).complex);
        },
        py::arg("name"), py::arg("params") = std::vector<long>{});
    m.def("catalog", [] {
        std::vector<std::string> names;
        for (const auto& e : catalog()) names.push_back(e.name);
        return names;
    });
    m.def("loop_basis", [](const std::shared_ptr<Complex>& c) { return loop_basis(c); });
    m.def(
        "generic_system",
        [](const std::shared_ptr<Complex>& c, const py::iterable& weights) { return generic_system(c, to_rationals(weights)); },
        py::arg("complex"), py::arg("weights"));

    m.def("suites", [] { return suite_names(); });
    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, bool quick, bool keep_going) {
            if (!is_suite(suite)) throw Error(ErrorCode::BadParams, "unknown suite '" + suite + "'");
            SuiteOptions opt;
            opt.seed = seed;
            opt.quick = quick;
            opt.stop_on_failure = !keep_going;
            py::list out;
            std::vector<CheckReport> reports;
            {
                py::gil_scoped_release release;
                reports = run_suite(suite, opt);
            }
            for (const auto& r : reports) out.append(json_to_py(to_json(r, false)));
            return out;
        },
        py::arg("suite"), py::arg("seed") = 7, py::arg("quick") = false, py::arg("keep_going") = false,
        "runs a verification suite and returns one report dict per instance");
}
