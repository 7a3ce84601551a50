#include "newtonpoly/cli.hpp"
#include "newtonpoly/errors.hpp"
#include "newtonpoly/eval_oracle.hpp"
#include "newtonpoly/polytope.hpp"
#include "newtonpoly/reconstruct.hpp"
#include "newtonpoly/slp.hpp"
#include "newtonpoly/sparse_polynomial.hpp"
#include "newtonpoly/witness_oracle.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace newtonpoly;

namespace {

// Directions cross the boundary as strings ("p/q" or decimals) to stay exact.
RationalVector direction(const std::vector<std::string>& w) {
    RationalVector out;
    for (const auto& x : w) {
        const auto v = parse_direction(x);
        if (v.size() != 1) throw Error(ErrorKind::Parse, "bad direction entry '" + x + "'");
        out.push_back(v[0]);
    }
    return out;
}

std::vector<std::pair<std::vector<std::string>, std::string>> rows(const auto& list) {
    std::vector<std::pair<std::vector<std::string>, std::string>> out;
    for (const auto& r : list) {
        std::vector<std::string> normal;
        for (const auto& a : r.normal) normal.push_back(a.str());
        out.emplace_back(normal, r.offset.str());
    }
    return out;
}

WitnessLine witness_line(const SparseBackend& be, std::uint64_t seed, const std::optional<std::vector<Complex>>& a,
                         const std::optional<std::vector<Complex>>& b) {
    if (a.has_value() != b.has_value()) throw Error(ErrorKind::InvalidArgument, "give both a and b, or neither");
    return a ? make_line(be, *a, *b) : make_line(be, seed);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Newton polytopes from evaluation or witness-set oracles.";

    static py::exception<Error> error(m, "NewtonpolyError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object kind = py::str(std::string(to_string(e.kind())));
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), kind).ptr());
        }
    });
    m.def("exit_code", [](const std::string& kind) {
        for (int k = 0; k <= int(ErrorKind::Inconsistent); ++k)
            if (to_string(ErrorKind(k)) == kind) return exit_code(ErrorKind(k));
        throw py::value_error("unknown error kind " + kind);
    });

    py::class_<LatticePolytope>(m, "Polytope")
        .def_property_readonly("n", &LatticePolytope::ambient_dim)
        .def_property_readonly("dim", &LatticePolytope::dim)
        .def_property_readonly("vertices", &LatticePolytope::vertices)
        .def_property_readonly("facets", [](const LatticePolytope& p) { return rows(p.facets()); })
        .def_property_readonly("equalities", [](const LatticePolytope& p) { return rows(p.equalities()); })
        .def("contains", [](const LatticePolytope& p, const LatticePoint& x) { return p.contains(x); })
        .def("to_json", [](const LatticePolytope& p) { return to_json(p).dump(); })
        .def("__eq__", [](const LatticePolytope& a, const LatticePolytope& b) { return a == b; })
        .def("__repr__", [](const LatticePolytope& p) {
            std::ostringstream os;
            os << "Polytope(dim=" << p.dim() << ", vertices=" << p.vertices().size() << ")";
            return os.str();
        });

    m.def("convex_hull", [](const std::vector<LatticePoint>& pts) { return convex_hull(pts); }, py::arg("points"));
    m.def("lattice_points", &lattice_points, py::arg("polytope"));
    m.def("dilate", &dilate, py::arg("polytope"), py::arg("k"));
    m.def("polytope_from_json", [](const std::string& s) { return polytope_from_json(nlohmann::json::parse(s)); });
    m.def("affinely_isomorphic", [](const LatticePolytope& p, const LatticePolytope& q) -> std::optional<std::string> {
        const auto w = affinely_isomorphic(p, q);
        if (!w) return std::nullopt;
        return to_json(*w).dump();
    });

    py::class_<SparsePolynomial>(m, "SparsePolynomial")
        .def_property_readonly("num_vars", &SparsePolynomial::num_vars)
        .def_property_readonly("total_degree", &SparsePolynomial::total_degree)
        .def("support", &SparsePolynomial::support)
        .def("__len__", &SparsePolynomial::size)
        .def("__str__", [](const SparsePolynomial& p) { return format_sparse(p); });
    m.def("parse_sparse", [](const std::string& text) { return parse_sparse(text); }, py::arg("text"));

    m.def(
        "support_value",
        [](const SparsePolynomial& p, const std::vector<std::string>& w, std::uint64_t seed) {
            py::gil_scoped_release release;
            const auto est = support_value(sparse_to_slp(p), direction(w), seed);
            return std::make_pair(to_string(*est.h_value), to_string(est.group_gen));
        },
        py::arg("poly"), py::arg("w"), py::arg("seed") = 0);

    m.def(
        "vertex_query",
        [](const SparsePolynomial& p, const std::vector<double>& w, double delta, double lambda,
           const std::vector<ExponentVector>& superset, std::optional<double> t, std::uint64_t seed) {
            EvalBounds b{delta, lambda, superset};
            const auto gap = min_gap(b.superset, std::span<const double>(w));
            const double log_t = t ? std::log(*t) : std::log(2.0) + threshold_log_t(b, gap);
            const auto ans = vertex_query_log(sparse_to_slp(p), b, w, log_t, seed);
            return py::make_tuple(ans.beta, ans.ratio, ans.log_t, ans.d_w);
        },
        py::arg("poly"), py::arg("w"), py::arg("delta"), py::arg("lambda_"), py::arg("superset"),
        py::arg("t") = py::none(), py::arg("seed") = 0);

    m.def(
        "witness_vertex",
        [](const SparsePolynomial& p, const std::vector<std::string>& w, double C,
           std::optional<std::vector<Complex>> a, std::optional<std::vector<Complex>> b, std::uint64_t seed,
           double t_max) {
            py::gil_scoped_release release;
            const SparseBackend be(p);
            const auto line = witness_line(be, seed, a, b);
            WitnessQueryConfig q;
            q.t_max = t_max;
            q.seed = seed;
            const auto ans = witness_vertex_query(be, line, line_constants(line, C, double(p.size())), direction(w), q);
            py::gil_scoped_acquire acquire;
            py::dict cert;
            cert["t_entry"] = ans.certificate.t_entry;
            cert["d_w"] = ans.certificate.d_w;
            cert["diverging"] = ans.certificate.diverging;
            cert["rate_checks"] = ans.certificate.rate_checks;
            cert["slopes"] = ans.certificate.slopes;
            return py::make_tuple(ans.beta, cert);
        },
        py::arg("poly"), py::arg("w"), py::arg("C"), py::arg("a") = py::none(), py::arg("b") = py::none(),
        py::arg("seed") = 0, py::arg("t_max") = 1e8);

    m.def(
        "reconstruct_eval",
        [](const SparsePolynomial& p, std::uint64_t seed, unsigned jobs) {
            py::gil_scoped_release release;
            AdaptiveEvalOracle oracle(sparse_to_slp(p), p.num_vars(), seed);
            ReconstructConfig cfg;
            cfg.seed = seed;
            cfg.jobs = jobs;
            const auto r = reconstruct(oracle, cfg);
            return std::make_pair(r.polytope, to_json(r).dump());
        },
        py::arg("poly"), py::arg("seed") = 0, py::arg("jobs") = 1);

    m.def(
        "reconstruct_witness",
        [](const SparsePolynomial& p, double C, std::optional<std::vector<Complex>> a,
           std::optional<std::vector<Complex>> b, std::uint64_t seed, unsigned jobs) {
            py::gil_scoped_release release;
            auto be = std::make_shared<SparseBackend>(p);
            const auto line = witness_line(*be, seed, a, b);
            WitnessOracle oracle(be, line, line_constants(line, C, double(p.size())));
            ReconstructConfig cfg;
            cfg.seed = seed;
            cfg.jobs = jobs;
            const auto r = reconstruct(oracle, cfg);
            return std::make_pair(r.polytope, to_json(r).dump());
        },
        py::arg("poly"), py::arg("C"), py::arg("a") = py::none(), py::arg("b") = py::none(), py::arg("seed") = 0,
        py::arg("jobs") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
