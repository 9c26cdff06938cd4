#include "sdpkit/bits.hpp"
#include "sdpkit/catalog.hpp"
#include "sdpkit/design.hpp"
#include "sdpkit/errors.hpp"
#include "sdpkit/group.hpp"
#include "sdpkit/iso.hpp"
#include "sdpkit/product.hpp"
#include "sdpkit/survey.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sdpkit;

namespace {

std::vector<std::vector<int>> to_lists(const BitMatrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.test(i, j) ? 1 : 0;
    return out;
}

BitMatrix from_lists(const std::vector<std::vector<int>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j] != 0);
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Difference sets, symmetric designs and the symmetric difference property";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NotADifferenceSetError>(m, "NotADifferenceSetError", base.ptr());
    py::register_exception<FeasibilityError>(m, "FeasibilityError", base.ptr());
    py::register_exception<HomomorphismError>(m, "HomomorphismError", base.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());

    py::class_<BitMatrix>(m, "Matrix")
        .def(py::init(&from_lists), py::arg("rows"))
        .def_property_readonly("rows", &BitMatrix::rows)
        .def_property_readonly("cols", &BitMatrix::cols)
        .def("tolist", &to_lists)
        .def("__eq__", [](const BitMatrix& a, const BitMatrix& b) { return a == b; })
        .def("__str__", [](const BitMatrix& a) { return to_text(a); });

    py::class_<DifferenceSet>(m, "DifferenceSet")
        .def_property_readonly("group", [](const DifferenceSet& d) { return d.group()->spec(); })
        .def_property_readonly("members", &DifferenceSet::members)
        .def_property_readonly("params",
                               [](const DifferenceSet& d) {
                                   const auto& p = d.params();
                                   return py::make_tuple(p.v, p.k, p.lambda);
                               })
        .def("__str__", &serialize_ds);

    m.def("parse_ds", [](const std::string& line) { return parse_ds_line(line); }, py::arg("line"),
          "Parses and verifies `<group> | <word>, ...`.");
    m.def("develop", [](const DifferenceSet& d) { return develop(d).matrix; });
    m.def("has_sdp", [](const BitMatrix& a) { return has_sdp(a).holds; });
    m.def("two_rank", &rank2);
    m.def("symplectic_matrix", &symplectic_matrix, py::arg("n"));
    m.def("rm1_basis", &rm1_basis, py::arg("m"));
    m.def("is_bent", [](const std::string& bits) { return is_bent(BitVector::from_string(bits)); });

    m.def("homomorphisms", [](const std::string& h, const std::string& n) {
        std::vector<std::string> specs;
        for (const auto& phi : homomorphisms_to_aut(parse_group(h), parse_group(n))) specs.push_back(phi.spec());
        return specs;
    }, py::arg("h"), py::arg("n"), "Specs of every homomorphism h -> Aut(n).");

    m.def(
        "product",
        [](const DifferenceSet& d1, const DifferenceSet& d2, const std::optional<std::string>& phi) {
            std::optional<HomomorphismToAut> hom;
            if (phi) hom = parse_phi(d2.group(), d1.group(), *phi);
            return product_ds(make_product_spec(d1, d2, hom));
        },
        py::arg("d1"), py::arg("d2"), py::arg("phi") = py::none());

    m.def(
        "are_isomorphic",
        [](const BitMatrix& a, const BitMatrix& b, std::uint64_t budget) -> py::object {
            const auto r = are_isomorphic(a, b, budget);
            py::dict out;
            out["verdict"] = to_string(r.verdict);
            out["separated_by"] = r.separated_by;
            out["nodes"] = r.nodes;
            if (r.witness) out["witness"] = py::make_tuple(r.witness->row_perm, r.witness->col_perm);
            return std::move(out);
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultSearchBudget);

    m.def("catalog", [] {
        py::list out;
        for (const auto& e : builtin_catalog()) {
            py::dict d;
            d["name"] = e.name;
            d["provenance"] = to_string(e.provenance);
            d["ds"] = e.ds;
            d["sdp"] = e.sdp;
            out.append(d);
        }
        return out;
    });

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
