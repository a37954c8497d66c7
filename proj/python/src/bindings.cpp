// Python bindings. Vectors and matrices cross as lists of ints (matrices as row lists,
// column-vector convention); integers pass through decimal strings, so Z is unbounded.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "homolift/action.hpp"
#include "homolift/closure.hpp"
#include "homolift/error.hpp"
#include "homolift/lift.hpp"
#include "homolift/problem.hpp"
#include "homolift/report.hpp"
#include "homolift/surfaces.hpp"

namespace py = pybind11;
using namespace homolift;

namespace {

Integer to_integer(const py::handle& h) {
    return Integer(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>());
}

py::int_ to_py(const Integer& a) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(a.str().c_str(), nullptr, 10));
}

ModuleVector to_vector(Modulus m, const py::sequence& seq) {
    std::vector<Integer> c;
    for (auto x : seq) c.push_back(to_integer(x));
    return ModuleVector(m, c);
}

MatrixZk to_matrix(Modulus m, const py::sequence& rows) {
    std::vector<std::vector<Integer>> data;
    std::size_t cols = 0;
    for (auto r : rows) {
        std::vector<Integer> row;
        for (auto x : py::reinterpret_borrow<py::sequence>(r)) row.push_back(to_integer(x));
        if (!data.empty() && row.size() != cols)
            throw Error(ErrorKind::dimension_mismatch, "matrix rows have different lengths");
        cols = row.size();
        data.push_back(std::move(row));
    }
    return MatrixZk(m, cols, data);
}

py::list from_vector(const ModuleVector& v) {
    py::list out;
    for (const auto& c : v.coords()) out.append(to_py(c));
    return out;
}

py::list from_basis(const SubgroupBasis& s) {
    py::list out;
    for (const auto& r : s.rows()) out.append(from_vector(r));
    return out;
}

py::list from_integers(const std::vector<Integer>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

SubgroupBasis to_basis(Modulus m, std::size_t rank, const py::sequence& gens) {
    std::vector<ModuleVector> v;
    for (auto g : gens) v.push_back(to_vector(m, py::reinterpret_borrow<py::sequence>(g)));
    return SubgroupBasis::span(m, rank, v);
}

Action to_action(Modulus m, const py::sequence& matrices) {
    std::vector<MatrixZk> ms;
    std::vector<std::string> names;
    for (auto a : matrices) {
        ms.push_back(to_matrix(m, py::reinterpret_borrow<py::sequence>(a)));
        names.push_back("g" + std::to_string(names.size() + 1));
    }
    if (ms.empty()) throw Error(ErrorKind::invalid_params, "at least one matrix is required");
    return Action(m, ms[0].rows(), names, ms);
}

py::dict report_dict(const Report& r) {
    py::dict d;
    py::list checks;
    for (const auto& c : r.checks) checks.append(py::make_tuple(c.text, c.pass));
    py::dict machine;
    for (const auto& [k, v] : r.machine) machine[py::str(k)] = v;
    d["passed"] = r.passed();
    d["checks"] = checks;
    d["values"] = machine;
    d["text"] = r.render(false);
    return d;
}

RunOptions options(unsigned workers, std::uint64_t budget) {
    RunOptions o;
    o.workers = workers;
    o.budget = budget;
    return o;
}

}  // namespace

PYBIND11_MODULE(_homolift, m) {
    m.doc() = "Lifting finite group actions to homology covers of surfaces";

    // HomoliftError(kind, message); kind is the library's error kind name
    m.attr("HomoliftError") = py::reinterpret_steal<py::object>(
        PyErr_NewException("homolift._homolift.HomoliftError", PyExc_RuntimeError, nullptr));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object cls = py::module_::import("homolift._homolift").attr("HomoliftError");
            PyErr_SetObject(cls.ptr(), py::make_tuple(std::string(error_kind_name(e.kind())), e.what()).ptr());
        }
    });

    m.def(
        "howell_form",
        [](const py::sequence& rows, std::int64_t k, std::size_t rank) {
            Modulus mod(k);
            return from_basis(to_basis(mod, rank, rows));
        },
        py::arg("rows"), py::arg("k"), py::arg("rank"),
        "Canonical basis of the subgroup of Z_k^rank spanned by rows (Hermite form for k = 0).");

    m.def(
        "quotient_invariants",
        [](const py::sequence& rows, std::int64_t k, std::size_t rank) {
            return from_integers(quotient_invariants(to_basis(Modulus(k), rank, rows)));
        },
        py::arg("rows"), py::arg("k"), py::arg("rank"), "Invariant factors of Z_k^rank / <rows>.");

    m.def(
        "solve_cyclic_lift",
        [](const py::sequence& matrix, std::int64_t order, const py::sequence& defect, std::int64_t k) {
            Modulus mod(k);
            auto r = cyclic_lift_solve(CyclicLiftProblem{to_matrix(mod, matrix), order, to_vector(mod, defect)});
            py::dict d;
            d["witness"] = r.witness ? py::object(from_vector(*r.witness)) : py::object(py::none());
            d["residue"] = r.certificate ? py::object(from_vector(r.certificate->residue)) : py::object(py::none());
            return d;
        },
        py::arg("matrix"), py::arg("order"), py::arg("defect"), py::arg("k"),
        "Solve sum_{i<l} A^i alpha = -m0; witness is None when no order-l lift exists.");

    m.def(
        "minimal_invariant_subgroup",
        [](const py::sequence& matrices, const py::sequence& gens, std::int64_t k) {
            Modulus mod(k);
            Action act = to_action(mod, matrices);
            std::vector<ModuleVector> v;
            for (auto g : gens) v.push_back(to_vector(mod, py::reinterpret_borrow<py::sequence>(g)));
            return from_basis(minimal_invariant_subgroup(act, v));
        },
        py::arg("matrices"), py::arg("gens"), py::arg("k"));

    m.def(
        "core",
        [](const py::sequence& matrices, const py::sequence& rows, std::int64_t k) {
            Modulus mod(k);
            Action act = to_action(mod, matrices);
            return from_basis(core(act, to_basis(mod, act.rank(), rows)));
        },
        py::arg("matrices"), py::arg("rows"), py::arg("k"), "Largest invariant subgroup inside <rows>.");

    m.def(
        "enumerate_invariant_subgroups",
        [](const py::sequence& matrices, std::int64_t k, std::optional<std::vector<std::int64_t>> quotient,
           const py::sequence& contains, unsigned workers, std::uint64_t budget) {
            Modulus mod(k);
            Action act = to_action(mod, matrices);
            SubgroupConstraints c;
            if (quotient) {
                std::vector<Integer> q(quotient->begin(), quotient->end());
                c.quotient_invariants = q;
            }
            for (auto v : contains) c.contains.push_back(to_vector(mod, py::reinterpret_borrow<py::sequence>(v)));
            c.workers = workers;
            c.budget = budget;
            py::list out;
            for (const auto& s : enumerate_invariant_subgroups(act, c)) out.append(from_basis(s));
            return out;
        },
        py::arg("matrices"), py::arg("k"), py::arg("quotient") = py::none(), py::arg("contains") = py::list(),
        py::arg("workers") = 1, py::arg("budget") = 1'000'000);

    m.def(
        "riemann_hurwitz_genus",
        [](int gamma, std::vector<int> cones, std::int64_t order) {
            return riemann_hurwitz_genus(OrbifoldSignature{gamma, std::move(cones)}, order);
        },
        py::arg("gamma"), py::arg("cone_orders"), py::arg("group_order"));

    m.def("scenario_names", &scenario_names);

    m.def(
        "run_scenario",
        [](const std::string& name, unsigned workers, std::uint64_t budget) {
            return report_dict(run_scenario(make_scenario(name), options(workers, budget)));
        },
        py::arg("name"), py::arg("workers") = 1, py::arg("budget") = 1'000'000);

    m.def(
        "run_problem",
        [](const std::string& text, const std::string& task, const std::vector<std::string>& args, unsigned workers,
           std::uint64_t budget) {
            ProblemFile pf = parse_problem(text);
            return report_dict(run_problem(pf, task.empty() ? pf.task : task, args, options(workers, budget)));
        },
        py::arg("text"), py::arg("task") = "", py::arg("args") = std::vector<std::string>{}, py::arg("workers") = 1,
        py::arg("budget") = 1'000'000, "Parse a problem file's text and run a task on it.");
}
