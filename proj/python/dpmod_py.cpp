#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "dpmod/errors.hpp"
#include "dpmod/filtration.hpp"
#include "dpmod/verify.hpp"

namespace py = pybind11;
using namespace dpmod;

namespace {

FrobModule module_for(const std::string& example, Prime p) {
    if (example == "ex1") return FrobModule(GeneratorSequence::ex1(p));
    if (example == "ex2") return FrobModule(GeneratorSequence::ex2(p));
    throw InputError("example must be 'ex1' or 'ex2', got '" + example + "'");
}

std::vector<ModuleElement> gens_for(const std::vector<std::string>& names, Prime p) {
    std::vector<ModuleElement> gens;
    for (const std::string& n : names) {
        if (n == "s1") {
            gens.push_back(ModuleElement::s1(p));
        } else if (n == "s2") {
            gens.push_back(ModuleElement::s2(p));
        } else {
            throw InputError("generator must be 's1' or 's2', got '" + n + "'");
        }
    }
    return gens;
}

py::object optional_ratio(const std::optional<Ratio>& r) {
    if (!r) return py::none();
    return py::make_tuple(r->num, r->den);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Divided-power operators on rank-two Frobenius modules over F_p[x]";
    m.attr("__version__") = cli::kVersion;

    static py::exception<Error> error(m, "DpmodError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr e) {
        try {
            if (e) std::rethrow_exception(e);
        } catch (const Error& ex) {
            PyErr_SetString(error.ptr(), ex.what());
        }
    });

    m.def("binom_mod", [](std::uint64_t n, std::uint64_t k, std::uint64_t p) {
        return binom_mod_p(n, k, Prime(p)).value();
    }, py::arg("n"), py::arg("k"), py::arg("p"), "C(n, k) mod p by Lucas' theorem.");

    m.def("apply", [](const std::string& op, const std::string& f, std::uint64_t p) {
        const Prime q(p);
        return format_poly(apply(parse_operator(op, q), parse_poly(f, q)));
    }, py::arg("op"), py::arg("f"), py::arg("p"), "Apply an operator such as 'x^2*D_4 + D_1' to a polynomial.");

    m.def("act", [](const std::string& op, const std::string& target, std::uint64_t p, const std::string& example) {
        const Prime q(p);
        const FrobModule module = module_for(example, q);
        return format_element(act(module, parse_operator(op, q), parse_element(target, q)));
    }, py::arg("op"), py::arg("target"), py::arg("p"), py::arg("example") = "ex2",
       "Act on a module element written as '(f1, f2)'.");

    m.def("dims", [](std::uint64_t p, const std::vector<std::uint64_t>& i_values, const std::string& example,
                     const std::vector<std::string>& gens) {
        const Prime q(p);
        const FrobModule module = module_for(example, q);
        const auto g = gens_for(gens, q);
        GrowthSeries series;
        {
            py::gil_scoped_release release;
            series = growth_series(module, g, i_values);
        }
        py::list out;
        for (const GrowthRecord& r : series.records) {
            py::dict rec;
            rec["i"] = r.i;
            rec["dim"] = r.dim;
            rec["ratio"] = optional_ratio(r.ratio);
            rec["formula"] = r.formula_value ? py::cast(*r.formula_value) : py::none();
            rec["match"] = r.match ? py::cast(*r.match) : py::none();
            out.append(rec);
        }
        return out;
    }, py::arg("p"), py::arg("i_values"), py::arg("example") = "ex2",
       py::arg("gens") = std::vector<std::string>{"s2"},
       "Dimensions of F_i applied to the generators, for strictly ascending i.");

    m.def("dim_formula", [](std::uint64_t i, std::uint64_t p) { return thm42_formula(i, Prime(p)); },
          py::arg("i"), py::arg("p"), "Closed-form dim F_i s2 for g_r = x^{(p+1)p^r}, defined for i >= p.");

    m.def("verify_all", [](std::uint64_t p) {
        std::vector<CheckReport> reports;
        {
            py::gil_scoped_release release;
            reports = verify_all(Prime(p));
        }
        return reports_to_json(reports).dump(2);
    }, py::arg("p"), "All checks with default parameters, as a JSON string.");

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
