#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hamforge/report.hpp"

namespace py = pybind11;
using namespace hamforge;

namespace {

TheorySpec parse_or_throw(const std::string& source)
{
	ParseResult r = parse_theory(source);
	if (!r.ok()) {
		std::ostringstream os;
		for (std::size_t i = 0; i < r.diagnostics.size(); ++i)
			os << (i ? "\n" : "") << r.diagnostics[i].str();
		throw py::value_error(os.str());
	}
	return *r.spec;
}

AnalysisOptions make_options(const std::string& method, const std::string& modes,
	const std::map<std::string, std::string>& gauge, std::optional<int> lattice)
{
	AnalysisOptions opts;
	opts.method = method;
	opts.k = parse_modes_option(modes);
	opts.gauge = gauge;
	opts.lattice_N = lattice;
	return opts;
}

std::map<std::string, std::vector<std::string>> gauge_sets(const TheorySpec& s)
{
	std::map<std::string, std::vector<std::string>> out;
	for (auto& g : s.gauge_sets) {
		auto& v = out[g.name];
		for (auto& c : g.conditions)
			v.push_back(c.str());
	}
	return out;
}

}

PYBIND11_MODULE(_hamforge, m)
{
	m.doc() = "Dirac and Faddeev-Jackiw constraint analysis of gauge field theories";

	// later registrations are tried first, so the base class goes first
	auto base = py::register_exception<Error>(m, "HamforgeError");
	py::register_exception<UsageError>(m, "UsageError", base.ptr());
	py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

	py::class_<TheorySpec>(m, "Theory")
		.def_readonly("name", &TheorySpec::name)
		.def_readonly("dimension", &TheorySpec::dimension)
		.def_readonly("metric", &TheorySpec::metric)
		.def_readonly("params", &TheorySpec::params)
		.def_property_readonly("fields",
			[](const TheorySpec& s) {
				std::vector<std::string> v;
				for (auto& f : s.fields)
					v.push_back(f.name);
				return v;
			})
		.def_property_readonly("compactified", [](const TheorySpec& s) { return s.compact.has_value(); })
		.def_property_readonly("lagrangian", [](const TheorySpec& s) { return s.lagrangian.str(); })
		.def_property_readonly("gauge_sets", &gauge_sets)
		.def("render", &render_theory)
		.def("__eq__", [](const TheorySpec& a, const TheorySpec& b) { return a == b; })
		.def("__repr__", [](const TheorySpec& s) { return "<Theory " + s.name + ">"; });

	m.def("parse_theory", &parse_or_throw, py::arg("source"),
		"parse theory DSL source; raises ValueError with line:column diagnostics");

	m.def(
		"analyze_json",
		[](const std::string& source, const std::string& method, const std::string& modes,
			const std::map<std::string, std::string>& gauge, std::optional<int> lattice, const std::string& input_name) {
			TheorySpec spec = parse_or_throw(source);
			AnalysisReport r;
			{
				py::gil_scoped_release release;
				r = analyze_theory(spec, make_options(method, modes, gauge, lattice), input_name);
			}
			return report_json(r).dump(2);
		},
		py::arg("source"), py::arg("method") = "both", py::arg("modes") = "symbolic",
		py::arg("gauge") = std::map<std::string, std::string>{}, py::arg("verify_lattice") = py::none(),
		py::arg("input_name") = "<string>");

	m.def(
		"analyze_text",
		[](const std::string& source, const std::string& method, const std::string& modes,
			const std::map<std::string, std::string>& gauge, std::optional<int> lattice, const std::string& input_name) {
			TheorySpec spec = parse_or_throw(source);
			AnalysisReport r;
			{
				py::gil_scoped_release release;
				r = analyze_theory(spec, make_options(method, modes, gauge, lattice), input_name);
			}
			return report_text(r);
		},
		py::arg("source"), py::arg("method") = "both", py::arg("modes") = "symbolic",
		py::arg("gauge") = std::map<std::string, std::string>{}, py::arg("verify_lattice") = py::none(),
		py::arg("input_name") = "<string>");

	m.def("parse_gauge_option", &parse_gauge_option, py::arg("text"));
	m.def("count_dof", py::overload_cast<int, int, int>(&count_dof), py::arg("phase_dimension"),
		py::arg("first_class"), py::arg("second_class"));
	m.def(
		"harmonic_integral",
		[](const std::string& a, int na, const std::string& b, int nb) {
			auto basis = [](const std::string& k, int n) {
				BasisFunction f;
				f.n = n;
				if (k == "const")
					f.kind = BasisFunction::constant;
				else if (k == "cos")
					f.kind = BasisFunction::cosine;
				else if (k == "sin")
					f.kind = BasisFunction::sine;
				else
					throw py::value_error("basis kind must be const, cos or sin");
				return f;
			};
			Rational r = harmonic_integral(basis(a, na), basis(b, nb));
			return std::make_pair(r.numerator(), r.denominator());
		},
		py::arg("kind_a"), py::arg("n_a"), py::arg("kind_b"), py::arg("n_b"),
		"integral of the product over the circle in units of pi R, as (numerator, denominator)");
}
