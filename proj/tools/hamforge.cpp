#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hamforge/report.hpp"

using namespace hamforge;

namespace {

int run_analyze(const std::string& input, const std::string& method, const std::string& modes,
	const std::string& gauge, int lattice, const std::string& out, const std::string& format)
{
	std::ifstream in(input);
	if (!in) {
		std::cerr << "error: cannot read " << input << "\n";
		return exit_usage;
	}
	std::stringstream buf;
	buf << in.rdbuf();
	ParseResult parsed = parse_theory(buf.str());
	if (!parsed.ok()) {
		for (auto& d : parsed.diagnostics)
			std::cerr << input << ":" << d.str() << "\n";
		return exit_usage;
	}

	AnalysisOptions opts;
	opts.method = method;
	opts.k = parse_modes_option(modes);
	opts.gauge = parse_gauge_option(gauge);
	if (lattice > 0)
		opts.lattice_N = lattice;
	AnalysisReport rep = analyze_theory(*parsed.spec, opts, std::filesystem::path(input).filename().string());

	std::filesystem::create_directories(out);
	std::string text = report_text(rep);
	if (format == "text" || format == "both")
		std::ofstream(std::filesystem::path(out) / "report.txt") << text;
	if (format == "json" || format == "both")
		std::ofstream(std::filesystem::path(out) / "report.json") << report_json(rep).dump(2) << "\n";

	auto summary = text.find("\n== summary\n");
	std::cout << text.substr(summary + 1);
	for (auto& s : rep.sectors) {
		if (s.comparison && !s.comparison->equal())
			std::cerr << s.name << " bracket diff:\n" << s.comparison->str();
		for (auto& m : s.fj_error_modes)
			std::cerr << s.name << " null mode " << m.str() << "\n";
	}
	return rep.exit_code;
}

}

int main(int argc, char** argv)
{
	CLI::App app{"Constraint analysis of gauge field theories with Dirac and Faddeev-Jackiw methods"};
	app.require_subcommand(1);
	auto* analyze = app.add_subcommand("analyze", "analyse a theory file");
	std::string input, method = "both", modes = "symbolic", gauge, out = ".", format = "both";
	int lattice = 0;
	analyze->add_option("--input", input, "theory file")->required();
	analyze->add_option("--method", method, "dirac, fj or both")
		->check(CLI::IsMember({"dirac", "fj", "both"}));
	analyze->add_option("--modes", modes, "symbolic or k=<int>");
	analyze->add_option("--gauge", gauge, "sector=gauge_set,...");
	analyze->add_option("--verify-lattice", lattice, "periodic lattice size for numeric certification");
	analyze->add_option("--out", out, "output directory");
	analyze->add_option("--format", format, "text, json or both")->check(CLI::IsMember({"text", "json", "both"}));
	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : exit_usage;
	}
	try {
		return run_analyze(input, method, modes, gauge, lattice, out, format);
	} catch (const UsageError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	} catch (const UnsupportedError& e) {
		std::cerr << "unsupported input: " << e.what() << "\n";
		return exit_usage;
	} catch (const InconsistencyError& e) {
		std::cerr << "inconsistent input: " << e.what() << "\n";
		return exit_usage;
	} catch (const std::exception& e) {
		std::cerr << "internal error: " << e.what() << "\n";
		return exit_internal;
	}
}
