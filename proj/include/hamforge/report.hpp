#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hamforge/dirac.hpp"
#include "hamforge/dsl.hpp"
#include "hamforge/fj.hpp"
#include "hamforge/kk.hpp"
#include "hamforge/lattice.hpp"

namespace hamforge {

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_usage = 2, exit_mismatch = 3, exit_lattice = 4 };

struct UsageError : Error {
	using Error::Error;
};

struct AnalysisOptions {
	// dirac, fj or both
	std::string method = "both";
	// number of modes kept; nullopt analyses the symbolic tower
	std::optional<int> k;
	// sector name -> gauge set name
	std::map<std::string, std::string> gauge;
	std::optional<int> lattice_N;
};

// "zero_mode=coulomb,kk_mode=axial"
std::map<std::string, std::string> parse_gauge_option(const std::string& text);
// "symbolic" or "k=<int>"
std::optional<int> parse_modes_option(const std::string& text);

struct LatticeRecord {
	LatticeConfig config;
	std::vector<std::pair<std::string, InverseCheck>> inverses;
	std::vector<std::pair<std::string, BracketCheck>> brackets;
	double tolerance = 1e-10;
	bool ok() const;
};

struct SectorReport {
	std::string name;
	PhaseSpace phase;
	Expression lagrangian;
	std::string gauge_set;
	std::vector<Expression> gauge_conditions;

	std::optional<DiracAnalysis> dirac;
	std::optional<UnitaryReduction> unitary;
	std::string dirac_error;

	std::optional<FJAnalysis> fj;
	std::string fj_error;
	int fj_error_level = -1;
	std::vector<NullMode> fj_error_modes;

	std::optional<BracketComparison> comparison;
	std::vector<LatticeRecord> lattice;
};

struct AnalysisReport {
	std::string theory;
	std::string input;
	AnalysisOptions options;
	std::optional<ModeExpansion> expansion;
	std::optional<Expression> density4d;
	bool decoupled = true;
	std::vector<SectorReport> sectors;
	// total physical degrees of freedom: symbolic in k or a number
	std::string dof;
	std::vector<std::string> warnings;
	std::vector<std::string> failures;
	int exit_code = exit_ok;
};

// runs every requested stage; failures are recorded in the report, not thrown
AnalysisReport analyze_theory(const TheorySpec& spec, const AnalysisOptions& opts, const std::string& input_name);

nlohmann::ordered_json report_json(const AnalysisReport& r);
std::string report_text(const AnalysisReport& r);

nlohmann::ordered_json matrix_json(const KernelMatrix& m);
nlohmann::ordered_json brackets_json(const BracketTable& t);

}
