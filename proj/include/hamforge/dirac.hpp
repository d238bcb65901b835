#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamforge/expression.hpp"
#include "hamforge/kernel.hpp"
#include "hamforge/phase.hpp"

namespace hamforge {

enum class Stage { primary, secondary, gauge };
enum class ConstraintClass { undetermined, first, second };

std::string to_string(Stage s);
std::string to_string(ConstraintClass c);

struct Constraint {
	std::string name;
	Expression expr;
	Stage stage = Stage::primary;
	ConstraintClass cls = ConstraintClass::undetermined;
	// the constraint whose consistency produced this one, or how it entered
	std::string provenance;
	// 0 for primaries, 1 for secondaries, 2 for tertiaries, ...
	int generation = 0;
};

using ConstraintSet = std::vector<Constraint>;

struct MomentumDefinition {
	Atom momentum;
	Expression value;
};

struct HessianResult {
	std::vector<Atom> velocities;
	KernelMatrix matrix;
	int rank = 0;
	std::vector<KernelVector> null_vectors;
	ConstraintSet primaries;
};

struct ClosureResult {
	ConstraintSet constraints;
	// consistency conditions that determine a multiplier instead of adding a constraint
	std::vector<std::string> multiplier_conditions;
	// rounds that produced at least one new constraint
	int productive_rounds = 0;
	int rounds = 0;
};

struct DofCount {
	int phase_dim = 0;
	int first_class = 0;
	int second_class = 0;
	int dof = 0;
};

struct GaugeGenerator {
	Expression density;
	std::vector<Atom> parameters;
	// bare atom -> its variation, nonzero entries only
	std::map<Atom, Expression> transformations;
};

struct GaugeFixing {
	ConstraintSet chi;
	KernelMatrix C;
	KernelMatrix C_inverse;
};

struct IncompleteGaugeError : Error {
	IncompleteGaugeError(std::string what, std::vector<KernelVector> null_space)
		: Error(std::move(what)), null_space(std::move(null_space))
	{
	}
	std::vector<KernelVector> null_space;
};

struct SpectrumEntry {
	std::string field;
	Coeff coefficient;
};

struct UnitaryReduction {
	Atom goldstone;
	// gauge parameter chosen to remove the goldstone field
	Expression parameter;
	Expression reduced;
	std::vector<SpectrumEntry> spectrum;
};

std::vector<MomentumDefinition> conjugate_momenta(const Expression& L, const PhaseSpace& ps);
HessianResult hessian_primaries(const Expression& L, const PhaseSpace& ps);
Expression canonical_hamiltonian(const Expression& L, const PhaseSpace& ps);
Expression primary_hamiltonian(const Expression& Hc, const ConstraintSet& primaries, Mode mode);
ClosureResult consistency_closure(const Expression& HP, const ConstraintSet& primaries, const PhaseSpace& ps,
	int cap = 10);
// first class iff the bracket row against every constraint vanishes on the surface
ConstraintSet classify_constraints(ConstraintSet set, const PhaseSpace& ps);
int count_dof(int phase_dim, int n_first, int n_second);
DofCount count_dof(const ConstraintSet& set, const PhaseSpace& ps);
// Castellani chains started by each first-class primary; G = -sum_k eps^(k) G_k
GaugeGenerator gauge_generator(const ConstraintSet& first_class, const Expression& Hc, const PhaseSpace& ps);
Expression extended_hamiltonian(const Expression& Hc, const ConstraintSet& set, Mode mode);
// second-class set ordered as first gauge condition, secondaries, primaries, remaining conditions
GaugeFixing impose_gauge(const ConstraintSet& set, const std::vector<Expression>& conditions, const PhaseSpace& ps);
Operator dirac_bracket(const Expression& a, const Expression& b, const GaugeFixing& gf, const PhaseSpace& ps);
BracketTable dirac_bracket_table(const GaugeFixing& gf, const PhaseSpace& ps);
// finite gauge transformation with the parameter chosen to cancel the goldstone field
UnitaryReduction unitary_gauge_reduce(const Expression& L, const GaugeGenerator& gen, const Atom& goldstone,
	const PhaseSpace& ps);

struct DiracAnalysis {
	PhaseSpace phase;
	Expression lagrangian;
	std::vector<MomentumDefinition> momenta;
	HessianResult hessian;
	Expression canonical_hamiltonian;
	Expression primary_hamiltonian;
	Expression extended_hamiltonian;
	ClosureResult closure;
	ConstraintSet constraints;
	DofCount dof;
	std::optional<GaugeGenerator> generator;
	std::optional<GaugeFixing> gauge;
	std::optional<BracketTable> brackets;
};

// full pipeline; gauge fixing runs only when conditions are given
DiracAnalysis analyze_dirac(const Expression& L, const PhaseSpace& ps,
	const std::optional<std::vector<Expression>>& gauge = std::nullopt);

}
