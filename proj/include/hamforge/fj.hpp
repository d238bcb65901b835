#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamforge/dirac.hpp"
#include "hamforge/errors.hpp"
#include "hamforge/expression.hpp"
#include "hamforge/kernel.hpp"
#include "hamforge/phase.hpp"

namespace hamforge {

struct FJConstraint {
	std::string name;
	Expression expr;
	// user gauge condition rather than a generated constraint
	bool gauge = false;
	Atom multiplier;
	int level = 0;
};

// first-order Lagrangian sum_i a_i xi'^i - V
struct SymplecticState {
	int level = 0;
	Mode mode = Mode::none;
	std::vector<Atom> xi;
	// one-form component per xi, linear in xi
	std::vector<Expression> one_forms;
	Expression potential;
	std::vector<FJConstraint> constraints;
	// variables removed from xi and set to zero
	std::vector<Atom> eliminated;

	std::size_t index_of(const Atom& a) const;
	std::vector<std::string> labels() const;
};

// left null vector u of f with its display v_i = u_i^dagger omega
struct NullMode {
	KernelVector u;
	Atom omega;
	std::vector<Expression> display;
	std::string str() const;
};

struct SymplecticSingularError : Error {
	SymplecticSingularError(std::string what, int level, std::vector<NullMode> modes)
		: Error(std::move(what)), level(level), modes(std::move(modes))
	{
	}
	int level;
	std::vector<NullMode> modes;
};

// velocities absent from H_c enter with a zero one-form; primaries must be bare momenta
SymplecticState first_order_form(const Expression& Hc, const PhaseSpace& ps, const ConstraintSet& primaries);
// f_ij(x,y) = da_j(y)/dxi^i(x) - da_i(x)/dxi^j(y), as kernels in x
KernelMatrix symplectic_matrix(const SymplecticState& s);
std::vector<NullMode> null_modes(const KernelMatrix& f, Mode mode, const std::string& stem = "omega");
// Omega = sum_i u_i dV/dxi^i
Expression fj_constraint(const NullMode& m, const SymplecticState& s);
std::vector<Expression> fj_constraint_generation(const std::vector<NullMode>& modes, const SymplecticState& s);

struct ContractionTest {
	KernelMatrix F;
	std::vector<Expression> Z;
	std::vector<NullMode> modes;
	std::vector<Expression> contractions;
	// every contraction vanishes on the constraint surface
	bool identity = true;
};

// F = [f; dOmega/dxi], Z = [dV/dxi; 0]; contractions are tested weakly against the span
ContractionTest no_new_constraints_test(const KernelMatrix& F, const std::vector<Expression>& Z,
	const ConstraintSpan& surface, Mode mode);
ContractionTest no_new_constraints_test(const SymplecticState& s, const std::vector<Expression>& omegas);

// appends -expr * multiplier' and restricts V to the surface expr = 0
SymplecticState augment_lagrangian(const SymplecticState& s, const Expression& expr, const Atom& multiplier,
	bool gauge, const std::string& name);

// brackets of f^-1 among the non-multiplier variables
BracketTable extract_fj_brackets(const SymplecticState& s);

struct FJLevel {
	int level = 0;
	std::vector<std::string> xi;
	KernelMatrix f;
	std::vector<NullMode> modes;
	std::vector<Expression> constraints;
	std::optional<ContractionTest> contraction;
	std::vector<Expression> gauges;
	// "constraint", "gauge" or "invertible"
	std::string action;
};

struct FJAnalysis {
	PhaseSpace phase;
	std::vector<SymplecticState> states;
	std::vector<FJLevel> levels;
	KernelMatrix final_matrix;
	KernelMatrix final_inverse;
	BracketTable brackets;
	std::vector<Expression> unused_gauges;
	const SymplecticState& final_state() const { return states.back(); }
};

// constraints are embedded until f stops producing them, then one gauge condition per
// null mode; a matrix still singular after gauge fixing ends the analysis with an error
FJAnalysis analyze_fj(const Expression& L, const PhaseSpace& ps, const std::vector<Expression>& gauge = {},
	int cap = 8);

}
