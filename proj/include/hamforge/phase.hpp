#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamforge/dsl.hpp"
#include "hamforge/expression.hpp"
#include "hamforge/kernel.hpp"

namespace hamforge {

struct CanonicalPair {
	Atom q;
	Atom p;
};

// canonical coordinates of one sector: zero mode, the representative KK mode, or an
// uncompactified theory
struct PhaseSpace {
	std::string sector;
	Mode mode = Mode::none;
	std::vector<CanonicalPair> pairs;

	int dimension() const { return static_cast<int>(2 * pairs.size()); }
	std::vector<Atom> configuration() const;
	std::vector<Atom> momenta() const;
	// q1, p1, q2, p2, ...
	std::vector<Atom> atoms() const;
	bool contains(const Atom& bare) const;
	const CanonicalPair* pair_of(const Atom& bare) const;
};

// zero mode keeps the even components only; an uncompactified theory keeps every component
PhaseSpace make_phase_space(const TheorySpec& spec, Mode mode);
std::string sector_name(Mode mode);

// {a(x), b(y)} for linear local expressions, as K(d_x) delta(x-y)
Operator poisson_kernel(const Expression& a, const Expression& b, const PhaseSpace& ps);
// {a(x), integral of h}: the flow q' = dh/dp, p' = -dh/dq applied to a
Expression poisson_flow(const Expression& a, const Expression& h, const PhaseSpace& ps);
// density of {integral f, integral g}
Expression poisson_global(const Expression& f, const Expression& g, const PhaseSpace& ps);
// equal up to spatial total derivatives: every variational derivative of a-b vanishes
bool equivalent_densities(const Expression& a, const Expression& b);

// module over the operator ring spanned by a set of linear constraints
class ConstraintSpan {
public:
	ConstraintSpan() = default;
	explicit ConstraintSpan(std::vector<Expression> constraints) : rows_(std::move(constraints)) {}
	void add(const Expression& c) { rows_.push_back(c); }
	const std::vector<Expression>& constraints() const { return rows_; }
	// e vanishes on the constraint surface: some operator combination u_e e + sum u_a c_a
	// is identically zero with u_e nonzero
	bool weakly_zero(const Expression& e) const;
	// e is not a combination of the current constraints
	bool independent(const Expression& e) const { return !weakly_zero(e); }

private:
	std::vector<Expression> rows_;
};

struct BracketTable {
	std::string kind;
	std::vector<Atom> atoms;
	std::map<std::pair<Atom, Atom>, Operator> entries;

	Operator at(const Atom& a, const Atom& b) const;
	void set(const Atom& a, const Atom& b, const Operator& op);
	// nonzero entries in atom order
	std::vector<std::pair<std::pair<Atom, Atom>, Operator>> nonzero() const;
	std::string str() const;
};

BracketTable fundamental_brackets(const PhaseSpace& ps);

struct BracketMismatch {
	Atom a, b;
	Operator left, right;
};

struct BracketComparison {
	std::size_t compared = 0;
	std::size_t matches = 0;
	std::vector<BracketMismatch> mismatches;
	bool equal() const { return mismatches.empty(); }
	std::string str() const;
};

// entrywise comparison over the atoms common to both tables
BracketComparison compare_brackets(const BracketTable& left, const BracketTable& right);

}
