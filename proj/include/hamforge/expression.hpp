#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hamforge/coeff.hpp"
#include "hamforge/operator.hpp"

namespace hamforge {

enum class AtomKind : std::uint8_t { field, momentum, multiplier, gauge_parameter, arbitrary };
enum class Mode : std::uint8_t { none, zero, kk };

// derivative slots: t, x1, x2, x3, y
int deriv_slot(int component);
int slot_component(int slot);

struct Atom {
	AtomKind kind = AtomKind::field;
	std::string name;
	Mode mode = Mode::none;
	int component = -1;
	std::array<std::uint8_t, 5> deriv{};
	std::uint8_t inv_lap = 0;

	static Atom field(std::string name, int component = -1, Mode mode = Mode::none);
	static Atom momentum(std::string name, int component = -1, Mode mode = Mode::none);
	static Atom multiplier(std::string name, int component = -1, Mode mode = Mode::none);
	static Atom gauge_parameter(std::string name, Mode mode = Mode::none);
	static Atom arbitrary(std::string name, Mode mode = Mode::none);

	Atom differentiated(int component, int times = 1) const;
	// drops spatial derivatives and inverse Laplacians
	Atom base() const;
	// drops every derivative
	Atom bare() const;
	int spatial_order() const { return deriv[1] + deriv[2] + deriv[3]; }
	int time_order() const { return deriv[0]; }
	DerivPower spatial_power() const;
	bool has_derivatives() const;

	std::string str() const;
	auto operator<=>(const Atom&) const = default;
};

std::string mode_suffix(Mode m);

using Monomial = std::vector<Atom>;

enum class Variation { spatial, spacetime };

class Expression {
public:
	Expression() = default;
	Expression(Coeff c);
	Expression(int v) : Expression(Coeff(v)) {}
	Expression(Rational r) : Expression(Coeff(r)) {}
	static Expression atom(const Atom& a);
	static Expression term(Coeff c, Monomial m);
	// collects arbitrary (unsorted, repeated, zero) terms into canonical form
	static Expression from_terms(const std::vector<std::pair<Monomial, Coeff>>& raw);

	Expression operator+(const Expression& o) const;
	Expression operator-(const Expression& o) const;
	Expression operator*(const Expression& o) const;
	Expression operator-() const;
	Expression& operator+=(const Expression& o);
	Expression& operator-=(const Expression& o);
	Expression& operator*=(const Expression& o) { return *this = *this * o; }
	bool operator==(const Expression& o) const { return terms_ == o.terms_; }

	bool is_zero() const { return terms_.empty(); }
	const std::map<Monomial, Coeff>& terms() const { return terms_; }
	int degree() const;
	bool is_linear() const;
	bool contains(AtomKind k) const;
	bool contains_bare(const Atom& bare) const;
	bool has_time_derivatives() const;
	std::set<Atom> atoms() const;
	std::set<Atom> bare_atoms() const;
	Coeff constant_term() const;

	// derivative along a coordinate (0 = t, 1..3, 5 = y)
	Expression derivative(int component) const;
	Expression substitute_param(const std::string& name, const Coeff& value) const;
	std::string str() const;

private:
	friend Expression from_linear(const std::map<Atom, Operator>&, const Coeff&);
	void add_term(const Monomial& m, const Coeff& c);
	void canonicalize_inverse_laplacians();

	std::map<Monomial, Coeff> terms_;
};

Expression operator*(const Coeff& c, const Expression& e);

Expression normalize(const Expression& e);

Expression laplacian(const Expression& e);
// inverse Laplacian of a linear expression; constant input is rejected
Expression apply_inverse_laplacian(const Expression& e);
Expression apply(const Operator& op, const Expression& e);

// polynomial derivative with respect to an exact atom
Expression partial(const Expression& e, const Atom& a);

// Euler-Lagrange derivative; derivatives are integrated by parts onto the delta kernel
Expression functional_derivative(const Expression& density, const Atom& target, Variation v = Variation::spatial);
Expression functional_derivative(const Expression& density, const Atom& target, const std::set<Atom>& declared,
	Variation v = Variation::spatial);

// simultaneous replacement of atoms keyed by bare atom; derivatives carry over
Expression substitute(const Expression& e, const std::map<Atom, Expression>& replacements);
Expression substitute(const Expression& e, const Atom& bare, const Expression& replacement);

// canonical representative modulo spatial total derivatives (quadratic and linear terms)
Expression ibp_canonical(const Expression& e);

// linear structure: operator coefficient per base atom
struct LinearForm {
	std::map<Atom, Operator> coeffs;
	Coeff constant;
	Expression nonlinear;
};
LinearForm linear_form(const Expression& e);
Expression from_linear(const std::map<Atom, Operator>& coeffs, const Coeff& constant = {});
Operator atom_operator(const Atom& a);

// overall sign fixed so that the first term carries a positive leading coefficient
Expression sign_normalized(const Expression& e);

double evaluate(const Expression& e, const std::function<double(const Atom&)>& atom_value,
	const std::map<std::string, double>& params);

}
