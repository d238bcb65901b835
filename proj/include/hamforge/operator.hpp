#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "hamforge/coeff.hpp"

namespace hamforge {

// exponents of d1, d2, d3
struct DerivPower {
	std::array<std::uint8_t, 3> e{};

	int order() const { return e[0] + e[1] + e[2]; }
	DerivPower operator+(const DerivPower& o) const;
	auto operator<=>(const DerivPower&) const = default;
};

using OperatorPoly = std::map<DerivPower, Coeff>;

// Constant-coefficient spatial differential operator p(d1,d2,d3) * Lap^k acting on
// delta(x-y). Canonical form keeps p free of Laplacian factors, k may be negative.
class Operator {
public:
	Operator() = default;
	Operator(Coeff c);
	Operator(Rational r) : Operator(Coeff(r)) {}
	Operator(int v) : Operator(Coeff(v)) {}
	static Operator identity() { return Operator(1); }
	static Operator d(int i);
	static Operator laplacian();
	static Operator inverse_laplacian();
	static Operator from_poly(OperatorPoly p, int lap = 0);

	Operator operator+(const Operator& o) const;
	Operator operator-(const Operator& o) const;
	Operator operator*(const Operator& o) const;
	Operator operator-() const;
	Operator& operator+=(const Operator& o) { return *this = *this + o; }
	Operator& operator-=(const Operator& o) { return *this = *this - o; }
	Operator& operator*=(const Operator& o) { return *this = *this * o; }
	bool operator==(const Operator& o) const = default;

	bool is_zero() const { return poly_.empty(); }
	bool is_unit() const;
	// a bare coefficient, no derivatives and no Laplacian power
	bool is_coefficient() const;
	Coeff coefficient() const;
	Operator inverse() const;
	// formal adjoint: d_i -> -d_i
	Operator adjoint() const;
	int laplacian_power() const { return lap_; }
	const OperatorPoly& poly() const { return poly_; }
	// polynomial with any positive Laplacian power multiplied out
	OperatorPoly expanded_poly() const;
	// number of terms; used to rank pivots
	std::size_t weight() const { return poly_.size() + (lap_ != 0 ? 1 : 0); }

	Operator substitute(const std::string& name, const Coeff& value) const;
	std::string str() const;

private:
	void canonicalize();

	OperatorPoly poly_;
	int lap_ = 0;
};

OperatorPoly poly_mul(const OperatorPoly& a, const OperatorPoly& b);
OperatorPoly laplacian_poly();
// quotient by the Laplacian if it divides p exactly
bool divide_by_laplacian(const OperatorPoly& p, OperatorPoly& quotient);

}
