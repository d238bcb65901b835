#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace hamforge {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

// Product of parameter symbols with integer (possibly negative) exponents.
class ParamMonomial {
public:
	ParamMonomial() = default;
	static ParamMonomial symbol(std::string name, int power = 1);

	ParamMonomial operator*(const ParamMonomial& o) const;
	ParamMonomial inverse() const;
	int power(std::string_view name) const;
	bool is_one() const { return factors_.empty(); }
	const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }

	auto operator<=>(const ParamMonomial&) const = default;
	bool operator==(const ParamMonomial&) const = default;

private:
	std::vector<std::pair<std::string, int>> factors_;
};

// Laurent polynomial in the parameters with exact rational coefficients.
class Coeff {
public:
	Coeff() = default;
	Coeff(Rational r);
	Coeff(std::int64_t v) : Coeff(Rational(v)) {}
	Coeff(int v) : Coeff(Rational(v)) {}
	static Coeff monomial(Rational r, ParamMonomial m);
	static Coeff param(const std::string& name, int power = 1);

	Coeff operator+(const Coeff& o) const;
	Coeff operator-(const Coeff& o) const;
	Coeff operator*(const Coeff& o) const;
	Coeff operator-() const;
	Coeff& operator+=(const Coeff& o);
	Coeff& operator-=(const Coeff& o);
	Coeff& operator*=(const Coeff& o);
	bool operator==(const Coeff& o) const { return terms_ == o.terms_; }
	std::strong_ordering operator<=>(const Coeff& o) const;

	bool is_zero() const { return terms_.empty(); }
	// a single monomial with nonzero coefficient; invertible in the ring
	bool is_unit() const { return terms_.size() == 1; }
	bool is_rational() const;
	Rational rational_value() const;
	Coeff inverse() const;
	std::size_t size() const { return terms_.size(); }
	const std::map<ParamMonomial, Rational>& terms() const { return terms_; }
	// sign of the leading term's rational coefficient (0 for zero)
	int leading_sign() const;

	Coeff substitute(const std::string& name, const Coeff& value) const;
	double evaluate(const std::map<std::string, double>& values) const;

	std::string str() const;

private:
	std::map<ParamMonomial, Rational> terms_;
};

inline Coeff operator*(const Rational& r, const Coeff& c) { return Coeff(r) * c; }

Coeff pow(const Coeff& c, int e);

}
