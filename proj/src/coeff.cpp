#include "hamforge/coeff.hpp"

#include <cmath>
#include <stdexcept>

#include "hamforge/errors.hpp"

namespace hamforge {

std::string to_string(const Rational& r)
{
	if (r.denominator() == 1)
		return std::to_string(r.numerator());
	return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ParamMonomial ParamMonomial::symbol(std::string name, int power)
{
	ParamMonomial m;
	if (power != 0)
		m.factors_.emplace_back(std::move(name), power);
	return m;
}

ParamMonomial ParamMonomial::operator*(const ParamMonomial& o) const
{
	ParamMonomial r;
	auto a = factors_.begin(), b = o.factors_.begin();
	while (a != factors_.end() || b != o.factors_.end()) {
		if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
			r.factors_.push_back(*a++);
		} else if (a == factors_.end() || b->first < a->first) {
			r.factors_.push_back(*b++);
		} else {
			int p = a->second + b->second;
			if (p != 0)
				r.factors_.emplace_back(a->first, p);
			++a;
			++b;
		}
	}
	return r;
}

ParamMonomial ParamMonomial::inverse() const
{
	ParamMonomial r = *this;
	for (auto& f : r.factors_)
		f.second = -f.second;
	return r;
}

int ParamMonomial::power(std::string_view name) const
{
	for (auto& [n, p] : factors_)
		if (n == name)
			return p;
	return 0;
}

Coeff::Coeff(Rational r)
{
	if (r.numerator() != 0)
		terms_.emplace(ParamMonomial{}, r);
}

Coeff Coeff::monomial(Rational r, ParamMonomial m)
{
	Coeff c;
	if (r.numerator() != 0)
		c.terms_.emplace(std::move(m), r);
	return c;
}

Coeff Coeff::param(const std::string& name, int power)
{
	return monomial(1, ParamMonomial::symbol(name, power));
}

Coeff& Coeff::operator+=(const Coeff& o)
{
	for (auto& [m, r] : o.terms_) {
		auto it = terms_.find(m);
		if (it == terms_.end()) {
			terms_.emplace(m, r);
		} else {
			it->second += r;
			if (it->second.numerator() == 0)
				terms_.erase(it);
		}
	}
	return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) { return *this += -o; }

Coeff& Coeff::operator*=(const Coeff& o) { return *this = *this * o; }

Coeff Coeff::operator+(const Coeff& o) const
{
	Coeff r = *this;
	r += o;
	return r;
}

Coeff Coeff::operator-(const Coeff& o) const
{
	Coeff r = *this;
	r -= o;
	return r;
}

Coeff Coeff::operator-() const
{
	Coeff r = *this;
	for (auto& [m, v] : r.terms_)
		v = -v;
	return r;
}

Coeff Coeff::operator*(const Coeff& o) const
{
	Coeff r;
	for (auto& [m1, r1] : terms_)
		for (auto& [m2, r2] : o.terms_)
			r += monomial(r1 * r2, m1 * m2);
	return r;
}

std::strong_ordering Coeff::operator<=>(const Coeff& o) const
{
	auto a = terms_.begin(), b = o.terms_.begin();
	for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
		if (auto c = a->first <=> b->first; c != 0)
			return c;
		if (a->second != b->second)
			return a->second < b->second ? std::strong_ordering::less : std::strong_ordering::greater;
	}
	return terms_.size() <=> o.terms_.size();
}

bool Coeff::is_rational() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Coeff::rational_value() const
{
	if (!is_rational())
		throw AlgebraError("coefficient " + str() + " is not a rational number");
	return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Coeff Coeff::inverse() const
{
	if (!is_unit())
		throw AlgebraError("coefficient " + str() + " is not invertible");
	auto& [m, r] = *terms_.begin();
	return monomial(Rational(1) / r, m.inverse());
}

int Coeff::leading_sign() const
{
	if (terms_.empty())
		return 0;
	return terms_.begin()->second.numerator() > 0 ? 1 : -1;
}

Coeff Coeff::substitute(const std::string& name, const Coeff& value) const
{
	Coeff r;
	for (auto& [m, v] : terms_) {
		int p = m.power(name);
		if (p == 0) {
			r += monomial(v, m);
			continue;
		}
		ParamMonomial rest = m * ParamMonomial::symbol(name, -p);
		r += monomial(v, rest) * pow(value, p);
	}
	return r;
}

double Coeff::evaluate(const std::map<std::string, double>& values) const
{
	double total = 0;
	for (auto& [m, v] : terms_) {
		double t = static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
		for (auto& [name, p] : m.factors()) {
			auto it = values.find(name);
			if (it == values.end())
				throw AlgebraError("no numeric value for parameter " + name);
			t *= std::pow(it->second, p);
		}
		total += t;
	}
	return total;
}

static std::string monomial_str(const ParamMonomial& m)
{
	std::string s;
	for (auto& [name, p] : m.factors()) {
		if (!s.empty())
			s += "*";
		s += name;
		if (p != 1)
			s += "^" + std::to_string(p);
	}
	return s;
}

std::string Coeff::str() const
{
	if (terms_.empty())
		return "0";
	std::string s;
	bool first = true;
	for (auto& [m, r] : terms_) {
		Rational a = r;
		if (!first)
			s += a.numerator() < 0 ? " - " : " + ";
		else if (a.numerator() < 0)
			s += "-";
		if (a.numerator() < 0)
			a = -a;
		std::string ms = monomial_str(m);
		if (ms.empty())
			s += to_string(a);
		else if (a == Rational(1))
			s += ms;
		else
			s += to_string(a) + "*" + ms;
		first = false;
	}
	return s;
}

Coeff pow(const Coeff& c, int e)
{
	if (e < 0)
		return pow(c.inverse(), -e);
	Coeff r(1);
	for (int i = 0; i < e; ++i)
		r *= c;
	return r;
}

}
