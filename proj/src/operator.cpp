#include "hamforge/operator.hpp"

#include "hamforge/errors.hpp"

namespace hamforge {

DerivPower DerivPower::operator+(const DerivPower& o) const
{
	DerivPower r;
	for (int i = 0; i < 3; ++i)
		r.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
	return r;
}

static void poly_add(OperatorPoly& p, const DerivPower& k, const Coeff& c)
{
	if (c.is_zero())
		return;
	auto it = p.find(k);
	if (it == p.end()) {
		p.emplace(k, c);
		return;
	}
	it->second += c;
	if (it->second.is_zero())
		p.erase(it);
}

OperatorPoly poly_mul(const OperatorPoly& a, const OperatorPoly& b)
{
	OperatorPoly r;
	for (auto& [ka, ca] : a)
		for (auto& [kb, cb] : b)
			poly_add(r, ka + kb, ca * cb);
	return r;
}

OperatorPoly laplacian_poly()
{
	OperatorPoly p;
	for (int i = 0; i < 3; ++i) {
		DerivPower k;
		k.e[i] = 2;
		p.emplace(k, Coeff(1));
	}
	return p;
}

bool divide_by_laplacian(const OperatorPoly& p, OperatorPoly& quotient)
{
	OperatorPoly r = p;
	OperatorPoly q;
	// eliminate d1^2 factors from the top, lex order on the d1 exponent
	while (!r.empty() && r.rbegin()->first.e[0] >= 2) {
		auto [k, c] = *r.rbegin();
		DerivPower t = k;
		t.e[0] -= 2;
		poly_add(q, t, c);
		for (int i = 0; i < 3; ++i) {
			DerivPower s = t;
			s.e[i] += 2;
			poly_add(r, s, -c);
		}
	}
	if (!r.empty())
		return false;
	quotient = std::move(q);
	return true;
}

Operator::Operator(Coeff c)
{
	if (!c.is_zero())
		poly_.emplace(DerivPower{}, std::move(c));
}

Operator Operator::d(int i)
{
	if (i < 1 || i > 3)
		throw AlgebraError("spatial derivative index must be 1..3");
	DerivPower k;
	k.e[i - 1] = 1;
	Operator o;
	o.poly_.emplace(k, Coeff(1));
	return o;
}

Operator Operator::laplacian()
{
	Operator o(1);
	o.lap_ = 1;
	return o;
}

Operator Operator::inverse_laplacian()
{
	Operator o(1);
	o.lap_ = -1;
	return o;
}

Operator Operator::from_poly(OperatorPoly p, int lap)
{
	Operator o;
	for (auto it = p.begin(); it != p.end();)
		it = it->second.is_zero() ? p.erase(it) : std::next(it);
	o.poly_ = std::move(p);
	o.lap_ = lap;
	o.canonicalize();
	return o;
}

void Operator::canonicalize()
{
	if (poly_.empty()) {
		lap_ = 0;
		return;
	}
	OperatorPoly q;
	while (divide_by_laplacian(poly_, q)) {
		poly_ = std::move(q);
		++lap_;
	}
}

static OperatorPoly times_laplacian(OperatorPoly p, int k)
{
	for (int i = 0; i < k; ++i)
		p = poly_mul(p, laplacian_poly());
	return p;
}

Operator Operator::operator+(const Operator& o) const
{
	if (is_zero())
		return o;
	if (o.is_zero())
		return *this;
	int l = std::min(lap_, o.lap_);
	OperatorPoly p = times_laplacian(poly_, lap_ - l);
	for (auto& [k, c] : times_laplacian(o.poly_, o.lap_ - l))
		poly_add(p, k, c);
	return from_poly(std::move(p), l);
}

Operator Operator::operator-() const
{
	Operator r = *this;
	for (auto& [k, c] : r.poly_)
		c = -c;
	return r;
}

Operator Operator::operator-(const Operator& o) const { return *this + (-o); }

Operator Operator::operator*(const Operator& o) const
{
	if (is_zero() || o.is_zero())
		return {};
	return from_poly(poly_mul(poly_, o.poly_), lap_ + o.lap_);
}

bool Operator::is_unit() const
{
	return poly_.size() == 1 && poly_.begin()->first.order() == 0 && poly_.begin()->second.is_unit();
}

bool Operator::is_coefficient() const
{
	return poly_.empty() || (lap_ == 0 && poly_.size() == 1 && poly_.begin()->first.order() == 0);
}

Coeff Operator::coefficient() const
{
	if (!is_coefficient())
		throw AlgebraError("operator " + str() + " carries derivatives");
	return poly_.empty() ? Coeff() : poly_.begin()->second;
}

Operator Operator::inverse() const
{
	if (!is_unit())
		throw AlgebraError("operator " + str() + " is not invertible");
	Operator o(poly_.begin()->second.inverse());
	o.lap_ = -lap_;
	return o;
}

Operator Operator::adjoint() const
{
	Operator r = *this;
	for (auto& [k, c] : r.poly_)
		if (k.order() % 2)
			c = -c;
	return r;
}

OperatorPoly Operator::expanded_poly() const
{
	if (lap_ < 0)
		throw AlgebraError("operator " + str() + " contains an inverse Laplacian");
	return times_laplacian(poly_, lap_);
}

Operator Operator::substitute(const std::string& name, const Coeff& value) const
{
	OperatorPoly p;
	for (auto& [k, c] : poly_)
		poly_add(p, k, c.substitute(name, value));
	return from_poly(std::move(p), lap_);
}

static std::string term_body(const DerivPower& k)
{
	std::string s;
	for (int i = 0; i < 3; ++i) {
		if (!k.e[i])
			continue;
		if (!s.empty())
			s += "*";
		s += "d" + std::to_string(i + 1);
		if (k.e[i] > 1)
			s += "^" + std::to_string(k.e[i]);
	}
	return s;
}

std::string Operator::str() const
{
	if (poly_.empty())
		return "0";
	std::string s;
	bool first = true;
	// highest order first reads more naturally
	for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) {
		auto& [k, c] = *it;
		std::string body = term_body(k);
		Coeff a = c;
		bool neg = c.size() == 1 && c.leading_sign() < 0;
		if (neg)
			a = -c;
		if (!first)
			s += neg ? " - " : " + ";
		else if (neg)
			s += "-";
		std::string cs = a.size() > 1 ? "(" + a.str() + ")" : a.str();
		if (body.empty())
			s += cs;
		else if (cs == "1")
			s += body;
		else
			s += cs + "*" + body;
		first = false;
	}
	if (lap_ == 0)
		return s;
	if (poly_.size() > 1)
		s = "(" + s + ")";
	if (lap_ > 0)
		return s + "*Lap" + (lap_ > 1 ? "^" + std::to_string(lap_) : "");
	return s + "/Lap" + (lap_ < -1 ? "^" + std::to_string(-lap_) : "");
}

}
