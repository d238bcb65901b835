#include "hamforge/expression.hpp"

#include <algorithm>

#include "hamforge/errors.hpp"

namespace hamforge {

int deriv_slot(int component)
{
	switch (component) {
	case 0: return 0;
	case 1: return 1;
	case 2: return 2;
	case 3: return 3;
	case 5: return 4;
	}
	throw AlgebraError("no coordinate with index " + std::to_string(component));
}

int slot_component(int slot) { return slot == 4 ? 5 : slot; }

Atom Atom::field(std::string name, int component, Mode mode)
{
	return Atom{AtomKind::field, std::move(name), mode, component};
}

Atom Atom::momentum(std::string name, int component, Mode mode)
{
	return Atom{AtomKind::momentum, std::move(name), mode, component};
}

Atom Atom::multiplier(std::string name, int component, Mode mode)
{
	return Atom{AtomKind::multiplier, std::move(name), mode, component};
}

Atom Atom::gauge_parameter(std::string name, Mode mode)
{
	return Atom{AtomKind::gauge_parameter, std::move(name), mode, -1};
}

Atom Atom::arbitrary(std::string name, Mode mode)
{
	return Atom{AtomKind::arbitrary, std::move(name), mode, -1};
}

Atom Atom::differentiated(int c, int times) const
{
	Atom a = *this;
	a.deriv[deriv_slot(c)] = static_cast<std::uint8_t>(a.deriv[deriv_slot(c)] + times);
	return a;
}

Atom Atom::base() const
{
	Atom a = *this;
	a.deriv[1] = a.deriv[2] = a.deriv[3] = 0;
	a.inv_lap = 0;
	return a;
}

Atom Atom::bare() const
{
	Atom a = *this;
	a.deriv = {};
	a.inv_lap = 0;
	return a;
}

DerivPower Atom::spatial_power() const
{
	DerivPower p;
	p.e = {deriv[1], deriv[2], deriv[3]};
	return p;
}

bool Atom::has_derivatives() const
{
	return inv_lap || std::any_of(deriv.begin(), deriv.end(), [](auto d) { return d != 0; });
}

std::string mode_suffix(Mode m)
{
	switch (m) {
	case Mode::zero: return "@0";
	case Mode::kk: return "@n";
	default: return "";
	}
}

std::string Atom::str() const
{
	std::string s;
	for (int i = 0; i < inv_lap; ++i)
		s += "invlap*";
	for (int slot = 0; slot < 5; ++slot)
		for (int i = 0; i < deriv[slot]; ++i)
			s += "d[" + std::to_string(slot_component(slot)) + "]*";
	s += name;
	if (component >= 0)
		s += "[" + std::to_string(component) + "]";
	return s + mode_suffix(mode);
}

Expression::Expression(Coeff c)
{
	if (!c.is_zero())
		terms_.emplace(Monomial{}, std::move(c));
}

Expression Expression::atom(const Atom& a)
{
	Expression e;
	e.terms_.emplace(Monomial{a}, Coeff(1));
	e.canonicalize_inverse_laplacians();
	return e;
}

Expression Expression::term(Coeff c, Monomial m)
{
	Expression e;
	std::sort(m.begin(), m.end());
	e.add_term(m, c);
	e.canonicalize_inverse_laplacians();
	return e;
}

Expression Expression::from_terms(const std::vector<std::pair<Monomial, Coeff>>& raw)
{
	Expression e;
	for (auto [m, c] : raw) {
		std::sort(m.begin(), m.end());
		e.add_term(m, c);
	}
	e.canonicalize_inverse_laplacians();
	return e;
}

void Expression::add_term(const Monomial& m, const Coeff& c)
{
	if (c.is_zero())
		return;
	auto it = terms_.find(m);
	if (it == terms_.end()) {
		terms_.emplace(m, c);
		return;
	}
	it->second += c;
	if (it->second.is_zero())
		terms_.erase(it);
}

void Expression::canonicalize_inverse_laplacians()
{
	std::set<Atom> bases;
	for (auto& [m, c] : terms_)
		if (m.size() == 1 && m[0].inv_lap)
			bases.insert(m[0].base());
	if (bases.empty())
		return;
	std::map<Atom, Operator> ops;
	for (auto it = terms_.begin(); it != terms_.end();) {
		if (it->first.size() == 1 && bases.count(it->first[0].base())) {
			ops[it->first[0].base()] += Operator(it->second) * atom_operator(it->first[0]);
			it = terms_.erase(it);
		} else {
			++it;
		}
	}
	for (auto& [m, c] : from_linear(ops).terms_)
		add_term(m, c);
}

Expression& Expression::operator+=(const Expression& o)
{
	bool inv = false;
	for (auto& [m, c] : o.terms_) {
		add_term(m, c);
		inv = inv || (m.size() == 1 && m[0].inv_lap);
	}
	if (inv)
		canonicalize_inverse_laplacians();
	return *this;
}

Expression& Expression::operator-=(const Expression& o) { return *this += -o; }

Expression Expression::operator+(const Expression& o) const
{
	Expression r = *this;
	r += o;
	return r;
}

Expression Expression::operator-(const Expression& o) const
{
	Expression r = *this;
	r -= o;
	return r;
}

Expression Expression::operator-() const
{
	Expression r = *this;
	for (auto& [m, c] : r.terms_)
		c = -c;
	return r;
}

Expression Expression::operator*(const Expression& o) const
{
	Expression r;
	for (auto& [m1, c1] : terms_)
		for (auto& [m2, c2] : o.terms_) {
			Monomial m;
			m.reserve(m1.size() + m2.size());
			std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
			r.add_term(m, c1 * c2);
		}
	r.canonicalize_inverse_laplacians();
	return r;
}

Expression operator*(const Coeff& c, const Expression& e) { return Expression(c) * e; }

int Expression::degree() const
{
	int d = 0;
	for (auto& [m, c] : terms_)
		d = std::max<int>(d, static_cast<int>(m.size()));
	return d;
}

bool Expression::is_linear() const
{
	return std::all_of(terms_.begin(), terms_.end(), [](auto& t) { return t.first.size() == 1; });
}

bool Expression::contains(AtomKind k) const
{
	for (auto& [m, c] : terms_)
		for (auto& a : m)
			if (a.kind == k)
				return true;
	return false;
}

bool Expression::contains_bare(const Atom& bare) const
{
	for (auto& [m, c] : terms_)
		for (auto& a : m)
			if (a.bare() == bare)
				return true;
	return false;
}

bool Expression::has_time_derivatives() const
{
	for (auto& [m, c] : terms_)
		for (auto& a : m)
			if (a.deriv[0])
				return true;
	return false;
}

std::set<Atom> Expression::atoms() const
{
	std::set<Atom> s;
	for (auto& [m, c] : terms_)
		s.insert(m.begin(), m.end());
	return s;
}

std::set<Atom> Expression::bare_atoms() const
{
	std::set<Atom> s;
	for (auto& [m, c] : terms_)
		for (auto& a : m)
			s.insert(a.bare());
	return s;
}

Coeff Expression::constant_term() const
{
	auto it = terms_.find(Monomial{});
	return it == terms_.end() ? Coeff() : it->second;
}

Expression Expression::derivative(int component) const
{
	Expression r;
	for (auto& [m, c] : terms_)
		for (std::size_t i = 0; i < m.size(); ++i) {
			Monomial n = m;
			n[i] = n[i].differentiated(component);
			std::sort(n.begin(), n.end());
			r.add_term(n, c);
		}
	r.canonicalize_inverse_laplacians();
	return r;
}

Expression Expression::substitute_param(const std::string& name, const Coeff& value) const
{
	Expression r;
	for (auto& [m, c] : terms_)
		r.add_term(m, c.substitute(name, value));
	return r;
}

std::string Expression::str() const
{
	if (terms_.empty())
		return "0";
	std::string s;
	bool first = true;
	for (auto& [m, c] : terms_) {
		std::string body;
		for (auto& a : m)
			body += (body.empty() ? "" : "*") + a.str();
		bool neg = c.size() == 1 && c.leading_sign() < 0;
		Coeff a = neg ? -c : c;
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
	return s;
}

Expression normalize(const Expression& e)
{
	std::vector<std::pair<Monomial, Coeff>> raw(e.terms().begin(), e.terms().end());
	return Expression::from_terms(raw);
}

Expression laplacian(const Expression& e)
{
	Expression r;
	for (int i = 1; i <= 3; ++i)
		r += e.derivative(i).derivative(i);
	return r;
}

Operator atom_operator(const Atom& a)
{
	OperatorPoly p;
	p.emplace(a.spatial_power(), Coeff(1));
	return Operator::from_poly(std::move(p), -a.inv_lap);
}

LinearForm linear_form(const Expression& e)
{
	LinearForm f;
	for (auto& [m, c] : e.terms()) {
		if (m.empty())
			f.constant = c;
		else if (m.size() == 1)
			f.coeffs[m[0].base()] += Operator(c) * atom_operator(m[0]);
		else
			f.nonlinear += Expression::term(c, m);
	}
	for (auto it = f.coeffs.begin(); it != f.coeffs.end();)
		it = it->second.is_zero() ? f.coeffs.erase(it) : std::next(it);
	return f;
}

Expression from_linear(const std::map<Atom, Operator>& coeffs, const Coeff& constant)
{
	std::vector<std::pair<Monomial, Coeff>> raw;
	if (!constant.is_zero())
		raw.push_back({Monomial{}, constant});
	for (auto& [base, op] : coeffs) {
		if (op.is_zero())
			continue;
		int lap = op.laplacian_power();
		OperatorPoly poly = lap >= 0 ? op.expanded_poly() : op.poly();
		for (auto& [k, c] : poly) {
			Atom a = base;
			a.deriv[1] = k.e[0];
			a.deriv[2] = k.e[1];
			a.deriv[3] = k.e[2];
			a.inv_lap = static_cast<std::uint8_t>(lap < 0 ? -lap : 0);
			raw.push_back({Monomial{a}, c});
		}
	}
	// already canonical: bypass the Laplacian reduction
	Expression out;
	for (auto& [m, c] : raw)
		out.add_term(m, c);
	return out;
}

Expression apply_inverse_laplacian(const Expression& e)
{
	if (e.is_zero())
		return e;
	LinearForm f = linear_form(e);
	if (!f.constant.is_zero())
		throw NonInvertibleModeError("inverse Laplacian of a constant term " + f.constant.str());
	if (!f.nonlinear.is_zero())
		throw UnsupportedError("inverse Laplacian of a nonlinear expression: " + e.str());
	for (auto& [a, op] : f.coeffs)
		op = op * Operator::inverse_laplacian();
	return from_linear(f.coeffs);
}

Expression apply(const Operator& op, const Expression& e)
{
	Expression r;
	for (auto& [k, c] : op.poly()) {
		Expression t = e;
		for (int i = 0; i < 3; ++i)
			for (int j = 0; j < k.e[i]; ++j)
				t = t.derivative(i + 1);
		r += Expression(c) * t;
	}
	int lap = op.laplacian_power();
	for (int i = 0; i < lap; ++i)
		r = laplacian(r);
	for (int i = 0; i < -lap; ++i)
		r = apply_inverse_laplacian(r);
	return r;
}

Expression partial(const Expression& e, const Atom& a)
{
	std::vector<std::pair<Monomial, Coeff>> raw;
	for (auto& [m, c] : e.terms()) {
		auto it = std::find(m.begin(), m.end(), a);
		if (it == m.end())
			continue;
		auto k = std::count(m.begin(), m.end(), a);
		Monomial n = m;
		n.erase(n.begin() + (it - m.begin()));
		raw.push_back({n, c * Coeff(static_cast<std::int64_t>(k))});
	}
	return Expression::from_terms(raw);
}

static Atom variation_base(const Atom& a, Variation v)
{
	Atom b = a.base();
	if (v == Variation::spacetime)
		b.deriv[0] = 0;
	return b;
}

Expression functional_derivative(const Expression& density, const Atom& target, Variation v)
{
	if (target.inv_lap || target.spatial_order() || (v == Variation::spacetime && target.time_order()))
		throw UnknownAtomError("variation target " + target.str() + " carries derivatives");
	Expression r;
	for (auto& [m, c] : density.terms()) {
		for (std::size_t p = 0; p < m.size(); ++p) {
			if (variation_base(m[p], v) != target)
				continue;
			if (m[p].inv_lap)
				throw UnsupportedError("variation through an inverse Laplacian in " + density.str());
			Monomial rest = m;
			rest.erase(rest.begin() + static_cast<long>(p));
			Expression t = Expression::term(c, rest);
			int order = m[p].spatial_order();
			for (int i = 1; i <= 3; ++i)
				for (int j = 0; j < m[p].deriv[i]; ++j)
					t = t.derivative(i);
			if (v == Variation::spacetime) {
				order += m[p].deriv[0];
				for (int j = 0; j < m[p].deriv[0]; ++j)
					t = t.derivative(0);
			}
			r += order % 2 ? -t : t;
		}
	}
	return r;
}

Expression functional_derivative(const Expression& density, const Atom& target, const std::set<Atom>& declared,
	Variation v)
{
	if (!declared.count(target))
		throw UnknownAtomError("unknown atom " + target.str());
	return functional_derivative(density, target, v);
}

Expression substitute(const Expression& e, const std::map<Atom, Expression>& replacements)
{
	Expression r;
	for (auto& [m, c] : e.terms()) {
		Expression t(c);
		for (auto& a : m) {
			auto it = replacements.find(a.bare());
			if (it == replacements.end()) {
				t *= Expression::atom(a);
				continue;
			}
			Expression x = it->second;
			for (int slot = 0; slot < 5; ++slot)
				for (int j = 0; j < a.deriv[slot]; ++j)
					x = x.derivative(slot_component(slot));
			for (int j = 0; j < a.inv_lap; ++j)
				x = apply_inverse_laplacian(x);
			t *= x;
		}
		r += t;
	}
	return r;
}

Expression substitute(const Expression& e, const Atom& bare, const Expression& replacement)
{
	return substitute(e, std::map<Atom, Expression>{{bare.bare(), replacement}});
}

static Atom spatial_stripped(const Atom& a)
{
	Atom b = a;
	b.deriv[1] = b.deriv[2] = b.deriv[3] = 0;
	return b;
}

Expression ibp_canonical(const Expression& e)
{
	std::vector<std::pair<Monomial, Coeff>> raw;
	for (auto& [m, c] : e.terms()) {
		bool inv = std::any_of(m.begin(), m.end(), [](const Atom& a) { return a.inv_lap != 0; });
		if (inv || m.size() > 2 || m.empty()) {
			raw.push_back({m, c});
			continue;
		}
		if (m.size() == 1) {
			if (m[0].spatial_order() == 0)
				raw.push_back({m, c});
			continue;
		}
		Atom u = m[0], w = m[1];
		if (spatial_stripped(w) < spatial_stripped(u))
			std::swap(u, w);
		int sign = u.spatial_order() % 2 ? -1 : 1;
		for (int i = 1; i <= 3; ++i) {
			w.deriv[i] = static_cast<std::uint8_t>(w.deriv[i] + u.deriv[i]);
			u.deriv[i] = 0;
		}
		if (u == spatial_stripped(w) && w.spatial_order() % 2)
			continue;
		raw.push_back({Monomial{u, w}, sign > 0 ? c : -c});
	}
	return Expression::from_terms(raw);
}

Expression sign_normalized(const Expression& e)
{
	if (e.is_zero())
		return e;
	return e.terms().begin()->second.leading_sign() < 0 ? -e : e;
}

double evaluate(const Expression& e, const std::function<double(const Atom&)>& atom_value,
	const std::map<std::string, double>& params)
{
	double total = 0;
	for (auto& [m, c] : e.terms()) {
		double t = c.evaluate(params);
		for (auto& a : m)
			t *= atom_value(a);
		total += t;
	}
	return total;
}

}
