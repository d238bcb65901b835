#include "hamforge/kk.hpp"

#include "hamforge/errors.hpp"

namespace hamforge {

std::string ComponentExpansion::str(const std::string& radius, const std::string& coordinate) const
{
	std::string atom = field + (component >= 0 ? "[" + std::to_string(component) + "]" : "");
	std::string harm = (harmonic == Harmonic::cosine ? "cos(n*" : "sin(n*") + coordinate + "/" + radius + ")";
	std::string s = atom + "(x," + coordinate + ") = ";
	if (zero_mode)
		s += "(2*pi*" + radius + ")^-1/2 * " + atom + "@0(x) + ";
	return s + "(pi*" + radius + ")^-1/2 * sum_n " + atom + "@n(x) " + harm;
}

const ComponentExpansion* ModeExpansion::find(const std::string& field, int component) const
{
	for (auto& c : components)
		if (c.field == field && c.component == component)
			return &c;
	return nullptr;
}

ModeExpansion expand_on_orbifold(const TheorySpec& spec, std::optional<int> k)
{
	if (!spec.compact)
		throw UnsupportedError("theory " + spec.name + " declares no compact dimension");
	if (k && *k < 1)
		throw UnsupportedError("mode truncation must be a positive integer");
	ModeExpansion exp;
	exp.radius = spec.compact->radius;
	exp.coordinate = spec.compact->coordinate;
	exp.k = k;
	for (auto& f : spec.fields) {
		std::vector<int> comps = f.rank == Rank::vector ? spec.components() : std::vector<int>{-1};
		for (int c : comps) {
			auto it = f.parity.find(c);
			if (it == f.parity.end())
				throw InconsistencyError("no orbifold parity for " + f.name +
					(c >= 0 ? "[" + std::to_string(c) + "]" : std::string()));
			ComponentExpansion ce;
			ce.field = f.name;
			ce.component = c;
			ce.parity = it->second;
			ce.zero_mode = it->second == Parity::even;
			ce.harmonic = it->second == Parity::even ? Harmonic::cosine : Harmonic::sine;
			exp.components.push_back(ce);
		}
	}
	return exp;
}

Rational harmonic_integral(BasisFunction a, BasisFunction b)
{
	auto check = [](const BasisFunction& f) {
		if (f.kind != BasisFunction::constant && f.n < 1)
			throw AlgebraError("harmonic with mode number below one");
	};
	check(a);
	check(b);
	if (a.kind == BasisFunction::constant && b.kind == BasisFunction::constant)
		return Rational(2);
	if (a.kind == BasisFunction::constant || b.kind == BasisFunction::constant)
		return Rational(0);
	if (a.kind != b.kind)
		return Rational(0);
	return a.n == b.n ? Rational(1) : Rational(0);
}

namespace {

struct Piece {
	Atom atom;
	BasisFunction basis;
	bool zero = false;
	Coeff factor;
};

std::vector<Piece> expand_atom(const Atom& a, const ModeExpansion& exp)
{
	if (a.kind != AtomKind::field)
		throw UnsupportedError("only fields can be expanded in harmonics: " + a.str());
	const ComponentExpansion* ce = exp.find(a.name, a.component);
	if (!ce)
		throw InconsistencyError("no harmonic expansion for " + a.str());
	int ny = a.deriv[deriv_slot(5)];
	Atom base = a;
	base.deriv[deriv_slot(5)] = 0;
	std::vector<Piece> out;
	if (ce->zero_mode && ny == 0) {
		Atom z = base;
		z.mode = Mode::zero;
		out.push_back({z, {BasisFunction::constant, 0}, true, Coeff(1)});
	}
	if (exp.has_kk_modes()) {
		Atom n = base;
		n.mode = Mode::kk;
		Coeff step = Coeff::param("n") * Coeff::param(exp.radius, -1);
		BasisFunction::Kind kind = ce->harmonic == Harmonic::cosine ? BasisFunction::cosine : BasisFunction::sine;
		Coeff f(1);
		for (int j = 0; j < ny; ++j) {
			// d/dy cos = -(n/R) sin, d/dy sin = (n/R) cos
			f = kind == BasisFunction::cosine ? -(f * step) : f * step;
			kind = kind == BasisFunction::cosine ? BasisFunction::sine : BasisFunction::cosine;
		}
		out.push_back({n, {kind, 1}, false, f});
	}
	return out;
}

}

Expression integrate_extra_dimension(const TheorySpec& spec, const ModeExpansion& exp)
{
	if (!spec.compact)
		throw UnsupportedError("theory " + spec.name + " declares no compact dimension");
	Expression out;
	for (auto& [mono, c] : spec.lagrangian.terms()) {
		if (mono.size() != 2) {
			if (mono.size() > 2)
				throw UnsupportedError("mode couplings beyond quadratic order are not tabulated");
			// a lone zero-mode factor integrates to a power of (2 pi R)^1/2
			for (auto& a : mono)
				for (auto& p : expand_atom(a, exp))
					if (p.zero)
						throw InconsistencyError("unresolved y-dependence in term with " + a.str());
			if (mono.empty())
				throw InconsistencyError("unresolved y-dependence in a constant term");
			continue;
		}
		auto pa = expand_atom(mono[0], exp);
		auto pb = expand_atom(mono[1], exp);
		for (auto& x : pa) {
			for (auto& y : pb) {
				Rational integral = harmonic_integral(x.basis, y.basis);
				if (integral.numerator() == 0)
					continue;
				if (x.zero != y.zero)
					throw InconsistencyError("unresolved y-dependence between " + x.atom.str() + " and " + y.atom.str());
				// weights (2 pi R)^-1 for the zero mode pair, (pi R)^-1 otherwise
				Rational w = x.zero ? integral / Rational(2) : integral;
				out += Expression::term(c * x.factor * y.factor * Coeff(w), Monomial{x.atom, y.atom});
			}
		}
	}
	return out;
}

bool modes_decouple(const Expression& density)
{
	for (auto& [m, c] : density.terms()) {
		bool zero = false, kk = false;
		for (auto& a : m) {
			zero = zero || a.mode == Mode::zero;
			kk = kk || a.mode == Mode::kk;
		}
		if (zero && kk)
			return false;
	}
	return true;
}

Expression sector_part(const Expression& density, Mode mode)
{
	std::vector<std::pair<Monomial, Coeff>> raw;
	for (auto& [m, c] : density.terms()) {
		bool all = !m.empty();
		for (auto& a : m)
			all = all && a.mode == mode;
		if (all)
			raw.push_back({m, c});
	}
	return Expression::from_terms(raw);
}

}
