#include "hamforge/fj.hpp"

#include <algorithm>

namespace hamforge {

std::size_t SymplecticState::index_of(const Atom& a) const
{
	auto it = std::find(xi.begin(), xi.end(), a);
	return it == xi.end() ? xi.size() : static_cast<std::size_t>(it - xi.begin());
}

std::vector<std::string> SymplecticState::labels() const
{
	std::vector<std::string> r;
	for (auto& a : xi)
		r.push_back(a.str());
	return r;
}

std::string NullMode::str() const
{
	std::string s = "(";
	for (std::size_t i = 0; i < display.size(); ++i)
		s += (i ? ", " : "") + display[i].str();
	return s + ")";
}

namespace {

bool is_spatial(int c) { return c >= 1 && c <= 3; }

// the momentum of a primary of the form p = 0, if it has that form
std::optional<Atom> bare_momentum(const Expression& e)
{
	LinearForm f = linear_form(e);
	if (f.coeffs.size() != 1 || !f.constant.is_zero() || !f.nonlinear.is_zero())
		return std::nullopt;
	auto& [a, op] = *f.coeffs.begin();
	if (a.kind != AtomKind::momentum || !op.is_coefficient())
		return std::nullopt;
	return a;
}

std::map<Atom, Expression> zeros(const std::vector<Atom>& atoms)
{
	std::map<Atom, Expression> r;
	for (auto& a : atoms)
		r[a] = Expression();
	return r;
}

std::vector<Expression> potential_gradient(const SymplecticState& s)
{
	std::vector<Expression> g;
	for (auto& a : s.xi)
		g.push_back(functional_derivative(s.potential, a));
	return g;
}

Operator coefficient_of(const LinearForm& f, const Atom& a)
{
	auto it = f.coeffs.find(a);
	return it == f.coeffs.end() ? Operator() : it->second;
}

LinearForm checked_form(const Expression& e)
{
	LinearForm f = linear_form(e);
	if (!f.nonlinear.is_zero())
		throw UnsupportedError("symplectic one-forms must be linear: " + e.str());
	return f;
}

bool mentions(const Expression& e, const Atom& bare)
{
	for (auto& a : e.atoms())
		if (a.bare() == bare)
			return true;
	return false;
}

ConstraintSpan surface_of(const SymplecticState& s)
{
	ConstraintSpan span;
	for (auto& c : s.constraints)
		span.add(c.expr);
	return span;
}

Expression contract(const KernelVector& u, const std::vector<Expression>& z)
{
	Expression r;
	for (std::size_t i = 0; i < u.size(); ++i)
		if (!u[i].is_zero())
			r += apply(u[i], z[i]);
	return r;
}

}

SymplecticState first_order_form(const Expression& Hc, const PhaseSpace& ps, const ConstraintSet& primaries)
{
	std::vector<Atom> frozen;
	for (auto& c : primaries) {
		auto p = bare_momentum(c.expr);
		if (!p)
			throw UnsupportedError("first-order form needs primaries of the form p = 0, got " + c.expr.str());
		frozen.push_back(*p);
	}
	auto is_frozen = [&](const CanonicalPair& p) {
		return std::find(frozen.begin(), frozen.end(), p.p) != frozen.end();
	};

	SymplecticState s;
	s.mode = ps.mode;
	std::vector<std::string> names;
	for (auto& p : ps.pairs)
		if (std::find(names.begin(), names.end(), p.q.name) == names.end())
			names.push_back(p.q.name);
	auto push = [&](const Atom& a, const Expression& form) {
		s.xi.push_back(a);
		s.one_forms.push_back(form);
	};
	// per field: spatial coordinates, their momenta, then the remaining pairs
	for (auto& name : names) {
		std::vector<const CanonicalPair*> spatial, rest;
		for (auto& p : ps.pairs)
			if (p.q.name == name && !is_frozen(p))
				(is_spatial(p.q.component) ? spatial : rest).push_back(&p);
		for (auto* p : spatial)
			push(p->q, Expression::atom(p->p));
		for (auto* p : spatial)
			push(p->p, Expression());
		for (auto* p : rest) {
			push(p->q, Expression::atom(p->p));
			push(p->p, Expression());
		}
	}
	for (auto& p : ps.pairs)
		if (is_frozen(p))
			push(p.q, Expression());
	s.potential = ibp_canonical(substitute(Hc, zeros(frozen)));
	return s;
}

KernelMatrix symplectic_matrix(const SymplecticState& s)
{
	std::size_t n = s.xi.size();
	std::vector<LinearForm> forms;
	for (auto& a : s.one_forms)
		forms.push_back(checked_form(a));
	KernelMatrix f(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			f.at(i, j) = coefficient_of(forms[j], s.xi[i]).adjoint() - coefficient_of(forms[i], s.xi[j]);
	f.row_labels = f.col_labels = s.labels();
	return f;
}

std::vector<NullMode> null_modes(const KernelMatrix& f, Mode mode, const std::string& stem)
{
	std::vector<NullMode> out;
	auto basis = left_null_space(f);
	for (std::size_t k = 0; k < basis.size(); ++k) {
		NullMode m;
		m.u = basis[k];
		m.omega = Atom::arbitrary(k ? stem + std::to_string(k + 1) : stem, mode);
		for (auto& op : m.u)
			m.display.push_back(apply(op.adjoint(), Expression::atom(m.omega)));
		out.push_back(m);
	}
	return out;
}

Expression fj_constraint(const NullMode& m, const SymplecticState& s)
{
	if (m.u.size() != s.xi.size())
		throw AlgebraError("null mode length does not match the symplectic variables");
	return contract(m.u, potential_gradient(s));
}

std::vector<Expression> fj_constraint_generation(const std::vector<NullMode>& modes, const SymplecticState& s)
{
	std::vector<Expression> out;
	for (auto& m : modes) {
		Expression om = sign_normalized(fj_constraint(m, s));
		if (!om.is_zero())
			out.push_back(om);
	}
	return out;
}

ContractionTest no_new_constraints_test(const KernelMatrix& F, const std::vector<Expression>& Z,
	const ConstraintSpan& surface, Mode mode)
{
	if (Z.size() != F.rows())
		throw AlgebraError("contraction vector length does not match the extended matrix");
	ContractionTest t;
	t.F = F;
	t.Z = Z;
	t.modes = null_modes(F, mode);
	for (auto& m : t.modes) {
		Expression c = contract(m.u, Z);
		t.contractions.push_back(c);
		if (!surface.weakly_zero(c))
			t.identity = false;
	}
	return t;
}

ContractionTest no_new_constraints_test(const SymplecticState& s, const std::vector<Expression>& omegas)
{
	KernelMatrix f = symplectic_matrix(s);
	std::size_t n = s.xi.size();
	KernelMatrix F(n + omegas.size(), n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			F.at(i, j) = f.at(i, j);
	F.row_labels = f.row_labels;
	F.col_labels = f.col_labels;
	ConstraintSpan surface = surface_of(s);
	std::vector<Expression> Z = potential_gradient(s);
	for (std::size_t r = 0; r < omegas.size(); ++r) {
		LinearForm lf = checked_form(omegas[r]);
		for (std::size_t j = 0; j < n; ++j)
			F.at(n + r, j) = coefficient_of(lf, s.xi[j]);
		F.row_labels.push_back(omegas[r].str());
		Z.push_back(Expression());
		surface.add(omegas[r]);
	}
	return no_new_constraints_test(F, Z, surface, s.mode);
}

SymplecticState augment_lagrangian(const SymplecticState& s, const Expression& expr, const Atom& multiplier,
	bool gauge, const std::string& name)
{
	Expression e = sign_normalized(substitute(expr, zeros(s.eliminated)));
	if (e.is_zero())
		throw InconsistencyError("condition " + expr.str() + " vanishes once eliminated variables are removed");
	for (auto& a : e.atoms()) {
		if (a.kind != AtomKind::field && a.kind != AtomKind::momentum)
			continue;
		if (s.index_of(a.bare()) == s.xi.size())
			throw InconsistencyError(expr.str() + " refers to " + a.bare().str() +
				", which is not a symplectic variable");
	}
	SymplecticState r = s;
	r.level = s.level + 1;
	r.xi.push_back(multiplier);
	r.one_forms.push_back(-e);
	r.constraints.push_back({name, e, gauge, multiplier, s.level});

	// a variable with zero one-form entering V as lambda * e is the multiplier of e itself
	ConstraintSpan only{{e}};
	bool removed = false;
	for (std::size_t k = 0; k < r.xi.size();) {
		const Atom& a = r.xi[k];
		bool candidate = a.kind != AtomKind::multiplier && r.one_forms[k].is_zero();
		for (auto& form : r.one_forms)
			candidate = candidate && !mentions(form, a);
		if (candidate) {
			Expression dv = functional_derivative(r.potential, a);
			if (!dv.is_zero() && !mentions(dv, a) && only.weakly_zero(dv)) {
				r.potential = substitute(r.potential, a, Expression());
				r.eliminated.push_back(a);
				r.xi.erase(r.xi.begin() + static_cast<long>(k));
				r.one_forms.erase(r.one_forms.begin() + static_cast<long>(k));
				removed = true;
				continue;
			}
		}
		++k;
	}
	if (!removed) {
		// a condition fixing a single variable is imposed strongly on V
		LinearForm lf = linear_form(e);
		if (lf.coeffs.size() == 1 && lf.constant.is_zero() && lf.nonlinear.is_zero() &&
			lf.coeffs.begin()->second.is_coefficient())
			r.potential = substitute(r.potential, lf.coeffs.begin()->first, Expression());
	}
	r.potential = ibp_canonical(r.potential);
	return r;
}

BracketTable extract_fj_brackets(const SymplecticState& s)
{
	KernelMatrix f = symplectic_matrix(s);
	KernelMatrix inv;
	try {
		inv = invert_kernel_matrix(f);
	} catch (const SingularMatrixError&) {
		throw SymplecticSingularError("symplectic matrix at level " + std::to_string(s.level) +
				" is singular; a gauge condition is needed",
			s.level, null_modes(f, s.mode));
	}
	BracketTable t;
	t.kind = "FJ";
	std::vector<std::size_t> idx;
	for (std::size_t i = 0; i < s.xi.size(); ++i)
		if (s.xi[i].kind != AtomKind::multiplier) {
			idx.push_back(i);
			t.atoms.push_back(s.xi[i]);
		}
	for (auto i : idx)
		for (auto j : idx)
			t.set(s.xi[i], s.xi[j], inv.at(i, j));
	return t;
}

FJAnalysis analyze_fj(const Expression& L, const PhaseSpace& ps, const std::vector<Expression>& gauge, int cap)
{
	FJAnalysis out;
	out.phase = ps;
	HessianResult h = hessian_primaries(L, ps);
	SymplecticState s = first_order_form(canonical_hamiltonian(L, ps), ps, h.primaries);
	out.states.push_back(s);
	std::size_t next_gauge = 0;
	int rhos = 0, etas = 0;
	bool gauge_fixed = false;
	auto fresh = [&](const char* stem, int& count) {
		++count;
		return Atom::multiplier(count == 1 ? stem : stem + std::to_string(count), -1, ps.mode);
	};
	for (;;) {
		if (s.level >= cap)
			throw CapExceededError("Faddeev-Jackiw iteration did not finish within " + std::to_string(cap) + " levels");
		FJLevel rec;
		rec.level = s.level;
		rec.xi = s.labels();
		rec.f = symplectic_matrix(s);
		rec.modes = null_modes(rec.f, ps.mode);
		if (rec.modes.empty()) {
			rec.action = "invertible";
			out.final_matrix = rec.f;
			out.final_inverse = invert_kernel_matrix(rec.f);
			out.levels.push_back(rec);
			break;
		}
		if (gauge_fixed)
			throw SymplecticSingularError("symplectic matrix at level " + std::to_string(s.level) +
					" is still singular after gauge fixing",
				s.level, rec.modes);

		ConstraintSpan span = surface_of(s);
		for (auto& om : fj_constraint_generation(rec.modes, s)) {
			if (span.weakly_zero(om))
				continue;
			rec.constraints.push_back(om);
			span.add(om);
		}
		SymplecticState next = s;
		auto name_for = [&](std::size_t k) {
			return "Omega" + std::to_string(s.level) + (k ? "_" + std::to_string(k + 1) : "");
		};
		if (!rec.constraints.empty()) {
			rec.contraction = no_new_constraints_test(s, rec.constraints);
			if (!rec.contraction->identity)
				for (auto& c : rec.contraction->contractions) {
					Expression om = sign_normalized(c);
					if (om.contains(AtomKind::arbitrary))
						throw UnsupportedError("contraction keeps an arbitrary function: " + om.str());
					if (!span.weakly_zero(om)) {
						rec.constraints.push_back(om);
						span.add(om);
					}
				}
			for (std::size_t k = 0; k < rec.constraints.size(); ++k) {
				next.level = s.level;
				next = augment_lagrangian(next, rec.constraints[k], fresh("rho", rhos), false, name_for(k));
			}
			rec.action = "constraint";
		} else {
			if (gauge.size() - next_gauge < rec.modes.size())
				throw SymplecticSingularError("symplectic matrix at level " + std::to_string(s.level) +
						" is singular without further constraints; " + std::to_string(rec.modes.size()) +
						" gauge condition(s) needed, " + std::to_string(gauge.size() - next_gauge) + " available",
					s.level, rec.modes);
			for (std::size_t k = 0; k < rec.modes.size(); ++k) {
				const Expression& g = gauge[next_gauge++];
				next.level = s.level;
				next = augment_lagrangian(next, g, fresh("eta", etas), true, name_for(k));
				rec.gauges.push_back(next.constraints.back().expr);
			}
			gauge_fixed = true;
			rec.action = "gauge";
		}
		next.level = s.level + 1;
		out.levels.push_back(rec);
		s = next;
		out.states.push_back(s);
	}
	for (; next_gauge < gauge.size(); ++next_gauge)
		out.unused_gauges.push_back(gauge[next_gauge]);
	out.brackets = extract_fj_brackets(s);
	return out;
}

}
