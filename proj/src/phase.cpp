#include "hamforge/phase.hpp"

#include <algorithm>

#include "hamforge/errors.hpp"

namespace hamforge {

std::vector<Atom> PhaseSpace::configuration() const
{
	std::vector<Atom> r;
	for (auto& p : pairs)
		r.push_back(p.q);
	return r;
}

std::vector<Atom> PhaseSpace::momenta() const
{
	std::vector<Atom> r;
	for (auto& p : pairs)
		r.push_back(p.p);
	return r;
}

std::vector<Atom> PhaseSpace::atoms() const
{
	std::vector<Atom> r;
	for (auto& p : pairs) {
		r.push_back(p.q);
		r.push_back(p.p);
	}
	return r;
}

bool PhaseSpace::contains(const Atom& bare) const { return pair_of(bare) != nullptr; }

const CanonicalPair* PhaseSpace::pair_of(const Atom& bare) const
{
	for (auto& p : pairs)
		if (p.q == bare || p.p == bare)
			return &p;
	return nullptr;
}

std::string sector_name(Mode mode)
{
	switch (mode) {
	case Mode::zero: return "zero_mode";
	case Mode::kk: return "kk_mode";
	default: return "main";
	}
}

PhaseSpace make_phase_space(const TheorySpec& spec, Mode mode)
{
	if (spec.compact && mode == Mode::none)
		throw UnsupportedError("a compactified theory is analysed per mode sector");
	if (!spec.compact && mode != Mode::none)
		throw UnsupportedError("mode sectors require a compact dimension");
	if (!spec.compact && spec.dimension != 4)
		throw UnsupportedError("only four-dimensional or compactified theories have a phase space here");
	PhaseSpace ps;
	ps.mode = mode;
	ps.sector = sector_name(mode);
	for (auto& f : spec.fields) {
		std::vector<int> comps = f.rank == Rank::vector ? spec.components() : std::vector<int>{-1};
		std::string mom = spec.momentum_symbol(f.name);
		for (int c : comps) {
			if (mode == Mode::zero) {
				auto it = f.parity.find(c);
				if (it == f.parity.end() || it->second != Parity::even)
					continue;
			}
			ps.pairs.push_back({Atom::field(f.name, c, mode), Atom::momentum(mom, c, mode)});
		}
	}
	return ps;
}

namespace {

bool dynamical(const Atom& a) { return a.kind == AtomKind::field || a.kind == AtomKind::momentum; }

LinearForm checked_linear(const Expression& e)
{
	LinearForm f = linear_form(e);
	if (!f.nonlinear.is_zero())
		throw UnsupportedError("bracket kernels need linear expressions: " + e.str());
	for (auto& [a, op] : f.coeffs)
		if (a.time_order())
			throw UnsupportedError("time derivative in a phase-space expression: " + e.str());
	return f;
}

Operator coeff_of(const LinearForm& f, const Atom& a)
{
	auto it = f.coeffs.find(a);
	return it == f.coeffs.end() ? Operator() : it->second;
}

}

Operator poisson_kernel(const Expression& a, const Expression& b, const PhaseSpace& ps)
{
	LinearForm fa = checked_linear(a), fb = checked_linear(b);
	Operator k;
	for (auto& p : ps.pairs) {
		Operator aq = coeff_of(fa, p.q), ap = coeff_of(fa, p.p);
		Operator bq = coeff_of(fb, p.q), bp = coeff_of(fb, p.p);
		// derivatives acting on y turn into adjoints acting on x
		k += aq * bp.adjoint() - ap * bq.adjoint();
	}
	return k;
}

Expression poisson_flow(const Expression& a, const Expression& h, const PhaseSpace& ps)
{
	std::map<Atom, Expression> velocity;
	for (auto& p : ps.pairs) {
		velocity[p.q] = functional_derivative(h, p.p);
		velocity[p.p] = -functional_derivative(h, p.q);
	}
	Expression r;
	for (auto& [m, c] : a.terms()) {
		for (std::size_t k = 0; k < m.size(); ++k) {
			const Atom& at = m[k];
			if (!dynamical(at))
				continue;
			if (at.time_order())
				throw UnsupportedError("time derivative in a phase-space expression: " + a.str());
			auto it = velocity.find(at.base());
			if (it == velocity.end())
				continue;
			Monomial rest = m;
			rest.erase(rest.begin() + static_cast<long>(k));
			r += Expression::term(c, rest) * apply(atom_operator(at), it->second);
		}
	}
	return r;
}

Expression poisson_global(const Expression& f, const Expression& g, const PhaseSpace& ps)
{
	Expression r;
	for (auto& p : ps.pairs)
		r += functional_derivative(f, p.q) * functional_derivative(g, p.p) -
			functional_derivative(f, p.p) * functional_derivative(g, p.q);
	return r;
}

bool equivalent_densities(const Expression& a, const Expression& b)
{
	Expression d = a - b;
	if (!d.constant_term().is_zero())
		return false;
	std::set<Atom> targets;
	for (auto& at : d.atoms())
		targets.insert(at.base());
	for (auto& t : targets)
		if (!functional_derivative(d, t).is_zero())
			return false;
	return true;
}

bool ConstraintSpan::weakly_zero(const Expression& e) const
{
	if (e.is_zero())
		return true;
	LinearForm fe = linear_form(e);
	if (!fe.nonlinear.is_zero())
		return false;
	std::vector<LinearForm> forms;
	for (auto& r : rows_) {
		LinearForm f = linear_form(r);
		if (!f.nonlinear.is_zero())
			throw UnsupportedError("weak equality against a nonlinear constraint: " + r.str());
		forms.push_back(f);
	}
	forms.push_back(fe);
	std::vector<Atom> cols;
	for (auto& f : forms)
		for (auto& [a, op] : f.coeffs)
			if (std::find(cols.begin(), cols.end(), a) == cols.end())
				cols.push_back(a);
	std::sort(cols.begin(), cols.end());
	KernelMatrix M(forms.size(), cols.size() + 1);
	for (std::size_t r = 0; r < forms.size(); ++r) {
		for (std::size_t c = 0; c < cols.size(); ++c)
			M.at(r, c) = coeff_of(forms[r], cols[c]);
		M.at(r, cols.size()) = Operator(forms[r].constant);
	}
	for (auto& u : left_null_space(M))
		if (!u.back().is_zero())
			return true;
	return false;
}

Operator BracketTable::at(const Atom& a, const Atom& b) const
{
	auto it = entries.find({a, b});
	return it == entries.end() ? Operator() : it->second;
}

void BracketTable::set(const Atom& a, const Atom& b, const Operator& op)
{
	if (op.is_zero())
		entries.erase({a, b});
	else
		entries[{a, b}] = op;
}

std::vector<std::pair<std::pair<Atom, Atom>, Operator>> BracketTable::nonzero() const
{
	std::vector<std::pair<std::pair<Atom, Atom>, Operator>> r;
	for (auto& a : atoms)
		for (auto& b : atoms) {
			Operator op = at(a, b);
			if (!op.is_zero())
				r.push_back({{a, b}, op});
		}
	return r;
}

std::string BracketTable::str() const
{
	std::string s;
	for (auto& [ab, op] : nonzero())
		s += "{" + ab.first.str() + ", " + ab.second.str() + "}" + (kind.empty() ? "" : "_" + kind) + " = " +
			op.str() + "\n";
	return s;
}

BracketTable fundamental_brackets(const PhaseSpace& ps)
{
	BracketTable t;
	t.kind = "poisson";
	t.atoms = ps.atoms();
	for (auto& a : t.atoms)
		for (auto& b : t.atoms)
			t.set(a, b, poisson_kernel(Expression::atom(a), Expression::atom(b), ps));
	return t;
}

BracketComparison compare_brackets(const BracketTable& left, const BracketTable& right)
{
	BracketComparison cmp;
	std::vector<Atom> common;
	for (auto& a : left.atoms)
		if (std::find(right.atoms.begin(), right.atoms.end(), a) != right.atoms.end())
			common.push_back(a);
	for (auto& a : common)
		for (auto& b : common) {
			Operator l = left.at(a, b), r = right.at(a, b);
			++cmp.compared;
			if (l == r)
				++cmp.matches;
			else
				cmp.mismatches.push_back({a, b, l, r});
		}
	return cmp;
}

std::string BracketComparison::str() const
{
	std::string s = std::to_string(matches) + "/" + std::to_string(compared) + " entries agree\n";
	for (auto& m : mismatches)
		s += "  {" + m.a.str() + ", " + m.b.str() + "}: " + m.left.str() + " vs " + m.right.str() + "\n";
	return s;
}

}
