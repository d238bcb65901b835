#include "hamforge/dirac.hpp"

#include <algorithm>

#include "hamforge/errors.hpp"

namespace hamforge {

std::string to_string(Stage s)
{
	switch (s) {
	case Stage::primary: return "primary";
	case Stage::secondary: return "secondary";
	default: return "gauge";
	}
}

std::string to_string(ConstraintClass c)
{
	switch (c) {
	case ConstraintClass::first: return "first";
	case ConstraintClass::second: return "second";
	default: return "undetermined";
	}
}

namespace {

Expression replace_exact(const Expression& e, const std::map<Atom, Expression>& rep)
{
	Expression r;
	for (auto& [m, c] : e.terms()) {
		Expression t(c);
		for (auto& a : m) {
			auto it = rep.find(a);
			t *= it == rep.end() ? Expression::atom(a) : it->second;
		}
		r += t;
	}
	return r;
}

std::vector<Atom> velocities(const PhaseSpace& ps)
{
	std::vector<Atom> v;
	for (auto& p : ps.pairs)
		v.push_back(p.q.differentiated(0));
	return v;
}

void check_first_order(const Expression& L)
{
	for (auto& a : L.atoms())
		if (a.time_order() && (a.time_order() > 1 || a.spatial_order() || a.inv_lap))
			throw UnsupportedError("velocity enters with extra derivatives: " + a.str());
}

KernelMatrix velocity_hessian(const Expression& L, const std::vector<Atom>& vel)
{
	KernelMatrix W(vel.size(), vel.size());
	for (std::size_t a = 0; a < vel.size(); ++a) {
		Expression da = partial(L, vel[a]);
		for (std::size_t b = 0; b < vel.size(); ++b) {
			Expression w = partial(da, vel[b]);
			Coeff c = w.constant_term();
			if (!(w == Expression(c)))
				throw UnsupportedError("field-dependent velocity Hessian entry " + w.str());
			W.at(a, b) = Operator(c);
		}
	}
	for (auto& v : vel) {
		W.row_labels.push_back(v.str());
		W.col_labels.push_back(v.str());
	}
	return W;
}

KernelMatrix submatrix(const KernelMatrix& M, const std::vector<std::size_t>& idx)
{
	KernelMatrix S(idx.size(), idx.size());
	for (std::size_t r = 0; r < idx.size(); ++r)
		for (std::size_t c = 0; c < idx.size(); ++c)
			S.at(r, c) = M.at(idx[r], idx[c]);
	return S;
}

Atom multiplier_for(const Constraint& c, std::size_t index, Mode mode, const char* stem)
{
	// a primary of the form "momentum = 0" borrows the momentum's component
	LinearForm f = linear_form(c.expr);
	if (f.coeffs.size() == 1 && f.constant.is_zero() && f.nonlinear.is_zero()) {
		const Atom& a = f.coeffs.begin()->first;
		if (a.kind == AtomKind::momentum)
			return Atom::multiplier(stem, a.component, mode);
	}
	return Atom::multiplier(std::string(stem) + std::to_string(index + 1), -1, mode);
}

void check_sector_atoms(const Expression& e, const PhaseSpace& ps)
{
	for (auto& a : e.atoms()) {
		if (a.kind != AtomKind::field && a.kind != AtomKind::momentum)
			continue;
		if (!ps.contains(a.bare()))
			throw InconsistencyError("gauge condition " + e.str() + " refers to " + a.bare().str() +
				", which is not a canonical variable of sector " + ps.sector);
		if (a.time_order())
			throw UnsupportedError("gauge condition with a time derivative: " + e.str());
	}
}

}

std::vector<MomentumDefinition> conjugate_momenta(const Expression& L, const PhaseSpace& ps)
{
	check_first_order(L);
	std::vector<MomentumDefinition> out;
	for (auto& p : ps.pairs)
		out.push_back({p.p, partial(L, p.q.differentiated(0))});
	return out;
}

HessianResult hessian_primaries(const Expression& L, const PhaseSpace& ps)
{
	check_first_order(L);
	HessianResult h;
	h.velocities = velocities(ps);
	h.matrix = velocity_hessian(L, h.velocities);
	h.null_vectors = left_null_space(h.matrix);
	h.rank = static_cast<int>(h.velocities.size() - h.null_vectors.size());
	auto moms = conjugate_momenta(L, ps);
	for (std::size_t k = 0; k < h.null_vectors.size(); ++k) {
		Expression phi;
		for (std::size_t a = 0; a < moms.size(); ++a) {
			const Operator& u = h.null_vectors[k][a];
			if (u.is_zero())
				continue;
			if (!u.is_coefficient())
				throw AlgebraError("velocity null vector with differential entries");
			phi += Expression(u.coefficient()) * (Expression::atom(moms[a].momentum) - moms[a].value);
		}
		for (auto& at : phi.atoms())
			if (at.time_order())
				throw InconsistencyError("primary constraint still depends on velocities: " + phi.str());
		Constraint c;
		c.name = "phi" + std::to_string(k + 1);
		c.expr = sign_normalized(phi);
		c.stage = Stage::primary;
		c.provenance = "velocity Hessian null vector " + std::to_string(k + 1);
		h.primaries.push_back(c);
	}
	return h;
}

Expression canonical_hamiltonian(const Expression& L, const PhaseSpace& ps)
{
	check_first_order(L);
	auto vel = velocities(ps);
	KernelMatrix W = velocity_hessian(L, vel);
	std::vector<std::size_t> S;
	for (std::size_t a = 0; a < vel.size(); ++a) {
		auto trial = S;
		trial.push_back(a);
		try {
			invert_kernel_matrix(submatrix(W, trial));
			S = trial;
		} catch (const SingularMatrixError&) {
		}
	}
	std::map<Atom, Expression> zero;
	for (auto& v : vel)
		zero[v] = Expression();
	std::map<Atom, Expression> sol = zero;
	if (!S.empty()) {
		KernelMatrix inv = invert_kernel_matrix(submatrix(W, S));
		std::vector<Expression> rhs;
		for (auto a : S)
			rhs.push_back(Expression::atom(ps.pairs[a].p) - replace_exact(partial(L, vel[a]), zero));
		for (std::size_t i = 0; i < S.size(); ++i) {
			Expression v;
			for (std::size_t j = 0; j < S.size(); ++j)
				if (!inv.at(i, j).is_zero())
					v += Expression(inv.at(i, j).coefficient()) * rhs[j];
			sol[vel[S[i]]] = v;
		}
	}
	Expression H;
	for (auto a : S)
		H += Expression::atom(ps.pairs[a].p) * sol[vel[a]];
	H -= replace_exact(L, sol);
	for (auto& at : H.atoms())
		if (at.time_order() && at.kind != AtomKind::multiplier)
			throw InconsistencyError("velocity " + at.str() + " could not be eliminated");
	return ibp_canonical(H);
}

Expression primary_hamiltonian(const Expression& Hc, const ConstraintSet& primaries, Mode mode)
{
	Expression H = Hc;
	for (std::size_t k = 0; k < primaries.size(); ++k)
		H += Expression::atom(multiplier_for(primaries[k], k, mode, "lambda")) * primaries[k].expr;
	return H;
}

ClosureResult consistency_closure(const Expression& HP, const ConstraintSet& primaries, const PhaseSpace& ps, int cap)
{
	ClosureResult res;
	res.constraints = primaries;
	std::vector<std::size_t> pending;
	for (std::size_t k = 0; k < primaries.size(); ++k)
		pending.push_back(k);
	int secondaries = 0;
	while (!pending.empty()) {
		if (res.rounds == cap)
			throw CapExceededError("consistency closure did not terminate within " + std::to_string(cap) + " rounds");
		++res.rounds;
		std::vector<std::size_t> next;
		for (auto idx : pending) {
			Constraint src = res.constraints[idx];
			Expression dot = poisson_flow(src.expr, HP, ps);
			ConstraintSpan span;
			for (auto& c : res.constraints)
				span.add(c.expr);
			if (span.weakly_zero(dot))
				continue;
			if (dot.contains(AtomKind::multiplier)) {
				res.multiplier_conditions.push_back("{" + src.name + ", H_P} = " + dot.str() + " = 0");
				continue;
			}
			Constraint c;
			c.name = "psi" + std::to_string(++secondaries);
			c.expr = sign_normalized(dot);
			c.stage = Stage::secondary;
			c.provenance = src.name;
			c.generation = src.generation + 1;
			res.constraints.push_back(c);
			next.push_back(res.constraints.size() - 1);
		}
		if (!next.empty())
			++res.productive_rounds;
		pending = next;
	}
	return res;
}

ConstraintSet classify_constraints(ConstraintSet set, const PhaseSpace& ps)
{
	for (auto& a : set) {
		bool first = true;
		for (auto& b : set)
			if (!poisson_kernel(a.expr, b.expr, ps).is_zero()) {
				first = false;
				break;
			}
		a.cls = first ? ConstraintClass::first : ConstraintClass::second;
	}
	return set;
}

int count_dof(int phase_dim, int n_first, int n_second)
{
	int free = phase_dim - 2 * n_first - n_second;
	if (phase_dim < 0 || n_first < 0 || n_second < 0 || free < 0 || free % 2)
		throw DofError("inconsistent counting: " + std::to_string(phase_dim) + " variables, " + std::to_string(n_first) +
			" first-class and " + std::to_string(n_second) + " second-class constraints");
	return free / 2;
}

DofCount count_dof(const ConstraintSet& set, const PhaseSpace& ps)
{
	DofCount d;
	d.phase_dim = ps.dimension();
	for (auto& c : set) {
		if (c.cls == ConstraintClass::first)
			++d.first_class;
		else if (c.cls == ConstraintClass::second)
			++d.second_class;
		else
			throw DofError("constraint " + c.name + " has not been classified");
	}
	d.dof = count_dof(d.phase_dim, d.first_class, d.second_class);
	return d;
}

GaugeGenerator gauge_generator(const ConstraintSet& first_class, const Expression& Hc, const PhaseSpace& ps)
{
	ConstraintSpan all, primaries;
	for (auto& c : first_class) {
		if (c.cls != ConstraintClass::first)
			throw InconsistencyError("gauge generator built from non-first-class constraint " + c.name);
		all.add(c.expr);
		if (c.stage == Stage::primary)
			primaries.add(c.expr);
	}
	GaugeGenerator gen;
	std::size_t chains = 0;
	for (auto& c : first_class)
		chains += c.stage == Stage::primary;
	std::size_t chain = 0;
	for (auto& c : first_class) {
		if (c.stage != Stage::primary)
			continue;
		// G_N = primary, G_{k-1} = -{G_k, H}, stopping once the bracket is a primary combination
		std::vector<Expression> G{c.expr};
		for (int step = 0;; ++step) {
			if (step == 10)
				throw CapExceededError("gauge generator chain for " + c.name + " does not close");
			Expression next = -poisson_flow(G.back(), Hc, ps);
			if (primaries.weakly_zero(next))
				break;
			if (!all.weakly_zero(next))
				throw InconsistencyError("gauge generator chain of " + c.name + " leaves the first-class set");
			G.push_back(next);
		}
		std::string pname = chains == 1 ? "epsilon" : "epsilon" + std::to_string(++chain);
		Atom eps = Atom::gauge_parameter(pname, ps.mode);
		gen.parameters.push_back(eps);
		// G holds G_N, ..., G_0; G_k carries the k-th time derivative of the parameter
		std::size_t N = G.size() - 1;
		for (std::size_t j = 0; j < G.size(); ++j) {
			int order = static_cast<int>(N - j);
			Atom e = order ? eps.differentiated(0, order) : eps;
			gen.density -= Expression::atom(e) * G[j];
		}
	}
	for (auto& p : ps.pairs) {
		Expression dq = functional_derivative(gen.density, p.p);
		Expression dp = -functional_derivative(gen.density, p.q);
		if (!dq.is_zero())
			gen.transformations[p.q] = dq;
		if (!dp.is_zero())
			gen.transformations[p.p] = dp;
	}
	return gen;
}

Expression extended_hamiltonian(const Expression& Hc, const ConstraintSet& set, Mode mode)
{
	Expression H = Hc;
	std::size_t k = 0;
	for (auto& c : set) {
		if (c.cls != ConstraintClass::first)
			continue;
		const char* stem = c.stage == Stage::primary ? "lambda" : "beta";
		H += Expression::atom(multiplier_for(c, k++, mode, stem)) * c.expr;
	}
	return H;
}

GaugeFixing impose_gauge(const ConstraintSet& set, const std::vector<Expression>& conditions, const PhaseSpace& ps)
{
	std::vector<Constraint> gauges;
	for (std::size_t k = 0; k < conditions.size(); ++k) {
		check_sector_atoms(conditions[k], ps);
		Constraint g;
		// kept as written so the user's index placement fixes the sign
		g.expr = conditions[k];
		g.stage = Stage::gauge;
		g.provenance = "gauge condition " + std::to_string(k + 1);
		gauges.push_back(g);
	}
	GaugeFixing gf;
	if (!gauges.empty())
		gf.chi.push_back(gauges[0]);
	for (auto& c : set)
		if (c.stage != Stage::primary)
			gf.chi.push_back(c);
	for (auto& c : set)
		if (c.stage == Stage::primary)
			gf.chi.push_back(c);
	for (std::size_t k = 1; k < gauges.size(); ++k)
		gf.chi.push_back(gauges[k]);
	std::size_t n = gf.chi.size();
	gf.C = KernelMatrix(n, n);
	for (std::size_t a = 0; a < n; ++a) {
		gf.chi[a].cls = ConstraintClass::second;
		if (gf.chi[a].name.empty() || gf.chi[a].stage == Stage::gauge)
			gf.chi[a].name = "chi" + std::to_string(a + 1);
		for (std::size_t b = 0; b < n; ++b)
			gf.C.at(a, b) = poisson_kernel(gf.chi[a].expr, gf.chi[b].expr, ps);
	}
	for (auto& c : gf.chi) {
		gf.C.row_labels.push_back(c.name);
		gf.C.col_labels.push_back(c.name);
	}
	try {
		gf.C_inverse = invert_kernel_matrix(gf.C);
	} catch (const SingularMatrixError& e) {
		std::string msg = "constraint matrix is singular after gauge fixing";
		if (!e.left_null_space.empty())
			msg += "; null vector " + vector_str(e.left_null_space[0]);
		throw IncompleteGaugeError(msg, e.left_null_space);
	}
	gf.C_inverse.row_labels = gf.C.row_labels;
	gf.C_inverse.col_labels = gf.C.col_labels;
	return gf;
}

Operator dirac_bracket(const Expression& a, const Expression& b, const GaugeFixing& gf, const PhaseSpace& ps)
{
	Operator r = poisson_kernel(a, b, ps);
	std::size_t n = gf.chi.size();
	std::vector<Operator> left(n), right(n);
	for (std::size_t k = 0; k < n; ++k) {
		left[k] = poisson_kernel(a, gf.chi[k].expr, ps);
		right[k] = poisson_kernel(gf.chi[k].expr, b, ps);
	}
	for (std::size_t i = 0; i < n; ++i) {
		if (left[i].is_zero())
			continue;
		for (std::size_t j = 0; j < n; ++j)
			if (!right[j].is_zero() && !gf.C_inverse.at(i, j).is_zero())
				r -= left[i] * gf.C_inverse.at(i, j) * right[j];
	}
	return r;
}

BracketTable dirac_bracket_table(const GaugeFixing& gf, const PhaseSpace& ps)
{
	BracketTable t;
	t.kind = "D";
	t.atoms = ps.atoms();
	for (auto& a : t.atoms)
		for (auto& b : t.atoms)
			t.set(a, b, dirac_bracket(Expression::atom(a), Expression::atom(b), gf, ps));
	return t;
}

UnitaryReduction unitary_gauge_reduce(const Expression& L, const GaugeGenerator& gen, const Atom& goldstone,
	const PhaseSpace& ps)
{
	if (gen.parameters.size() != 1)
		throw UnsupportedError("unitary gauge needs exactly one gauge parameter");
	const Atom& eps = gen.parameters[0];
	auto it = gen.transformations.find(goldstone);
	if (it == gen.transformations.end())
		throw InconsistencyError(goldstone.str() + " does not transform");
	Expression shift = it->second;
	Coeff c = partial(shift, eps).constant_term();
	if (!(shift == Expression(c) * Expression::atom(eps)) || !c.is_unit())
		throw InconsistencyError(goldstone.str() + " does not shift algebraically under the gauge parameter");
	UnitaryReduction u;
	u.goldstone = goldstone;
	u.parameter = -Expression(c.inverse()) * Expression::atom(goldstone);

	// the finite transformation with this parameter sends the goldstone field to zero
	std::map<Atom, Expression> moved;
	for (auto& q : ps.configuration()) {
		auto t = gen.transformations.find(q);
		Expression dq = t == gen.transformations.end() ? Expression() : substitute(t->second, eps, u.parameter);
		moved[q] = Expression::atom(q) + dq;
	}
	if (!moved[goldstone].is_zero())
		throw InconsistencyError("chosen parameter leaves " + goldstone.str() + " = " + moved[goldstone].str());
	// invariance of the density makes L(q) = L(q') with the goldstone component of q' zero
	std::map<Atom, Expression> general;
	for (auto& q : ps.configuration()) {
		auto t = gen.transformations.find(q);
		general[q] = Expression::atom(q) + (t == gen.transformations.end() ? Expression() : t->second);
	}
	if (!equivalent_densities(substitute(L, general), L))
		throw InconsistencyError("density is not invariant under the gauge transformation");
	u.reduced = substitute(L, goldstone, Expression());

	for (auto& q : ps.configuration()) {
		if (q == goldstone || (q.component > 0))
			continue;
		Coeff k;
		auto term = u.reduced.terms().find(Monomial{q, q});
		if (term != u.reduced.terms().end())
			k = term->second;
		// A_mu A^mu enters with the coefficient of A_0 A_0; a scalar mass term as -M phi phi
		std::string label = q.name + mode_suffix(q.mode);
		u.spectrum.push_back({label, q.component == 0 ? k : -k});
	}
	return u;
}

DiracAnalysis analyze_dirac(const Expression& L, const PhaseSpace& ps, const std::optional<std::vector<Expression>>& gauge)
{
	DiracAnalysis d;
	d.phase = ps;
	d.lagrangian = L;
	d.momenta = conjugate_momenta(L, ps);
	d.hessian = hessian_primaries(L, ps);
	d.canonical_hamiltonian = canonical_hamiltonian(L, ps);
	d.primary_hamiltonian = primary_hamiltonian(d.canonical_hamiltonian, d.hessian.primaries, ps.mode);
	d.closure = consistency_closure(d.primary_hamiltonian, d.hessian.primaries, ps);
	d.constraints = classify_constraints(d.closure.constraints, ps);
	d.dof = count_dof(d.constraints, ps);
	ConstraintSet first;
	for (auto& c : d.constraints)
		if (c.cls == ConstraintClass::first)
			first.push_back(c);
	d.extended_hamiltonian = extended_hamiltonian(d.canonical_hamiltonian, d.constraints, ps.mode);
	if (!first.empty())
		d.generator = gauge_generator(first, d.canonical_hamiltonian, ps);
	bool needs_gauge = !first.empty();
	if (gauge || (!needs_gauge && !d.constraints.empty())) {
		d.gauge = impose_gauge(d.constraints, gauge ? *gauge : std::vector<Expression>{}, ps);
		d.brackets = dirac_bracket_table(*d.gauge, ps);
	}
	return d;
}

}
