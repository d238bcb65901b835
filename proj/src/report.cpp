#include "hamforge/report.hpp"

#include <cstdio>
#include <sstream>

namespace hamforge {

using nlohmann::ordered_json;

std::map<std::string, std::string> parse_gauge_option(const std::string& text)
{
	std::map<std::string, std::string> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ',')) {
		if (item.empty())
			continue;
		auto eq = item.find('=');
		if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
			throw UsageError("gauge option expects sector=name, got '" + item + "'");
		std::string sector = item.substr(0, eq);
		if (out.count(sector))
			throw UsageError("gauge for sector " + sector + " given twice");
		out[sector] = item.substr(eq + 1);
	}
	return out;
}

std::optional<int> parse_modes_option(const std::string& text)
{
	if (text == "symbolic")
		return std::nullopt;
	if (text.rfind("k=", 0) == 0) {
		std::string v = text.substr(2);
		if (!v.empty() && v.find_first_not_of("0123456789") == std::string::npos && v.size() < 7) {
			int k = std::stoi(v);
			if (k >= 1)
				return k;
		}
	}
	throw UsageError("modes option expects 'symbolic' or 'k=<positive int>', got '" + text + "'");
}

bool LatticeRecord::ok() const
{
	for (auto& [name, c] : inverses)
		if (!c.ok())
			return false;
	for (auto& [name, c] : brackets)
		if (!(c.antisymmetry < tolerance) || !(c.jacobi < tolerance))
			return false;
	return true;
}

namespace {

// linear polynomial a*k + b rendered compactly
std::string linear_in_k(int a, int b)
{
	std::string s;
	if (a == 1)
		s = "k";
	else if (a == -1)
		s = "-k";
	else if (a != 0)
		s = std::to_string(a) + "k";
	if (b != 0 || s.empty())
		s += (b < 0 ? "-" : (s.empty() ? "" : "+")) + std::to_string(b < 0 ? -b : b);
	return s;
}

std::vector<std::map<std::string, double>> parameter_points(const TheorySpec& spec, bool kk)
{
	std::map<std::string, double> a, b;
	const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
	std::size_t i = 0;
	for (auto& p : spec.params) {
		a[p] = 1;
		b[p] = primes[i++ % 8];
	}
	if (kk) {
		a["n"] = 1;
		b["n"] = 2;
	}
	return {a, b};
}

std::optional<Atom> goldstone_for(const TheorySpec& spec, const SectorReport& s)
{
	if (s.phase.mode != Mode::kk)
		return std::nullopt;
	for (auto& f : spec.fields)
		if (f.rank == Rank::vector) {
			Atom a = Atom::field(f.name, 5, Mode::kk);
			if (s.phase.contains(a))
				return a;
		}
	return std::nullopt;
}

const GaugeSet* resolve_gauge(const TheorySpec& spec, const std::string& name)
{
	const GaugeSet* g = spec.gauge_set(name);
	if (!g)
		throw UsageError("theory " + spec.name + " has no gauge set '" + name + "'");
	return g;
}

void run_sector(const TheorySpec& spec, const AnalysisOptions& opts, SectorReport& s, AnalysisReport& rep)
{
	bool dirac = opts.method != "fj", fj = opts.method != "dirac";
	std::optional<std::vector<Expression>> conds;
	if (!s.gauge_set.empty())
		conds = s.gauge_conditions;
	if (dirac) {
		try {
			s.dirac = analyze_dirac(s.lagrangian, s.phase, conds);
		} catch (const IncompleteGaugeError& e) {
			s.dirac_error = e.what();
			rep.failures.push_back(s.name + ": Dirac gauge fixing incomplete: " + e.what());
		}
		if (s.dirac && s.dirac->generator) {
			if (auto g = goldstone_for(spec, s)) {
				try {
					s.unitary = unitary_gauge_reduce(s.lagrangian, *s.dirac->generator, *g, s.phase);
				} catch (const Error& e) {
					rep.warnings.push_back(s.name + ": unitary gauge not reached: " + e.what());
				}
			}
		}
	}
	if (fj) {
		try {
			s.fj = analyze_fj(s.lagrangian, s.phase, s.gauge_conditions);
		} catch (const SymplecticSingularError& e) {
			s.fj_error = e.what();
			s.fj_error_level = e.level;
			s.fj_error_modes = e.modes;
			rep.failures.push_back(s.name + ": " + e.what());
		}
	}
	if (s.dirac && s.dirac->brackets && s.fj) {
		s.comparison = compare_brackets(*s.dirac->brackets, s.fj->brackets);
		if (!s.comparison->equal())
			rep.failures.push_back(s.name + ": Dirac and Faddeev-Jackiw brackets differ in " +
				std::to_string(s.comparison->mismatches.size()) + " entries");
	}
	if (opts.lattice_N) {
		for (auto& p : parameter_points(spec, s.phase.mode == Mode::kk)) {
			LatticeRecord rec;
			rec.config.N = *opts.lattice_N;
			rec.config.params = p;
			rec.config.validate();
			if (s.dirac && s.dirac->gauge)
				rec.inverses.push_back(
					{"dirac C", verify_inverse(s.dirac->gauge->C, s.dirac->gauge->C_inverse, rec.config, rec.tolerance)});
			if (s.fj)
				rec.inverses.push_back(
					{"fj f", verify_inverse(s.fj->final_matrix, s.fj->final_inverse, rec.config, rec.tolerance)});
			if (s.dirac && s.dirac->brackets)
				rec.brackets.push_back({"dirac", verify_bracket_properties(*s.dirac->brackets, rec.config)});
			if (s.fj)
				rec.brackets.push_back({"fj", verify_bracket_properties(s.fj->brackets, rec.config)});
			if (!rec.ok())
				rep.failures.push_back(s.name + ": lattice residual exceeded at " + rec.config.str());
			s.lattice.push_back(rec);
		}
	}
}

void annotate(const TheorySpec& spec, AnalysisReport& rep)
{
	const SectorReport *zero = nullptr, *kk = nullptr;
	for (auto& s : rep.sectors) {
		if (s.phase.mode == Mode::zero)
			zero = &s;
		if (s.phase.mode == Mode::kk)
			kk = &s;
	}
	if (!spec.compact) {
		if (!rep.sectors.empty() && rep.sectors[0].dirac)
			rep.dof = std::to_string(rep.sectors[0].dirac->dof.dof);
		return;
	}
	if (!zero || !zero->dirac)
		return;
	int d0 = zero->dirac->dof.dof, r0 = zero->dirac->hessian.rank;
	if (rep.options.k && *rep.options.k == 1) {
		rep.dof = std::to_string(d0);
		return;
	}
	if (!kk || !kk->dirac)
		return;
	int dn = kk->dirac->dof.dof, rn = kk->dirac->hessian.rank;
	if (rep.options.k) {
		int k = *rep.options.k;
		rep.dof = std::to_string(d0 + (k - 1) * dn);
	} else {
		rep.dof = linear_in_k(dn, d0 - dn);
	}
	std::string rank = linear_in_k(rn, r0 - rn);
	if (rank != "5k-6")
		rep.warnings.push_back("velocity Hessian rank over k modes is " + rank + " (" + std::to_string(r0) +
			" for the zero mode, " + std::to_string(rn) + " per excited mode), not 5k-6");
	if (auto g = goldstone_for(spec, *kk)) {
		auto& terms = kk->dirac->canonical_hamiltonian.terms();
		auto it = terms.find(Monomial{*g, *g});
		if (it != terms.end()) {
			const Coeff& c = it->second;
			rep.warnings.push_back(g->str() + " mass term enters H_c with coefficient " + c.str() + " (sign " +
				(c.leading_sign() > 0 ? "+" : "-") + "); reported as an annotation, not checked");
		}
	}
}

}

AnalysisReport analyze_theory(const TheorySpec& spec, const AnalysisOptions& opts, const std::string& input_name)
{
	if (opts.method != "dirac" && opts.method != "fj" && opts.method != "both")
		throw UsageError("method must be dirac, fj or both, got '" + opts.method + "'");
	if (opts.lattice_N) {
		LatticeConfig probe;
		probe.N = *opts.lattice_N;
		try {
			probe.validate();
		} catch (const Error& e) {
			throw UsageError(e.what());
		}
	}
	AnalysisReport rep;
	rep.theory = spec.name;
	rep.input = input_name;
	rep.options = opts;

	std::vector<std::pair<Mode, Expression>> sectors;
	if (spec.compact) {
		rep.expansion = expand_on_orbifold(spec, opts.k);
		rep.density4d = integrate_extra_dimension(spec, *rep.expansion);
		rep.decoupled = modes_decouple(*rep.density4d);
		sectors.push_back({Mode::zero, sector_part(*rep.density4d, Mode::zero)});
		if (rep.expansion->has_kk_modes())
			sectors.push_back({Mode::kk, sector_part(*rep.density4d, Mode::kk)});
	} else {
		if (opts.k)
			throw UsageError("--modes needs a compactified theory");
		sectors.push_back({Mode::none, spec.lagrangian});
	}
	for (auto& [sector, set] : opts.gauge) {
		bool known = false;
		for (auto& [m, L] : sectors)
			known = known || sector_name(m) == sector;
		if (!known)
			throw UsageError("no sector named '" + sector + "' in this analysis");
		resolve_gauge(spec, set);
	}
	for (auto& [m, L] : sectors) {
		SectorReport s;
		s.name = sector_name(m);
		s.phase = make_phase_space(spec, m);
		s.lagrangian = L;
		auto it = opts.gauge.find(s.name);
		if (it != opts.gauge.end()) {
			s.gauge_set = it->second;
			s.gauge_conditions = resolve_gauge(spec, it->second)->conditions;
		}
		run_sector(spec, opts, s, rep);
		rep.sectors.push_back(std::move(s));
	}
	annotate(spec, rep);
	bool mismatch = false, lattice = false;
	for (auto& s : rep.sectors) {
		mismatch = mismatch || !s.dirac_error.empty() || !s.fj_error.empty() ||
			(s.comparison && !s.comparison->equal());
		for (auto& l : s.lattice)
			lattice = lattice || !l.ok();
	}
	rep.exit_code = mismatch ? exit_mismatch : lattice ? exit_lattice : exit_ok;
	return rep;
}

ordered_json matrix_json(const KernelMatrix& m)
{
	ordered_json j;
	j["rows"] = m.row_labels;
	j["cols"] = m.col_labels;
	ordered_json e = ordered_json::array();
	for (std::size_t r = 0; r < m.rows(); ++r) {
		ordered_json row = ordered_json::array();
		for (std::size_t c = 0; c < m.cols(); ++c)
			row.push_back(m.at(r, c).str());
		e.push_back(row);
	}
	j["entries"] = e;
	return j;
}

ordered_json brackets_json(const BracketTable& t)
{
	ordered_json j;
	j["kind"] = t.kind;
	ordered_json atoms = ordered_json::array();
	for (auto& a : t.atoms)
		atoms.push_back(a.str());
	j["atoms"] = atoms;
	ordered_json e = ordered_json::array();
	for (auto& [ab, op] : t.nonzero())
		e.push_back({{"a", ab.first.str()}, {"b", ab.second.str()}, {"value", op.str()}});
	j["entries"] = e;
	return j;
}

namespace {

ordered_json strings(const std::vector<Expression>& v)
{
	ordered_json j = ordered_json::array();
	for (auto& e : v)
		j.push_back(e.str());
	return j;
}

ordered_json atoms_json(const std::vector<Atom>& v)
{
	ordered_json j = ordered_json::array();
	for (auto& a : v)
		j.push_back(a.str());
	return j;
}

ordered_json modes_json(const std::vector<NullMode>& modes)
{
	ordered_json j = ordered_json::array();
	for (auto& m : modes)
		j.push_back({{"parameter", m.omega.str()}, {"components", strings(m.display)}});
	return j;
}

ordered_json dirac_json(const DiracAnalysis& d, const std::optional<UnitaryReduction>& u)
{
	ordered_json j;
	ordered_json moms = ordered_json::array();
	for (auto& m : d.momenta)
		moms.push_back({{"momentum", m.momentum.str()}, {"value", m.value.str()}});
	j["momenta"] = moms;
	j["hessian"] = {{"velocities", atoms_json(d.hessian.velocities)}, {"rank", d.hessian.rank},
		{"matrix", matrix_json(d.hessian.matrix)}};
	j["canonical_hamiltonian"] = d.canonical_hamiltonian.str();
	j["primary_hamiltonian"] = d.primary_hamiltonian.str();
	j["extended_hamiltonian"] = d.extended_hamiltonian.str();
	ordered_json cs = ordered_json::array();
	for (auto& c : d.constraints)
		cs.push_back({{"name", c.name}, {"expression", c.expr.str()}, {"stage", to_string(c.stage)},
			{"class", to_string(c.cls)}, {"generation", c.generation}, {"provenance", c.provenance}});
	j["constraints"] = cs;
	j["multiplier_conditions"] = d.closure.multiplier_conditions;
	j["consistency"] = {{"rounds", d.closure.rounds}, {"productive_rounds", d.closure.productive_rounds}};
	j["dof"] = {{"phase_dimension", d.dof.phase_dim}, {"first_class", d.dof.first_class},
		{"second_class", d.dof.second_class}, {"dof", d.dof.dof}};
	if (d.generator) {
		ordered_json tr = ordered_json::array();
		for (auto& [a, v] : d.generator->transformations)
			tr.push_back({{"field", a.str()}, {"variation", v.str()}});
		j["gauge_generator"] = {{"density", d.generator->density.str()},
			{"parameters", atoms_json(d.generator->parameters)}, {"transformations", tr}};
	} else {
		j["gauge_generator"] = nullptr;
	}
	if (d.gauge) {
		ordered_json chi = ordered_json::array();
		for (auto& c : d.gauge->chi)
			chi.push_back({{"name", c.name}, {"expression", c.expr.str()}});
		j["gauge_fixing"] = {{"second_class", chi}, {"C", matrix_json(d.gauge->C)},
			{"C_inverse", matrix_json(d.gauge->C_inverse)}};
	} else {
		j["gauge_fixing"] = nullptr;
	}
	j["brackets"] = d.brackets ? brackets_json(*d.brackets) : ordered_json(nullptr);
	if (u) {
		ordered_json sp = ordered_json::array();
		for (auto& e : u->spectrum)
			sp.push_back({{"field", e.field}, {"mass_coefficient", e.coefficient.str()}});
		j["unitary_gauge"] = {{"goldstone", u->goldstone.str()}, {"parameter", u->parameter.str()},
			{"reduced_lagrangian", u->reduced.str()}, {"spectrum", sp}};
	} else {
		j["unitary_gauge"] = nullptr;
	}
	return j;
}

ordered_json fj_json(const FJAnalysis& f)
{
	ordered_json j;
	ordered_json levels = ordered_json::array();
	for (std::size_t i = 0; i < f.levels.size(); ++i) {
		auto& l = f.levels[i];
		ordered_json lj;
		lj["level"] = l.level;
		lj["action"] = l.action;
		lj["variables"] = l.xi;
		ordered_json forms = ordered_json::array();
		for (auto& a : f.states[i].one_forms)
			forms.push_back(a.str());
		lj["one_forms"] = forms;
		lj["potential"] = f.states[i].potential.str();
		lj["matrix"] = matrix_json(l.f);
		lj["null_modes"] = modes_json(l.modes);
		lj["constraints"] = strings(l.constraints);
		if (l.contraction)
			lj["contraction_test"] = {{"identity", l.contraction->identity},
				{"modes", modes_json(l.contraction->modes)}, {"contractions", strings(l.contraction->contractions)}};
		else
			lj["contraction_test"] = nullptr;
		lj["gauge_conditions"] = strings(l.gauges);
		levels.push_back(lj);
	}
	j["levels"] = levels;
	ordered_json cs = ordered_json::array();
	for (auto& c : f.final_state().constraints)
		cs.push_back({{"name", c.name}, {"expression", c.expr.str()}, {"gauge", c.gauge},
			{"multiplier", c.multiplier.str()}, {"level", c.level}});
	j["constraints"] = cs;
	j["unused_gauge_conditions"] = strings(f.unused_gauges);
	j["final_matrix"] = matrix_json(f.final_matrix);
	j["final_inverse"] = matrix_json(f.final_inverse);
	j["brackets"] = brackets_json(f.brackets);
	return j;
}

std::string fmt(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3e", v);
	return buf;
}

}

ordered_json report_json(const AnalysisReport& r)
{
	ordered_json j;
	j["theory"] = r.theory;
	j["input"] = r.input;
	ordered_json gauge = ordered_json::object();
	for (auto& [k, v] : r.options.gauge)
		gauge[k] = v;
	j["options"] = {{"method", r.options.method},
		{"modes", r.options.k ? "k=" + std::to_string(*r.options.k) : std::string("symbolic")}, {"gauge", gauge},
		{"verify_lattice", r.options.lattice_N ? ordered_json(*r.options.lattice_N) : ordered_json(nullptr)}};
	if (r.expansion) {
		ordered_json comps = ordered_json::array();
		for (auto& c : r.expansion->components)
			comps.push_back(c.str(r.expansion->radius, r.expansion->coordinate));
		j["compactification"] = {{"coordinate", r.expansion->coordinate}, {"radius", r.expansion->radius},
			{"expansions", comps}, {"density", r.density4d->str()}, {"modes_decouple", r.decoupled}};
	} else {
		j["compactification"] = nullptr;
	}
	ordered_json sectors = ordered_json::array();
	for (auto& s : r.sectors) {
		ordered_json sj;
		sj["name"] = s.name;
		sj["phase_space"] = atoms_json(s.phase.atoms());
		sj["lagrangian"] = s.lagrangian.str();
		sj["gauge_set"] = s.gauge_set.empty() ? ordered_json(nullptr) : ordered_json(s.gauge_set);
		sj["gauge_conditions"] = strings(s.gauge_conditions);
		if (s.dirac)
			sj["dirac"] = dirac_json(*s.dirac, s.unitary);
		else if (!s.dirac_error.empty())
			sj["dirac"] = {{"error", s.dirac_error}};
		else
			sj["dirac"] = nullptr;
		if (s.fj)
			sj["fj"] = fj_json(*s.fj);
		else if (!s.fj_error.empty())
			sj["fj"] = {{"error", s.fj_error}, {"level", s.fj_error_level}, {"null_modes", modes_json(s.fj_error_modes)}};
		else
			sj["fj"] = nullptr;
		if (s.comparison) {
			ordered_json mm = ordered_json::array();
			for (auto& m : s.comparison->mismatches)
				mm.push_back({{"a", m.a.str()}, {"b", m.b.str()}, {"dirac", m.left.str()}, {"fj", m.right.str()}});
			sj["comparison"] = {{"compared", s.comparison->compared}, {"matches", s.comparison->matches},
				{"equal", s.comparison->equal()}, {"mismatches", mm}};
		} else {
			sj["comparison"] = nullptr;
		}
		ordered_json lat = ordered_json::array();
		for (auto& l : s.lattice) {
			ordered_json lj;
			lj["N"] = l.config.N;
			lj["h"] = l.config.h;
			lj["parameters"] = l.config.params;
			lj["tolerance"] = l.tolerance;
			ordered_json inv = ordered_json::array();
			for (auto& [name, c] : l.inverses)
				inv.push_back({{"pair", name}, {"residual", c.residual}, {"ok", c.ok()}});
			lj["inverses"] = inv;
			ordered_json br = ordered_json::array();
			for (auto& [name, c] : l.brackets)
				br.push_back({{"table", name}, {"antisymmetry", c.antisymmetry}, {"jacobi", c.jacobi},
					{"jacobi_identical", c.jacobi_identical}});
			lj["brackets"] = br;
			lj["ok"] = l.ok();
			lat.push_back(lj);
		}
		sj["lattice"] = lat;
		sectors.push_back(sj);
	}
	j["sectors"] = sectors;
	j["dof"] = r.dof.empty() ? ordered_json(nullptr) : ordered_json(r.dof);
	j["warnings"] = r.warnings;
	j["failures"] = r.failures;
	j["exit_code"] = r.exit_code;
	return j;
}

std::string report_text(const AnalysisReport& r)
{
	std::ostringstream os;
	os << "theory: " << r.theory << "\n";
	os << "input: " << r.input << "\n";
	os << "method: " << r.options.method << "\n";
	os << "modes: " << (r.options.k ? "k=" + std::to_string(*r.options.k) : std::string("symbolic")) << "\n";
	if (r.expansion) {
		os << "\n== compactification on S1/Z2 (" << r.expansion->coordinate << ", radius " << r.expansion->radius
		   << ")\n";
		for (auto& c : r.expansion->components)
			os << "  " << c.str(r.expansion->radius, r.expansion->coordinate) << "\n";
		os << "density: " << r.density4d->str() << "\n";
		os << "modes decouple: " << (r.decoupled ? "yes" : "no") << "\n";
	}
	for (auto& s : r.sectors) {
		os << "\n== sector " << s.name << "\n";
		os << "phase space:";
		for (auto& a : s.phase.atoms())
			os << " " << a.str();
		os << "\nlagrangian: " << s.lagrangian.str() << "\n";
		if (!s.gauge_set.empty()) {
			os << "gauge set " << s.gauge_set << ":";
			for (auto& g : s.gauge_conditions)
				os << " " << g.str() << ";";
			os << "\n";
		}
		if (s.dirac) {
			auto& d = *s.dirac;
			os << "\n-- dirac\n";
			for (auto& m : d.momenta)
				os << "  " << m.momentum.str() << " = " << m.value.str() << "\n";
			os << "velocity Hessian rank: " << d.hessian.rank << " of " << d.hessian.velocities.size() << "\n";
			os << "H_c = " << d.canonical_hamiltonian.str() << "\n";
			os << "H_P = " << d.primary_hamiltonian.str() << "\n";
			os << "H_E = " << d.extended_hamiltonian.str() << "\n";
			os << "constraints:\n";
			for (auto& c : d.constraints)
				os << "  " << c.name << " [" << to_string(c.stage) << ", " << to_string(c.cls) << ", generation "
				   << c.generation << ", from " << c.provenance << "]: " << c.expr.str() << "\n";
			for (auto& m : d.closure.multiplier_conditions)
				os << "  fixes a multiplier: " << m << "\n";
			os << "consistency rounds: " << d.closure.rounds << " (" << d.closure.productive_rounds
			   << " producing constraints)\n";
			os << "dof: (" << d.dof.phase_dim << " - 2*" << d.dof.first_class << " - " << d.dof.second_class
			   << ")/2 = " << d.dof.dof << "\n";
			if (d.generator) {
				os << "gauge generator: G = " << d.generator->density.str() << "\n";
				for (auto& [a, v] : d.generator->transformations)
					os << "  delta " << a.str() << " = " << v.str() << "\n";
			}
			if (d.gauge) {
				os << "second-class set:\n";
				for (auto& c : d.gauge->chi)
					os << "  " << c.name << " = " << c.expr.str() << "\n";
				os << "C =\n" << d.gauge->C.str() << "C^-1 =\n" << d.gauge->C_inverse.str();
			}
			if (d.brackets)
				os << "dirac brackets:\n" << d.brackets->str();
			if (s.unitary) {
				os << "unitary gauge: " << s.unitary->goldstone.str() << " removed with parameter "
				   << s.unitary->parameter.str() << "\n";
				os << "  reduced: " << s.unitary->reduced.str() << "\n";
				for (auto& e : s.unitary->spectrum)
					os << "  mass coefficient " << e.field << ": " << e.coefficient.str() << "\n";
			}
		} else if (!s.dirac_error.empty()) {
			os << "\n-- dirac\nerror: " << s.dirac_error << "\n";
		}
		if (s.fj) {
			auto& f = *s.fj;
			os << "\n-- faddeev-jackiw\n";
			for (std::size_t i = 0; i < f.levels.size(); ++i) {
				auto& l = f.levels[i];
				os << "level " << l.level << " (" << l.action << ")\n";
				os << "  V = " << f.states[i].potential.str() << "\n";
				os << "  f =\n" << l.f.str();
				for (auto& m : l.modes)
					os << "  null mode " << m.str() << "\n";
				for (auto& c : l.constraints)
					os << "  constraint " << c.str() << "\n";
				if (l.contraction) {
					os << "  contraction test: " << (l.contraction->identity ? "identity" : "new constraints") << "\n";
					for (auto& m : l.contraction->modes)
						os << "    extended mode " << m.str() << "\n";
				}
				for (auto& g : l.gauges)
					os << "  gauge condition " << g.str() << "\n";
			}
			os << "f^-1 =\n" << f.final_inverse.str();
			os << "constraints:\n";
			for (auto& c : f.final_state().constraints)
				os << "  " << c.name << (c.gauge ? " [gauge]" : "") << " with " << c.multiplier.str() << ": "
				   << c.expr.str() << "\n";
			os << "fj brackets:\n" << f.brackets.str();
		} else if (!s.fj_error.empty()) {
			os << "\n-- faddeev-jackiw\nerror: " << s.fj_error << "\n";
			for (auto& m : s.fj_error_modes)
				os << "  null mode " << m.str() << "\n";
		}
		if (s.comparison)
			os << "\n-- comparison\n" << s.comparison->str();
		for (auto& l : s.lattice) {
			os << "\n-- lattice " << l.config.str() << "\n";
			for (auto& [name, c] : l.inverses)
				os << "  " << name << " inverse: residual " << fmt(c.residual) << (c.ok() ? " ok" : " FAILED") << "\n";
			for (auto& [name, c] : l.brackets)
				os << "  " << name << " brackets: antisymmetry " << fmt(c.antisymmetry) << ", jacobi "
				   << (c.jacobi_identical ? "identical" : fmt(c.jacobi)) << "\n";
		}
	}
	os << "\n== summary\n";
	if (!r.dof.empty())
		os << "physical degrees of freedom: " << r.dof << "\n";
	for (auto& w : r.warnings)
		os << "warning: " << w << "\n";
	for (auto& f : r.failures)
		os << "failure: " << f << "\n";
	os << "exit code: " << r.exit_code << "\n";
	return os.str();
}

}
