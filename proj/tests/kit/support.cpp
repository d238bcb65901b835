#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hamforge::testkit {

std::string fixture_path(const std::string& name) { return std::string(HAMFORGE_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot read " + path);
	std::stringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

TheorySpec load_fixture(const std::string& name)
{
	ParseResult r = parse_theory(read_file(fixture_path(name)));
	if (!r.ok()) {
		std::string msg = name + ":";
		for (auto& d : r.diagnostics)
			msg += " " + d.str();
		throw std::runtime_error(msg);
	}
	return *r.spec;
}

std::uint64_t seed()
{
	if (const char* s = std::getenv("HAMFORGE_SEED"); s && *s)
		return std::strtoull(s, nullptr, 10);
	return 20240611;
}

std::mt19937_64 rng(std::uint64_t salt)
{
	std::seed_seq seq{seed(), salt};
	return std::mt19937_64(seq);
}

std::vector<Expression> Sector::gauge(const std::string& set) const
{
	const GaugeSet* g = spec.gauge_set(set);
	if (!g)
		throw std::runtime_error("no gauge set " + set);
	return g->conditions;
}

Sector load_sector(const std::string& fixture, Mode mode)
{
	Sector s;
	s.spec = load_fixture(fixture);
	s.mode = mode;
	if (s.spec.compact) {
		ModeExpansion exp = expand_on_orbifold(s.spec);
		s.lagrangian = sector_part(integrate_extra_dimension(s.spec, exp), mode);
	} else {
		s.lagrangian = s.spec.lagrangian;
	}
	s.phase = make_phase_space(s.spec, mode);
	return s;
}

Atom A_atom(int c, Mode m) { return Atom::field("A", c, m); }
Atom Pi_atom(int c, Mode m) { return Atom::momentum("Pi", c, m); }
Atom theta_atom(Mode m) { return Atom::field("theta", -1, m); }
Atom P_atom(Mode m) { return Atom::momentum("P", -1, m); }

Expression A(int c, Mode m) { return Expression::atom(A_atom(c, m)); }
Expression Pi(int c, Mode m) { return Expression::atom(Pi_atom(c, m)); }
Expression theta(Mode m) { return Expression::atom(theta_atom(m)); }
Expression P(Mode m) { return Expression::atom(P_atom(m)); }
Expression eps(Mode m) { return Expression::atom(Atom::gauge_parameter("epsilon", m)); }

Coeff m2() { return Coeff::param("m", 2); }
Coeff n_over_R() { return Coeff::param("n") * Coeff::param("R", -1); }
Coeff R_over_n() { return Coeff::param("R") * Coeff::param("n", -1); }

Operator d(int i) { return Operator::d(i); }
Operator lap() { return Operator::laplacian(); }
Operator inv_lap() { return Operator::inverse_laplacian(); }
Operator delta(int i, int j) { return i == j ? Operator(1) : Operator(); }

}
