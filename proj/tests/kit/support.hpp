#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hamforge/dirac.hpp"
#include "hamforge/dsl.hpp"
#include "hamforge/fj.hpp"
#include "hamforge/kk.hpp"

namespace hamforge::testkit {

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
TheorySpec load_fixture(const std::string& name);

// HAMFORGE_SEED or a fixed default
std::uint64_t seed();
std::mt19937_64 rng(std::uint64_t salt = 0);

// one sector of a fixture with its effective Lagrangian
struct Sector {
	TheorySpec spec;
	Mode mode = Mode::none;
	Expression lagrangian;
	PhaseSpace phase;
	std::vector<Expression> gauge(const std::string& set) const;
};

// zero_mode / kk_mode of a compactified fixture, main otherwise
Sector load_sector(const std::string& fixture, Mode mode);

// shorthand atoms and expressions
Expression A(int component, Mode m = Mode::none);
Expression Pi(int component, Mode m = Mode::none);
Expression theta(Mode m = Mode::none);
Expression P(Mode m = Mode::none);
Expression eps(Mode m = Mode::none);
Atom A_atom(int component, Mode m = Mode::none);
Atom Pi_atom(int component, Mode m = Mode::none);
Atom theta_atom(Mode m = Mode::none);
Atom P_atom(Mode m = Mode::none);

Coeff m2();
// n/R
Coeff n_over_R();
// R/n
Coeff R_over_n();

Operator d(int i);
Operator lap();
Operator inv_lap();
Operator delta(int i, int j);

}
