#include "doctest.h"

#include <algorithm>
#include <tuple>

#include "hamforge/fj.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hamforge;
using namespace hamforge::testkit;

namespace {

FJAnalysis run(Mode m, const std::string& set)
{
	Sector s = load_sector("stueckelberg5d.thy", m);
	return analyze_fj(s.lagrangian, s.phase, s.gauge(set));
}

std::string join(const std::vector<std::string>& v)
{
	std::string s;
	for (auto& x : v)
		s += x + "\n";
	return s;
}

// display of a null mode expected from operator components acting on its parameter
std::vector<Expression> expected_display(const NullMode& mode, const std::vector<Operator>& ops)
{
	std::vector<Expression> out;
	for (auto& op : ops)
		out.push_back(apply(op, Expression::atom(mode.omega)));
	return out;
}

}

TEST_CASE("level zero null modes point along A0")
{
	for (auto [m, set] : {std::pair{Mode::zero, "coulomb"}, std::pair{Mode::kk, "axial"}}) {
		FJAnalysis fj = run(m, set);
		const FJLevel& l0 = fj.levels.front();
		REQUIRE(l0.modes.size() == 1);
		const SymplecticState& s0 = fj.states.front();
		std::size_t a0 = s0.index_of(A_atom(0, m));
		const KernelVector& u = l0.modes[0].u;
		for (std::size_t i = 0; i < u.size(); ++i)
			CHECK(u[i] == (i == a0 ? Operator(1) : Operator()));
	}
}

TEST_CASE("level zero symplectic matrix of the zero mode")
{
	FJAnalysis fj = run(Mode::zero, "coulomb");
	auto diff = compare_by_labels(zero_mode_f0_display(), fj.levels.front().f);
	INFO(join(diff));
	CHECK(diff.empty());
}

TEST_CASE("generated constraints are the Gauss laws")
{
	for (auto [m, set] : {std::pair{Mode::zero, "coulomb"}, std::pair{Mode::kk, "axial"}}) {
		FJAnalysis fj = run(m, set);
		REQUIRE(fj.levels.size() == 3);
		CHECK(fj.levels[0].action == "constraint");
		CHECK(fj.levels[0].constraints == std::vector<Expression>{gauss(m)});
		CHECK(fj.levels[1].action == "gauge");
		CHECK(fj.levels[2].action == "invertible");
	}
}

TEST_CASE("contraction test reproduces the identity")
{
	Operator b = n_over_R();
	std::vector<Operator> zero_ops{-d(1), -d(2), -d(3), 0, 0, 0, 1, 0, 0, 1};
	std::vector<Operator> kk_ops{-d(1), -d(2), -d(3), 0, 0, 0, b, 0, 1, 0, 0, 1};
	for (auto [m, set, ops] : {std::tuple{Mode::zero, "coulomb", zero_ops}, std::tuple{Mode::kk, "axial", kk_ops}}) {
		FJAnalysis fj = run(m, set);
		REQUIRE(fj.levels[0].contraction);
		const ContractionTest& t = *fj.levels[0].contraction;
		CHECK(t.identity);
		bool found = false;
		for (auto& mode : t.modes)
			found = found || mode.display == expected_display(mode, ops);
		CHECK(found);
	}
}

TEST_CASE("a potential that breaks the gauge symmetry fails the contraction test")
{
	Mode m = Mode::zero;
	Sector s = load_sector("stueckelberg5d.thy", m);
	HessianResult h = hessian_primaries(s.lagrangian, s.phase);
	SymplecticState s0 = first_order_form(canonical_hamiltonian(s.lagrangian, s.phase), s.phase, h.primaries);
	s0.potential += m2() * theta(m);
	auto modes = null_modes(symplectic_matrix(s0), m);
	auto omegas = fj_constraint_generation(modes, s0);
	REQUIRE(omegas.size() == 1);
	CHECK(omegas[0] == gauss(m));
	CHECK_FALSE(no_new_constraints_test(s0, omegas).identity);
}

TEST_CASE("final zero-mode matrix and inverse")
{
	FJAnalysis fj = run(Mode::zero, "coulomb");
	CHECK((fj.final_matrix * fj.final_inverse).is_identity());
	CHECK(fj.final_matrix.is_adjoint_antisymmetric());
	CHECK(fj.final_inverse.is_adjoint_antisymmetric());
	auto diff = compare_by_labels(zero_mode_f2_display(Reading::upper_y), fj.final_matrix);
	INFO(join(diff));
	CHECK(diff.empty());
}

TEST_CASE("printed zero-mode inverse is the literal inverse of a non-antisymmetric reading")
{
	// the printed pair multiplies to the identity only when every derivative acts on x,
	// and that reading is not a symplectic matrix
	CHECK((zero_mode_f2_display(Reading::literal) * zero_mode_f2_inverse_display(Reading::literal)).is_identity());
	CHECK_FALSE(zero_mode_f2_display(Reading::literal).is_adjoint_antisymmetric());
	FJAnalysis fj = run(Mode::zero, "coulomb");
	for (Reading r : {Reading::literal, Reading::upper_y, Reading::lower_y, Reading::both_y})
		CHECK_FALSE(compare_by_labels(zero_mode_f2_inverse_display(r), fj.final_inverse).empty());
}

TEST_CASE("final KK inverse")
{
	FJAnalysis fj = run(Mode::kk, "axial");
	CHECK((fj.final_matrix * fj.final_inverse).is_identity());
	CHECK(fj.final_matrix.is_adjoint_antisymmetric());
	auto diff = compare_by_labels(kk_mode_f2_inverse_display(Reading::upper_y), fj.final_inverse);
	INFO(join(diff));
	CHECK(diff.empty());
}

TEST_CASE("extracted brackets")
{
	FJAnalysis z = run(Mode::zero, "coulomb");
	BracketComparison cz = compare_brackets(zero_mode_brackets("fj"), z.brackets);
	INFO(cz.str());
	CHECK(cz.equal());
	CHECK(cz.compared == 64);
	FJAnalysis k = run(Mode::kk, "axial");
	BracketComparison ck = compare_brackets(kk_mode_brackets("fj"), k.brackets);
	INFO(ck.str());
	CHECK(ck.equal());
	CHECK(ck.compared == 100);
}

TEST_CASE("Dirac and Faddeev-Jackiw brackets agree")
{
	for (auto [m, set] : {std::pair{Mode::zero, "coulomb"}, std::pair{Mode::kk, "axial"}}) {
		Sector s = load_sector("stueckelberg5d.thy", m);
		DiracAnalysis d = analyze_dirac(s.lagrangian, s.phase, s.gauge(set));
		FJAnalysis fj = analyze_fj(s.lagrangian, s.phase, s.gauge(set));
		REQUIRE(d.brackets);
		BracketComparison c = compare_brackets(*d.brackets, fj.brackets);
		INFO(c.str());
		CHECK(c.equal());
	}
}

TEST_CASE("the momentum gauge leaves the KK symplectic matrix singular")
{
	Sector s = load_sector("stueckelberg5d.thy", Mode::kk);
	try {
		analyze_fj(s.lagrangian, s.phase, s.gauge("dirac_axial_pair"));
		FAIL("expected a singular symplectic matrix");
	} catch (const SymplecticSingularError& e) {
		CHECK(e.level == 2);
		CHECK_FALSE(e.modes.empty());
	}
}

TEST_CASE("FJ constraints match the Dirac second-class set")
{
	Sector s = load_sector("stueckelberg5d.thy", Mode::zero);
	FJAnalysis fj = analyze_fj(s.lagrangian, s.phase, s.gauge("coulomb"));
	DiracAnalysis d = analyze_dirac(s.lagrangian, s.phase, s.gauge("coulomb"));
	REQUIRE(d.gauge);
	// the primary and its gauge partner are removed by the first-order form itself
	std::vector<Expression> dirac;
	for (auto& c : d.gauge->chi)
		if (c.stage != Stage::primary && !c.expr.contains_bare(A_atom(0, Mode::zero)))
			dirac.push_back(sign_normalized(c.expr));
	std::vector<Expression> fjc;
	for (auto& c : fj.final_state().constraints)
		fjc.push_back(sign_normalized(c.expr));
	std::sort(dirac.begin(), dirac.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
	std::sort(fjc.begin(), fjc.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
	CHECK(dirac == fjc);
}
