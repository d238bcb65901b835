#include "doctest.h"

#include <chrono>
#include <cmath>
#include <numbers>

#include "hamforge/kk.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hamforge;
using namespace hamforge::testkit;

namespace {

// integral over (0, 2 pi R) of cos(k y/R) or sin(k y/R) from the antiderivative
double integral_cos(int k, double R) { return k == 0 ? 2 * std::numbers::pi * R : R * std::sin(2 * std::numbers::pi * k) / k; }
double integral_sin(int k, double R) { return k == 0 ? 0.0 : R * (1 - std::cos(2 * std::numbers::pi * k)) / k; }

// product-to-sum reduction, result in units of pi R
double reference_integral(BasisFunction a, BasisFunction b, double R)
{
	using K = BasisFunction::Kind;
	auto norm = [&](double v) { return v / (std::numbers::pi * R); };
	if (a.kind == K::constant && b.kind == K::constant)
		return norm(integral_cos(0, R));
	if (a.kind == K::constant)
		std::swap(a, b);
	if (b.kind == K::constant)
		return norm(a.kind == K::cosine ? integral_cos(a.n, R) : integral_sin(a.n, R));
	int p = a.n, q = b.n;
	if (a.kind == K::cosine && b.kind == K::cosine)
		return norm(0.5 * (integral_cos(std::abs(p - q), R) + integral_cos(p + q, R)));
	if (a.kind == K::sine && b.kind == K::sine)
		return norm(0.5 * (integral_cos(std::abs(p - q), R) - integral_cos(p + q, R)));
	if (a.kind == K::cosine)
		std::swap(a, b), std::swap(p, q);
	// sin(p) cos(q) = (sin(p+q) + sin(p-q)) / 2
	double diff = p >= q ? integral_sin(p - q, R) : -integral_sin(q - p, R);
	return norm(0.5 * (integral_sin(p + q, R) + diff));
}

}

TEST_CASE("orthogonality table agrees with direct integration")
{
	using K = BasisFunction::Kind;
	std::vector<BasisFunction> basis{{K::constant, 0}};
	for (int n = 1; n <= 5; ++n) {
		basis.push_back({K::cosine, n});
		basis.push_back({K::sine, n});
	}
	for (auto a : basis)
		for (auto b : basis) {
			Rational table = harmonic_integral(a, b);
			double ref = reference_integral(a, b, 0.37);
			CAPTURE(a.kind);
			CAPTURE(a.n);
			CAPTURE(b.kind);
			CAPTURE(b.n);
			CHECK(std::abs(boost::rational_cast<double>(table) - ref) < 1e-12);
		}
}

TEST_CASE("orbifold expansion follows parity")
{
	TheorySpec s = load_fixture("stueckelberg5d.thy");
	ModeExpansion e = expand_on_orbifold(s);
	const ComponentExpansion* a5 = e.find("A", 5);
	REQUIRE(a5);
	CHECK_FALSE(a5->zero_mode);
	CHECK(a5->harmonic == Harmonic::sine);
	const ComponentExpansion* th = e.find("theta", -1);
	REQUIRE(th);
	CHECK(th->zero_mode);
	CHECK(th->harmonic == Harmonic::cosine);
	for (int c = 0; c < 4; ++c)
		CHECK(e.find("A", c)->zero_mode);
	CHECK(e.has_kk_modes());
	CHECK_FALSE(expand_on_orbifold(s, 1).has_kk_modes());

	// an odd scalar has no zero mode
	std::string src = render_theory(s);
	src.replace(src.find("parity(even)"), 12, "parity(odd)");
	ParseResult r = parse_theory(src);
	REQUIRE(r.ok());
	const ComponentExpansion* odd = expand_on_orbifold(*r.spec).find("theta", -1);
	CHECK_FALSE(odd->zero_mode);
	CHECK(odd->harmonic == Harmonic::sine);

	CHECK_THROWS_AS(expand_on_orbifold(load_fixture("stueckelberg4d.thy")), Error);
}

TEST_CASE("integration over the extra dimension")
{
	TheorySpec s = load_fixture("stueckelberg5d.thy");
	auto t0 = std::chrono::steady_clock::now();
	Expression L = integrate_extra_dimension(s, expand_on_orbifold(s));
	double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	CHECK(seconds < 1.0);
	CHECK(L == stueckelberg_density(Mode::zero) + stueckelberg_density(Mode::kk));
	CHECK(modes_decouple(L));
	CHECK(sector_part(L, Mode::zero) == stueckelberg_density(Mode::zero));
	CHECK(sector_part(L, Mode::kk) == stueckelberg_density(Mode::kk));
}

TEST_CASE("effective density is gauge invariant")
{
	TheorySpec s = load_fixture("stueckelberg5d.thy");
	Expression L = integrate_extra_dimension(s, expand_on_orbifold(s));
	for (Mode m : {Mode::zero, Mode::kk}) {
		std::map<Atom, Expression> shift;
		for (auto& [atom, delta] : gauge_transformations(m))
			shift[atom] = Expression::atom(atom) + delta;
		Expression Lm = sector_part(L, m);
		Expression moved = substitute(Lm, shift);
		CHECK(equivalent_densities(moved, Lm));
		CHECK(normalize(moved - Lm).is_zero());
	}
}
