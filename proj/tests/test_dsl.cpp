#include "doctest.h"

#include "hamforge/dsl.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hamforge;
using namespace hamforge::testkit;

namespace {

const char* kHeader = "theory t {\n  dim 4;\n  metric (+,-,-,-);\n  param m;\n  field A vector;\n";

ParseResult parse_body(const std::string& body) { return parse_theory(std::string(kHeader) + body + "}\n"); }

bool mentions(const ParseResult& r, const std::string& text)
{
	for (auto& d : r.diagnostics)
		if (d.message.find(text) != std::string::npos && d.line > 0 && d.column > 0)
			return true;
	return false;
}

}

TEST_CASE("the five-dimensional fixture")
{
	TheorySpec s = load_fixture("stueckelberg5d.thy");
	CHECK(s.dimension == 5);
	CHECK(s.metric == std::vector<int>{1, -1, -1, -1, -1});
	REQUIRE(s.compact);
	CHECK(s.compact->radius == "R");
	CHECK(s.params == std::vector<std::string>{"m", "R"});
	const FieldDecl* a = s.field("A");
	REQUIRE(a);
	CHECK(a->rank == Rank::vector);
	for (int c = 0; c < 4; ++c)
		CHECK(a->parity.at(c) == Parity::even);
	CHECK(a->parity.at(5) == Parity::odd);
	const FieldDecl* t = s.field("theta");
	REQUIRE(t);
	CHECK(t->rank == Rank::scalar);
	CHECK(t->parity.at(-1) == Parity::even);
	CHECK(s.gauge_set("coulomb")->conditions.size() == 2);
	CHECK(s.gauge_set("axial")->conditions.front() == A(5, Mode::kk));
}

TEST_CASE("field strength is expanded at parse time")
{
	// the 4D fixture written with explicit derivatives gives the same density
	TheorySpec s = load_fixture("stueckelberg4d.thy");
	Expression L;
	for (int mu = 0; mu < 4; ++mu) {
		for (int nu = 0; nu < 4; ++nu) {
			Expression F = A(nu).derivative(mu) - A(mu).derivative(nu);
			L += Coeff(Rational(-1, 4) * eta4(mu) * eta4(nu)) * F * F;
		}
		Expression B = A(mu) + theta().derivative(mu);
		L += m2() * Coeff(eta4(mu)) * B * B;
	}
	CHECK(s.lagrangian == L);
}

TEST_CASE("fixtures survive a render round trip")
{
	for (const char* name : {"stueckelberg5d.thy", "stueckelberg4d.thy", "maxwell4d.thy", "proca4d.thy"}) {
		CAPTURE(name);
		TheorySpec s = load_fixture(name);
		std::string text = render_theory(s);
		ParseResult r = parse_theory(text);
		REQUIRE(r.ok());
		CHECK(*r.spec == s);
		CHECK(render_theory(*r.spec) == text);
	}
}

TEST_CASE("diagnostics carry positions")
{
	CHECK(mentions(parse_body("  lagrangian = ;\n"), "empty density"));
	CHECK(mentions(parse_body("  lagrangian = F[mu,nu]*F[mu,nu,rho];\n"), "index"));
	CHECK(mentions(parse_body("  lagrangian = A[mu];\n"), "free index"));
	CHECK(mentions(parse_body("  lagrangian = q*A[mu]*A[mu];\n"), "undeclared symbol 'q'"));
	CHECK(mentions(parse_body("  lagrangian = A[mu]*A[mu] $;\n"), "unexpected character"));
	CHECK(mentions(parse_theory("theory t {\n  dim 6;\n  metric (+,-);\n  param m;\n  field A vector;\n  lagrangian = m;\n}"),
		"dimension"));
	CHECK_FALSE(parse_theory("").ok());
}

TEST_CASE("compactified theories need parities")
{
	std::string src =
		"theory t {\n  dim 5;\n  metric (+,-,-,-,-);\n  compact y on S1/Z2 radius R;\n  param m, R;\n"
		"  field A vector parity(mu: even);\n  lagrangian = -1/4*F[M,N]*F[M,N];\n}\n";
	ParseResult r = parse_theory(src);
	CHECK_FALSE(r.ok());
	CHECK(mentions(r, "missing parity"));
}

TEST_CASE("gauge conditions may use momenta")
{
	ParseResult r = parse_body("  lagrangian = -1/4*F[mu,nu]*F[mu,nu];\n  gauge_fixing g {\n    Pi[0] + A[0] = 0;\n  }\n");
	REQUIRE(r.ok());
	CHECK(r.spec->gauge_set("g")->conditions.front() == Pi(0) + A(0));
}

TEST_CASE("garbage never crashes the parser")
{
	auto g = rng(21);
	std::string alphabet = "theory{}[]();=+-*/^,:@ dimfieldAF0123456789\n";
	for (int c = 0; c < 300; ++c) {
		std::string src;
		int len = std::uniform_int_distribution<int>(0, 80)(g);
		for (int k = 0; k < len; ++k)
			src += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(g)];
		ParseResult r = parse_theory(src);
		if (!r.ok())
			CHECK_FALSE(r.diagnostics.empty());
	}
}
