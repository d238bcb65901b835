#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamforge/dsl.hpp"
#include "hamforge/expression.hpp"

namespace hamforge {

enum class Harmonic { cosine, sine };

// one field component on S1/Z2: an even component carries a zero mode with weight
// (2 pi R)^-1/2 plus cos(n y/R) modes, an odd one only sin(n y/R) modes; excited
// modes carry weight (pi R)^-1/2
struct ComponentExpansion {
	std::string field;
	int component = -1;
	Parity parity = Parity::even;
	bool zero_mode = false;
	Harmonic harmonic = Harmonic::cosine;

	std::string str(const std::string& radius, const std::string& coordinate) const;
};

struct ModeExpansion {
	std::string radius;
	std::string coordinate;
	// number of modes kept; nullopt keeps a symbolic tower with representative label n
	std::optional<int> k;
	std::vector<ComponentExpansion> components;

	const ComponentExpansion* find(const std::string& field, int component) const;
	bool has_kk_modes() const { return !k || *k > 1; }
};

ModeExpansion expand_on_orbifold(const TheorySpec& spec, std::optional<int> k = std::nullopt);

struct BasisFunction {
	enum Kind { constant, cosine, sine } kind = constant;
	int n = 0;
};

// integral over y in (0, 2 pi R) of a*b in units of pi R; covers 1*1, 1*cos, 1*sin,
// cos*cos, sin*sin and sin*cos for n, m >= 1
Rational harmonic_integral(BasisFunction a, BasisFunction b);

// four-dimensional density with atoms labelled @0 and @n
Expression integrate_extra_dimension(const TheorySpec& spec, const ModeExpansion& exp);

// true when no term couples the zero mode to the excited modes
bool modes_decouple(const Expression& density);
// part of a density whose atoms all carry the given mode
Expression sector_part(const Expression& density, Mode mode);

}
