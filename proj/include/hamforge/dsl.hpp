#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamforge/expression.hpp"

namespace hamforge {

enum class Rank { scalar, vector };
enum class Parity { even, odd };

struct FieldDecl {
	std::string name;
	Rank rank = Rank::scalar;
	// keyed by component; scalars use -1
	std::map<int, Parity> parity;
	bool operator==(const FieldDecl&) const = default;
};

struct Compactification {
	std::string coordinate;
	std::string radius;
	bool operator==(const Compactification&) const = default;
};

struct GaugeSet {
	std::string name;
	std::vector<Expression> conditions;
	bool operator==(const GaugeSet&) const = default;
};

struct TheorySpec {
	std::string name;
	int dimension = 4;
	std::vector<int> metric;
	std::optional<Compactification> compact;
	std::vector<std::string> params;
	std::vector<FieldDecl> fields;
	Expression lagrangian;
	std::vector<GaugeSet> gauge_sets;

	bool operator==(const TheorySpec&) const = default;

	const FieldDecl* field(std::string_view name) const;
	const GaugeSet* gauge_set(std::string_view name) const;
	// 0,1,2,3 and 5 when five-dimensional
	std::vector<int> components() const;
	int metric_sign(int component) const;
	std::string momentum_symbol(const std::string& field) const;
};

// momentum naming shared by the DSL and the engines: Pi / P for a unique vector / scalar
std::string momentum_symbol_for(const std::string& field, Rank rank, int vectors, int scalars);

struct Diagnostic {
	int line = 0;
	int column = 0;
	std::string message;
	std::string str() const;
};

struct ParseResult {
	std::optional<TheorySpec> spec;
	std::vector<Diagnostic> diagnostics;
	bool ok() const { return spec.has_value(); }
};

ParseResult parse_theory(std::string_view source);
std::string render_theory(const TheorySpec& spec);

}
