#include "hamforge/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <set>

#include "hamforge/errors.hpp"

namespace hamforge {

const FieldDecl* TheorySpec::field(std::string_view n) const
{
	for (auto& f : fields)
		if (f.name == n)
			return &f;
	return nullptr;
}

const GaugeSet* TheorySpec::gauge_set(std::string_view n) const
{
	for (auto& g : gauge_sets)
		if (g.name == n)
			return &g;
	return nullptr;
}

std::vector<int> TheorySpec::components() const
{
	if (dimension == 5)
		return {0, 1, 2, 3, 5};
	return {0, 1, 2, 3};
}

int TheorySpec::metric_sign(int component) const
{
	auto comps = components();
	auto it = std::find(comps.begin(), comps.end(), component);
	if (it == comps.end() || static_cast<std::size_t>(it - comps.begin()) >= metric.size())
		throw AlgebraError("no metric entry for component " + std::to_string(component));
	return metric[static_cast<std::size_t>(it - comps.begin())];
}

std::string momentum_symbol_for(const std::string& field, Rank rank, int vectors, int scalars)
{
	if (rank == Rank::vector)
		return vectors == 1 ? "Pi" : "Pi_" + field;
	return scalars == 1 ? "P" : "P_" + field;
}

std::string TheorySpec::momentum_symbol(const std::string& f) const
{
	int v = 0, s = 0;
	for (auto& d : fields)
		(d.rank == Rank::vector ? v : s)++;
	const FieldDecl* d = field(f);
	if (!d)
		throw UnknownAtomError("unknown field " + f);
	return momentum_symbol_for(f, d->rank, v, s);
}

std::string Diagnostic::str() const
{
	return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

struct Pos {
	int line = 1, col = 1;
};

enum class Tok { ident, integer, punct, end };

struct Token {
	Tok kind = Tok::end;
	std::string text;
	Pos pos;
};

struct DslError {
	Pos pos;
	std::string message;
};

std::vector<Token> lex(std::string_view s, std::vector<Diagnostic>& diags)
{
	std::vector<Token> out;
	Pos p;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n; ++k, ++i) {
			if (s[i] == '\n') {
				++p.line;
				p.col = 1;
			} else {
				++p.col;
			}
		}
	};
	while (i < s.size()) {
		char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
		} else if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
			while (i < s.size() && s[i] != '\n')
				advance(1);
		} else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
				++j;
			out.push_back({Tok::ident, std::string(s.substr(i, j - i)), p});
			advance(j - i);
		} else if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
				++j;
			out.push_back({Tok::integer, std::string(s.substr(i, j - i)), p});
			advance(j - i);
		} else if (std::string_view("{}()[];,:=+-*/^@").find(c) != std::string_view::npos) {
			out.push_back({Tok::punct, std::string(1, c), p});
			advance(1);
		} else {
			diags.push_back({p.line, p.col, std::string("unexpected character '") + c + "'"});
			advance(1);
		}
	}
	out.push_back({Tok::end, "", p});
	return out;
}

struct IndexRef {
	bool concrete = false;
	int value = 0;
	std::string name;
	Pos pos;
};

struct Node {
	enum Kind { number, symbol, deriv, sum, product, neg, power } kind = number;
	Pos pos;
	Rational value;
	std::string name;
	std::vector<IndexRef> idx;
	bool has_mode = false;
	Mode mode = Mode::none;
	std::vector<std::unique_ptr<Node>> kids;
	std::vector<char> ops;
	int exponent = 1;
	// index names summed at this node, with whether both occurrences share a position
	std::vector<std::pair<std::string, bool>> contracted;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
	Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

	const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
	bool at_end() const { return peek().kind == Tok::end; }
	bool is(const char* text) const { return peek().kind != Tok::end && peek().text == text && peek().kind != Tok::integer; }
	Token next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }

	[[noreturn]] void fail(const std::string& expected) const
	{
		const Token& tk = peek();
		std::string got = tk.kind == Tok::end ? "end of input" : "'" + tk.text + "'";
		throw DslError{tk.pos, "expected " + expected + ", found " + got};
	}

	Token expect(const char* text)
	{
		if (!is(text))
			fail(std::string("'") + text + "'");
		return next();
	}

	Token expect_ident()
	{
		if (peek().kind != Tok::ident)
			fail("identifier");
		return next();
	}

	Token expect_int()
	{
		if (peek().kind != Tok::integer)
			fail("integer");
		return next();
	}

	// skip to just past the next ';' at brace depth zero, or to a closing brace
	void recover()
	{
		int depth = 0;
		while (!at_end()) {
			if (is("{"))
				++depth;
			if (is("}")) {
				if (depth == 0)
					return;
				--depth;
			}
			if (is(";") && depth == 0) {
				next();
				return;
			}
			next();
		}
	}

	NodePtr expr()
	{
		auto n = std::make_unique<Node>();
		n->kind = Node::sum;
		n->pos = peek().pos;
		char sign = '+';
		if (is("-") || is("+"))
			sign = next().text[0];
		n->kids.push_back(term());
		n->ops.push_back(sign);
		while (is("+") || is("-")) {
			char op = next().text[0];
			n->kids.push_back(term());
			n->ops.push_back(op);
		}
		return n;
	}

	NodePtr term()
	{
		std::vector<NodePtr> fs;
		std::vector<char> ops;
		Pos start = peek().pos;
		fs.push_back(power());
		ops.push_back('*');
		while (is("*") || is("/")) {
			ops.push_back(next().text[0]);
			fs.push_back(power());
		}
		// a derivative applies to the factor that follows it
		for (std::size_t k = fs.size(); k-- > 0;) {
			Node& f = *fs[k];
			if (f.kind != Node::deriv || !f.kids.empty())
				continue;
			if (k + 1 >= fs.size() || ops[k + 1] != '*')
				throw DslError{f.pos, "derivative must be followed by '*' and an operand"};
			f.kids.push_back(std::move(fs[k + 1]));
			fs.erase(fs.begin() + static_cast<long>(k + 1));
			ops.erase(ops.begin() + static_cast<long>(k + 1));
		}
		if (fs.size() == 1)
			return std::move(fs[0]);
		auto n = std::make_unique<Node>();
		n->kind = Node::product;
		n->pos = start;
		n->kids = std::move(fs);
		n->ops = std::move(ops);
		return n;
	}

	NodePtr power()
	{
		NodePtr base = primary();
		if (!is("^"))
			return base;
		Pos pos = next().pos;
		int sign = 1;
		if (is("-")) {
			next();
			sign = -1;
		}
		int e = std::stoi(expect_int().text);
		auto n = std::make_unique<Node>();
		n->kind = Node::power;
		n->pos = pos;
		n->exponent = sign * e;
		n->kids.push_back(std::move(base));
		return n;
	}

	NodePtr primary()
	{
		auto n = std::make_unique<Node>();
		n->pos = peek().pos;
		if (is("-")) {
			next();
			n->kind = Node::neg;
			n->kids.push_back(power());
			return n;
		}
		if (is("(")) {
			next();
			NodePtr e = expr();
			expect(")");
			return e;
		}
		if (peek().kind == Tok::integer) {
			n->kind = Node::number;
			n->value = Rational(std::stoll(next().text));
			return n;
		}
		if (peek().kind != Tok::ident)
			fail("number, symbol or '('");
		n->name = next().text;
		n->kind = n->name == "d" ? Node::deriv : Node::symbol;
		if (is("[")) {
			next();
			for (;;) {
				IndexRef r;
				r.pos = peek().pos;
				if (peek().kind == Tok::integer) {
					r.concrete = true;
					r.value = std::stoi(next().text);
				} else {
					r.name = expect_ident().text;
				}
				n->idx.push_back(r);
				if (is(",")) {
					next();
					continue;
				}
				expect("]");
				break;
			}
		}
		if (n->kind == Node::deriv && n->idx.size() != 1)
			throw DslError{n->pos, "derivative takes exactly one index"};
		if (is("@")) {
			next();
			n->has_mode = true;
			if (peek().kind == Tok::integer && peek().text == "0") {
				next();
				n->mode = Mode::zero;
			} else if (peek().kind == Tok::ident && peek().text == "n") {
				next();
				n->mode = Mode::kk;
			} else {
				fail("mode label '0' or 'n'");
			}
		}
		return n;
	}

private:
	std::vector<Token> t_;
	std::size_t i_ = 0;
};

struct Occ {
	char variance;
	Pos pos;
};

enum class Context { lagrangian, gauge };

class Evaluator {
public:
	Evaluator(const TheorySpec& spec, Context ctx) : spec_(spec), ctx_(ctx)
	{
		for (auto& f : spec.fields)
			momenta_[spec.momentum_symbol(f.name)] = &f;
	}

	std::vector<int> range(const IndexRef& r) const
	{
		static const std::set<std::string> spatial{"i", "j", "k", "l"};
		static const std::set<std::string> greek{"mu", "nu", "rho", "sigma", "alpha", "beta", "kappa", "tau"};
		if (spatial.count(r.name))
			return {1, 2, 3};
		if (greek.count(r.name))
			return {0, 1, 2, 3};
		if (r.name.size() == 1 && std::isupper(static_cast<unsigned char>(r.name[0])))
			return spec_.components();
		throw DslError{r.pos, "unknown index '" + r.name + "'"};
	}

	bool is_momentum(const std::string& name) const { return ctx_ == Context::gauge && momenta_.count(name); }

	std::map<std::string, Occ> analyze(Node& n)
	{
		switch (n.kind) {
		case Node::number:
			return {};
		case Node::symbol: {
			std::vector<std::map<std::string, Occ>> parts;
			char var = is_momentum(n.name) ? 'u' : 'd';
			for (auto& r : n.idx)
				if (!r.concrete) {
					range(r);
					parts.push_back({{r.name, Occ{var, r.pos}}});
				}
			return combine(n, parts);
		}
		case Node::deriv: {
			std::vector<std::map<std::string, Occ>> parts;
			if (!n.idx[0].concrete) {
				range(n.idx[0]);
				parts.push_back({{n.idx[0].name, Occ{'d', n.idx[0].pos}}});
			}
			parts.push_back(analyze(*n.kids[0]));
			return combine(n, parts);
		}
		case Node::product: {
			std::vector<std::map<std::string, Occ>> parts;
			for (auto& k : n.kids)
				parts.push_back(analyze(*k));
			return combine(n, parts);
		}
		case Node::sum: {
			std::map<std::string, Occ> first;
			for (std::size_t i = 0; i < n.kids.size(); ++i) {
				auto f = analyze(*n.kids[i]);
				if (i == 0) {
					first = f;
					continue;
				}
				std::set<std::string> a, b;
				for (auto& [k, v] : first)
					a.insert(k);
				for (auto& [k, v] : f)
					b.insert(k);
				if (a != b)
					throw DslError{n.kids[i]->pos, "terms of a sum carry different free indices"};
			}
			return first;
		}
		case Node::neg:
			return analyze(*n.kids[0]);
		case Node::power: {
			auto f = analyze(*n.kids[0]);
			if (!f.empty())
				throw DslError{n.pos, "cannot raise an expression with free index '" + f.begin()->first + "' to a power"};
			return f;
		}
		}
		return {};
	}

	std::map<std::string, Occ> combine(Node& n, const std::vector<std::map<std::string, Occ>>& parts)
	{
		std::map<std::string, std::vector<Occ>> all;
		for (auto& p : parts)
			for (auto& [k, v] : p)
				all[k].push_back(v);
		std::map<std::string, Occ> free;
		for (auto& [k, occ] : all) {
			if (occ.size() == 1)
				free.emplace(k, occ[0]);
			else if (occ.size() == 2)
				n.contracted.emplace_back(k, occ[0].variance == occ[1].variance);
			else
				throw DslError{occ[2].pos, "index '" + k + "' appears more than twice"};
		}
		return free;
	}

	Expression eval(const Node& n, std::map<std::string, int>& env)
	{
		if (n.contracted.empty())
			return core(n, env);
		Expression total;
		std::function<void(std::size_t, Coeff)> rec = [&](std::size_t k, Coeff sign) {
			if (k == n.contracted.size()) {
				total += Expression(sign) * core(n, env);
				return;
			}
			auto& [name, same] = n.contracted[k];
			IndexRef r;
			r.name = name;
			r.pos = n.pos;
			for (int v : range(r)) {
				env[name] = v;
				rec(k + 1, same ? sign * Coeff(spec_.metric_sign(v)) : sign);
			}
			env.erase(name);
		};
		rec(0, Coeff(1));
		return total;
	}

	int component(const IndexRef& r, const std::map<std::string, int>& env) const
	{
		int v = r.concrete ? r.value : env.at(r.name);
		auto comps = spec_.components();
		if (std::find(comps.begin(), comps.end(), v) == comps.end())
			throw DslError{r.pos, "component " + std::to_string(v) + " out of range"};
		return v;
	}

	Mode mode_of(const Node& n) const
	{
		if (ctx_ == Context::lagrangian && n.has_mode)
			throw DslError{n.pos, "mode labels are only allowed in gauge conditions"};
		if (ctx_ == Context::gauge && spec_.compact && !n.has_mode)
			throw DslError{n.pos, "missing mode label on '" + n.name + "'"};
		if (ctx_ == Context::gauge && !spec_.compact && n.has_mode)
			throw DslError{n.pos, "mode label without a compact dimension"};
		return n.mode;
	}

	bool param_known(const std::string& name) const
	{
		if (std::find(spec_.params.begin(), spec_.params.end(), name) != spec_.params.end())
			return true;
		return ctx_ == Context::gauge && spec_.compact && name == "n";
	}

	Expression symbol(const Node& n, std::map<std::string, int>& env)
	{
		if (param_known(n.name)) {
			if (!n.idx.empty() || n.has_mode)
				throw DslError{n.pos, "parameter '" + n.name + "' takes no index or mode"};
			return Expression(Coeff::param(n.name));
		}
		if (const FieldDecl* f = spec_.field(n.name)) {
			std::size_t want = f->rank == Rank::vector ? 1 : 0;
			if (n.idx.size() != want)
				throw DslError{n.pos, "field '" + n.name + "' takes " + std::to_string(want) + " index(es)"};
			int comp = want ? component(n.idx[0], env) : -1;
			return Expression::atom(Atom::field(n.name, comp, mode_of(n)));
		}
		if (n.name == "F") {
			const FieldDecl* vec = nullptr;
			int count = 0;
			for (auto& f : spec_.fields)
				if (f.rank == Rank::vector) {
					vec = &f;
					++count;
				}
			if (count != 1)
				throw DslError{n.pos, "'F' needs exactly one vector field"};
			if (n.idx.size() != 2)
				throw DslError{n.pos, "field strength takes two indices"};
			int a = component(n.idx[0], env), b = component(n.idx[1], env);
			Mode m = mode_of(n);
			auto A = [&](int c) { return Expression::atom(Atom::field(vec->name, c, m)); };
			return A(b).derivative(a) - A(a).derivative(b);
		}
		auto mom = momenta_.find(n.name);
		if (mom != momenta_.end()) {
			if (ctx_ != Context::gauge)
				throw DslError{n.pos, "momentum '" + n.name + "' is only allowed in gauge conditions"};
			std::size_t want = mom->second->rank == Rank::vector ? 1 : 0;
			if (n.idx.size() != want)
				throw DslError{n.pos, "momentum '" + n.name + "' takes " + std::to_string(want) + " index(es)"};
			int comp = want ? component(n.idx[0], env) : -1;
			return Expression::atom(Atom::momentum(n.name, comp, mode_of(n)));
		}
		throw DslError{n.pos, "undeclared symbol '" + n.name + "'"};
	}

	Expression core(const Node& n, std::map<std::string, int>& env)
	{
		switch (n.kind) {
		case Node::number:
			return Expression(n.value);
		case Node::symbol:
			return symbol(n, env);
		case Node::deriv: {
			int c = component(n.idx[0], env);
			return eval(*n.kids[0], env).derivative(c);
		}
		case Node::product: {
			Expression r = eval(*n.kids[0], env);
			for (std::size_t k = 1; k < n.kids.size(); ++k) {
				Expression f = eval(*n.kids[k], env);
				if (n.ops[k] == '*') {
					r *= f;
					continue;
				}
				Coeff c = f.constant_term();
				if (f.is_zero() || !(f == Expression(c)) || !c.is_unit())
					throw DslError{n.kids[k]->pos, "division only by nonzero numbers or parameter monomials"};
				r *= Expression(c.inverse());
			}
			return r;
		}
		case Node::sum: {
			Expression r;
			for (std::size_t k = 0; k < n.kids.size(); ++k) {
				Expression t = eval(*n.kids[k], env);
				r += n.ops[k] == '-' ? -t : t;
			}
			return r;
		}
		case Node::neg:
			return -eval(*n.kids[0], env);
		case Node::power: {
			Expression b = eval(*n.kids[0], env);
			if (n.exponent < 0) {
				Coeff c = b.constant_term();
				if (!(b == Expression(c)) || !c.is_unit())
					throw DslError{n.pos, "negative powers only of numbers or parameter monomials"};
				return Expression(pow(c, n.exponent));
			}
			Expression r(1);
			for (int k = 0; k < n.exponent; ++k)
				r *= b;
			return r;
		}
		}
		return {};
	}

	Expression scalar(Node& n)
	{
		auto free = analyze(n);
		if (!free.empty()) {
			auto& [name, occ] = *free.begin();
			throw DslError{occ.pos, "free index '" + name + "' in a scalar expression"};
		}
		std::map<std::string, int> env;
		return eval(n, env);
	}

private:
	const TheorySpec& spec_;
	Context ctx_;
	std::map<std::string, const FieldDecl*> momenta_;
};

struct ParityEntry {
	bool concrete = false;
	int value = 0;
	std::string name;
	Parity parity = Parity::even;
	Pos pos;
};

struct FieldStmt {
	FieldDecl decl;
	bool has_parity = false;
	std::vector<ParityEntry> entries;
	Pos pos;
};

struct Raw {
	std::optional<int> dim;
	Pos dim_pos;
	std::optional<std::vector<int>> metric;
	Pos metric_pos;
	std::optional<Compactification> compact;
	Pos compact_pos;
	std::vector<std::pair<std::string, Pos>> params;
	std::vector<FieldStmt> fields;
	NodePtr lagrangian;
	bool lagrangian_seen = false;
	Pos lagrangian_pos;
	struct Gauge {
		std::string name;
		Pos pos;
		std::vector<NodePtr> conds;
	};
	std::vector<Gauge> gauges;
};

Parity parse_parity_word(Parser& p)
{
	Token t = p.expect_ident();
	if (t.text == "even")
		return Parity::even;
	if (t.text == "odd")
		return Parity::odd;
	throw DslError{t.pos, "expected 'even' or 'odd', found '" + t.text + "'"};
}

void parse_statement(Parser& p, Raw& raw)
{
	Token kw = p.expect_ident();
	if (kw.text == "dim") {
		raw.dim_pos = kw.pos;
		raw.dim = std::stoi(p.expect_int().text);
		p.expect(";");
	} else if (kw.text == "metric") {
		raw.metric_pos = kw.pos;
		std::vector<int> m;
		p.expect("(");
		while (!p.is(")")) {
			if (p.is("+"))
				m.push_back(1);
			else if (p.is("-"))
				m.push_back(-1);
			else
				p.fail("'+' or '-'");
			p.next();
			if (p.is(","))
				p.next();
		}
		p.expect(")");
		p.expect(";");
		raw.metric = m;
	} else if (kw.text == "compact") {
		raw.compact_pos = kw.pos;
		Compactification c;
		c.coordinate = p.expect_ident().text;
		p.expect("on");
		p.expect("S1");
		p.expect("/");
		p.expect("Z2");
		p.expect("radius");
		c.radius = p.expect_ident().text;
		p.expect(";");
		raw.compact = c;
	} else if (kw.text == "param") {
		for (;;) {
			Token t = p.expect_ident();
			raw.params.emplace_back(t.text, t.pos);
			if (!p.is(","))
				break;
			p.next();
		}
		p.expect(";");
	} else if (kw.text == "field") {
		FieldStmt f;
		f.pos = kw.pos;
		f.decl.name = p.expect_ident().text;
		Token rank = p.expect_ident();
		if (rank.text == "scalar")
			f.decl.rank = Rank::scalar;
		else if (rank.text == "vector")
			f.decl.rank = Rank::vector;
		else
			throw DslError{rank.pos, "expected 'scalar' or 'vector', found '" + rank.text + "'"};
		if (p.is("parity")) {
			p.next();
			f.has_parity = true;
			p.expect("(");
			if (p.peek().kind == Tok::ident && (p.peek().text == "even" || p.peek().text == "odd") && p.peek(1).text != ":") {
				ParityEntry e;
				e.pos = p.peek().pos;
				e.parity = parse_parity_word(p);
				f.entries.push_back(e);
			} else {
				for (;;) {
					ParityEntry e;
					e.pos = p.peek().pos;
					if (p.peek().kind == Tok::integer) {
						e.concrete = true;
						e.value = std::stoi(p.next().text);
					} else {
						e.name = p.expect_ident().text;
					}
					p.expect(":");
					e.parity = parse_parity_word(p);
					f.entries.push_back(e);
					if (!p.is(","))
						break;
					p.next();
				}
			}
			p.expect(")");
		}
		p.expect(";");
		raw.fields.push_back(std::move(f));
	} else if (kw.text == "lagrangian") {
		raw.lagrangian_pos = kw.pos;
		raw.lagrangian_seen = true;
		p.expect("=");
		if (p.is(";")) {
			Token t = p.next();
			throw DslError{t.pos, "empty density"};
		}
		raw.lagrangian = p.expr();
		p.expect(";");
	} else if (kw.text == "gauge_fixing") {
		Raw::Gauge g;
		Token name = p.expect_ident();
		g.name = name.text;
		g.pos = name.pos;
		p.expect("{");
		while (!p.is("}")) {
			if (p.at_end())
				p.fail("'}'");
			g.conds.push_back(p.expr());
			p.expect("=");
			Token zero = p.expect_int();
			if (zero.text != "0")
				throw DslError{zero.pos, "gauge conditions must read '<expr> = 0'"};
			p.expect(";");
		}
		p.expect("}");
		if (g.conds.empty())
			throw DslError{g.pos, "gauge set '" + g.name + "' is empty"};
		raw.gauges.push_back(std::move(g));
	} else {
		throw DslError{kw.pos, "unknown statement '" + kw.text + "'"};
	}
}

void add(std::vector<Diagnostic>& d, Pos p, std::string msg) { d.push_back({p.line, p.col, std::move(msg)}); }

}

ParseResult parse_theory(std::string_view source)
{
	ParseResult res;
	auto& diags = res.diagnostics;
	try {
		Parser p(lex(source, diags));
		Raw raw;
		TheorySpec spec;
		try {
			p.expect("theory");
			spec.name = p.expect_ident().text;
			p.expect("{");
		} catch (const DslError& e) {
			add(diags, e.pos, e.message);
			return res;
		}
		while (!p.at_end() && !p.is("}")) {
			try {
				parse_statement(p, raw);
			} catch (const DslError& e) {
				add(diags, e.pos, e.message);
				p.recover();
			}
		}
		try {
			p.expect("}");
			if (!p.at_end())
				p.fail("end of input");
		} catch (const DslError& e) {
			add(diags, e.pos, e.message);
		}
		if (!diags.empty())
			return res;

		Pos top;
		if (!raw.dim)
			add(diags, top, "missing 'dim' declaration");
		else if (*raw.dim != 4 && *raw.dim != 5)
			add(diags, raw.dim_pos, "dimension must be 4 or 5");
		else
			spec.dimension = *raw.dim;
		if (!raw.metric)
			add(diags, top, "missing 'metric' declaration");
		else if (raw.metric->size() != spec.components().size())
			add(diags, raw.metric_pos, "metric signature length does not match the dimension");
		else
			spec.metric = *raw.metric;
		for (auto& [name, pos] : raw.params) {
			if (std::find(spec.params.begin(), spec.params.end(), name) != spec.params.end())
				add(diags, pos, "parameter '" + name + "' declared twice");
			else if (name == "d" || name == "F" || name == "n")
				add(diags, pos, "'" + name + "' is reserved");
			else
				spec.params.push_back(name);
		}
		if (raw.compact) {
			if (spec.dimension != 5)
				add(diags, raw.compact_pos, "compactification requires dim 5");
			if (std::find(spec.params.begin(), spec.params.end(), raw.compact->radius) == spec.params.end())
				add(diags, raw.compact_pos, "radius '" + raw.compact->radius + "' is not a declared parameter");
			spec.compact = raw.compact;
		}
		if (raw.fields.empty())
			add(diags, top, "no fields declared");
		for (auto& fs : raw.fields) {
			FieldDecl f = fs.decl;
			if (spec.field(f.name) || std::find(spec.params.begin(), spec.params.end(), f.name) != spec.params.end() ||
				f.name == "d" || f.name == "F") {
				add(diags, fs.pos, "symbol '" + f.name + "' declared twice or reserved");
				continue;
			}
			for (auto& e : fs.entries) {
				if (f.rank == Rank::scalar) {
					if (!e.name.empty() && e.name != f.name) {
						add(diags, e.pos, "scalar parity entry must name the field or be a bare parity");
						continue;
					}
					if (e.concrete) {
						add(diags, e.pos, "scalar field has no components");
						continue;
					}
					f.parity[-1] = e.parity;
					continue;
				}
				std::vector<int> comps;
				if (e.concrete) {
					comps = {e.value};
				} else {
					Evaluator ev(spec, Context::lagrangian);
					try {
						comps = ev.range(IndexRef{false, 0, e.name, e.pos});
					} catch (const DslError& err) {
						add(diags, err.pos, err.message);
						continue;
					}
				}
				auto all = spec.components();
				for (int c : comps) {
					if (std::find(all.begin(), all.end(), c) == all.end())
						add(diags, e.pos, "component " + std::to_string(c) + " out of range");
					else
						f.parity[c] = e.parity;
				}
			}
			if (spec.compact) {
				if (f.rank == Rank::scalar && !f.parity.count(-1))
					add(diags, fs.pos, "missing parity for field '" + f.name + "'");
				if (f.rank == Rank::vector)
					for (int c : spec.components())
						if (!f.parity.count(c))
							add(diags, fs.pos, "missing parity for component " + std::to_string(c) + " of field '" + f.name + "'");
			}
			spec.fields.push_back(f);
		}
		if (!diags.empty())
			return res;

		if (!raw.lagrangian_seen) {
			add(diags, top, "missing 'lagrangian' declaration");
			return res;
		}
		try {
			Evaluator ev(spec, Context::lagrangian);
			spec.lagrangian = ev.scalar(*raw.lagrangian);
			if (spec.lagrangian.is_zero())
				add(diags, raw.lagrangian_pos, "empty density");
		} catch (const DslError& e) {
			add(diags, e.pos, e.message);
		}
		for (auto& g : raw.gauges) {
			if (spec.gauge_set(g.name)) {
				add(diags, g.pos, "gauge set '" + g.name + "' declared twice");
				continue;
			}
			GaugeSet gs;
			gs.name = g.name;
			for (auto& c : g.conds) {
				try {
					Evaluator ev(spec, Context::gauge);
					Expression e = ev.scalar(*c);
					if (e.is_zero())
						add(diags, c->pos, "gauge condition vanishes identically");
					gs.conditions.push_back(e);
				} catch (const DslError& e) {
					add(diags, e.pos, e.message);
				}
			}
			spec.gauge_sets.push_back(gs);
		}
		if (diags.empty())
			res.spec = std::move(spec);
	} catch (const std::exception& e) {
		add(diags, Pos{}, std::string("internal parser error: ") + e.what());
		res.spec.reset();
	}
	return res;
}

static std::string parity_word(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::string render_theory(const TheorySpec& spec)
{
	std::string s = "theory " + spec.name + " {\n";
	s += "  dim " + std::to_string(spec.dimension) + ";\n";
	s += "  metric (";
	for (std::size_t i = 0; i < spec.metric.size(); ++i)
		s += std::string(i ? "," : "") + (spec.metric[i] > 0 ? "+" : "-");
	s += ");\n";
	if (spec.compact)
		s += "  compact " + spec.compact->coordinate + " on S1/Z2 radius " + spec.compact->radius + ";\n";
	if (!spec.params.empty()) {
		s += "  param ";
		for (std::size_t i = 0; i < spec.params.size(); ++i)
			s += (i ? ", " : "") + spec.params[i];
		s += ";\n";
	}
	for (auto& f : spec.fields) {
		s += "  field " + f.name + (f.rank == Rank::vector ? " vector" : " scalar");
		if (!f.parity.empty()) {
			s += " parity(";
			if (f.rank == Rank::scalar) {
				s += parity_word(f.parity.begin()->second);
			} else {
				std::vector<std::string> parts;
				std::map<int, Parity> rest = f.parity;
				bool spacetime = true;
				for (int c = 0; c < 4; ++c)
					spacetime = spacetime && rest.count(c) && rest.at(c) == rest.at(0);
				if (spacetime) {
					parts.push_back("mu: " + parity_word(rest.at(0)));
					for (int c = 0; c < 4; ++c)
						rest.erase(c);
				}
				for (auto& [c, p] : rest)
					parts.push_back(std::to_string(c) + ": " + parity_word(p));
				for (std::size_t i = 0; i < parts.size(); ++i)
					s += (i ? ", " : "") + parts[i];
			}
			s += ")";
		}
		s += ";\n";
	}
	s += "  lagrangian = " + spec.lagrangian.str() + ";\n";
	for (auto& g : spec.gauge_sets) {
		s += "  gauge_fixing " + g.name + " {\n";
		for (auto& c : g.conditions)
			s += "    " + c.str() + " = 0;\n";
		s += "  }\n";
	}
	return s + "}\n";
}

}
