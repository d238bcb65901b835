#include "oracles.hpp"

#include <tuple>

namespace hamforge::testkit {

namespace {

Expression half(const Expression& e) { return Coeff(Rational(1, 2)) * e; }

Expression sum_spatial(const std::function<Expression(int)>& f)
{
	Expression r;
	for (int i = 1; i <= 3; ++i)
		r += f(i);
	return r;
}

Expression maxwell_density(Mode m)
{
	Expression r;
	for (int mu = 0; mu < 4; ++mu)
		for (int nu = 0; nu < 4; ++nu) {
			Expression F = A(nu, m).derivative(mu) - A(mu, m).derivative(nu);
			r += Coeff(Rational(-1, 4) * eta4(mu) * eta4(nu)) * F * F;
		}
	return r;
}

Expression contracted(const std::function<Expression(int)>& f, const std::function<Expression(int)>& g)
{
	Expression r;
	for (int mu = 0; mu < 4; ++mu)
		r += Coeff(eta4(mu)) * f(mu) * g(mu);
	return r;
}

Atom rho(Mode m) { return Atom::multiplier("rho", -1, m); }
Atom eta_mult(Mode m) { return Atom::multiplier("eta", -1, m); }

KernelMatrix from_rows(const std::vector<std::vector<Operator>>& rows)
{
	KernelMatrix M(rows.size(), rows.front().size());
	for (std::size_t r = 0; r < rows.size(); ++r)
		for (std::size_t c = 0; c < rows[r].size(); ++c)
			M.at(r, c) = rows[r][c];
	return M;
}

}

int eta4(int mu) { return mu == 0 ? 1 : -1; }

Expression stueckelberg_density(Mode m)
{
	auto B = [&](int mu) { return A(mu, m) + theta(m).derivative(mu); };
	Expression L = maxwell_density(m) + m2() * contracted(B, B);
	if (m != Mode::kk)
		return L;
	auto C = [&](int mu) { return A(5, m).derivative(mu) + n_over_R() * A(mu, m); };
	Expression D = A(5, m) - n_over_R() * theta(m);
	return L + half(contracted(C, C)) - m2() * D * D;
}

Expression unitary_density(Mode m)
{
	if (m != Mode::kk)
		return stueckelberg_density(m);
	auto Am = [&](int mu) { return A(mu, m); };
	auto dth = [&](int mu) { return theta(m).derivative(mu); };
	Coeff mass = m2() + Coeff(Rational(1, 2)) * n_over_R() * n_over_R();
	return maxwell_density(m) + mass * contracted(Am, Am) + Coeff(2) * m2() * contracted(Am, dth) +
		m2() * contracted(dth, dth) - m2() * n_over_R() * n_over_R() * theta(m) * theta(m);
}

Expression hamiltonian_density(Mode m)
{
	Expression H = half(sum_spatial([&](int i) { return Pi(i, m) * Pi(i, m); })) +
		Coeff(Rational(1, 4)) * Coeff::param("m", -2) * P(m) * P(m);
	for (int i = 1; i <= 3; ++i)
		for (int j = 1; j <= 3; ++j) {
			Expression F = A(j, m).derivative(i) - A(i, m).derivative(j);
			H += Coeff(Rational(1, 4)) * F * F;
		}
	Expression g = gauss(m);
	H -= A(0, m) * g;
	H += m2() * sum_spatial([&](int i) {
		Expression B = A(i, m) + theta(m).derivative(i);
		return B * B;
	});
	if (m == Mode::kk) {
		H += half(Pi(5, m) * Pi(5, m));
		H += half(sum_spatial([&](int i) {
			Expression C = A(5, m).derivative(i) + n_over_R() * A(i, m);
			return C * C;
		}));
		Expression D = A(5, m) - n_over_R() * theta(m);
		H += m2() * D * D;
	}
	return H;
}

std::map<Atom, Expression> momenta(Mode m)
{
	std::map<Atom, Expression> r;
	r[Pi_atom(0, m)] = Expression();
	for (int i = 1; i <= 3; ++i)
		r[Pi_atom(i, m)] = A(i, m).derivative(0) - A(0, m).derivative(i);
	r[P_atom(m)] = Coeff(2) * m2() * (A(0, m) + theta(m).derivative(0));
	if (m == Mode::kk)
		r[Pi_atom(5, m)] = A(5, m).derivative(0) + n_over_R() * A(0, m);
	return r;
}

Expression gauss(Mode m)
{
	Expression g = sum_spatial([&](int i) { return Pi(i, m).derivative(i); }) + P(m);
	if (m == Mode::kk)
		g += n_over_R() * Pi(5, m);
	return g;
}

std::map<Atom, Expression> gauge_transformations(Mode m)
{
	std::map<Atom, Expression> r;
	for (int mu = 0; mu < 4; ++mu)
		r[A_atom(mu, m)] = -eps(m).derivative(mu);
	if (m == Mode::kk)
		r[A_atom(5, m)] = n_over_R() * eps(m);
	r[theta_atom(m)] = eps(m);
	return r;
}

KernelMatrix coulomb_C()
{
	return from_rows({{0, lap(), 0, 0}, {-lap(), 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
}

KernelMatrix coulomb_C_inverse()
{
	return from_rows({{0, -inv_lap(), 0, 0}, {inv_lap(), 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
}

KernelMatrix coulomb_C_inverse_printed()
{
	return from_rows({{0, -inv_lap(), 0, 0}, {inv_lap(), 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
}

KernelMatrix axial_C()
{
	Operator a = n_over_R();
	return from_rows({{0, a, 0, 1}, {-a, 0, 0, 0}, {0, 0, 0, -a}, {-1, 0, a, 0}});
}

KernelMatrix axial_C_inverse()
{
	Operator b = R_over_n();
	return from_rows({{0, -b, 0, 0}, {b, 0, b * b, 0}, {0, -b * b, 0, b}, {0, 0, -b, 0}});
}

KernelMatrix axial_C_inverse_printed()
{
	Operator b = R_over_n();
	return from_rows({{0, -b, 0, 0}, {b, 0, 1, 0}, {0, -1, 0, b}, {0, 0, -b, 0}});
}

BracketTable bracket_table(const std::string& kind, const std::vector<Atom>& atoms,
	const std::vector<std::tuple<Atom, Atom, Operator>>& listed)
{
	BracketTable t;
	t.kind = kind;
	t.atoms = atoms;
	for (auto& [a, b, op] : listed) {
		t.set(a, b, op);
		t.set(b, a, -op.adjoint());
	}
	return t;
}

BracketTable zero_mode_brackets(const std::string& kind)
{
	Mode z = Mode::zero;
	std::vector<Atom> atoms;
	std::vector<std::tuple<Atom, Atom, Operator>> listed;
	for (int i = 1; i <= 3; ++i) {
		atoms.push_back(A_atom(i, z));
		atoms.push_back(Pi_atom(i, z));
	}
	atoms.push_back(theta_atom(z));
	atoms.push_back(P_atom(z));
	for (int i = 1; i <= 3; ++i) {
		for (int j = 1; j <= 3; ++j)
			listed.emplace_back(A_atom(i, z), Pi_atom(j, z), delta(i, j) - d(j) * d(i) * inv_lap());
		listed.emplace_back(Pi_atom(i, z), theta_atom(z), d(i) * inv_lap());
	}
	listed.emplace_back(P_atom(z), theta_atom(z), Operator(-1));
	return bracket_table(kind, atoms, listed);
}

BracketTable kk_mode_brackets(const std::string& kind)
{
	Mode k = Mode::kk;
	std::vector<Atom> atoms;
	std::vector<std::tuple<Atom, Atom, Operator>> listed;
	for (int i = 1; i <= 3; ++i) {
		atoms.push_back(A_atom(i, k));
		atoms.push_back(Pi_atom(i, k));
	}
	atoms.push_back(A_atom(5, k));
	atoms.push_back(Pi_atom(5, k));
	atoms.push_back(theta_atom(k));
	atoms.push_back(P_atom(k));
	for (int i = 1; i <= 3; ++i) {
		for (int j = 1; j <= 3; ++j)
			if (i == j)
				listed.emplace_back(A_atom(i, k), Pi_atom(j, k), Operator(1));
		listed.emplace_back(Pi_atom(5, k), A_atom(i, k), Operator(R_over_n()) * d(i));
	}
	// -{Pi5, A5} C^{01} {P, theta} with C^{01} = -R/n
	listed.emplace_back(Pi_atom(5, k), theta_atom(k), Operator(R_over_n()));
	listed.emplace_back(theta_atom(k), P_atom(k), Operator(1));
	return bracket_table(kind, atoms, listed);
}

KernelMatrix build_display(const std::vector<std::vector<Atom>>& blocks, const std::vector<DisplayEntry>& entries,
	Reading reading)
{
	std::vector<std::size_t> offset;
	std::size_t n = 0;
	for (auto& b : blocks) {
		offset.push_back(n);
		n += b.size();
	}
	KernelMatrix M(n, n);
	for (auto& b : blocks)
		for (auto& a : b) {
			M.row_labels.push_back(a.str());
			M.col_labels.push_back(a.str());
		}
	for (auto& e : entries) {
		bool upper = e.row < e.col;
		bool flip = (upper && (reading == Reading::upper_y || reading == Reading::both_y)) ||
			(!upper && (reading == Reading::lower_y || reading == Reading::both_y));
		auto& rb = blocks[e.row];
		auto& cb = blocks[e.col];
		for (std::size_t a = 0; a < rb.size(); ++a)
			for (std::size_t b = 0; b < cb.size(); ++b) {
				// vector blocks are indexed 1..3, scalar blocks by 0
				int i = rb.size() == 3 ? static_cast<int>(a) + 1 : 0;
				int j = cb.size() == 3 ? static_cast<int>(b) + 1 : 0;
				Operator v = e.value(i, j);
				// d acting on y is -d acting on x
				M.at(offset[e.row] + a, offset[e.col] + b) = flip ? v.adjoint() : v;
			}
	}
	return M;
}

std::vector<std::vector<Atom>> zero_mode_blocks(bool with_A0, bool with_multipliers)
{
	Mode z = Mode::zero;
	std::vector<std::vector<Atom>> b(2);
	for (int i = 1; i <= 3; ++i) {
		b[0].push_back(A_atom(i, z));
		b[1].push_back(Pi_atom(i, z));
	}
	b.push_back({theta_atom(z)});
	b.push_back({P_atom(z)});
	if (with_A0)
		b.push_back({A_atom(0, z)});
	if (with_multipliers) {
		b.push_back({rho(z)});
		b.push_back({eta_mult(z)});
	}
	return b;
}

std::vector<std::vector<Atom>> kk_mode_blocks()
{
	Mode k = Mode::kk;
	std::vector<std::vector<Atom>> b(2);
	for (int i = 1; i <= 3; ++i) {
		b[0].push_back(A_atom(i, k));
		b[1].push_back(Pi_atom(i, k));
	}
	b.push_back({A_atom(5, k)});
	b.push_back({Pi_atom(5, k)});
	b.push_back({theta_atom(k)});
	b.push_back({P_atom(k)});
	b.push_back({rho(k)});
	b.push_back({eta_mult(k)});
	return b;
}

KernelMatrix zero_mode_f0_display()
{
	auto one = [](int, int) { return Operator(1); };
	auto minus_one = [](int, int) { return Operator(-1); };
	return build_display(zero_mode_blocks(true, false),
		{
			{0, 1, [](int i, int j) { return -delta(i, j); }},
			{1, 0, [](int i, int j) { return delta(i, j); }},
			{2, 3, minus_one},
			{3, 2, one},
		},
		Reading::literal);
}

// blocks A, Pi, theta, P, rho, eta
KernelMatrix zero_mode_f2_display(Reading r)
{
	return build_display(zero_mode_blocks(false, true),
		{
			{0, 1, [](int i, int j) { return -delta(i, j); }},
			{0, 5, [](int i, int) { return -d(i); }},
			{1, 0, [](int i, int j) { return delta(i, j); }},
			{1, 4, [](int i, int) { return -d(i); }},
			{2, 3, [](int, int) { return Operator(-1); }},
			{3, 2, [](int, int) { return Operator(1); }},
			{3, 4, [](int, int) { return Operator(-1); }},
			{4, 1, [](int, int j) { return d(j); }},
			{4, 3, [](int, int) { return Operator(1); }},
			{5, 0, [](int, int j) { return d(j); }},
		},
		r);
}

KernelMatrix zero_mode_f2_inverse_display(Reading r)
{
	return build_display(zero_mode_blocks(false, true),
		{
			{0, 1, [](int i, int j) { return delta(i, j) - d(i) * d(j) * inv_lap(); }},
			{0, 5, [](int i, int) { return d(i) * inv_lap(); }},
			{1, 0, [](int i, int j) { return -delta(i, j) + d(i) * d(j) * inv_lap(); }},
			{1, 2, [](int i, int) { return d(i) * inv_lap(); }},
			{1, 4, [](int i, int) { return d(i) * inv_lap(); }},
			{2, 1, [](int, int j) { return -d(j) * inv_lap(); }},
			{2, 3, [](int, int) { return Operator(1); }},
			{2, 5, [](int, int) { return inv_lap(); }},
			{3, 2, [](int, int) { return Operator(-1); }},
			{4, 1, [](int, int j) { return -d(j) * inv_lap(); }},
			{4, 5, [](int, int) { return inv_lap(); }},
			{5, 0, [](int, int j) { return -d(j) * inv_lap(); }},
			{5, 2, [](int, int) { return -inv_lap(); }},
			{5, 4, [](int, int) { return -inv_lap(); }},
		},
		r);
}

// blocks A, Pi, A5, Pi5, theta, P, rho, eta
KernelMatrix kk_mode_f2_inverse_display(Reading r)
{
	Operator b = R_over_n();
	auto c = [](Operator v) { return [v](int, int) { return v; }; };
	return build_display(kk_mode_blocks(),
		{
			{0, 1, [](int i, int j) { return delta(i, j); }},
			{0, 3, [b](int i, int) { return -b * d(i); }},
			{0, 7, [b](int i, int) { return b * d(i); }},
			{1, 0, [](int i, int j) { return -delta(i, j); }},
			{2, 7, c(1)},
			{3, 0, [b](int, int j) { return b * d(j); }},
			{3, 4, c(b)},
			{3, 6, c(b)},
			{4, 3, c(-b)},
			{4, 5, c(1)},
			{4, 7, c(b)},
			{5, 4, c(-1)},
			{6, 3, c(-b)},
			{6, 7, c(b)},
			{7, 0, [b](int, int j) { return -b * d(j); }},
			{7, 2, c(-1)},
			{7, 4, c(-b)},
			{7, 6, c(-b)},
		},
		r);
}

std::vector<std::string> compare_by_labels(const KernelMatrix& expected, const KernelMatrix& actual)
{
	std::vector<std::string> out;
	auto find = [](const std::vector<std::string>& v, const std::string& s) -> long {
		for (std::size_t i = 0; i < v.size(); ++i)
			if (v[i] == s)
				return static_cast<long>(i);
		return -1;
	};
	if (expected.rows() != actual.rows() || expected.cols() != actual.cols())
		out.push_back("shape " + std::to_string(actual.rows()) + "x" + std::to_string(actual.cols()) + ", expected " +
			std::to_string(expected.rows()) + "x" + std::to_string(expected.cols()));
	for (std::size_t r = 0; r < expected.rows(); ++r)
		for (std::size_t c = 0; c < expected.cols(); ++c) {
			long ar = find(actual.row_labels, expected.row_labels[r]);
			long ac = find(actual.col_labels, expected.col_labels[c]);
			if (ar < 0 || ac < 0) {
				out.push_back("missing label " + expected.row_labels[r] + "/" + expected.col_labels[c]);
				continue;
			}
			const Operator& want = expected.at(r, c);
			const Operator& got = actual.at(ar, ac);
			if (!(want == got))
				out.push_back("(" + expected.row_labels[r] + ", " + expected.col_labels[c] + "): expected " +
					want.str() + ", got " + got.str());
		}
	return out;
}

}
