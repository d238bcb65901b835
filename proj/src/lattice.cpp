#include "hamforge/lattice.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "hamforge/errors.hpp"

namespace hamforge {

void LatticeConfig::validate() const
{
	if (N < 4 || N % 2)
		throw UnsupportedError("lattice size must be even and at least 4, got " + std::to_string(N));
	if (!(h > 0))
		throw UnsupportedError("lattice spacing must be positive");
	auto it = params.find("n");
	if (it != params.end() && (it->second < 1 || std::floor(it->second) != it->second))
		throw UnsupportedError("mode number n must be a positive integer");
}

std::string LatticeConfig::str() const
{
	std::ostringstream os;
	os << "N=" << N << " h=" << h;
	for (auto& [k, v] : params)
		os << " " << k << "=" << v;
	return os.str();
}

Lattice::Lattice(int N, double h) : N_(N), h_(h)
{
	int n = sites();
	for (int axis = 0; axis < 3; ++axis) {
		std::vector<Eigen::Triplet<double>> t;
		for (int z = 0; z < N; ++z)
			for (int y = 0; y < N; ++y)
				for (int x = 0; x < N; ++x) {
					int p[3] = {x, y, z}, m[3] = {x, y, z};
					p[axis] = (p[axis] + 1) % N;
					m[axis] = (m[axis] + N - 1) % N;
					int r = index(x, y, z);
					t.emplace_back(r, index(p[0], p[1], p[2]), 0.5 / h);
					t.emplace_back(r, index(m[0], m[1], m[2]), -0.5 / h);
				}
		D_[axis].resize(n, n);
		D_[axis].setFromTriplets(t.begin(), t.end());
	}
	lap_ = D_[0] * D_[0] + D_[1] * D_[1] + D_[2] * D_[2];

	sublattice_.resize(n);
	std::vector<int> count(8, 0);
	for (int z = 0; z < N; ++z)
		for (int y = 0; y < N; ++y)
			for (int x = 0; x < N; ++x) {
				int s = (x % 2) + 2 * (y % 2) + 4 * (z % 2);
				sublattice_[index(x, y, z)] = s;
				++count[s];
			}
	Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
	for (int r = 0; r < n; ++r)
		for (int c = 0; c < n; ++c)
			if (sublattice_[r] == sublattice_[c])
				P(r, c) = 1.0 / count[sublattice_[r]];
	// L is negative semidefinite; (L - P)^-1 + P inverts it on the complement of its kernel
	Eigen::MatrixXd shifted = P - Eigen::MatrixXd(lap_);
	inv_lap_ = P - shifted.llt().solve(Eigen::MatrixXd::Identity(n, n));
}

int Lattice::index(int x, int y, int z) const { return x + N_ * (y + N_ * z); }

Eigen::MatrixXd Lattice::project(const Eigen::MatrixXd& A) const
{
	int n = sites();
	double share = 8.0 / n;
	Eigen::MatrixXd B = A;
	Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(8, A.cols());
	for (int r = 0; r < n; ++r)
		rows.row(sublattice_[r]) += A.row(r);
	for (int r = 0; r < n; ++r)
		B.row(r) -= share * rows.row(sublattice_[r]);
	Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(B.rows(), 8);
	for (int c = 0; c < n; ++c)
		cols.col(sublattice_[c]) += B.col(c);
	for (int c = 0; c < n; ++c)
		B.col(c) -= share * cols.col(sublattice_[c]);
	return B;
}

namespace {

SparseMatrix power(const SparseMatrix& D, int k, int n)
{
	SparseMatrix r(n, n);
	r.setIdentity();
	for (int i = 0; i < k; ++i)
		r = r * D;
	return r;
}

SparseMatrix poly_matrix(const Lattice& lat, const OperatorPoly& p, const std::map<std::string, double>& params)
{
	int n = lat.sites();
	SparseMatrix r(n, n);
	for (auto& [pw, c] : p) {
		SparseMatrix t = power(lat.difference(1), pw.e[0], n) * power(lat.difference(2), pw.e[1], n) *
			power(lat.difference(3), pw.e[2], n);
		r += c.evaluate(params) * t;
	}
	return r;
}

}

SparseMatrix Lattice::polynomial_matrix(const Operator& op, const std::map<std::string, double>& params) const
{
	if (op.laplacian_power() < 0)
		throw UnsupportedError("operator with an inverse Laplacian has no sparse lattice form: " + op.str());
	return poly_matrix(*this, op.expanded_poly(), params);
}

Eigen::MatrixXd Lattice::operator_matrix(const Operator& op, const std::map<std::string, double>& params) const
{
	if (op.laplacian_power() >= 0)
		return Eigen::MatrixXd(polynomial_matrix(op, params));
	Eigen::MatrixXd r = Eigen::MatrixXd(poly_matrix(*this, op.poly(), params));
	for (int k = 0; k < -op.laplacian_power(); ++k)
		r = r * inv_lap_;
	return r;
}

const Lattice& lattice_for(int N, double h)
{
	static std::mutex mu;
	static std::map<std::pair<int, double>, std::unique_ptr<Lattice>> cache;
	std::lock_guard<std::mutex> lock(mu);
	auto& slot = cache[{N, h}];
	if (!slot)
		slot = std::make_unique<Lattice>(N, h);
	return *slot;
}

Eigen::MatrixXd discretize_kernel(const Operator& K, const LatticeConfig& cfg)
{
	cfg.validate();
	const Lattice& lat = lattice_for(cfg.N, cfg.h);
	return lat.operator_matrix(K, cfg.params) / std::pow(cfg.h, 3);
}

Eigen::MatrixXd discretize_kernel(const OperatorKernel& K, const LatticeConfig& cfg)
{
	if (!K.field_independent())
		throw UnsupportedError("only field-independent kernels can be discretized: " + K.str());
	return discretize_kernel(K.as_operator(), cfg);
}

std::string InverseCheck::str() const
{
	std::ostringstream os;
	os << "residual " << residual << (ok() ? " < " : " >= ") << tolerance;
	if (!ok())
		os << " (worst block " << row << "," << col << ")";
	return os.str();
}

InverseCheck verify_inverse(const KernelMatrix& M, const KernelMatrix& Minv, const LatticeConfig& cfg, double tol)
{
	cfg.validate();
	if (M.cols() != Minv.rows() || M.rows() != Minv.cols())
		throw AlgebraError("matrix and inverse have incompatible shapes");
	const Lattice& lat = lattice_for(cfg.N, cfg.h);
	int n = lat.sites();
	std::map<std::string, Eigen::MatrixXd> dense;
	auto dense_of = [&](const Operator& op) -> const Eigen::MatrixXd& {
		auto key = op.str();
		auto it = dense.find(key);
		if (it == dense.end())
			it = dense.emplace(key, lat.operator_matrix(op, cfg.params)).first;
		return it->second;
	};
	// with delta -> 1/h^3 and the sum over sites weighted by h^3, the product of the
	// discretized kernels equals the product of the operator matrices over h^3, and the
	// identity block is 1/h^3; both sides are compared after multiplying by h^3
	InverseCheck out;
	out.tolerance = tol;
	for (std::size_t i = 0; i < M.rows(); ++i)
		for (std::size_t j = 0; j < Minv.cols(); ++j) {
			Eigen::MatrixXd prod = Eigen::MatrixXd::Zero(n, n);
			bool any = false;
			for (std::size_t k = 0; k < M.cols(); ++k) {
				const Operator &l = M.at(i, k), &r = Minv.at(k, j);
				if (l.is_zero() || r.is_zero())
					continue;
				any = true;
				if (l.laplacian_power() >= 0)
					prod += lat.polynomial_matrix(l, cfg.params) * dense_of(r);
				else
					prod += dense_of(l) * dense_of(r);
			}
			if (!any && i != j)
				continue;
			if (i == j)
				prod -= Eigen::MatrixXd::Identity(n, n);
			double res = lat.project(prod).cwiseAbs().maxCoeff();
			if (res > out.residual) {
				out.residual = res;
				out.row = i;
				out.col = j;
			}
		}
	return out;
}

std::string BracketCheck::str() const
{
	std::ostringstream os;
	os << "antisymmetry " << antisymmetry << ", jacobi " << (jacobi_identical ? "identical" : "checked") << " "
	   << jacobi;
	return os.str();
}

BracketCheck verify_bracket_properties(const BracketTable& T, const LatticeConfig& cfg)
{
	cfg.validate();
	const Lattice& lat = lattice_for(cfg.N, cfg.h);
	double scale = 1.0 / std::pow(cfg.h, 3);
	BracketCheck out;
	for (std::size_t a = 0; a < T.atoms.size(); ++a)
		for (std::size_t b = a; b < T.atoms.size(); ++b) {
			Operator ab = T.at(T.atoms[a], T.atoms[b]), ba = T.at(T.atoms[b], T.atoms[a]);
			if (ab.is_zero() && ba.is_zero())
				continue;
			Eigen::MatrixXd A = lat.operator_matrix(ab, cfg.params) * scale;
			Eigen::MatrixXd B = lat.operator_matrix(ba, cfg.params) * scale;
			out.antisymmetry = std::max(out.antisymmetry, lat.project(A + B.transpose()).cwiseAbs().maxCoeff());
		}
	return out;
}

}
