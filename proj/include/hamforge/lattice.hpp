#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hamforge/kernel.hpp"
#include "hamforge/operator.hpp"
#include "hamforge/phase.hpp"

namespace hamforge {

struct LatticeConfig {
	int N = 8;
	double h = 1.0;
	// numeric values for m, R, n, ...
	std::map<std::string, double> params;

	// N >= 4 and even, h > 0, n a positive integer when present
	void validate() const;
	std::string str() const;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

// periodic N^3 grid with central differences; the discrete Laplacian is sum_i D_i^2 so
// that discretization respects operator products exactly
class Lattice {
public:
	explicit Lattice(int N, double h = 1.0);

	int N() const { return N_; }
	double h() const { return h_; }
	int sites() const { return N_ * N_ * N_; }
	int index(int x, int y, int z) const;

	const SparseMatrix& difference(int axis) const { return D_[axis - 1]; }
	const SparseMatrix& laplacian() const { return lap_; }
	// pseudo-inverse of the Laplacian: inverse on the complement of its kernel
	const Eigen::MatrixXd& inverse_laplacian() const { return inv_lap_; }
	// Q A Q where Q removes the kernel of the Laplacian: functions constant on each of the
	// eight parity sublattices (the constant mode among them)
	Eigen::MatrixXd project(const Eigen::MatrixXd& A) const;

	// matrix of op(d) acting on delta, without the 1/h^3 of the delta normalisation
	Eigen::MatrixXd operator_matrix(const Operator& op, const std::map<std::string, double>& params) const;
	// sparse form for operators without inverse Laplacians
	SparseMatrix polynomial_matrix(const Operator& op, const std::map<std::string, double>& params) const;

private:
	int N_;
	double h_;
	SparseMatrix D_[3];
	SparseMatrix lap_;
	Eigen::MatrixXd inv_lap_;
	std::vector<int> sublattice_;
};

const Lattice& lattice_for(int N, double h);

// K(d) delta(x-y) -> matrix with delta mapped to identity/h^3
Eigen::MatrixXd discretize_kernel(const OperatorKernel& K, const LatticeConfig& cfg);
Eigen::MatrixXd discretize_kernel(const Operator& K, const LatticeConfig& cfg);

struct InverseCheck {
	double residual = 0;
	double tolerance = 0;
	// block with the largest deviation
	std::size_t row = 0, col = 0;
	bool ok() const { return residual < tolerance; }
	std::string str() const;
};

// max |Q (M Minv - 1) Q| over all blocks, composition taken with the lattice measure
InverseCheck verify_inverse(const KernelMatrix& M, const KernelMatrix& Minv, const LatticeConfig& cfg,
	double tol = 1e-10);

struct BracketCheck {
	double antisymmetry = 0;
	// entries are c-number kernels, so {a,{b,c}} vanishes term by term
	bool jacobi_identical = true;
	double jacobi = 0;
	std::string str() const;
};

BracketCheck verify_bracket_properties(const BracketTable& T, const LatticeConfig& cfg);

}
