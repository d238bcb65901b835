#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hamforge/errors.hpp"
#include "hamforge/expression.hpp"
#include "hamforge/operator.hpp"

namespace hamforge {

// Kernel sum_k  L_k(x) * O_k(d_x) delta(x-y) * R_k(y); the left and right factors are
// monomials in field atoms. Field-independent kernels have both factors empty.
class OperatorKernel {
public:
	OperatorKernel() = default;
	OperatorKernel(Operator op);

	void add(const Monomial& left, const Monomial& right, const Operator& op);
	OperatorKernel operator+(const OperatorKernel& o) const;
	OperatorKernel operator-() const;
	OperatorKernel operator-(const OperatorKernel& o) const { return *this + (-o); }
	bool operator==(const OperatorKernel& o) const = default;

	bool is_zero() const { return parts_.empty(); }
	bool field_independent() const;
	Operator as_operator() const;
	const std::map<std::pair<Monomial, Monomial>, Operator>& parts() const { return parts_; }
	std::string str() const;

private:
	std::map<std::pair<Monomial, Monomial>, Operator> parts_;
};

OperatorKernel kernel_compose(const OperatorKernel& a, const OperatorKernel& b);

class KernelMatrix {
public:
	KernelMatrix() = default;
	KernelMatrix(std::size_t rows, std::size_t cols);
	static KernelMatrix identity(std::size_t n);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	bool square() const { return rows_ == cols_; }
	const Operator& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
	Operator& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

	std::vector<std::string> row_labels;
	std::vector<std::string> col_labels;

	KernelMatrix operator*(const KernelMatrix& o) const;
	KernelMatrix operator+(const KernelMatrix& o) const;
	KernelMatrix operator-() const;
	bool operator==(const KernelMatrix& o) const
	{
		return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
	}

	// entry (c,r) replaced by the adjoint of entry (r,c)
	KernelMatrix adjoint_transpose() const;
	bool is_adjoint_antisymmetric() const;
	bool is_identity() const;
	KernelMatrix permuted(const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order) const;
	KernelMatrix substitute(const std::string& name, const Coeff& value) const;

	std::string str() const;

private:
	std::size_t rows_ = 0, cols_ = 0;
	std::vector<Operator> entries_;
};

using KernelVector = std::vector<Operator>;

struct SingularMatrixError : Error {
	SingularMatrixError(std::string what, std::vector<KernelVector> null_space)
		: Error(std::move(what)), left_null_space(std::move(null_space))
	{
	}
	std::vector<KernelVector> left_null_space;
};

// u with sum_r u_r * M(r, c) = 0 for every column, over the operator ring
std::vector<KernelVector> left_null_space(const KernelMatrix& M);
KernelMatrix invert_kernel_matrix(const KernelMatrix& M);
std::string vector_str(const KernelVector& v);

}
