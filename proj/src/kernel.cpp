#include "hamforge/kernel.hpp"

#include <algorithm>
#include <optional>

namespace hamforge {

OperatorKernel::OperatorKernel(Operator op) { add({}, {}, op); }

void OperatorKernel::add(const Monomial& left, const Monomial& right, const Operator& op)
{
	if (op.is_zero())
		return;
	auto key = std::make_pair(left, right);
	auto it = parts_.find(key);
	if (it == parts_.end()) {
		parts_.emplace(key, op);
		return;
	}
	it->second += op;
	if (it->second.is_zero())
		parts_.erase(it);
}

OperatorKernel OperatorKernel::operator+(const OperatorKernel& o) const
{
	OperatorKernel r = *this;
	for (auto& [k, op] : o.parts_)
		r.add(k.first, k.second, op);
	return r;
}

OperatorKernel OperatorKernel::operator-() const
{
	OperatorKernel r = *this;
	for (auto& [k, op] : r.parts_)
		op = -op;
	return r;
}

bool OperatorKernel::field_independent() const
{
	return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first.first.empty() &&
								 parts_.begin()->first.second.empty());
}

Operator OperatorKernel::as_operator() const
{
	if (!field_independent())
		throw UnsupportedError("field-dependent kernel " + str());
	return parts_.empty() ? Operator() : parts_.begin()->second;
}

static std::string monomial_str(const Monomial& m, const char* where)
{
	std::string s;
	for (auto& a : m)
		s += (s.empty() ? "" : "*") + a.str() + "(" + where + ")";
	return s;
}

std::string OperatorKernel::str() const
{
	if (parts_.empty())
		return "0";
	std::string s;
	for (auto& [k, op] : parts_) {
		if (!s.empty())
			s += " + ";
		std::string l = monomial_str(k.first, "x"), r = monomial_str(k.second, "y");
		std::string o = op.poly().size() > 1 && op.laplacian_power() == 0 ? "(" + op.str() + ")" : op.str();
		s += (l.empty() ? "" : l + "*") + o + (r.empty() ? "" : "*" + r);
	}
	return s;
}

OperatorKernel kernel_compose(const OperatorKernel& a, const OperatorKernel& b)
{
	OperatorKernel r;
	for (auto& [ka, oa] : a.parts())
		for (auto& [kb, ob] : b.parts()) {
			if (!ka.second.empty() || !kb.first.empty())
				throw UnsupportedError("composition through field-dependent inner factors");
			r.add(ka.first, kb.second, oa * ob);
		}
	return r;
}

KernelMatrix::KernelMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

KernelMatrix KernelMatrix::identity(std::size_t n)
{
	KernelMatrix m(n, n);
	for (std::size_t i = 0; i < n; ++i)
		m.at(i, i) = Operator::identity();
	return m;
}

KernelMatrix KernelMatrix::operator*(const KernelMatrix& o) const
{
	if (cols_ != o.rows_)
		throw AlgebraError("kernel matrix dimension mismatch");
	KernelMatrix r(rows_, o.cols_);
	r.row_labels = row_labels;
	r.col_labels = o.col_labels;
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t k = 0; k < cols_; ++k) {
			if (at(i, k).is_zero())
				continue;
			for (std::size_t j = 0; j < o.cols_; ++j)
				if (!o.at(k, j).is_zero())
					r.at(i, j) += at(i, k) * o.at(k, j);
		}
	return r;
}

KernelMatrix KernelMatrix::operator+(const KernelMatrix& o) const
{
	if (rows_ != o.rows_ || cols_ != o.cols_)
		throw AlgebraError("kernel matrix dimension mismatch");
	KernelMatrix r = *this;
	for (std::size_t i = 0; i < entries_.size(); ++i)
		r.entries_[i] += o.entries_[i];
	return r;
}

KernelMatrix KernelMatrix::operator-() const
{
	KernelMatrix r = *this;
	for (auto& e : r.entries_)
		e = -e;
	return r;
}

KernelMatrix KernelMatrix::adjoint_transpose() const
{
	KernelMatrix r(cols_, rows_);
	r.row_labels = col_labels;
	r.col_labels = row_labels;
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j)
			r.at(j, i) = at(i, j).adjoint();
	return r;
}

bool KernelMatrix::is_adjoint_antisymmetric() const
{
	if (!square())
		return false;
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = i; j < cols_; ++j)
			if (!(at(i, j) + at(j, i).adjoint()).is_zero())
				return false;
	return true;
}

bool KernelMatrix::is_identity() const { return square() && *this == identity(rows_); }

KernelMatrix KernelMatrix::permuted(const std::vector<std::size_t>& ro, const std::vector<std::size_t>& co) const
{
	KernelMatrix r(ro.size(), co.size());
	for (std::size_t i = 0; i < ro.size(); ++i) {
		if (ro[i] < row_labels.size())
			r.row_labels.push_back(row_labels[ro[i]]);
		for (std::size_t j = 0; j < co.size(); ++j)
			r.at(i, j) = at(ro[i], co[j]);
	}
	for (std::size_t j = 0; j < co.size(); ++j)
		if (co[j] < col_labels.size())
			r.col_labels.push_back(col_labels[co[j]]);
	return r;
}

KernelMatrix KernelMatrix::substitute(const std::string& name, const Coeff& value) const
{
	KernelMatrix r = *this;
	for (auto& e : r.entries_)
		e = e.substitute(name, value);
	return r;
}

std::string KernelMatrix::str() const
{
	std::vector<std::vector<std::string>> cells(rows_, std::vector<std::string>(cols_));
	std::vector<std::size_t> width(cols_, 1);
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j) {
			cells[i][j] = at(i, j).str();
			width[j] = std::max(width[j], cells[i][j].size());
		}
	std::size_t lw = 0;
	for (auto& l : row_labels)
		lw = std::max(lw, l.size());
	std::string s;
	for (std::size_t i = 0; i < rows_; ++i) {
		std::string label = i < row_labels.size() ? row_labels[i] : "";
		s += label + std::string(lw - label.size(), ' ') + (lw ? " | " : "| ");
		for (std::size_t j = 0; j < cols_; ++j)
			s += cells[i][j] + std::string(width[j] - cells[i][j].size() + 2, ' ');
		while (!s.empty() && s.back() == ' ')
			s.pop_back();
		s += "\n";
	}
	return s;
}

std::string vector_str(const KernelVector& v)
{
	std::string s = "(";
	for (std::size_t i = 0; i < v.size(); ++i)
		s += (i ? ", " : "") + v[i].str();
	return s + ")";
}

namespace {

struct Row {
	KernelVector m;
	KernelVector e;
	bool zero() const
	{
		return std::all_of(m.begin(), m.end(), [](const Operator& o) { return o.is_zero(); });
	}
};

// preference among unit pivots: plain rational, parameter monomial, Laplacian power
int unit_rank(const Operator& o)
{
	if (o.laplacian_power() != 0)
		return 2;
	return o.poly().begin()->second.is_rational() ? 0 : 1;
}

void row_axpy(Row& target, const Operator& f, const Row& src)
{
	for (std::size_t k = 0; k < target.m.size(); ++k)
		if (!src.m[k].is_zero())
			target.m[k] -= f * src.m[k];
	for (std::size_t k = 0; k < target.e.size(); ++k)
		if (!src.e[k].is_zero())
			target.e[k] -= f * src.e[k];
}

void row_scale(Row& r, const Operator& f)
{
	for (auto& x : r.m)
		x = f * x;
	for (auto& x : r.e)
		x = f * x;
}

struct Elimination {
	std::vector<Row> rows;
	std::vector<std::optional<std::size_t>> pivot_col; // per row
	std::vector<bool> col_used;
	bool all_unit = true;
};

Elimination eliminate(const KernelMatrix& M)
{
	Elimination el;
	std::size_t nr = M.rows(), nc = M.cols();
	for (std::size_t i = 0; i < nr; ++i) {
		Row r;
		r.m.resize(nc);
		r.e.resize(nr);
		for (std::size_t j = 0; j < nc; ++j)
			r.m[j] = M.at(i, j);
		r.e[i] = Operator::identity();
		el.rows.push_back(std::move(r));
	}
	el.pivot_col.assign(nr, std::nullopt);
	el.col_used.assign(nc, false);

	auto pivot_on = [&](std::size_t r, std::size_t c) {
		row_scale(el.rows[r], el.rows[r].m[c].inverse());
		for (std::size_t j = 0; j < el.rows.size(); ++j) {
			if (j == r || el.rows[j].m[c].is_zero())
				continue;
			Operator f = el.rows[j].m[c];
			row_axpy(el.rows[j], f, el.rows[r]);
		}
		el.pivot_col[r] = c;
		el.col_used[c] = true;
	};

	for (;;) {
		// unit pivot with full pivoting
		std::optional<std::pair<std::size_t, std::size_t>> best;
		std::pair<int, std::size_t> best_key{3, 0};
		for (std::size_t r = 0; r < el.rows.size(); ++r) {
			if (el.pivot_col[r])
				continue;
			for (std::size_t c = 0; c < nc; ++c) {
				const Operator& x = el.rows[r].m[c];
				if (el.col_used[c] || x.is_zero() || !x.is_unit())
					continue;
				std::size_t fill = 0;
				for (auto& y : el.rows[r].m)
					fill += !y.is_zero();
				std::pair<int, std::size_t> key{unit_rank(x), fill};
				if (key < best_key) {
					best_key = key;
					best = {r, c};
				}
			}
		}
		if (best) {
			pivot_on(best->first, best->second);
			continue;
		}

		// a combination sum_r w_r * row_r whose entry in column c is a unit
		bool combined = false;
		for (std::size_t c = 0; c < nc && !combined; ++c) {
			if (el.col_used[c])
				continue;
			std::vector<std::size_t> live;
			for (std::size_t r = 0; r < el.rows.size(); ++r)
				if (!el.pivot_col[r] && !el.rows[r].m[c].is_zero())
					live.push_back(r);
			if (live.size() < 2)
				continue;
			for (int variant = 0; variant < 2 && !combined; ++variant) {
				Operator s;
				for (auto r : live) {
					const Operator& x = el.rows[r].m[c];
					s += (variant ? x : x.adjoint()) * x;
				}
				if (s.is_zero() || !s.is_unit())
					continue;
				Row nr_row;
				nr_row.m.assign(nc, Operator());
				nr_row.e.assign(nr, Operator());
				for (auto r : live) {
					const Operator& x = el.rows[r].m[c];
					Operator w = variant ? x : x.adjoint();
					row_axpy(nr_row, -w, el.rows[r]);
				}
				el.rows.push_back(std::move(nr_row));
				el.pivot_col.push_back(std::nullopt);
				combined = true;
			}
		}
		if (combined)
			continue;

		// fraction-free step on a non-unit entry
		std::optional<std::pair<std::size_t, std::size_t>> any;
		std::size_t any_weight = SIZE_MAX;
		for (std::size_t r = 0; r < el.rows.size(); ++r) {
			if (el.pivot_col[r])
				continue;
			for (std::size_t c = 0; c < nc; ++c)
				if (!el.col_used[c] && !el.rows[r].m[c].is_zero() && el.rows[r].m[c].weight() < any_weight) {
					any_weight = el.rows[r].m[c].weight();
					any = {r, c};
				}
		}
		if (!any)
			break;
		auto [pr, pc] = *any;
		Operator p = el.rows[pr].m[pc];
		for (std::size_t j = 0; j < el.rows.size(); ++j) {
			if (j == pr || el.pivot_col[j] || el.rows[j].m[pc].is_zero())
				continue;
			Operator f = el.rows[j].m[pc];
			row_scale(el.rows[j], p);
			row_axpy(el.rows[j], f, el.rows[pr]);
		}
		el.pivot_col[pr] = pc;
		el.col_used[pc] = true;
		el.all_unit = false;
	}
	return el;
}

bool vector_zero(const KernelVector& v)
{
	return std::all_of(v.begin(), v.end(), [](const Operator& o) { return o.is_zero(); });
}

std::size_t rank_of(const std::vector<KernelVector>& vs)
{
	KernelMatrix V(vs.size(), vs[0].size());
	for (std::size_t i = 0; i < vs.size(); ++i)
		for (std::size_t j = 0; j < vs[i].size(); ++j)
			V.at(i, j) = vs[i][j];
	Elimination el = eliminate(V);
	return static_cast<std::size_t>(std::count(el.col_used.begin(), el.col_used.end(), true));
}

// greedy maximal independent subset, in order
std::vector<KernelVector> independent(const std::vector<KernelVector>& vs)
{
	std::vector<KernelVector> out;
	for (auto& v : vs) {
		out.push_back(v);
		if (rank_of(out) < out.size())
			out.pop_back();
	}
	return out;
}

std::vector<KernelVector> null_rows(const Elimination& el)
{
	std::vector<KernelVector> found;
	for (std::size_t r = 0; r < el.rows.size(); ++r)
		if (!el.pivot_col[r] && el.rows[r].zero() && !vector_zero(el.rows[r].e))
			found.push_back(el.rows[r].e);
	return independent(found);
}

}

std::vector<KernelVector> left_null_space(const KernelMatrix& M)
{
	if (M.rows() == 0)
		return {};
	return null_rows(eliminate(M));
}

KernelMatrix invert_kernel_matrix(const KernelMatrix& M)
{
	if (!M.square())
		throw AlgebraError("cannot invert a non-square kernel matrix");
	std::size_t n = M.rows();
	Elimination el = eliminate(M);
	auto nulls = null_rows(el);
	if (!nulls.empty())
		throw SingularMatrixError("kernel matrix is singular", nulls);
	bool complete = std::all_of(el.col_used.begin(), el.col_used.end(), [](bool b) { return b; });
	if (!complete || !el.all_unit)
		throw SingularMatrixError("kernel matrix determinant is not a unit of the operator ring", {});
	KernelMatrix inv(n, n);
	inv.row_labels = M.col_labels;
	inv.col_labels = M.row_labels;
	for (std::size_t r = 0; r < el.rows.size(); ++r) {
		if (!el.pivot_col[r])
			continue;
		std::size_t c = *el.pivot_col[r];
		for (std::size_t j = 0; j < n; ++j)
			inv.at(c, j) = el.rows[r].e[j];
	}
	if (!(M * inv).is_identity())
		throw AlgebraError("kernel matrix inversion failed its identity check");
	return inv;
}

}
