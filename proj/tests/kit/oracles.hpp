#pragma once

// Reference objects written down directly from the closed-form results of the
// compactified Stueckelberg model, built with the expression algebra only and never
// with the engines under test.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hamforge/kernel.hpp"
#include "hamforge/phase.hpp"
#include "support.hpp"

namespace hamforge::testkit {

// metric (+,-,-,-) on 4D indices
int eta4(int mu);

// effective 4D Lagrangian of the zero mode and of a representative KK mode
Expression stueckelberg_density(Mode m);
// the same KK density after the unitary gauge eps = -(R/n) A5
Expression unitary_density(Mode m);
// canonical Hamiltonian density, spatial indices summed with unit weight
Expression hamiltonian_density(Mode m);

// Pi[0], Pi[i], P and (KK) Pi[5] as functions of velocities
std::map<Atom, Expression> momenta(Mode m);
// Gauss-type secondary
Expression gauss(Mode m);
// delta of each field under the gauge parameter epsilon
std::map<Atom, Expression> gauge_transformations(Mode m);

// second-class matrices of the Coulomb-type zero-mode gauge and the KK axial gauge,
// together with their inverses (the printed ones and the algebraically consistent ones)
KernelMatrix coulomb_C();
KernelMatrix coulomb_C_inverse();
KernelMatrix coulomb_C_inverse_printed();
KernelMatrix axial_C();
KernelMatrix axial_C_inverse();
KernelMatrix axial_C_inverse_printed();

// listed entries plus their antisymmetric partners {b,a} = -adjoint {a,b}
BracketTable bracket_table(const std::string& kind, const std::vector<Atom>& atoms,
	const std::vector<std::tuple<Atom, Atom, Operator>>& listed);
BracketTable zero_mode_brackets(const std::string& kind);
BracketTable kk_mode_brackets(const std::string& kind);

// block matrices as displayed in print: vector blocks carry three components, an entry
// is given per component pair (0 for a scalar block)
struct DisplayEntry {
	int row, col;
	std::function<Operator(int, int)> value;
};

// which triangle is written with derivatives acting on the second argument y
enum class Reading { literal, upper_y, lower_y, both_y };

KernelMatrix build_display(const std::vector<std::vector<Atom>>& blocks, const std::vector<DisplayEntry>& entries,
	Reading reading);

std::vector<std::vector<Atom>> zero_mode_blocks(bool with_A0, bool with_multipliers);
std::vector<std::vector<Atom>> kk_mode_blocks();

KernelMatrix zero_mode_f0_display();
KernelMatrix zero_mode_f2_display(Reading r);
KernelMatrix zero_mode_f2_inverse_display(Reading r);
KernelMatrix kk_mode_f2_inverse_display(Reading r);

// entrywise comparison by row and column labels; returns readable mismatches
std::vector<std::string> compare_by_labels(const KernelMatrix& expected, const KernelMatrix& actual);

}
