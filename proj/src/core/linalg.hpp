#pragma once
#include <cstddef>
#include <optional>

#include "core/rational.hpp"

namespace grc {

size_t rank_of(const QMat& m);
size_t rank_of(const ZMat& m);
Rat det_of(const QMat& m);

QMat transpose(const QMat& m);
QVec mat_vec(const QMat& m, const QVec& v);
QMat mat_mul(const QMat& a, const QMat& b);
std::optional<QMat> mat_inverse(const QMat& m);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> rref(QMat& m);

// Basis of the right kernel {x : m x = 0}, one row per basis vector.
QMat kernel_basis(const QMat& m);

// One solution of m x = rhs, or nullopt if inconsistent.
std::optional<QVec> solve_linear(const QMat& m, const QVec& rhs);

// Smith normal form: U * A * V = diag(divisors), U and V unimodular.
// vinv receives V^-1. divisors are nonnegative, each dividing the next.
struct SmithResult {
  ZMat u, v, vinv;
  ZVec divisors;  // length min(rows, cols)
  size_t rank = 0;
};
SmithResult smith_normal_form(ZMat a);

// Index [Z^n : L] of the lattice spanned by the rows of gens (must have rank n).
Int lattice_index_of_rows(const ZMat& gens, size_t n);

// Index of the sum of the two row lattices.
Int lattice_index(const ZMat& gen_a, const ZMat& gen_b, size_t n);

// Integer basis (rows) of the saturation ker(m) cap Z^n.
ZMat saturated_kernel_lattice(const QMat& m);

// Integer basis (rows) of the saturation of the row space of m in Z^n.
ZMat saturated_row_lattice(const QMat& m);

// Given saturated lattices L_face < L_cell with rank(L_cell) = rank(L_face)+1,
// returns u in L_cell generating the quotient L_cell / L_face.
ZVec quotient_generator(const ZMat& lat_face, const ZMat& lat_cell);

}  // namespace grc
