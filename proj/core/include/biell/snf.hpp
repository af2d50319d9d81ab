#ifndef BIELL_SNF_HPP
#define BIELL_SNF_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "biell/numeric.hpp"

namespace biell {

// Dense integer matrix, row-major.  Desk-scale sizes only.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IntMat& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMat operator*(const IntMat& o) const;
    std::vector<Int> row(std::size_t r) const;
    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Determinant by fraction-free Gaussian elimination (used to check that the
// transform matrices stay unimodular).
Int determinant(const IntMat& m);

// D = U * M * V with U, V unimodular, D diagonal, and each diagonal entry
// nonnegative and dividing the next.  diag holds the nonzero entries.
struct SnfResult {
    IntMat D, U, V;
    std::vector<Int> diag;
    std::size_t rank = 0;
};

// Deterministic variant: the pivot is always the remaining entry of minimal
// nonzero absolute value, ties broken by lowest row index then lowest column
// index.  Two runs on equal input produce identical U, V.
SnfResult smith_normal_form(const IntMat& m);

// Finitely generated abelian group: Z^free_rank x prod Z/d_i with each
// invariant factor >= 2 and d_i | d_{i+1}.
struct FinAbGroup {
    Int free_rank = 0;
    std::vector<Int> invariant_factors;

    // Exponent of the torsion part; 0 when the group has free rank.
    Int exponent() const;
    // Group order; 0 encodes infinite.
    Int order() const;
    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    std::string to_string() const; // e.g. "Z^2 x Z/2 x Z/6", "0"
    bool operator==(const FinAbGroup& o) const
    {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
};

// Presentation of Z^n modulo the row span of a relation matrix, with enough
// data kept to push arbitrary elements through to the canonical form.
class GroupQuotient {
public:
    GroupQuotient(std::size_t n, const std::vector<std::vector<Int>>& relations);

    const FinAbGroup& group() const { return group_; }
    std::size_t ambient_rank() const { return n_; }

    // Coordinates of an element's image in the diagonalized presentation
    // (length n: first entries are mod diag, the rest free).
    std::vector<Int> canonical_coordinates(const std::vector<Int>& element) const;

    // Order of the image of an element; nullopt = infinite order.
    std::optional<Int> image_order(const std::vector<Int>& element) const;

    const std::vector<Int>& diagonal() const { return full_diag_; }

private:
    std::size_t n_;
    FinAbGroup group_;
    IntMat V_;                   // column transform from the SNF
    std::vector<Int> full_diag_; // length n: d_1..d_r then zeros
};

// Does target lie in the integer row span of rows?  (Exact lattice
// membership via SNF; empty row set spans only the zero vector.)
bool in_row_span(const std::vector<std::vector<Int>>& rows,
                 const std::vector<Int>& target);

} // namespace biell

#endif
