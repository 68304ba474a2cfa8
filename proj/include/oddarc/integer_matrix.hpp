#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oddarc {

using Integer = mpz_class;

// Dense row-major matrix over Z with arbitrary precision entries.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntegerMatrix operator*(const IntegerMatrix& other) const;
    IntegerMatrix operator+(const IntegerMatrix& other) const;
    IntegerMatrix operator-(const IntegerMatrix& other) const;
    IntegerMatrix scaled(const Integer& s) const;
    bool operator==(const IntegerMatrix& other) const;
    bool operator!=(const IntegerMatrix& other) const { return !(*this == other); }

    IntegerMatrix transpose() const;
    IntegerMatrix select_columns(const std::vector<std::size_t>& cols) const;
    IntegerMatrix hstack(const IntegerMatrix& right) const;
    std::vector<Integer> row(std::size_t r) const;
    std::vector<Integer> column(std::size_t c) const;
    std::vector<Integer> apply(const std::vector<Integer>& v) const;
    bool is_zero() const;
    std::string to_string() const;

    void swap_rows(std::size_t a, std::size_t b);
    // row[dst] += f * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& f);
    void negate_row(std::size_t r);
    void swap_cols(std::size_t a, std::size_t b);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& f);
    void negate_col(std::size_t c);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// u * m == h, h in row Hermite normal form, u unimodular.
struct HermiteForm {
    IntegerMatrix h;
    IntegerMatrix u;
    std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite_rows(const IntegerMatrix& m);

// u * m * v == d, d diagonal with d[i] | d[i+1].
struct SmithForm {
    IntegerMatrix d;
    IntegerMatrix u;
    IntegerMatrix v;
    std::vector<Integer> invariants;  // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);
std::size_t rank_mod(const IntegerMatrix& m, unsigned long p);

// Columns form a basis of {x in Z^cols : m x = 0}; the basis spans a saturated lattice.
IntegerMatrix kernel_basis(const IntegerMatrix& m);

// Z^rows / image(m).
struct Cokernel {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;   // invariant factors > 1
    IntegerMatrix free_basis;       // columns lift a basis of the free part
    IntegerMatrix reduction;        // free_rank x rows, kills image(m), inverse to free_basis
};

Cokernel cokernel(const IntegerMatrix& m);

std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a, const std::vector<Integer>& b);

// True when the column spans of a and b agree over Q.
bool same_rational_span(const IntegerMatrix& a, const IntegerMatrix& b);

Integer determinant(const IntegerMatrix& m);

// Incremental echelon basis of a sublattice of Z^dim that remembers how every
// row was built from the tagged input vectors.
class LatticeEchelon {
public:
    explicit LatticeEchelon(std::size_t dim) : dim_(dim) {}

    void add(std::vector<Integer> v, int tag);
    // integer combination of tagged inputs equal to target, if one exists
    std::optional<std::map<int, Integer>> express(std::vector<Integer> target) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    struct Row {
        std::vector<Integer> v;
        std::map<int, Integer> combo;
        std::size_t lead = 0;
    };
    std::size_t dim_;
    std::vector<Row> rows_;  // strictly increasing leads
};

}  // namespace oddarc
