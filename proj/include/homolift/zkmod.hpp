#pragma once

#include "homolift/integer.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Coefficient ring Z_k for k >= 2, or Z when k == 0.
class Modulus {
public:
    Modulus() = default;
    explicit Modulus(std::int64_t k);

    std::int64_t value() const noexcept { return k_; }
    bool is_integral() const noexcept { return k_ == 0; }
    Integer reduce(const Integer& a) const;

    bool operator==(const Modulus&) const = default;

private:
    std::int64_t k_ = 0;
};

class ModuleVector {
public:
    ModuleVector() = default;
    ModuleVector(Modulus modulus, std::vector<Integer> coords);
    ModuleVector(Modulus modulus, const std::vector<std::int64_t>& coords);
    ModuleVector(Modulus modulus, std::initializer_list<std::int64_t> coords)
        : ModuleVector(modulus, std::vector<std::int64_t>(coords)) {}

    static ModuleVector zero(Modulus modulus, std::size_t n);
    static ModuleVector unit(Modulus modulus, std::size_t n, std::size_t i);

    const Modulus& modulus() const noexcept { return modulus_; }
    std::size_t size() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Integer>& coords() const noexcept { return coords_; }
    bool is_zero() const;

    ModuleVector operator+(const ModuleVector& o) const;
    ModuleVector operator-(const ModuleVector& o) const;
    ModuleVector operator-() const;
    ModuleVector scaled(const Integer& c) const;

    bool operator==(const ModuleVector& o) const;
    std::strong_ordering operator<=>(const ModuleVector& o) const;

    // "(c1,c2,...)"
    std::string to_string() const;

private:
    Modulus modulus_;
    std::vector<Integer> coords_;
};

class MatrixZk {
public:
    MatrixZk() = default;
    MatrixZk(Modulus modulus, std::size_t rows, std::size_t cols);
    MatrixZk(Modulus modulus, std::size_t cols, const std::vector<std::vector<Integer>>& rows);
    MatrixZk(Modulus modulus, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows);

    static MatrixZk identity(Modulus modulus, std::size_t n);
    static MatrixZk from_rows(Modulus modulus, std::size_t cols, const std::vector<ModuleVector>& rows);

    const Modulus& modulus() const noexcept { return modulus_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Integer& v);

    ModuleVector row(std::size_t i) const;
    ModuleVector column(std::size_t j) const;
    std::vector<std::vector<Integer>> row_data() const;

    MatrixZk operator*(const MatrixZk& o) const;
    ModuleVector operator*(const ModuleVector& v) const;
    MatrixZk operator+(const MatrixZk& o) const;
    MatrixZk operator-(const MatrixZk& o) const;
    bool operator==(const MatrixZk& o) const;

    MatrixZk transpose() const;
    MatrixZk power(std::uint64_t e) const;
    std::optional<MatrixZk> inverse() const;
    bool is_identity() const;

    std::string to_string() const;

private:
    Modulus modulus_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// A subgroup of Z_k^n (or Z^n) held by its canonical basis: Howell form for
// k >= 2, Hermite form for k == 0. Equal subgroups have identical bases.
class SubgroupBasis {
public:
    SubgroupBasis() = default;
    SubgroupBasis(Modulus modulus, std::size_t rank);  // trivial subgroup

    static SubgroupBasis span(Modulus modulus, std::size_t rank, const std::vector<ModuleVector>& gens);
    static SubgroupBasis full(Modulus modulus, std::size_t rank);

    const Modulus& modulus() const noexcept { return modulus_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<ModuleVector>& rows() const noexcept { return rows_; }
    MatrixZk matrix() const;
    bool is_trivial() const noexcept { return rows_.empty(); }

    bool operator==(const SubgroupBasis& o) const;
    std::strong_ordering operator<=>(const SubgroupBasis& o) const;

    // "<(r1),(r2),...>"
    std::string to_string() const;

private:
    friend SubgroupBasis howell_form(const MatrixZk& m);
    Modulus modulus_;
    std::size_t rank_ = 0;
    std::vector<ModuleVector> rows_;
};

SubgroupBasis howell_form(const MatrixZk& m);

struct SolutionSet {
    ModuleVector particular;
    SubgroupBasis kernel;
};

// Solves a*x = b for x (column vector convention).
std::optional<SolutionSet> solve_linear(const MatrixZk& a, const ModuleVector& b);
SubgroupBasis kernel(const MatrixZk& a);

SubgroupBasis subgroup_sum(const SubgroupBasis& s1, const SubgroupBasis& s2);
SubgroupBasis subgroup_intersect(const SubgroupBasis& s1, const SubgroupBasis& s2);
bool contains(const SubgroupBasis& s, const ModuleVector& v);
bool contains(const SubgroupBasis& outer, const SubgroupBasis& inner);
// Canonical representative of v + s.
ModuleVector reduce_mod(const SubgroupBasis& s, const ModuleVector& v);
// { a*v : v in s }
SubgroupBasis image(const MatrixZk& a, const SubgroupBasis& s);

Integer subgroup_order(const SubgroupBasis& s);
// Invariant factors of M/s in divisibility order, 1s dropped; 0 marks a free Z factor.
std::vector<Integer> quotient_invariants(const SubgroupBasis& s);
// Invariant factors of outer/inner; requires inner contained in outer.
std::vector<Integer> relative_invariants(const SubgroupBasis& outer, const SubgroupBasis& inner);

std::string format_invariants(const std::vector<Integer>& inv);

// Smith form over Z: diag = U*a*V with V unimodular. diagonal has min(rows, cols)
// entries, non-negative, each dividing the next (zeros last).
struct SmithForm {
    std::vector<Integer> diagonal;
    std::vector<std::vector<Integer>> v;
    std::vector<std::vector<Integer>> v_inverse;
};
SmithForm smith_form(const std::vector<std::vector<Integer>>& a, std::size_t cols);

// M/s written as a product of cyclic groups Z_{d_1} x ... x Z_{d_r}
// (d_i = 0 for a free factor). Coordinates: q_i = sum_j projection[i][j] v_j mod d_i.
class QuotientModule {
public:
    QuotientModule() = default;
    explicit QuotientModule(const SubgroupBasis& s);

    const Modulus& modulus() const noexcept { return modulus_; }
    std::size_t ambient_rank() const noexcept { return rank_; }
    std::size_t dimension() const noexcept { return moduli_.size(); }
    const std::vector<Integer>& moduli() const noexcept { return moduli_; }
    Integer order() const;

    std::vector<Integer> project(const ModuleVector& v) const;
    ModuleVector lift(const std::vector<Integer>& q) const;
    // Matrix of the induced endomorphism in quotient coordinates; a must preserve s.
    std::vector<std::vector<Integer>> induced(const MatrixZk& a) const;

private:
    Modulus modulus_;
    std::size_t rank_ = 0;
    std::vector<Integer> moduli_;
    std::vector<std::vector<Integer>> projection_;  // dimension x rank
    std::vector<ModuleVector> lifts_;              // one per coordinate
};

}  // namespace homolift
