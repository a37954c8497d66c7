#pragma once

#include "homolift/zkmod.hpp"

#include <random>
#include <string>
#include <vector>

namespace test_util {

struct CaseResult {
    bool ok = true;
    std::string message;
};

homolift::ModuleVector unit(homolift::Modulus m, std::size_t n, std::size_t i);

// One randomised Howell canonicality case (n <= 4, k <= 6) checked against brute-force spans.
CaseResult howell_case(std::mt19937& rng);
// One randomised linear system checked against exhaustive search.
CaseResult solve_case(std::mt19937& rng);
// Intersection, sum, order and quotient structure checked against brute force.
CaseResult lattice_case(std::mt19937& rng);

std::vector<homolift::SubgroupBasis> all_subgroups(std::int64_t k, std::size_t n);

}  // namespace test_util

namespace test_util {

// Product of random elementary row operations: invertible over Z_k.
homolift::MatrixZk random_invertible(std::mt19937& rng, std::int64_t k, std::size_t n);

// A random matrix with A^l = I: a conjugated block sum of signed cycles and, for l
// divisible by 3, companion blocks of x^2 + x + 1.
homolift::MatrixZk random_order_matrix(std::mt19937& rng, std::int64_t k, std::size_t n, std::int64_t l);

std::vector<std::vector<std::int64_t>> to_rows(const homolift::MatrixZk& m);

}  // namespace test_util
