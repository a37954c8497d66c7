#pragma once

#include "homolift/zkmod.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace homolift {

// A lift psi of an order-l automorphism with psi^l = m0 in M.
struct CyclicLiftProblem {
    MatrixZk action;
    std::int64_t order = 0;
    ModuleVector defect;
};

// sum_{i<l} A^i v
ModuleVector norm_map(const MatrixZk& a, std::int64_t l, const ModuleVector& v);
MatrixZk norm_matrix(const MatrixZk& a, std::int64_t l);

// Why -m0 is not in the image of the norm map: the canonical basis of the image and
// the nonzero remainder of -m0 after reduction against it.
struct LiftCertificate {
    SubgroupBasis image;
    ModuleVector target;
    ModuleVector residue;
};

struct CyclicLiftResult {
    std::optional<ModuleVector> witness;  // alpha with (psi*alpha)^l = 1
    std::optional<LiftCertificate> certificate;
};

// Decides whether some psi*alpha has order dividing l, i.e. solves norm(alpha) = -m0.
// Witnesses are checked by explicit multiplication in M x| <psi>.
CyclicLiftResult cyclic_lift_solve(const CyclicLiftProblem& p);

// (psi*alpha)^l computed by multiplying out in the extension, returned as an element of M.
ModuleVector lift_power(const CyclicLiftProblem& p, const ModuleVector& alpha);

bool coprime_split(std::int64_t l, std::int64_t k);

struct SplitReport {
    bool split = false;
    std::optional<ModuleVector> witness;
    std::optional<LiftCertificate> certificate;
    bool fixed_point_path = false;
    bool coprime_path = false;
    std::string method;  // which paths decided the verdict
};

// Combines the fixed-point shortcut (modelled as m0 = 0), the coprime shortcut and the
// norm-equation decision; throws if applicable paths disagree.
SplitReport cyclic_split_verdict(const CyclicLiftProblem& p, bool has_fixed_points);

}  // namespace homolift
