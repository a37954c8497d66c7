#include "homolift/lift.hpp"

#include "homolift/error.hpp"

namespace homolift {

namespace {

void validate(const CyclicLiftProblem& p) {
    const MatrixZk& a = p.action;
    if (a.rows() != a.cols()) throw Error(ErrorKind::invalid_problem, "lift: action matrix is not square");
    if (!(a.modulus() == p.defect.modulus())) throw Error(ErrorKind::modulus_mismatch, "lift: defect modulus");
    if (p.defect.size() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "lift: defect length");
    if (p.order < 1) throw Error(ErrorKind::invalid_problem, "lift: order must be positive");
    if (!a.power(static_cast<std::uint64_t>(p.order)).is_identity())
        throw Error(ErrorKind::invalid_problem, "lift: A^l is not the identity");
    if (a * p.defect != p.defect) throw Error(ErrorKind::invalid_problem, "lift: A does not fix the defect m0");
}

}  // namespace

ModuleVector norm_map(const MatrixZk& a, std::int64_t l, const ModuleVector& v) {
    if (a.cols() != v.size() || a.rows() != a.cols())
        throw Error(ErrorKind::dimension_mismatch, "norm_map: dimension mismatch");
    ModuleVector acc = ModuleVector::zero(v.modulus(), v.size());
    ModuleVector cur = v;
    for (std::int64_t i = 0; i < l; ++i) {
        acc = acc + cur;
        cur = a * cur;
    }
    return acc;
}

MatrixZk norm_matrix(const MatrixZk& a, std::int64_t l) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "norm_matrix: non-square matrix");
    MatrixZk acc(a.modulus(), a.rows(), a.cols());
    MatrixZk cur = MatrixZk::identity(a.modulus(), a.rows());
    for (std::int64_t i = 0; i < l; ++i) {
        acc = acc + cur;
        cur = cur * a;
    }
    return acc;
}

ModuleVector lift_power(const CyclicLiftProblem& p, const ModuleVector& alpha) {
    // Elements (v, i) of M x| Z_l with psi^l = m0:
    // (v1, i)(v2, j) = (v1 + A^i v2 + [i + j >= l] m0, (i + j) mod l).
    const MatrixZk& a = p.action;
    const std::int64_t l = p.order;
    std::vector<MatrixZk> powers{MatrixZk::identity(a.modulus(), a.rows())};
    for (std::int64_t i = 1; i < l; ++i) powers.push_back(powers.back() * a);
    auto mul = [&](const std::pair<ModuleVector, std::int64_t>& x, const std::pair<ModuleVector, std::int64_t>& y) {
        ModuleVector v = x.first + powers[static_cast<std::size_t>(x.second)] * y.first;
        std::int64_t s = x.second + y.second;
        if (s >= l) {
            v = v + p.defect;
            s -= l;
        }
        return std::make_pair(v, s);
    };
    const auto zero = ModuleVector::zero(a.modulus(), a.rows());
    // psi * alpha = (0, 1)(alpha, 0)
    auto g = mul({zero, l == 1 ? 0 : 1}, {alpha, 0});
    if (l == 1) g = mul({p.defect, 0}, {alpha, 0});
    auto acc = std::make_pair(zero, std::int64_t{0});
    for (std::int64_t i = 0; i < l; ++i) acc = mul(acc, g);
    if (acc.second != 0) throw Error(ErrorKind::internal, "lift_power: l-th power left the kernel");
    return acc.first;
}

CyclicLiftResult cyclic_lift_solve(const CyclicLiftProblem& p) {
    validate(p);
    MatrixZk n = norm_matrix(p.action, p.order);
    ModuleVector target = -p.defect;
    CyclicLiftResult r;
    if (auto sol = solve_linear(n, target)) {
        if (!lift_power(p, sol->particular).is_zero())
            throw Error(ErrorKind::internal, "cyclic_lift_solve: witness fails the multiplication check");
        r.witness = sol->particular;
        return r;
    }
    SubgroupBasis img = howell_form(n.transpose());  // column span of the norm matrix
    r.certificate = LiftCertificate{img, target, reduce_mod(img, target)};
    return r;
}

bool coprime_split(std::int64_t l, std::int64_t k) { return gcd(Integer(l), Integer(k)) == 1; }

SplitReport cyclic_split_verdict(const CyclicLiftProblem& p, bool has_fixed_points) {
    CyclicLiftResult norm = cyclic_lift_solve(p);
    SplitReport rep;
    rep.split = norm.witness.has_value();
    rep.witness = norm.witness;
    rep.certificate = norm.certificate;
    rep.method = "norm-equation";

    const std::int64_t k = p.action.modulus().value();
    if (k != 0 && coprime_split(p.order, k)) {
        rep.coprime_path = true;
        // alpha = -l^{-1} m0 works because A fixes m0.
        ModuleVector alpha = p.defect.scaled(-inverse_mod(Integer(p.order), Integer(k)));
        if (!lift_power(p, alpha).is_zero() || !rep.split)
            throw Error(ErrorKind::internal, "cyclic_split_verdict: coprime path disagrees with the norm equation");
        rep.witness = alpha;
        rep.method += "+coprime";
    }
    if (has_fixed_points) {
        rep.fixed_point_path = true;
        if (!rep.split)
            throw Error(ErrorKind::invalid_problem,
                        "cyclic_split_verdict: fixed points force a lift of order l, but the norm equation is "
                        "unsolvable for this m0");
        rep.method += "+fixed-point";
    }
    return rep;
}

}  // namespace homolift
