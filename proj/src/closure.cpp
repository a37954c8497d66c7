#include "homolift/closure.hpp"

#include "homolift/error.hpp"

namespace homolift {

ClosureReport galois_closure_pipeline(const ExtensionSpec& spec, const SubgroupBasis& n1, const ClosureOptions& opts) {
    spec.validate();
    const Action& act = spec.action;
    if (!(n1.modulus() == act.modulus()) || n1.rank() != act.rank())
        throw Error(ErrorKind::dimension_mismatch, "closure: N1 does not live in M");

    ClosureReport r;
    r.n1 = n1;
    r.n2 = core(act, n1);
    r.n1_invariant = r.n2 == n1;
    r.hat_a = quotient_invariants(n1);
    r.u = relative_invariants(n1, r.n2);
    r.k = quotient_invariants(r.n2);
    r.defect_closure = minimal_invariant_subgroup(act, spec.defects);
    r.guarantee = contains(n1, r.defect_closure);

    r.group = std::make_shared<const ExtGroup>(spec, r.n2);
    r.complement = split_test(*r.group, opts.split_budget);
    r.linear_split = complement_solve(*r.group).has_value();
    if (r.linear_split != r.complement.has_value())
        throw Error(ErrorKind::internal, "closure: exhaustive and linear complement searches disagree");
    if (r.guarantee && !r.complement)
        throw Error(ErrorKind::internal, "closure: defects lie in N1 but no complement was found");
    if (opts.identify) r.fingerprint = identify(*r.group, r.split(), opts.identify_budget);
    return r;
}

}  // namespace homolift
