#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "jetbrane/diffops.hpp"
#include "jetbrane/expr.hpp"
#include "jetbrane/space.hpp"

namespace jetbrane {

/// Finite search bounds for weak-equality certificates. `max_jet_order`
/// bounds the derivative order applied to the equations of motion;
/// the coefficient bounds cap the polynomial degree (jets and coordinates
/// counted together) and the jet order of the ansatz coefficients.
struct AnsatzConfig {
    int max_jet_order = 2;
    int max_coeff_degree = 2;
    int max_coeff_jet_order = 2;
};

/// Explicit membership certificate: input = sum k^{a(mu)} d_(mu) E_a,
/// verified exactly by the kernel before being returned.
struct WeakCertificate {
    std::map<std::pair<size_t, MultiIndex>, Expr> k;
};

/// Certificate or not-found-within-bounds. NotFound is never a proof of
/// nonvanishing; the regularity assumptions are not checkable mechanically.
struct WeakResult {
    std::optional<WeakCertificate> certificate;

    bool certified() const { return certificate.has_value(); }
};

/// Searches for local functions k^{a(mu)} with f = sum k^{a(mu)} d_(mu) E_a
/// by exact linear algebra over the ansatz coefficients.
WeakResult weakly_zero(const SpaceSpec& sp, const Expr& f, std::span<const Expr> E,
                       const AnsatzConfig& cfg);

/// weakly_zero(f - g, ...).
WeakResult weakly_equal(const SpaceSpec& sp, const Expr& f, const Expr& g, std::span<const Expr> E,
                        const AnsatzConfig& cfg);

/// Coefficientwise weak vanishing of Z and of Z composed with the adjoint of
/// the generating set (the two sides of the irreducibility implication).
struct OperatorWeakResult {
    bool premise_certified = false;     // all coefficients of Z o R^dagger
    bool conclusion_certified = false;  // all coefficients of Z
};
OperatorWeakResult weakly_zero_operator(const SpaceSpec& sp, const TotalDiffOp& Z,
                                        const TotalDiffOp& R, std::span<const Expr> E,
                                        const AnsatzConfig& cfg);

}  // namespace jetbrane
