#pragma once

#include <functional>
#include <map>
#include <vector>

#include "jetbrane/expr.hpp"
#include "jetbrane/space.hpp"

namespace jetbrane {

/// Generalized vector field in evolutionary form: base coordinates are
/// fixed and the characteristics prescribe the variation of each dependent
/// variable. Keys are base generators (empty jet) of any jet kind, so the
/// same type carries classical symmetries (fields only) and the extended
/// differentials of the antifield layer.
struct EvolutionaryField {
    Parity parity = Parity::Even;
    std::map<Generator, Expr> characteristics;

    /// Validates keys and image parities (image parity must equal key
    /// parity plus field parity for every nonzero image).
    static EvolutionaryField make(Parity parity, std::map<Generator, Expr> characteristics);

    const Expr* find(const Generator& base) const;
    bool is_zero() const;
};

/// Vector field with both base and fiber components, P^mu d/dx^mu + R^i d/dphi^i.
struct GeneralizedField {
    std::vector<Expr> P;       // one per coordinate
    std::map<int, Expr> R;     // field id -> component
};

/// Result of splitting an integrand as core + d_mu(witness^mu).
struct DivergenceNormalForm {
    Expr core;
    std::vector<Expr> witness;  // one per coordinate
};

/// Graded derivation determined by its action on generators (nullptr image
/// means zero). `parity` is the parity of the derivation itself.
Expr apply_derivation(const Expr& e, Parity parity,
                      const std::function<const Expr*(const Generator&)>& image);

/// The total derivative d_nu: acts on the explicit coordinate dependence and
/// shifts every jet variable present, of any kind.
Expr total_derivative(const SpaceSpec& sp, const Expr& e, int nu);

/// Composition of total derivatives over the multiset (order-independent).
Expr multi_total_derivative(const SpaceSpec& sp, const Expr& e, const MultiIndex& mu);

/// d_H = dx^mu d_mu; raises form degree by one, squares to zero, and returns
/// zero on top forms.
Expr horizontal_differential(const SpaceSpec& sp, const Expr& omega);

/// Prolongation of an evolutionary field: the unique extension to all jets
/// commuting with total derivatives.
Expr prolong_evolutionary(const SpaceSpec& sp, const EvolutionaryField& Q, const Expr& e);

/// Prolongation of a generalized vector field to horizontal forms,
/// commuting with the horizontal differential.
Expr prolong_generalized(const SpaceSpec& sp, const GeneralizedField& X, const Expr& omega);

/// Euler-Lagrange derivative with respect to the base generator `wrt`
/// (fields, ghosts, and antifields alike), with the graded partial of the
/// requested side. Requires a grading-homogeneous form-degree-0 integrand.
Expr euler_lagrange(const SpaceSpec& sp, const Expr& f, const Generator& wrt, Side side);

/// As euler_lagrange but without the homogeneity requirement (termwise).
Expr euler_lagrange_raw(const SpaceSpec& sp, const Expr& f, const Generator& wrt, Side side);

/// Exact constructive splitting L = core + d_mu k^mu with core = 0 exactly
/// when L is a total divergence.
DivergenceNormalForm divergence_normal_form(const SpaceSpec& sp, const Expr& L);

/// Equality of local functionals: all Euler-Lagrange derivatives of the
/// difference vanish identically.
bool functionals_equal(const SpaceSpec& sp, const Expr& L1, const Expr& L2);

}  // namespace jetbrane
