#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "jetbrane/expr.hpp"
#include "jetbrane/jet.hpp"
#include "jetbrane/space.hpp"

namespace jetbrane {

/// Coefficient key of a total differential operator: output index, input
/// index, derivative multi-index.
struct OpKey {
    size_t out = 0;
    size_t in = 0;
    MultiIndex mu;

    friend bool operator<(const OpKey& a, const OpKey& b) {
        if (a.out != b.out) return a.out < b.out;
        if (a.in != b.in) return a.in < b.in;
        return a.mu < b.mu;
    }
    friend bool operator==(const OpKey& a, const OpKey& b) {
        return a.out == b.out && a.in == b.in && a.mu == b.mu;
    }
};

/// Matrix-valued total differential operator O^a_b = sum O^{a(mu)}_b d_(mu)
/// with explicit index ranges. Zero coefficients are never stored.
class TotalDiffOp {
  public:
    TotalDiffOp(size_t out_size, size_t in_size) : out_(out_size), in_(in_size) {}

    static TotalDiffOp zero(size_t out_size, size_t in_size) { return {out_size, in_size}; }
    static TotalDiffOp identity(size_t n);

    size_t out_size() const { return out_; }
    size_t in_size() const { return in_; }

    void add(size_t a, size_t b, const MultiIndex& mu, const Expr& coeff);
    const Expr* find(size_t a, size_t b, const MultiIndex& mu) const;
    const std::map<OpKey, Expr>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    friend bool operator==(const TotalDiffOp& a, const TotalDiffOp& b);
    friend bool operator!=(const TotalDiffOp& a, const TotalDiffOp& b) { return !(a == b); }

    TotalDiffOp operator-() const;
    friend TotalDiffOp operator+(const TotalDiffOp& a, const TotalDiffOp& b);
    friend TotalDiffOp operator-(const TotalDiffOp& a, const TotalDiffOp& b);

  private:
    size_t out_, in_;
    std::map<OpKey, Expr> coeffs_;
};

/// (O f)^a = sum_b O^{a(mu)}_b d_(mu) f^b.
std::vector<Expr> apply(const SpaceSpec& sp, const TotalDiffOp& O, std::span<const Expr> f);

/// Operator composition via Leibniz expansion of the derivative tails.
TotalDiffOp compose(const SpaceSpec& sp, const TotalDiffOp& O1, const TotalDiffOp& O2);

/// Formal integration-by-parts transpose: (O^dagger f)_b = (-d)_(mu)(O^{a(mu)}_b f_a).
/// Involutive; swaps the index ranges.
TotalDiffOp adjoint(const SpaceSpec& sp, const TotalDiffOp& O);

/// Frechet derivative of a collection of local functions with respect to the
/// given dependent bases: (D_P)^a_j = dP^a/dz^j_(nu) d_(nu).
TotalDiffOp frechet(const SpaceSpec& sp, std::span<const Expr> P, std::span<const Generator> wrt);

/// Frechet derivative of an operator collection (out_size must be 1):
/// D_O = D_{O^{(mu)}} composed with d_(mu); output indexed by O's input range.
TotalDiffOp frechet_of_operator(const SpaceSpec& sp, const TotalDiffOp& O,
                                std::span<const Generator> wrt);

/// Checks that equations E_i derive from a Lagrangian: D_E must be self-adjoint.
bool helmholtz_check(const SpaceSpec& sp, std::span<const Expr> E,
                     std::span<const Generator> field_bases);

/// True iff sum_a N^a[E_a] canonicalizes to zero identically.
bool is_noether(const SpaceSpec& sp, const TotalDiffOp& N, std::span<const Expr> E);

/// Coefficientwise action of an evolutionary field on an operator.
TotalDiffOp delta_on_operator(const SpaceSpec& sp, const EvolutionaryField& Q, const TotalDiffOp& O);

/// Module action of a variational symmetry on a Noether operator:
/// Q.N = delta_Q N - N composed with (D_Q)^dagger.
TotalDiffOp module_action(const SpaceSpec& sp, const EvolutionaryField& Q, const TotalDiffOp& N,
                          std::span<const Generator> field_bases);

/// Characteristic of the variational symmetry associated with a Noether
/// operator: rho(N)^i = N^{dagger i}(1).
EvolutionaryField rho(const SpaceSpec& sp, const TotalDiffOp& N);

/// Coefficient key of a bi-differential operator.
struct BiKey {
    size_t out = 0;
    size_t in1 = 0;
    size_t in2 = 0;
    MultiIndex mu;
    MultiIndex nu;

    friend bool operator<(const BiKey& a, const BiKey& b) {
        return std::tie(a.out, a.in1, a.in2, a.mu, a.nu) < std::tie(b.out, b.in1, b.in2, b.mu, b.nu);
    }
};

/// Skew-symmetric bi-differential operator
/// C^gamma(f,g) = C^{gamma(mu)(nu)}_{alpha beta} d_(mu)f^alpha d_(nu)g^beta.
class BiDiffOp {
  public:
    BiDiffOp(size_t out_size, size_t in_size) : out_(out_size), in_(in_size) {}

    size_t out_size() const { return out_; }
    size_t in_size() const { return in_; }

    void add(size_t gamma, size_t alpha, size_t beta, const MultiIndex& mu, const MultiIndex& nu,
             const Expr& coeff);
    const std::map<BiKey, Expr>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient-level skew symmetry: C^{g(mu)(nu)}_{ab} = -C^{g(nu)(mu)}_{ba}.
    bool is_skew() const;

    std::vector<Expr> eval(const SpaceSpec& sp, std::span<const Expr> f1,
                           std::span<const Expr> f2) const;

    /// True when no coefficient depends on a jet variable (field-independent
    /// structure operators).
    bool coefficients_field_independent() const;

  private:
    size_t out_, in_;
    std::map<BiKey, Expr> coeffs_;
};

}  // namespace jetbrane
