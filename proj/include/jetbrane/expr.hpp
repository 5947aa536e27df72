#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetbrane/generator.hpp"
#include "jetbrane/rational.hpp"

namespace jetbrane {

/// One multiplicative factor of a monomial.
struct Factor {
    Generator gen;
    uint32_t exp = 1;

    friend bool operator==(const Factor& a, const Factor& b) { return a.gen == b.gen && a.exp == b.exp; }
};

/// A coefficient together with a factor list. Used both as raw input to
/// canonicalize() and, inside Expr, as a canonical monomial (factors sorted
/// by the generator total order, odd generators with exponent 1, coeff != 0).
struct Term {
    Rational coeff;
    std::vector<Factor> factors;

    Term() : coeff(0) {}
    Term(Rational c, std::vector<Factor> f) : coeff(std::move(c)), factors(std::move(f)) {}

    std::string debug_string() const;
};

/// Grading vector of a homogeneous expression. `ghost` is the pure ghost
/// number; the total ghost number is pure ghost minus resolution degree.
struct Grading {
    int ghost = 0;
    int resolution = 0;
    int form_degree = 0;
    Parity parity = Parity::Even;

    int total_ghost() const { return ghost - resolution; }

    friend bool operator==(const Grading&, const Grading&) = default;
};

Grading term_grading(const Term& t);

/// Canonical Grassmann-graded differential polynomial: a fully merged,
/// deterministically ordered sum of monomials. Immutable in practice; all
/// operations return fresh values.
class Expr {
  public:
    Expr() = default;  // zero

    static Expr zero() { return Expr(); }
    static Expr constant(Rational c);
    static Expr one() { return constant(Rational(1)); }
    static Expr from_generator(const Generator& g);
    static Expr monomial(Rational c, std::vector<Factor> factors);

    /// The canonicalization operation: sorts factors with exact sign
    /// tracking, drops odd squares, merges like terms.
    static Expr canonicalize(std::vector<Term> raw);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    /// Exact equality of canonical forms.
    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);  // graded product
    friend Expr operator*(const Rational& c, const Expr& e);

    Expr pow(uint32_t n) const;

    /// Common grading of all terms; throws GradingError when terms clash
    /// (the message names the two offending monomials). Zero is homogeneous
    /// of the trivial grading.
    Grading grading() const;
    bool is_homogeneous() const;
    std::optional<Grading> grading_if_homogeneous() const;

    /// Graded partial derivative with respect to a single generator.
    Expr partial(const Generator& g, Side side) const;

    /// Simultaneous graded substitution; images must parity-match their
    /// generators and be grading-homogeneous.
    Expr substitute(const std::map<Generator, Expr>& sigma) const;

    /// All distinct generators occurring in the expression.
    std::vector<Generator> generators() const;
    /// Distinct base generators (jet stripped) of the dependent variables.
    std::vector<Generator> dependent_bases() const;
    bool depends_on(const Generator& g) const;
    /// Largest |jet| among occurrences of dependent variables (0 when none).
    int max_jet_order() const;

    std::string debug_string() const;

  private:
    std::vector<Term> terms_;
};

// Free-function spellings for the kernel operations.
inline Expr graded_product(const Expr& a, const Expr& b) { return a * b; }
inline Grading grading_of(const Expr& e) { return e.grading(); }
inline Expr partial_derivative(const Expr& e, const Generator& g, Side side) { return e.partial(g, side); }
inline Expr substitute(const Expr& e, const std::map<Generator, Expr>& sigma) { return e.substitute(sigma); }

/// Total order on canonical monomials (factor lists compared
/// lexicographically by (generator, exponent)).
bool term_key_less(const Term& a, const Term& b);

}  // namespace jetbrane
