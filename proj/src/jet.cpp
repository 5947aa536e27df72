#include "jetbrane/jet.hpp"

#include <algorithm>

#include "jetbrane/errors.hpp"

namespace jetbrane {

EvolutionaryField EvolutionaryField::make(Parity parity, std::map<Generator, Expr> characteristics) {
    for (auto it = characteristics.begin(); it != characteristics.end();) {
        const Generator& g = it->first;
        if (!g.is_jet_kind() || !g.jet.empty()) {
            throw SchemaError("evolutionary field keyed by non-base generator " + g.debug_string());
        }
        if (it->second.is_zero()) {
            it = characteristics.erase(it);
            continue;
        }
        auto gr = it->second.grading_if_homogeneous();
        if (!gr) {
            throw GradingError("characteristic for " + g.debug_string() + " is not grading-homogeneous");
        }
        if (gr->parity != parity_add(g.parity(), parity)) {
            throw GradingError("characteristic for " + g.debug_string() +
                               " has parity inconsistent with the field's parity");
        }
        ++it;
    }
    return EvolutionaryField{parity, std::move(characteristics)};
}

const Expr* EvolutionaryField::find(const Generator& base) const {
    auto it = characteristics.find(base);
    return it == characteristics.end() ? nullptr : &it->second;
}

bool EvolutionaryField::is_zero() const {
    return characteristics.empty();
}

Expr apply_derivation(const Expr& e, Parity parity,
                      const std::function<const Expr*(const Generator&)>& image) {
    Expr total;
    for (const Term& t : e.terms()) {
        int prefix_odd = 0;
        for (size_t j = 0; j < t.factors.size(); ++j) {
            const Factor& f = t.factors[j];
            const Expr* img = image(f.gen);
            if (img != nullptr && !img->is_zero()) {
                Rational c = t.coeff * Rational(static_cast<long>(f.exp));
                if (parity == Parity::Odd && prefix_odd % 2 == 1) c = -c;
                Term pre(c, std::vector<Factor>(t.factors.begin(), t.factors.begin() + static_cast<long>(j)));
                Term post(Rational(1), {});
                if (f.exp > 1) post.factors.push_back({f.gen, f.exp - 1});
                post.factors.insert(post.factors.end(), t.factors.begin() + static_cast<long>(j) + 1,
                                    t.factors.end());
                Expr piece = Expr::canonicalize({pre}) * (*img) * Expr::canonicalize({post});
                total = total + piece;
            }
            if (f.gen.parity() == Parity::Odd && f.exp % 2 == 1) prefix_odd++;
        }
    }
    return total;
}

Expr total_derivative(const SpaceSpec& sp, const Expr& e, int nu) {
    if (nu < 0 || nu >= sp.dim) {
        throw IndexError("coordinate index " + std::to_string(nu) + " out of range for dim " +
                         std::to_string(sp.dim));
    }
    std::map<Generator, Expr> cache;
    auto image = [&](const Generator& g) -> const Expr* {
        auto it = cache.find(g);
        if (it != cache.end()) return &it->second;
        Expr img;
        if (g.kind == GenKind::Coordinate) {
            img = (static_cast<int>(g.base) == nu) ? Expr::one() : Expr::zero();
        } else if (g.is_jet_kind()) {
            img = Expr::from_generator(g.with_jet(g.jet.plus(nu)));
        } else {
            img = Expr::zero();  // basis forms are d_H-constant
        }
        return &cache.emplace(g, std::move(img)).first->second;
    };
    return apply_derivation(e, Parity::Even, image);
}

Expr multi_total_derivative(const SpaceSpec& sp, const Expr& e, const MultiIndex& mu) {
    Expr out = e;
    for (int c : mu.entries()) out = total_derivative(sp, out, c);
    return out;
}

Expr horizontal_differential(const SpaceSpec& sp, const Expr& omega) {
    Expr out;
    for (int mu = 0; mu < sp.dim; ++mu) {
        out = out + Expr::from_generator(Generator::basis_form(mu)) * total_derivative(sp, omega, mu);
    }
    return out;
}

Expr prolong_evolutionary(const SpaceSpec& sp, const EvolutionaryField& Q, const Expr& e) {
    std::map<Generator, Expr> cache;
    auto image = [&](const Generator& g) -> const Expr* {
        if (!g.is_jet_kind()) return nullptr;
        const Expr* base = Q.find(g.base_generator());
        if (base == nullptr) return nullptr;
        auto it = cache.find(g);
        if (it != cache.end()) return &it->second;
        Expr img = multi_total_derivative(sp, *base, g.jet);
        return &cache.emplace(g, std::move(img)).first->second;
    };
    return apply_derivation(e, Q.parity, image);
}

Expr prolong_generalized(const SpaceSpec& sp, const GeneralizedField& X, const Expr& omega) {
    if (static_cast<int>(X.P.size()) != sp.dim) {
        throw IndexError("generalized field needs one P component per coordinate");
    }
    for (const Expr& p : X.P) {
        auto gr = p.grading_if_homogeneous();
        if (!gr || (!p.is_zero() && gr->parity != Parity::Even)) {
            throw GradingError("generalized field components must be even local functions");
        }
    }
    for (const auto& [i, r] : X.R) {
        auto gr = r.grading_if_homogeneous();
        if (!gr || (!r.is_zero() && gr->parity != Parity::Even)) {
            throw GradingError("generalized field components must be even local functions");
        }
    }

    // Evolutionary part: Q^z = R^z - P^mu z_mu for every dependent base in omega.
    std::map<Generator, Expr> chars;
    for (const Generator& zb : omega.dependent_bases()) {
        Expr q;
        if (zb.kind == GenKind::FieldJet) {
            auto it = X.R.find(zb.base);
            if (it != X.R.end()) q = it->second;
        }
        for (int mu = 0; mu < sp.dim; ++mu) {
            q = q - X.P[static_cast<size_t>(mu)] *
                        Expr::from_generator(zb.with_jet(MultiIndex::single(mu)));
        }
        if (!q.is_zero()) chars.emplace(zb, std::move(q));
    }
    Expr out = prolong_evolutionary(sp, EvolutionaryField::make(Parity::Even, std::move(chars)), omega);

    for (int mu = 0; mu < sp.dim; ++mu) {
        out = out + X.P[static_cast<size_t>(mu)] * total_derivative(sp, omega, mu);
        Expr dP = horizontal_differential(sp, X.P[static_cast<size_t>(mu)]);
        if (!dP.is_zero()) {
            out = out + dP * omega.partial(Generator::basis_form(mu), Side::Left);
        }
    }
    return out;
}

Expr euler_lagrange_raw(const SpaceSpec& sp, const Expr& f, const Generator& wrt, Side side) {
    if (!wrt.is_jet_kind() || !wrt.jet.empty()) {
        throw SchemaError("Euler-Lagrange derivative requires a base dependent generator, got " +
                          wrt.debug_string());
    }
    Expr out;
    for (const Generator& g : f.generators()) {
        if (g.kind != wrt.kind || g.base != wrt.base) continue;
        Expr d = f.partial(g, side);
        if (d.is_zero()) continue;
        Expr shifted = multi_total_derivative(sp, d, g.jet);
        if (g.jet.order() % 2 == 1) shifted = -shifted;
        out = out + shifted;
    }
    return out;
}

Expr euler_lagrange(const SpaceSpec& sp, const Expr& f, const Generator& wrt, Side side) {
    Grading g = f.grading();  // throws on inhomogeneous input
    if (g.form_degree != 0) {
        throw GradingError("Euler-Lagrange derivative requires a form-degree-0 integrand");
    }
    return euler_lagrange_raw(sp, f, wrt, side);
}

namespace {

/// Dependent-variable degree of a canonical monomial (jet variables of all
/// kinds, counted with exponents).
int dependent_degree(const Term& t) {
    int d = 0;
    for (const Factor& f : t.factors) {
        if (f.gen.is_jet_kind()) d += static_cast<int>(f.exp);
    }
    return d;
}

/// Polynomial antiderivative with respect to x^0 of a pure-coordinate
/// expression (no dependent variables, no basis forms).
Expr coordinate_antiderivative(const Expr& e) {
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        Term n = t;
        bool found = false;
        for (Factor& f : n.factors) {
            if (f.gen.kind == GenKind::Coordinate && f.gen.base == 0) {
                n.coeff /= Rational(static_cast<long>(f.exp) + 1);
                f.exp += 1;
                found = true;
                break;
            }
        }
        if (!found) {
            n.factors.push_back({Generator::coordinate(0), 1});
        }
        out.push_back(std::move(n));
    }
    return Expr::canonicalize(std::move(out));
}

}  // namespace

DivergenceNormalForm divergence_normal_form(const SpaceSpec& sp, const Expr& L) {
    for (const Term& t : L.terms()) {
        if (term_grading(t).form_degree != 0) {
            throw GradingError("divergence normal form expects a form-degree-0 integrand");
        }
    }

    DivergenceNormalForm out;
    out.witness.assign(static_cast<size_t>(sp.dim), Expr::zero());

    // Split by dependent degree; the degree-0 part is a pure coordinate
    // polynomial and is exactly the x^0-derivative of its antiderivative.
    std::map<int, std::vector<Term>> by_degree;
    for (const Term& t : L.terms()) by_degree[dependent_degree(t)].push_back(t);

    auto it0 = by_degree.find(0);
    if (it0 != by_degree.end()) {
        Expr pure = Expr::canonicalize(it0->second);
        out.witness[0] = out.witness[0] + coordinate_antiderivative(pure);
        by_degree.erase(it0);
    }

    // Degree d >= 1: d*L_d = sum_{z,(mu)} z_(mu) * dL_d/dz_(mu) (left
    // derivative). Each summand is peeled to base jet order by repeated
    // integration by parts, every step exact and recorded in the witness.
    for (auto& [deg, terms] : by_degree) {
        Expr Ld = Expr::canonicalize(terms);
        Rational scale = rat(1, deg);
        for (const Generator& g : Ld.generators()) {
            if (!g.is_jet_kind()) continue;
            Expr C = Ld.partial(g, Side::Left);
            if (C.is_zero()) continue;
            C = scale * C;
            MultiIndex mu = g.jet;
            Generator zb = g.base_generator();
            while (!mu.empty()) {
                int nu = mu.lowest();
                mu = mu.minus(nu);
                out.witness[static_cast<size_t>(nu)] =
                    out.witness[static_cast<size_t>(nu)] +
                    Expr::from_generator(zb.with_jet(mu)) * C;
                C = -total_derivative(sp, C, nu);
            }
            out.core = out.core + Expr::from_generator(zb) * C;
        }
    }
    return out;
}

bool functionals_equal(const SpaceSpec& sp, const Expr& L1, const Expr& L2) {
    Expr diff = L1 - L2;
    for (const Generator& zb : diff.dependent_bases()) {
        if (!euler_lagrange_raw(sp, diff, zb, Side::Left).is_zero()) return false;
    }
    return true;
}

}  // namespace jetbrane
