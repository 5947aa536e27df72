#include "jetbrane/diffops.hpp"

#include <algorithm>

#include "jetbrane/errors.hpp"

namespace jetbrane {

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// All submultisets sigma of mu, each with the multiset binomial
/// (mu choose sigma) = prod_c C(mu_c, sigma_c).
std::vector<std::pair<MultiIndex, long>> submultisets(const MultiIndex& mu) {
    std::vector<std::pair<MultiIndex, long>> out{{MultiIndex{}, 1}};
    for (int c = 0; c < kMaxDim; ++c) {
        int m = mu.count(c);
        if (m == 0) continue;
        std::vector<std::pair<MultiIndex, long>> next;
        next.reserve(out.size() * static_cast<size_t>(m + 1));
        for (const auto& [sig, mult] : out) {
            MultiIndex s = sig;
            for (int k = 0; k <= m; ++k) {
                next.emplace_back(s, mult * binom(m, k));
                if (k < m) s = s.plus(c);
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TotalDiffOp TotalDiffOp::identity(size_t n) {
    TotalDiffOp op(n, n);
    for (size_t i = 0; i < n; ++i) op.add(i, i, MultiIndex{}, Expr::one());
    return op;
}

void TotalDiffOp::add(size_t a, size_t b, const MultiIndex& mu, const Expr& coeff) {
    if (a >= out_ || b >= in_) {
        throw IndexError("operator coefficient index out of range");
    }
    if (coeff.is_zero()) return;
    OpKey key{a, b, mu};
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_.emplace(key, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

const Expr* TotalDiffOp::find(size_t a, size_t b, const MultiIndex& mu) const {
    auto it = coeffs_.find(OpKey{a, b, mu});
    return it == coeffs_.end() ? nullptr : &it->second;
}

bool operator==(const TotalDiffOp& a, const TotalDiffOp& b) {
    if (a.out_ != b.out_ || a.in_ != b.in_) return false;
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    auto ia = a.coeffs_.begin();
    auto ib = b.coeffs_.begin();
    for (; ia != a.coeffs_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    }
    return true;
}

TotalDiffOp TotalDiffOp::operator-() const {
    TotalDiffOp out(out_, in_);
    for (const auto& [k, v] : coeffs_) out.coeffs_.emplace(k, -v);
    return out;
}

TotalDiffOp operator+(const TotalDiffOp& a, const TotalDiffOp& b) {
    if (a.out_ != b.out_ || a.in_ != b.in_) throw IndexError("operator range mismatch in sum");
    TotalDiffOp out = a;
    for (const auto& [k, v] : b.coeffs_) out.add(k.out, k.in, k.mu, v);
    return out;
}

TotalDiffOp operator-(const TotalDiffOp& a, const TotalDiffOp& b) {
    return a + (-b);
}

std::vector<Expr> apply(const SpaceSpec& sp, const TotalDiffOp& O, std::span<const Expr> f) {
    if (f.size() != O.in_size()) throw IndexError("operator argument count mismatch");
    std::vector<Expr> out(O.out_size(), Expr::zero());
    for (const auto& [k, coeff] : O.coeffs()) {
        const Expr& fb = f[k.in];
        if (fb.is_zero()) continue;
        out[k.out] = out[k.out] + coeff * multi_total_derivative(sp, fb, k.mu);
    }
    return out;
}

TotalDiffOp compose(const SpaceSpec& sp, const TotalDiffOp& O1, const TotalDiffOp& O2) {
    if (O1.in_size() != O2.out_size()) throw IndexError("operator range mismatch in composition");
    TotalDiffOp out(O1.out_size(), O2.in_size());
    for (const auto& [k1, g1] : O1.coeffs()) {
        auto subs = submultisets(k1.mu);
        for (const auto& [k2, g2] : O2.coeffs()) {
            if (k2.out != k1.in) continue;
            for (const auto& [sigma, mult] : subs) {
                Expr dg2 = multi_total_derivative(sp, g2, sigma);
                if (dg2.is_zero()) continue;
                Expr piece = Rational(mult) * (g1 * dg2);
                out.add(k1.out, k2.in, k1.mu.difference(sigma).merged(k2.mu), piece);
            }
        }
    }
    return out;
}

TotalDiffOp adjoint(const SpaceSpec& sp, const TotalDiffOp& O) {
    TotalDiffOp out(O.in_size(), O.out_size());
    for (const auto& [k, g] : O.coeffs()) {
        int sign = (k.mu.order() % 2 == 1) ? -1 : 1;
        for (const auto& [tau, mult] : submultisets(k.mu)) {
            MultiIndex sigma = k.mu.difference(tau);
            Expr dg = multi_total_derivative(sp, g, sigma);
            if (dg.is_zero()) continue;
            out.add(k.in, k.out, tau, Rational(sign * mult) * dg);
        }
    }
    return out;
}

TotalDiffOp frechet(const SpaceSpec& sp, std::span<const Expr> P, std::span<const Generator> wrt) {
    (void)sp;
    TotalDiffOp out(P.size(), wrt.size());
    for (size_t a = 0; a < P.size(); ++a) {
        for (const Generator& g : P[a].generators()) {
            if (!g.is_jet_kind()) continue;
            for (size_t j = 0; j < wrt.size(); ++j) {
                if (g.kind == wrt[j].kind && g.base == wrt[j].base) {
                    out.add(a, j, g.jet, P[a].partial(g, Side::Left));
                }
            }
        }
    }
    return out;
}

TotalDiffOp frechet_of_operator(const SpaceSpec& sp, const TotalDiffOp& O,
                                std::span<const Generator> wrt) {
    (void)sp;
    if (O.out_size() != 1) {
        throw IndexError("frechet_of_operator expects a single-output operator collection");
    }
    TotalDiffOp out(O.in_size(), wrt.size());
    for (const auto& [k, g] : O.coeffs()) {
        for (const Generator& gen : g.generators()) {
            if (!gen.is_jet_kind()) continue;
            for (size_t j = 0; j < wrt.size(); ++j) {
                if (gen.kind == wrt[j].kind && gen.base == wrt[j].base) {
                    out.add(k.in, j, gen.jet.merged(k.mu), g.partial(gen, Side::Left));
                }
            }
        }
    }
    return out;
}

bool helmholtz_check(const SpaceSpec& sp, std::span<const Expr> E,
                     std::span<const Generator> field_bases) {
    if (E.size() != field_bases.size()) throw IndexError("helmholtz check needs one equation per field");
    TotalDiffOp D = frechet(sp, E, field_bases);
    return adjoint(sp, D) == D;
}

bool is_noether(const SpaceSpec& sp, const TotalDiffOp& N, std::span<const Expr> E) {
    if (N.out_size() != 1) throw IndexError("Noether operator must have a single output index");
    return apply(sp, N, E)[0].is_zero();
}

TotalDiffOp delta_on_operator(const SpaceSpec& sp, const EvolutionaryField& Q, const TotalDiffOp& O) {
    TotalDiffOp out(O.out_size(), O.in_size());
    for (const auto& [k, g] : O.coeffs()) {
        out.add(k.out, k.in, k.mu, prolong_evolutionary(sp, Q, g));
    }
    return out;
}

TotalDiffOp module_action(const SpaceSpec& sp, const EvolutionaryField& Q, const TotalDiffOp& N,
                          std::span<const Generator> field_bases) {
    std::vector<Expr> qvec(field_bases.size(), Expr::zero());
    for (size_t j = 0; j < field_bases.size(); ++j) {
        if (const Expr* q = Q.find(field_bases[j])) qvec[j] = *q;
    }
    TotalDiffOp dq = frechet(sp, qvec, field_bases);
    return delta_on_operator(sp, Q, N) - compose(sp, N, adjoint(sp, dq));
}

EvolutionaryField rho(const SpaceSpec& sp, const TotalDiffOp& N) {
    if (N.out_size() != 1) throw IndexError("rho expects a single-output Noether operator");
    std::vector<Expr> unit{Expr::one()};
    std::vector<Expr> chars = apply(sp, adjoint(sp, N), unit);
    Parity p = Parity::Even;
    for (const Expr& c : chars) {
        if (!c.is_zero()) {
            auto gr = c.grading_if_homogeneous();
            if (gr) p = gr->parity;
            break;
        }
    }
    std::map<Generator, Expr> m;
    for (size_t i = 0; i < chars.size(); ++i) {
        if (!chars[i].is_zero()) m.emplace(Generator::field(static_cast<int>(i)), chars[i]);
    }
    return EvolutionaryField::make(p, std::move(m));
}

void BiDiffOp::add(size_t gamma, size_t alpha, size_t beta, const MultiIndex& mu,
                   const MultiIndex& nu, const Expr& coeff) {
    if (gamma >= out_ || alpha >= in_ || beta >= in_) {
        throw IndexError("bi-operator coefficient index out of range");
    }
    if (coeff.is_zero()) return;
    BiKey key{gamma, alpha, beta, mu, nu};
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_.emplace(key, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

bool BiDiffOp::is_skew() const {
    for (const auto& [k, v] : coeffs_) {
        BiKey swapped{k.out, k.in2, k.in1, k.nu, k.mu};
        auto it = coeffs_.find(swapped);
        if (it == coeffs_.end()) return false;
        if (!((-v) == it->second)) return false;
    }
    return true;
}

std::vector<Expr> BiDiffOp::eval(const SpaceSpec& sp, std::span<const Expr> f1,
                                 std::span<const Expr> f2) const {
    if (f1.size() != in_ || f2.size() != in_) throw IndexError("bi-operator argument count mismatch");
    std::vector<Expr> out(out_, Expr::zero());
    for (const auto& [k, coeff] : coeffs_) {
        if (f1[k.in1].is_zero() || f2[k.in2].is_zero()) continue;
        Expr a = multi_total_derivative(sp, f1[k.in1], k.mu);
        Expr b = multi_total_derivative(sp, f2[k.in2], k.nu);
        out[k.out] = out[k.out] + coeff * (a * b);
    }
    return out;
}

bool BiDiffOp::coefficients_field_independent() const {
    for (const auto& [k, v] : coeffs_) {
        for (const Generator& g : v.generators()) {
            if (g.is_jet_kind()) return false;
        }
    }
    return true;
}

}  // namespace jetbrane
