#include "jetbrane/expr.hpp"

#include <algorithm>
#include <set>

#include "jetbrane/errors.hpp"

namespace jetbrane {

namespace {

bool factor_is_odd(const Factor& f) {
    return f.gen.parity() == Parity::Odd && (f.exp % 2 == 1);
}

/// Sorts the factor list in place, tracking the Grassmann sign of odd-factor
/// transpositions and merging equal generators. Returns false when the term
/// vanishes (an odd generator squared) or has zero coefficient.
bool normalize_term(Term& t) {
    if (jetbrane::is_zero(t.coeff)) return false;
    auto& f = t.factors;
    f.erase(std::remove_if(f.begin(), f.end(), [](const Factor& x) { return x.exp == 0; }), f.end());

    int sign = 1;
    for (size_t i = 1; i < f.size(); ++i) {
        Factor cur = f[i];
        bool cur_odd = factor_is_odd(cur);
        size_t j = i;
        while (j > 0 && cur.gen < f[j - 1].gen) {
            if (cur_odd && factor_is_odd(f[j - 1])) sign = -sign;
            f[j] = f[j - 1];
            --j;
        }
        f[j] = cur;
    }

    // merge adjacent equal generators
    std::vector<Factor> merged;
    merged.reserve(f.size());
    for (const Factor& x : f) {
        if (!merged.empty() && merged.back().gen == x.gen) {
            merged.back().exp += x.exp;
        } else {
            merged.push_back(x);
        }
    }
    for (const Factor& x : merged) {
        if (x.gen.parity() == Parity::Odd && x.exp > 1) return false;
    }
    f = std::move(merged);
    if (sign < 0) t.coeff = -t.coeff;
    return true;
}

/// Product of two canonical terms; nullopt when it vanishes.
std::optional<Term> mul_terms(const Term& a, const Term& b) {
    Term out;
    out.coeff = a.coeff * b.coeff;
    const auto& fa = a.factors;
    const auto& fb = b.factors;
    out.factors.reserve(fa.size() + fb.size());

    // odd_suffix[i] = number of odd factors of `a` at positions >= i
    std::vector<int> odd_suffix(fa.size() + 1, 0);
    for (size_t i = fa.size(); i-- > 0;) {
        odd_suffix[i] = odd_suffix[i + 1] + (factor_is_odd(fa[i]) ? 1 : 0);
    }

    size_t i = 0, j = 0;
    int sign = 1;
    while (i < fa.size() && j < fb.size()) {
        auto cmp = fa[i].gen.compare(fb[j].gen);
        if (cmp == std::strong_ordering::less) {
            out.factors.push_back(fa[i++]);
        } else if (cmp == std::strong_ordering::greater) {
            if (factor_is_odd(fb[j]) && (odd_suffix[i] % 2 == 1)) sign = -sign;
            out.factors.push_back(fb[j++]);
        } else {
            if (fa[i].gen.parity() == Parity::Odd) return std::nullopt;  // odd square
            out.factors.push_back({fa[i].gen, fa[i].exp + fb[j].exp});
            ++i;
            ++j;
        }
    }
    while (i < fa.size()) out.factors.push_back(fa[i++]);
    while (j < fb.size()) out.factors.push_back(fb[j++]);
    if (sign < 0) out.coeff = -out.coeff;
    return out;
}

bool factors_equal(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    return a == b;
}

/// Sorts by monomial key and merges duplicates. Terms must be individually
/// canonical already.
std::vector<Term> merge_sorted(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_key_less);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && factors_equal(out.back().factors, t.factors)) {
            out.back().coeff += t.coeff;
            if (jetbrane::is_zero(out.back().coeff)) out.pop_back();
        } else {
            if (!jetbrane::is_zero(t.coeff)) out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

bool term_key_less(const Term& a, const Term& b) {
    const auto& fa = a.factors;
    const auto& fb = b.factors;
    size_t n = std::min(fa.size(), fb.size());
    for (size_t i = 0; i < n; ++i) {
        auto cmp = fa[i].gen.compare(fb[i].gen);
        if (cmp != std::strong_ordering::equal) return cmp == std::strong_ordering::less;
        if (fa[i].exp != fb[i].exp) return fa[i].exp < fb[i].exp;
    }
    return fa.size() < fb.size();
}

Grading term_grading(const Term& t) {
    Grading g;
    int par = 0;
    for (const Factor& f : t.factors) {
        int e = static_cast<int>(f.exp);
        g.ghost += f.gen.pure_ghost() * e;
        g.resolution += f.gen.resolution() * e;
        g.form_degree += f.gen.form_degree() * e;
        if (f.gen.parity() == Parity::Odd) par += e;
    }
    g.parity = (par % 2 == 1) ? Parity::Odd : Parity::Even;
    return g;
}

Expr Expr::constant(Rational c) {
    Expr e;
    if (!jetbrane::is_zero(c)) e.terms_.push_back(Term(std::move(c), {}));
    return e;
}

Expr Expr::from_generator(const Generator& g) {
    Expr e;
    e.terms_.push_back(Term(Rational(1), {Factor{g, 1}}));
    return e;
}

Expr Expr::monomial(Rational c, std::vector<Factor> factors) {
    return canonicalize({Term(std::move(c), std::move(factors))});
}

Expr Expr::canonicalize(std::vector<Term> raw) {
    std::vector<Term> clean;
    clean.reserve(raw.size());
    for (auto& t : raw) {
        if (normalize_term(t)) clean.push_back(std::move(t));
    }
    Expr e;
    e.terms_ = merge_sorted(std::move(clean));
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
        if (!(a.terms_[i].factors == b.terms_[i].factors)) return false;
    }
    return true;
}

Expr Expr::operator-() const {
    Expr out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

Expr operator+(const Expr& a, const Expr& b) {
    // linear merge of two canonical term lists
    Expr out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        if (factors_equal(a.terms_[i].factors, b.terms_[j].factors)) {
            Rational c = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!jetbrane::is_zero(c)) out.terms_.push_back(Term(std::move(c), a.terms_[i].factors));
            ++i;
            ++j;
        } else if (term_key_less(a.terms_[i], b.terms_[j])) {
            out.terms_.push_back(a.terms_[i++]);
        } else {
            out.terms_.push_back(b.terms_[j++]);
        }
    }
    while (i < a.terms_.size()) out.terms_.push_back(a.terms_[i++]);
    while (j < b.terms_.size()) out.terms_.push_back(b.terms_[j++]);
    return out;
}

Expr operator-(const Expr& a, const Expr& b) {
    return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
    std::vector<Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const Term& ta : a.terms_) {
        for (const Term& tb : b.terms_) {
            if (auto p = mul_terms(ta, tb)) prods.push_back(std::move(*p));
        }
    }
    Expr out;
    out.terms_ = merge_sorted(std::move(prods));
    return out;
}

Expr operator*(const Rational& c, const Expr& e) {
    if (jetbrane::is_zero(c)) return Expr::zero();
    Expr out = e;
    for (auto& t : out.terms_) t.coeff = c * t.coeff;
    return out;
}

Expr Expr::pow(uint32_t n) const {
    Expr acc = Expr::one();
    for (uint32_t k = 0; k < n; ++k) acc = acc * (*this);
    return acc;
}

Grading Expr::grading() const {
    if (terms_.empty()) return Grading{};
    Grading g = term_grading(terms_.front());
    for (size_t i = 1; i < terms_.size(); ++i) {
        Grading h = term_grading(terms_[i]);
        if (!(h == g)) {
            throw GradingError("inhomogeneous expression: term '" + terms_.front().debug_string() +
                               "' clashes with term '" + terms_[i].debug_string() + "'");
        }
    }
    return g;
}

bool Expr::is_homogeneous() const {
    return grading_if_homogeneous().has_value();
}

std::optional<Grading> Expr::grading_if_homogeneous() const {
    if (terms_.empty()) return Grading{};
    Grading g = term_grading(terms_.front());
    for (size_t i = 1; i < terms_.size(); ++i) {
        if (!(term_grading(terms_[i]) == g)) return std::nullopt;
    }
    return g;
}

Expr Expr::partial(const Generator& g, Side side) const {
    std::vector<Term> out;
    bool g_odd = g.parity() == Parity::Odd;
    for (const Term& t : terms_) {
        size_t idx = t.factors.size();
        for (size_t i = 0; i < t.factors.size(); ++i) {
            if (t.factors[i].gen == g) {
                idx = i;
                break;
            }
        }
        if (idx == t.factors.size()) continue;

        const Factor& f = t.factors[idx];
        Term d;
        d.coeff = t.coeff * Rational(static_cast<long>(f.exp));
        if (g_odd) {
            int odd_count = 0;
            if (side == Side::Left) {
                for (size_t i = 0; i < idx; ++i) {
                    if (factor_is_odd(t.factors[i])) ++odd_count;
                }
            } else {
                for (size_t i = idx + 1; i < t.factors.size(); ++i) {
                    if (factor_is_odd(t.factors[i])) ++odd_count;
                }
            }
            if (odd_count % 2 == 1) d.coeff = -d.coeff;
        }
        d.factors.reserve(t.factors.size());
        for (size_t i = 0; i < t.factors.size(); ++i) {
            if (i == idx) {
                if (f.exp > 1) d.factors.push_back({f.gen, f.exp - 1});
            } else {
                d.factors.push_back(t.factors[i]);
            }
        }
        out.push_back(std::move(d));
    }
    Expr e;
    e.terms_ = merge_sorted(std::move(out));
    return e;
}

Expr Expr::substitute(const std::map<Generator, Expr>& sigma) const {
    for (const auto& [g, img] : sigma) {
        if (img.is_zero()) continue;
        auto gr = img.grading_if_homogeneous();
        if (!gr) {
            throw SubstitutionError("substitution image for " + g.debug_string() +
                                    " is not grading-homogeneous");
        }
        if (gr->parity != g.parity()) {
            throw SubstitutionError("substitution image for " + g.debug_string() +
                                    " has mismatched parity");
        }
    }
    Expr total;
    for (const Term& t : terms_) {
        Expr acc = Expr::constant(t.coeff);
        for (const Factor& f : t.factors) {
            auto it = sigma.find(f.gen);
            if (it == sigma.end()) {
                Expr g;
                g = Expr::monomial(Rational(1), {Factor{f.gen, f.exp}});
                acc = acc * g;
            } else {
                acc = acc * it->second.pow(f.exp);
            }
            if (acc.is_zero()) break;
        }
        total = total + acc;
    }
    return total;
}

std::vector<Generator> Expr::generators() const {
    std::set<Generator> seen;
    for (const Term& t : terms_) {
        for (const Factor& f : t.factors) seen.insert(f.gen);
    }
    return {seen.begin(), seen.end()};
}

std::vector<Generator> Expr::dependent_bases() const {
    std::set<Generator> seen;
    for (const Term& t : terms_) {
        for (const Factor& f : t.factors) {
            if (f.gen.is_jet_kind()) seen.insert(f.gen.base_generator());
        }
    }
    return {seen.begin(), seen.end()};
}

bool Expr::depends_on(const Generator& g) const {
    for (const Term& t : terms_) {
        for (const Factor& f : t.factors) {
            if (f.gen == g) return true;
        }
    }
    return false;
}

int Expr::max_jet_order() const {
    int m = 0;
    for (const Term& t : terms_) {
        for (const Factor& f : t.factors) {
            if (f.gen.is_jet_kind()) m = std::max(m, f.gen.jet.order());
        }
    }
    return m;
}

std::string Generator::debug_string() const {
    static const char* tags[] = {"x", "f", "c", "af", "ac", "dx"};
    std::string s = tags[static_cast<size_t>(kind)];
    s += std::to_string(base);
    if (!jet.empty()) {
        s += "_(";
        for (int e : jet.entries()) s += std::to_string(e);
        s += ")";
    }
    return s;
}

std::string Term::debug_string() const {
    std::string s = jetbrane::to_string(coeff);
    for (const Factor& f : factors) {
        s += "*";
        s += f.gen.debug_string();
        if (f.exp != 1) s += "^" + std::to_string(f.exp);
    }
    return s;
}

std::string Expr::debug_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += terms_[i].debug_string();
    }
    return s;
}

}  // namespace jetbrane
