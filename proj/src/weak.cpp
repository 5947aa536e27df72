#include "jetbrane/weak.hpp"

#include <algorithm>
#include <set>

#include "jetbrane/errors.hpp"
#include "jetbrane/jet.hpp"

namespace jetbrane {

namespace {

constexpr size_t kMaxAnsatzColumns = 200000;

struct FactorListLess {
    bool operator()(const std::vector<Factor>& a, const std::vector<Factor>& b) const {
        Term ta(Rational(1), a), tb(Rational(1), b);
        return term_key_less(ta, tb);
    }
};

/// Candidate monomials over the generator pool with total degree bounded and
/// odd generators at most linear. Deterministic enumeration order.
void enumerate_monomials(const std::vector<Generator>& pool, size_t idx, int degree_left,
                         std::vector<Factor>& current, std::vector<std::vector<Factor>>& out) {
    out.push_back(current);
    if (degree_left == 0) return;
    for (size_t i = idx; i < pool.size(); ++i) {
        int cap = pool[i].parity() == Parity::Odd ? 1 : degree_left;
        for (int e = 1; e <= cap; ++e) {
            current.push_back({pool[i], static_cast<uint32_t>(e)});
            enumerate_monomials(pool, i + 1, degree_left - e, current, out);
            current.pop_back();
            if (out.size() > kMaxAnsatzColumns) {
                throw ConfigError("ansatz monomial pool exceeds the engine cap; lower the bounds");
            }
        }
    }
}

/// Exact sparse Gauss-Jordan solve of sum_j c_j col_j = rhs. Returns a
/// particular solution (free variables zero) or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_exact(
    size_t n_cols, const std::vector<std::map<size_t, Rational>>& rows_in,
    const std::vector<Rational>& rhs_in) {
    struct Row {
        std::map<size_t, Rational> a;
        Rational b;
    };
    std::vector<Row> rows;
    rows.reserve(rows_in.size());
    for (size_t r = 0; r < rows_in.size(); ++r) {
        rows.push_back({rows_in[r], rhs_in[r]});
    }

    std::vector<long> pivot_row_of_col(n_cols, -1);
    std::vector<bool> row_used(rows.size(), false);

    // Repeat passes until no unused row can supply a pivot: elimination may
    // re-populate previously skipped columns.
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t col = 0; col < n_cols; ++col) {
            if (pivot_row_of_col[col] >= 0) continue;
            // pick the sparsest available row with a nonzero entry here
            long pivot = -1;
            size_t best_size = 0;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (row_used[r]) continue;
                auto it = rows[r].a.find(col);
                if (it == rows[r].a.end() || jetbrane::is_zero(it->second)) continue;
                if (pivot < 0 || rows[r].a.size() < best_size) {
                    pivot = static_cast<long>(r);
                    best_size = rows[r].a.size();
                }
            }
            if (pivot < 0) continue;
            progress = true;
            Row& p = rows[static_cast<size_t>(pivot)];
            Rational inv = p.a[col];
            for (auto& [c, v] : p.a) v /= inv;
            p.b /= inv;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == static_cast<size_t>(pivot)) continue;
                auto it = rows[r].a.find(col);
                if (it == rows[r].a.end() || jetbrane::is_zero(it->second)) continue;
                Rational factor = it->second;
                for (const auto& [c, v] : p.a) {
                    Rational delta = factor * v;
                    auto jt = rows[r].a.find(c);
                    if (jt == rows[r].a.end()) {
                        rows[r].a.emplace(c, -delta);
                    } else {
                        jt->second -= delta;
                        if (jetbrane::is_zero(jt->second)) rows[r].a.erase(jt);
                    }
                }
                Rational db = factor * p.b;
                rows[r].b -= db;
            }
            row_used[static_cast<size_t>(pivot)] = true;
            pivot_row_of_col[col] = pivot;
        }
    }

    // Unused rows are now identically zero on the left; a nonzero right-hand
    // side makes the system inconsistent.
    for (size_t r = 0; r < rows.size(); ++r) {
        if (!row_used[r] && !jetbrane::is_zero(rows[r].b)) return std::nullopt;
    }

    std::vector<Rational> sol(n_cols, Rational(0));
    for (size_t col = 0; col < n_cols; ++col) {
        long r = pivot_row_of_col[col];
        if (r < 0) continue;  // free
        // pivot row: col coefficient is 1; other entries are in free columns
        // (Gauss-Jordan eliminated pivot columns elsewhere), which are zero.
        sol[col] = rows[static_cast<size_t>(r)].b;
    }
    return sol;
}

struct GeneratorLess {
    bool operator()(const Generator& a, const Generator& b) const { return a < b; }
};

WeakResult weakly_zero_homogeneous(const SpaceSpec& sp, const Expr& f, std::span<const Expr> E,
                                   const AnsatzConfig& cfg) {
    WeakResult res;
    if (f.is_zero()) {
        res.certificate = WeakCertificate{};
        return res;
    }
    Grading target = f.grading();

    // generator pool: coordinates plus jets (up to the coefficient jet bound)
    // of every dependent base occurring in f or E; basis forms only when the
    // input carries form degree.
    std::set<Generator, GeneratorLess> bases;
    for (const Generator& g : f.dependent_bases()) bases.insert(g);
    for (const Expr& e : E) {
        for (const Generator& g : e.dependent_bases()) bases.insert(g);
    }
    std::vector<Generator> pool;
    for (int c = 0; c < sp.dim; ++c) pool.push_back(Generator::coordinate(c));
    for (const Generator& b : bases) {
        for (const MultiIndex& mu : multi_indices_up_to(sp.dim, cfg.max_coeff_jet_order)) {
            pool.push_back(b.with_jet(mu));
        }
    }
    if (target.form_degree > 0) {
        for (int c = 0; c < sp.dim; ++c) pool.push_back(Generator::basis_form(c));
    }

    std::vector<std::vector<Factor>> monomials;
    {
        std::vector<Factor> current;
        enumerate_monomials(pool, 0, cfg.max_coeff_degree, current, monomials);
    }

    // cache d_(mu) E_a and their gradings
    std::vector<MultiIndex> mus = multi_indices_up_to(sp.dim, cfg.max_jet_order);
    struct EDeriv {
        size_t a;
        MultiIndex mu;
        Expr value;
        Grading grading;
    };
    std::vector<EDeriv> ederivs;
    for (size_t a = 0; a < E.size(); ++a) {
        if (E[a].is_zero()) continue;
        Grading ge = E[a].grading();
        for (const MultiIndex& mu : mus) {
            Expr d = multi_total_derivative(sp, E[a], mu);
            if (!d.is_zero()) ederivs.push_back({a, mu, std::move(d), ge});
        }
    }

    // assemble columns, grading-filtered
    struct Column {
        size_t deriv;     // index into ederivs
        size_t monomial;  // index into monomials
        Expr value;
    };
    std::vector<Column> columns;
    std::map<std::vector<Factor>, size_t, FactorListLess> row_of;
    std::vector<std::map<size_t, Rational>> rows;  // row -> (col -> coeff)
    std::vector<Rational> rhs;

    auto row_id = [&](const std::vector<Factor>& key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        size_t id = rows.size();
        row_of.emplace(key, id);
        rows.emplace_back();
        rhs.push_back(Rational(0));
        return id;
    };

    for (size_t d = 0; d < ederivs.size(); ++d) {
        for (size_t m = 0; m < monomials.size(); ++m) {
            Term mono(Rational(1), monomials[m]);
            Grading gm = term_grading(mono);
            Grading sum;
            sum.ghost = gm.ghost + ederivs[d].grading.ghost;
            sum.resolution = gm.resolution + ederivs[d].grading.resolution;
            sum.form_degree = gm.form_degree + ederivs[d].grading.form_degree;
            sum.parity = parity_add(gm.parity, ederivs[d].grading.parity);
            if (!(sum == target)) continue;
            Expr mexpr = Expr::canonicalize({mono});
            Expr col = mexpr * ederivs[d].value;
            if (col.is_zero()) continue;
            size_t cid = columns.size();
            for (const Term& t : col.terms()) {
                rows[row_id(t.factors)].emplace(cid, t.coeff);
            }
            columns.push_back({d, m, std::move(col)});
        }
    }

    for (const Term& t : f.terms()) {
        rhs[row_id(t.factors)] = t.coeff;
    }

    auto sol = solve_exact(columns.size(), rows, rhs);
    if (!sol) return res;

    WeakCertificate cert;
    std::map<std::pair<size_t, MultiIndex>, std::vector<Term>> parts;
    for (size_t c = 0; c < columns.size(); ++c) {
        if (jetbrane::is_zero((*sol)[c])) continue;
        const EDeriv& d = ederivs[columns[c].deriv];
        parts[{d.a, d.mu}].push_back(Term((*sol)[c], monomials[columns[c].monomial]));
    }
    for (auto& [key, terms] : parts) {
        Expr k = Expr::canonicalize(std::move(terms));
        if (!k.is_zero()) cert.k.emplace(key, std::move(k));
    }

    // soundness: the certificate must reconstruct the input exactly
    Expr rebuilt;
    for (const auto& [key, k] : cert.k) {
        rebuilt = rebuilt + k * multi_total_derivative(sp, E[key.first], key.second);
    }
    if (!(rebuilt == f)) {
        throw InternalError("weak certificate failed exact reconstruction");
    }
    res.certificate = std::move(cert);
    return res;
}

}  // namespace

WeakResult weakly_zero(const SpaceSpec& sp, const Expr& f, std::span<const Expr> E,
                       const AnsatzConfig& cfg) {
    if (f.is_zero() || f.is_homogeneous()) {
        return weakly_zero_homogeneous(sp, f, E, cfg);
    }
    // split into homogeneous components and certify each
    std::map<std::string, std::vector<Term>> groups;
    for (const Term& t : f.terms()) {
        Grading g = term_grading(t);
        std::string key = std::to_string(g.ghost) + "|" + std::to_string(g.resolution) + "|" +
                          std::to_string(g.form_degree) + "|" + std::to_string(static_cast<int>(g.parity));
        groups[key].push_back(t);
    }
    WeakCertificate merged;
    for (auto& [key, terms] : groups) {
        WeakResult part = weakly_zero_homogeneous(sp, Expr::canonicalize(std::move(terms)), E, cfg);
        if (!part.certified()) return WeakResult{};
        for (auto& [k, v] : part.certificate->k) {
            auto it = merged.k.find(k);
            if (it == merged.k.end()) {
                merged.k.emplace(k, v);
            } else {
                it->second = it->second + v;
            }
        }
    }
    WeakResult res;
    res.certificate = std::move(merged);
    return res;
}

WeakResult weakly_equal(const SpaceSpec& sp, const Expr& f, const Expr& g, std::span<const Expr> E,
                        const AnsatzConfig& cfg) {
    return weakly_zero(sp, f - g, E, cfg);
}

OperatorWeakResult weakly_zero_operator(const SpaceSpec& sp, const TotalDiffOp& Z,
                                        const TotalDiffOp& R, std::span<const Expr> E,
                                        const AnsatzConfig& cfg) {
    OperatorWeakResult out;
    TotalDiffOp composite = compose(sp, Z, adjoint(sp, R));
    out.premise_certified = true;
    for (const auto& [k, coeff] : composite.coeffs()) {
        if (!weakly_zero(sp, coeff, E, cfg).certified()) {
            out.premise_certified = false;
            break;
        }
    }
    out.conclusion_certified = true;
    for (const auto& [k, coeff] : Z.coeffs()) {
        if (!weakly_zero(sp, coeff, E, cfg).certified()) {
            out.conclusion_certified = false;
            break;
        }
    }
    return out;
}

}  // namespace jetbrane
