#pragma once

#include <functional>
#include <map>
#include <utility>

#include "matrix.hpp"
#include "taylor.hpp"

namespace fdolb {

using FormMatrix = Matrix<TruncatedForm>;

inline FormMatrix zero_form_matrix(ModelConfig cfg, Space space, std::size_t rows,
                                   std::size_t cols) {
    return FormMatrix(rows, cols, TruncatedForm::zero(cfg, space));
}

inline FormMatrix identity_form_matrix(ModelConfig cfg, Space space, std::size_t nn) {
    auto m = zero_form_matrix(cfg, space, nn, nn);
    for (std::size_t i = 0; i < nn; ++i)
        m.at(i, i) = TruncatedForm::function(space, Coeff::one(cfg));
    return m;
}

inline FormMatrix mat_wedge(const FormMatrix& a, const FormMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix wedge shapes");
    FormMatrix out(a.rows(), b.cols(), TruncatedForm::zero(a.at(0, 0).config(), a.at(0, 0).space()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t c = 0; c < a.cols(); ++c)
                out.at(i, j) += wedge(a.at(i, c), b.at(c, j));
    return out;
}

inline FormMatrix mat_map(const FormMatrix& a,
                          const std::function<TruncatedForm(const TruncatedForm&)>& f) {
    FormMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = f(a.at(i, j));
    return out;
}

inline bool mat_is_zero(const FormMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) return false;
    return true;
}

/// Key (k, p): form degree of the component, module degree of its source.
using ConnKey = std::pair<int, int>;

/// Cohesive module over the quotient model dga: bounded graded free module with
/// a Z-connection. Component (k, p) is a rank(p-k+1) x rank(p) matrix of
/// degree-k quotient forms; the dbar part of the k=1 component is implicit and
/// enters through module-degree signs when the connection is applied.
struct CohesiveModule {
    ModelConfig cfg;
    Space space = Space::Quotient;
    std::map<int, std::size_t> ranks;
    std::map<ConnKey, FormMatrix> conn;

    /// Override of the coefficient derivation used by the k=1 component.
    /// Null means dbar; non-null values exist to exercise check_leibniz.
    std::function<TruncatedForm(const TruncatedForm&)> e1_deriv;

    std::size_t rank(int p) const {
        auto it = ranks.find(p);
        return it == ranks.end() ? 0 : it->second;
    }
    int min_degree() const { return ranks.empty() ? 0 : ranks.begin()->first; }
    int max_degree() const { return ranks.empty() ? 0 : ranks.rbegin()->first; }

    TruncatedForm derive(const TruncatedForm& f) const { return e1_deriv ? e1_deriv(f) : dbar(f); }

    const FormMatrix* component(int k, int p) const {
        auto it = conn.find({k, p});
        return it == conn.end() ? nullptr : &it->second;
    }

    void set_component(int k, int p, FormMatrix m) {
        if (m.rows() != rank(p - k + 1) || m.cols() != rank(p))
            throw ShapeMismatch("connection component shape");
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_homogeneous(k)) throw ShapeMismatch("component form degree");
        if (mat_is_zero(m)) {
            conn.erase({k, p});
            return;
        }
        conn.insert_or_assign(ConnKey{k, p}, std::move(m));
    }
};

/// Free rank-1 module concentrated in degree 0 with the bare dbar connection.
inline CohesiveModule trivial_module(ModelConfig cfg) {
    CohesiveModule e;
    e.cfg = cfg;
    e.ranks[0] = 1;
    return e;
}

/// An element of E (x) A^*: per module degree, a column of quotient forms.
using ModuleElement = std::map<int, std::vector<TruncatedForm>>;

/// Apply the connection by Leibniz: stored matrices act on coefficients from
/// the left via wedge, and each degree-p slot receives (-1)^p dbar of its own
/// coefficient.
inline ModuleElement apply_connection(const CohesiveModule& e, const ModuleElement& v) {
    ModuleElement out;
    auto slot = [&](int q) -> std::vector<TruncatedForm>& {
        auto [it, ins] = out.try_emplace(q);
        if (ins) it->second.assign(e.rank(q), TruncatedForm::zero(e.cfg, e.space));
        return it->second;
    };
    for (const auto& [p, col] : v) {
        if (col.size() != e.rank(p)) throw ShapeMismatch("element column size");
        auto& same = slot(p);
        for (std::size_t i = 0; i < col.size(); ++i) {
            auto d = e.derive(col[i]);
            if (p % 2) d = -d;
            same[i] += d;
        }
        for (const auto& [key, mat] : e.conn) {
            if (key.second != p) continue;
            auto& tgt = slot(p - key.first + 1);
            for (std::size_t i = 0; i < mat.rows(); ++i)
                for (std::size_t j = 0; j < mat.cols(); ++j) tgt[i] += wedge(mat.at(i, j), col[j]);
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        bool all_zero = true;
        for (const auto& f : it->second) all_zero = all_zero && f.is_zero();
        it = all_zero ? out.erase(it) : std::next(it);
    }
    return out;
}

/// Product rule check for the k=1 derivation on a spanning set of forms; the
/// other stored components are matrices acting by wedge, hence automatically
/// coefficient-linear.
inline bool check_leibniz(const CohesiveModule& e) {
    std::vector<TruncatedForm> span;
    span.push_back(TruncatedForm::function(e.space, Coeff::one(e.cfg)));
    for (int j = 0; j < e.cfg.n; ++j)
        span.push_back(TruncatedForm::function(e.space, Coeff::z(e.cfg, std::size_t(j))));
    if (e.cfg.m == 1) {
        span.push_back(TruncatedForm::function(e.space, Coeff::w(e.cfg)));
        span.push_back(TruncatedForm::function(e.space, Coeff::wbar(e.cfg)));
        span.push_back(TruncatedForm::generator(e.cfg, e.space, unsigned(e.cfg.n)));
    }
    for (const auto& a : span)
        for (const auto& b : span) {
            auto lhs = e.derive(wedge(a, b));
            auto rhs = wedge(e.derive(a), b);
            TruncatedForm cross = wedge(a, e.derive(b));
            bool odd = a.is_homogeneous(1) && !a.components().empty();
            rhs += odd ? -cross : cross;
            if (lhs != rhs) return false;
        }
    return true;
}

/// E composed with E on module generators; Leibniz supplies the derivation of
/// the stored coefficients.
inline bool check_integrability(const CohesiveModule& e) {
    if (!check_leibniz(e)) throw LeibnizViolation();
    std::map<ConnKey, FormMatrix> square;
    auto accumulate = [&](int k, int p, const FormMatrix& m) {
        auto [it, ins] = square.try_emplace(ConnKey{k, p},
                                            zero_form_matrix(e.cfg, e.space, m.rows(), m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) it->second.at(i, j) += m.at(i, j);
    };
    for (const auto& [k1, m1] : e.conn) {
        auto [deg1, p] = k1;
        int mid = p - deg1 + 1;
        auto d1 = mat_map(m1, [&](const TruncatedForm& f) {
            auto d = e.derive(f);
            return mid % 2 ? -d : d;
        });
        accumulate(deg1 + 1, p, d1);
        for (const auto& [k2, m2] : e.conn) {
            if (k2.second != mid) continue;
            accumulate(deg1 + k2.first, p, mat_wedge(m2, m1));
        }
    }
    for (const auto& [key, m] : square)
        if (!mat_is_zero(m)) return false;
    return true;
}

/// E[1]: degrees shifted down, connection negated. The implicit dbar part flips
/// by the module-degree sign in apply_connection.
inline CohesiveModule shift(const CohesiveModule& e) {
    CohesiveModule out;
    out.cfg = e.cfg;
    out.space = e.space;
    out.e1_deriv = e.e1_deriv;
    for (const auto& [p, r] : e.ranks) out.ranks[p - 1] = r;
    for (const auto& [key, m] : e.conn) {
        FormMatrix neg = mat_map(m, [](const TruncatedForm& f) { return -f; });
        out.conn.insert_or_assign(ConnKey{key.first, key.second - 1}, std::move(neg));
    }
    return out;
}

} // namespace fdolb
