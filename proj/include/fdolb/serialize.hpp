#pragma once

#include <json.hpp>

#include "cohesive.hpp"
#include "field.hpp"
#include "hom.hpp"

namespace fdolb {

using Json = nlohmann::json;

inline long long to_ll(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error("integer too large for serialization");
    return z.get_si();
}

/// Scalar as [re_num, re_den, im_num, im_den].
inline Json to_json(const Scalar& s) {
    return Json::array({to_ll(s.re().get_num()), to_ll(s.re().get_den()),
                        to_ll(s.im().get_num()), to_ll(s.im().get_den())});
}

inline Scalar scalar_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw Error("scalar must be [re_num, re_den, im_num, im_den]");
    long rd = j[1].get<long>(), id = j[3].get<long>();
    if (rd == 0 || id == 0) throw Error("zero denominator in scalar");
    return scalar_from_parts(j[0].get<long>(), rd, j[2].get<long>(), id);
}

inline Json to_json(const ModelConfig& cfg) {
    return Json{{"m", cfg.m}, {"n", cfg.n}, {"r", cfg.r}, {"d_cap", cfg.d_cap}};
}

inline ModelConfig config_from_json(const Json& j) {
    ModelConfig cfg;
    cfg.m = j.at("m").get<int>();
    cfg.n = j.at("n").get<int>();
    cfg.r = j.at("r").get<int>();
    cfg.d_cap = j.at("d_cap").get<int>();
    if (cfg.m < 0 || cfg.m > 1 || cfg.n < 0 || cfg.r < 0 || cfg.d_cap < 0)
        throw Error("invalid model config");
    return cfg;
}

/// Coefficient as [exponent-list, scalar] pairs, exponents [w, wb, zb.., z..],
/// sorted lexicographically (the storage order).
inline Json to_json(const Coeff& c) {
    Json arr = Json::array();
    for (const auto& [m, s] : c.terms().terms()) {
        Json exps = Json::array({m.base.w, m.base.wb});
        for (auto e : m.base.zb.exponents()) exps.push_back(e);
        for (auto e : m.z.exponents()) exps.push_back(e);
        arr.push_back(Json::array({exps, to_json(s)}));
    }
    return arr;
}

inline Coeff coeff_from_json(const Json& j, ModelConfig cfg) {
    Coeff c(cfg);
    std::size_t n = std::size_t(cfg.n);
    for (const auto& term : j) {
        const auto& exps = term.at(0);
        if (exps.size() != 2 + 2 * n) throw Error("coefficient exponent list length");
        FnMono m{BaseMono{exps[0].get<std::uint32_t>(), exps[1].get<std::uint32_t>(),
                          MultiIndex(n)},
                 MultiIndex(n)};
        for (std::size_t i = 0; i < n; ++i) m.base.zb[i] = exps[2 + i].get<std::uint32_t>();
        for (std::size_t i = 0; i < n; ++i) m.z[i] = exps[2 + n + i].get<std::uint32_t>();
        c.add(m, scalar_from_json(term.at(1)));
    }
    return c;
}

inline std::string generator_name(unsigned g, const ModelConfig& cfg) {
    if (int(g) < cfg.n) return "dzb" + std::to_string(g + 1);
    if (int(g) == cfg.n) return "dwb";
    throw Error("generator index out of range");
}

inline unsigned generator_from_name(const std::string& name, const ModelConfig& cfg) {
    if (name == "dwb") return unsigned(cfg.n);
    if (name.rfind("dzb", 0) == 0) {
        int i = std::stoi(name.substr(3));
        if (i >= 1 && i <= cfg.n) return unsigned(i - 1);
    }
    throw Error("unknown generator name: " + name);
}

/// Form as {space, config, components: [[generator-list, coeff]]}.
inline Json to_json(const TruncatedForm& f) {
    Json comps = Json::array();
    for (const auto& [mask, c] : f.components()) {
        Json gens = Json::array();
        for (unsigned g = 0; g <= unsigned(f.config().n); ++g)
            if (mask & (GenMask(1) << g)) gens.push_back(generator_name(g, f.config()));
        comps.push_back(Json::array({gens, to_json(c)}));
    }
    return Json{{"space", f.space() == Space::Ambient ? "ambient" : "quotient"},
                {"config", to_json(f.config())},
                {"components", comps}};
}

inline TruncatedForm form_from_json(const Json& j) {
    ModelConfig cfg = config_from_json(j.at("config"));
    std::string sp = j.at("space").get<std::string>();
    if (sp != "ambient" && sp != "quotient") throw Error("unknown form space: " + sp);
    TruncatedForm f(cfg, sp == "ambient" ? Space::Ambient : Space::Quotient);
    for (const auto& comp : j.at("components")) {
        GenMask mask = 0;
        for (const auto& g : comp.at(0))
            mask |= GenMask(1) << generator_from_name(g.get<std::string>(), cfg);
        f.add_component(mask, coeff_from_json(comp.at(1), cfg));
    }
    return f;
}

inline Json to_json(const FormMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline FormMatrix form_matrix_from_json(const Json& j, ModelConfig cfg, Space space,
                                        std::size_t rows, std::size_t cols) {
    FormMatrix m = zero_form_matrix(cfg, space, rows, cols);
    if (j.size() != rows) throw Error("connection matrix row count");
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw Error("connection matrix column count");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = form_from_json(j[i][c]);
    }
    return m;
}

/// Module as {config, ranks: {degree: rank}, connection: [[k, p, matrix]]}.
inline Json to_json(const CohesiveModule& e) {
    Json ranks = Json::object();
    for (const auto& [p, r] : e.ranks) ranks[std::to_string(p)] = r;
    Json conn = Json::array();
    for (const auto& [key, m] : e.conn)
        conn.push_back(Json::array({key.first, key.second, to_json(m)}));
    return Json{{"config", to_json(e.cfg)}, {"ranks", ranks}, {"connection", conn}};
}

inline CohesiveModule module_from_json(const Json& j) {
    CohesiveModule e;
    e.cfg = config_from_json(j.at("config"));
    for (const auto& [deg, r] : j.at("ranks").items()) {
        std::size_t rank = r.get<std::size_t>();
        if (rank) e.ranks[std::stoi(deg)] = rank;
    }
    for (const auto& comp : j.at("connection")) {
        int k = comp.at(0).get<int>(), p = comp.at(1).get<int>();
        e.set_component(k, p,
                        form_matrix_from_json(comp.at(2), e.cfg, e.space, e.rank(p - k + 1),
                                              e.rank(p)));
    }
    return e;
}

/// Hom element as {degree, components: [[j, p, matrix]]}; endpoints travel
/// separately.
inline Json to_json(const HomElement& h) {
    Json comps = Json::array();
    for (const auto& [key, m] : h.comps)
        comps.push_back(Json::array({key.first, key.second, to_json(m)}));
    return Json{{"degree", h.degree}, {"components", comps}};
}

inline HomElement hom_from_json(const Json& j, CohesiveModule source, CohesiveModule target) {
    HomElement h;
    h.source = std::move(source);
    h.target = std::move(target);
    h.degree = j.at("degree").get<int>();
    for (const auto& comp : j.at("components")) {
        int jj = comp.at(0).get<int>(), p = comp.at(1).get<int>();
        h.set_component(jj, p,
                        form_matrix_from_json(comp.at(2), h.source.cfg, h.source.space,
                                              h.target.rank(p + h.degree - jj),
                                              h.source.rank(p)));
    }
    return h;
}

inline Json to_json(const MultiIndex& a) {
    Json arr = Json::array();
    for (auto e : a.exponents()) arr.push_back(e);
    return arr;
}

inline MultiIndex multi_index_from_json(const Json& j) {
    MultiIndex a(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) a[i] = j[i].get<std::uint32_t>();
    return a;
}

} // namespace fdolb
