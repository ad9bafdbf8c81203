#pragma once

// JSON encodings. Pairing arcs are 1-based, complex numbers are [re, im].

#include "qgi/coinvariants.hpp"
#include "qgi/fusion.hpp"
#include "qgi/reps.hpp"

#include <json.hpp>

#include <limits>
#include <string>

namespace qgi {

using Json = nlohmann::json;

inline Json to_json(const Pairing& p) {
    Json arcs = Json::array();
    for (auto [a, b] : p.arcs()) arcs.push_back({a + 1, b + 1});
    return {{"arcs", arcs}};
}

inline Pairing pairing_from_json(const Json& j, std::size_t size) {
    std::vector<Pairing::Arc> arcs;
    for (const auto& arc : j.at("arcs")) {
        const auto a = arc.at(0).get<std::size_t>();
        const auto b = arc.at(1).get<std::size_t>();
        if (a == 0 || b == 0) throw std::invalid_argument("pairing positions are 1-based");
        arcs.emplace_back(a - 1, b - 1);
    }
    return Pairing::from_arcs(size, arcs);
}

inline Json to_json(const Coloring& c) { return c.str(); }

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
inline Json to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

inline Json to_json(const FusionVector& v) {
    Json terms = Json::object();
    for (const auto& [w, m] : v.terms()) terms[w.str()] = to_json(m);
    return {{"terms", terms}};
}

inline Json to_json(const ExactMatrix& m) { return m.to_strings(); }

inline Json to_json(const ExactVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(q.get_str());
    return out;
}

inline Json fullness_json(const Word& word, const AmbientSpec& amb, const QuotientSpec& q,
                          const FullnessVerdict& v) {
    return {{"word", word.str()},
            {"n", amb.n},
            {"quotient", {q.dim_w, q.dim_u}},
            {"holds", v.holds},
            {"solution_dim", v.solution_space_dim},
            {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)}};
}

inline Json to_json(const Complex& z) { return {z.real(), z.imag()}; }

inline Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(Complex(m(r, c))));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const MatrixRep& rep) {
    Json images = Json::array();
    for (int i = 0; i < rep.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < rep.n(); ++j) row.push_back(to_json(rep.image(i, j)));
        images.push_back(std::move(row));
    }
    return {{"family", family_name(rep.family())}, {"n", rep.n()}, {"d", rep.d()}, {"images", images}};
}

inline Json to_json(const RelationReport& r) {
    return {{"unitary_left", r.unitary_left},
            {"unitary_right", r.unitary_right},
            {"conjugate_left", r.conjugate_left},
            {"conjugate_right", r.conjugate_right},
            {"selfadjoint", r.selfadjoint ? Json(*r.selfadjoint) : Json(nullptr)},
            {"tolerance", r.tolerance},
            {"passed", r.passed}};
}

inline Json witness_json(const std::optional<SeparationWitness>& w) {
    if (!w) return {{"found", false}, {"trial", nullptr}, {"norm", nullptr}, {"rep", nullptr}};
    return {{"found", true}, {"trial", w->trial}, {"norm", w->norm}, {"rep", to_json(w->rep)}};
}

} // namespace qgi
