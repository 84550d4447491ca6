#include "royden/jsonio.hpp"
#include "royden/errors.hpp"

namespace royden {

nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& c : p.c) arr.push_back({c.real(), c.imag()});
    return arr;
}

Poly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ValidationError("polynomial JSON must be an array of [re, im] pairs");
    std::vector<cplx> c;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError("polynomial coefficient must be an [re, im] pair");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return Poly(std::move(c));
}

nlohmann::json quaddiff_to_json(const QuadDiff& q) {
    return {{"g", poly_to_json(q.g)}, {"h", poly_to_json(q.h)}};
}

QuadDiff quaddiff_from_json(const nlohmann::json& j, const ValidateOptions& opt) {
    return validate(poly_from_json(j.at("g")), poly_from_json(j.at("h")), opt);
}

nlohmann::json norm_result_to_json(const NormResult& r) {
    return {{"norm", r.value},
            {"error", r.error_estimate},
            {"genus", r.genus},
            {"orientation_flipped", r.orientation_flipped}};
}

nlohmann::json area_estimate_to_json(const AreaEstimate& a) {
    return {{"value", a.value},
            {"tolerance", a.tolerance},
            {"cells_used", a.cells_used},
            {"certified", a.certified}};
}

nlohmann::json path_system_to_json(const PathSystem& ps) {
    nlohmann::json points = nlohmann::json::array();
    for (const cplx& p : ps.points) points.push_back({p.real(), p.imag()});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : ps.edges) {
        nlohmann::json pieces = nlohmann::json::array();
        for (const auto& piece : edge.pieces) {
            if (const auto* s = std::get_if<Segment>(&piece)) {
                pieces.push_back({{"type", "segment"},
                                  {"from", {s->a.real(), s->a.imag()}},
                                  {"to", {s->b.real(), s->b.imag()}}});
            } else {
                const auto& a = std::get<Arc>(piece);
                pieces.push_back({{"type", "arc"},
                                  {"center", {a.center.real(), a.center.imag()}},
                                  {"radius", a.radius},
                                  {"phi0", a.phi0},
                                  {"phi1", a.phi1}});
            }
        }
        edges.push_back(std::move(pieces));
    }
    return {{"points", points}, {"edges", edges}, {"clearance", ps.clearance}};
}

} // namespace royden
