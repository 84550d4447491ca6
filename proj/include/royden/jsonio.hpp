#ifndef ROYDEN_JSONIO_HPP
#define ROYDEN_JSONIO_HPP

#include "royden/homology.hpp"
#include "royden/norm.hpp"
#include "royden/oracle.hpp"
#include "royden/quaddiff.hpp"

#include <json.hpp>

namespace royden {

/// {"g": [[re,im],...], "h": [[re,im],...]}, coefficients low-to-high.
nlohmann::json quaddiff_to_json(const QuadDiff& q);
QuadDiff quaddiff_from_json(const nlohmann::json& j, const ValidateOptions& opt = {});

nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

/// {"norm": float, "error": float, "genus": int, "orientation_flipped": bool}
nlohmann::json norm_result_to_json(const NormResult& r);

/// {"value": float, "tolerance": float, "cells_used": int, "certified": bool}
nlohmann::json area_estimate_to_json(const AreaEstimate& a);

/// Points, edges and detour arcs of a path system, for plotting.
nlohmann::json path_system_to_json(const PathSystem& ps);

} // namespace royden

#endif
