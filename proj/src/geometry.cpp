#include "royden/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace royden {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to(double angle, double lo) {
    // representative of angle in [lo, lo + 2*pi)
    double a = std::fmod(angle - lo, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return lo + a;
}

} // namespace

cplx piece_point(const Piece& p, double u) {
    if (const auto* s = std::get_if<Segment>(&p)) return s->a + u * (s->b - s->a);
    const auto& a = std::get<Arc>(p);
    double phi = a.phi0 + u * (a.phi1 - a.phi0);
    return a.center + a.radius * cplx(std::cos(phi), std::sin(phi));
}

cplx piece_velocity(const Piece& p, double u) {
    if (const auto* s = std::get_if<Segment>(&p)) return s->b - s->a;
    const auto& a = std::get<Arc>(p);
    double phi = a.phi0 + u * (a.phi1 - a.phi0);
    return a.radius * (a.phi1 - a.phi0) * cplx(-std::sin(phi), std::cos(phi));
}

cplx piece_start(const Piece& p) { return piece_point(p, 0.0); }
cplx piece_end(const Piece& p) { return piece_point(p, 1.0); }

double piece_length(const Piece& p) {
    if (const auto* s = std::get_if<Segment>(&p)) return std::abs(s->b - s->a);
    const auto& a = std::get<Arc>(p);
    return a.radius * std::abs(a.phi1 - a.phi0);
}

cplx piece_disp_from_start(const Piece& p, double u) {
    if (const auto* s = std::get_if<Segment>(&p)) return u * (s->b - s->a);
    const auto& a = std::get<Arc>(p);
    double d = u * (a.phi1 - a.phi0);
    // e^{i(phi0+d)} - e^{i phi0} = 2i sin(d/2) e^{i(phi0 + d/2)}
    double phim = a.phi0 + 0.5 * d;
    return a.radius * 2.0 * std::sin(0.5 * d) * cplx(-std::sin(phim), std::cos(phim));
}

cplx piece_disp_from_end(const Piece& p, double u) {
    if (const auto* s = std::get_if<Segment>(&p)) return (u - 1.0) * (s->b - s->a);
    const auto& a = std::get<Arc>(p);
    double d = (u - 1.0) * (a.phi1 - a.phi0);
    double phim = a.phi1 + 0.5 * d;
    return a.radius * 2.0 * std::sin(0.5 * d) * cplx(-std::sin(phim), std::cos(phim));
}

double PiecePath::length() const {
    double s = 0.0;
    for (const auto& p : pieces) s += piece_length(p);
    return s;
}

std::vector<double> cut_crossings(const Piece& p, cplx b) {
    // Parameters where the branch of sqrt(x - b) flips. Relative to delta =
    // x - b, the flip set is the transitions between {Im >= 0} and {Im < 0}
    // happening at Re < 0; points with Im == 0 count as the upper side (the
    // principal square root on the cut is the limit from above).
    std::vector<double> zeros;
    if (const auto* s = std::get_if<Segment>(&p)) {
        cplx A = s->a - b, B = s->b - s->a;
        if (B.imag() == 0.0) return {}; // parallel to the cut: Im never changes sign
        double u = -A.imag() / B.imag();
        // Zeros meeting the endpoints in exact arithmetic come out a few ulps
        // off; snap them so landing events are classified as such.
        if (std::abs(u) < 1e-12) u = 0.0;
        if (std::abs(u - 1.0) < 1e-12) u = 1.0;
        if (u >= 0.0 && u <= 1.0) zeros.push_back(u);
    } else {
        const auto& a = std::get<Arc>(p);
        cplx C = a.center - b;
        double s0 = -C.imag() / a.radius;
        if (std::abs(s0) <= 1.0) {
            double base = std::asin(std::clamp(s0, -1.0, 1.0));
            double lo = std::min(a.phi0, a.phi1), hi = std::max(a.phi0, a.phi1);
            double span_eps = 1e-12 * (hi - lo + 1.0);
            for (double root : {base, kPi - base}) {
                for (double phi = wrap_to(root, lo - span_eps); phi <= hi + span_eps;
                     phi += 2.0 * kPi) {
                    double u = (phi - a.phi0) / (a.phi1 - a.phi0);
                    if (std::abs(u) < 1e-12) u = 0.0;
                    if (std::abs(u - 1.0) < 1e-12) u = 1.0;
                    if (u >= 0.0 && u <= 1.0) zeros.push_back(u);
                }
            }
        }
        std::sort(zeros.begin(), zeros.end());
        zeros.erase(std::unique(zeros.begin(), zeros.end(),
                                [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                    zeros.end());
    }
    if (zeros.empty()) return {};

    auto im_at = [&](double u) { return (piece_point(p, u) - b).imag(); };
    auto re_at = [&](double u) { return (piece_point(p, u) - b).real(); };

    std::vector<double> events;
    // Start membership snaps on-cut-within-rounding points to the upper side,
    // matching how a preceding piece's landing event classified the joint.
    double scale = std::abs(piece_point(p, 0.0) - b) + piece_length(p);
    double fuzz = 1e-13 * scale;
    // The strict Re < 0 test needs slack too: at a vanishing endpoint the
    // recomputed delta misses zero by rounding and must not count as a cut.
    double re_fuzz = 1e-12 * scale;
    bool prev_member = im_at(0.0) >= -fuzz;
    for (size_t i = 0; i < zeros.size(); ++i) {
        double z = zeros[i];
        double next = (i + 1 < zeros.size()) ? zeros[i + 1] : 1.0;
        bool cur_member;
        if (z >= 1.0) {
            cur_member = true; // landing on the cut at the endpoint
        } else {
            double mid = 0.5 * (z + next);
            double imm = im_at(mid);
            cur_member = imm > 0.0 || (imm == 0.0);
        }
        if (cur_member != prev_member && re_at(z) < -re_fuzz) events.push_back(z);
        prev_member = cur_member;
    }
    return events;
}

double distance_to_piece(const Piece& p, cplx z) {
    if (const auto* s = std::get_if<Segment>(&p)) {
        cplx d = s->b - s->a;
        double len2 = std::norm(d);
        if (len2 == 0.0) return std::abs(z - s->a);
        double t = std::clamp(((z - s->a) * std::conj(d)).real() / len2, 0.0, 1.0);
        return std::abs(z - (s->a + t * d));
    }
    const auto& a = std::get<Arc>(p);
    cplx rel = z - a.center;
    double ang = std::arg(rel);
    double lo = std::min(a.phi0, a.phi1), hi = std::max(a.phi0, a.phi1);
    double w = wrap_to(ang, lo);
    if (w <= hi) return std::abs(std::abs(rel) - a.radius);
    return std::min(std::abs(z - piece_start(p)), std::abs(z - piece_end(p)));
}

namespace {

bool arc_contains_angle(const Arc& a, double ang, double slack_ang) {
    double lo = std::min(a.phi0, a.phi1), hi = std::max(a.phi0, a.phi1);
    double w = wrap_to(ang, lo - slack_ang);
    return w <= hi + slack_ang;
}

bool point_excluded(cplx pt, cplx shared, double slack) {
    return !std::isnan(shared.real()) && std::abs(pt - shared) <= slack;
}

} // namespace

bool segments_cross(cplx a0, cplx a1, cplx b0, cplx b1, double slack) {
    auto cross2 = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double scale = std::max({std::abs(a1 - a0), std::abs(b1 - b0), 1e-300});
    double eps = 1e-12 * scale * scale;

    double d1 = cross2(a1 - a0, b0 - a0);
    double d2 = cross2(a1 - a0, b1 - a0);
    double d3 = cross2(b1 - b0, a0 - b0);
    double d4 = cross2(b1 - b0, a1 - b0);

    if (std::abs(d1) <= eps && std::abs(d2) <= eps) {
        // Collinear: overlapping extent beyond slack counts as a crossing.
        cplx dir = a1 - a0;
        if (std::abs(dir) == 0.0) return false;
        cplx u = dir / std::abs(dir);
        double s0 = 0.0, s1 = std::abs(a1 - a0);
        double t0 = ((b0 - a0) * std::conj(u)).real();
        double t1 = ((b1 - a0) * std::conj(u)).real();
        if (t0 > t1) std::swap(t0, t1);
        double lo = std::max(s0, t0), hi = std::min(s1, t1);
        return hi - lo > slack;
    }

    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))) {
        // proper crossing; locate it to apply the shared-endpoint exclusion
        double t = d3 / (d3 - d4);
        cplx pt = a0 + t * (a1 - a0);
        double near_ends = std::min({std::abs(pt - a0), std::abs(pt - a1),
                                     std::abs(pt - b0), std::abs(pt - b1)});
        return near_ends > slack;
    }

    // Endpoint-on-interior touches.
    for (cplx e : {a0, a1}) {
        double dist = distance_to_piece(Segment{b0, b1}, e);
        if (dist <= slack && std::abs(e - b0) > slack && std::abs(e - b1) > slack) return true;
    }
    for (cplx e : {b0, b1}) {
        double dist = distance_to_piece(Segment{a0, a1}, e);
        if (dist <= slack && std::abs(e - a0) > slack && std::abs(e - a1) > slack) return true;
    }
    return false;
}

bool pieces_intersect(const Piece& pa, const Piece& pb, cplx shared, double endpoint_slack) {
    const auto* sa = std::get_if<Segment>(&pa);
    const auto* sb = std::get_if<Segment>(&pb);

    if (sa && sb) {
        if (!std::isnan(shared.real())) {
            // Shift slightly away from the allowed shared point by ignoring
            // contact within the slack of it: handled by segments_cross via
            // endpoint slack, adequate because the shared point is always a
            // mutual endpoint of the two chain edges.
            if (!segments_cross(sa->a, sa->b, sb->a, sb->b, endpoint_slack)) return false;
            return true;
        }
        return segments_cross(sa->a, sa->b, sb->a, sb->b, endpoint_slack);
    }

    if (sa || sb) {
        const Segment& s = sa ? *sa : *sb;
        const Arc& a = sa ? std::get<Arc>(pb) : std::get<Arc>(pa);
        // line-circle intersection
        cplx d = s.b - s.a;
        double A = std::norm(d);
        if (A == 0.0) return false;
        cplx f = s.a - a.center;
        double B = 2.0 * (f * std::conj(d)).real();
        double C = std::norm(f) - a.radius * a.radius;
        double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return false;
        double sq = std::sqrt(disc);
        for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
            if (t < -1e-12 || t > 1.0 + 1e-12) continue;
            cplx pt = s.a + t * d;
            double ang = std::arg(pt - a.center);
            double slack_ang = endpoint_slack / std::max(a.radius, 1e-300);
            if (!arc_contains_angle(a, ang, -slack_ang)) continue;
            if (point_excluded(pt, shared, endpoint_slack)) continue;
            // skip contact at mutual endpoints of the two pieces
            bool at_end = std::abs(pt - piece_start(pa)) <= endpoint_slack ||
                          std::abs(pt - piece_end(pa)) <= endpoint_slack;
            bool at_end_b = std::abs(pt - piece_start(pb)) <= endpoint_slack ||
                            std::abs(pt - piece_end(pb)) <= endpoint_slack;
            if (at_end && at_end_b) continue;
            return true;
        }
        return false;
    }

    const Arc& a = std::get<Arc>(pa);
    const Arc& b = std::get<Arc>(pb);
    double cd = std::abs(a.center - b.center);
    if (cd <= 1e-12 * std::max(a.radius, b.radius)) {
        if (std::abs(a.radius - b.radius) > 1e-12 * std::max(a.radius, b.radius)) return false;
        // Same circle: angular overlap beyond slack means collision.
        double lo_a = std::min(a.phi0, a.phi1), hi_a = std::max(a.phi0, a.phi1);
        double lo_b = std::min(b.phi0, b.phi1), hi_b = std::max(b.phi0, b.phi1);
        double lob = wrap_to(lo_b, lo_a);
        double slack_ang = endpoint_slack / std::max(a.radius, 1e-300);
        double lo = std::max(lo_a, lob), hi = std::min(hi_a, lob + (hi_b - lo_b));
        return hi - lo > slack_ang;
    }
    if (cd > a.radius + b.radius || cd < std::abs(a.radius - b.radius)) return false;
    // circle-circle intersection points
    double x = (cd * cd + a.radius * a.radius - b.radius * b.radius) / (2.0 * cd);
    double y2 = a.radius * a.radius - x * x;
    if (y2 < 0.0) y2 = 0.0;
    double y = std::sqrt(y2);
    cplx axis = (b.center - a.center) / cd;
    for (double sgn : {1.0, -1.0}) {
        cplx pt = a.center + axis * cplx(x, sgn * y);
        if (!arc_contains_angle(a, std::arg(pt - a.center), 0.0)) continue;
        if (!arc_contains_angle(b, std::arg(pt - b.center), 0.0)) continue;
        if (point_excluded(pt, shared, endpoint_slack)) continue;
        return true;
    }
    return false;
}

} // namespace royden
