#ifndef ROYDEN_GEOMETRY_HPP
#define ROYDEN_GEOMETRY_HPP

#include "royden/poly.hpp"

#include <variant>
#include <vector>

namespace royden {

/// Straight piece from a to b, parametrized x(u) = a + u*(b - a), u in [0,1].
struct Segment {
    cplx a, b;
};

/// Circular piece x(u) = center + radius * exp(i*(phi0 + u*(phi1 - phi0))).
/// phi1 > phi0 runs counterclockwise. |phi1 - phi0| may be up to 2*pi.
struct Arc {
    cplx center;
    double radius;
    double phi0, phi1;
};

using Piece = std::variant<Segment, Arc>;

/// Canonicalize points on the negative real axis to the upper side
/// (Im == -0.0 becomes +0.0), so principal square roots are deterministic.
inline cplx canon_cut(cplx z) {
    if (z.imag() == 0.0) return cplx(z.real(), 0.0);
    return z;
}

/// arg with the negative real axis mapped to +pi regardless of signed zero.
inline double arg_canon(cplx z) { return std::arg(canon_cut(z)); }

/// Principal square root after cut canonicalization.
inline cplx sqrt_canon(cplx z) { return std::sqrt(canon_cut(z)); }

cplx piece_point(const Piece& p, double u);
cplx piece_velocity(const Piece& p, double u); // d x / d u
cplx piece_start(const Piece& p);
cplx piece_end(const Piece& p);
double piece_length(const Piece& p);

/// x(u) - x(0) and x(u) - x(1), computed without cancellation near the
/// respective endpoint. Needed for square-root factors vanishing there.
cplx piece_disp_from_start(const Piece& p, double u);
cplx piece_disp_from_end(const Piece& p, double u);

/// A contiguous chain of pieces (each starts where the previous one ends).
struct PiecePath {
    std::vector<Piece> pieces;
    cplx start() const { return piece_start(pieces.front()); }
    cplx end() const { return piece_end(pieces.back()); }
    double length() const;
};

/// Parameters u in (0, 1] where the piece transversally crosses the branch
/// cut of sqrt(x - b), i.e. the ray {Im(x-b) = 0, Re(x-b) < 0}. Tangential
/// touches do not count. Sorted ascending.
std::vector<double> cut_crossings(const Piece& p, cplx b);

/// Minimal distance from a point to the piece.
double distance_to_piece(const Piece& p, cplx z);

/// Do two pieces intersect anywhere except within `endpoint_slack` of the
/// point `shared` (pass shared = NaN to forbid all contact)? Conservative:
/// curved cases are resolved by circle geometry, degenerate overlaps count
/// as intersections.
bool pieces_intersect(const Piece& a, const Piece& b, cplx shared, double endpoint_slack);

/// Proper or overlapping intersection of two closed segments, excluding
/// contact that only happens within `slack` of a shared endpoint.
bool segments_cross(cplx a0, cplx a1, cplx b0, cplx b1, double slack);

} // namespace royden

#endif
