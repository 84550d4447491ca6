#ifndef ROYDEN_HOMOLOGY_HPP
#define ROYDEN_HOMOLOGY_HPP

#include "royden/cover.hpp"
#include "royden/geometry.hpp"

#include <vector>

namespace royden {

/// Chain of paths through the finite branch points: edge i joins chain point
/// i to chain point i+1, stays clear of all other branch points, and no two
/// edges cross.
struct PathSystem {
    std::vector<int> order;          // permutation into cover.finite_branch
    std::vector<cplx> points;        // branch points in chain order
    std::vector<PiecePath> edges;    // size points.size() - 1
    std::vector<double> spacing;     // per chain point: distance to nearest other
    double clearance = 0.25;
};

/// Greedy nearest-neighbor chain from the leftmost branch point, 2-opt
/// reversal until no two edges cross, circular detour arcs around any branch
/// point that comes closer to an edge than clearance * (its local spacing).
/// Throws PathConstructionFailed when the budget runs out or the final
/// invariants cannot be met.
PathSystem build_path_system(const DoubleCover& c, double clearance = 0.25);

using IntMat = std::vector<std::vector<long long>>;

IntMat int_identity(int n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);
long long int_det(IntMat a); // exact fraction-free elimination

/// Chain cycles e_i (loop around branch points i, i+1 of the chain) with
/// their intersection matrix M (skew, +1 on the first superdiagonal) and the
/// unimodular change of basis S with S^T M S = J (+) 0.
struct CycleBasis {
    IntMat intersection;
    IntMat change_of_basis;
    int rank = 0; // 2 * genus
};

CycleBasis chain_cycles(const PathSystem& ps, const DoubleCover& c);

/// Unimodular S with S^T M S = J (+) 0 for the standard symplectic J =
/// [[0, I], [-I, 0]] on the first rank(M) coordinates, in exact integer
/// arithmetic. M must be skew-symmetric with unit elementary divisors.
IntMat symplectic_reduce(const IntMat& M);

} // namespace royden

#endif
