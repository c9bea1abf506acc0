#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabpoly/rational.hpp"

namespace stabpoly {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

using IntVec = std::vector<long>;

// Finite root system data. Roots are kept in two coordinate systems:
//  - root coordinates: integer combinations of simple roots,
//  - weight coordinates: coefficients on the fundamental weights
//    (row i of the Cartan matrix is the weight vector of alpha_i).
// Points of the apartment are expressed in the fundamental coweight basis,
// so evaluating a root on a point is the dot product of the root's
// root-coordinates with the point's coordinates.
struct RootDatum {
    Series series;
    int rank = 0;
    std::vector<IntVec> cartan;          // cartan[i][j] = <alpha_i, alpha_j^vee>
    std::vector<IntVec> roots;           // all roots, root coordinates
    std::vector<IntVec> positive_roots;  // root coordinates, height-sorted
    IntVec highest_root;                 // root coordinates (the marks)
    long long weyl_order = 0;

    IntVec root_weight_coords(const IntVec& rc) const;  // rc -> weight coords
    std::string name() const;                           // e.g. "A2"
};

RootDatum build_root_datum(Series series, int rank);
RootDatum build_root_datum(const std::string& spec);  // "<series><rank>"

// Affine functional r(x) + n with r a root or zero, in root coordinates.
struct AffineFunctional {
    IntVec root;  // root coordinates; all-zero allowed
    long level = 0;
};

struct AlcovePoint {
    RatVec coords;  // fundamental coweight basis; coords[i] = alpha_{i+1}(x)
};

Rat affine_eval(const AffineFunctional& f, const AlcovePoint& x);

// Simple affine roots S: index 0 is 1 - highest_root, indices 1..rank are the
// finite simple roots. These indices double as the type-A vertex labels.
std::vector<AffineFunctional> simple_affine_roots(const RootDatum& rd);

// Vertices of the closed alcove; vertex d is where only the simple affine
// root alpha_d does not vanish.
std::vector<AlcovePoint> alcove_vertices(const RootDatum& rd);

bool in_closed_alcove(const RootDatum& rd, const AlcovePoint& x);

struct Facet {
    std::vector<int> vanishing;  // indices into S, sorted
    std::vector<int> signs;      // one per simple affine root: -1, 0, +1
    int dim = 0;

    bool operator==(const Facet& o) const { return vanishing == o.vanishing && signs == o.signs; }
    std::vector<int> vertex_labels(int rank) const;  // complement of vanishing in 0..rank
};

Facet classify_facet(const RootDatum& rd, const AlcovePoint& x);

// Codimension-one subfacet obtained by dropping the smallest vertex label.
Facet far_wall(const RootDatum& rd, const Facet& f);

// Weight multiset of a representation restricted to T, stored as linear
// functionals on the apartment (coefficients against the coweight basis).
struct RepWeights {
    enum class Label { Id, Ad, Sym2, Custom } label = Label::Custom;
    std::vector<RatVec> functionals;

    static RepWeights standard(const RootDatum& rd);  // type A only
    static RepWeights adjoint(const RootDatum& rd);
    static RepWeights sym2(const RootDatum& rd);  // type A only
    static RepWeights custom(std::vector<RatVec> fns);
    static RepWeights by_name(const RootDatum& rd, const std::string& name);
    std::string name() const;
};

// One hyperplane <coeffs, x> + level = 0 of the generalized affine
// arrangement, in primitive integer form with positive leading sign.
struct GenHyperplane {
    IntVec coeffs;
    Int level;
    bool operator==(const GenHyperplane& o) const { return coeffs == o.coeffs && level == o.level; }
    bool operator<(const GenHyperplane& o) const {
        if (coeffs != o.coeffs) return coeffs < o.coeffs;
        return level < o.level;
    }
};

// All generalized hyperplanes of (rd, rho) that meet the closed alcove:
// root functionals of the group plus the pulled-back affine roots of SL(V)
// (weight differences), each with every integer level admitting a zero on
// the closed alcove.
std::vector<GenHyperplane> generalized_arrangement(const RootDatum& rd, const RepWeights& rho);

struct GeneralizedFacet {
    std::vector<int8_t> signs;  // aligned with generalized_arrangement order
    int dim = 0;
    AlcovePoint witness;  // a point of the facet (the point it was classified from)

    bool operator==(const GeneralizedFacet& o) const { return signs == o.signs; }
    bool contains_in_closure(const std::vector<GenHyperplane>& arr, const AlcovePoint& x) const;
};

GeneralizedFacet rho_facet_classify(const RootDatum& rd, const RepWeights& rho, const AlcovePoint& x);

// Affine map x -> M x + b on apartment coordinates.
struct AffineMap {
    std::vector<RatVec> linear;
    RatVec offset;
    AlcovePoint apply(const AlcovePoint& x) const;
};

// Reflection data carrying alcove a_k to a_{k+1} across the far wall
// (type A). Vertex labels of a_k are those of a_0 shifted by the k dropped
// ones; the new vertex gets label rank+1+k.
struct AlcoveReflection {
    AffineMap map;
    long new_vertex_label = 0;
    std::vector<long> vertex_labels_after;           // labels of a_{k+1}, ascending
    std::vector<AlcovePoint> vertex_points_after;    // matching order
};

AlcoveReflection reflect_alcove(const RootDatum& rd, long k);

// Type A dictionary between closed-alcove barycentric coordinates
// (b_0,...,b_n) and the flag weight vector (0, b_1, b_1+b_2, ...).
RatVec barycentric_to_weights(const RatVec& b);
RatVec weights_to_barycentric(const RatVec& w);

// Barycentric coordinates of x with respect to the vertices of a_0,
// ordered by vertex label.
RatVec barycentric_coords(const RootDatum& rd, const AlcovePoint& x);

}  // namespace stabpoly
