#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabpoly/rational.hpp"
#include "stabpoly/root_system.hpp"

namespace stabpoly {

// One flag step: all directions of the step share a weight.
struct FlagStep {
    Rat weight;
    int mult = 0;
    bool operator==(const FlagStep& o) const { return weight == o.weight && mult == o.mult; }
};

// Flag data at one marked point. Steps are sorted by strictly increasing
// weight; multiplicities sum to the bundle rank. In a normalized bundle all
// weights lie in [0, 1); raw presentations produced by shifts and slides may
// carry weights outside that window.
struct MarkedPointData {
    std::vector<FlagStep> steps;

    std::vector<int> flag_dims() const;  // cumulative multiplicities
    bool operator==(const MarkedPointData& o) const { return steps == o.steps; }
};

struct ParabolicBundle {
    int rank = 0;
    Int degree = 0;
    std::map<std::string, MarkedPointData> points;

    bool operator==(const ParabolicBundle& o) const {
        return rank == o.rank && degree == o.degree && points == o.points;
    }
};

void validate_bundle(const ParabolicBundle& b);
bool is_normalized(const ParabolicBundle& b);

// Slides every weight w to w - floor(w), absorbing each integer part into the
// underlying degree (one twist per direction), then merges equal weights.
ParabolicBundle normalize(const ParabolicBundle& b);

// degree + sum over points and steps of weight * multiplicity. Works on raw
// presentations as well.
Rat pardeg(const ParabolicBundle& b);
Rat parslope(const ParabolicBundle& b);

// Adds a to every weight at one point; returns the raw (denormalized) view.
ParabolicBundle slide_weights(const ParabolicBundle& b, const std::string& point, const Rat& a);

// The Z-filtration of a normalized bundle: at each point the jump values are
// the step weights plus all integer translates, and the window of l
// consecutive jumps starting at index m presents the bundle E_{m*}.
class ZFiltration {
  public:
    explicit ZFiltration(ParabolicBundle normalized);

    const ParabolicBundle& base() const { return base_; }

    // E_{m*} at one point (other points untouched): raw weights, degree
    // walked through the consumed multiplicities. pardeg is independent of m.
    ParabolicBundle shift(const std::string& point, long m) const;
    ParabolicBundle shift_all(const std::map<std::string, long>& m) const;

    // Weight of jump index i at a point (periodicity alpha_{i+l} = alpha_i + 1).
    Rat jump_weight(const std::string& point, long i) const;
    int jump_mult(const std::string& point, long i) const;
    int period(const std::string& point) const;

  private:
    ParabolicBundle base_;
};

struct HeckeCertificate {
    std::map<std::string, long> shifts;
    std::map<std::string, Rat> slides;
};

// True iff b2 equals some shift of b1's Z-filtration up to per-point weight
// sliding, once both are reduced (equal-weight flags merged). Returns the
// shift/slide certificate.
std::optional<HeckeCertificate> hecke_comparable(const ParabolicBundle& b1,
                                                 const ParabolicBundle& b2);

// Extended weight schema at one marked point: limit weights in [0, 1]
// (weight 1 occurs exactly on the far-wall boundary), merged flag steps,
// and the per-direction twists of the underlying bundle.
struct ExtendedWeightSchema {
    std::vector<FlagStep> steps;   // beta ascending, may end at weight 1
    std::vector<long> line_twists; // one per direction of the representation, sorted
    Int underlying_degree = 0;     // sum of line twists
    bool has_weight_one = false;

    std::vector<int> flag_dims() const;
    bool operator==(const ExtendedWeightSchema& o) const {
        return steps == o.steps && line_twists == o.line_twists;
    }
};

// Limit weights of the associated bundle at theta for the quasi-parabolic
// type carried by the rho-facet (combinatorics fixed at the facet's witness,
// values evaluated at theta by linearity).
ExtendedWeightSchema extend_weights(const RootDatum& rd, const RepWeights& rho,
                                    const AlcovePoint& theta, const GeneralizedFacet& facet);

// Canonical associated parabolic bundle of the trivial torsor: per point the
// direction with functional mu gets weight frac(-mu(theta)) and twist
// floor(-mu(theta)). pardeg is 0 whenever the weights of rho sum to zero.
ParabolicBundle associated_bundle(const RootDatum& rd, const RepWeights& rho,
                                  const std::vector<std::pair<std::string, AlcovePoint>>& points);

// Reads an extended schema as a parabolic bundle at a single point
// (weight-1 steps wrap into the next period via normalize).
ParabolicBundle schema_bundle(int rank, const std::string& point,
                              const ExtendedWeightSchema& schema);

// Numerical data of a sub-bundle: rank, degree, and for each point the step
// indices (into the ambient bundle's steps) hit by the r flag jumps.
struct SubBundleDatum {
    int rank = 0;
    Int degree = 0;
    std::map<std::string, std::vector<int>> positions;
};

// pardeg of the sub relative to the slope of the ambient:
// pardeg(S) - rank(S) * parslope(E). Semistable: <= 0 for all data.
Rat relative_pardeg(const ParabolicBundle& ambient, const SubBundleDatum& s);

struct SubCheck {
    bool ok = true;
    std::optional<size_t> violator;  // index into the checked list
    Rat value;                       // relative pardeg of the violator
};

SubCheck is_semistable_against(const ParabolicBundle& b, const std::vector<SubBundleDatum>& subs);
SubCheck is_stable_against(const ParabolicBundle& b, const std::vector<SubBundleDatum>& subs);

}  // namespace stabpoly
