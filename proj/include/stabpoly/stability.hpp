#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabpoly/parabolic.hpp"
#include "stabpoly/rational.hpp"
#include "stabpoly/root_system.hpp"
#include "stabpoly/schubert.hpp"

namespace stabpoly {

// One stability inequality: sum over points of the pairing against the
// k-subset of the class is < d on the stable polytope.
struct Wall {
    int k = 0;
    int d = 0;
    std::vector<Partition> classes;       // one per marked point
    std::vector<std::vector<int>> subsets;  // k-subsets of 1..n, from the classes
    long long gw = 0;

    bool operator==(const Wall& o) const {
        return k == o.k && d == o.d && classes == o.classes;
    }
};

struct ThetaTuple {
    RootDatum group;
    std::vector<AlcovePoint> points;
};

// Validates that every component lies in the closed alcove.
ThetaTuple make_theta_tuple(RootDatum group, std::vector<AlcovePoint> points);

enum class Status { Stable, StrictlySemistable, Unstable };
std::string status_name(Status s);

struct WallEvaluation {
    Wall wall;
    Rat lhs;  // certificate: re-evaluating the wall pairing reproduces lhs
};

struct Verdict {
    Status status = Status::Stable;
    std::optional<WallEvaluation> certificate;   // violating or equality wall
    std::vector<WallEvaluation> equality_walls;  // all walls met with equality
    size_t wall_count = 0;
};

struct SemistableResult {
    bool semistable = true;
    std::optional<WallEvaluation> violation;
    size_t wall_count = 0;
};

// Eigenvalue-vector dictionary for a type A conjugacy class:
// a_1 >= ... >= a_n, sum 0, a_1 - a_n <= 1.
RatVec a_vector(const RootDatum& rd, const AlcovePoint& x);

// Sum of a_i over the 1-based subset I.
Rat pairing(const std::vector<int>& subset, const RatVec& a);

struct WallBudgetError : std::runtime_error {
    int k, d;
    WallBudgetError(int k_, int d_)
        : std::runtime_error("wall enumeration budget exceeded at parabolic k=" +
                             std::to_string(k_) + ", degree d=" + std::to_string(d_)),
          k(k_), d(d_) {}
};

// All walls for s marked points: (k, d, classes) with nonzero Gromov-Witten
// number, lexicographically ordered, duplicate-free. Type A exact mode.
std::vector<Wall> enumerate_walls(const RootDatum& rd, int s,
                                  std::optional<int> parabolic_filter = std::nullopt,
                                  long long budget = 50'000'000);

SemistableResult check_semistable(const ThetaTuple& theta, const std::vector<Wall>& walls);
SemistableResult check_semistable(const ThetaTuple& theta);

Verdict check_stable_strict(const ThetaTuple& theta, const std::vector<Wall>& walls);
Verdict check_stable_strict(const ThetaTuple& theta);

// Per equality wall: the slope-zero confirmation, the determined underlying
// degree of the quotient in the canonical presentation, and whether the
// reduction deforms (blocks stability). quotient_degree == -1 is the
// literal minus-1 type; deformations exist whenever the quotient degree is
// >= -k(n-k), which covers the boundary cases the -1 test misses.
struct MinusOneEntry {
    Wall wall;
    Rat lhs;
    bool pardeg_zero = false;
    Int quotient_degree = 0;
    bool minus_one = false;
    bool deformable = false;
};

struct MinusOneReport {
    std::vector<MinusOneEntry> entries;
    bool blocks_stability = false;
};

MinusOneReport minus_one_scan(const ThetaTuple& theta,
                              const std::vector<WallEvaluation>& equality_walls);

struct ExistenceResult {
    bool exists = false;
    Verdict verdict;
    MinusOneReport scan;
    bool criteria_agree = true;  // strict criterion vs semistable + empty scan
};

ExistenceResult exists_irreducible_hom(const ThetaTuple& theta);
ExistenceResult exists_irreducible_hom(const ThetaTuple& theta, const std::vector<Wall>& walls);

}  // namespace stabpoly
