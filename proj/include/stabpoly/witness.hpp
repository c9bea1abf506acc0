#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "stabpoly/rational.hpp"
#include "stabpoly/root_system.hpp"

namespace stabpoly {

// Conjugacy class of U(n) given by its angle vector: eigenvalues are
// exp(2 pi i a_j) with a_1 >= ... >= a_n, sum 0, a_1 - a_n <= 1.
struct ClassSpec {
    int n = 0;
    RatVec angles;
};

ClassSpec make_class_spec(RatVec angles);
ClassSpec class_spec_from_theta(const RootDatum& rd, const AlcovePoint& x);

using Unitary = Eigen::MatrixXcd;

// U diag(exp(2 pi i a_j)) U^* for a pseudo-random unitary U; deterministic
// per seed.
Unitary sample_class(const ClassSpec& spec, std::uint64_t seed);

double unitarity_error(const Unitary& u);
double product_residual(const std::vector<Unitary>& c);  // ||prod - 1||_F

enum class IrredStatus { Irreducible, Reducible, Borderline };

struct IrredResult {
    IrredStatus status = IrredStatus::Reducible;
    double margin = 0.0;  // smallest singular value of the commutant system
};

// Nullity of Y -> (c_x Y c_x^{-1} - Y)_x on traceless anti-Hermitian
// matrices; irreducible iff the numeric null space is trivial. Margins
// within a factor 10 of tol are reported Borderline (inconclusive).
IrredResult irreducibility_check(const std::vector<Unitary>& c, double tol = 1e-6);

struct UnitaryTuple {
    std::vector<Unitary> matrices;
    double residual = 0.0;
};

struct SearchParams {
    long budget = 10000;   // total sweeps, split over ceil(budget/200) restarts
    std::uint64_t seed = 0;
    double tol = 1e-8;
    double commutant_tol = 1e-6;
};

struct SearchFind {
    UnitaryTuple tuple;
    IrredResult irred;
    int restart = 0;
};

struct SearchOutcome {
    bool found_irreducible = false;
    std::optional<SearchFind> witness;     // first irreducible product-1 tuple
    std::vector<SearchFind> product_one_finds;  // every tuple meeting the residual
    long restarts_used = 0;
};

// Alternating spectrum-constrained projection: fix all factors but one, snap
// the free factor to the class element nearest the inverse of the partial
// product. NotFound after budget exhaustion is inconclusive.
SearchOutcome search(const std::vector<ClassSpec>& specs, const SearchParams& params);

}  // namespace stabpoly
