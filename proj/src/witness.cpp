#include "stabpoly/witness.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "stabpoly/stability.hpp"

namespace stabpoly {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double rat_to_double(const Rat& q) {
    return boost::multiprecision::numerator(q).convert_to<double>() /
           boost::multiprecision::denominator(q).convert_to<double>();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Unitary random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Unitary z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = std::complex<double>(g(rng), g(rng));
    Eigen::HouseholderQR<Unitary> qr(z);
    Unitary q = qr.householderQ();
    Unitary r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        std::complex<double> d = r(i, i);
        double a = std::abs(d);
        q.col(i) *= (a > 0 ? d / a : std::complex<double>(1, 0));
    }
    return q;
}

Unitary reunitarize(const Unitary& x) {
    Eigen::JacobiSVD<Unitary> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// Nearest matrix to the unitary T among those with the prescribed spectrum:
// diagonalize, orthonormalize the eigenbasis, snap the eigenphases to the
// prescribed ones through the best cyclic alignment.
Unitary snap_to_class(const Unitary& t, const std::vector<double>& target_angles) {
    int n = t.rows();
    Eigen::ComplexEigenSolver<Unitary> es(t);
    Eigen::VectorXcd vals = es.eigenvalues();
    Unitary vecs = es.eigenvectors();
    std::vector<int> order(n);
    std::vector<double> phase(n);
    for (int i = 0; i < n; ++i) {
        order[i] = i;
        phase[i] = std::arg(vals(i));
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return phase[a] < phase[b]; });
    std::vector<double> tgt = target_angles;  // radians
    std::sort(tgt.begin(), tgt.end());
    int best_shift = 0;
    double best_cost = 1e300;
    for (int shift = 0; shift < n; ++shift) {
        double cost = 0;
        for (int i = 0; i < n; ++i) {
            double d = phase[order[i]] - tgt[(i + shift) % n];
            cost += 2 - 2 * std::cos(d);
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_shift = shift;
        }
    }
    Unitary v(n, n);
    for (int i = 0; i < n; ++i) v.col(i) = vecs.col(order[i]);
    Eigen::HouseholderQR<Unitary> qr(v);
    Unitary q = qr.householderQ();
    Eigen::VectorXcd d(n);
    for (int i = 0; i < n; ++i) {
        double a = tgt[(i + best_shift) % n];
        d(i) = std::complex<double>(std::cos(a), std::sin(a));
    }
    return q * d.asDiagonal() * q.adjoint();
}

}  // namespace

ClassSpec make_class_spec(RatVec angles) {
    if (angles.empty()) throw std::invalid_argument("class spec needs at least one angle");
    Rat sum(0);
    for (size_t i = 0; i < angles.size(); ++i) {
        if (i && angles[i] > angles[i - 1])
            throw std::invalid_argument("class spec angles must be weakly decreasing");
        sum += angles[i];
    }
    if (sum != 0) throw std::invalid_argument("class spec angles must sum to zero");
    if (angles.front() - angles.back() > 1)
        throw std::invalid_argument("class spec angle spread exceeds 1");
    ClassSpec s;
    s.n = int(angles.size());
    s.angles = std::move(angles);
    return s;
}

ClassSpec class_spec_from_theta(const RootDatum& rd, const AlcovePoint& x) {
    return make_class_spec(a_vector(rd, x));
}

Unitary sample_class(const ClassSpec& spec, std::uint64_t seed) {
    Unitary u = random_unitary(spec.n, seed);
    Eigen::VectorXcd d(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        double a = kTwoPi * rat_to_double(spec.angles[i]);
        d(i) = std::complex<double>(std::cos(a), std::sin(a));
    }
    return u * d.asDiagonal() * u.adjoint();
}

double unitarity_error(const Unitary& u) {
    return (u.adjoint() * u - Unitary::Identity(u.rows(), u.cols())).norm();
}

double product_residual(const std::vector<Unitary>& c) {
    if (c.empty()) throw std::invalid_argument("empty tuple");
    Unitary p = Unitary::Identity(c[0].rows(), c[0].cols());
    for (const auto& m : c) p = p * m;
    return (p - Unitary::Identity(p.rows(), p.cols())).norm();
}

IrredResult irreducibility_check(const std::vector<Unitary>& c, double tol) {
    if (c.empty()) throw std::invalid_argument("empty tuple");
    int n = int(c[0].rows());
    int dim = n * n - 1;  // traceless anti-Hermitian matrices over R
    std::vector<Unitary> basis;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            Unitary e = Unitary::Zero(n, n);
            e(p, q) = 1;
            e(q, p) = -1;
            basis.push_back(e);
            Unitary f = Unitary::Zero(n, n);
            f(p, q) = std::complex<double>(0, 1);
            f(q, p) = std::complex<double>(0, 1);
            basis.push_back(f);
        }
    for (int p = 0; p + 1 < n; ++p) {
        Unitary h = Unitary::Zero(n, n);
        h(p, p) = std::complex<double>(0, 1);
        h(p + 1, p + 1) = std::complex<double>(0, -1);
        basis.push_back(h);
    }
    Eigen::MatrixXd a(2 * n * n * int(c.size()), dim);
    for (int b = 0; b < dim; ++b) {
        int row = 0;
        for (const auto& cx : c) {
            Unitary img = cx * basis[b] * cx.adjoint() - basis[b];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    a(row++, b) = img(i, j).real();
                    a(row++, b) = img(i, j).imag();
                }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    double sigma = svd.singularValues()(dim - 1);
    IrredResult r;
    r.margin = sigma;
    if (sigma < tol)
        r.status = IrredStatus::Reducible;
    else if (sigma < 10 * tol)
        r.status = IrredStatus::Borderline;
    else
        r.status = IrredStatus::Irreducible;
    return r;
}

SearchOutcome search(const std::vector<ClassSpec>& specs, const SearchParams& params) {
    if (specs.size() < 2) throw std::invalid_argument("search needs at least two classes");
    if (params.budget <= 0) throw std::invalid_argument("search budget must be positive");
    int n = specs[0].n;
    for (const auto& s : specs)
        if (s.n != n) throw std::invalid_argument("all classes must share the matrix size");
    int s = int(specs.size());
    std::vector<std::vector<double>> angles(s);
    for (int x = 0; x < s; ++x)
        for (const auto& a : specs[x].angles) angles[x].push_back(kTwoPi * rat_to_double(a));

    long restarts = (params.budget + 199) / 200;
    long sweeps_per_restart = std::min<long>(200, params.budget);

    SearchOutcome out;
    for (long r = 0; r < restarts; ++r) {
        ++out.restarts_used;
        std::uint64_t rs = splitmix64(params.seed * 0x9e3779b97f4a7c15ull + std::uint64_t(r));
        std::vector<Unitary> c;
        for (int x = 0; x < s; ++x)
            c.push_back(sample_class(specs[x], splitmix64(rs + std::uint64_t(x))));

        double res = product_residual(c);
        for (long sweep = 0; sweep < sweeps_per_restart && res >= params.tol; ++sweep) {
            for (int x = 0; x < s; ++x) {
                Unitary pre = Unitary::Identity(n, n);
                for (int y = 0; y < x; ++y) pre = pre * c[y];
                Unitary post = Unitary::Identity(n, n);
                for (int y = x + 1; y < s; ++y) post = post * c[y];
                Unitary target = pre.adjoint() * post.adjoint();
                c[x] = snap_to_class(target, angles[x]);
            }
            for (auto& m : c)
                if (unitarity_error(m) > 1e-10) m = reunitarize(m);
            res = product_residual(c);
        }
        if (res < params.tol) {
            SearchFind find;
            find.tuple = UnitaryTuple{c, res};
            find.irred = irreducibility_check(c, params.commutant_tol);
            find.restart = int(r);
            out.product_one_finds.push_back(find);
            if (find.irred.status == IrredStatus::Irreducible) {
                out.found_irreducible = true;
                out.witness = find;
                return out;
            }
        }
    }
    return out;
}

}  // namespace stabpoly
