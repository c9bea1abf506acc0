#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "stabpoly/schubert.hpp"

using namespace stabpoly;

namespace {

// ---- independent classical oracle: Schur polynomials as monomial maps ----
// s_lambda(x_1..x_N) via semistandard tableaux; products by convolution;
// expansion back into the Schur basis by peeling lex-leading terms. Working
// in N variables is exactly the <=N-row model.
using Poly = std::map<std::vector<int>, long long>;

void ssyt_fill(const Partition& shape, int nvars, std::vector<std::vector<int>>& t, int r, int c,
               Poly& out) {
    if (r == shape.length()) {
        std::vector<int> expo(nvars, 0);
        for (const auto& row : t)
            for (int v : row) expo[v - 1]++;
        out[expo] += 1;
        return;
    }
    int nr = r, nc = c + 1;
    if (nc >= shape.parts[r]) {
        nr = r + 1;
        nc = 0;
    }
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    for (int v = lo; v <= nvars; ++v) {
        t[r][c] = v;
        ssyt_fill(shape, nvars, t, nr, nc, out);
    }
}

Poly schur_poly(const Partition& shape, int nvars) {
    Poly out;
    if (shape.length() > nvars) return out;
    if (shape.parts.empty()) {
        out[std::vector<int>(nvars, 0)] = 1;
        return out;
    }
    std::vector<std::vector<int>> t(shape.length());
    for (int r = 0; r < shape.length(); ++r) t[r].assign(shape.parts[r], 0);
    ssyt_fill(shape, nvars, t, 0, 0, out);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    return out;
}

// Peels the symmetric polynomial into Schur coefficients.
std::map<Partition, long long> schur_expand(Poly p, int nvars) {
    std::map<Partition, long long> out;
    while (true) {
        for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
        if (p.empty()) break;
        auto lead = std::max_element(p.begin(), p.end(), [](const auto& x, const auto& y) {
            return x.first < y.first;
        });
        std::vector<int> parts = lead->first;
        long long c = lead->second;
        Partition nu(std::move(parts));
        out[nu] += c;
        Poly s = schur_poly(nu, nvars);
        for (const auto& [e, ce] : s) p[e] -= c * ce;
    }
    return out;
}

std::map<Partition, long long> lr_oracle(const Partition& lambda, const Partition& mu, int nvars) {
    return schur_expand(poly_mul(schur_poly(lambda, nvars), schur_poly(mu, nvars)), nvars);
}

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

Partition rand_box_partition(std::mt19937_64& rng, int rows, int cols) {
    std::vector<int> parts;
    int prev = cols;
    int len = int(rng() % (rows + 1));
    for (int i = 0; i < len; ++i) {
        int v = int(rng() % (prev + 1));
        parts.push_back(v);
        prev = v;
    }
    return Partition(std::move(parts));
}

}  // namespace

TEST_CASE("partition basics") {
    CHECK(P({3, 1}).size() == 4);
    CHECK(P({3, 1, 0, 0}).parts == std::vector<int>{3, 1});
    CHECK_THROWS_AS(P({1, 2}), std::invalid_argument);
    CHECK(parse_partition("2,1").parts == std::vector<int>{2, 1});
    CHECK(parse_partition("-").parts.empty());
    CHECK(P({2, 1}).complement(2, 2).parts == std::vector<int>{1});
    CHECK(P({1}).fits(1, 1));
    CHECK_FALSE(P({2}).fits(1, 1));
}

TEST_CASE("littlewood-richardson: units, split, symmetry") {
    Partition empty;
    Partition one{{1}};
    CHECK(lr_coefficient(P({3, 1}), empty, P({3, 1})) == 1);
    CHECK(lr_coefficient(one, one, P({1, 1})) == 1);
    CHECK(lr_coefficient(one, one, P({2})) == 1);
    CHECK(lr_coefficient(one, one, P({3})) == 0);  // size mismatch is 0, not an error

    std::mt19937_64 rng(23);
    for (int t = 0; t < 1000; ++t) {
        Partition a = rand_box_partition(rng, 3, 3);
        Partition b = rand_box_partition(rng, 3, 3);
        Partition nu = rand_box_partition(rng, 4, 6);
        CHECK(lr_coefficient(a, b, nu) == lr_coefficient(b, a, nu));
    }
}

TEST_CASE("littlewood-richardson agrees with the Schur polynomial oracle") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        Partition a = rand_box_partition(rng, 3, 3);
        Partition b = rand_box_partition(rng, 3, 3);
        int nvars = 3;
        auto expected = lr_oracle(a, b, nvars);
        auto got = lr_expand(a, b, nvars);
        CHECK(got == expected);
    }
    // a known multiplicity-2 case
    CHECK(lr_coefficient(P({2, 1}), P({2, 1}), P({3, 2, 1})) == 2);
}

TEST_CASE("quantum product: pinned small cases") {
    auto gr12 = make_shape(1, 2);
    auto s1 = QuantumClass::schubert(P({1}));
    auto p = quantum_product(s1, s1, gr12);
    QuantumClass expect;
    expect.terms[{P({}), 1}] = 1;
    CHECK(p == expect);  // sigma_1 * sigma_1 = q

    auto gr24 = make_shape(2, 4);
    auto p2 = quantum_product(s1, s1, gr24);
    QuantumClass expect2;
    expect2.terms[{P({2}), 0}] = 1;
    expect2.terms[{P({1, 1}), 0}] = 1;
    CHECK(p2 == expect2);  // no q term

    auto s21 = QuantumClass::schubert(P({2, 1}));
    auto p3 = quantum_product(s1, s21, gr24);
    QuantumClass expect3;
    expect3.terms[{P({2, 2}), 0}] = 1;
    expect3.terms[{P({}), 1}] = 1;
    CHECK(p3 == expect3);  // sigma_1 * sigma_{2,1} = sigma_{2,2} + q

    auto any = quantum_product(s21, QuantumClass::unit(), gr24);
    CHECK(any == s21);
}

TEST_CASE("quantum product associativity") {
    std::mt19937_64 rng(47);
    for (auto [k, n] : {std::pair{2, 5}, std::pair{3, 6}}) {
        auto shape = make_shape(k, n);
        for (int t = 0; t < 40; ++t) {
            auto a = QuantumClass::schubert(rand_box_partition(rng, k, n - k));
            auto b = QuantumClass::schubert(rand_box_partition(rng, k, n - k));
            auto c = QuantumClass::schubert(rand_box_partition(rng, k, n - k));
            auto left = quantum_product(quantum_product(a, b, shape), c, shape);
            auto right = quantum_product(a, quantum_product(b, c, shape), shape);
            CHECK(left == right);
        }
    }
}

TEST_CASE("gw_number: pinned values and the independent classical path") {
    GWQuery q1;
    q1.shape = make_shape(1, 2);
    q1.degree = 1;
    q1.classes = {P({1}), P({1}), P({1})};
    CHECK(gw_number(q1) == 1);

    GWQuery q2;
    q2.shape = make_shape(2, 4);
    q2.degree = 0;
    q2.classes = {P({1}), P({1}), P({1}), P({1})};
    CHECK(gw_number(q2) == 2);  // two lines meeting four general lines

    {
        Poly p = schur_poly(P({}), 2);
        for (const auto& c : q2.classes) p = poly_mul(p, schur_poly(c, 2));
        auto exp = schur_expand(p, 2);
        CHECK(exp[P({2, 2})] == 2);
    }

    GWQuery q3 = q2;
    q3.classes.push_back(P({1}));  // total 5, not of the form 4 + 4d
    CHECK(gw_number(q3) == 0);
}

TEST_CASE("gw_number symmetry and q-degree bound") {
    std::mt19937_64 rng(53);
    auto shape = make_shape(2, 4);
    for (int t = 0; t < 50; ++t) {
        GWQuery q;
        q.shape = shape;
        int s = 3 + int(rng() % 2);
        int total = 0;
        for (int i = 0; i < s; ++i) {
            q.classes.push_back(rand_box_partition(rng, 2, 2));
            total += q.classes.back().size();
        }
        int d = (total - shape.dimension()) / shape.n;
        q.degree = (total - shape.dimension() == d * shape.n) ? d : 0;
        long long v = gw_number(q);
        CHECK(v >= 0);
        GWQuery shuffled = q;
        std::shuffle(shuffled.classes.begin(), shuffled.classes.end(), rng);
        CHECK(gw_number(shuffled) == v);
    }

    for (int t = 0; t < 20; ++t) {
        int s = 2 + int(rng() % 3);
        QuantumClass p = QuantumClass::unit();
        for (int i = 0; i < s; ++i)
            p = quantum_product(p, QuantumClass::schubert(rand_box_partition(rng, 2, 2)), shape);
        int maxq = 0;
        for (const auto& [key, c] : p.terms) maxq = std::max(maxq, key.q);
        CHECK(maxq <= degree_bound(shape, s));
    }
}

TEST_CASE("poincare pairing at d = 0") {
    auto shape = make_shape(2, 4);
    std::mt19937_64 rng(59);
    for (int t = 0; t < 30; ++t) {
        Partition a = rand_box_partition(rng, 2, 2);
        Partition b = rand_box_partition(rng, 2, 2);
        GWQuery q;
        q.shape = shape;
        q.degree = 0;
        q.classes = {a, b};
        long long expect = (b == a.complement(2, 2)) ? 1 : 0;
        if (a.size() + b.size() == shape.dimension()) CHECK(gw_number(q) == expect);
    }
}

TEST_CASE("degree_bound examples") {
    CHECK(degree_bound(make_shape(1, 2), 3) == 1);
    CHECK(degree_bound(make_shape(1, 2), 1) == 0);
    CHECK(degree_bound(make_shape(2, 4), 4) == 3);
}

TEST_CASE("schubert subsets") {
    CHECK(schubert_subset(P({}), make_shape(2, 4)) == std::vector<int>{3, 4});
    CHECK(schubert_subset(P({2, 2}), make_shape(2, 4)) == std::vector<int>{1, 2});
    CHECK(schubert_subset(P({1}), make_shape(1, 2)) == std::vector<int>{1});
    CHECK(schubert_subset(P({2, 1}), make_shape(2, 4)) == std::vector<int>{1, 3});
}

TEST_CASE("gw oracle registry") {
    auto& reg = GWOracleRegistry::instance();

    GWOracleQuery q;
    q.parabolic_k = 1;
    q.degree = 1;
    q.classes = {P({1}), P({1}), P({1})};
    auto v = reg.query(Series::A, 1, q);
    REQUIRE(v.has_value());
    CHECK(*v == 1);

    CHECK_FALSE(reg.query(Series::C, 3, q).has_value());

    // a broken oracle is rejected at registration by the constraint probes
    CHECK_THROWS_AS(
        reg.register_oracle(Series::A, 3, [](const GWOracleQuery&) -> long long { return 1; }),
        std::invalid_argument);

    // a sound wrapper is accepted and used
    reg.register_oracle(Series::C, 3, [](const GWOracleQuery&) -> long long { return 0; });
    auto vc = reg.query(Series::C, 3, q);
    REQUIRE(vc.has_value());
    CHECK(*vc == 0);
    reg.clear(Series::C, 3);
    CHECK_FALSE(reg.query(Series::C, 3, q).has_value());
}
