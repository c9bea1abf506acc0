#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "stabpoly/root_system.hpp"

using namespace stabpoly;

namespace {

AlcovePoint pt(std::initializer_list<const char*> coords) {
    AlcovePoint p;
    for (const char* c : coords) p.coords.push_back(parse_rat(c));
    return p;
}

// Brute-force Weyl order: close the simple reflections acting as
// permutations of the root set.
long long weyl_order_brute(const RootDatum& rd) {
    const auto& roots = rd.roots;
    auto index_of = [&](const IntVec& v) {
        return size_t(std::lower_bound(roots.begin(), roots.end(), v) - roots.begin());
    };
    std::vector<std::vector<size_t>> gens;
    for (int j = 0; j < rd.rank; ++j) {
        std::vector<size_t> perm(roots.size());
        for (size_t r = 0; r < roots.size(); ++r) {
            long p = 0;
            for (int i = 0; i < rd.rank; ++i) p += roots[r][i] * rd.cartan[i][j];
            IntVec w = roots[r];
            w[j] -= p;
            perm[r] = index_of(w);
        }
        gens.push_back(perm);
    }
    std::set<std::vector<size_t>> group;
    std::vector<size_t> id(roots.size());
    for (size_t i = 0; i < id.size(); ++i) id[i] = i;
    std::vector<std::vector<size_t>> frontier{id};
    group.insert(id);
    while (!frontier.empty()) {
        std::vector<std::vector<size_t>> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                std::vector<size_t> h(g.size());
                for (size_t i = 0; i < g.size(); ++i) h[i] = s[g[i]];
                if (group.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }
    return (long long)group.size();
}

// Barycentric coordinates of x with respect to an arbitrary ordered simplex.
RatVec bary_in(const std::vector<AlcovePoint>& verts, const AlcovePoint& x) {
    size_t n = verts.size();
    size_t r = x.coords.size();
    std::vector<RatVec> m(r + 1, RatVec(n + 1, Rat(0)));
    for (size_t row = 0; row < r; ++row) {
        for (size_t col = 0; col < n; ++col) m[row][col] = verts[col].coords[row];
        m[row][n] = x.coords[row];
    }
    for (size_t col = 0; col < n; ++col) m[r][col] = 1;
    m[r][n] = 1;
    size_t prow = 0;
    std::vector<int> pivot_col(n, -1);
    for (size_t c = 0; c < n && prow <= r; ++c) {
        size_t p = prow;
        while (p <= r && m[p][c] == 0) ++p;
        if (p > r) continue;
        std::swap(m[prow], m[p]);
        Rat inv = m[prow][c];
        for (size_t j = 0; j <= n; ++j) m[prow][j] /= inv;
        for (size_t i = 0; i <= r; ++i) {
            if (i == prow || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j <= n; ++j) m[i][j] -= f * m[prow][j];
        }
        pivot_col[c] = int(prow);
        ++prow;
    }
    RatVec b(n, Rat(0));
    for (size_t c = 0; c < n; ++c)
        if (pivot_col[c] >= 0) b[c] = m[size_t(pivot_col[c])][n];
    return b;
}

}  // namespace

TEST_CASE("build_root_datum basic data") {
    auto a1 = build_root_datum(Series::A, 1);
    CHECK(a1.roots.size() == 2);
    CHECK(a1.positive_roots.size() == 1);
    CHECK(a1.weyl_order == 2);

    auto a2 = build_root_datum(Series::A, 2);
    CHECK(a2.roots.size() == 6);
    CHECK(a2.weyl_order == 6);
    CHECK(weyl_order_brute(a2) == 6);

    auto g2 = build_root_datum(Series::G, 2);
    CHECK(g2.roots.size() == 12);
    CHECK(g2.weyl_order == 12);
    CHECK(weyl_order_brute(g2) == 12);

    CHECK(weyl_order_brute(a1) == 2);
    CHECK(weyl_order_brute(build_root_datum(Series::A, 3)) == 24);
    CHECK(weyl_order_brute(build_root_datum(Series::B, 2)) == 8);
    CHECK(weyl_order_brute(build_root_datum(Series::C, 3)) == 48);
}

TEST_CASE("invalid series/rank pairs are rejected") {
    CHECK_THROWS_AS(build_root_datum(Series::C, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_root_datum(Series::D, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_root_datum(Series::E, 9), std::invalid_argument);
    CHECK_THROWS_AS(build_root_datum(Series::G, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_root_datum("A0"), std::invalid_argument);
    CHECK_THROWS_AS(build_root_datum("X2"), std::invalid_argument);
    CHECK(build_root_datum("C3").rank == 3);
}

TEST_CASE("cartan matrix shape and pairing duality") {
    for (const char* name : {"A1", "A3", "B2", "C3", "D4", "F4", "G2", "E6"}) {
        auto rd = build_root_datum(name);
        for (int i = 0; i < rd.rank; ++i) {
            CHECK(rd.cartan[i][i] == 2);
            for (int j = 0; j < rd.rank; ++j)
                if (i != j) CHECK(rd.cartan[i][j] <= 0);
        }
        // <alpha_i, omega_j^vee> = delta_ij: simple root i evaluated at the
        // j-th coweight basis vector.
        for (int i = 0; i < rd.rank; ++i)
            for (int j = 0; j < rd.rank; ++j) {
                AffineFunctional f;
                f.root.assign(rd.rank, 0);
                f.root[i] = 1;
                AlcovePoint e{RatVec(rd.rank, Rat(0))};
                e.coords[j] = 1;
                CHECK(affine_eval(f, e) == Rat(i == j ? 1 : 0));
            }
    }
}

TEST_CASE("affine_eval examples and exact affinity") {
    AffineFunctional alpha{{1}, 0};
    CHECK(affine_eval(alpha, pt({"0"})) == 0);
    AffineFunctional f{{-1}, 1};
    CHECK(affine_eval(f, pt({"2/7"})) == Rat(5, 7));
    CHECK(affine_eval(alpha, pt({"1/2"})) == Rat(1, 2));
    CHECK_THROWS_AS(affine_eval(alpha, pt({"1/2", "1/3"})), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto rnd = [&] { return Rat(long(rng() % 19) - 9, 1 + long(rng() % 7)); };
        AlcovePoint x{{rnd(), rnd()}}, y{{rnd(), rnd()}};
        Rat lam = rnd();
        AffineFunctional g{{long(rng() % 5) - 2, long(rng() % 5) - 2}, long(rng() % 5) - 2};
        AlcovePoint z{{lam * x.coords[0] + (1 - lam) * y.coords[0],
                       lam * x.coords[1] + (1 - lam) * y.coords[1]}};
        CHECK(affine_eval(g, z) == lam * affine_eval(g, x) + (1 - lam) * affine_eval(g, y));
    }
}

TEST_CASE("classify_facet examples") {
    auto a1 = build_root_datum("A1");
    auto origin = classify_facet(a1, pt({"0"}));
    CHECK(origin.vanishing == std::vector<int>{1});
    CHECK(origin.dim == 0);

    auto far = classify_facet(a1, pt({"1"}));
    CHECK(far.vanishing == std::vector<int>{0});
    CHECK(far.dim == 0);
    CHECK(far.vertex_labels(1) == std::vector<int>{1});

    auto interior = classify_facet(a1, pt({"1/3"}));
    CHECK(interior.vanishing.empty());
    CHECK(interior.dim == 1);

    CHECK_THROWS_AS(classify_facet(a1, pt({"3/2"})), std::domain_error);
    CHECK_THROWS_AS(classify_facet(a1, pt({"-1/5"})), std::domain_error);

    auto a2 = build_root_datum("A2");
    auto v0 = classify_facet(a2, pt({"0", "0"}));
    CHECK(v0.vanishing == std::vector<int>{1, 2});
    CHECK(v0.dim == 0);
}

TEST_CASE("facet dimension and sign determinism on random points") {
    auto a2 = build_root_datum("A2");
    std::mt19937_64 rng(5);
    std::vector<std::pair<Facet, AlcovePoint>> seen;
    for (int trial = 0; trial < 1000; ++trial) {
        long q = 1 + long(rng() % 6);
        long u = long(rng() % (q + 1));
        long v = long(rng() % (q + 1 - u));
        AlcovePoint x{{Rat(u, q), Rat(v, q)}};
        auto f = classify_facet(a2, x);
        CHECK(int(f.vanishing.size()) + f.dim == a2.rank);
        for (const auto& [g, y] : seen) {
            if (g == f) {
                // equal signatures: the segment between the points stays in
                // the facet, so its midpoint classifies identically
                AlcovePoint mid{{(x.coords[0] + y.coords[0]) / 2, (x.coords[1] + y.coords[1]) / 2}};
                CHECK(classify_facet(a2, mid) == f);
            }
        }
        if (seen.size() < 20) seen.push_back({f, x});
    }
}

TEST_CASE("far_wall") {
    auto a1 = build_root_datum("A1");
    auto full1 = classify_facet(a1, pt({"1/3"}));
    auto fw = far_wall(a1, full1);
    CHECK(fw.vertex_labels(1) == std::vector<int>{1});
    CHECK(fw.dim == 0);
    CHECK_THROWS_AS(far_wall(a1, fw), std::domain_error);

    auto a2 = build_root_datum("A2");
    auto full2 = classify_facet(a2, pt({"1/4", "1/4"}));
    auto e12 = far_wall(a2, full2);
    CHECK(e12.vertex_labels(2) == std::vector<int>{1, 2});
    // edge {0,2}: alpha_1 vanishes
    Facet edge02;
    edge02.vanishing = {1};
    edge02.signs = {1, 0, 1};
    edge02.dim = 1;
    auto v2 = far_wall(a2, edge02);
    CHECK(v2.vertex_labels(2) == std::vector<int>{2});
}

TEST_CASE("reflect_alcove: A1 map and A2 cyclic barycentric shift") {
    auto a1 = build_root_datum("A1");
    auto r0 = reflect_alcove(a1, 0);
    CHECK(r0.new_vertex_label == 2);
    auto img = r0.map.apply(pt({"1/3"}));
    CHECK(img.coords[0] == Rat(5, 3));  // t -> 2 - t

    auto a2 = build_root_datum("A2");
    AlcovePoint x = pt({"1/5", "3/10"});
    RatVec b = barycentric_coords(a2, x);
    long n = a2.rank + 1;

    // After each reflection, the barycentric coordinates of the transported
    // point in the new alcove are the old ones cyclically shifted by -1.
    AlcovePoint cur = x;
    RatVec expect = b;
    for (long k = 0; k < 2 * n; ++k) {
        auto rk = reflect_alcove(a2, k);
        cur = rk.map.apply(cur);
        RatVec got = bary_in(rk.vertex_points_after, cur);
        std::rotate(expect.begin(), expect.begin() + 1, expect.end());
        CHECK(got == expect);
        if (k + 1 == n) {
            RatVec sorted_b = b, sorted_g = got;
            std::sort(sorted_b.begin(), sorted_b.end());
            std::sort(sorted_g.begin(), sorted_g.end());
            CHECK(sorted_b == sorted_g);  // n reflections: original multiset
        }
    }
}

TEST_CASE("barycentric dictionary") {
    RatVec b0 = {Rat(1), Rat(0), Rat(0)};
    CHECK(barycentric_to_weights(b0) == RatVec{Rat(0), Rat(0), Rat(0)});

    RatVec b2 = {Rat(0), Rat(0), Rat(1)};
    CHECK(barycentric_to_weights(b2) == RatVec{Rat(0), Rat(0), Rat(1)});

    RatVec b = {Rat(0), Rat(1, 3), Rat(2, 3)};
    CHECK(barycentric_to_weights(b) == RatVec{Rat(0), Rat(1, 3), Rat(1)});

    CHECK_THROWS_AS(barycentric_to_weights(RatVec{Rat(1, 2), Rat(1, 4)}), std::invalid_argument);
    CHECK_THROWS_AS(barycentric_to_weights(RatVec{Rat(3, 2), Rat(-1, 2)}), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        long q = 1 + long(rng() % 9);
        long u = long(rng() % (q + 1));
        long v = long(rng() % (q + 1 - u));
        RatVec bb = {Rat(q - u - v, q), Rat(u, q), Rat(v, q)};
        CHECK(weights_to_barycentric(barycentric_to_weights(bb)) == bb);
    }
}

TEST_CASE("generalized arrangement for A1/Ad has walls at 0, 1/2, 1") {
    auto a1 = build_root_datum("A1");
    auto ad = RepWeights::adjoint(a1);
    auto arr = generalized_arrangement(a1, ad);
    std::set<Rat> zeros;
    for (const auto& h : arr) {
        REQUIRE(h.coeffs.size() == 1);
        REQUIRE(h.coeffs[0] != 0);
        zeros.insert(Rat(-h.level) / h.coeffs[0]);
    }
    CHECK(zeros == std::set<Rat>{Rat(0), Rat(1, 2), Rat(1)});
}

TEST_CASE("rho-facet classification") {
    auto a1 = build_root_datum("A1");
    auto ad = RepWeights::adjoint(a1);
    auto id = RepWeights::standard(a1);

    auto wall = rho_facet_classify(a1, ad, pt({"1/2"}));
    CHECK(wall.dim == 0);

    auto open13 = rho_facet_classify(a1, ad, pt({"1/3"}));
    CHECK(open13.dim == 1);
    CHECK(open13 == rho_facet_classify(a1, ad, pt({"2/5"})));
    CHECK_FALSE(open13 == rho_facet_classify(a1, ad, pt({"2/3"})));

    // Id adds no interior walls: dims agree with the ordinary facet.
    for (const char* t : {"1/7", "1/3", "1/2", "5/8", "1"}) {
        auto g = rho_facet_classify(a1, id, pt({t}));
        CHECK(g.dim == classify_facet(a1, pt({t})).dim);
    }

    auto a2 = build_root_datum("A2");
    auto id2 = RepWeights::standard(a2);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        long q = 2 + long(rng() % 5);
        long u = long(rng() % (q + 1));
        long v = long(rng() % (q + 1 - u));
        AlcovePoint x{{Rat(u, q), Rat(v, q)}};
        CHECK(rho_facet_classify(a2, id2, x).dim == classify_facet(a2, x).dim);
    }

    CHECK_THROWS_AS(rho_facet_classify(a1, ad, pt({"9/8"})), std::domain_error);
}

TEST_CASE("rep weight multisets are Weyl invariant") {
    for (const char* name : {"A1", "A2", "A3"}) {
        auto rd = build_root_datum(name);
        std::vector<RepWeights> reps = {RepWeights::standard(rd), RepWeights::adjoint(rd),
                                        RepWeights::sym2(rd)};
        for (const auto& rho : reps) {
            // s_j action on functionals: f -> f - f(alpha_j^vee) e_j*.
            for (int j = 0; j < rd.rank; ++j) {
                std::vector<RatVec> reflected;
                for (const auto& f : rho.functionals) {
                    Rat fav(0);
                    for (int i = 0; i < rd.rank; ++i) fav += f[i] * rd.cartan[i][j];
                    RatVec g = f;
                    g[j] -= fav;
                    reflected.push_back(g);
                }
                auto sorted = [](std::vector<RatVec> v) {
                    std::sort(v.begin(), v.end());
                    return v;
                };
                CHECK(sorted(reflected) == sorted(rho.functionals));
            }
        }
    }
    auto a2 = build_root_datum("A2");
    auto ad = RepWeights::adjoint(a2);
    CHECK(ad.functionals.size() == a2.roots.size() + size_t(a2.rank));
}
