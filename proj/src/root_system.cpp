#include "stabpoly/root_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stabpoly {

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<IntVec> cartan_matrix(Series s, int rank) {
    std::vector<IntVec> c(rank, IntVec(rank, 0));
    for (int i = 0; i < rank; ++i) c[i][i] = 2;
    auto bond = [&](int i, int j, long cij = -1, long cji = -1) {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) bond(i, i + 1);
    };
    switch (s) {
        case Series::A:
            chain(rank);
            break;
        case Series::B:  // alpha_rank short
            chain(rank);
            bond(rank - 2, rank - 1, -2, -1);
            break;
        case Series::C:  // alpha_rank long
            chain(rank);
            bond(rank - 2, rank - 1, -1, -2);
            break;
        case Series::D:
            chain(rank - 1);
            bond(rank - 3, rank - 1);
            break;
        case Series::E:
            // Bourbaki numbering: 1-3-4-5-6(-7)(-8), 2 attached to 4.
            bond(0, 2);
            bond(1, 3);
            for (int i = 2; i + 1 < rank; ++i) bond(i, i + 1);
            break;
        case Series::F:  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            bond(0, 1);
            bond(1, 2, -2, -1);
            bond(2, 3);
            break;
        case Series::G:  // alpha_1 short, alpha_2 long
            bond(0, 1, -1, -3);
            break;
    }
    return c;
}

long long weyl_order_table(Series s, int rank) {
    switch (s) {
        case Series::A: return factorial(rank + 1);
        case Series::B:
        case Series::C: return (1LL << rank) * factorial(rank);
        case Series::D: return (1LL << (rank - 1)) * factorial(rank);
        case Series::E:
            if (rank == 6) return 51840;
            if (rank == 7) return 2903040;
            return 696729600;
        case Series::F: return 1152;
        case Series::G: return 12;
    }
    return 0;
}

size_t positive_count_table(Series s, int rank) {
    switch (s) {
        case Series::A: return size_t(rank) * (rank + 1) / 2;
        case Series::B:
        case Series::C: return size_t(rank) * rank;
        case Series::D: return size_t(rank) * (rank - 1);
        case Series::E: return rank == 6 ? 36 : rank == 7 ? 63 : 120;
        case Series::F: return 24;
        case Series::G: return 6;
    }
    return 0;
}

int gauss_rank(std::vector<RatVec> rows) {
    size_t r = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Rat m = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= m * rows[r][j];
        }
        ++r;
    }
    return int(r);
}

}  // namespace

IntVec RootDatum::root_weight_coords(const IntVec& rc) const {
    IntVec w(rank, 0);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < rank; ++i) w[j] += rc[i] * cartan[i][j];
    return w;
}

std::string RootDatum::name() const {
    return std::string(1, char(series)) + std::to_string(rank);
}

RootDatum build_root_datum(Series s, int rank) {
    bool ok = false;
    switch (s) {
        case Series::A: ok = rank >= 1; break;
        case Series::B: ok = rank >= 2; break;
        case Series::C: ok = rank >= 3; break;
        case Series::D: ok = rank >= 4; break;
        case Series::E: ok = rank >= 6 && rank <= 8; break;
        case Series::F: ok = rank == 4; break;
        case Series::G: ok = rank == 2; break;
    }
    if (!ok)
        throw std::invalid_argument("invalid series/rank pair " + std::string(1, char(s)) +
                                    std::to_string(rank));
    RootDatum rd;
    rd.series = s;
    rd.rank = rank;
    rd.cartan = cartan_matrix(s, rank);

    // Close the simple roots under simple reflections, in root coordinates:
    // s_j(v) = v - <v, alpha_j^vee> e_j, with <v, alpha_j^vee> = sum_i v_i c_ij.
    std::set<IntVec> roots;
    std::vector<IntVec> frontier;
    for (int i = 0; i < rank; ++i) {
        IntVec e(rank, 0);
        e[i] = 1;
        roots.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const auto& v : frontier) {
            for (int j = 0; j < rank; ++j) {
                long p = 0;
                for (int i = 0; i < rank; ++i) p += v[i] * rd.cartan[i][j];
                IntVec w = v;
                w[j] -= p;
                if (roots.insert(w).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    rd.roots.assign(roots.begin(), roots.end());
    for (const auto& v : rd.roots) {
        bool pos = std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
        if (pos) rd.positive_roots.push_back(v);
    }
    auto height = [](const IntVec& v) { return std::accumulate(v.begin(), v.end(), 0L); };
    std::sort(rd.positive_roots.begin(), rd.positive_roots.end(),
              [&](const IntVec& a, const IntVec& b) {
                  long ha = height(a), hb = height(b);
                  if (ha != hb) return ha < hb;
                  return a < b;
              });
    if (rd.positive_roots.size() != positive_count_table(s, rank))
        throw std::logic_error("root closure produced wrong positive root count for " + rd.name());
    rd.highest_root = rd.positive_roots.back();
    rd.weyl_order = weyl_order_table(s, rank);
    return rd;
}

RootDatum build_root_datum(const std::string& spec) {
    if (spec.size() < 2) throw std::invalid_argument("bad group specifier '" + spec + "'");
    char c = spec[0];
    Series s;
    switch (c) {
        case 'A': s = Series::A; break;
        case 'B': s = Series::B; break;
        case 'C': s = Series::C; break;
        case 'D': s = Series::D; break;
        case 'E': s = Series::E; break;
        case 'F': s = Series::F; break;
        case 'G': s = Series::G; break;
        default: throw std::invalid_argument("bad group specifier '" + spec + "'");
    }
    int rank = 0;
    for (size_t i = 1; i < spec.size(); ++i) {
        if (spec[i] < '0' || spec[i] > '9')
            throw std::invalid_argument("bad group specifier '" + spec + "'");
        rank = rank * 10 + (spec[i] - '0');
    }
    return build_root_datum(s, rank);
}

Rat affine_eval(const AffineFunctional& f, const AlcovePoint& x) {
    if (f.root.size() != x.coords.size())
        throw std::invalid_argument("affine_eval: dimension mismatch");
    Rat v(f.level);
    for (size_t i = 0; i < f.root.size(); ++i) v += Rat(f.root[i]) * x.coords[i];
    return v;
}

std::vector<AffineFunctional> simple_affine_roots(const RootDatum& rd) {
    std::vector<AffineFunctional> s;
    AffineFunctional a0;
    a0.root.assign(rd.highest_root.begin(), rd.highest_root.end());
    for (auto& c : a0.root) c = -c;
    a0.level = 1;
    s.push_back(std::move(a0));
    for (int i = 0; i < rd.rank; ++i) {
        AffineFunctional ai;
        ai.root.assign(rd.rank, 0);
        ai.root[i] = 1;
        ai.level = 0;
        s.push_back(std::move(ai));
    }
    return s;
}

std::vector<AlcovePoint> alcove_vertices(const RootDatum& rd) {
    std::vector<AlcovePoint> v;
    v.push_back(AlcovePoint{RatVec(rd.rank, Rat(0))});
    for (int d = 0; d < rd.rank; ++d) {
        RatVec c(rd.rank, Rat(0));
        c[d] = Rat(1, rd.highest_root[d]);
        v.push_back(AlcovePoint{std::move(c)});
    }
    return v;
}

bool in_closed_alcove(const RootDatum& rd, const AlcovePoint& x) {
    for (const auto& a : simple_affine_roots(rd))
        if (affine_eval(a, x) < 0) return false;
    return true;
}

std::vector<int> Facet::vertex_labels(int rank) const {
    std::vector<int> out;
    for (int d = 0; d <= rank; ++d)
        if (!std::binary_search(vanishing.begin(), vanishing.end(), d)) out.push_back(d);
    return out;
}

Facet classify_facet(const RootDatum& rd, const AlcovePoint& x) {
    if (int(x.coords.size()) != rd.rank)
        throw std::invalid_argument("classify_facet: point has wrong dimension");
    auto S = simple_affine_roots(rd);
    Facet f;
    f.signs.resize(S.size());
    for (size_t i = 0; i < S.size(); ++i) {
        Rat v = affine_eval(S[i], x);
        if (v < 0)
            throw std::domain_error("point outside the closed alcove: simple affine root " +
                                    std::to_string(i) + " is negative");
        f.signs[i] = v == 0 ? 0 : 1;
        if (v == 0) f.vanishing.push_back(int(i));
    }
    f.dim = rd.rank - int(f.vanishing.size());
    return f;
}

Facet far_wall(const RootDatum& rd, const Facet& f) {
    auto labels = f.vertex_labels(rd.rank);
    if (labels.size() < 2)
        throw std::domain_error("far_wall: vertex facet has no far wall");
    int drop = labels.front();
    Facet g = f;
    g.vanishing.push_back(drop);
    std::sort(g.vanishing.begin(), g.vanishing.end());
    g.signs[drop] = 0;
    g.dim = f.dim - 1;
    return g;
}

RepWeights RepWeights::standard(const RootDatum& rd) {
    if (rd.series != Series::A)
        throw std::invalid_argument("standard representation weights only built for type A");
    int n = rd.rank + 1;
    RepWeights w;
    w.label = Label::Id;
    for (int j = 1; j <= n; ++j) {
        RatVec f(rd.rank, Rat(0));
        for (int i = 1; i <= rd.rank; ++i) f[i - 1] = Rat(i >= j ? 1 : 0) - Rat(i, n);
        w.functionals.push_back(std::move(f));
    }
    return w;
}

RepWeights RepWeights::adjoint(const RootDatum& rd) {
    RepWeights w;
    w.label = Label::Ad;
    for (const auto& r : rd.roots) {
        RatVec f(r.begin(), r.end());
        w.functionals.push_back(std::move(f));
    }
    for (int i = 0; i < rd.rank; ++i) w.functionals.push_back(RatVec(rd.rank, Rat(0)));
    return w;
}

RepWeights RepWeights::sym2(const RootDatum& rd) {
    RepWeights id = standard(rd);
    RepWeights w;
    w.label = Label::Sym2;
    size_t n = id.functionals.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            RatVec f(rd.rank);
            for (int t = 0; t < rd.rank; ++t) f[t] = id.functionals[i][t] + id.functionals[j][t];
            w.functionals.push_back(std::move(f));
        }
    return w;
}

RepWeights RepWeights::custom(std::vector<RatVec> fns) {
    RepWeights w;
    w.label = Label::Custom;
    w.functionals = std::move(fns);
    return w;
}

RepWeights RepWeights::by_name(const RootDatum& rd, const std::string& name) {
    if (name == "Id") return standard(rd);
    if (name == "Ad") return adjoint(rd);
    if (name == "Sym2") return sym2(rd);
    throw std::invalid_argument("unknown representation label '" + name + "'");
}

std::string RepWeights::name() const {
    switch (label) {
        case Label::Id: return "Id";
        case Label::Ad: return "Ad";
        case Label::Sym2: return "Sym2";
        case Label::Custom: return "custom";
    }
    return "custom";
}

namespace {

// (f, n) -> primitive integer form with positive leading coefficient, or
// nullopt if f == 0.
std::optional<GenHyperplane> canonical_hyperplane(const RatVec& f, const Rat& n) {
    Int lcm = 1;
    for (const auto& q : f) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(q));
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(n));
    std::vector<Int> F;
    for (const auto& q : f) F.push_back(Int(q * Rat(lcm)));
    Int N = Int(n * Rat(lcm));
    Int g = 0;
    for (const auto& c : F) g = boost::multiprecision::gcd(g, c);
    g = boost::multiprecision::gcd(g, N);
    if (g == 0) return std::nullopt;
    int lead = 0;
    for (const auto& c : F)
        if (c != 0) {
            lead = c > 0 ? 1 : -1;
            break;
        }
    if (lead == 0) return std::nullopt;  // constant functional: no hyperplane
    if (lead < 0) g = -g;
    GenHyperplane h;
    for (auto& c : F) h.coeffs.push_back(long(c / g));
    h.level = N / g;
    return h;
}

Rat eval_linear(const RatVec& f, const AlcovePoint& x) {
    Rat v(0);
    for (size_t i = 0; i < f.size(); ++i) v += f[i] * x.coords[i];
    return v;
}

}  // namespace

std::vector<GenHyperplane> generalized_arrangement(const RootDatum& rd, const RepWeights& rho) {
    auto vertices = alcove_vertices(rd);
    std::set<GenHyperplane> out;
    auto add_levels = [&](const RatVec& f) {
        Rat lo = eval_linear(f, vertices[0]), hi = lo;
        for (const auto& v : vertices) {
            Rat e = eval_linear(f, v);
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        // f(x) + n = 0 has a solution on the closed alcove iff -hi <= n <= -lo.
        for (Int n = rat_ceil(-hi); n <= rat_floor(-lo); ++n) {
            auto h = canonical_hyperplane(f, Rat(n));
            if (h) out.insert(*h);
        }
    };
    for (const auto& r : rd.positive_roots) add_levels(RatVec(r.begin(), r.end()));
    // Affine roots of SL(V) pulled back: weight differences. For Ad these
    // subsume the single weight functionals (zero is a weight).
    const auto& W = rho.functionals;
    for (size_t a = 0; a < W.size(); ++a)
        for (size_t b = a + 1; b < W.size(); ++b) {
            RatVec d(rd.rank);
            for (int t = 0; t < rd.rank; ++t) d[t] = W[a][t] - W[b][t];
            add_levels(d);
        }
    return std::vector<GenHyperplane>(out.begin(), out.end());
}

bool GeneralizedFacet::contains_in_closure(const std::vector<GenHyperplane>& arr,
                                           const AlcovePoint& x) const {
    for (size_t i = 0; i < arr.size(); ++i) {
        Rat v(arr[i].level);
        for (size_t t = 0; t < arr[i].coeffs.size(); ++t) v += Rat(arr[i].coeffs[t]) * x.coords[t];
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s != 0 && s != signs[i]) return false;
    }
    return true;
}

GeneralizedFacet rho_facet_classify(const RootDatum& rd, const RepWeights& rho,
                                    const AlcovePoint& x) {
    if (!in_closed_alcove(rd, x)) {
        classify_facet(rd, x);  // raises naming the violated root
    }
    auto arr = generalized_arrangement(rd, rho);
    GeneralizedFacet g;
    g.witness = x;
    g.signs.resize(arr.size());
    std::vector<RatVec> vanishing;
    for (size_t i = 0; i < arr.size(); ++i) {
        Rat v(arr[i].level);
        for (size_t t = 0; t < arr[i].coeffs.size(); ++t) v += Rat(arr[i].coeffs[t]) * x.coords[t];
        g.signs[i] = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (v == 0) vanishing.push_back(RatVec(arr[i].coeffs.begin(), arr[i].coeffs.end()));
    }
    g.dim = rd.rank - gauss_rank(std::move(vanishing));
    return g;
}

AlcovePoint AffineMap::apply(const AlcovePoint& x) const {
    AlcovePoint y;
    y.coords.resize(offset.size());
    for (size_t i = 0; i < offset.size(); ++i) {
        Rat v = offset[i];
        for (size_t j = 0; j < x.coords.size(); ++j) v += linear[i][j] * x.coords[j];
        y.coords[i] = v;
    }
    return y;
}

namespace {

// Reflection through the affine hyperplane f(x) + c = 0 for a primitive
// integer functional f (type A: all roots long, coroot = cartan^T f).
AffineMap reflection_map(const RootDatum& rd, const IntVec& f, const Rat& c) {
    RatVec coroot(rd.rank, Rat(0));
    for (int i = 0; i < rd.rank; ++i)
        for (int j = 0; j < rd.rank; ++j) coroot[i] += Rat(rd.cartan[j][i] * f[j]);
    AffineMap m;
    m.linear.assign(rd.rank, RatVec(rd.rank, Rat(0)));
    m.offset.assign(rd.rank, Rat(0));
    for (int i = 0; i < rd.rank; ++i) {
        m.linear[i][i] = 1;
        for (int j = 0; j < rd.rank; ++j) m.linear[i][j] -= coroot[i] * Rat(f[j]);
        m.offset[i] = -coroot[i] * c;
    }
    return m;
}

// Affine functional (primitive integer) vanishing on the given points,
// normalized to be nonnegative at `inside`.
std::pair<IntVec, Rat> wall_through(const RootDatum& rd, const std::vector<AlcovePoint>& pts,
                                    const AlcovePoint& inside) {
    int r = rd.rank;
    // Unknowns: f_1..f_r, c. Equations: f . p + c = 0 for each point.
    std::vector<RatVec> rows;
    for (const auto& p : pts) {
        RatVec row(r + 1);
        for (int i = 0; i < r; ++i) row[i] = p.coords[i];
        row[r] = 1;
        rows.push_back(std::move(row));
    }
    // Solve the nullspace (dimension 1 for r affinely independent points).
    size_t piv_row = 0;
    std::vector<int> piv_col;
    for (int c0 = 0; c0 <= r && piv_row < rows.size(); ++c0) {
        size_t p = piv_row;
        while (p < rows.size() && rows[p][c0] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[piv_row], rows[p]);
        Rat inv = rows[piv_row][c0];
        for (int j = 0; j <= r; ++j) rows[piv_row][j] /= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == piv_row || rows[i][c0] == 0) continue;
            Rat m = rows[i][c0];
            for (int j = 0; j <= r; ++j) rows[i][j] -= m * rows[piv_row][j];
        }
        piv_col.push_back(c0);
        ++piv_row;
    }
    int free_col = -1;
    for (int c0 = 0; c0 <= r; ++c0)
        if (std::find(piv_col.begin(), piv_col.end(), c0) == piv_col.end()) {
            free_col = c0;
            break;
        }
    if (free_col < 0) throw std::logic_error("wall_through: no nullspace");
    RatVec sol(r + 1, Rat(0));
    sol[free_col] = 1;
    for (size_t i = 0; i < piv_col.size(); ++i) sol[piv_col[i]] = -rows[i][free_col];
    RatVec f(sol.begin(), sol.begin() + r);
    Rat c = sol[r];
    auto h = canonical_hyperplane(f, c);
    if (!h) throw std::logic_error("wall_through: degenerate wall");
    IntVec fi = h->coeffs;
    Rat ci(h->level);
    Rat at_inside = ci;
    for (int i = 0; i < r; ++i) at_inside += Rat(fi[i]) * inside.coords[i];
    if (at_inside < 0) {
        for (auto& v : fi) v = -v;
        ci = -ci;
    }
    return {fi, ci};
}

}  // namespace

AlcoveReflection reflect_alcove(const RootDatum& rd, long k) {
    if (rd.series != Series::A)
        throw std::invalid_argument("reflect_alcove: type A datum required");
    if (k < 0) throw std::invalid_argument("reflect_alcove: k must be >= 0");
    long n = rd.rank + 1;
    std::vector<long> labels;
    std::vector<AlcovePoint> points = alcove_vertices(rd);
    for (long d = 0; d < n; ++d) labels.push_back(d);

    AlcoveReflection result;
    for (long step = 0; step <= k; ++step) {
        // Drop the smallest label; reflect it through the wall spanned by the rest.
        size_t drop = size_t(std::min_element(labels.begin(), labels.end()) - labels.begin());
        std::vector<AlcovePoint> kept;
        for (size_t i = 0; i < points.size(); ++i)
            if (i != drop) kept.push_back(points[i]);
        auto [f, c] = wall_through(rd, kept, points[drop]);
        AffineMap refl = reflection_map(rd, f, c);
        AlcovePoint image = refl.apply(points[drop]);
        long new_label = n + step;
        labels[drop] = new_label;
        points[drop] = image;
        if (step == k) {
            result.map = refl;
            result.new_vertex_label = new_label;
        }
    }
    std::vector<size_t> order(labels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return labels[a] < labels[b]; });
    for (size_t i : order) {
        result.vertex_labels_after.push_back(labels[i]);
        result.vertex_points_after.push_back(points[i]);
    }
    return result;
}

RatVec barycentric_to_weights(const RatVec& b) {
    Rat sum(0);
    for (const auto& v : b) {
        if (v < 0) throw std::invalid_argument("barycentric_to_weights: negative entry");
        sum += v;
    }
    if (sum != 1) throw std::invalid_argument("barycentric_to_weights: entries must sum to 1");
    RatVec w;
    Rat acc(0);
    w.push_back(acc);
    for (size_t j = 1; j < b.size(); ++j) {
        acc += b[j];
        w.push_back(acc);
    }
    return w;
}

RatVec weights_to_barycentric(const RatVec& w) {
    if (w.empty() || w[0] != 0)
        throw std::invalid_argument("weights_to_barycentric: first weight must be 0");
    RatVec b(w.size());
    for (size_t j = 1; j < w.size(); ++j) {
        b[j] = w[j] - w[j - 1];
        if (b[j] < 0) throw std::invalid_argument("weights_to_barycentric: weights must increase");
    }
    if (w.back() > 1) throw std::invalid_argument("weights_to_barycentric: last weight exceeds 1");
    b[0] = Rat(1) - w.back();
    return b;
}

RatVec barycentric_coords(const RootDatum& rd, const AlcovePoint& x) {
    RatVec b(rd.rank + 1);
    Rat rest(0);
    for (int d = 1; d <= rd.rank; ++d) {
        b[d] = Rat(rd.highest_root[d - 1]) * x.coords[d - 1];
        rest += b[d];
    }
    b[0] = Rat(1) - rest;
    return b;
}

}  // namespace stabpoly
