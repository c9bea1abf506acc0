#include "stabpoly/stability.hpp"

#include <algorithm>
#include <functional>

namespace stabpoly {

ThetaTuple make_theta_tuple(RootDatum group, std::vector<AlcovePoint> points) {
    if (points.empty()) throw std::invalid_argument("theta tuple needs at least one point");
    for (const auto& p : points) {
        if (int(p.coords.size()) != group.rank)
            throw std::invalid_argument("theta component has wrong dimension");
        classify_facet(group, p);  // raises outside the closed alcove
    }
    return ThetaTuple{std::move(group), std::move(points)};
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Stable: return "Stable";
        case Status::StrictlySemistable: return "StrictlySemistable";
        case Status::Unstable: return "Unstable";
    }
    return "?";
}

RatVec a_vector(const RootDatum& rd, const AlcovePoint& x) {
    if (rd.series != Series::A)
        throw std::invalid_argument("a_vector: type A exact mode only");
    int n = rd.rank + 1;
    RatVec a(n, Rat(0));
    // a_j - a_{j+1} = x_j, sum a_j = 0.
    for (int j = n - 2; j >= 0; --j) a[j] = a[j + 1] + x.coords[j];
    Rat mean(0);
    for (const auto& v : a) mean += v;
    mean /= n;
    for (auto& v : a) v -= mean;
    return a;
}

Rat pairing(const std::vector<int>& subset, const RatVec& a) {
    Rat s(0);
    for (int i : subset) {
        if (i < 1 || i > int(a.size())) throw std::invalid_argument("pairing: subset out of range");
        s += a[i - 1];
    }
    return s;
}

std::vector<Wall> enumerate_walls(const RootDatum& rd, int s, std::optional<int> parabolic_filter,
                                  long long budget) {
    if (rd.series != Series::A)
        throw std::invalid_argument(
            "enumerate_walls: exact mode covers type A only; register an oracle-backed "
            "enumerator for other series");
    if (s < 1) throw std::invalid_argument("enumerate_walls: need s >= 1");
    int n = rd.rank + 1;
    std::vector<Wall> walls;
    long long work = 0;
    for (int k = 1; k <= rd.rank; ++k) {
        if (parabolic_filter && *parabolic_filter != k) continue;
        GrassmannianShape shape = make_shape(k, n);
        // Box partitions in lexicographic order.
        std::vector<Partition> box;
        std::vector<int> cur;
        std::function<void(int, int)> gen = [&](int row, int prev) {
            box.push_back(Partition(std::vector<int>(cur)));
            if (row >= shape.rows()) return;
            for (int v = 1; v <= std::min(prev, shape.cols()); ++v) {
                cur.push_back(v);
                gen(row + 1, v);
                cur.pop_back();
            }
        };
        gen(0, shape.cols());
        std::sort(box.begin(), box.end());
        int dmax = degree_bound(shape, s);
        for (int d = 0; d <= dmax; ++d) {
            int target = shape.dimension() + n * d;
            std::vector<Partition> chosen(s);
            std::function<void(int, int, const QuantumClass&)> dfs = [&](int i, int remaining,
                                                                         const QuantumClass& acc) {
                if (++work > budget) throw WallBudgetError(k, d);
                if (acc.terms.empty()) return;
                if (i == s) {
                    if (remaining != 0) return;
                    std::vector<int> full(shape.rows(), shape.cols());
                    long long gw = acc.coeff(Partition(std::move(full)), d);
                    if (gw < 0)
                        throw std::logic_error("negative Gromov-Witten number: sign convention broken");
                    if (gw > 0) {
                        Wall w;
                        w.k = k;
                        w.d = d;
                        w.classes = chosen;
                        for (const auto& c : chosen) w.subsets.push_back(schubert_subset(c, shape));
                        w.gw = gw;
                        walls.push_back(std::move(w));
                    }
                    return;
                }
                int slots_left = s - i - 1;
                for (const auto& lam : box) {
                    int sz = lam.size();
                    if (sz > remaining) continue;
                    if (remaining - sz > slots_left * shape.dimension()) continue;
                    chosen[i] = lam;
                    dfs(i + 1, remaining - sz,
                        quantum_product(acc, QuantumClass::schubert(lam), shape, d));
                }
            };
            dfs(0, target, QuantumClass::unit());
        }
    }
    std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.d != b.d) return a.d < b.d;
        return a.classes < b.classes;
    });
    return walls;
}

namespace {

std::vector<RatVec> tuple_a_vectors(const ThetaTuple& theta) {
    std::vector<RatVec> out;
    for (const auto& p : theta.points) out.push_back(a_vector(theta.group, p));
    return out;
}

Rat wall_lhs(const Wall& w, const std::vector<RatVec>& a) {
    Rat lhs(0);
    for (size_t x = 0; x < a.size(); ++x) lhs += pairing(w.subsets[x], a[x]);
    return lhs;
}

}  // namespace

SemistableResult check_semistable(const ThetaTuple& theta, const std::vector<Wall>& walls) {
    auto a = tuple_a_vectors(theta);
    SemistableResult res;
    res.wall_count = walls.size();
    for (const auto& w : walls) {
        Rat lhs = wall_lhs(w, a);
        if (lhs > w.d) {
            res.semistable = false;
            res.violation = WallEvaluation{w, lhs};
            return res;
        }
    }
    return res;
}

SemistableResult check_semistable(const ThetaTuple& theta) {
    return check_semistable(theta, enumerate_walls(theta.group, int(theta.points.size())));
}

Verdict check_stable_strict(const ThetaTuple& theta, const std::vector<Wall>& walls) {
    auto a = tuple_a_vectors(theta);
    Verdict v;
    v.wall_count = walls.size();
    for (const auto& w : walls) {
        Rat lhs = wall_lhs(w, a);
        if (lhs > w.d) {
            v.status = Status::Unstable;
            v.certificate = WallEvaluation{w, lhs};
            v.equality_walls.clear();
            return v;
        }
        if (lhs == w.d) v.equality_walls.push_back(WallEvaluation{w, lhs});
    }
    if (v.equality_walls.empty()) {
        v.status = Status::Stable;
    } else {
        v.status = Status::StrictlySemistable;
        v.certificate = v.equality_walls.front();
    }
    return v;
}

Verdict check_stable_strict(const ThetaTuple& theta) {
    return check_stable_strict(theta, enumerate_walls(theta.group, int(theta.points.size())));
}

MinusOneReport minus_one_scan(const ThetaTuple& theta,
                              const std::vector<WallEvaluation>& equality_walls) {
    auto a = tuple_a_vectors(theta);
    int n = theta.group.rank + 1;
    MinusOneReport report;
    for (const auto& ev : equality_walls) {
        const Wall& w = ev.wall;
        MinusOneEntry entry;
        entry.wall = w;
        entry.lhs = wall_lhs(w, a);
        entry.pardeg_zero = entry.lhs == w.d;
        // Quotient weights in the slope-zero presentation: the directions
        // from the sub positions I to the complement get frac(a_j - a_i);
        // pardeg 0 then pins the underlying degree to minus their sum.
        Rat weight_sum(0);
        for (size_t x = 0; x < a.size(); ++x) {
            std::vector<bool> in_sub(n + 1, false);
            for (int i : w.subsets[x]) in_sub[i] = true;
            for (int i = 1; i <= n; ++i) {
                if (!in_sub[i]) continue;
                for (int j = 1; j <= n; ++j) {
                    if (in_sub[j]) continue;
                    weight_sum += rat_frac(a[x][j - 1] - a[x][i - 1]);
                }
            }
        }
        if (!is_integer(weight_sum))
            throw std::logic_error("minus_one_scan: quotient degree is not integral");
        Int m = boost::multiprecision::numerator(weight_sum);
        entry.quotient_degree = -m;
        entry.minus_one = (m == 1);
        entry.deformable = (m <= w.k * (n - w.k));
        report.blocks_stability = report.blocks_stability || entry.deformable;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

ExistenceResult exists_irreducible_hom(const ThetaTuple& theta, const std::vector<Wall>& walls) {
    ExistenceResult res;
    res.verdict = check_stable_strict(theta, walls);
    if (res.verdict.status != Status::Unstable)
        res.scan = minus_one_scan(theta, res.verdict.equality_walls);
    res.exists = res.verdict.status == Status::Stable;
    bool stable_by_scan =
        res.verdict.status != Status::Unstable && !res.scan.blocks_stability;
    res.criteria_agree = (res.verdict.status == Status::Stable) == stable_by_scan;
    return res;
}

ExistenceResult exists_irreducible_hom(const ThetaTuple& theta) {
    return exists_irreducible_hom(theta, enumerate_walls(theta.group, int(theta.points.size())));
}

}  // namespace stabpoly
