#include "stabpoly/parabolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabpoly {

std::vector<int> MarkedPointData::flag_dims() const {
    std::vector<int> dims;
    int acc = 0;
    for (const auto& s : steps) {
        acc += s.mult;
        dims.push_back(acc);
    }
    return dims;
}

void validate_bundle(const ParabolicBundle& b) {
    if (b.rank < 1) throw std::invalid_argument("bundle rank must be >= 1");
    for (const auto& [id, pd] : b.points) {
        if (pd.steps.empty()) throw std::invalid_argument("point '" + id + "' has no flag steps");
        int total = 0;
        for (size_t i = 0; i < pd.steps.size(); ++i) {
            if (pd.steps[i].mult < 1)
                throw std::invalid_argument("point '" + id + "' has a non-positive multiplicity");
            if (i && pd.steps[i].weight < pd.steps[i - 1].weight)
                throw std::invalid_argument("point '" + id + "' weights must be increasing");
            total += pd.steps[i].mult;
        }
        if (total != b.rank)
            throw std::invalid_argument("point '" + id + "' multiplicities must sum to the rank");
    }
}

bool is_normalized(const ParabolicBundle& b) {
    for (const auto& [id, pd] : b.points)
        for (const auto& s : pd.steps)
            if (s.weight < 0 || s.weight >= 1) return false;
    return true;
}

namespace {

MarkedPointData merge_steps(std::vector<FlagStep> steps) {
    std::sort(steps.begin(), steps.end(),
              [](const FlagStep& a, const FlagStep& b) { return a.weight < b.weight; });
    MarkedPointData out;
    for (const auto& s : steps) {
        if (!out.steps.empty() && out.steps.back().weight == s.weight)
            out.steps.back().mult += s.mult;
        else
            out.steps.push_back(s);
    }
    return out;
}

}  // namespace

ParabolicBundle normalize(const ParabolicBundle& b) {
    validate_bundle(b);
    ParabolicBundle out;
    out.rank = b.rank;
    out.degree = b.degree;
    for (const auto& [id, pd] : b.points) {
        std::vector<FlagStep> steps;
        for (const auto& s : pd.steps) {
            Int k = rat_floor(s.weight);
            out.degree += k * s.mult;
            steps.push_back({s.weight - Rat(k), s.mult});
        }
        out.points[id] = merge_steps(std::move(steps));
    }
    return out;
}

Rat pardeg(const ParabolicBundle& b) {
    Rat d(b.degree);
    for (const auto& [id, pd] : b.points)
        for (const auto& s : pd.steps) d += s.weight * Rat(s.mult);
    return d;
}

Rat parslope(const ParabolicBundle& b) { return pardeg(b) / Rat(b.rank); }

ParabolicBundle slide_weights(const ParabolicBundle& b, const std::string& point, const Rat& a) {
    auto it = b.points.find(point);
    if (it == b.points.end()) throw std::invalid_argument("slide_weights: unknown point '" + point + "'");
    ParabolicBundle out = b;
    for (auto& s : out.points[point].steps) s.weight += a;
    return out;
}

ZFiltration::ZFiltration(ParabolicBundle normalized) : base_(std::move(normalized)) {
    validate_bundle(base_);
    if (!is_normalized(base_))
        throw std::invalid_argument("z_filtration: bundle must be normalized");
    for (const auto& [id, pd] : base_.points)
        for (size_t i = 1; i < pd.steps.size(); ++i)
            if (pd.steps[i].weight == pd.steps[i - 1].weight)
                throw std::invalid_argument("z_filtration: merge equal weights first (normalize)");
}

int ZFiltration::period(const std::string& point) const {
    auto it = base_.points.find(point);
    if (it == base_.points.end())
        throw std::invalid_argument("z_filtration: unknown point '" + point + "'");
    return int(it->second.steps.size());
}

Rat ZFiltration::jump_weight(const std::string& point, long i) const {
    long l = period(point);
    long q = i >= 0 ? i / l : -((-i + l - 1) / l);
    long r = i - q * l;
    return base_.points.at(point).steps[size_t(r)].weight + Rat(q);
}

int ZFiltration::jump_mult(const std::string& point, long i) const {
    long l = period(point);
    long r = ((i % l) + l) % l;
    return base_.points.at(point).steps[size_t(r)].mult;
}

ParabolicBundle ZFiltration::shift(const std::string& point, long m) const {
    ParabolicBundle out = base_;
    long l = period(point);
    Int deg = out.degree;
    if (m > 0)
        for (long j = 0; j < m; ++j) deg -= jump_mult(point, j);
    else
        for (long j = m; j < 0; ++j) deg += jump_mult(point, j);
    out.degree = deg;
    std::vector<FlagStep> steps;
    for (long j = 0; j < l; ++j) steps.push_back({jump_weight(point, m + j), jump_mult(point, m + j)});
    out.points[point].steps = std::move(steps);
    return out;
}

ParabolicBundle ZFiltration::shift_all(const std::map<std::string, long>& m) const {
    // Windows at distinct points are independent.
    ParabolicBundle out = base_;
    for (const auto& [pt, mi] : m) {
        long l = period(pt);
        if (mi > 0)
            for (long j = 0; j < mi; ++j) out.degree -= jump_mult(pt, j);
        else
            for (long j = mi; j < 0; ++j) out.degree += jump_mult(pt, j);
        std::vector<FlagStep> steps;
        for (long j = 0; j < l; ++j) steps.push_back({jump_weight(pt, mi + j), jump_mult(pt, mi + j)});
        out.points[pt].steps = std::move(steps);
    }
    return out;
}

namespace {

// Merges equal-weight steps of a raw presentation without renormalizing,
// provided each point's weights span less than one period; otherwise the
// bundle is normalized first.
ParabolicBundle reduce_presentation(const ParabolicBundle& b) {
    ParabolicBundle work = b;
    for (const auto& [id, pd] : b.points) {
        if (!pd.steps.empty() && pd.steps.back().weight - pd.steps.front().weight >= 1) {
            work = normalize(b);
            break;
        }
    }
    ParabolicBundle out;
    out.rank = work.rank;
    out.degree = work.degree;
    for (const auto& [id, pd] : work.points) out.points[id] = merge_steps(pd.steps);
    return out;
}

}  // namespace

std::optional<HeckeCertificate> hecke_comparable(const ParabolicBundle& b1,
                                                 const ParabolicBundle& b2) {
    validate_bundle(b1);
    validate_bundle(b2);
    if (b1.rank != b2.rank) return std::nullopt;
    {
        auto keys = [](const ParabolicBundle& b) {
            std::vector<std::string> k;
            for (const auto& [id, pd] : b.points) k.push_back(id);
            return k;
        };
        if (keys(b1) != keys(b2)) return std::nullopt;
    }
    ParabolicBundle A = reduce_presentation(normalize(b1));
    ParabolicBundle B = reduce_presentation(b2);

    std::vector<std::string> pts;
    for (const auto& [id, pd] : A.points) pts.push_back(id);

    if (pts.empty()) {
        if (A.degree != B.degree) return std::nullopt;
        return HeckeCertificate{};
    }

    ZFiltration fil(A);
    std::vector<long> periods;
    for (const auto& p : pts) periods.push_back(fil.period(p));

    // Enumerate per-point window offsets lexicographically.
    std::vector<long> m(pts.size(), 0);
    while (true) {
        std::map<std::string, long> shifts;
        for (size_t i = 0; i < pts.size(); ++i) shifts[pts[i]] = m[i];
        ParabolicBundle S = fil.shift_all(shifts);
        bool structure_ok = true;
        for (const auto& p : pts) {
            const auto& sa = S.points[p].steps;
            const auto& sb = B.points[p].steps;
            if (sa.size() != sb.size()) { structure_ok = false; break; }
            for (size_t i = 0; i < sa.size(); ++i) {
                if (sa[i].mult != sb[i].mult ||
                    sa[i].weight - sa[0].weight != sb[i].weight - sb[0].weight) {
                    structure_ok = false;
                    break;
                }
            }
            if (!structure_ok) break;
        }
        if (structure_ok) {
            // Fold whole periods into the first point to match degrees.
            Int diff = S.degree - B.degree;
            if (diff % b1.rank == 0) {
                Int K = diff / b1.rank;
                HeckeCertificate cert;
                for (size_t i = 0; i < pts.size(); ++i) cert.shifts[pts[i]] = m[i];
                cert.shifts[pts[0]] += long(K) * periods[0];
                for (const auto& p : pts) {
                    Rat slide = B.points[p].steps[0].weight - S.points[p].steps[0].weight;
                    if (p == pts[0]) slide -= Rat(K);
                    cert.slides[p] = slide;
                }
                return cert;
            }
        }
        // next offset vector
        size_t i = 0;
        while (i < m.size()) {
            if (++m[i] < periods[i]) break;
            m[i] = 0;
            ++i;
        }
        if (i == m.size()) break;
    }
    return std::nullopt;
}

ExtendedWeightSchema extend_weights(const RootDatum& rd, const RepWeights& rho,
                                    const AlcovePoint& theta, const GeneralizedFacet& facet) {
    if (!in_closed_alcove(rd, theta)) classify_facet(rd, theta);  // raises
    auto arr = generalized_arrangement(rd, rho);
    if (facet.signs.size() != arr.size())
        throw std::invalid_argument("extend_weights: facet does not belong to this (group, rho)");
    if (!facet.contains_in_closure(arr, theta))
        throw std::domain_error("extend_weights: theta is not in the closure of the rho-facet");

    const auto& W = rho.functionals;
    auto eval_at = [&](const RatVec& f, const AlcovePoint& x) {
        Rat v(0);
        for (size_t i = 0; i < f.size(); ++i) v += f[i] * x.coords[i];
        return v;
    };
    const AlcovePoint& z = facet.witness;
    size_t top = 0;
    Rat top_val = eval_at(W[0], z);
    for (size_t a = 1; a < W.size(); ++a) {
        Rat v = eval_at(W[a], z);
        if (v > top_val) {
            top_val = v;
            top = a;
        }
    }
    Rat top_theta = eval_at(W[top], theta);

    ExtendedWeightSchema schema;
    std::vector<FlagStep> steps;
    for (size_t a = 0; a < W.size(); ++a) {
        Rat wz = top_val - eval_at(W[a], z);
        Int k = rat_floor(wz);
        Rat beta = top_theta - eval_at(W[a], theta) - Rat(k);
        if (beta < 0 || beta > 1)
            throw std::logic_error("extend_weights: limit weight escaped [0,1]");
        steps.push_back({beta, 1});
        schema.line_twists.push_back(long(k));
        schema.underlying_degree += k;
    }
    auto merged = merge_steps(std::move(steps));
    schema.steps = merged.steps;
    std::sort(schema.line_twists.begin(), schema.line_twists.end());
    schema.has_weight_one = !schema.steps.empty() && schema.steps.back().weight == 1;
    return schema;
}

std::vector<int> ExtendedWeightSchema::flag_dims() const {
    std::vector<int> dims;
    int acc = 0;
    for (const auto& s : steps) {
        acc += s.mult;
        dims.push_back(acc);
    }
    return dims;
}

ParabolicBundle associated_bundle(const RootDatum& rd, const RepWeights& rho,
                                  const std::vector<std::pair<std::string, AlcovePoint>>& points) {
    const auto& W = rho.functionals;
    ParabolicBundle b;
    b.rank = int(W.size());
    b.degree = 0;
    for (const auto& [id, theta] : points) {
        if (!in_closed_alcove(rd, theta)) classify_facet(rd, theta);  // raises
        std::vector<FlagStep> steps;
        for (const auto& mu : W) {
            Rat v(0);
            for (size_t i = 0; i < mu.size(); ++i) v += mu[i] * theta.coords[i];
            Rat vp = -v;
            Int k = rat_floor(vp);
            b.degree += k;
            steps.push_back({vp - Rat(k), 1});
        }
        b.points[id] = merge_steps(std::move(steps));
    }
    return b;
}

ParabolicBundle schema_bundle(int rank, const std::string& point,
                              const ExtendedWeightSchema& schema) {
    ParabolicBundle b;
    b.rank = rank;
    b.degree = schema.underlying_degree;
    MarkedPointData pd;
    pd.steps = schema.steps;
    b.points[point] = pd;
    return b;
}

Rat relative_pardeg(const ParabolicBundle& ambient, const SubBundleDatum& s) {
    if (s.rank < 1 || s.rank > ambient.rank)
        throw std::invalid_argument("sub-bundle rank out of range");
    Rat pd(s.degree);
    for (const auto& [id, ptdata] : ambient.points) {
        auto it = s.positions.find(id);
        if (it == s.positions.end())
            throw std::invalid_argument("sub-bundle datum missing positions at point '" + id + "'");
        if (int(it->second.size()) != s.rank)
            throw std::invalid_argument("sub-bundle datum needs one position per flag jump");
        std::vector<int> count(ptdata.steps.size(), 0);
        for (int pos : it->second) {
            if (pos < 0 || pos >= int(ptdata.steps.size()))
                throw std::invalid_argument("sub-bundle position out of range at '" + id + "'");
            if (++count[pos] > ptdata.steps[pos].mult)
                throw std::invalid_argument("sub-bundle positions exceed step multiplicity at '" + id + "'");
            pd += ptdata.steps[pos].weight;
        }
    }
    return pd - Rat(s.rank) * parslope(ambient);
}

namespace {

SubCheck check_against(const ParabolicBundle& b, const std::vector<SubBundleDatum>& subs,
                       bool strict) {
    validate_bundle(b);
    SubCheck out;
    for (size_t i = 0; i < subs.size(); ++i) {
        Rat v = relative_pardeg(b, subs[i]);
        bool bad = strict ? v >= 0 : v > 0;
        if (bad) {
            out.ok = false;
            out.violator = i;
            out.value = v;
            return out;
        }
    }
    return out;
}

}  // namespace

SubCheck is_semistable_against(const ParabolicBundle& b, const std::vector<SubBundleDatum>& subs) {
    return check_against(b, subs, false);
}

SubCheck is_stable_against(const ParabolicBundle& b, const std::vector<SubBundleDatum>& subs) {
    return check_against(b, subs, true);
}

}  // namespace stabpoly
