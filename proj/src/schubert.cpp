#include "stabpoly/schubert.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stabpoly {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
        if (i && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must weakly decrease");
    }
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::fits(int rows, int cols) const {
    return length() <= rows && (parts.empty() || parts[0] <= cols);
}

Partition Partition::complement(int rows, int cols) const {
    if (!fits(rows, cols)) throw std::invalid_argument("partition does not fit the box");
    std::vector<int> c;
    for (int i = rows - 1; i >= 0; --i) c.push_back(cols - part(i));
    return Partition(std::move(c));
}

std::string Partition::str() const {
    if (parts.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s;
}

Partition parse_partition(const std::string& s) {
    if (s.empty() || s == "-" || s == "0") return Partition{};
    std::vector<int> parts;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string tok = s.substr(pos, comma - pos);
        if (tok.empty()) throw std::invalid_argument("bad partition '" + s + "'");
        for (char c : tok)
            if (c < '0' || c > '9') throw std::invalid_argument("bad partition '" + s + "'");
        parts.push_back(std::stoi(tok));
        pos = comma + 1;
        if (comma == s.size()) break;
    }
    return Partition(std::move(parts));
}

GrassmannianShape make_shape(int k, int n) {
    if (n < 2 || k < 1 || k > n - 1)
        throw std::invalid_argument("Grassmannian shape requires 1 <= k <= n-1");
    return GrassmannianShape{k, n};
}

namespace {

// Counts LR fillings of nu/lambda with content mu: cells are visited top row
// to bottom, right to left within a row, which matches the reverse reading
// word, so the ballot condition is enforced as values are placed.
struct LRCounter {
    const Partition& lambda;
    const Partition& mu;
    const Partition& nu;
    std::vector<int> used;                  // per value
    std::vector<std::vector<int>> filling;  // 0 = empty

    long long count = 0;

    void run() {
        used.assign(size_t(mu.length()) + 1, 0);
        filling.assign(nu.parts.size(), {});
        for (int r = 0; r < nu.length(); ++r) filling[r].assign(nu.parts[r], 0);
        rec(0, nu.part(0) - 1);
    }

    void rec(int r, int c) {
        while (r < nu.length() && c < lambda.part(r)) {
            ++r;
            c = nu.part(r) - 1;
        }
        if (r >= nu.length()) {
            ++count;
            return;
        }
        int right = (c + 1 < nu.part(r)) ? filling[r][c + 1] : 0;
        int hi = right ? right : mu.length();
        int above = (r > 0 && c < nu.part(r - 1) && c >= lambda.part(r - 1)) ? filling[r - 1][c] : 0;
        for (int v = above + 1; v <= hi; ++v) {
            if (used[v] >= mu.part(v - 1)) continue;
            if (v > 1 && used[v] >= used[v - 1]) continue;  // ballot
            ++used[v];
            filling[r][c] = v;
            int nr = r, nc = c - 1;
            if (nc < lambda.part(r)) {
                nr = r + 1;
                nc = nu.part(nr) - 1;
            }
            rec(nr, nc);
            filling[r][c] = 0;
            --used[v];
        }
    }
};

bool contains(const Partition& big, const Partition& small) {
    for (int i = 0; i < small.length(); ++i)
        if (small.parts[i] > big.part(i)) return false;
    return true;
}

std::mutex lr_mutex;
std::map<std::tuple<std::vector<int>, std::vector<int>, int>, std::map<Partition, long long>>
    lr_memo;

}  // namespace

long long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
    if (nu.size() != lambda.size() + mu.size()) return 0;
    if (!contains(nu, lambda)) return 0;
    if (mu.parts.empty()) return 1;
    LRCounter counter{lambda, mu, nu, {}, {}, 0};
    counter.run();
    return counter.count;
}

std::map<Partition, long long> lr_expand(const Partition& lambda, const Partition& mu,
                                         int max_rows) {
    {
        std::lock_guard<std::mutex> lock(lr_mutex);
        auto it = lr_memo.find({lambda.parts, mu.parts, max_rows});
        if (it != lr_memo.end()) return it->second;
    }
    std::map<Partition, long long> out;
    int total = lambda.size() + mu.size();
    // Enumerate candidate nu: descending, contains lambda, row 0 bounded by
    // lambda_1 + mu_1 (the first skew row is all 1s in an LR filling).
    std::vector<int> cur;
    std::function<void(int, int, int)> rec = [&](int row, int prev, int remaining) {
        if (remaining == 0) {
            Partition nu{std::vector<int>(cur)};
            if (!contains(nu, lambda)) return;
            long long c = lr_coefficient(lambda, mu, nu);
            if (c) out[nu] = c;
            return;
        }
        if (row >= max_rows) return;
        int lo = std::max(lambda.part(row), (remaining + (max_rows - row) - 1) / (max_rows - row));
        int hi = std::min(prev, remaining);
        if (row == 0) hi = std::min(hi, lambda.part(0) + mu.part(0));
        for (int v = hi; v >= lo && v >= 1; --v) {
            cur.push_back(v);
            rec(row + 1, v, remaining - v);
            cur.pop_back();
        }
    };
    if (total == 0)
        out[Partition{}] = 1;
    else
        rec(0, total, total);
    {
        std::lock_guard<std::mutex> lock(lr_mutex);
        lr_memo[{lambda.parts, mu.parts, max_rows}] = out;
    }
    return out;
}

QuantumClass QuantumClass::unit() {
    QuantumClass c;
    c.terms[{Partition{}, 0}] = 1;
    return c;
}

QuantumClass QuantumClass::schubert(const Partition& p) {
    QuantumClass c;
    c.terms[{p, 0}] = 1;
    return c;
}

long long QuantumClass::coeff(const Partition& p, int q) const {
    auto it = terms.find({p, q});
    return it == terms.end() ? 0 : it->second;
}

std::optional<RimHookReduction> rim_hook_reduce(const Partition& nu,
                                                const GrassmannianShape& shape) {
    int k = shape.k, n = shape.n;
    if (nu.length() > k) return std::nullopt;
    // First-column hook lengths: beta_i = nu_i + k - 1 - i, strictly decreasing.
    std::vector<long> beta(k), res(k);
    long d = 0;
    for (int i = 0; i < k; ++i) {
        beta[i] = nu.part(i) + k - 1 - i;
        res[i] = beta[i] % n;
        d += (beta[i] - res[i]) / n;
    }
    {
        std::vector<long> sorted = res;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    }
    long inv = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (res[i] < res[j]) ++inv;
    std::vector<long> target = res;
    std::sort(target.rbegin(), target.rend());
    std::vector<int> parts(k);
    for (int i = 0; i < k; ++i) parts[i] = int(target[i] - (k - 1 - i));
    RimHookReduction out;
    out.reduced = Partition(std::move(parts));
    out.q = int(d);
    out.sign = ((d * (k - 1) + inv) % 2 == 0) ? 1 : -1;
    return out;
}

QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b,
                             const GrassmannianShape& shape, int q_cap) {
    QuantumClass out;
    for (const auto& [ka, ca] : a.terms) {
        for (const auto& [kb, cb] : b.terms) {
            int q0 = ka.q + kb.q;
            if (q_cap >= 0 && q0 > q_cap) continue;
            auto expansion = lr_expand(ka.p, kb.p, shape.k);
            for (const auto& [nu, c] : expansion) {
                auto red = rim_hook_reduce(nu, shape);
                if (!red) continue;
                int q = q0 + red->q;
                if (q_cap >= 0 && q > q_cap) continue;
                out.terms[{red->reduced, q}] += ca * cb * c * red->sign;
            }
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

int degree_bound(const GrassmannianShape& shape, int s) {
    if (s < 1) throw std::invalid_argument("degree_bound requires s >= 1");
    return (s - 1) * shape.dimension() / shape.n;
}

long long gw_number(const GWQuery& q) {
    for (const auto& c : q.classes)
        if (!c.fits(q.shape.rows(), q.shape.cols()))
            throw std::invalid_argument("class does not fit the k x (n-k) box");
    if (q.degree < 0) return 0;
    int total = 0;
    for (const auto& c : q.classes) total += c.size();
    if (total != q.shape.dimension() + q.shape.n * q.degree) return 0;
    QuantumClass p = QuantumClass::unit();
    for (const auto& c : q.classes)
        p = quantum_product(p, QuantumClass::schubert(c), q.shape, q.degree);
    std::vector<int> full(q.shape.rows(), q.shape.cols());
    return p.coeff(Partition(std::move(full)), q.degree);
}

std::vector<int> schubert_subset(const Partition& lambda, const GrassmannianShape& shape) {
    if (!lambda.fits(shape.rows(), shape.cols()))
        throw std::invalid_argument("class does not fit the k x (n-k) box");
    std::vector<int> out;
    for (int j = 1; j <= shape.k; ++j) out.push_back(shape.n - shape.k + j - lambda.part(j - 1));
    return out;
}

GWOracleRegistry& GWOracleRegistry::instance() {
    static GWOracleRegistry reg;
    return reg;
}

void GWOracleRegistry::register_oracle(Series series, int rank, GWOracleFn fn) {
    // Probe the candidate before accepting it: class-permutation symmetry
    // always; the dimension-constraint vanishing when the series-A grading
    // applies (k(n-k) + nd).
    std::mt19937_64 rng(0x5eedu);
    int n = rank + 1;
    for (int trial = 0; trial < 8; ++trial) {
        int k = 1 + int(rng() % std::max(1, rank));
        int cols = (series == Series::A) ? n - k : k + 1;
        auto rand_part = [&]() {
            std::vector<int> parts;
            int prev = cols;
            int rows = 1 + int(rng() % std::max(1, k));
            for (int i = 0; i < rows; ++i) {
                int v = int(rng() % (prev + 1));
                parts.push_back(v);
                prev = v;
            }
            return Partition(std::move(parts));
        };
        GWOracleQuery q;
        q.parabolic_k = k;
        q.degree = int(rng() % 3);
        int s = 3 + int(rng() % 2);
        for (int i = 0; i < s; ++i) q.classes.push_back(rand_part());
        long long base = fn(q);
        GWOracleQuery shuffled = q;
        std::shuffle(shuffled.classes.begin(), shuffled.classes.end(), rng);
        if (fn(shuffled) != base)
            throw std::invalid_argument("oracle rejected: not symmetric under class permutations");
        if (series == Series::A) {
            int total = 0;
            for (const auto& c : q.classes) total += c.size();
            if (total != k * (n - k) + n * q.degree && base != 0)
                throw std::invalid_argument("oracle rejected: violates the dimension constraint");
        }
    }
    oracles_[{char(series), rank}] = std::move(fn);
}

void GWOracleRegistry::clear(Series series, int rank) { oracles_.erase({char(series), rank}); }

std::optional<long long> GWOracleRegistry::query(Series series, int rank,
                                                 const GWOracleQuery& q) const {
    auto it = oracles_.find({char(series), rank});
    if (it != oracles_.end()) return it->second(q);
    if (series == Series::A) {
        GWQuery gq;
        gq.shape = make_shape(q.parabolic_k, rank + 1);
        gq.degree = q.degree;
        gq.classes = q.classes;
        return gw_number(gq);
    }
    return std::nullopt;
}

}  // namespace stabpoly
