#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabpoly/root_system.hpp"

namespace stabpoly {

// Weakly decreasing nonnegative parts; trailing zeros dropped.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int size() const;                     // |lambda|
    int length() const { return int(parts.size()); }
    int part(int i) const { return i < length() ? parts[i] : 0; }
    bool fits(int rows, int cols) const;
    Partition complement(int rows, int cols) const;  // rotate in the box
    std::string str() const;                         // "2,1" ("-" for empty)

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
};

Partition parse_partition(const std::string& s);

struct GrassmannianShape {
    int k = 0;
    int n = 0;

    int rows() const { return k; }
    int cols() const { return n - k; }
    int dimension() const { return k * (n - k); }
};

GrassmannianShape make_shape(int k, int n);  // validates 1 <= k <= n-1

// Classical Littlewood-Richardson coefficient c^nu_{lambda,mu}; 0 on size
// mismatch or when lambda is not contained in nu.
long long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu);

// Expansion of s_lambda * s_mu over partitions with at most max_rows rows.
std::map<Partition, long long> lr_expand(const Partition& lambda, const Partition& mu,
                                         int max_rows);

struct QKey {
    Partition p;
    int q = 0;
    bool operator<(const QKey& o) const {
        if (q != o.q) return q < o.q;
        return p < o.p;
    }
    bool operator==(const QKey& o) const { return q == o.q && p == o.p; }
};

struct QuantumClass {
    std::map<QKey, long long> terms;

    static QuantumClass unit();
    static QuantumClass schubert(const Partition& p);
    long long coeff(const Partition& p, int q) const;
    bool operator==(const QuantumClass& o) const { return terms == o.terms; }
};

// Removal of n-rim-hooks via first-column hook residues. Returns the box
// partition, the q-degree, and the sign, or nullopt when the class dies.
struct RimHookReduction {
    Partition reduced;
    int q = 0;
    int sign = 1;
};
std::optional<RimHookReduction> rim_hook_reduce(const Partition& nu, const GrassmannianShape& shape);

// Small quantum cohomology product on Gr(k, n); terms with q-degree above
// q_cap are pruned (q_cap < 0 means no cap).
QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b,
                             const GrassmannianShape& shape, int q_cap = -1);

struct GWQuery {
    GrassmannianShape shape;
    int degree = 0;
    std::vector<Partition> classes;
};

// Largest d that can carry a nonzero invariant with s classes.
int degree_bound(const GrassmannianShape& shape, int s);

// Count of degree-d maps P^1 -> Gr(k,n) meeting generic translates of the
// Schubert varieties of the classes at the marked points.
long long gw_number(const GWQuery& q);

// Column positions of the Schubert variety: i_j = n - k + j - lambda_j.
std::vector<int> schubert_subset(const Partition& lambda, const GrassmannianShape& shape);

// Oracle extension point for other series. The built-in engine answers
// series A; anything else is Unsupported unless a registered oracle covers it.
struct GWOracleQuery {
    int parabolic_k = 0;
    int degree = 0;
    std::vector<Partition> classes;
};
using GWOracleFn = std::function<long long(const GWOracleQuery&)>;

class GWOracleRegistry {
  public:
    static GWOracleRegistry& instance();

    // Runs constraint self-tests (dimension vanishing, class-permutation
    // symmetry) against the candidate before accepting it.
    void register_oracle(Series series, int rank, GWOracleFn fn);
    void clear(Series series, int rank);

    // nullopt = unsupported.
    std::optional<long long> query(Series series, int rank, const GWOracleQuery& q) const;

  private:
    std::map<std::pair<char, int>, GWOracleFn> oracles_;
};

}  // namespace stabpoly
