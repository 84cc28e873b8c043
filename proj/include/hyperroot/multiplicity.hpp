#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperroot/roots.hpp"

namespace hyperroot {

// Multiplicity table for one algebra: every positive root of height <=
// frontier with its multiplicity, plus explicit zeros for non-root vectors
// that were queried directly.  Persistable as JSON.
struct MultTable {
    std::string gcm_id;  // content hash of the matrix
    IntMatrix matrix;
    long long frontier = 0;
    std::unordered_map<RootVector, Int, RootVectorHash> entries;

    // Serialization; mult values are decimal strings so arbitrary precision
    // survives the round trip.
    std::string to_json() const;
    static MultTable from_json(const std::string& text);  // throws CacheError
};

// $HYPERROOT_CACHE_DIR, or "./cache" when unset.
std::string default_cache_dir();

struct PetersonOptions {
    std::string cache_dir;  // empty: caching disabled
    int threads = 0;        // 0: library default
};

// Shell-parallel Peterson recursion.  Shells (height slices) are computed in
// order; within a shell every candidate vector only reads completed shells,
// so candidates are scored in parallel and merged in a fixed order.  The
// result is bit-identical for any thread count.
//
// Candidates at height h are root(h-1) + alpha_i: every positive root of
// height >= 2 has a predecessor root one step down (any nonzero element of
// its root space is a sum of bracket monomials [e_i, y] with y in the space
// of beta - alpha_i, so some beta - alpha_i is a root).
class PetersonEngine {
  public:
    explicit PetersonEngine(const GCM& g, PetersonOptions opt = {});

    const GCM& gcm() const { return g_; }
    const MultTable& table() const { return table_; }
    // Non-empty when a cache file existed but could not be used.
    const std::string& cache_warning() const { return cache_warning_; }

    // Compute (or load) all shells of height <= H.
    void extend_to(long long H);

    // Multiplicity of an arbitrary Q+ vector; extends the table as needed.
    // Non-roots return 0 and are recorded as explicit zeros.
    Int mult(const RootVector& alpha);

    // Positive roots of one height, sorted lexicographically.
    const std::vector<RootVector>& roots_of_height(long long h) const;

  private:
    void compute_shell(long long h);
    void add_support_for_height(long long h);
    void load_cache();
    void flush_cache() const;
    Rat divisor_tail(const RootVector& beta, long long gcd) const;  // sum_{k>=2} mult(beta/k)/k

    GCM g_;
    BilinearForm form_;
    PetersonOptions opt_;
    MultTable table_;
    std::string cache_warning_;
    long long computed_ = 0;  // heights <= computed_ are in memory structures
    std::vector<std::vector<RootVector>> roots_by_height_;          // [h] sorted lex
    std::vector<std::vector<std::pair<RootVector, Rat>>> support_;  // [h] c-support, sorted
    std::unordered_map<RootVector, Rat, RootVectorHash> c_;         // lookup for support_
};

// Serial reference engine: evaluates the recursion at EVERY lattice vector
// of each shell (no candidate filtering, no parallelism, no cache).  Slower
// but structurally independent; used to cross-check PetersonEngine.
class PetersonReference {
  public:
    explicit PetersonReference(const GCM& g);

    void extend_to(long long H);
    Int mult(const RootVector& alpha);
    const std::unordered_map<RootVector, Int, RootVectorHash>& mults() const { return mult_; }

  private:
    GCM g_;
    BilinearForm form_;
    long long computed_ = 0;
    std::unordered_map<RootVector, Int, RootVectorHash> mult_;  // roots only
    std::unordered_map<RootVector, Rat, RootVectorHash> c_;     // c-support
    std::vector<std::vector<std::pair<RootVector, Rat>>> support_;
};

// Convenience wrapper; passes through to a throwaway engine.
Int mult_peterson(const GCM& g, const RootVector& alpha);

// Closed-form evaluation via the Moebius-weighted sum over multi-indices
// (n) with sum n_i s_i = lambda, for lambda running over the divisors of
// alpha.  Exact big-integer factorials; integrality of the result asserted.
Int mult_berman_moody(const GCM& g, const RootVector& alpha);

// rank^|height(alpha)|, the elementary enveloping-algebra bound.
Int coarse_bound(const GCM& g, const RootVector& alpha);

// Truncated elements of the group ring Z[[e(-alpha)]]: finitely many terms
// c * e(-beta) with beta in Q+ (or zero) of height <= bound.
class LatticeSeries {
  public:
    LatticeSeries(int rank, long long bound);
    static LatticeSeries one(int rank, long long bound);

    long long bound() const { return bound_; }
    const std::map<RootVector, Int>& terms() const { return terms_; }
    Int coefficient(const RootVector& beta) const;

    void add_term(const RootVector& beta, const Int& c);
    LatticeSeries operator*(const LatticeSeries& o) const;
    // *= (1 - e(-beta))^m, expanded through the height bound.
    void multiply_binomial(const RootVector& beta, const Int& m);
    bool operator==(const LatticeSeries& o) const { return terms_ == o.terms_; }

  private:
    int rank_;
    long long bound_;
    std::map<RootVector, Int> terms_;  // ordered: deterministic reports
};

struct DenominatorMismatch {
    RootVector at;
    Int product_side;
    Int sum_side;
};

struct DenominatorReport {
    long long height_bound = 0;
    std::size_t product_terms = 0;
    std::size_t sum_terms = 0;
    std::vector<DenominatorMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Expands prod_{alpha in Delta+, ht <= H} (1 - e(-alpha))^{mult(alpha)} with
// Peterson multiplicities and compares against sum_w (-1)^{l(w)} e(-s(w))
// term by term through height H.
DenominatorReport verify_denominator_identity(const GCM& g, long long H);

}  // namespace hyperroot
