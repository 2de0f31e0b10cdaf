#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace swmh {

/// 64-bit finalizer (splitmix64 style): a bijective avalanche mix.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Number of hash tables l that calibrates the banded collision probability
/// to 0.5 at similarity s_star: round(log 0.5 / log(1 - s_star^r)), at least 1.
std::uint32_t compute_tables(double s_star, std::uint32_t r);

/// Probability that two sets with the given similarity share at least one
/// r-tuple across l tables: 1 - (1 - sim^r)^l.
double collision_probability(double sim, std::uint32_t r, std::uint32_t l);

/// Parameters shared by signature computation and table construction.
struct MiningParams {
    std::uint32_t r = 3;        // MinHash values per tuple
    std::uint32_t tables = 0;   // l; derive() fills it from (s_star, r)
    double s_star = 0.10;       // similarity at which collision prob is 0.5
    std::uint32_t quantization = 1;  // sub-elements per unit weight (Q)
    std::uint64_t seed = 0;
    bool weighted = true;

    /// Params with l derived from (s_star, r); explicit_tables > 0 overrides.
    static MiningParams derive(double s_star, std::uint32_t r,
                               std::uint32_t explicit_tables = 0,
                               std::uint64_t seed = 0, bool weighted = true,
                               std::uint32_t quantization = 1);

    std::uint32_t num_hashes() const { return r * tables; }

    /// Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

/// One element of a weighted multiset. Weights must be strictly positive;
/// zero or negative weights are rejected rather than dropped.
struct WeightedEntry {
    std::uint64_t element;
    double weight;
};

/// The l*r MinHash values of one set, laid out as l consecutive tuples of r.
struct MinHashSignature {
    std::vector<std::uint64_t> values;
    std::uint32_t r = 0;

    std::uint32_t num_tables() const {
        return r == 0 ? 0 : static_cast<std::uint32_t>(values.size()) / r;
    }
    std::span<const std::uint64_t> tuple(std::uint32_t table_index) const {
        return {values.data() + static_cast<std::size_t>(table_index) * r, r};
    }
};

/// Sub-elements an entry expands to under quantization Q: max(1, round(w*Q)).
std::uint32_t replica_count(double weight, std::uint32_t quantization);

/**
 * Computes the l*r MinHash values of a weighted multiset.
 *
 * In weighted mode every entry (e, w) is expanded into replica_count(w, Q)
 * sub-elements (e,1)..(e,k); in unweighted mode each element contributes a
 * single sub-element. Each hash function assigns every sub-element a
 * pseudo-random 64-bit value determined only by (seed, function index,
 * element, replica index), and the signature value is the minimum over all
 * sub-elements. Two multisets therefore agree on one value with probability
 * equal to the Jaccard similarity of their expanded sub-element sets.
 *
 * Entry order does not matter. Throws std::invalid_argument for an empty
 * multiset, a non-positive weight, or a duplicate element id.
 */
MinHashSignature minhash_signature(std::span<const WeightedEntry> multiset,
                                   const MiningParams& params);

/// Deterministic 64-bit key for one r-tuple of a signature, with the table
/// index mixed in. Unequal tuples may collide; hash tables built on these
/// keys must confirm bucket membership by exact tuple comparison.
std::uint64_t tuple_key(const MinHashSignature& sig, std::uint32_t table_index);

/// Fraction of positions where the two signatures agree: an unbiased
/// estimator of the Jaccard similarity of the expanded sets.
double estimate_similarity(const MinHashSignature& a, const MinHashSignature& b);

} // namespace swmh
