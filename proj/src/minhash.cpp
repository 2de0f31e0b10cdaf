#include "swmh/minhash.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace swmh {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Seed of hash function j: position j of the splitmix64 stream started at
// `seed`, so functions are independent across indices.
inline std::uint64_t function_seed(std::uint64_t seed, std::uint32_t index) {
    return mix64(seed + (static_cast<std::uint64_t>(index) + 1) * kGolden);
}

// Identity of sub-element (element, replica), shared by all hash functions.
inline std::uint64_t sub_element_hash(std::uint64_t element,
                                      std::uint32_t replica) {
    return mix64(mix64(element + kGolden) + replica);
}

} // namespace

std::uint32_t compute_tables(double s_star, std::uint32_t r) {
    if (!(s_star > 0.0 && s_star < 1.0))
        throw std::invalid_argument("s_star must lie in (0,1)");
    if (r == 0) throw std::invalid_argument("r must be at least 1");
    double l = std::log(0.5) / std::log1p(-std::pow(s_star, r));
    auto rounded = std::llround(l);
    if (rounded < 1) return 1;
    if (rounded > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("derived table count overflows");
    return static_cast<std::uint32_t>(rounded);
}

double collision_probability(double sim, std::uint32_t r, std::uint32_t l) {
    return 1.0 - std::pow(1.0 - std::pow(sim, r), l);
}

MiningParams MiningParams::derive(double s_star, std::uint32_t r,
                                  std::uint32_t explicit_tables,
                                  std::uint64_t seed, bool weighted,
                                  std::uint32_t quantization) {
    MiningParams p;
    p.r = r;
    p.s_star = s_star;
    p.tables = explicit_tables > 0 ? explicit_tables : compute_tables(s_star, r);
    p.seed = seed;
    p.weighted = weighted;
    p.quantization = quantization;
    p.validate();
    return p;
}

void MiningParams::validate() const {
    if (r == 0) throw std::invalid_argument("r must be at least 1");
    if (tables == 0) throw std::invalid_argument("table count must be at least 1");
    if (!(s_star > 0.0 && s_star < 1.0))
        throw std::invalid_argument("s_star must lie in (0,1)");
    if (quantization == 0)
        throw std::invalid_argument("quantization must be at least 1");
}

std::uint32_t replica_count(double weight, std::uint32_t quantization) {
    if (!(weight > 0.0))
        throw std::invalid_argument("multiset weights must be positive");
    double k = std::round(weight * static_cast<double>(quantization));
    if (k < 1.0) return 1;
    if (k >= 4294967295.0)
        throw std::invalid_argument("weight * quantization too large");
    return static_cast<std::uint32_t>(k);
}

MinHashSignature minhash_signature(std::span<const WeightedEntry> multiset,
                                   const MiningParams& params) {
    params.validate();
    if (multiset.empty())
        throw std::invalid_argument("cannot sign an empty multiset");

    // Sub-element identities are independent of the hash function, so they
    // are materialized once and each function takes one pass over them.
    std::vector<std::uint64_t> subs;
    {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(multiset.size() * 2);
        for (const WeightedEntry& entry : multiset) {
            if (!seen.insert(entry.element).second)
                throw std::invalid_argument("duplicate element in multiset");
            std::uint32_t k =
                params.weighted ? replica_count(entry.weight, params.quantization)
                                : 1;
            for (std::uint32_t replica = 1; replica <= k; ++replica)
                subs.push_back(sub_element_hash(entry.element, replica));
        }
    }

    const std::uint32_t num_hashes = params.num_hashes();
    MinHashSignature sig;
    sig.r = params.r;
    sig.values.resize(num_hashes);
    for (std::uint32_t j = 0; j < num_hashes; ++j) {
        const std::uint64_t fseed = function_seed(params.seed, j);
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        for (std::uint64_t sub : subs) {
            std::uint64_t v = mix64(fseed ^ sub);
            if (v < best) best = v;
        }
        sig.values[j] = best;
    }
    return sig;
}

std::uint64_t tuple_key(const MinHashSignature& sig, std::uint32_t table_index) {
    if (table_index >= sig.num_tables())
        throw std::out_of_range("table index out of range");
    std::uint64_t h = mix64(kGolden ^ (static_cast<std::uint64_t>(table_index) + 1));
    for (std::uint64_t v : sig.tuple(table_index)) h = mix64(h ^ v);
    return h;
}

double estimate_similarity(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.size() != b.values.size() || a.r != b.r)
        throw std::invalid_argument("signatures built with different params");
    if (a.values.empty())
        throw std::invalid_argument("empty signatures");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] == b.values[i]) ++matches;
    return static_cast<double>(matches) / static_cast<double>(a.values.size());
}

} // namespace swmh
