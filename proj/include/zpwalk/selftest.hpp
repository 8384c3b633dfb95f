#ifndef ZPWALK_SELFTEST_HPP
#define ZPWALK_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zpwalk/dynamics.hpp"
#include "zpwalk/hypergraph.hpp"

namespace zpwalk {

struct SelftestConfig {
    /// Every good hypergraph up to these sizes; max_n = 0 skips the family.
    std::size_t family_max_n = 6;
    std::size_t family_max_m = 2;
    /// Seeded random good hypergraphs on top of the family.
    std::size_t random_graphs = 0;
    std::size_t random_max_n = 10;
    std::size_t random_max_m = 4;
    std::vector<std::uint64_t> primes{3};
    /// Sampled (w1, w2) pairs per hypergraph and prime.
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    /// Up to this many states (p^n) every pair is checked.
    std::uint64_t exhaustive_states = 2187;
    /// Recurrence is checked up to this many states.
    std::uint64_t recurrence_states = 2187;
    /// Beyond this many states, sampled pairs are decided by checkable
    /// certificates instead of search; non-good extras are skipped.
    std::uint64_t max_space = 100'000;
    /// Schedules synthesized per hypergraph and prime.
    std::size_t schedules = 50;
    std::uint64_t max_states = kDefaultMaxStates;
    /// Further instances. Non-good ones are run with the one-sided filter.
    std::vector<Instance> extra;
};

struct SelftestReport {
    std::size_t graphs = 0;
    std::size_t skipped = 0;
    std::size_t pairs = 0;
    std::size_t reach_agree = 0;
    std::size_t certified = 0;
    std::size_t undetermined = 0;
    std::size_t recur_pairs = 0;
    std::size_t recur_agree = 0;
    /// Pairs with a solvable system but an unreachable target; each one
    /// must have the all-(p-1) target.
    std::size_t solvable_unreachable = 0;
    std::size_t solvable_unreachable_saturated = 0;
    std::size_t schedules = 0;
    std::size_t schedules_verified = 0;
    std::size_t schedules_with_fallback = 0;
    std::size_t incomplete = 0;
    std::size_t nongood_pairs = 0;
    std::size_t nongood_divergences = 0;
    std::size_t mismatch_count = 0;
    /// Instance dumps for the first mismatches.
    std::vector<std::string> mismatches;

    bool passed() const { return mismatch_count == 0; }
};

SelftestReport selftest(const SelftestConfig& config);

std::string format_selftest(const SelftestReport& r);

}  // namespace zpwalk

#endif  // ZPWALK_SELFTEST_HPP
