#pragma once

#include <cstdint>
#include <vector>

#include "bmcm/dataset.hpp"
#include "bmcm/expr.hpp"
#include "bmcm/stats.hpp"

namespace bmcm {

/// A trial is faithful when the instantiated Boolean function reproduces
/// the observed outcome bit.
enum class TrialClass : std::uint8_t { Faithful, Unfaithful };

constexpr TrialClass classify_trial(std::uint8_t f_value, std::uint8_t outcome) {
    return f_value == outcome ? TrialClass::Faithful : TrialClass::Unfaithful;
}

/// Per-slot operator frequencies split by trial class.
struct SlotCounts {
    std::uint64_t faithful_and = 0;
    std::uint64_t faithful_or = 0;
    std::uint64_t unfaithful_and = 0;
    std::uint64_t unfaithful_or = 0;

    std::uint64_t faithful_total() const { return faithful_and + faithful_or; }
    std::uint64_t unfaithful_total() const { return unfaithful_and + unfaithful_or; }
    std::uint64_t and_total() const { return faithful_and + unfaithful_and; }
    std::uint64_t or_total() const { return faithful_or + unfaithful_or; }
    std::uint64_t total() const { return faithful_total() + unfaithful_total(); }

    bool operator==(const SlotCounts&) const = default;
};

struct SlotTally {
    std::vector<SlotCounts> slots;  // index = slot id - 1
    std::uint64_t total_trials = 0;

    void merge(const SlotTally& other);
    bool operator==(const SlotTally&) const = default;
};

enum class SlotChoice : std::uint8_t { And, Or, Inconclusive };

const char* to_string(SlotChoice c);

/// Verdict for one slot: the faithful-side test decides, the
/// unfaithful-side test corroborates when it is significant with the
/// opposite majority operator.
struct SlotDecision {
    int slot = 0;
    SlotChoice choice = SlotChoice::Inconclusive;
    TestResult faithful_test;
    TestResult unfaithful_test;
    bool corroborated = false;
};

/// Evaluates every one of the 2^k operator assignments on every retained
/// row (rows classified null are skipped when exclude_null is set) and
/// tallies each slot's (class, operator) cell once per trial. The result is
/// a pure function of the inputs, independent of threads.
SlotTally run_exhaustive(const Dataset& dataset, const ModelTemplate& tmpl,
                         bool exclude_null, unsigned threads = 1);

/// Draws trials_per_row assignments per retained row, each slot an
/// independent fair coin from a stream derived from (seed, row index,
/// trial index). Bit-identical for a fixed seed at any thread count.
SlotTally run_sampled(const Dataset& dataset, const ModelTemplate& tmpl,
                      std::uint64_t trials_per_row, std::uint64_t seed, bool exclude_null,
                      unsigned threads = 1);

/// Per-slot operator decisions at significance level alpha. A slot with no
/// faithful trials throws EngineError. A slot whose unfaithful side is
/// empty reports p = 1 there (nothing to corroborate with).
std::vector<SlotDecision> decide_operators(const SlotTally& tally, double alpha);

}  // namespace bmcm
