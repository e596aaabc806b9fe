#ifndef BENTFORGE_SWEEP_HPP_
#define BENTFORGE_SWEEP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bentforge/field.hpp"
#include "bentforge/gf4.hpp"

namespace bentforge {

/* Frobenius orbits {a, a^2, a^4, ...} of GF(2^m1)^*, each named by the
   smallest exponent of the subfield generator it contains. Trace-defined
   sums are constant on these classes, so sweeps only visit representatives. */
struct CyclotomicClass {
    uint64_t rep_exponent;
    int size;
};
std::vector<CyclotomicClass> cyclotomic_representatives(const FieldContext& ctx, int m1);

enum class SweepMode { Conjecture2, BentAgreement, ClosedVsBrute };

std::string to_string(SweepMode mode);
SweepMode sweep_mode_from_string(const std::string& s);

/* A sweep campaign over (a, b, omega). The same config always expands to the
   same ordered task list, and the emitted record stream is byte-identical
   regardless of worker count or interruption/resume. */
struct SweepConfig {
    int m0 = 12;
    SweepMode mode = SweepMode::Conjecture2;

    enum class ASelection { AllClasses, ExplicitList, IndexRange };
    ASelection a_selection = ASelection::AllClasses;
    std::vector<uint64_t> a_list;  // exponents of the subfield generator
    uint64_t a_range_begin = 0;
    uint64_t a_range_end = 0;  // half-open

    std::vector<Gf4Element> b_selection = {Gf4Element::one(), Gf4Element::omega(),
                                           Gf4Element::omega2()};

    enum class OmegaSelection { AllNonzero, SubfieldOnly, Sample };
    OmegaSelection omega_selection = OmegaSelection::AllNonzero;
    int sample_permille = 100;  // used by OmegaSelection::Sample
    uint64_t seed = 1;

    int worker_count = 0;     // 0 = hardware concurrency
    uint64_t limit_tasks = 0;  // stop after this many tasks (0 = all); for
                               // interruption tests and budgeted runs
    std::string checkpoint_path = "sweep.checkpoint.ndjson";
    std::string output_path = "sweep.out.ndjson";

    // canonical serialization of the task-defining fields (hashing ignores
    // worker counts, paths and limits, which cannot change results)
    std::string canonical_json() const;
    std::string config_hash() const;
};

struct SweepSummary {
    uint64_t tasks_total = 0;
    uint64_t tasks_completed = 0;
    uint64_t tasks_skipped = 0;   // already present in the checkpoint
    uint64_t records_written = 0;
    uint64_t fits_checked = 0;
    uint64_t inconsistencies = 0;
    uint64_t parseval_failures = 0;
    uint64_t disagreements = 0;  // bent-agreement mode
    uint64_t mismatches = 0;     // closed-vs-brute mode
    uint64_t out_of_hypothesis = 0;
    uint64_t spot_checks = 0;
    uint64_t spot_check_failures = 0;
    bool completed = true;  // false when limit_tasks cut the run short
    double elapsed_seconds = 0;

    bool clean() const {
        return inconsistencies == 0 && parseval_failures == 0 && disagreements == 0 &&
               mismatches == 0 && spot_check_failures == 0;
    }
};

// Runs the campaign, appending records to the checkpoint as tasks complete
// and writing records plus a trailing summary to output_path at the end.
SweepSummary run_sweep(const SweepConfig& config);

// Continues from an existing checkpoint (the task-defining config is embedded
// in its header). Completed tasks are skipped; the final output is
// record-for-record identical to an uninterrupted run. An empty output path
// defaults to the checkpoint path plus ".out".
SweepSummary resume_sweep(const std::string& checkpoint_path, const std::string& output_path = "",
                          int worker_count = 0);

}  // namespace bentforge

#endif  // BENTFORGE_SWEEP_HPP_
