#pragma once

#include "nocurl/nocurl.hpp"
#include "nocurl/synth.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nocurl {

// One benchmark cell is (variant, d, scheme, k, noise); each cell runs
// `trials` independent draws. Variant tags are the Variant names plus
// "notears" for the augmented-Lagrangian baseline.
struct BenchConfig {
    std::vector<Index> ds;
    Scheme scheme = Scheme::er;
    double k = 2.0;
    Noise noise = Noise::gaussian;
    Index n = 1000;
    int trials = 10;
    std::vector<std::string> variants;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    double threshold_eps = 0.3;
    HKind h_kind = HKind::poly;
    OptimOptions optim;
};

struct BenchRow {
    std::string variant;
    Index d = 0;
    std::string scheme;
    double k = 0.0;
    std::string noise;
    std::uint64_t seed = 0;  // the derived per-trial seed
    int shd = 0;
    int extra = 0;
    int missing = 0;
    int reverse = 0;
    double delta_f = 0.0;
    double time_seconds = 0.0;
    double final_h = 0.0;
    std::string error;  // empty on success

    Matrix a_hat;  // kept for downstream verification, not serialized
};

struct BenchResult {
    std::vector<BenchRow> rows;
    bool any_failed = false;
};

// FNV-1a of the variant tag; kept stable so a seed never depends on the
// position of the variant in the list.
std::uint64_t variant_tag_hash(const std::string& tag);

// Per-trial seed: master_seed ^ trial_index ^ variant_tag_hash(tag). Adding
// a variant or reordering the list never reshuffles other variants' data.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index,
                         const std::string& tag);

// Runs all cells; trials run on `jobs` worker threads, results land in a
// fixed order independent of scheduling. A failing trial fills `error` and
// flips any_failed instead of aborting the sweep.
BenchResult bench_run(const BenchConfig& config);

// Deterministic per-run CSV: header plus one row per trial, columns
// variant,d,scheme,k,noise,seed,shd,extra,missing,reverse,delta_f,
// time_seconds,final_h,error.
std::string bench_rows_to_csv(const std::vector<BenchRow>& rows);

// Per-cell means and standard errors (sample std / sqrt(trials)) as JSON.
std::string bench_summary_json(const BenchConfig& config,
                               const std::vector<BenchRow>& rows);

}  // namespace nocurl
