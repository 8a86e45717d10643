#include "nocurl/bench.hpp"

#include "nocurl/metrics.hpp"
#include "nocurl/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

namespace nocurl {

std::uint64_t variant_tag_hash(const std::string& tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index,
                         const std::string& tag) {
    return master_seed ^ std::uint64_t(trial_index) ^ variant_tag_hash(tag);
}

namespace {

BenchRow run_trial(const BenchConfig& config, const std::string& tag, Index d,
                   int trial) {
    BenchRow row;
    row.variant = tag;
    row.d = d;
    row.scheme = scheme_name(config.scheme);
    row.k = config.k;
    row.noise = noise_name(config.noise);
    row.seed = trial_seed(config.master_seed, trial, tag);
    try {
        GraphSpec spec;
        spec.d = d;
        spec.scheme = config.scheme;
        spec.k = config.k;
        spec.seed = row.seed;
        Matrix pattern = config.scheme == Scheme::er ? gen_er(spec) : gen_sf(spec);
        // One derived stream covers weights and noise so the graph seed and
        // the data seed never collide.
        Rng draw(Rng::mix(row.seed));
        Matrix a0 = assign_weights(pattern, draw);
        Dataset data = sample_linear_sem(a0, config.n, config.noise, draw);

        LearnResult res;
        if (tag == "notears") {
            res = notears_baseline(data, config.h_kind, config.threshold_eps,
                                   config.optim);
        } else {
            std::optional<Variant> v = variant_from_name(tag);
            if (!v) throw std::invalid_argument("bench: unknown variant '" + tag + "'");
            NoCurlConfig learn;
            learn.variant = *v;
            learn.threshold_eps = config.threshold_eps;
            learn.h_kind = config.h_kind;
            learn.optim = config.optim;
            learn.seed = row.seed;
            res = nocurl_run(data, learn);
        }

        ShdReport report = shd(res.a_hat, a0);
        row.shd = report.shd;
        row.extra = report.extra;
        row.missing = report.missing;
        row.reverse = report.reverse;
        // score on the pre-threshold solution: fit quality, which can beat
        // the ground truth, independent of the structure columns above
        row.delta_f = delta_f(res.a_raw, a0, data);
        row.time_seconds = res.wall_time;
        row.final_h = res.final_h;
        row.a_hat = std::move(res.a_hat);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

BenchResult bench_run(const BenchConfig& config) {
    if (config.ds.empty())
        throw std::invalid_argument("bench: need at least one dimension");
    for (Index d : config.ds)
        if (d < 2) throw std::invalid_argument("bench: dimensions must be >= 2");
    if (config.trials < 1)
        throw std::invalid_argument("bench: trials must be >= 1");
    if (config.n < 1)
        throw std::invalid_argument("bench: n must be >= 1");
    if (config.variants.empty())
        throw std::invalid_argument("bench: need at least one variant");
    for (const std::string& tag : config.variants)
        if (tag != "notears" && !variant_from_name(tag))
            throw std::invalid_argument("bench: unknown variant '" + tag + "'");

    struct Task {
        Index d;
        const std::string* tag;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.ds.size() * config.variants.size() * size_t(config.trials));
    for (Index d : config.ds)
        for (const std::string& tag : config.variants)
            for (int t = 0; t < config.trials; ++t) tasks.push_back({d, &tag, t});

    BenchResult result;
    result.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& t = tasks[i];
            BenchRow row = run_trial(config, *t.tag, t.d, t.trial);
            if (!row.error.empty()) failed.store(true);
            // Each worker writes only its own slot, so row order is the task
            // order no matter how the pool schedules.
            result.rows[i] = std::move(row);
        }
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    result.any_failed = failed.load();
    return result;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("bench: formatting failed");
    out.append(buf, ptr);
}

// The error column must not break the row structure.
std::string sanitize_field(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
    MeanSe out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / double(values.size());
    if (values.size() < 2) return out;
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    double sample_std = std::sqrt(sq / double(values.size() - 1));
    out.se = sample_std / std::sqrt(double(values.size()));
    return out;
}

}  // namespace

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
    std::string out =
        "variant,d,scheme,k,noise,seed,shd,extra,missing,reverse,delta_f,"
        "time_seconds,final_h,error\n";
    for (const BenchRow& row : rows) {
        out += row.variant;
        out += ',';
        out += std::to_string(row.d);
        out += ',';
        out += row.scheme;
        out += ',';
        append_double(out, row.k);
        out += ',';
        out += row.noise;
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += std::to_string(row.shd);
        out += ',';
        out += std::to_string(row.extra);
        out += ',';
        out += std::to_string(row.missing);
        out += ',';
        out += std::to_string(row.reverse);
        out += ',';
        append_double(out, row.delta_f);
        out += ',';
        append_double(out, row.time_seconds);
        out += ',';
        append_double(out, row.final_h);
        out += ',';
        out += sanitize_field(row.error);
        out += '\n';
    }
    return out;
}

std::string bench_summary_json(const BenchConfig& config,
                               const std::vector<BenchRow>& rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (Index d : config.ds) {
        for (const std::string& tag : config.variants) {
            std::vector<double> shd_v, extra_v, missing_v, reverse_v, df_v,
                time_v, h_v;
            int failed = 0;
            for (const BenchRow& row : rows) {
                if (row.variant != tag || row.d != d) continue;
                if (!row.error.empty()) {
                    ++failed;
                    continue;
                }
                shd_v.push_back(double(row.shd));
                extra_v.push_back(double(row.extra));
                missing_v.push_back(double(row.missing));
                reverse_v.push_back(double(row.reverse));
                df_v.push_back(row.delta_f);
                time_v.push_back(row.time_seconds);
                h_v.push_back(row.final_h);
            }
            auto stat = [](const std::vector<double>& v) {
                MeanSe ms = mean_se(v);
                return nlohmann::json{{"mean", ms.mean}, {"se", ms.se}};
            };
            cells.push_back({{"variant", tag},
                             {"d", d},
                             {"trials_ok", int(shd_v.size())},
                             {"trials_failed", failed},
                             {"shd", stat(shd_v)},
                             {"extra", stat(extra_v)},
                             {"missing", stat(missing_v)},
                             {"reverse", stat(reverse_v)},
                             {"delta_f", stat(df_v)},
                             {"time_seconds", stat(time_v)},
                             {"final_h", stat(h_v)}});
        }
    }
    nlohmann::json summary = {{"format_version", 1},
                              {"scheme", scheme_name(config.scheme)},
                              {"k", config.k},
                              {"noise", noise_name(config.noise)},
                              {"n", config.n},
                              {"trials", config.trials},
                              {"master_seed", config.master_seed},
                              {"threshold_eps", config.threshold_eps},
                              {"cells", cells}};
    return summary.dump(2) + "\n";
}

}  // namespace nocurl
