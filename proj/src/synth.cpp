#include "nocurl/synth.hpp"

#include "nocurl/dag_space.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nocurl {

const char* scheme_name(Scheme s) { return s == Scheme::er ? "er" : "sf"; }

const char* noise_name(Noise n) {
    switch (n) {
        case Noise::gaussian: return "gaussian";
        case Noise::gumbel: return "gumbel";
        default: return "none";
    }
}

bool scheme_from_name(const std::string& s, Scheme& out) {
    if (s == "er") out = Scheme::er;
    else if (s == "sf") out = Scheme::sf;
    else return false;
    return true;
}

bool noise_from_name(const std::string& s, Noise& out) {
    if (s == "gaussian") out = Noise::gaussian;
    else if (s == "gumbel") out = Noise::gumbel;
    else if (s == "none") out = Noise::none;
    else return false;
    return true;
}

namespace {

void check_spec(const GraphSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("graph spec: need at least two vertices");
    if (!(spec.k >= 1.0)) throw std::invalid_argument("graph spec: k must be at least 1");
}

// Fisher-Yates; position r of the result is the vertex at rank r.
std::vector<Index> random_order(Rng& rng, Index d) {
    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index i = d - 1; i > 0; --i) {
        auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    return order;
}

}  // namespace

Matrix gen_er(const GraphSpec& spec) {
    check_spec(spec);
    const Index d = spec.d;
    if (!(2.0 * spec.k <= static_cast<double>(d - 1)))
        throw std::invalid_argument("gen_er: need 2k <= d-1 so the edge probability is at most 1");

    Rng rng(spec.seed);
    std::vector<Index> order = random_order(rng, d);
    const double prob = 2.0 * spec.k / static_cast<double>(d - 1);

    Matrix b = Matrix::Zero(d, d);
    for (Index r = 0; r < d; ++r)
        for (Index s = r + 1; s < d; ++s)
            if (rng.uniform() < prob)
                b(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(s)]) = 1.0;
    return b;
}

Matrix gen_sf(const GraphSpec& spec) {
    check_spec(spec);
    const Index d = spec.d;
    const auto m = static_cast<Index>(std::llround(spec.k));
    if (m < 1 || m >= d)
        throw std::invalid_argument("gen_sf: attachment count must satisfy 1 <= round(k) < d");

    Rng rng(spec.seed);
    Matrix b = Matrix::Zero(d, d);
    std::vector<double> degree(static_cast<std::size_t>(d), 0.0);

    // Complete seed block; later vertices point at earlier ones throughout.
    for (Index j = 1; j < m; ++j)
        for (Index i = 0; i < j; ++i) {
            b(j, i) = 1.0;
            degree[static_cast<std::size_t>(i)] += 1.0;
            degree[static_cast<std::size_t>(j)] += 1.0;
        }

    std::vector<double> weight;
    for (Index v = m; v < d; ++v) {
        weight.assign(degree.begin(), degree.begin() + v);
        for (Index pick = 0; pick < m; ++pick) {
            double total = std::accumulate(weight.begin(), weight.end(), 0.0);
            Index chosen;
            if (total > 0.0) {
                double r = rng.uniform(0.0, total);
                Index u = 0;
                while (u + 1 < v && r >= weight[static_cast<std::size_t>(u)])
                    r -= weight[static_cast<std::size_t>(u++)];
                chosen = u;
                // Accumulated rounding can run the walk onto an entry that
                // was already picked; retreat to the last open candidate.
                while (weight[static_cast<std::size_t>(chosen)] == 0.0 && chosen > 0) --chosen;
            } else {
                // All remaining candidates have degree zero (single seed
                // vertex, or everything already picked): fall back to uniform.
                std::vector<Index> open;
                for (Index u = 0; u < v; ++u)
                    if (b(v, u) == 0.0) open.push_back(u);
                chosen = open[static_cast<std::size_t>(rng.below(open.size()))];
            }
            b(v, chosen) = 1.0;
            weight[static_cast<std::size_t>(chosen)] = 0.0;  // without replacement
            degree[static_cast<std::size_t>(chosen)] += 1.0;
        }
        degree[static_cast<std::size_t>(v)] += static_cast<double>(m);
    }
    return b;
}

Matrix assign_weights(const Matrix& b, Rng& rng) {
    if (b.rows() != b.cols())
        throw std::invalid_argument("assign_weights: pattern must be square");
    if (!is_dag(b)) throw std::invalid_argument("assign_weights: pattern must be acyclic");

    Matrix w = Matrix::Zero(b.rows(), b.cols());
    for (Index i = 0; i < b.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            if (b(i, j) != 0.0) {
                double sign = rng.below(2) == 0 ? 1.0 : -1.0;
                w(i, j) = sign * rng.uniform(0.5, 2.0);
            }
    return w;
}

Dataset sample_linear_sem(const Matrix& a0, Index n, Noise noise, Rng& rng) {
    if (a0.rows() != a0.cols())
        throw std::invalid_argument("sample_linear_sem: coefficient matrix must be square");
    if (n < 1) throw std::invalid_argument("sample_linear_sem: need at least one sample");
    TopoSortResult topo = topological_sort(a0);
    if (!topo.acyclic)
        throw std::invalid_argument("sample_linear_sem: coefficient matrix must be acyclic");

    const Index d = a0.rows();
    Matrix z = Matrix::Zero(n, d);
    if (noise == Noise::gaussian) {
        for (Index j = 0; j < d; ++j) z.col(j) = rng.draw_gaussian(n, 0.0, 1.0);
    } else if (noise == Noise::gumbel) {
        for (Index j = 0; j < d; ++j) z.col(j) = rng.draw_gumbel(n, 0.0, 1.0);
    }

    Matrix x = Matrix::Zero(n, d);
    for (Index v : topo.order) x.col(v) = x * a0.col(v) + z.col(v);
    return Dataset(std::move(x));
}

}  // namespace nocurl
