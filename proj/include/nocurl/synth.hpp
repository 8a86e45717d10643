#pragma once

#include "nocurl/objectives.hpp"
#include "nocurl/rng.hpp"
#include "nocurl/types.hpp"

namespace nocurl {

enum class Scheme { er, sf };
enum class Noise { gaussian, gumbel, none };

const char* scheme_name(Scheme s);
const char* noise_name(Noise n);
bool scheme_from_name(const std::string& s, Scheme& out);
bool noise_from_name(const std::string& s, Noise& out);

// k is the expected mean degree: both generators aim at about k*d edges.
struct GraphSpec {
    Index d = 2;
    Scheme scheme = Scheme::er;
    double k = 1.0;
    std::uint64_t seed = 0;
};

// Erdos-Renyi DAG: a uniformly random vertex order, then each of the
// d(d-1)/2 order-respecting edges kept independently with probability
// 2k / (d-1), oriented along the order. Requires k >= 1 and 2k <= d-1.
Matrix gen_er(const GraphSpec& spec);

// Scale-free DAG by preferential attachment: round(k) fully interconnected
// seed vertices, then each new vertex picks round(k) distinct existing
// vertices with probability proportional to current total degree and points
// an edge at each of them. Later vertices point at earlier ones, so the
// result is acyclic and hub in-degrees are heavy-tailed.
// Requires 1 <= round(k) < d.
Matrix gen_sf(const GraphSpec& spec);

// Replaces each nonzero of b (scanned row-major) with sign * magnitude,
// sign a fair coin and magnitude uniform on [0.5, 2); two draws per edge,
// sign first.
Matrix assign_weights(const Matrix& b, Rng& rng);

// Linear SEM x_j = sum_i a0(i,j) x_i + z_j sampled in topological order;
// noise is standard Gaussian, standard Gumbel, or zero (Noise::none).
// Noise columns are drawn variable-major in index order (n draws for
// variable 0, then variable 1, ...), independent of the topological order.
// Requires a0 acyclic and n >= 1.
Dataset sample_linear_sem(const Matrix& a0, Index n, Noise noise, Rng& rng);

}  // namespace nocurl
