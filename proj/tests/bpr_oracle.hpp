#pragma once

// Central finite-difference check of the per-triple BPR gradient.

#include <cmath>
#include <random>
#include <vector>

#include "longtail/recommenders/bpr.hpp"

namespace longtail::testing {

/// |analytic - numeric| / max(|analytic|, |numeric|) over the concatenated
/// gradient of all three factor rows, at a random point of width f.
inline double bpr_gradient_rel_error(std::mt19937_64& rng, std::size_t f, double lambda, double h = 1e-5) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> p(f), t(f), n(f);
    for (std::size_t i = 0; i < f; ++i) {
        p[i] = g(rng);
        t[i] = g(rng);
        n[i] = g(rng);
    }
    const auto grad = bpr_triple_gradient(p, t, n, lambda);
    std::vector<double> analytic, numeric;
    for (std::vector<double>* v : {&p, &t, &n}) {
        for (std::size_t i = 0; i < f; ++i) {
            const double saved = (*v)[i];
            (*v)[i] = saved + h;
            const double up = bpr_triple_objective(p, t, n, lambda);
            (*v)[i] = saved - h;
            const double down = bpr_triple_objective(p, t, n, lambda);
            (*v)[i] = saved;
            numeric.push_back((up - down) / (2.0 * h));
        }
    }
    for (const auto* part : {&grad.playlist, &grad.positive, &grad.negative}) {
        analytic.insert(analytic.end(), part->begin(), part->end());
    }
    double diff = 0.0, na = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
        na += analytic[i] * analytic[i];
        nn += numeric[i] * numeric[i];
    }
    return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), 1e-300});
}

}  // namespace longtail::testing
