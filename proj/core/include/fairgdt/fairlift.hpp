#pragma once

#include <string>
#include <vector>

#include "fairgdt/cart.hpp"

namespace fairgdt {

/// Greedy choice of leaves whose label flip reduces discrimination.
struct GreedySelection {
    std::vector<int> leaves;  // in selection order
    double baseline_disc = 0.0;
    double new_disc = 0.0;  // hard-relabel projection after flipping all selected leaves
    bool feasible = true;   // new_disc reached the threshold
};

struct PlanLeaf {
    int leaf = -1;
    std::vector<double> p_original;
    std::vector<double> p_adjusted;
    double delta_disc = 0.0;
    double delta_acc = 0.0;
};

/// Result of the fair-leaf-resampling pass over a fitted target tree: the
/// selected leaf set with lambda-interpolated sampling probabilities
/// p'(c) = p(c)*(1-lambda) + (1-p(c))*lambda. lambda = 1 is the complete
/// switch and puts all mass on the flipped label. Leaves outside the set
/// keep their original distributions.
struct ResamplingPlan {
    double lambda = 1.0;
    double thr_disc = 0.0;
    double baseline_disc = 0.0;
    double new_disc = 0.0;
    bool feasible = true;
    std::vector<PlanLeaf> leaves;

    const PlanLeaf* find(int leaf) const;
};

/// Ranks candidates (delta_disc pushing disc toward the threshold) by
/// |delta_disc| / delta_acc; zero-cost leaves come first, ordered by
/// |delta_disc| descending, remaining ties by leaf id. Selection stops once
/// the projected disc reaches thr_disc. When the candidates run out first
/// the selection is returned with feasible = false. A negative baseline disc
/// mirrors the group roles so the procedure is sign-symmetric.
GreedySelection greedy_select(const CartTree& y_tree, double thr_disc);

ResamplingPlan build_plan(const CartTree& y_tree, double lambda, double thr_disc = 0.0);

/// Expected statistical disparity of the target when sampled through the
/// plan, computed from leaf counts and the adjusted probabilities (no
/// sampling involved).
double expected_disc(const CartTree& y_tree, const ResamplingPlan& plan);

std::string plan_to_json(const ResamplingPlan& plan);
ResamplingPlan plan_from_json(const std::string& text);

}  // namespace fairgdt
