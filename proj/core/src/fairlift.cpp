#include "fairgdt/fairlift.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "fairgdt/errors.hpp"

namespace fairgdt {

const PlanLeaf* ResamplingPlan::find(int leaf) const {
    for (const PlanLeaf& l : leaves) {
        if (l.leaf == leaf) return &l;
    }
    return nullptr;
}

GreedySelection greedy_select(const CartTree& y_tree, double thr_disc) {
    if (!y_tree.fairness_computed())
        throw InputError("greedy_select: leaf fairness stats have not been computed");

    GreedySelection sel;
    sel.baseline_disc = tree_disc(y_tree);

    // Mirror the group roles when the baseline favors group 1, so the same
    // loop drives |disc| toward the threshold in both directions.
    const double sign = sel.baseline_disc < 0.0 ? -1.0 : 1.0;

    struct Cand {
        int leaf;
        double gain;  // |delta_disc| in the mirrored space
        double cost;  // delta_acc
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < y_tree.fairness.size(); ++i) {
        const double d = sign * y_tree.fairness[i].delta_disc;
        if (d < 0.0) cands.push_back({static_cast<int>(i), -d, y_tree.fairness[i].delta_acc});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        const bool az = a.cost == 0.0, bz = b.cost == 0.0;
        if (az != bz) return az;  // free fairness gains first
        if (az) {
            if (a.gain != b.gain) return a.gain > b.gain;
            return a.leaf < b.leaf;
        }
        const double lhs = a.gain * b.cost, rhs = b.gain * a.cost;
        if (lhs != rhs) return lhs > rhs;
        return a.leaf < b.leaf;
    });

    double d_now = sign * sel.baseline_disc;
    for (const Cand& c : cands) {
        if (d_now <= thr_disc) break;
        sel.leaves.push_back(c.leaf);
        d_now -= c.gain;
    }
    sel.new_disc = sign * d_now;
    sel.feasible = d_now <= thr_disc;
    return sel;
}

ResamplingPlan build_plan(const CartTree& y_tree, double lambda, double thr_disc) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw InputError("build_plan: lambda must lie in [0, 1]");

    GreedySelection sel = greedy_select(y_tree, thr_disc);
    ResamplingPlan plan;
    plan.lambda = lambda;
    plan.thr_disc = thr_disc;
    plan.baseline_disc = sel.baseline_disc;
    plan.new_disc = sel.new_disc;
    plan.feasible = sel.feasible;
    plan.leaves.reserve(sel.leaves.size());
    for (int leaf : sel.leaves) {
        const LeafDistribution& dist = y_tree.leaves[static_cast<std::size_t>(leaf)];
        if (dist.probs.size() != 2)
            throw InputError("build_plan: target tree leaves must be binary");
        const LeafFairnessStats& f = y_tree.fairness[static_cast<std::size_t>(leaf)];
        PlanLeaf pl;
        pl.leaf = leaf;
        pl.p_original = dist.probs;
        pl.p_adjusted.resize(2);
        if (lambda == 1.0) {
            // complete switch: all mass moves to the flipped label
            const std::size_t flipped = static_cast<std::size_t>(1 - f.majority_label);
            pl.p_adjusted[flipped] = 1.0;
            pl.p_adjusted[1 - flipped] = 0.0;
        } else {
            for (std::size_t c = 0; c < 2; ++c) {
                pl.p_adjusted[c] = dist.probs[c] * (1.0 - lambda) + (1.0 - dist.probs[c]) * lambda;
            }
        }
        pl.delta_disc = f.delta_disc;
        pl.delta_acc = f.delta_acc;
        plan.leaves.push_back(std::move(pl));
    }
    return plan;
}

double expected_disc(const CartTree& y_tree, const ResamplingPlan& plan) {
    if (!y_tree.fairness_computed())
        throw InputError("expected_disc: leaf fairness stats have not been computed");
    double disc = 0.0;
    for (std::size_t i = 0; i < y_tree.leaves.size(); ++i) {
        const LeafFairnessStats& f = y_tree.fairness[i];
        const PlanLeaf* pl = plan.find(static_cast<int>(i));
        const double p1 = pl ? pl->p_adjusted[1] : y_tree.leaves[i].probs[1];
        disc += p1 * (static_cast<double>(f.n_s0) / static_cast<double>(y_tree.n_s0_total) -
                      static_cast<double>(f.n_s1) / static_cast<double>(y_tree.n_s1_total));
    }
    return disc;
}

std::string plan_to_json(const ResamplingPlan& plan) {
    nlohmann::json leaves = nlohmann::json::array();
    for (const PlanLeaf& l : plan.leaves) {
        leaves.push_back({{"leaf", l.leaf},
                          {"p_original", l.p_original},
                          {"p_adjusted", l.p_adjusted},
                          {"delta_disc", l.delta_disc},
                          {"delta_acc", l.delta_acc}});
    }
    nlohmann::json j{{"format", 1},
                     {"lambda", plan.lambda},
                     {"thr_disc", plan.thr_disc},
                     {"baseline_disc", plan.baseline_disc},
                     {"new_disc", plan.new_disc},
                     {"feasible", plan.feasible},
                     {"leaves", leaves}};
    return j.dump(2);
}

ResamplingPlan plan_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid plan JSON: ") + e.what());
    }
    if (j.value("format", 0) != 1) throw InputError("unsupported plan format");
    ResamplingPlan plan;
    try {
        plan.lambda = j.at("lambda").get<double>();
        plan.thr_disc = j.at("thr_disc").get<double>();
        plan.baseline_disc = j.at("baseline_disc").get<double>();
        plan.new_disc = j.at("new_disc").get<double>();
        plan.feasible = j.at("feasible").get<bool>();
        for (const auto& jl : j.at("leaves")) {
            PlanLeaf l;
            l.leaf = jl.at("leaf").get<int>();
            l.p_original = jl.at("p_original").get<std::vector<double>>();
            l.p_adjusted = jl.at("p_adjusted").get<std::vector<double>>();
            l.delta_disc = jl.at("delta_disc").get<double>();
            l.delta_acc = jl.at("delta_acc").get<double>();
            plan.leaves.push_back(std::move(l));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid plan JSON: ") + e.what());
    }
    return plan;
}

}  // namespace fairgdt
