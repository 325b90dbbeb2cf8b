#pragma once

// Phase-structured bifurcation search shared by the discrete and
// semi-continuous optimizers.
//
// A cursor simulates a decision procedure at an unknown delta inside an open
// interval (lo, hi). Each comparison "v <= delta" is decided outright when v
// lies outside (lo, hi); otherwise the cursor reports a split and the search
// follows both outcomes. After each phase the collected split values are
// resolved with the concrete decision procedure, and the one leaf whose
// interval survives becomes the root of the next phase.
//
// Cursor requirements (copyable):
//   Advance advance(double lo, double hi);
//   void resolve(bool within);   // outcome of the pending split comparison

#include "dfds/config.hpp"
#include "dfds/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dfds::detail {

enum class StepKind { Known, Split, Succeeded, Failed };

struct Advance {
    StepKind kind = StepKind::Known;
    double value = 0.0; ///< split value when kind == Split
};

/// Branch length after the last bifurcation: ceil((m+n) / sqrt(L)).
inline std::size_t branch_step_limit(std::size_t size_sum, std::size_t L)
{
    const double s = std::ceil(static_cast<double>(size_sum) /
                               std::sqrt(static_cast<double>(std::max<std::size_t>(L, 1))));
    return std::max<std::size_t>(1, static_cast<std::size_t>(s));
}

struct NoObserver {
    template <class Cursor>
    void operator()(Cursor&, double, double) const
    {
    }
};

/// Returns the optimum. `decide(v)` must be the concrete monotone decision at
/// squared value v, and the optimum must lie in (interval.alpha_sq,
/// interval.beta_sq]. `observe(cursor, lo, hi)` sees every state reached and may
/// update bookkeeping inside the cursor.
template <class Cursor, class Decide, class Observer = NoObserver>
double bifurcation_run(Cursor root, HalfOpenInterval interval, std::size_t node_budget,
                       std::size_t branch_steps, Decide&& decide, SearchStats* stats,
                       std::size_t max_bifurcations, Observer&& observe = {})
{
    struct Branch {
        Cursor cursor;
        double lo;
        double hi;
        std::size_t known;
    };
    struct Leaf {
        double lo;
        double hi;
        StepKind state; // Known means paused
        std::size_t branch;
    };

    double lo = interval.alpha_sq;
    double hi = interval.beta_sq;
    std::size_t total_splits = 0;
    node_budget = std::max<std::size_t>(node_budget, 1);

    while (true) {
        if (stats)
            ++stats->phases;
        std::vector<Branch> stack{{root, lo, hi, 0}};
        std::vector<Branch> paused;
        std::vector<Leaf> leaves;
        std::vector<double> splits;
        std::size_t nodes = 0;

        while (!stack.empty()) {
            Branch br = std::move(stack.back());
            stack.pop_back();
            while (true) {
                if (nodes >= node_budget || br.known > branch_steps) {
                    leaves.push_back({br.lo, br.hi, StepKind::Known, paused.size()});
                    paused.push_back(std::move(br));
                    break;
                }
                ++nodes;
                const Advance step = br.cursor.advance(br.lo, br.hi);
                if (step.kind == StepKind::Known) {
                    ++br.known;
                    observe(br.cursor, br.lo, br.hi);
                    continue;
                }
                if (step.kind == StepKind::Succeeded || step.kind == StepKind::Failed) {
                    leaves.push_back({br.lo, br.hi, step.kind, 0});
                    break;
                }
                splits.push_back(step.value);
                Branch up = br;
                up.cursor.resolve(true);
                up.lo = step.value;
                up.known = 0;
                observe(up.cursor, up.lo, up.hi);
                stack.push_back(std::move(up));
                br.cursor.resolve(false);
                br.hi = step.value;
                br.known = 0;
                observe(br.cursor, br.lo, br.hi);
            }
        }
        if (stats)
            stats->probes += nodes;

        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
        total_splits += splits.size();
        if (stats)
            stats->bifurcations += splits.size();
        if (max_bifurcations != 0 && total_splits > max_bifurcations)
            throw RestartNeeded("bifurcation search saw more split values than allowed");

        std::size_t first_yes = 0;
        std::size_t count = splits.size();
        while (count > 0) {
            const std::size_t half = count / 2;
            if (stats)
                ++stats->decisions;
            if (decide(splits[first_yes + half])) {
                count = half;
            } else {
                first_yes += half + 1;
                count -= half + 1;
            }
        }
        const double new_lo = first_yes > 0 ? splits[first_yes - 1] : lo;
        const double new_hi = first_yes < splits.size() ? splits[first_yes] : hi;

        const Leaf* chosen = nullptr;
        for (const Leaf& leaf : leaves) {
            if (leaf.lo <= new_lo && new_hi <= leaf.hi) {
                chosen = &leaf;
                break;
            }
        }
        if (chosen == nullptr)
            throw std::logic_error("bifurcation search: no leaf covers the resolved interval");
        if (chosen->state == StepKind::Failed) {
            if (!(new_hi < kInf))
                throw std::logic_error("bifurcation search: optimum is not inside the interval");
            return new_hi;
        }
        if (chosen->state == StepKind::Succeeded)
            throw std::logic_error("bifurcation search: decision succeeded below the optimum");
        root = std::move(paused[chosen->branch].cursor);
        lo = new_lo;
        hi = new_hi;
    }
}

} // namespace dfds::detail
