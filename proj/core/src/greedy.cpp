#include "leadersel/greedy.hpp"

#include <limits>
#include <queue>

namespace leadersel::detail {

namespace {

struct Candidate {
    double gain;
    double value_after; // objective value of S + node when gain was computed
    int node;
    int round;
};

// Max-heap on gain, ties resolved toward the lowest node id so that lazy
// evaluation pops candidates in the same order naive scanning would visit
// equal maxima.
struct CandidateOrder {
    bool operator()(const Candidate& a, const Candidate& b) const {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.node > b.node;
    }
};

bool stop_reached(const GreedyOptions& options, const LeaderSet& picks,
                  double value) {
    if (options.stop_value && value <= *options.stop_value) return true;
    if (options.stop_predicate && options.stop_predicate(picks, value)) return true;
    return false;
}

} // namespace

GreedyOutcome greedy_minimize(int n,
                              const std::function<double(const LeaderSet&)>& f,
                              const GreedyOptions& options) {
    GreedyOutcome out;
    if (options.max_picks < 1) return out;

    // First pick: best singleton, scanning ascending ids so exact ties keep
    // the lowest id.
    int first = -1;
    double first_value = std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
        const double value = f(LeaderSet({v}));
        if (value < first_value) {
            first_value = value;
            first = v;
        }
    }
    out.picks.add(first);
    out.objective_trace.push_back(first_value);
    double current = first_value;
    if (stop_reached(options, out.picks, current)) {
        out.target_met = true;
        return out;
    }

    if (options.mode == GreedyMode::naive) {
        while (out.picks.size() < options.max_picks && out.picks.size() < n) {
            double best_gain = -std::numeric_limits<double>::infinity();
            double best_value = 0.0;
            int best_node = -1;
            for (int v = 0; v < n; ++v) {
                if (out.picks.contains(v)) continue;
                const double value = f(out.picks.with(v));
                const double gain = current - value;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_value = value;
                    best_node = v;
                }
            }
            if (best_node < 0 || best_gain <= options.gain_floor) {
                out.terminated_early = true;
                break;
            }
            out.picks.add(best_node);
            out.objective_trace.push_back(best_value);
            current = best_value;
            if (stop_reached(options, out.picks, current)) {
                out.target_met = true;
                break;
            }
        }
        return out;
    }

    // Lazy mode: stale gains are upper bounds under supermodularity, so a
    // candidate whose refreshed gain still tops the heap is the true argmax.
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
    for (int v = 0; v < n; ++v) {
        if (v != first)
            heap.push({std::numeric_limits<double>::infinity(), 0.0, v, 0});
    }

    int round = 1;
    while (out.picks.size() < options.max_picks && !heap.empty()) {
        Candidate chosen{};
        bool have_chosen = false;
        while (!heap.empty()) {
            Candidate top = heap.top();
            if (top.round == round) {
                heap.pop();
                chosen = top;
                have_chosen = true;
                break;
            }
            heap.pop();
            top.value_after = f(out.picks.with(top.node));
            top.gain = current - top.value_after;
            top.round = round;
            heap.push(top);
        }
        if (!have_chosen || chosen.gain <= options.gain_floor) {
            out.terminated_early = true;
            break;
        }
        out.picks.add(chosen.node);
        out.objective_trace.push_back(chosen.value_after);
        current = chosen.value_after;
        ++round;
        if (stop_reached(options, out.picks, current)) {
            out.target_met = true;
            break;
        }
    }
    return out;
}

} // namespace leadersel::detail
