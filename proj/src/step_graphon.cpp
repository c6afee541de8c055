#include "wlg/step_graphon.hpp"

#include "wlg/error.hpp"

#include <json.hpp>

#include <algorithm>

namespace wlg {

using nlohmann::json;

StepGraphon::StepGraphon(std::vector<Rational> masses,
                         std::vector<std::vector<Rational>> weights)
    : masses_(std::move(masses)), weights_(std::move(weights)) {
    const int n = static_cast<int>(masses_.size());
    require(n >= 1, "EmptyGraph", "a step graphon needs at least one vertex");
    Rational total(0);
    for (const Rational& m : masses_) {
        require(m > Rational(0), "ZeroMass", "vertex masses must be strictly positive");
        total += m;
    }
    require(total == Rational(1), "MassSumNotOne",
            "vertex masses must sum to 1, got " + total.str());
    require(static_cast<int>(weights_.size()) == n, "MalformedDocument",
            "weight matrix must be square of the mass count");
    for (const auto& row : weights_)
        require(static_cast<int>(row.size()) == n, "MalformedDocument",
                "weight matrix must be square of the mass count");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Rational& w = weights_[x][y];
            require(w >= Rational(0) && w <= Rational(1), "WeightOutOfRange",
                    "weight at (" + std::to_string(x) + "," + std::to_string(y) +
                        ") is " + w.str());
            require(w == weights_[y][x], "AsymmetricWeights",
                    "weights must be symmetric, mismatch at (" + std::to_string(x) + "," +
                        std::to_string(y) + ")");
        }
}

bool StepGraphon::is_zero_one() const {
    for (const auto& row : weights_)
        for (const Rational& w : row)
            if (!w.is_zero() && w != Rational(1)) return false;
    return true;
}

bool StepGraphon::is_loop_free() const {
    for (int x = 0; x < size(); ++x)
        if (!weights_[x][x].is_zero()) return false;
    return true;
}

bool StepGraphon::has_uniform_masses() const {
    Rational expected(1, size());
    return std::all_of(masses_.begin(), masses_.end(),
                       [&](const Rational& m) { return m == expected; });
}

StepGraphon StepGraphon::permuted(const std::vector<int>& perm) const {
    const int n = size();
    require(static_cast<int>(perm.size()) == n, "BadPermutation", "permuted: size mismatch");
    std::vector<Rational> masses(n, Rational(0));
    std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(n, Rational(0)));
    for (int x = 0; x < n; ++x) {
        masses[perm[x]] = masses_[x];
        for (int y = 0; y < n; ++y) weights[perm[x]][perm[y]] = weights_[x][y];
    }
    return StepGraphon(std::move(masses), std::move(weights));
}

std::string StepGraphon::to_json() const {
    json j;
    json masses = json::array();
    for (const Rational& m : masses_) masses.push_back(m.str());
    json weights = json::array();
    for (const auto& row : weights_) {
        json r = json::array();
        for (const Rational& w : row) r.push_back(w.str());
        weights.push_back(r);
    }
    j["masses"] = masses;
    j["weights"] = weights;
    return j.dump();
}

StepGraphon parse_step_graphon(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("MalformedDocument", e.what());
    }
    require(j.is_object() && j.contains("masses") && j.contains("weights") &&
                j["masses"].is_array() && j["weights"].is_array(),
            "MalformedDocument", "expected {\"masses\":[...],\"weights\":[[...]]}");
    const auto to_rational = [](const json& v) {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        fail("MalformedDocument", "rationals must be strings like \"2/3\" or integers");
    };
    std::vector<Rational> masses;
    for (const auto& m : j["masses"]) masses.push_back(to_rational(m));
    std::vector<std::vector<Rational>> weights;
    for (const auto& row : j["weights"]) {
        require(row.is_array(), "MalformedDocument", "weight rows must be arrays");
        std::vector<Rational> r;
        for (const auto& w : row) r.push_back(to_rational(w));
        weights.push_back(std::move(r));
    }
    return StepGraphon(std::move(masses), std::move(weights));
}

StepGraphon graph_to_step_graphon(const MultiGraph& g) {
    const int n = g.vertex_count();
    require(n >= 1, "EmptyGraph", "cannot embed the empty graph");
    require(g.is_simple(), "NotSimple", "graph_to_step_graphon needs a simple graph");
    std::vector<Rational> masses(n, Rational(1, n));
    std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(n, Rational(0)));
    for (const Edge& e : g.edges()) weights[e.u][e.v] = weights[e.v][e.u] = Rational(1);
    return StepGraphon(std::move(masses), std::move(weights));
}

MultiGraph simplify_multigraph(const MultiGraph& g) { return g.simplified(); }

StepGraphon fig1_left() { return graph_to_step_graphon(complete_graph(3)); }

StepGraphon fig1_right() {
    std::vector<Rational> masses(3, Rational(1, 3));
    std::vector<std::vector<Rational>> weights(3, std::vector<Rational>(3, Rational(2, 3)));
    return StepGraphon(std::move(masses), std::move(weights));
}

} // namespace wlg
