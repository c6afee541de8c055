#include "wlg/operators.hpp"

#include "wlg/error.hpp"

#include <algorithm>
#include <cmath>

namespace wlg {

namespace {

std::size_t checked_power(int n, int k) {
    require(n >= 1, "EmptyGraph", "tensors need a nonempty ground set");
    require(k >= 0, "ShapeMismatch", "negative arity");
    long double estimate = std::pow(static_cast<long double>(n), k);
    require(estimate <= 1e9L, "SizeLimitExceeded",
            "tensor of size " + std::to_string(n) + "^" + std::to_string(k) + " too large");
    std::size_t size = 1;
    for (int i = 0; i < k; ++i) size *= static_cast<std::size_t>(n);
    return size;
}

// Iterates over all assignments [count] -> [n] as a mixed-radix counter.
struct Assignment {
    std::vector<int> digits;
    int n;
    bool done = false;

    Assignment(int count, int n) : digits(count, 0), n(n) { done = n <= 0; }

    void advance() {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < n) return;
            digits[i] = 0;
        }
        done = true;
    }
};

} // namespace

KTensor::KTensor(int k, int n) : k_(k), n_(n), values_(checked_power(n, k), Rational(0)) {}

KTensor KTensor::constant(int k, int n, const Rational& value) {
    KTensor t(k, n);
    std::fill(t.values_.begin(), t.values_.end(), value);
    return t;
}

std::size_t KTensor::flatten(const std::vector<int>& coords) const {
    require(static_cast<int>(coords.size()) == k_, "ShapeMismatch", "coordinate arity");
    std::size_t flat = 0;
    for (int c : coords) {
        require(c >= 0 && c < n_, "VertexOutOfRange", "coordinate out of range");
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
    }
    return flat;
}

std::vector<int> KTensor::unflatten(std::size_t flat) const {
    std::vector<int> coords(k_, 0);
    for (int i = k_; i-- > 0;) {
        coords[i] = static_cast<int>(flat % static_cast<std::size_t>(n_));
        flat /= static_cast<std::size_t>(n_);
    }
    return coords;
}

Rational tuple_mass(const StepGraphon& w, const std::vector<int>& coords) {
    Rational mass(1);
    for (int c : coords) mass *= w.mass(c);
    return mass;
}

Rational inner_product(const KTensor& f, const KTensor& g, const StepGraphon& w) {
    require(f.arity() == g.arity() && f.ground_size() == g.ground_size() &&
                f.ground_size() == w.size(),
            "ShapeMismatch", "inner product needs matching shapes");
    Rational total(0);
    Assignment it(f.arity(), f.ground_size());
    std::size_t flat = 0;
    for (; !it.done; it.advance(), ++flat) {
        const Rational& a = f.at(flat);
        const Rational& b = g.at(flat);
        if (a.is_zero() || b.is_zero()) continue;
        total += a * b * tuple_mass(w, it.digits);
    }
    return total;
}

Rational hom_density_bruteforce(const MultiGraph& pattern, const StepGraphon& w) {
    const int v = pattern.vertex_count();
    const int n = w.size();
    require(v * std::log2(std::max(2, n)) <= 30.0, "SizeLimitExceeded",
            "brute-force density cost guard exceeded");
    if (v == 0) return Rational(1);
    Rational total(0);
    for (Assignment it(v, n); !it.done; it.advance()) {
        Rational value = tuple_mass(w, it.digits);
        for (const Edge& e : pattern.edges()) {
            if (value.is_zero()) break;
            value *= w.weight(it.digits[e.u], it.digits[e.v]).pow(e.multiplicity);
        }
        total += value;
    }
    return total;
}

KTensor apply_operator(const BiLabeledGraph& f, const StepGraphon& w, const KTensor& arg) {
    f.validate();
    require(arg.arity() == f.output_arity(), "ShapeMismatch",
            "argument arity must match the output arity");
    require(arg.ground_size() == w.size(), "ShapeMismatch", "ground size mismatch");
    const int n = w.size();
    const int nv = f.graph.vertex_count();
    const int k = f.input_arity();

    std::vector<char> is_input(nv, 0);
    for (int v : f.inputs) is_input[v] = 1;
    std::vector<int> summed; // vertices integrated out, with their masses
    for (int v = 0; v < nv; ++v)
        if (!is_input[v]) summed.push_back(v);

    checked_power(n, k);
    // Cost guard covers the inner enumeration as well.
    require((k + static_cast<int>(summed.size())) * std::log2(std::max(2, n)) <= 30.0,
            "SizeLimitExceeded", "operator application cost guard exceeded");

    KTensor result(k, n);
    std::vector<int> vertex_value(nv, 0);
    std::vector<int> out_coords(f.output_arity(), 0);
    for (Assignment outer(k, n); !outer.done; outer.advance()) {
        for (int i = 0; i < k; ++i) vertex_value[f.inputs[i]] = outer.digits[i];
        Rational total(0);
        for (Assignment inner(static_cast<int>(summed.size()), n); !inner.done;
             inner.advance()) {
            Rational value(1);
            for (std::size_t i = 0; i < summed.size(); ++i) {
                vertex_value[summed[i]] = inner.digits[i];
                value *= w.mass(inner.digits[i]);
            }
            for (const Edge& e : f.graph.edges()) {
                if (value.is_zero()) break;
                value *= w.weight(vertex_value[e.u], vertex_value[e.v]).pow(e.multiplicity);
            }
            if (value.is_zero()) continue;
            for (int i = 0; i < f.output_arity(); ++i)
                out_coords[i] = vertex_value[f.outputs[i]];
            value *= arg.at(out_coords);
            total += value;
        }
        result.at(outer.digits) = std::move(total);
    }
    return result;
}

KTensor hom_function(const BiLabeledGraph& f, const StepGraphon& w) {
    require(f.output_arity() == 0, "HasOutputs",
            "homomorphism functions are defined for graphs without outputs");
    return apply_operator(f, w, KTensor::ones(0, w.size()));
}

KTensor eval_term_hom(const TermPtr& t, const StepGraphon& w) {
    require(t != nullptr, "MalformedTerm", "null term");
    return std::visit(
        [&](const auto& node) -> KTensor {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Term::One>)
                return KTensor::ones(node.k, w.size());
            else if constexpr (std::is_same_v<T, Term::Compose>)
                return apply_operator(make_generator(node.gen), w,
                                      eval_term_hom(node.rest, w));
            else {
                KTensor left = eval_term_hom(node.left, w);
                KTensor right = eval_term_hom(node.right, w);
                for (std::size_t i = 0; i < left.size(); ++i) left.at(i) *= right.at(i);
                return left;
            }
        },
        t->node());
}

Rational term_density(const TermPtr& t, const StepGraphon& w) {
    KTensor h = eval_term_hom(t, w);
    return inner_product(KTensor::ones(h.arity(), w.size()), h, w);
}

std::vector<std::vector<Rational>> operator_matrix(const BiLabeledGraph& f,
                                                   const StepGraphon& w) {
    const int n = w.size();
    const std::size_t rows = checked_power(n, f.input_arity());
    const std::size_t cols = checked_power(n, f.output_arity());
    require(rows <= 4096 && cols <= 4096, "SizeLimitExceeded", "operator matrix too large");

    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t col = 0; col < cols; ++col) {
        KTensor basis(f.output_arity(), n);
        basis.at(col) = Rational(1);
        KTensor image = apply_operator(f, w, basis);
        for (std::size_t row = 0; row < rows; ++row) m[row][col] = image.at(row);
    }
    return m;
}

} // namespace wlg
