// Straight-line evaluation circuits for polynomials too large to expand in
// their ambient variables. Constants live in Q(zeta20); evaluation works over
// any commutative ring given a map for the constants, so the same circuit runs
// over Cyclo, F_p, univariate slices, or polynomial rings.

#pragma once

#include <stdexcept>
#include <vector>

#include "shv/cyclo.hpp"

namespace shv {

class Circuit {
  public:
    enum class Op { Input, Const, Add, Sub, Mul, Pow };
    struct Node {
        Op op;
        int a = -1, b = -1;  // operand node ids
        int var = -1;        // for Input
        int exponent = 0;    // for Pow
        Cyclo k;             // for Const
    };

    explicit Circuit(int num_inputs) : num_inputs_(num_inputs) {}

    int input(int var) {
        if (var < 0 || var >= num_inputs_) throw std::invalid_argument("Circuit: bad input");
        return push({Op::Input, -1, -1, var, 0, Cyclo()});
    }
    int constant(const Cyclo& k) { return push({Op::Const, -1, -1, -1, 0, k}); }
    int add(int a, int b) { return push({Op::Add, check(a), check(b), -1, 0, Cyclo()}); }
    int sub(int a, int b) { return push({Op::Sub, check(a), check(b), -1, 0, Cyclo()}); }
    int mul(int a, int b) { return push({Op::Mul, check(a), check(b), -1, 0, Cyclo()}); }
    int pow(int a, int e) {
        if (e < 0) throw std::invalid_argument("Circuit: negative exponent");
        return push({Op::Pow, check(a), -1, -1, e, Cyclo()});
    }

    void set_output(int node) { output_ = check(node); }
    int output() const { return output_; }
    int num_inputs() const { return num_inputs_; }
    std::size_t size() const { return nodes_.size(); }

    long long degree_bound() const {
        if (output_ < 0) throw std::logic_error("Circuit: no output set");
        std::vector<long long> d(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            switch (n.op) {
                case Op::Input: d[i] = 1; break;
                case Op::Const: d[i] = 0; break;
                case Op::Add:
                case Op::Sub: d[i] = std::max(d[n.a], d[n.b]); break;
                case Op::Mul: d[i] = d[n.a] + d[n.b]; break;
                case Op::Pow: d[i] = d[n.a] * n.exponent; break;
            }
        }
        return d[output_];
    }

    // cmap turns a Cyclo constant into R; one/zero handling follows from R's
    // arithmetic. Powers use binary exponentiation with R copies.
    template <typename R, typename ConstMap>
    R evaluate(const std::vector<R>& inputs, ConstMap&& cmap) const {
        if (output_ < 0) throw std::logic_error("Circuit: no output set");
        if (static_cast<int>(inputs.size()) != num_inputs_)
            throw std::invalid_argument("Circuit: wrong input count");
        std::vector<R> v(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            switch (n.op) {
                case Op::Input: v[i] = inputs[n.var]; break;
                case Op::Const: v[i] = cmap(n.k); break;
                case Op::Add: v[i] = v[n.a] + v[n.b]; break;
                case Op::Sub: v[i] = v[n.a] - v[n.b]; break;
                case Op::Mul: v[i] = v[n.a] * v[n.b]; break;
                case Op::Pow: {
                    R base = v[n.a];
                    int e = n.exponent;
                    R acc = cmap(Cyclo(1));
                    while (e) {
                        if (e & 1) acc = acc * base;
                        if (e >>= 1) base = base * base;
                    }
                    v[i] = acc;
                    break;
                }
            }
        }
        return v[output_];
    }

    // Convenience for rings whose elements convert from Cyclo directly.
    template <typename R>
    R evaluate_with(const std::vector<R>& inputs,
                    R (*conv)(const Cyclo&)) const {
        return evaluate<R>(inputs, conv);
    }

  private:
    int push(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }
    int check(int id) const {
        if (id < 0 || id >= static_cast<int>(nodes_.size()))
            throw std::invalid_argument("Circuit: bad node id");
        return id;
    }

    int num_inputs_;
    int output_ = -1;
    std::vector<Node> nodes_;
};

}  // namespace shv
