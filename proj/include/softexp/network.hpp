#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "activation.hpp"
#include "errors.hpp"

namespace softexp {

using CVector = std::vector<CScalar>;

/// Dense row-major complex matrix, sized for the small networks this
/// library builds and trains.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, CScalar fill = {})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    CScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const CScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<CScalar>& data() { return data_; }
    const std::vector<CScalar>& data() const { return data_; }

    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CScalar> data_;
};

/// Applied to the pre-activation, after the affine map and before the
/// activation. RealPart constrains a layer to real values.
enum class Projection { None, RealPart };

struct Layer {
    CMatrix weights;             // out x in
    CVector bias;                // out
    std::vector<Alpha> alphas;   // out
    Projection projection = Projection::None;

    std::size_t out_dim() const { return weights.rows(); }
    std::size_t in_dim() const { return weights.cols(); }
};

struct Network {
    std::size_t input_dim = 0;
    std::vector<Layer> layers;

    std::size_t output_dim() const {
        return layers.empty() ? 0 : layers.back().out_dim();
    }
};

/// Everything the backward pass needs: the input plus, per layer, the
/// pre-activation (after projection) and the activation.
struct ForwardTrace {
    CVector input;
    std::vector<CVector> pre;
    std::vector<CVector> act;
};

/// Partials of a scalar objective with respect to every parameter, treating
/// each complex quantity as two real coordinates. For complex-valued slots
/// the (re, im) pair of partials is packed into one CScalar.
struct GradientSet {
    struct LayerGrads {
        CMatrix d_weights;
        CVector d_bias;
        std::vector<double> d_alpha_re;
        std::vector<double> d_alpha_im;
    };
    std::vector<LayerGrads> layers;
};

/// Checks all structural invariants; returns a list of human-readable
/// violations (empty means the network is well-formed).
inline std::vector<std::string> validate(const Network& net) {
    std::vector<std::string> issues;
    if (net.input_dim < 1)
        issues.push_back("input_dim must be >= 1");
    if (net.layers.empty())
        issues.push_back("network must have at least one layer");
    std::size_t prev = net.input_dim;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        const std::string tag = "layer " + std::to_string(l) + ": ";
        if (layer.out_dim() < 1)
            issues.push_back(tag + "must have at least one unit");
        if (layer.in_dim() != prev)
            issues.push_back(tag + "weight columns (" + std::to_string(layer.in_dim()) +
                             ") do not match previous width (" + std::to_string(prev) + ")");
        if (layer.bias.size() != layer.out_dim())
            issues.push_back(tag + "bias length does not match unit count");
        if (layer.alphas.size() != layer.out_dim())
            issues.push_back(tag + "alphas length does not match unit count");
        for (const CScalar& w : layer.weights.data())
            if (!detail::finite(w)) { issues.push_back(tag + "non-finite weight"); break; }
        for (const CScalar& b : layer.bias)
            if (!detail::finite(b)) { issues.push_back(tag + "non-finite bias"); break; }
        for (const Alpha& a : layer.alphas)
            if (!std::isfinite(a.re) || !std::isfinite(a.im)) {
                issues.push_back(tag + "non-finite alpha");
                break;
            }
        prev = layer.out_dim();
    }
    return issues;
}

namespace detail {

inline Layer make_layer(std::size_t out, std::size_t in, Alpha alpha,
                        Projection proj = Projection::None) {
    Layer layer;
    layer.weights = CMatrix(out, in);
    layer.bias.assign(out, CScalar{});
    layer.alphas.assign(out, alpha);
    layer.projection = proj;
    return layer;
}

inline CScalar unit_eval(Alpha alpha, CScalar z, EvalMode mode) {
    if (mode == EvalMode::RealStrict && alpha.is_real() && alpha.re < 0.0) {
        if (z.imag() != 0.0)
            throw DomainError("complex pre-activation reached a log-branch unit "
                              "in RealStrict mode");
        return {softexp(alpha.re, z.real()), 0.0};
    }
    return softexp_complex(alpha, z);
}

inline CVector forward_impl(const Network& net, const CVector& input, EvalMode mode,
                            ForwardTrace* trace) {
    if (net.layers.empty())
        throw ShapeError("network has no layers");
    if (input.size() != net.input_dim)
        throw ShapeError("input length " + std::to_string(input.size()) +
                         " does not match input_dim " + std::to_string(net.input_dim));
    for (const CScalar& v : input) require_finite(v, "input");

    if (trace) {
        trace->input = input;
        trace->pre.clear();
        trace->act.clear();
    }
    CVector act = input;
    for (const Layer& layer : net.layers) {
        if (layer.in_dim() != act.size())
            throw ShapeError("layer width mismatch during forward pass");
        CVector z(layer.out_dim());
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            CScalar sum = layer.bias[i];
            for (std::size_t j = 0; j < layer.in_dim(); ++j)
                sum += layer.weights(i, j) * act[j];
            z[i] = layer.projection == Projection::RealPart ? CScalar{sum.real(), 0.0} : sum;
        }
        CVector out(layer.out_dim());
        for (std::size_t i = 0; i < layer.out_dim(); ++i)
            out[i] = unit_eval(layer.alphas[i], z[i], mode);
        if (trace) {
            trace->pre.push_back(std::move(z));
            trace->act.push_back(out);
        }
        act = std::move(out);
    }
    return act;
}

} // namespace detail

/// Evaluates the network on one input vector.
inline CVector forward(const Network& net, const CVector& input,
                       EvalMode mode = EvalMode::RealStrict) {
    return detail::forward_impl(net, input, mode, nullptr);
}

inline CVector forward(const Network& net, const std::vector<double>& input,
                       EvalMode mode = EvalMode::RealStrict) {
    CVector cin(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) cin[i] = {input[i], 0.0};
    return detail::forward_impl(net, cin, mode, nullptr);
}

/// Forward pass that records the per-layer trace needed by backward().
inline std::pair<CVector, ForwardTrace> forward_traced(const Network& net, const CVector& input,
                                                       EvalMode mode = EvalMode::RealStrict) {
    ForwardTrace trace;
    CVector out = detail::forward_impl(net, input, mode, &trace);
    return {std::move(out), std::move(trace)};
}

/// Exact partials of the scalar s = sum_k (g_re,k * Re(out_k) + g_im,k * Im(out_k))
/// with respect to every weight, bias, and alpha component, where output_grad
/// packs (g_re, g_im) per output coordinate.
///
/// Unit alphas sitting exactly on the negative real axis are differentiated
/// along the real line only (the log and exponential branches disagree off
/// the axis there, so the imaginary direction carries no gradient and
/// d_alpha_im is 0 for those units).
inline GradientSet backward(const Network& net, const ForwardTrace& trace,
                            const CVector& output_grad) {
    const std::size_t L = net.layers.size();
    if (trace.pre.size() != L || trace.act.size() != L)
        throw ShapeError("trace does not match network depth");
    if (trace.input.size() != net.input_dim)
        throw ShapeError("trace input does not match input_dim");
    if (output_grad.size() != net.output_dim())
        throw ShapeError("output_grad length does not match output width");
    for (std::size_t l = 0; l < L; ++l)
        if (trace.pre[l].size() != net.layers[l].out_dim() ||
            trace.act[l].size() != net.layers[l].out_dim())
            throw ShapeError("trace does not match layer widths");

    GradientSet grads;
    grads.layers.resize(L);

    CVector act_bar = output_grad; // adjoint of the current layer's activation
    for (std::size_t li = L; li-- > 0;) {
        const Layer& layer = net.layers[li];
        const CVector& prev_act = li == 0 ? trace.input : trace.act[li - 1];
        GradientSet::LayerGrads& g = grads.layers[li];
        g.d_weights = CMatrix(layer.out_dim(), layer.in_dim());
        g.d_bias.assign(layer.out_dim(), CScalar{});
        g.d_alpha_re.assign(layer.out_dim(), 0.0);
        g.d_alpha_im.assign(layer.out_dim(), 0.0);

        // through the activation: adjoint of the projected pre-activation
        CVector z_bar(layer.out_dim());
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            const Alpha& alpha = layer.alphas[i];
            CScalar p = trace.pre[li][i];
            CScalar dp = detail::dsoftexp_dx_c(alpha, p);
            CScalar da = detail::dsoftexp_dalpha_c(alpha, p);
            CScalar alpha_bar = std::conj(da) * act_bar[i];
            g.d_alpha_re[i] = alpha_bar.real();
            g.d_alpha_im[i] =
                (alpha.is_real() && alpha.re < 0.0) ? 0.0 : alpha_bar.imag();
            CScalar p_bar = std::conj(dp) * act_bar[i];
            z_bar[i] = layer.projection == Projection::RealPart
                           ? CScalar{p_bar.real(), 0.0}
                           : p_bar;
        }

        // through the affine map
        CVector prev_bar(layer.in_dim(), CScalar{});
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            g.d_bias[i] = z_bar[i];
            for (std::size_t j = 0; j < layer.in_dim(); ++j) {
                g.d_weights(i, j) = std::conj(prev_act[j]) * z_bar[i];
                prev_bar[j] += std::conj(layer.weights(i, j)) * z_bar[i];
            }
        }
        act_bar = std::move(prev_bar);
    }
    return grads;
}

} // namespace softexp
