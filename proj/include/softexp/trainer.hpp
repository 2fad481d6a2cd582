#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "network.hpp"

namespace softexp {

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 1000;
    // Clamped to the dataset size, so the default is full-batch descent.
    std::size_t batch_size = std::numeric_limits<std::size_t>::max();
    double l1_weights = 0.0;
    double l1_alpha = 0.0;
    std::uint64_t seed = 0;
    EvalMode mode = EvalMode::RealStrict;
};

struct Dataset {
    std::vector<std::vector<double>> inputs;  // rows x input_dim
    std::vector<std::vector<double>> targets; // rows x output_dim

    std::size_t rows() const { return inputs.size(); }
    std::size_t input_dim() const { return inputs.empty() ? 0 : inputs.front().size(); }
    std::size_t output_dim() const { return targets.empty() ? 0 : targets.front().size(); }
};

inline void validate_dataset(const Dataset& data) {
    if (data.rows() < 1) throw InvalidArgument("dataset must have at least one row");
    if (data.targets.size() != data.rows())
        throw ShapeError("dataset input and target row counts differ");
    for (std::size_t r = 0; r < data.rows(); ++r) {
        if (data.inputs[r].size() != data.input_dim() ||
            data.targets[r].size() != data.output_dim())
            throw ShapeError("dataset row " + std::to_string(r) + " has inconsistent width");
        for (double v : data.inputs[r]) detail::require_finite(v, "dataset input");
        for (double v : data.targets[r]) detail::require_finite(v, "dataset target");
    }
}

struct TrainReport {
    std::vector<double> epoch_loss;                   // full-dataset MSE after each epoch
    std::vector<std::size_t> epoch_zero_weights;      // exact zeros after each epoch
    std::vector<std::size_t> epoch_zero_alpha_components;
    double final_loss = 0.0;
    std::size_t zero_weights = 0;
    std::size_t zero_alpha_components = 0;
};

/// Largest singular value, estimated by power iteration on W^H W to a
/// relative tolerance of 1e-8 or 200 iterations.
inline double spectral_norm_estimate(const CMatrix& w, int max_iter = 200, double tol = 1e-8) {
    if (w.rows() == 0 || w.cols() == 0) throw InvalidArgument("empty matrix");
    // deterministic start vector; components never vanish
    std::vector<CScalar> v(w.cols());
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    double nv = 0.0;
    for (CScalar& c : v) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        c = {static_cast<double>(state >> 11) / 9007199254740992.0 + 0.25, 0.0};
        nv += std::norm(c);
    }
    nv = std::sqrt(nv);
    for (CScalar& c : v) c /= nv;

    double sigma = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<CScalar> u(w.rows());
        for (std::size_t i = 0; i < w.rows(); ++i) {
            CScalar sum{};
            for (std::size_t j = 0; j < w.cols(); ++j) sum += w(i, j) * v[j];
            u[i] = sum;
        }
        double nu = 0.0;
        for (const CScalar& c : u) nu += std::norm(c);
        nu = std::sqrt(nu);
        if (nu == 0.0) return 0.0;
        std::vector<CScalar> next(w.cols());
        for (std::size_t j = 0; j < w.cols(); ++j) {
            CScalar sum{};
            for (std::size_t i = 0; i < w.rows(); ++i) sum += std::conj(w(i, j)) * u[i];
            next[j] = sum;
        }
        double nn = 0.0;
        for (const CScalar& c : next) nn += std::norm(c);
        nn = std::sqrt(nn);
        if (nn == 0.0) return nu;
        for (CScalar& c : next) c /= nn;
        v = std::move(next);
        if (iter > 0 && std::abs(nu - sigma) <= tol * std::max(nu, 1e-300)) {
            sigma = nu;
            break;
        }
        sigma = nu;
    }
    return sigma;
}

/// W / sigma_max(W). Errors on the zero matrix.
inline CMatrix spectral_normalize(const CMatrix& w) {
    bool all_zero = true;
    for (const CScalar& c : w.data())
        if (c != CScalar{}) { all_zero = false; break; }
    if (all_zero) throw InvalidArgument("cannot spectrally normalize a zero matrix");
    double sigma = spectral_norm_estimate(w);
    CMatrix out = w;
    for (CScalar& c : out.data()) c /= sigma;
    return out;
}

/// Fresh network per the proposed architecture: every alpha 0 + 0i, biases
/// zero, weights drawn from a standard normal and scaled so each matrix has
/// largest singular value 1, output layer constrained to real values. At this
/// point the whole network computes the composed linear map.
inline Network init_network(const std::vector<std::size_t>& widths, std::uint64_t seed) {
    if (widths.size() < 2)
        throw InvalidArgument("init_network needs an input width and at least one layer");
    for (std::size_t w : widths)
        if (w < 1) throw InvalidArgument("layer widths must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Network net;
    net.input_dim = widths.front();
    for (std::size_t l = 1; l < widths.size(); ++l) {
        Layer layer = detail::make_layer(widths[l], widths[l - 1], Alpha{0.0, 0.0},
                                         l + 1 == widths.size() ? Projection::RealPart
                                                                : Projection::None);
        for (CScalar& c : layer.weights.data()) c = {normal(rng), 0.0};
        layer.weights = spectral_normalize(layer.weights);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

namespace detail {

constexpr double kImagResidualTolerance = 1e-6;

// the bare objective, defined on the real parts only
inline double mse_value(const CVector& output, const std::vector<double>& target) {
    if (output.size() != target.size() || output.empty())
        throw ShapeError("mse_loss: output and target lengths differ");
    double acc = 0.0;
    for (std::size_t k = 0; k < output.size(); ++k) {
        double d = output[k].real() - target[k];
        acc += d * d;
    }
    return acc / static_cast<double>(output.size());
}

} // namespace detail

/// Mean squared error over the real parts. An output component with
/// |imaginary part| above 1e-6 indicates a network that was not projected to
/// real values and is reported as an error.
inline double mse_loss(const CVector& output, const std::vector<double>& target) {
    if (output.size() != target.size() || output.empty())
        throw ShapeError("mse_loss: output and target lengths differ");
    for (const CScalar& v : output)
        if (std::abs(v.imag()) > detail::kImagResidualTolerance)
            throw RangeError("mse_loss: output has imaginary residual above 1e-6");
    return detail::mse_value(output, target);
}

/// Packed (re, im) partials of mse_loss with respect to each output.
inline CVector mse_output_grad(const CVector& output, const std::vector<double>& target) {
    if (output.size() != target.size() || output.empty())
        throw ShapeError("mse_output_grad: output and target lengths differ");
    CVector g(output.size());
    double scale = 2.0 / static_cast<double>(output.size());
    for (std::size_t k = 0; k < output.size(); ++k)
        g[k] = {scale * (output[k].real() - target[k]), 0.0};
    return g;
}

namespace detail {

inline double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

inline CScalar soft_threshold(CScalar v, double t) {
    return {soft_threshold(v.real(), t), soft_threshold(v.imag(), t)};
}

inline double full_dataset_loss(const Network& net, const Dataset& data, EvalMode mode) {
    double acc = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r)
        acc += mse_loss(forward(net, data.inputs[r], mode), data.targets[r]);
    return acc / static_cast<double>(data.rows());
}

inline void count_zeros(const Network& net, std::size_t& zero_weights,
                        std::size_t& zero_alpha_components) {
    zero_weights = 0;
    zero_alpha_components = 0;
    for (const Layer& layer : net.layers) {
        for (const CScalar& w : layer.weights.data())
            if (w == CScalar{}) ++zero_weights;
        for (const Alpha& a : layer.alphas) {
            if (a.re == 0.0) ++zero_alpha_components;
            if (a.im == 0.0) ++zero_alpha_components;
        }
    }
}

} // namespace detail

/// Mini-batch gradient descent on weights, biases, and alphas, followed by a
/// proximal L1 step that soft-thresholds weight components by
/// learning_rate * l1_weights and alpha components by learning_rate * l1_alpha
/// (producing exact zeros). Shuffling is a seeded permutation per epoch, so a
/// given (dataset, config) pair always yields the same report. A domain
/// violation aborts the run with the offending epoch and batch; a non-finite
/// loss raises DivergenceError.
inline TrainReport fit(Network& net, const Dataset& data, const TrainConfig& cfg) {
    if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate))
        throw InvalidArgument("learning_rate must be positive");
    if (cfg.epochs < 1) throw InvalidArgument("epochs must be >= 1");
    if (cfg.batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
    if (cfg.l1_weights < 0.0 || cfg.l1_alpha < 0.0)
        throw InvalidArgument("L1 strengths must be nonnegative");
    validate_dataset(data);
    {
        std::vector<std::string> issues = validate(net);
        if (!issues.empty()) throw InvalidArgument("fit: " + issues.front());
    }
    if (data.input_dim() != net.input_dim)
        throw ShapeError("dataset input width does not match the network");
    if (data.output_dim() != net.output_dim())
        throw ShapeError("dataset target width does not match the network");

    const std::size_t rows = data.rows();
    const std::size_t batch = std::min(cfg.batch_size, rows);
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);

    TrainReport report;
    report.epoch_loss.reserve(cfg.epochs);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < rows; start += batch) {
            const std::size_t count = std::min(batch, rows - start);
            const std::size_t batch_index = start / batch;

            GradientSet total;
            for (std::size_t b = 0; b < count; ++b) {
                const std::size_t r = order[start + b];
                CVector input(net.input_dim);
                for (std::size_t j = 0; j < net.input_dim; ++j)
                    input[j] = {data.inputs[r][j], 0.0};
                CVector out;
                ForwardTrace trace;
                try {
                    std::tie(out, trace) = forward_traced(net, input, cfg.mode);
                } catch (const DomainError& e) {
                    throw DomainError("fit aborted at epoch " + std::to_string(epoch + 1) +
                                      ", batch " + std::to_string(batch_index) + ", sample " +
                                      std::to_string(r) + ": " + e.what());
                } catch (const RangeError& e) {
                    throw DivergenceError("training diverged at epoch " +
                                          std::to_string(epoch + 1) + ": " + e.what());
                }
                GradientSet g = backward(net, trace, mse_output_grad(out, data.targets[r]));
                if (total.layers.empty()) {
                    total = std::move(g);
                } else {
                    for (std::size_t l = 0; l < g.layers.size(); ++l) {
                        auto& acc = total.layers[l];
                        const auto& add = g.layers[l];
                        for (std::size_t k = 0; k < acc.d_weights.data().size(); ++k)
                            acc.d_weights.data()[k] += add.d_weights.data()[k];
                        for (std::size_t k = 0; k < acc.d_bias.size(); ++k)
                            acc.d_bias[k] += add.d_bias[k];
                        for (std::size_t k = 0; k < acc.d_alpha_re.size(); ++k) {
                            acc.d_alpha_re[k] += add.d_alpha_re[k];
                            acc.d_alpha_im[k] += add.d_alpha_im[k];
                        }
                    }
                }
            }

            const double scale = cfg.learning_rate / static_cast<double>(count);
            const double weight_shrink = cfg.learning_rate * cfg.l1_weights;
            const double alpha_shrink = cfg.learning_rate * cfg.l1_alpha;
            for (std::size_t l = 0; l < net.layers.size(); ++l) {
                Layer& layer = net.layers[l];
                const auto& g = total.layers[l];
                for (std::size_t k = 0; k < layer.weights.data().size(); ++k) {
                    CScalar w = layer.weights.data()[k] - scale * g.d_weights.data()[k];
                    layer.weights.data()[k] =
                        weight_shrink > 0.0 ? detail::soft_threshold(w, weight_shrink) : w;
                }
                for (std::size_t k = 0; k < layer.bias.size(); ++k)
                    layer.bias[k] -= scale * g.d_bias[k];
                for (std::size_t k = 0; k < layer.alphas.size(); ++k) {
                    double re = layer.alphas[k].re - scale * g.d_alpha_re[k];
                    double im = layer.alphas[k].im - scale * g.d_alpha_im[k];
                    if (alpha_shrink > 0.0) {
                        re = detail::soft_threshold(re, alpha_shrink);
                        im = detail::soft_threshold(im, alpha_shrink);
                    }
                    layer.alphas[k] = Alpha{re, im};
                }
            }
        }

        double loss;
        try {
            loss = detail::full_dataset_loss(net, data, cfg.mode);
        } catch (const DomainError& e) {
            throw DomainError("fit aborted evaluating epoch " + std::to_string(epoch + 1) +
                              " loss: " + e.what());
        } catch (const RangeError& e) {
            throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1) +
                                  ": " + e.what());
        }
        if (!std::isfinite(loss))
            throw DivergenceError("training diverged: loss is non-finite at epoch " +
                                  std::to_string(epoch + 1));
        report.epoch_loss.push_back(loss);
        std::size_t zw, za;
        detail::count_zeros(net, zw, za);
        report.epoch_zero_weights.push_back(zw);
        report.epoch_zero_alpha_components.push_back(za);
    }
    report.final_loss = report.epoch_loss.back();
    report.zero_weights = report.epoch_zero_weights.back();
    report.zero_alpha_components = report.epoch_zero_alpha_components.back();
    return report;
}

/// Compares backward() against central finite differences of the MSE loss
/// for every parameter coordinate and returns the largest relative error
/// (with the difference measured against max(1, |analytic|, |fd|)).
///
/// Probes of real coordinates evaluate in the requested mode, so stepping a
/// log-branch unit past its domain bound raises DomainError as the forward
/// pass would. Probes of imaginary coordinates leave the real slice by
/// construction and therefore always evaluate through the principal-log
/// continuation. Imaginary alpha coordinates of units sitting exactly on the
/// negative real axis are asserted to carry zero analytic gradient and are
/// excluded from differencing: the activation branches disagree off the axis
/// there, so a finite difference would straddle two different functions.
inline double grad_check(const Network& net, const std::vector<double>& input,
                         const std::vector<double>& target, double step = 1e-6,
                         EvalMode mode = EvalMode::RealStrict) {
    if (!(step > 0.0)) throw InvalidArgument("step must be positive");
    CVector cin(input.size());
    for (std::size_t j = 0; j < input.size(); ++j) cin[j] = {input[j], 0.0};
    auto [out, trace] = forward_traced(net, cin, mode);
    GradientSet analytic = backward(net, trace, mse_output_grad(out, target));

    Network work = net;
    auto eval = [&](EvalMode m) { return detail::mse_value(forward(work, cin, m), target); };
    double max_rel = 0.0;
    auto record = [&](double a, double fd) {
        double rel = std::abs(a - fd) / std::max({1.0, std::abs(a), std::abs(fd)});
        max_rel = std::max(max_rel, rel);
    };
    auto check_component = [&](CScalar& slot, bool imag_part, double a) {
        const EvalMode probe_mode = imag_part ? EvalMode::ComplexPrincipal : mode;
        const CScalar saved = slot;
        auto set = [&](double d) {
            slot = imag_part ? CScalar{saved.real(), saved.imag() + d}
                             : CScalar{saved.real() + d, saved.imag()};
        };
        set(step);
        double sp = eval(probe_mode);
        set(-step);
        double sm = eval(probe_mode);
        slot = saved;
        record(a, (sp - sm) / (2.0 * step));
    };

    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Layer& layer = work.layers[l];
        const auto& g = analytic.layers[l];
        for (std::size_t k = 0; k < layer.weights.data().size(); ++k) {
            check_component(layer.weights.data()[k], false, g.d_weights.data()[k].real());
            check_component(layer.weights.data()[k], true, g.d_weights.data()[k].imag());
        }
        for (std::size_t k = 0; k < layer.bias.size(); ++k) {
            check_component(layer.bias[k], false, g.d_bias[k].real());
            check_component(layer.bias[k], true, g.d_bias[k].imag());
        }
        for (std::size_t k = 0; k < layer.alphas.size(); ++k) {
            Alpha saved = layer.alphas[k];
            double fd_re;
            if (saved.re == 0.0 && saved.im == 0.0) {
                // the two branches meet only to first order at alpha = 0, so a
                // centered stencil straddling the seam is biased by O(step);
                // difference one-sidedly on the exponential side instead
                double s0 = eval(mode);
                layer.alphas[k] = Alpha{step, 0.0};
                double s1 = eval(mode);
                layer.alphas[k] = Alpha{2.0 * step, 0.0};
                double s2 = eval(mode);
                fd_re = (-3.0 * s0 + 4.0 * s1 - s2) / (2.0 * step);
            } else {
                layer.alphas[k] = Alpha{saved.re + step, saved.im};
                double sp = eval(mode);
                layer.alphas[k] = Alpha{saved.re - step, saved.im};
                double sm = eval(mode);
                fd_re = (sp - sm) / (2.0 * step);
            }
            layer.alphas[k] = saved;
            record(g.d_alpha_re[k], fd_re);

            if (saved.is_real() && saved.re < 0.0) {
                record(g.d_alpha_im[k], 0.0); // defined as zero on the axis
                continue;
            }
            layer.alphas[k] = Alpha{saved.re, saved.im + step};
            double sp = eval(EvalMode::ComplexPrincipal);
            layer.alphas[k] = Alpha{saved.re, saved.im - step};
            double sm = eval(EvalMode::ComplexPrincipal);
            layer.alphas[k] = saved;
            record(g.d_alpha_im[k], (sp - sm) / (2.0 * step));
        }
    }
    return max_rel;
}

} // namespace softexp
