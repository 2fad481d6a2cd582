#pragma once

#include <cstddef>
#include <vector>

#include "network.hpp"

namespace softexp {

/// Source network an RBF response unit is appended to.
enum class RbfSource { InnerProduct, SquaredDistance };

/// Parameters of a sinusoid-sum network: offset + sum_k a_k sin(w_k x) +
/// b_k cos(w_k x). Frequencies must be nonzero; coefficient lists match the
/// frequency list in length.
struct FourierSpec {
    std::vector<double> freqs;
    std::vector<double> sin_coeffs;
    std::vector<double> cos_coeffs;
    double offset = 0.0;
};

/// Network on 2n inputs (p then q) computing the inner product p . q:
/// a log layer (alpha = -1), a pairwise exp-of-sum layer (alpha = +1), and
/// one summing unit (alpha = 0). All drawn weights are 1. Exact for strictly
/// positive inputs in RealStrict mode and for nonzero inputs in
/// ComplexPrincipal mode (the output layer projects to the real part).
inline Network build_inner_product(std::size_t n) {
    if (n < 1) throw InvalidArgument("inner product needs n >= 1");
    Network net;
    net.input_dim = 2 * n;

    Layer logs = detail::make_layer(2 * n, 2 * n, Alpha{-1.0});
    for (std::size_t i = 0; i < 2 * n; ++i) logs.weights(i, i) = 1.0;
    net.layers.push_back(std::move(logs));

    Layer prods = detail::make_layer(n, 2 * n, Alpha{1.0});
    for (std::size_t i = 0; i < n; ++i) {
        prods.weights(i, i) = 1.0;     // log p_i
        prods.weights(i, n + i) = 1.0; // log q_i
    }
    net.layers.push_back(std::move(prods));

    Layer sum = detail::make_layer(1, n, Alpha{0.0}, Projection::RealPart);
    for (std::size_t j = 0; j < n; ++j) sum.weights(0, j) = 1.0;
    net.layers.push_back(std::move(sum));
    return net;
}

/// Network on 2n inputs computing sum_i (p_i - q_i)^2: a differencing layer
/// (alpha = 0, weights +-1), a log layer (alpha = -1), a squaring layer
/// (alpha = +1 with incoming weight 2, i.e. e^{2 log d} = d^2), and one
/// summing unit. Exact when every difference is positive in RealStrict mode
/// and when every difference is nonzero in ComplexPrincipal mode.
inline Network build_squared_distance(std::size_t n) {
    if (n < 1) throw InvalidArgument("squared distance needs n >= 1");
    Network net;
    net.input_dim = 2 * n;

    Layer diff = detail::make_layer(n, 2 * n, Alpha{0.0});
    for (std::size_t i = 0; i < n; ++i) {
        diff.weights(i, i) = 1.0;
        diff.weights(i, n + i) = -1.0;
    }
    net.layers.push_back(std::move(diff));

    Layer logs = detail::make_layer(n, n, Alpha{-1.0});
    for (std::size_t i = 0; i < n; ++i) logs.weights(i, i) = 1.0;
    net.layers.push_back(std::move(logs));

    Layer squares = detail::make_layer(n, n, Alpha{1.0});
    for (std::size_t i = 0; i < n; ++i) squares.weights(i, i) = 2.0;
    net.layers.push_back(std::move(squares));

    Layer sum = detail::make_layer(1, n, Alpha{0.0}, Projection::RealPart);
    for (std::size_t j = 0; j < n; ++j) sum.weights(0, j) = 1.0;
    net.layers.push_back(std::move(sum));
    return net;
}

/// Squared-distance network with the summing unit switched to a log unit
/// (alpha = -1) and one more alpha = +1 unit with incoming weight 0.5, so the
/// output is e^{0.5 log s} = sqrt(s).
inline Network build_euclidean_distance(std::size_t n) {
    Network net = build_squared_distance(n);
    Layer& sum = net.layers.back();
    sum.alphas.assign(1, Alpha{-1.0});
    sum.projection = Projection::None;

    Layer root = detail::make_layer(1, 1, Alpha{1.0}, Projection::RealPart);
    root.weights(0, 0) = 0.5;
    net.layers.push_back(std::move(root));
    return net;
}

/// One-input network computing c_0 + c_1 x + ... + c_d x^d: a log unit, a
/// power layer whose unit k has incoming weight k (x^k = e^{k log x}), and a
/// combining unit carrying the coefficients, with c_0 as its bias. Exact for
/// x > 0 in RealStrict mode and for x != 0 in ComplexPrincipal mode. A
/// single coefficient builds the constant network directly.
inline Network build_polynomial(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
    for (double c : coeffs) detail::require_finite(c, "coefficient");
    Network net;
    net.input_dim = 1;
    const std::size_t degree = coeffs.size() - 1;
    if (degree == 0) {
        Layer constant = detail::make_layer(1, 1, Alpha{0.0}, Projection::RealPart);
        constant.bias[0] = coeffs[0];
        net.layers.push_back(std::move(constant));
        return net;
    }

    Layer log_unit = detail::make_layer(1, 1, Alpha{-1.0});
    log_unit.weights(0, 0) = 1.0;
    net.layers.push_back(std::move(log_unit));

    Layer powers = detail::make_layer(degree, 1, Alpha{1.0});
    for (std::size_t k = 0; k < degree; ++k)
        powers.weights(k, 0) = static_cast<double>(k + 1);
    net.layers.push_back(std::move(powers));

    Layer combine = detail::make_layer(1, degree, Alpha{0.0}, Projection::RealPart);
    for (std::size_t k = 0; k < degree; ++k) combine.weights(0, k) = coeffs[k + 1];
    combine.bias[0] = coeffs[0];
    net.layers.push_back(std::move(combine));
    return net;
}

/// Appends one alpha = +1 unit with incoming weight -r to an inner-product
/// or squared-distance network, so the output is the Gaussian radial basis
/// response e^{-r s}.
inline Network build_rbf(std::size_t n, double r, RbfSource source) {
    detail::require_finite(r, "r");
    Network net = source == RbfSource::InnerProduct ? build_inner_product(n)
                                                    : build_squared_distance(n);
    Layer response = detail::make_layer(1, 1, Alpha{1.0}, Projection::RealPart);
    response.weights(0, 0) = -r;
    net.layers.push_back(std::move(response));
    return net;
}

/// One-input network computing offset + sum_k a_k sin(w_k x) + b_k cos(w_k x)
/// exactly. Hidden unit k uses alpha = i w_k, whose activation has real part
/// sin(w_k x)/w_k and imaginary part w_k + (1 - cos(w_k x))/w_k; the output
/// unit's complex weight w_k (a_k + i b_k) recovers the sinusoids—the
/// outgoing weight compensates for the 1/w_k amplitude—and its bias absorbs
/// the constant offsets b_k (1 + w_k^2).
inline Network build_fourier(const FourierSpec& spec) {
    const std::size_t m = spec.freqs.size();
    if (m == 0) throw InvalidArgument("fourier needs at least one frequency");
    if (spec.sin_coeffs.size() != m || spec.cos_coeffs.size() != m)
        throw InvalidArgument("fourier coefficient lists must match the frequency list");
    detail::require_finite(spec.offset, "offset");
    for (double w : spec.freqs) {
        detail::require_finite(w, "frequency");
        if (w == 0.0) throw InvalidArgument("fourier frequencies must be nonzero");
    }
    for (double a : spec.sin_coeffs) detail::require_finite(a, "sin coefficient");
    for (double b : spec.cos_coeffs) detail::require_finite(b, "cos coefficient");

    Network net;
    net.input_dim = 1;

    Layer waves = detail::make_layer(m, 1, Alpha{0.0});
    for (std::size_t k = 0; k < m; ++k) {
        waves.weights(k, 0) = 1.0;
        waves.alphas[k] = Alpha{0.0, spec.freqs[k]};
    }
    net.layers.push_back(std::move(waves));

    Layer combine = detail::make_layer(1, m, Alpha{0.0}, Projection::RealPart);
    double constant = spec.offset;
    for (std::size_t k = 0; k < m; ++k) {
        double w = spec.freqs[k];
        combine.weights(0, k) = CScalar{spec.sin_coeffs[k] * w, spec.cos_coeffs[k] * w};
        constant += spec.cos_coeffs[k] * (1.0 + w * w);
    }
    combine.bias[0] = constant;
    net.layers.push_back(std::move(combine));
    return net;
}

} // namespace softexp
