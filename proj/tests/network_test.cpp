#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace softexp;
using softexp::test::max_backward_fd_error;
using softexp::test::random_checkable_net;
using softexp::test::rel_err;
using softexp::test::to_cvector;

namespace {

Network single_unit(CScalar weight, CScalar bias, Alpha alpha,
                    Projection proj = Projection::None) {
    Network net;
    net.input_dim = 1;
    Layer layer = detail::make_layer(1, 1, alpha, proj);
    layer.weights(0, 0) = weight;
    layer.bias[0] = bias;
    net.layers.push_back(std::move(layer));
    return net;
}

// composed affine map oracle for all-alpha-zero real networks
std::vector<double> affine_oracle(const Network& net, const std::vector<double>& input) {
    std::vector<double> act = input;
    for (const Layer& layer : net.layers) {
        std::vector<double> next(layer.out_dim());
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            double sum = layer.bias[i].real();
            for (std::size_t j = 0; j < layer.in_dim(); ++j)
                sum += layer.weights(i, j).real() * act[j];
            next[i] = sum;
        }
        act = std::move(next);
    }
    return act;
}

} // namespace

TEST(Forward, ScalesLinearlyWithIdentityActivation) {
    Network net = single_unit(2.0, 0.0, Alpha{0.0});
    CVector out = forward(net, std::vector<double>{3.0});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], (CScalar{6.0, 0.0}));
}

TEST(Forward, LinearAtZeroAlpha) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> weights(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Network net;
        net.input_dim = 3;
        std::size_t prev = 3;
        for (std::size_t width : {4u, 2u, 3u}) {
            Layer layer = detail::make_layer(width, prev, Alpha{0.0, 0.0});
            for (CScalar& w : layer.weights.data()) w = {weights(rng), 0.0};
            for (CScalar& b : layer.bias) b = {weights(rng), 0.0};
            net.layers.push_back(std::move(layer));
            prev = width;
        }
        std::vector<double> input{weights(rng), weights(rng), weights(rng)};
        CVector out = forward(net, input);
        std::vector<double> expect = affine_oracle(net, input);
        for (std::size_t k = 0; k < out.size(); ++k) {
            EXPECT_LE(std::abs(out[k].real() - expect[k]), 1e-12);
            EXPECT_EQ(out[k].imag(), 0.0);
        }
    }
}

TEST(Forward, TraceIsShapeConsistent) {
    std::mt19937_64 rng(5);
    test::RandomNetOptions opt;
    auto [net, input] = random_checkable_net(rng, opt, EvalMode::RealStrict);
    auto [out, trace] = forward_traced(net, input);
    ASSERT_EQ(trace.pre.size(), net.layers.size());
    ASSERT_EQ(trace.act.size(), net.layers.size());
    EXPECT_EQ(trace.input, input);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        EXPECT_EQ(trace.pre[l].size(), net.layers[l].out_dim());
        EXPECT_EQ(trace.act[l].size(), net.layers[l].out_dim());
    }
    EXPECT_EQ(trace.act.back(), out);
}

TEST(Forward, ShapeAndModeErrors) {
    Network net = single_unit(1.0, 0.0, Alpha{-1.0});
    EXPECT_THROW(forward(net, std::vector<double>{1.0, 2.0}), ShapeError);
    // out-of-domain input at a log unit
    EXPECT_THROW(forward(net, std::vector<double>{-2.0}), DomainError);
    EXPECT_NO_THROW(forward(net, std::vector<double>{-2.0}, EvalMode::ComplexPrincipal));
    // complex value reaching a log unit is rejected in RealStrict mode only
    Network chain;
    chain.input_dim = 1;
    Layer first = detail::make_layer(1, 1, Alpha{0.0, 1.0});
    first.weights(0, 0) = 1.0;
    chain.layers.push_back(std::move(first));
    Layer second = detail::make_layer(1, 1, Alpha{-1.0});
    second.weights(0, 0) = 1.0;
    chain.layers.push_back(std::move(second));
    EXPECT_THROW(forward(chain, std::vector<double>{1.0}), DomainError);
    EXPECT_NO_THROW(forward(chain, std::vector<double>{1.0}, EvalMode::ComplexPrincipal));
}

TEST(Validate, ReportsViolations) {
    Network good = single_unit(1.0, 0.0, Alpha{0.5});
    EXPECT_TRUE(validate(good).empty());

    Network mismatched;
    mismatched.input_dim = 2;
    mismatched.layers.push_back(detail::make_layer(2, 3, Alpha{0.0}));
    EXPECT_FALSE(validate(mismatched).empty());

    Network nan_weight = good;
    nan_weight.layers[0].weights(0, 0) = {std::nan(""), 0.0};
    EXPECT_FALSE(validate(nan_weight).empty());

    Network empty;
    empty.input_dim = 1;
    EXPECT_FALSE(validate(empty).empty());

    Network ragged = good;
    ragged.layers[0].bias.push_back(CScalar{});
    EXPECT_FALSE(validate(ragged).empty());
}

TEST(Backward, LinearNetGradientIsOuterProduct) {
    Network net;
    net.input_dim = 3;
    Layer layer = detail::make_layer(2, 3, Alpha{0.0});
    double w = 0.1;
    for (CScalar& c : layer.weights.data()) c = {w += 0.1, 0.0};
    net.layers.push_back(std::move(layer));

    CVector input = to_cvector({1.5, -2.0, 0.5});
    auto [out, trace] = forward_traced(net, input);
    CVector grad{{0.7, 0.0}, {-0.3, 0.0}};
    GradientSet g = backward(net, trace, grad);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_DOUBLE_EQ(g.layers[0].d_weights(i, j).real(),
                             grad[i].real() * input[j].real());
            EXPECT_EQ(g.layers[0].d_weights(i, j).imag(), 0.0);
        }
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_DOUBLE_EQ(g.layers[0].d_bias[i].real(), grad[i].real());
}

TEST(Backward, AlphaGradientAtZeroAlpha) {
    Network net = single_unit(1.0, 0.0, Alpha{0.0});
    auto [out, trace] = forward_traced(net, to_cvector({2.0}));
    GradientSet g = backward(net, trace, CVector{{1.0, 0.0}});
    EXPECT_DOUBLE_EQ(g.layers[0].d_alpha_re[0], 3.0); // x^2/2 + 1 at x = 2
    GradientSet g2 = backward(net, trace, CVector{{-0.25, 0.0}});
    EXPECT_DOUBLE_EQ(g2.layers[0].d_alpha_re[0], -0.75);
}

TEST(Backward, ShapeErrors) {
    Network net = single_unit(1.0, 0.0, Alpha{0.0});
    auto [out, trace] = forward_traced(net, to_cvector({2.0}));
    EXPECT_THROW(backward(net, trace, CVector{{1.0, 0.0}, {1.0, 0.0}}), ShapeError);
    ForwardTrace broken = trace;
    broken.pre.clear();
    EXPECT_THROW(backward(net, broken, CVector{{1.0, 0.0}}), ShapeError);
    Network deeper = net;
    deeper.layers.push_back(detail::make_layer(1, 1, Alpha{0.0}));
    EXPECT_THROW(backward(deeper, trace, CVector{{1.0, 0.0}}), ShapeError);
}

TEST(Backward, MatchesFiniteDifferencesOnRandomRealNets) {
    std::mt19937_64 rng(2024);
    test::RandomNetOptions opt; // real alpha in [-0.5, 0.5], real output
    std::uniform_real_distribution<double> gdist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto [net, input] = random_checkable_net(rng, opt, EvalMode::RealStrict);
        CVector grad(net.output_dim());
        for (CScalar& gk : grad) gk = {gdist(rng), 0.0};
        double worst = max_backward_fd_error(net, input, grad, EvalMode::RealStrict);
        EXPECT_LE(worst, 1e-5) << "trial " << trial;
    }
}

TEST(Backward, MatchesFiniteDifferencesOnComplexAlphaNets) {
    std::mt19937_64 rng(4096);
    test::RandomNetOptions opt;
    opt.complex_alpha = true;
    opt.mid_projection = true;
    opt.real_output = false; // exercise complex outputs and imaginary adjoints
    std::uniform_real_distribution<double> gdist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto [net, input] = random_checkable_net(rng, opt, EvalMode::ComplexPrincipal);
        CVector grad(net.output_dim());
        for (CScalar& gk : grad) gk = {gdist(rng), gdist(rng)};
        double worst = max_backward_fd_error(net, input, grad, EvalMode::ComplexPrincipal);
        EXPECT_LE(worst, 1e-5) << "trial " << trial;
    }
}

TEST(Backward, ComplexUnitFeedsBothChannelsThroughRealProjection) {
    // hidden unit with alpha = i, then a RealPart-projected combining unit:
    // perturbing the real and imaginary parts of the second-layer weight must
    // both move the (real) output, i.e. both channels of the hidden
    // activation are live
    Network net;
    net.input_dim = 1;
    Layer hidden = detail::make_layer(1, 1, Alpha{0.0, 1.0});
    hidden.weights(0, 0) = 1.0;
    net.layers.push_back(std::move(hidden));
    Layer combine = detail::make_layer(1, 1, Alpha{0.0}, Projection::RealPart);
    combine.weights(0, 0) = {0.8, -0.6};
    net.layers.push_back(std::move(combine));

    CVector input = to_cvector({1.0});
    const double h = 1e-6;
    auto output_at = [&](CScalar w) {
        Network probe = net;
        probe.layers[1].weights(0, 0) = w;
        return forward(probe, input).front().real();
    };
    CScalar w0 = net.layers[1].weights(0, 0);
    double d_re = (output_at(w0 + CScalar{h, 0.0}) - output_at(w0 - CScalar{h, 0.0})) / (2 * h);
    double d_im = (output_at(w0 + CScalar{0.0, h}) - output_at(w0 - CScalar{0.0, h})) / (2 * h);
    EXPECT_GT(std::abs(d_re), 0.1);
    EXPECT_GT(std::abs(d_im), 0.1);

    auto [out, trace] = forward_traced(net, input);
    EXPECT_EQ(out.front().imag(), 0.0);
    GradientSet g = backward(net, trace, CVector{{1.0, 0.0}});
    EXPECT_LE(rel_err(g.layers[1].d_weights(0, 0).real(), d_re), 1e-6);
    EXPECT_LE(rel_err(g.layers[1].d_weights(0, 0).imag(), d_im), 1e-6);
}

TEST(Serialize, RoundTripIsIdentity) {
    std::mt19937_64 rng(99);
    test::RandomNetOptions opt;
    opt.complex_alpha = true;
    for (int trial = 0; trial < 5; ++trial) {
        Network net = test::random_net(rng, opt);
        Network back = deserialize(serialize(net));
        ASSERT_EQ(back.input_dim, net.input_dim);
        ASSERT_EQ(back.layers.size(), net.layers.size());
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            EXPECT_TRUE(back.layers[l].weights == net.layers[l].weights);
            EXPECT_EQ(back.layers[l].bias, net.layers[l].bias);
            EXPECT_EQ(back.layers[l].projection, net.layers[l].projection);
            ASSERT_EQ(back.layers[l].alphas.size(), net.layers[l].alphas.size());
            for (std::size_t i = 0; i < net.layers[l].alphas.size(); ++i)
                EXPECT_TRUE(back.layers[l].alphas[i] == net.layers[l].alphas[i]);
        }
    }
}

TEST(Serialize, DocumentSchema) {
    Network net = single_unit({0.5, -0.25}, {0.1, 0.0}, Alpha{0.0, 2.0}, Projection::RealPart);
    std::string text = serialize(net);
    EXPECT_NE(text.find("\"input_dim\""), std::string::npos);
    EXPECT_NE(text.find("\"layers\""), std::string::npos);
    EXPECT_NE(text.find("\"weights\""), std::string::npos);
    EXPECT_NE(text.find("\"bias\""), std::string::npos);
    EXPECT_NE(text.find("\"alphas\""), std::string::npos);
    EXPECT_NE(text.find("\"real_part\""), std::string::npos);
}

TEST(Serialize, ParseErrors) {
    EXPECT_THROW(deserialize(""), ParseError);
    EXPECT_THROW(deserialize("{\"input_dim\": 1, \"layers\": []}"), ParseError);
    Network net = single_unit(1.0, 0.0, Alpha{0.0});
    std::string text = serialize(net);
    EXPECT_THROW(deserialize(text.substr(0, text.size() / 2)), ParseError);
    EXPECT_THROW(deserialize("{\"layers\": [{}]}"), ParseError);
    // wrong projection string
    std::string bad = text;
    bad.replace(bad.find("\"none\""), 6, "\"imag\"");
    EXPECT_THROW(deserialize(bad), ParseError);
}
