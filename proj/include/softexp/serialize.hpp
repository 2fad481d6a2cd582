#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "network.hpp"

namespace softexp {

namespace detail {

inline nlohmann::json pair_json(CScalar v) {
    return nlohmann::json::array({v.real(), v.imag()});
}

inline CScalar pair_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace detail

/// Serializes a network to its document form: a JSON object with `input_dim`
/// and `layers[]`, each layer carrying row-major `weights` ([re, im] pairs),
/// `bias`, `alphas`, and `projection` ("none" | "real_part"). Numbers are
/// written with shortest round-trip precision, so parameters survive a
/// round trip bit-exactly.
inline std::string serialize(const Network& net) {
    std::vector<std::string> issues = validate(net);
    if (!issues.empty())
        throw InvalidArgument("cannot serialize invalid network: " + issues.front());
    nlohmann::json doc;
    doc["input_dim"] = net.input_dim;
    doc["layers"] = nlohmann::json::array();
    for (const Layer& layer : net.layers) {
        nlohmann::json jl;
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < layer.in_dim(); ++j)
                row.push_back(detail::pair_json(layer.weights(i, j)));
            rows.push_back(std::move(row));
        }
        jl["weights"] = std::move(rows);
        nlohmann::json bias = nlohmann::json::array();
        for (const CScalar& b : layer.bias) bias.push_back(detail::pair_json(b));
        jl["bias"] = std::move(bias);
        nlohmann::json alphas = nlohmann::json::array();
        for (const Alpha& a : layer.alphas) alphas.push_back(detail::pair_json(a.value()));
        jl["alphas"] = std::move(alphas);
        jl["projection"] = layer.projection == Projection::RealPart ? "real_part" : "none";
        doc["layers"].push_back(std::move(jl));
    }
    return doc.dump() + "\n";
}

/// Parses a network document; throws ParseError with a field diagnostic on
/// malformed input, including structurally invalid networks.
inline Network deserialize(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("network document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("input_dim") || !doc.contains("layers"))
        throw ParseError("network document: expected object with input_dim and layers");
    if (!doc["input_dim"].is_number_unsigned() || doc["input_dim"].get<std::size_t>() < 1)
        throw ParseError("input_dim: expected a positive integer");
    if (!doc["layers"].is_array() || doc["layers"].empty())
        throw ParseError("layers: expected a non-empty array");

    Network net;
    net.input_dim = doc["input_dim"].get<std::size_t>();
    for (std::size_t l = 0; l < doc["layers"].size(); ++l) {
        const nlohmann::json& jl = doc["layers"][l];
        const std::string tag = "layer " + std::to_string(l);
        if (!jl.is_object() || !jl.contains("weights") || !jl.contains("bias") ||
            !jl.contains("alphas") || !jl.contains("projection"))
            throw ParseError(tag + ": expected weights, bias, alphas, projection");
        const nlohmann::json& rows = jl["weights"];
        if (!rows.is_array() || rows.empty())
            throw ParseError(tag + ".weights: expected a non-empty array of rows");
        std::size_t out = rows.size();
        std::size_t in = rows[0].is_array() ? rows[0].size() : 0;
        if (in == 0)
            throw ParseError(tag + ".weights: rows must be non-empty arrays");
        Layer layer;
        layer.weights = CMatrix(out, in);
        for (std::size_t i = 0; i < out; ++i) {
            if (!rows[i].is_array() || rows[i].size() != in)
                throw ParseError(tag + ".weights: ragged rows");
            for (std::size_t j = 0; j < in; ++j)
                layer.weights(i, j) =
                    detail::pair_from_json(rows[i][j], tag + ".weights[" + std::to_string(i) + "]");
        }
        const nlohmann::json& bias = jl["bias"];
        if (!bias.is_array() || bias.size() != out)
            throw ParseError(tag + ".bias: expected " + std::to_string(out) + " pairs");
        layer.bias.resize(out);
        for (std::size_t i = 0; i < out; ++i)
            layer.bias[i] = detail::pair_from_json(bias[i], tag + ".bias");
        const nlohmann::json& alphas = jl["alphas"];
        if (!alphas.is_array() || alphas.size() != out)
            throw ParseError(tag + ".alphas: expected " + std::to_string(out) + " pairs");
        layer.alphas.reserve(out);
        for (std::size_t i = 0; i < out; ++i) {
            CScalar a = detail::pair_from_json(alphas[i], tag + ".alphas");
            try {
                layer.alphas.emplace_back(a);
            } catch (const NonFiniteError&) {
                throw ParseError(tag + ".alphas: non-finite value");
            }
        }
        const nlohmann::json& proj = jl["projection"];
        if (!proj.is_string())
            throw ParseError(tag + ".projection: expected a string");
        if (proj == "none")
            layer.projection = Projection::None;
        else if (proj == "real_part")
            layer.projection = Projection::RealPart;
        else
            throw ParseError(tag + ".projection: expected \"none\" or \"real_part\"");
        net.layers.push_back(std::move(layer));
    }
    std::vector<std::string> issues = validate(net);
    if (!issues.empty())
        throw ParseError("network document: " + issues.front());
    return net;
}

inline void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << serialize(net);
    if (!out) throw IoError("failed writing " + path);
}

inline Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

} // namespace softexp
