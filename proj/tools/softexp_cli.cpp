// Command-line surface: kernel evaluation, plot-data emission, exact network
// construction, forward passes, training, and gradient checking.
//
// Exit codes: 0 success, 1 usage error, 2 domain/numeric error, 3 I/O or
// parse error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <softexp/softexp.hpp>

namespace {

using softexp::Alpha;
using softexp::CScalar;
using softexp::EvalMode;
using softexp::detail::fmt17;

std::vector<double> parse_row(const std::string& text) {
    std::vector<double> row;
    for (std::string_view field : softexp::detail::split_csv(text)) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size())
            throw CLI::ValidationError("cannot parse number '" + std::string(field) + "'");
        row.push_back(v);
    }
    if (row.empty()) throw CLI::ValidationError("expected a comma-separated list of numbers");
    return row;
}

EvalMode parse_mode(const std::string& mode) {
    if (mode == "real") return EvalMode::RealStrict;
    if (mode == "complex") return EvalMode::ComplexPrincipal;
    throw CLI::ValidationError("--mode must be 'real' or 'complex'");
}

Alpha parse_alpha(const std::string& text) {
    std::vector<double> parts = parse_row(text);
    if (parts.size() > 2) throw CLI::ValidationError("--alpha takes <re> or <re>,<im>");
    return Alpha{parts[0], parts.size() == 2 ? parts[1] : 0.0};
}

std::size_t grid_count(double min, double max, double step) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(min) || !std::isfinite(max) ||
        max < min)
        throw CLI::ValidationError("grid requires min <= max and step > 0");
    double d = (max - min) / step;
    double r = std::round(d);
    long long n = std::abs(d - r) < 1e-9 * std::max(1.0, std::abs(d))
                      ? static_cast<long long>(r)
                      : static_cast<long long>(std::floor(d));
    return static_cast<std::size_t>(n) + 1;
}

std::string format_output(const softexp::CVector& out) {
    std::string text;
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k) text += ",";
        text += fmt17(out[k].real());
        if (out[k].imag() != 0.0) {
            if (out[k].imag() >= 0.0) text += "+";
            text += fmt17(out[k].imag()) + "i";
        }
    }
    return text;
}

std::vector<double> read_input_row(const std::string& spec) {
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        if (!in) throw softexp::IoError("cannot open " + spec);
        std::string line;
        while (std::getline(in, line)) {
            if (softexp::detail::trim(line).empty()) continue;
            try {
                return parse_row(line);
            } catch (const CLI::ValidationError&) {
                continue; // header line
            }
        }
        throw softexp::ParseError(spec + ": no numeric row found");
    }
    return parse_row(spec);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"soft exponential activation toolkit"};
    app.require_subcommand(1);
    std::ostream& out = std::cout;

    // ---- eval ----------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate the activation at one point");
    std::string eval_alpha, eval_mode = "real";
    double eval_x = 0.0;
    eval->add_option("--alpha", eval_alpha, "alpha as <re> or <re>,<im>")->required();
    eval->add_option("--x", eval_x, "input value")->required();
    eval->add_option("--mode", eval_mode, "real|complex (default real)");
    eval->callback([&] {
        Alpha a = parse_alpha(eval_alpha);
        CScalar v = a.is_real() ? softexp::softexp(a.re, eval_x, parse_mode(eval_mode))
                                : softexp::softexp_complex(a, {eval_x, 0.0});
        if (v.imag() == 0.0)
            out << fmt17(v.real()) << "\n";
        else
            out << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
    });

    // ---- grad ----------------------------------------------------------
    auto* grad = app.add_subcommand("grad", "evaluate both activation derivatives");
    double grad_alpha = 0.0, grad_x = 0.0;
    grad->add_option("--alpha", grad_alpha, "real alpha")->required();
    grad->add_option("--x", grad_x, "input value")->required();
    grad->callback([&] {
        out << "df_dx,df_dalpha\n"
            << fmt17(softexp::dsoftexp_dx(grad_alpha, grad_x)) << ","
            << fmt17(softexp::dsoftexp_dalpha(grad_alpha, grad_x)) << "\n";
    });

    // ---- plot-activation -------------------------------------------------
    auto* plot_act = app.add_subcommand("plot-activation",
                                        "CSV of f(alpha, x) over a grid, in-domain rows only");
    double a_min = -1.0, a_max = 1.0, a_step = 0.1;
    double x_min = -5.0, x_max = 5.0, x_step = 0.1;
    plot_act->add_option("--alpha-min", a_min);
    plot_act->add_option("--alpha-max", a_max);
    plot_act->add_option("--alpha-step", a_step);
    plot_act->add_option("--x-min", x_min);
    plot_act->add_option("--x-max", x_max);
    plot_act->add_option("--x-step", x_step);
    plot_act->callback([&] {
        std::size_t na = grid_count(a_min, a_max, a_step);
        std::size_t nx = grid_count(x_min, x_max, x_step);
        out << "alpha,x,f\n";
        for (std::size_t ia = 0; ia < na; ++ia) {
            double a = a_min + static_cast<double>(ia) * a_step;
            for (std::size_t ix = 0; ix < nx; ++ix) {
                double x = x_min + static_cast<double>(ix) * x_step;
                if (a < 0.0 && !(x > softexp::real_domain_lower_bound(a))) continue;
                out << fmt17(a) << "," << fmt17(x) << "," << fmt17(softexp::softexp(a, x))
                    << "\n";
            }
        }
    });

    // ---- plot-addmul -----------------------------------------------------
    auto* plot_am = app.add_subcommand("plot-addmul",
                                       "CSV of the add/multiply interpolation over beta");
    double am_p = 3.0, am_q = 7.0, b_min = 0.0, b_max = 1.0, b_step = 0.01;
    plot_am->add_option("--p", am_p);
    plot_am->add_option("--q", am_q);
    plot_am->add_option("--beta-min", b_min);
    plot_am->add_option("--beta-max", b_max);
    plot_am->add_option("--beta-step", b_step);
    plot_am->callback([&] {
        std::size_t nb = grid_count(b_min, b_max, b_step);
        out << "beta,h\n";
        for (std::size_t ib = 0; ib < nb; ++ib) {
            double b = b_min + static_cast<double>(ib) * b_step;
            try {
                double h = softexp::addmul(b, am_p, am_q);
                out << fmt17(b) << "," << fmt17(h) << "\n";
            } catch (const softexp::DomainError&) {
                // out-of-domain beta: no row
            }
        }
    });

    // ---- plot-fourier ------------------------------------------------------
    auto* plot_f = app.add_subcommand(
        "plot-fourier", "CSV of the complex activation for imaginary alpha values");
    std::string ai_list = "0.5,1,1.5,2,2.5,3";
    double fx_min = -5.0, fx_max = 5.0, fx_step = 0.1;
    plot_f->add_option("--alpha-i-list", ai_list, "comma-separated nonzero alpha_i values");
    plot_f->add_option("--x-min", fx_min);
    plot_f->add_option("--x-max", fx_max);
    plot_f->add_option("--x-step", fx_step);
    plot_f->callback([&] {
        std::vector<double> ais = parse_row(ai_list);
        for (double ai : ais)
            if (ai == 0.0) throw softexp::DomainError("alpha_i must be nonzero");
        std::size_t nx = grid_count(fx_min, fx_max, fx_step);
        out << "alpha_i,x,re,im\n";
        for (double ai : ais) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                double x = fx_min + static_cast<double>(ix) * fx_step;
                CScalar v = softexp::softexp_complex(Alpha{0.0, ai}, {x, 0.0});
                out << fmt17(ai) << "," << fmt17(x) << "," << fmt17(v.real()) << ","
                    << fmt17(v.imag()) << "\n";
            }
        }
    });

    // ---- build -----------------------------------------------------------
    auto* build = app.add_subcommand("build", "construct an exact network and write it");
    std::string kind, build_out, source = "sq-distance";
    std::size_t build_n = 2;
    double rbf_r = 1.0, offset = 0.0;
    std::string coeffs_str, freqs_str, sin_str, cos_str;
    build->add_option("--kind", kind,
                      "inner-product|sq-distance|euclidean|polynomial|rbf|fourier")
        ->required();
    build->add_option("--n", build_n, "vector dimension (pair networks)");
    build->add_option("--coeffs", coeffs_str, "polynomial coefficients c0,c1,...");
    build->add_option("--r", rbf_r, "RBF radius weight");
    build->add_option("--source", source, "rbf source: inner-product|sq-distance");
    build->add_option("--freqs", freqs_str, "fourier frequencies w1,w2,...");
    build->add_option("--sin-coeffs", sin_str, "fourier sine coefficients");
    build->add_option("--cos-coeffs", cos_str, "fourier cosine coefficients");
    build->add_option("--offset", offset, "fourier constant offset");
    build->add_option("--out", build_out, "output network path")->required();
    build->callback([&] {
        softexp::Network net;
        if (kind == "inner-product") {
            net = softexp::build_inner_product(build_n);
        } else if (kind == "sq-distance") {
            net = softexp::build_squared_distance(build_n);
        } else if (kind == "euclidean") {
            net = softexp::build_euclidean_distance(build_n);
        } else if (kind == "polynomial") {
            if (coeffs_str.empty()) throw CLI::ValidationError("polynomial needs --coeffs");
            net = softexp::build_polynomial(parse_row(coeffs_str));
        } else if (kind == "rbf") {
            softexp::RbfSource src;
            if (source == "inner-product")
                src = softexp::RbfSource::InnerProduct;
            else if (source == "sq-distance")
                src = softexp::RbfSource::SquaredDistance;
            else
                throw CLI::ValidationError("--source must be inner-product or sq-distance");
            net = softexp::build_rbf(build_n, rbf_r, src);
        } else if (kind == "fourier") {
            if (freqs_str.empty()) throw CLI::ValidationError("fourier needs --freqs");
            softexp::FourierSpec spec;
            spec.freqs = parse_row(freqs_str);
            spec.sin_coeffs = sin_str.empty() ? std::vector<double>(spec.freqs.size(), 0.0)
                                              : parse_row(sin_str);
            spec.cos_coeffs = cos_str.empty() ? std::vector<double>(spec.freqs.size(), 0.0)
                                              : parse_row(cos_str);
            spec.offset = offset;
            net = softexp::build_fourier(spec);
        } else {
            throw CLI::ValidationError("unknown --kind '" + kind + "'");
        }
        softexp::save_network(net, build_out);
    });

    // ---- run -------------------------------------------------------------
    auto* run = app.add_subcommand("run", "evaluate a saved network on one input");
    std::string run_net, run_input, run_mode = "real";
    run->add_option("--net", run_net, "network document path")->required();
    run->add_option("--input", run_input, "comma-separated row, or a file holding one")
        ->required();
    run->add_option("--mode", run_mode, "real|complex (default real)");
    run->callback([&] {
        softexp::Network net = softexp::load_network(run_net);
        std::vector<double> row = read_input_row(run_input);
        softexp::CVector result = softexp::forward(net, row, parse_mode(run_mode));
        out << format_output(result) << "\n";
    });

    // ---- train -----------------------------------------------------------
    auto* train = app.add_subcommand("train", "gradient descent on a CSV dataset");
    std::string data_path, widths_str, train_out, train_mode = "real";
    double lr = 0.01, l1w = 0.0, l1a = 0.0;
    std::size_t epochs = 1000, batch = 0, seed = 0;
    train->add_option("--data", data_path, "dataset CSV (columns x0..,y0..)")->required();
    train->add_option("--widths", widths_str, "layer widths, e.g. 2,4,1")->required();
    train->add_option("--lr", lr, "learning rate");
    train->add_option("--epochs", epochs, "epoch count");
    train->add_option("--batch", batch, "mini-batch size (0 = full batch)");
    train->add_option("--l1w", l1w, "L1 strength on weights");
    train->add_option("--l1a", l1a, "L1 strength on alpha components");
    train->add_option("--seed", seed, "RNG seed");
    train->add_option("--mode", train_mode, "real|complex (default real)");
    train->add_option("--out", train_out, "path for the trained network")->required();
    train->callback([&] {
        softexp::Dataset data = softexp::load_dataset_csv(data_path);
        std::vector<std::size_t> widths;
        for (double w : parse_row(widths_str)) {
            if (w < 1.0 || w != std::floor(w))
                throw CLI::ValidationError("--widths must be positive integers");
            widths.push_back(static_cast<std::size_t>(w));
        }
        softexp::Network net = softexp::init_network(widths, seed);
        softexp::TrainConfig cfg;
        cfg.learning_rate = lr;
        cfg.epochs = epochs;
        cfg.batch_size = batch == 0 ? std::numeric_limits<std::size_t>::max() : batch;
        cfg.l1_weights = l1w;
        cfg.l1_alpha = l1a;
        cfg.seed = seed;
        cfg.mode = parse_mode(train_mode);
        softexp::TrainReport report = softexp::fit(net, data, cfg);
        out << "epoch,loss,zero_weights,zero_alpha_components\n";
        for (std::size_t e = 0; e < report.epoch_loss.size(); ++e)
            out << (e + 1) << "," << fmt17(report.epoch_loss[e]) << ","
                << report.epoch_zero_weights[e] << "," << report.epoch_zero_alpha_components[e]
                << "\n";
        softexp::save_network(net, train_out);
    });

    // ---- gradcheck ---------------------------------------------------------
    auto* gradcheck = app.add_subcommand("gradcheck",
                                         "compare backward() to finite differences");
    std::string gc_net, gc_input, gc_target, gc_mode = "real";
    double gc_step = 1e-6;
    bool gc_failed = false;
    gradcheck->add_option("--net", gc_net, "network document path")->required();
    gradcheck->add_option("--input", gc_input, "comma-separated input row")->required();
    gradcheck->add_option("--target", gc_target, "target row (default zeros)");
    gradcheck->add_option("--step", gc_step, "finite-difference step");
    gradcheck->add_option("--mode", gc_mode, "real|complex (default real)");
    gradcheck->callback([&] {
        softexp::Network net = softexp::load_network(gc_net);
        std::vector<double> input = parse_row(gc_input);
        std::vector<double> target = gc_target.empty()
                                         ? std::vector<double>(net.output_dim(), 0.0)
                                         : parse_row(gc_target);
        double err = softexp::grad_check(net, input, target, gc_step, parse_mode(gc_mode));
        out << fmt17(err) << "\n";
        gc_failed = !(err <= 1e-4);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const softexp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const softexp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const softexp::Error& e) {
        // domain, non-finite, overflow, divergence, invalid argument
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return gc_failed ? 2 : 0;
}
