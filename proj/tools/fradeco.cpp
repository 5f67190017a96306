#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fradeco/binary_frames.hpp"
#include "fradeco/errors.hpp"
#include "fradeco/numerics.hpp"
#include "fradeco/power_method.hpp"
#include "fradeco/sampling.hpp"
#include "fradeco/sym_tensor.hpp"
#include "fradeco/variety_lab.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace fradeco;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;      // the computation says "no"
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;  // the computation could not decide

struct GlobalOpts {
    bool emit_json = false;
    int threads = default_thread_count();
};

void emit(const GlobalOpts& g, const json& j, const std::string& text) {
    if (g.emit_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string frame_to_string(const Frame& F) {
    std::ostringstream os;
    write_frame(os, F);
    return os.str();
}

json frame_to_json(const Frame& F) {
    json rows = json::array();
    for (int i = 0; i < F.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < F.r(); ++j) row.push_back(F.V(i, j));
        rows.push_back(row);
    }
    return json{{"n", F.n()}, {"r", F.r()}, {"V", rows}, {"residual", F.residual}};
}

void write_decomposition_file(const std::string& path, const Decomposition& dec) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    write_frame(f, dec.frame);
    f << std::setprecision(17) << "weights:";
    for (Eigen::Index j = 0; j < dec.weights.size(); ++j) f << ' ' << dec.weights[j];
    f << "\nresidual: " << dec.fit_residual << "\n";
}

Decomposition read_decomposition_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    Decomposition dec;
    dec.frame = read_frame(f);
    std::string line;
    bool have_weights = false;
    while (std::getline(f, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "weights:") {
            std::vector<double> w;
            double v;
            while (ls >> v) w.push_back(v);
            dec.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
            have_weights = true;
        } else if (tag == "residual:") {
            ls >> dec.fit_residual;
        }
    }
    if (!have_weights || dec.weights.size() != dec.frame.r())
        throw ParseError("decomposition file '" + path + "' is missing a valid weights line");
    return dec;
}

int cmd_sample(const GlobalOpts& g, int r, int n, int count, std::uint64_t seed,
               const std::string& out_dir) {
    json frames = json::array();
    std::ostringstream text;
    for (int k = 0; k < count; ++k) {
        Frame F = sample_frame(r, n, mix_seed(seed, static_cast<std::uint64_t>(k)));
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            char name[64];
            std::snprintf(name, sizeof(name), "frame_%04d.txt", k + 1);
            const std::string path = (fs::path(out_dir) / name).string();
            write_frame_file(path, F);
            text << path << " residual=" << F.residual << "\n";
            frames.push_back({{"file", path}, {"residual", F.residual}});
        } else {
            text << frame_to_string(F);
            frames.push_back(frame_to_json(F));
        }
    }
    emit(g, json{{"command", "sample"}, {"frames", frames}}, text.str());
    return kExitOk;
}

int cmd_synth(const GlobalOpts& g, const std::string& frame_path, const std::string& weights_str,
              int d, const std::string& out_path) {
    const Frame F = read_frame_file(frame_path);
    std::vector<double> w;
    {
        std::string s = weights_str;
        for (auto& c : s)
            if (c == ',') c = ' ';
        std::istringstream ls(s);
        double v;
        while (ls >> v) w.push_back(v);
    }
    if (static_cast<int>(w.size()) != F.r())
        throw ParseError("need exactly r = " + std::to_string(F.r()) + " weights");
    const Eigen::VectorXd lam = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    const SymTensor T = synthesize(F.V, lam, d);
    std::ostringstream text;
    if (!out_path.empty()) {
        write_symtensor_file(out_path, T);
        text << "wrote " << out_path << "\n";
    } else {
        write_symtensor(text, T);
    }
    json j{{"command", "synth"}, {"n", T.n()}, {"d", T.d()}, {"coord_scale", T.coord_scale()}};
    if (!out_path.empty()) j["file"] = out_path;
    emit(g, j, text.str());
    return kExitOk;
}

int cmd_decompose(const GlobalOpts& g, const std::string& in_path, int rank, double tol,
                  const std::string& out_path) {
    const SymTensor T = read_symtensor_file(in_path);
    if (T.n() != 2) {
        std::cerr << "decompose: only binary tensors (n=2) are supported\n";
        return kExitUsage;
    }
    std::ostringstream text;
    json j{{"command", "decompose"}, {"d", T.d()}};
    int r = rank;
    if (r <= 0) {
        const FradecoRankResult rr = fradeco_rank(binary_coords(T));
        json reports = json::array();
        for (const auto& rep : rr.reports) {
            text << "M_" << rep.r << ": rank " << rep.numerical_rank
                 << (rep.deficient ? " (deficient)" : "") << "\n";
            reports.push_back({{"r", rep.r},
                               {"rank", rep.numerical_rank},
                               {"deficient", rep.deficient},
                               {"gap_ratio", rep.gap_ratio}});
        }
        j["rank_reports"] = reports;
        if (rr.indeterminate) {
            text << "indeterminate: singular-value gap failure\n";
            j["indeterminate"] = true;
            emit(g, j, text.str());
            return kExitIndeterminate;
        }
        if (!rr.first_deficient) {
            text << "no deficient M_r found: not fradeco for any tested rank\n";
            j["first_deficient"] = nullptr;
            emit(g, j, text.str());
            return kExitNegative;
        }
        r = *rr.first_deficient;
        text << "fradeco rank: " << r << "\n";
        j["first_deficient"] = r;
    }
    try {
        const BinaryDecomposition bd = decompose_binary(T, r, tol);
        j["r"] = r;
        j["complex_roots"] = bd.complex_roots;
        j["fit_residual"] = bd.fit_residual;
        j["weight_condition"] = bd.weight_condition;
        if (bd.complex_roots) {
            text << "complex roots: decomposition is not real (fit residual " << bd.fit_residual
                 << ")\n";
            emit(g, j, text.str());
            return kExitNegative;
        }
        if (!out_path.empty()) write_decomposition_file(out_path, bd.dec);
        text << frame_to_string(bd.dec.frame);
        text << std::setprecision(17) << "weights:";
        for (Eigen::Index q = 0; q < bd.dec.weights.size(); ++q) text << ' ' << bd.dec.weights[q];
        text << "\nresidual: " << bd.dec.fit_residual << "\n";
        j["frame"] = frame_to_json(bd.dec.frame);
        j["weights"] = std::vector<double>(bd.dec.weights.data(),
                                           bd.dec.weights.data() + bd.dec.weights.size());
        emit(g, j, text.str());
        return bd.dec.fit_residual <= tol ? kExitOk : kExitNegative;
    } catch (const NotRankDeficientError& e) {
        text << e.what() << "\n";
        j["error"] = e.what();
        emit(g, j, text.str());
        return kExitNegative;
    } catch (const SingularPointError& e) {
        text << e.what() << "\n";
        j["error"] = e.what();
        emit(g, j, text.str());
        return kExitNegative;
    } catch (const RepeatedRootsError& e) {
        text << e.what() << "\n";
        j["error"] = e.what();
        emit(g, j, text.str());
        return kExitNegative;
    } catch (const IndeterminateError& e) {
        text << e.what() << "\n";
        j["error"] = e.what();
        emit(g, j, text.str());
        return kExitIndeterminate;
    }
}

int cmd_eigen(const GlobalOpts& g, const std::string& in_path, int trials, std::uint64_t seed) {
    const SymTensor T = read_symtensor_file(in_path);
    const int n_trials = trials > 0 ? trials : 100 * T.n();
    const auto clusters = robust_eigenvectors(T, n_trials, seed);
    std::ostringstream text;
    json arr = json::array();
    text << std::setprecision(12);
    for (const auto& c : clusters) {
        for (Eigen::Index i = 0; i < c.x.size(); ++i) text << c.x[i] << ' ';
        text << " basin=" << c.basin_count << " attracting=" << (c.attracting ? 1 : 0)
             << " radius=" << c.spectral_radius << " value=" << c.eigenvalue_proxy << "\n";
        arr.push_back({{"x", std::vector<double>(c.x.data(), c.x.data() + c.x.size())},
                       {"basin_count", c.basin_count},
                       {"attracting", c.attracting},
                       {"spectral_radius", c.spectral_radius},
                       {"eigenvalue_proxy", c.eigenvalue_proxy}});
    }
    text << "clusters: " << clusters.size() << "\n";
    emit(g, json{{"command", "eigen"}, {"trials", n_trials}, {"clusters", arr}}, text.str());
    return kExitOk;
}

int cmd_hilbert(const GlobalOpts& g, int r, int n, int d, int e, int samples, std::uint64_t seed) {
    HilbertOptions opts;
    opts.threads = g.threads;
    const HilbertReport rep = hilbert_value(r, n, d, e, samples, seed, opts);
    std::ostringstream text;
    text << "ambient_dim: " << rep.ambient_dim << "\nsamples: " << rep.samples
         << "\nkernel_dim: " << rep.kernel_dim << "\ngap_ratio: " << rep.gap_ratio << "\n";
    const int tail = std::min<int>(6, static_cast<int>(rep.singular_values.size()));
    text << "sv_tail:";
    for (int i = static_cast<int>(rep.singular_values.size()) - tail;
         i < static_cast<int>(rep.singular_values.size()); ++i)
        text << ' ' << rep.singular_values[static_cast<size_t>(i)];
    text << "\n";
    if (rep.indeterminate) text << "indeterminate: gap below 1e3\n";
    text << "result: " << rep.kernel_dim << "\n";
    json j{{"command", "hilbert"},     {"r", r},
           {"n", n},                   {"d", d},
           {"e", e},                   {"ambient_dim", rep.ambient_dim},
           {"samples", rep.samples},   {"kernel_dim", rep.kernel_dim},
           {"gap_ratio", rep.gap_ratio}, {"indeterminate", rep.indeterminate},
           {"result", rep.kernel_dim}};
    emit(g, j, text.str());
    return rep.indeterminate ? kExitIndeterminate : kExitOk;
}

int cmd_dim(const GlobalOpts& g, int r, int n, int d, std::uint64_t seed, int samples) {
    const TangentResult tr = tangent_dim(r, n, d, seed, samples);
    const int exp_dim = expected_dim(r, n, d);
    std::ostringstream text;
    text << tr.dim << "\n";
    text << "expected: " << exp_dim << "\ngap_ratio: " << tr.gap_ratio << "\nresult: " << tr.dim
         << "\n";
    emit(g,
         json{{"command", "dim"},
              {"r", r},
              {"n", n},
              {"d", d},
              {"tangent_dim", tr.dim},
              {"expected_dim", exp_dim},
              {"gap_ratio", tr.gap_ratio},
              {"result", tr.dim}},
         text.str());
    return kExitOk;
}

int cmd_check_eq(const GlobalOpts& g, const std::string& name, const std::string& in_path,
                 double tol) {
    const SymTensor T = read_symtensor_file(in_path);
    const KnownEquation& eq = known_equation(name);
    const double value = eq(T);
    const double scale = std::max(T.coord_scale(), 1e-300);
    double denom = 1.0;
    for (int i = 0; i < eq.degree; ++i) denom *= scale;
    const double normalized = std::abs(value) / denom;
    const bool vanishes = normalized <= tol;
    std::ostringstream text;
    text << "value: " << value << "\nnormalized: " << normalized << "\nvanishes: " << (vanishes ? 1 : 0)
         << "\nresult: " << (vanishes ? 1 : 0) << "\n";
    emit(g,
         json{{"command", "check-eq"},
              {"name", name},
              {"value", value},
              {"normalized", normalized},
              {"vanishes", vanishes},
              {"result", vanishes ? 1 : 0}},
         text.str());
    return vanishes ? kExitOk : kExitNegative;
}

int cmd_verify(const GlobalOpts& g, const std::string& in_path, const std::string& decomp_path,
               double tol) {
    const SymTensor T = read_symtensor_file(in_path);
    const Decomposition dec = read_decomposition_file(decomp_path);
    const VerifyReport rep = verify_decomposition(T, dec, tol);
    std::ostringstream text;
    text << "coord_residual: " << rep.coord_residual << "\nframe_residual: " << rep.frame_residual
         << "\n" << (rep.pass ? "pass" : "fail") << "\n";
    emit(g,
         json{{"command", "verify"},
              {"coord_residual", rep.coord_residual},
              {"frame_residual", rep.frame_residual},
              {"pass", rep.pass}},
         text.str());
    return rep.pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fradeco: frame decompositions of symmetric tensors"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_flag("--json", g.emit_json, "emit a machine-readable JSON report");
    app.add_option("--threads", g.threads, "worker threads (default: FRADECO_THREADS or 1)");

    int r = 0, n = 0, d = 0, e = 0, count = 1, trials = 0, samples = 0, rank = 0;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::string in_path, out_path, frame_path, weights, eq_name, decomp_path;

    auto* sample = app.add_subcommand("sample", "sample funtf frames");
    sample->add_option("--r", r)->required();
    sample->add_option("--n", n)->required();
    sample->add_option("--count", count);
    sample->add_option("--seed", seed);
    sample->add_option("--out", out_path, "directory for frame files");

    auto* synth = app.add_subcommand("synth", "synthesize a tensor from a frame and weights");
    synth->add_option("--frame", frame_path)->required();
    synth->add_option("--weights", weights, "comma- or space-separated weights")->required();
    synth->add_option("--d", d)->required();
    synth->add_option("--out", out_path);

    auto* decompose = app.add_subcommand("decompose", "frame-decompose a binary tensor");
    decompose->add_option("--in", in_path)->required();
    decompose->add_option("--rank", rank, "force the frame rank r (default: detect)");
    decompose->add_option("--tol", tol);
    decompose->add_option("--out", out_path);

    auto* eigen = app.add_subcommand("eigen", "robust eigenvector clusters of a tensor");
    eigen->add_option("--in", in_path)->required();
    eigen->add_option("--trials", trials);
    eigen->add_option("--seed", seed);

    auto* hilbert = app.add_subcommand("hilbert", "numerical Hilbert function value dim I_e");
    hilbert->add_option("--r", r)->required();
    hilbert->add_option("--n", n)->required();
    hilbert->add_option("--d", d)->required();
    hilbert->add_option("--e", e)->required();
    hilbert->add_option("--samples", samples);
    hilbert->add_option("--seed", seed);

    auto* dim = app.add_subcommand("dim", "numerical tangent dimension of the fradeco variety");
    dim->add_option("--r", r)->required();
    dim->add_option("--n", n)->required();
    dim->add_option("--d", d)->required();
    dim->add_option("--seed", seed);
    dim->add_option("--samples", samples);

    auto* check = app.add_subcommand("check-eq", "evaluate a known defining equation");
    check->add_option("--name", eq_name)->required();
    check->add_option("--in", in_path)->required();
    check->add_option("--tol", tol);

    auto* verify = app.add_subcommand("verify", "verify a decomposition against a tensor");
    verify->add_option("--in", in_path)->required();
    verify->add_option("--decomp", decomp_path)->required();
    verify->add_option("--tol", tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sample->parsed()) return cmd_sample(g, r, n, count, seed, out_path);
        if (synth->parsed()) return cmd_synth(g, frame_path, weights, d, out_path);
        if (decompose->parsed()) return cmd_decompose(g, in_path, rank, tol, out_path);
        if (eigen->parsed()) return cmd_eigen(g, in_path, trials, seed);
        if (hilbert->parsed()) return cmd_hilbert(g, r, n, d, e, samples, seed);
        if (dim->parsed()) return cmd_dim(g, r, n, d, seed, samples == 0 ? 3 : samples);
        if (check->parsed()) return cmd_check_eq(g, eq_name, in_path, tol);
        if (verify->parsed()) return cmd_verify(g, in_path, decomp_path, tol);
    } catch (const IndeterminateError& err) {
        std::cerr << "indeterminate: " << err.what() << "\n";
        return kExitIndeterminate;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const ShapeMismatchError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const UnknownEquationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}
