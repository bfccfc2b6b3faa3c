// Copyright 2026 The qgns Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// qgns command-line tool: graph states, QGNN training and evaluation,
// Laplacian filters, swap tests and pooling readouts.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qgns/io.hpp>
#include <qgns/qgns.hpp>

namespace {

using json = nlohmann::json;
using namespace qgns;

struct CommonOptions {
    std::uint64_t seed{0};
    std::uint32_t shots{0};
    double tol{1e-10};
    std::string out;
    std::string convention{"cp"};
};

struct Options {
    CommonOptions common;
    std::vector<std::string> graphs;
    std::string data;
    std::string formalism{"sequential"};
    std::uint32_t layers{1};
    std::size_t epochs{100};
    double lr{TrainConfig{}.learning_rate};
    std::string grad{"fd"};
    std::string loss{"bce"};
    std::vector<double> coeffs;
    std::string vector_path;
    std::string checkpoint;
};

void add_common(CLI::App *cmd, CommonOptions &c) {
    cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--shots", c.shots, "Shots per estimate (0 = exact)")
        ->capture_default_str();
    cmd->add_option("--tol", c.tol, "Numerical tolerance")->capture_default_str();
    cmd->add_option("--out", c.out, "Write output here instead of stdout");
    cmd->add_option("--convention", c.convention, "Edge entangler")
        ->check(CLI::IsMember({"cp", "ising"}))
        ->capture_default_str();
}

void add_graph(CLI::App *cmd, Options &o, bool required = true) {
    auto *opt = cmd->add_option("--graph", o.graphs, "qgraph edge-list file")
                    ->expected(1)
                    ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    if (required) {
        opt->required();
    }
}

void emit(const CommonOptions &c, const std::string &text) {
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        io::write_file(c.out, text);
    }
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

EdgeConvention convention(const CommonOptions &c) {
    return io::convention_from_string(c.convention);
}

void cmd_state_build(const Options &o) {
    const Graph g = io::read_graph(o.graphs.front());
    emit(o.common, io::state_dump(build_graph_state(g, convention(o.common))));
}

void cmd_state_verify(const Options &o) {
    const Graph g = io::read_graph(o.graphs.front());
    const EdgeConvention c = convention(o.common);
    const auto report = verify_stabilizers(g, build_graph_state(g, c), o.common.tol);
    emit(o.common,
         io::stabilizer_report_json(o.graphs.front(), c, report).dump(2) + "\n");
}

void cmd_state_sample(const Options &o) {
    require(o.common.shots > 0, ErrorKind::InvalidArgument,
            "state sample needs --shots > 0");
    const Graph g = io::read_graph(o.graphs.front());
    const State s = build_graph_state(g, convention(o.common));
    Rng rng(o.common.seed);
    const auto counts = sample_counts(s, o.common.shots, rng);
    std::ostringstream out;
    out << "# qgns state sample seed=" << o.common.seed
        << " shots=" << o.common.shots << '\n';
    out << "bitstring,count\n";
    for (const auto &[index, count] : counts) {
        std::string bits;
        for (std::size_t q = g.n_vertices(); q-- > 0;) {
            bits.push_back(((index >> q) & 1U) ? '1' : '0');
        }
        out << bits << ',' << count << '\n';
    }
    emit(o.common, out.str());
}

TrainConfig train_config(const Options &o) {
    TrainConfig cfg;
    cfg.learning_rate = o.lr;
    cfg.epochs = o.epochs;
    cfg.seed = o.common.seed;
    cfg.shots = o.common.shots;
    cfg.grad = o.grad == "pshift" ? GradMethod::ParamShift : GradMethod::FiniteDiff;
    cfg.loss = o.loss == "mse" ? LossKind::Mse : LossKind::Bce;
    return cfg;
}

void cmd_model_train(const Options &o) {
    const io::DatasetFile ds = io::read_dataset(o.data);
    ModelSpec m = make_model(ds.graph, o.layers, io::formalism_from_string(o.formalism));
    m.convention = convention(o.common);
    randomize_parameters(m, o.common.seed);
    const TrainConfig cfg = train_config(o);
    const FitResult r = fit(m, ds.data, cfg);

    std::ostringstream out;
    out << "# qgns model train seed=" << cfg.seed << " shots=" << cfg.shots
        << " formalism=" << to_string(m.formalism) << " layers=" << m.layers
        << " convention=" << to_string(m.convention) << " lr=" << fmt(cfg.learning_rate)
        << " epochs=" << cfg.epochs << " grad=" << o.grad << " loss=" << o.loss;
    if (!r.fallback_reason.empty()) {
        out << " grad_fallback=fd";
    }
    out << '\n' << "epoch,loss,accuracy\n";
    for (const auto &h : r.history) {
        out << h.epoch << ',' << fmt(h.loss) << ',' << fmt(h.accuracy) << '\n';
    }
    emit(o.common, out.str());
    if (!r.fallback_reason.empty()) {
        std::cerr << json{{"warning", "param_shift_fallback"},
                          {"message", r.fallback_reason}}
                         .dump()
                  << '\n';
    }
    if (!o.checkpoint.empty()) {
        io::write_file(o.checkpoint, io::model_to_json(r.model).dump(2) + "\n");
    }
}

void cmd_model_eval(const Options &o) {
    json ck;
    try {
        ck = json::parse(io::read_file(o.checkpoint));
    } catch (const json::parse_error &ex) {
        throw Error(ErrorKind::Parse, o.checkpoint + ": " + ex.what());
    }
    const ModelSpec m = io::model_from_json(ck);
    const io::DatasetFile ds = io::read_dataset(o.data);
    require(ds.graph.n_vertices() == m.graph.n_vertices(), ErrorKind::SizeMismatch,
            "dataset graph does not match the checkpoint");
    TrainConfig cfg = train_config(o);
    Rng rng(derive_seed(cfg.seed, 0));
    json items = json::array();
    std::size_t hits = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < ds.data.items.size(); ++i) {
        const DataItem &item = ds.data.items[i];
        const ItemReadout r = evaluate_item(m, ds.data, item, cfg, rng);
        json rec{{"item", i}, {"task", std::string(to_string(ds.data.task))},
                 {"scores", r.values}};
        if (ds.data.task == Task::Graph) {
            const auto best = static_cast<std::size_t>(
                std::max_element(r.values.begin(), r.values.end()) - r.values.begin());
            rec["prediction"] = best;
            rec["label"] = item.graph_class;
            rec["correct"] = best == item.graph_class;
            hits += best == item.graph_class ? 1 : 0;
            ++total;
        } else {
            json pred = json::array();
            json label = json::array();
            json correct = json::array();
            for (std::size_t k = 0; k < r.values.size(); ++k) {
                const bool ok = detail::readout_correct(r, ds.data.task, k);
                if (ds.data.task == Task::Node) {
                    pred.push_back(r.values[k] > 0.5 ? 1 : 0);
                    label.push_back(static_cast<int>(r.targets[k]));
                } else {
                    pred.push_back(r.values[k] >= 0.0 ? 1 : -1);
                    label.push_back(r.targets[k]);
                }
                correct.push_back(ok);
                hits += ok ? 1 : 0;
                ++total;
            }
            rec["prediction"] = pred;
            rec["label"] = label;
            rec["correct"] = correct;
        }
        items.push_back(rec);
    }
    json doc{{"seed", cfg.seed},
             {"shots", cfg.shots},
             {"items", items},
             {"accuracy", total == 0 ? 0.0 : static_cast<double>(hits) /
                                                 static_cast<double>(total)}};
    emit(o.common, doc.dump(2) + "\n");
}

std::vector<double> read_vector(const std::string &path) {
    std::istringstream in(io::read_file(path));
    std::vector<double> x;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = qgns::detail::trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto v = qgns::detail::parse_number<double>(t);
        require(v.has_value(), ErrorKind::Parse,
                path + " line " + std::to_string(line_no) + ": bad number");
        x.push_back(*v);
    }
    return x;
}

void cmd_filter_apply(const Options &o) {
    require(!o.coeffs.empty(), ErrorKind::InvalidArgument, "filter needs --coeffs");
    require(!o.vector_path.empty(), ErrorKind::InvalidArgument, "filter needs --vector");
    const Graph g = io::read_graph(o.graphs.front());
    const std::vector<double> x = read_vector(o.vector_path);
    const FilterResult r = apply_filter_lcu(x, laplacian(g), o.coeffs);
    std::ostringstream out;
    out << "scale " << fmt(r.scale) << '\n';
    for (double y : r.y) {
        out << fmt(y) << '\n';
    }
    emit(o.common, out.str());
}

void cmd_swap(const Options &o) {
    require(o.graphs.size() == 2, ErrorKind::InvalidArgument,
            "swap needs --graph twice");
    const EdgeConvention c = convention(o.common);
    const State a = build_graph_state(io::read_graph(o.graphs[0]), c);
    const State b = build_graph_state(io::read_graph(o.graphs[1]), c);
    Rng rng(o.common.seed);
    const auto r = swap_test_overlap(a, b, o.common.shots, &rng);
    emit(o.common, json{{"seed", o.common.seed},
                        {"shots", o.common.shots},
                        {"p0", r.p0},
                        {"overlap_sq", r.overlap_sq}}
                           .dump(2) +
                       "\n");
}

void cmd_pool(const Options &o) {
    const Graph g = io::read_graph(o.graphs.front());
    const EdgeConvention c = convention(o.common);
    const State s = build_graph_state(g, c);
    Rng rng(o.common.seed);
    json vertices = json::array();
    for (std::size_t v = 0; v < g.n_vertices(); ++v) {
        const auto group = closed_neighborhood(g, v);
        const auto phase = pool_phase(s, g, group, std::numbers::pi);
        const double p0 =
            qgns::detail::estimate_probability(phase.p0, o.common.shots, rng);
        State collapsed = s;
        const auto meas = pool_measure(collapsed, group, rng);
        vertices.push_back({{"vertex", v},
                            {"group", group},
                            {"p0", p0},
                            {"estimate", 2.0 * p0 - 1.0},
                            {"readout", meas.readout},
                            {"global_readout", meas.global_readout}});
    }
    emit(o.common, json{{"seed", o.common.seed},
                        {"shots", o.common.shots},
                        {"convention", std::string(to_string(c))},
                        {"vertices", vertices}}
                           .dump(2) +
                       "\n");
}

void print_error(const std::string &kind, const std::string &message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qgns: quantum graph states and graph neural networks"};
    app.require_subcommand(1);
    Options o;

    auto *state = app.add_subcommand("state", "Graph-state preparation and checks");
    state->require_subcommand(1);
    auto *build = state->add_subcommand("build", "Dump the graph state amplitudes");
    auto *verify = state->add_subcommand("verify", "Check every stabilizer residual");
    auto *sample = state->add_subcommand("sample", "Sample computational-basis counts");
    for (auto *cmd : {build, verify, sample}) {
        add_graph(cmd, o);
        add_common(cmd, o.common);
    }

    auto *model = app.add_subcommand("model", "Train or evaluate a QGNN");
    model->require_subcommand(1);
    auto *train = model->add_subcommand("train", "Fit a model to a dataset");
    auto *eval = model->add_subcommand("eval", "Evaluate a checkpoint on a dataset");
    for (auto *cmd : {train, eval}) {
        cmd->add_option("--data", o.data, "Dataset JSON")->required();
        cmd->add_option("--grad", o.grad, "Gradient method")
            ->check(CLI::IsMember({"fd", "pshift"}))
            ->capture_default_str();
        cmd->add_option("--loss", o.loss, "Loss function")
            ->check(CLI::IsMember({"bce", "mse"}))
            ->capture_default_str();
        add_common(cmd, o.common);
    }
    train->add_option("--formalism", o.formalism, "Layer formalism")
        ->check(CLI::IsMember({"superposed", "registered", "sequential"}))
        ->capture_default_str();
    train->add_option("--layers", o.layers, "Number of layers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--epochs", o.epochs, "Gradient-descent epochs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--lr", o.lr, "Learning rate")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    train->add_option("checkpoint", o.checkpoint, "Write the trained model here");
    eval->add_option("checkpoint", o.checkpoint, "Model checkpoint JSON")->required();

    auto *filter = app.add_subcommand("filter", "Laplacian polynomial filters");
    filter->require_subcommand(1);
    auto *apply = filter->add_subcommand("apply", "Apply p_w(L) to a vector");
    add_graph(apply, o);
    apply->add_option("--coeffs", o.coeffs, "Comma-separated coefficients w_0,w_1,...")
        ->delimiter(',')
        ->required();
    apply->add_option("--vector", o.vector_path, "Vector file, one value per line")
        ->required();
    add_common(apply, o.common);

    auto *swap = app.add_subcommand("swap", "Swap test between two graph states");
    swap->add_option("--graph", o.graphs, "qgraph edge-list file (give twice)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    add_common(swap, o.common);

    auto *pool = app.add_subcommand("pool", "Neighborhood pooling readouts");
    add_graph(pool, o);
    add_common(pool, o.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) {
            cmd_state_build(o);
        } else if (verify->parsed()) {
            cmd_state_verify(o);
        } else if (sample->parsed()) {
            cmd_state_sample(o);
        } else if (train->parsed()) {
            cmd_model_train(o);
        } else if (eval->parsed()) {
            cmd_model_eval(o);
        } else if (apply->parsed()) {
            cmd_filter_apply(o);
        } else if (swap->parsed()) {
            cmd_swap(o);
        } else if (pool->parsed()) {
            cmd_pool(o);
        }
    } catch (const Error &e) {
        print_error(std::string(to_string(e.kind())), e.what());
        return 1;
    } catch (const std::exception &e) {
        print_error("internal", e.what());
        return 1;
    }
    return 0;
}
