#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsim/circuit_io.hpp"
#include "qsim/errors.hpp"
#include "qsim/grover.hpp"
#include "qsim/oracle_algorithms.hpp"
#include "qsim/qft.hpp"
#include "qsim/shor.hpp"
#include "qsim/solovay_kitaev.hpp"

namespace qsim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
    Json answer = Json::object();
    std::uint64_t oracle_queries = 0;
    std::uint64_t shots = 0;
    std::uint64_t restarts = 0;
    bool success = true;
};

template <typename A>
Outcome counters(const AlgorithmReport<A> &r) {
    Outcome o;
    o.oracle_queries = r.oracle_queries;
    o.shots = r.shots;
    o.restarts = r.restarts;
    o.success = r.success;
    return o;
}

std::string bits(std::uint64_t value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

std::uint64_t parse_bits(const std::string &text, const std::string &flag) {
    if (text.empty() || text.size() > 62 || text.find_first_not_of("01") != std::string::npos) {
        throw InvalidArgument(flag + " expects a bit string, got '" + text + "'");
    }
    return std::stoull(text, nullptr, 2);
}

/// A basis input given as a k-character bit string or as an integer below 2^k.
std::uint64_t parse_basis_input(const std::string &text, int k) {
    if (static_cast<int>(text.size()) == k && text.find_first_not_of("01") == std::string::npos) {
        return std::stoull(text, nullptr, 2);
    }
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used, 10);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || text.empty() || (k < 64 && v >= (std::uint64_t{1} << k))) {
        throw InvalidArgument("--input expects a " + std::to_string(k) +
                              "-bit string or an integer below 2^" + std::to_string(k) +
                              ", got '" + text + "'");
    }
    return v;
}

double tidy(double p) { return std::round(p * 1e12) / 1e12; }

Json distribution_json(const MeasurementDistribution &d) {
    Json j = Json::object();
    for (const auto &[outcome, p] : d.outcomes()) {
        if (tidy(p) != 0.0) {
            j[d.label(outcome)] = tidy(p);
        }
    }
    return j;
}

Matrix parse_target(const std::string &text) {
    const auto angle_of = [&](const std::string &prefix) {
        const std::string inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(inner, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != inner.size() || text.back() != ')') {
            throw InvalidArgument("--target angle is not a number: '" + text + "'");
        }
        return v;
    };
    Matrix m = Matrix::Identity(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    if (text == "I") {
        return m;
    }
    if (text == "H") {
        m << r, r, r, -r;
        return m;
    }
    if (text == "X") {
        m << 0, 1, 1, 0;
        return m;
    }
    if (text == "Z" || text == "S" || text == "T" || text == "Tdg") {
        const double theta = text == "Z" ? kPi : text == "S" ? kPi / 2 : text == "T" ? kPi / 4
                                                                                      : -kPi / 4;
        m(1, 1) = std::polar(1.0, theta);
        return m;
    }
    if (text.rfind("phase(", 0) == 0) {
        m(1, 1) = std::polar(1.0, angle_of("phase("));
        return m;
    }
    if (text.rfind("rz(", 0) == 0) {
        const double theta = angle_of("rz(");
        m(0, 0) = std::polar(1.0, -theta / 2);
        m(1, 1) = std::polar(1.0, theta / 2);
        return m;
    }
    if (text.rfind("matrix:", 0) == 0) {
        std::string body = text.substr(7);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream in(body);
        double v[8];
        for (double &x : v) {
            if (!(in >> x)) {
                throw InvalidArgument("--target matrix needs 8 reals: re00 im00 re01 im01 re10 "
                                      "im10 re11 im11");
            }
        }
        std::string extra;
        if (in >> extra) {
            throw InvalidArgument("--target matrix has trailing text '" + extra + "'");
        }
        m << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
        if (unitarity_defect(m) > 1e-8) {
            throw InvalidArgument("--target matrix is not unitary");
        }
        return m;
    }
    throw InvalidArgument("unknown --target '" + text +
                          "' (use I, H, X, Z, S, T, Tdg, phase(t), rz(t) or matrix:...)");
}

struct OracleSource {
    std::string table;
    std::string balanced;
    std::string hidden_string;
    std::string simon_s;
    int constant = -1;
    int n = 0;
};

BooleanFunction dj_function(const OracleSource &src) {
    if (!src.table.empty()) {
        return read_truth_table(src.table);
    }
    if (src.n < 1) {
        throw InvalidArgument("--n must be given and positive for generated oracles");
    }
    if (src.constant >= 0) {
        if (src.constant > 1) {
            throw InvalidArgument("--constant expects 0 or 1");
        }
        return BooleanFunction::constant(src.n, static_cast<std::uint32_t>(src.constant));
    }
    if (src.balanced == "parity") {
        return BooleanFunction::parity(src.n);
    }
    if (!src.balanced.empty()) {
        throw InvalidArgument("--balanced supports only 'parity', got '" + src.balanced + "'");
    }
    throw InvalidArgument("dj needs --table, --constant or --balanced");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"State-vector quantum algorithm simulator", "qsim"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    std::string format = "text";
    int max_qubits = kDefaultMaxQubits;
    std::uint64_t shots = 1;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--max-qubits", max_qubits, "Qubit budget for state vectors")
        ->check(CLI::Range(1, 40))
        ->capture_default_str();
    app.add_option("--shots", shots, "Measurement samples where applicable")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
        ->capture_default_str();

    std::function<Outcome()> action;

    std::uint64_t factor_n = 0;
    int max_restarts = 50;
    auto *factor = app.add_subcommand("factor", "Factor N with Shor's algorithm");
    factor->add_option("N", factor_n, "Odd composite, not a prime power")->required();
    factor->add_option("--max-restarts", max_restarts)->check(CLI::Range(0, 10000));
    factor->callback([&] {
        action = [&] {
            ShorOptions opt;
            opt.max_qubits = max_qubits;
            opt.max_restarts = max_restarts;
            const auto r = shor_factor(factor_n, seed, opt);
            Outcome o = counters(r);
            o.answer["N"] = factor_n;
            if (r.success) {
                o.answer["factors"] = {r.answer.p, r.answer.q};
            } else {
                o.answer["factors"] = nullptr;
            }
            o.answer["base"] = r.answer.base;
            o.answer["order"] = r.answer.order;
            o.answer["path"] = to_string(r.answer.path);
            return o;
        };
    });

    std::uint64_t order_n = 0;
    std::uint64_t order_a = 0;
    auto *order = app.add_subcommand("order", "Multiplicative order of a mod N");
    order->add_option("N", order_n)->required();
    order->add_option("a", order_a)->required();
    order->add_option("--max-restarts", max_restarts)->check(CLI::Range(0, 10000));
    order->callback([&] {
        action = [&] {
            const auto inst = OrderFindingInstance::make(order_n, order_a);
            OrderFindingOptions opt;
            opt.max_qubits = max_qubits;
            opt.max_restarts = max_restarts;
            const auto r = order_find_simulated(inst, seed, opt);
            Outcome o = counters(r);
            o.answer["N"] = order_n;
            o.answer["a"] = order_a;
            o.answer["order"] = r.success ? Json(r.answer.order) : Json(nullptr);
            o.answer["source_qubits"] = inst.source_qubits;
            o.answer["target_qubits"] = inst.target_qubits;
            o.answer["path"] = to_string(r.answer.path);
            return o;
        };
    });

    int grover_n = 0;
    std::vector<std::uint64_t> marked;
    int iterations = -1;
    auto *grover_cmd = app.add_subcommand("grover", "Grover search for marked items");
    grover_cmd->add_option("n", grover_n, "Search register width")
        ->required()
        ->check(CLI::Range(1, kMaxTruthTableInputs));
    grover_cmd->add_option("marked", marked, "Marked item indices")->required();
    grover_cmd->add_option("--iterations", iterations, "Default floor(pi/4 sqrt(N/M))")
        ->check(CLI::NonNegativeNumber);
    grover_cmd->callback([&] {
        action = [&] {
            auto oracle =
                QueryOracle::make(marked_items_function(grover_n, marked), OracleMode::Phase);
            GroverOptions opt;
            if (iterations >= 0) {
                opt.iterations = iterations;
            }
            opt.shots = shots;
            opt.max_qubits = max_qubits;
            const auto r = grover(oracle, seed, opt);
            Outcome o = counters(r);
            o.success = true;
            o.answer["index"] = r.answer.index;
            o.answer["bits"] = bits(r.answer.index, grover_n);
            o.answer["marked"] = r.success;
            o.answer["iterations"] = r.answer.iterations;
            o.answer["success_probability"] = tidy(r.answer.success_probability);
            o.answer["empirical_success"] = r.answer.empirical_success;
            return o;
        };
    });

    OracleSource src;
    const auto add_table = [&](CLI::App *sub) {
        sub->add_option("--table", src.table, "Truth-table file")->check(CLI::ExistingFile);
    };
    auto *dj = app.add_subcommand("dj", "Deutsch-Jozsa: constant or balanced");
    add_table(dj);
    dj->add_option("--constant", src.constant, "Constant oracle with value 0 or 1");
    dj->add_option("--balanced", src.balanced, "Balanced generator: parity");
    dj->add_option("--n", src.n, "Input width for generators")
        ->check(CLI::Range(1, kMaxTruthTableInputs));
    dj->callback([&] {
        action = [&] {
            const BooleanFunction f = dj_function(src);
            validate_dj_promise(f);
            const auto r = deutsch_jozsa(QueryOracle::make(f, OracleMode::BitFlip), seed,
                                         max_qubits);
            Outcome o = counters(r);
            o.answer["n"] = f.num_inputs();
            o.answer["result"] = r.answer == DjAnswer::Constant ? "constant" : "balanced";
            return o;
        };
    });

    auto *bv = app.add_subcommand("bv", "Bernstein-Vazirani: recover the hidden string");
    add_table(bv);
    bv->add_option("--hidden-string", src.hidden_string, "Hidden bit string h");
    bv->callback([&] {
        action = [&] {
            BooleanFunction f = BooleanFunction::constant(0, 0);
            if (!src.table.empty()) {
                f = read_truth_table(src.table);
            } else if (!src.hidden_string.empty()) {
                const int n = static_cast<int>(src.hidden_string.size());
                if (n > kMaxTruthTableInputs) {
                    throw InvalidArgument("--hidden-string longer than " +
                                          std::to_string(kMaxTruthTableInputs) + " bits");
                }
                f = BooleanFunction::dot_product(n, parse_bits(src.hidden_string,
                                                               "--hidden-string"));
            } else {
                throw InvalidArgument("bv needs --table or --hidden-string");
            }
            const auto r = bernstein_vazirani(QueryOracle::make(f, OracleMode::BitFlip), seed,
                                              max_qubits);
            Outcome o = counters(r);
            o.answer["n"] = f.num_inputs();
            o.answer["hidden"] = bits(r.answer, f.num_inputs());
            return o;
        };
    });

    auto *simon_cmd = app.add_subcommand("simon", "Simon's algorithm: recover s");
    add_table(simon_cmd);
    simon_cmd->add_option("--simon-s", src.simon_s, "Secret s for a random promise function");
    simon_cmd->callback([&] {
        action = [&] {
            BooleanFunction f = BooleanFunction::constant(0, 0);
            if (!src.table.empty()) {
                f = read_truth_table(src.table);
            } else if (!src.simon_s.empty()) {
                const int n = static_cast<int>(src.simon_s.size());
                if (n > kMaxTruthTableInputs) {
                    throw InvalidArgument("--simon-s longer than " +
                                          std::to_string(kMaxTruthTableInputs) + " bits");
                }
                Rng gen(seed ^ 0x9e3779b97f4a7c15ULL);
                f = random_simon_function(n, parse_bits(src.simon_s, "--simon-s"), gen);
            } else {
                throw InvalidArgument("simon needs --table or --simon-s");
            }
            SimonOptions opt;
            opt.max_qubits = max_qubits;
            const auto r = simon(QueryOracle::make(f, OracleMode::BitFlip), seed, opt);
            Outcome o = counters(r);
            o.answer["n"] = f.num_inputs();
            o.answer["s"] = r.success ? Json(bits(r.answer.s, f.num_inputs())) : Json(nullptr);
            o.answer["iterations"] = r.answer.iterations;
            return o;
        };
    });

    int qft_k = 0;
    std::string qft_input;
    bool qft_inverse = false;
    auto *qft = app.add_subcommand("qft", "Quantum Fourier transform of a basis state");
    qft->add_option("k", qft_k)->required()->check(CLI::Range(1, 62));
    qft->add_option("--input", qft_input, "Basis state as bits or integer")->required();
    qft->add_flag("--inverse", qft_inverse, "Apply the inverse transform");
    qft->callback([&] {
        action = [&] {
            check_capacity(qft_k, max_qubits, "qft");
            const Circuit c = qft_inverse ? qft_inverse_circuit(qft_k, max_qubits)
                                          : qft_circuit(qft_k, max_qubits);
            const auto s = apply(c, StateVector::basis(qft_k, parse_basis_input(qft_input, qft_k),
                                                       max_qubits));
            Outcome o;
            o.answer["k"] = qft_k;
            o.answer["inverse"] = qft_inverse;
            o.answer["gates"] = c.size();
            o.answer["depth"] = c.depth();
            o.answer["distribution"] = distribution_json(exact_distribution(s));
            return o;
        };
    });

    std::string target = "H";
    double eps = 0.01;
    int net_depth = 16;
    std::string net_cache;
    int max_level = 8;
    auto *sk = app.add_subcommand("sk-compile", "Solovay-Kitaev synthesis over {H, T, T^dagger}");
    sk->add_option("--target", target, "I, H, X, Z, S, T, Tdg, phase(t), rz(t) or matrix:8 reals")
        ->required();
    sk->add_option("--eps", eps, "Target spectral distance modulo phase")
        ->required()
        ->check(CLI::PositiveNumber);
    sk->add_option("--net-depth", net_depth, "Base net word-length cap")
        ->check(CLI::Range(0, BaseNet::kMaxDepth))
        ->capture_default_str();
    sk->add_option("--net-cache", net_cache, "Net cache file, rebuilt if absent or stale");
    sk->add_option("--max-level", max_level, "Recursion level cap")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();
    sk->callback([&] {
        action = [&] {
            const Matrix m = parse_target(target);
            const BaseNet net = net_cache.empty() ? build_base_net(net_depth)
                                                  : load_or_build_base_net(net_cache, net_depth);
            Outcome o;
            o.answer["target"] = target;
            o.answer["eps"] = eps;
            o.answer["net_depth"] = net.depth_cap();
            o.answer["net_size"] = net.size();
            try {
                const auto seq = compile_to_accuracy(m, eps, net, max_level);
                o.answer["word"] = seq.word;
                o.answer["length"] = seq.word.size();
                o.answer["level"] = seq.level;
                o.answer["achieved_distance"] = seq.achieved_distance;
            } catch (const AccuracyUnreachable &e) {
                o.answer["word"] = nullptr;
                o.answer["best_distance"] = e.best_distance();
                o.success = false;
            }
            return o;
        };
    });

    std::string circuit_file;
    std::string sim_input;
    auto *simulate = app.add_subcommand("simulate", "Run a circuit file on a basis state");
    simulate->add_option("circuit", circuit_file)->required()->check(CLI::ExistingFile);
    simulate->add_option("--input", sim_input, "Basis state as bits or integer (default 0)");
    simulate->callback([&] {
        action = [&] {
            const Circuit c = read_circuit(circuit_file);
            check_capacity(c.num_qubits(), max_qubits, "simulate");
            const std::uint64_t x =
                sim_input.empty() ? 0 : parse_basis_input(sim_input, c.num_qubits());
            const auto s = apply(c, StateVector::basis(c.num_qubits(), x, max_qubits));
            Outcome o;
            o.oracle_queries = c.oracle_gate_count();
            o.answer["qubits"] = c.num_qubits();
            o.answer["gates"] = c.size();
            o.answer["depth"] = c.depth();
            o.answer["distribution"] = distribution_json(exact_distribution(s));
            return o;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = action();
    } catch (const CapacityError &e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    Json report;
    report["command"] = command;
    report["seed"] = seed;
    report["answer"] = outcome.answer;
    report["oracle_queries"] = outcome.oracle_queries;
    report["shots"] = outcome.shots;
    report["restarts"] = outcome.restarts;
    report["wall_ms"] = std::round(wall_ms * 1000.0) / 1000.0;

    if (format == "json") {
        out << report.dump() << '\n';
    } else {
        for (const auto &[key, value] : report.items()) {
            if (value.is_object()) {
                for (const auto &[sub, v] : value.items()) {
                    out << key << '.' << sub << ": "
                        << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
                }
            } else {
                out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                    << '\n';
            }
        }
    }
    if (!outcome.success) {
        err << command << ": algorithm did not succeed within its caps\n";
        return kExitAlgorithmFailure;
    }
    return kExitSuccess;
}

} // namespace qsim::cli
