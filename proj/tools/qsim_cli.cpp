// qsim command-line front end: run the algorithm drivers, print circuits in
// ASCII or interchange form, simulate .qcirc files, and dump exact outcome
// distributions. Results go to stdout as key=value pairs, diagnostics to
// stderr. Exit codes: 0 success, 1 algorithm failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsim/qsim.hpp"

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

qsim::oracle_spec resolve_deutsch_oracle(const std::string& name) {
    if (name == "constant" || name == "deutsch_constant") return qsim::deutsch_constant();
    if (name == "balanced_identity" || name == "deutsch_balanced_identity") {
        return qsim::deutsch_balanced_identity();
    }
    if (name == "balanced_not" || name == "deutsch_balanced_not") {
        return qsim::deutsch_balanced_not();
    }
    if (name == "constant_one" || name == "deutsch_constant_one") {
        return qsim::deutsch_constant_one();
    }
    throw usage_error("unknown deutsch oracle '" + name + "'");
}

qsim::oracle_spec resolve_dj_oracle(const std::string& name, std::size_t n) {
    if (name == "constant" || name == "dj_constant") return qsim::dj_constant(n);
    if (name == "parity" || name == "dj_parity") return qsim::dj_parity(n);
    throw usage_error("unknown dj oracle '" + name + "'");
}

qsim::oracle_spec resolve_simon_oracle(const std::string& name, qsim::rng_state& rng) {
    if (name == "table1" || name == "simon_table1") return qsim::simon_table1();
    if (name.rfind("hidden:", 0) == 0) {
        return qsim::simon_from_hidden_string(name.substr(7), rng);
    }
    throw usage_error("unknown simon oracle '" + name + "' (use table1 or hidden:<bits>)");
}

qsim::grover_strategy resolve_iters(const std::string& spec) {
    if (spec == "auto") return qsim::grover_strategy::optimal();
    if (spec == "paper") return qsim::grover_strategy::paper();
    try {
        std::size_t pos = 0;
        const unsigned long k = std::stoul(spec, &pos);
        if (pos == spec.size()) return qsim::grover_strategy::explicit_k(k);
    } catch (const std::exception&) {
    }
    throw usage_error("--iters must be auto, paper, or a number");
}

void print_distribution(const qsim::outcome_distribution& dist, std::uint64_t seed) {
    for (const auto& [bits, p] : dist) {
        std::cout << "bits=" << bits << " p=" << format_probability(p) << " seed=" << seed
                  << "\n";
    }
}

struct cli_options {
    std::string oracle;
    std::string iters = "auto";
    std::string algo;
    std::string format = "ascii";
    std::string file;
    std::uint64_t seed = 1;
    std::size_t n = 0;
    std::int64_t target = -1;
    std::int64_t big_n = 0;
    std::int64_t a = 0;
    std::size_t t = 0;
    std::size_t runs = 1;
    bool dist = false;
};

int run_deutsch(const cli_options& opt) {
    const auto verdict = qsim::deutsch(resolve_deutsch_oracle(opt.oracle));
    std::cout << "oracle=" << opt.oracle << " verdict=" << qsim::verdict_name(verdict)
              << " seed=" << opt.seed << "\n";
    return 0;
}

int run_dj(const cli_options& opt) {
    if (opt.n < 1) throw usage_error("dj requires --n >= 1");
    const auto verdict = qsim::deutsch_jozsa(resolve_dj_oracle(opt.oracle, opt.n));
    std::cout << "n=" << opt.n << " oracle=" << opt.oracle
              << " verdict=" << qsim::verdict_name(verdict) << " seed=" << opt.seed << "\n";
    return 0;
}

int run_simon(const cli_options& opt) {
    qsim::rng_state rng(opt.seed);
    const qsim::oracle_spec oracle = resolve_simon_oracle(opt.oracle, rng);
    const qsim::simon_result result = qsim::simon_recover(oracle, rng);
    std::cout << "oracle=" << opt.oracle << " s=" << result.hidden_string
              << " rounds=" << result.rounds_used << " seed=" << opt.seed << "\n";
    return 0;
}

int run_grover(const cli_options& opt) {
    if (opt.n < 1) throw usage_error("grover requires --n >= 1");
    if (opt.target < 0) throw usage_error("grover requires --target");
    const qsim::oracle_spec oracle =
        qsim::grover_marked(opt.n, static_cast<std::size_t>(opt.target));
    const qsim::grover_strategy strategy = resolve_iters(opt.iters);
    const std::size_t k = qsim::grover_iterations(opt.n, strategy);
    if (opt.dist) {
        print_distribution(qsim::exact_distribution(qsim::build_grover_circuit(oracle, k)),
                           opt.seed);
        return 0;
    }
    qsim::rng_state rng(opt.seed);
    const std::string result = qsim::run(qsim::build_grover_circuit(oracle, k), rng).bits;
    std::cout << "n=" << opt.n << " target=" << opt.target << " iters=" << k
              << " result=" << result << " seed=" << opt.seed << "\n";
    return 0;
}

int run_shor(const cli_options& opt) {
    if (opt.big_n < 4) throw usage_error("shor requires --N >= 4");
    qsim::rng_state rng(opt.seed);
    const qsim::shor_result result = qsim::shor_factor(opt.big_n, rng, opt.a, opt.t);
    std::cout << "N=" << result.n_value << " method=" << qsim::shor_method_name(result.method);
    if (result.a_used != 0) std::cout << " a=" << result.a_used;
    if (result.order != 0) std::cout << " r=" << result.order;
    if (result.factor != 0) std::cout << " factor=" << result.factor;
    if (result.attempts != 0) std::cout << " attempts=" << result.attempts;
    std::cout << " seed=" << opt.seed << "\n";
    return 0;
}

qsim::circuit circuit_for_algo(const cli_options& opt) {
    qsim::rng_state rng(opt.seed);
    if (opt.algo == "deutsch") {
        return qsim::build_deutsch_circuit(resolve_deutsch_oracle(opt.oracle));
    }
    if (opt.algo == "dj") {
        if (opt.n < 1) throw usage_error("print --algo dj requires --n >= 1");
        return qsim::build_deutsch_jozsa_circuit(resolve_dj_oracle(opt.oracle, opt.n));
    }
    if (opt.algo == "simon") {
        return qsim::build_simon_circuit(resolve_simon_oracle(opt.oracle, rng));
    }
    if (opt.algo == "grover") {
        if (opt.n < 1 || opt.target < 0) {
            throw usage_error("print --algo grover requires --n and --target");
        }
        const auto oracle = qsim::grover_marked(opt.n, static_cast<std::size_t>(opt.target));
        return qsim::build_grover_circuit(
            oracle, qsim::grover_iterations(opt.n, resolve_iters(opt.iters)));
    }
    if (opt.algo == "shor") {
        if (opt.oracle.empty() || opt.oracle == "generic") {
            if (opt.big_n < 2 || opt.a < 2) {
                throw usage_error("print --algo shor requires --N and --a");
            }
            const std::size_t b =
                std::bit_width(static_cast<std::uint64_t>(opt.big_n - 1));
            const std::size_t t = opt.t != 0 ? opt.t : 2 * b;
            return qsim::build_shor_circuit(qsim::modexp_permutation(opt.a, opt.big_n, t, b));
        }
        if (opt.oracle == "mod15_base7") return qsim::build_shor_circuit(qsim::mod15_base7());
        if (opt.oracle == "mod21_base20") return qsim::build_shor_circuit(qsim::mod21_base20());
        throw usage_error("unknown shor oracle '" + opt.oracle +
                          "' (use generic, mod15_base7, or mod21_base20)");
    }
    throw usage_error("unknown --algo '" + opt.algo + "'");
}

int run_print(const cli_options& opt) {
    const qsim::circuit c = circuit_for_algo(opt);
    if (opt.format == "lines") {
        std::cout << qsim::write_lines(c);
    } else if (opt.format == "ascii") {
        std::cout << qsim::render_ascii(c);
    } else {
        throw usage_error("--format must be ascii or lines");
    }
    return 0;
}

int run_simulate(const cli_options& opt) {
    std::ifstream in(opt.file, std::ios::binary);
    if (!in) throw usage_error("cannot open file '" + opt.file + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const qsim::circuit c = qsim::parse_lines(buffer.str());
    if (opt.dist) {
        print_distribution(qsim::exact_distribution(c), opt.seed);
        return 0;
    }
    qsim::rng_state rng(opt.seed);
    for (std::size_t i = 0; i < opt.runs; ++i) {
        std::cout << "bits=" << qsim::run(c, rng).bits << " seed=" << opt.seed << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact gate-level quantum circuit simulator and algorithm suite"};
    app.require_subcommand(1);
    cli_options opt;

    auto* deutsch = app.add_subcommand("deutsch", "classify a 1-bit oracle");
    deutsch->add_option("--oracle", opt.oracle)->required();

    auto* dj = app.add_subcommand("dj", "classify an n-bit oracle");
    dj->add_option("--n", opt.n)->required();
    dj->add_option("--oracle", opt.oracle)->required();

    auto* simon = app.add_subcommand("simon", "recover a hidden string");
    simon->add_option("--oracle", opt.oracle)->required();
    simon->add_option("--seed", opt.seed);

    auto* grover = app.add_subcommand("grover", "search for a marked item");
    grover->add_option("--n", opt.n)->required();
    grover->add_option("--target", opt.target)->required();
    grover->add_option("--iters", opt.iters);
    grover->add_option("--seed", opt.seed);
    grover->add_flag("--dist", opt.dist);

    auto* shor = app.add_subcommand("shor", "factor an integer");
    shor->add_option("--N", opt.big_n)->required();
    shor->add_option("--a", opt.a);
    shor->add_option("--t", opt.t);
    shor->add_option("--seed", opt.seed);

    auto* print = app.add_subcommand("print", "print an algorithm circuit");
    print->add_option("--algo", opt.algo)->required();
    print->add_option("--format", opt.format);
    print->add_option("--oracle", opt.oracle);
    print->add_option("--n", opt.n);
    print->add_option("--target", opt.target);
    print->add_option("--iters", opt.iters);
    print->add_option("--N", opt.big_n);
    print->add_option("--a", opt.a);
    print->add_option("--t", opt.t);
    print->add_option("--seed", opt.seed);

    auto* simulate = app.add_subcommand("simulate", "simulate a .qcirc file");
    simulate->add_option("--file", opt.file)->required();
    simulate->add_option("--seed", opt.seed);
    simulate->add_option("--runs", opt.runs);
    simulate->add_flag("--dist", opt.dist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (deutsch->parsed()) return run_deutsch(opt);
        if (dj->parsed()) return run_dj(opt);
        if (simon->parsed()) return run_simon(opt);
        if (grover->parsed()) return run_grover(opt);
        if (shor->parsed()) return run_shor(opt);
        if (print->parsed()) return run_print(opt);
        if (simulate->parsed()) return run_simulate(opt);
    } catch (const qsim::budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qsim::parse_error& e) {
        std::cerr << "error: " << opt.file << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
