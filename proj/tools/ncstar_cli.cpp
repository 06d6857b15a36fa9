// ncstar command line: eval, verify, kernel, run.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ncstar/expression.hpp"
#include "ncstar/scenario.hpp"
#include "ncstar/verify.hpp"
#include "ncstar/wavestar.hpp"

using namespace ncstar;

namespace {

struct ParamFlags {
    std::string theta, phi11, phi12, phi22, preset;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--theta", theta, "noncommutativity scale (default 1)");
        auto* p11 = cmd->add_option("--phi11", phi11, "Phi entry, complex literal such as 0.5-1i");
        auto* p12 = cmd->add_option("--phi12", phi12, "Phi entry");
        auto* p22 = cmd->add_option("--phi22", phi22, "Phi entry");
        auto* pr = cmd->add_option("--preset", preset, "moyal or voros")->check(CLI::IsMember({"moyal", "voros"}));
        pr->excludes(p11)->excludes(p12)->excludes(p22);
    }

    bool given() const { return !(theta.empty() && phi11.empty() && phi12.empty() && phi22.empty() && preset.empty()); }

    DeformationParams params() const
    {
        auto value = [](const std::string& text) { return text.empty() ? cplx(0.0) : evaluate_constant(text); };
        double th = 1.0;
        if (!theta.empty()) {
            const cplx c = evaluate_constant(theta);
            if (c.imag() != 0.0)
                throw ValidationError("theta must be real");
            th = c.real();
        }
        if (!preset.empty())
            return preset_params(parse_preset(preset), th);
        return make_params(th, value(phi11), value(phi12), value(phi22));
    }
};

int write_out(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Star products on the noncommutative plane"};
    app.set_version_flag("--version", engine_version());
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "evaluate an expression; ** is the star product");
    std::string expr;
    ParamFlags eval_params;
    eval->add_option("expr", expr, "expression, e.g. 'x1 ** x2'")->required();
    eval_params.add(eval);

    auto* verify = app.add_subcommand("verify", "run randomized identity checks");
    std::string suite = "all", verify_format = "text";
    std::uint64_t seed = 0;
    int trials = 100;
    ParamFlags verify_params;
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "algebra", "equivalence", "roi", "fock"}));
    verify->add_option("--seed", seed);
    verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "csv", "text"}));
    verify_params.add(verify);

    auto* kernel = app.add_subcommand("kernel", "diagonal resolution-of-identity amplitudes on a grid (CSV)");
    std::string which;
    int grid = 20;
    double range = 2.0;
    ParamFlags kernel_params;
    kernel->add_option("which", which, "position or coherent")->required()->check(CLI::IsMember({"position", "coherent"}));
    kernel->add_option("--grid", grid, "points per axis")->check(CLI::Range(1, 1000));
    kernel->add_option("--range", range, "grid covers [-range, range]^2")->check(CLI::PositiveNumber);
    kernel_params.add(kernel);

    auto* run = app.add_subcommand("run", "run a scenario file");
    std::string file, format = "json", out_path;
    bool timings = false;
    run->add_option("file", file)->required();
    run->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    run->add_option("--out", out_path);
    run->add_flag("--timings", timings, "record wall-clock seconds per task");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors map onto the error exit code; --help and --version stay 0
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*eval) {
            const auto params = eval_params.params();
            std::cout << format_value(evaluate(parse_expression(expr), params)) << "\n";
            return 0;
        }
        if (*verify) {
            Scenario s;
            s.name = "verify";
            s.seed = seed;
            s.trials = trials;
            if (verify_params.given())
                s.params = verify_params.params();
            Task task;
            task.kind = TaskKind::verify_all;
            task.suite = parse_suite(suite);
            task.inputs = {{"suite", suite}};
            s.tasks.push_back(task);
            // without explicit parameters every trial draws its own
            Report r;
            r.scenario = &s;
            TaskResult t;
            t.task = &s.tasks.front();
            t.checks = run_verify(task.suite, seed, trials,
                                  verify_params.given() ? std::optional(s.params) : std::nullopt);
            t.verdict = Verdict::pass;
            for (const auto& c : t.checks) {
                t.max_error = std::max(t.max_error, c.max_error);
                if (!c.passed)
                    t.verdict = Verdict::fail;
            }
            r.results.push_back(t);
            std::cout << emit_report(r, parse_report_format(verify_format));
            return exit_code(r);
        }
        if (*kernel) {
            const auto params = kernel_params.params();
            std::cout << "p1,p2,re,im\n";
            for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j) {
                    auto coord = [&](int k) { return grid == 1 ? 0.0 : -range + 2.0 * range * k / (grid - 1); };
                    const std::array<double, 2> p{coord(i), coord(j)};
                    const cplx a = which == "position" ? position_roi_amplitude(params, p, p)
                                                       : coherent_roi_amplitude(params, {p[0], p[1]}, {p[0], p[1]});
                    std::cout << format_double(p[0]) << "," << format_double(p[1]) << "," << format_double(a.real())
                              << "," << format_double(a.imag()) << "\n";
                }
            return 0;
        }
        if (*run) {
            const auto fmt = parse_report_format(format);
            const Scenario s = load_scenario(file);
            const Report r = run_scenario(s, timings);
            if (const int rc = write_out(emit_report(r, fmt), out_path); rc != 0)
                return rc;
            return exit_code(r);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
