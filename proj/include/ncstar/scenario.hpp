#ifndef NCSTAR_SCENARIO_HPP
#define NCSTAR_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncstar/deformation.hpp"
#include "ncstar/expression.hpp"
#include "ncstar/verify.hpp"

namespace ncstar {

/// Scenario file format, one item per line:
///
///   # comment
///   name = moyal-check
///   preset = moyal            (or theta / phi11 / phi12 / phi22)
///   theta = 1
///   seed = 0
///   trials = 100
///
///   [position-roi]            starts a task; keys below belong to it
///   range = 2
///   points = 20
///
/// Values of theta and phi* are constant expressions (`1+2i`, `-0.5i`).
const char* engine_version();

enum class TaskKind { eval, commutator, tmap, equivalence, position_roi, coherent_roi, fock_check, verify_all };

TaskKind parse_task_kind(std::string_view name);
std::string to_string(TaskKind k);

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& message, int line);
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct Task {
    TaskKind kind = TaskKind::eval;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> inputs; // as written
    std::optional<Expression> f, g, expect;
    std::vector<std::array<double, 2>> grid; // roi momenta, fock p values
    std::vector<cplx> zs;                    // fock z values
    double tolerance = 0.0;
    int n = 64;
    Suite suite = Suite::all;
};

struct Scenario {
    std::string name = "scenario";
    DeformationParams params = make_params(1.0, 0.0, 0.0, 0.0);
    std::uint64_t seed = 0;
    int trials = 100;
    std::vector<Task> tasks;
};

/// Parses and validates every task; nothing runs here.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

enum class Verdict { pass, finding, fail, error };
std::string to_string(Verdict v);

struct GridPoint {
    std::array<double, 4> x{}; // roi: p1 p2 p1' p2'; fock: Re z, Im z, p1, p2
    cplx value;
    double error = 0.0;
};

struct TaskResult {
    const Task* task = nullptr;
    Verdict verdict = Verdict::pass;
    double max_error = 0.0;
    std::optional<double> seconds;
    std::string value;   // formatted result for eval/commutator/tmap
    std::string message; // error text or verdict explanation
    std::vector<GridPoint> points;
    std::vector<CheckResult> checks;
};

struct Report {
    const Scenario* scenario = nullptr;
    std::vector<TaskResult> results;
    bool aborted = false;
};

/// Runs tasks in order. A task that throws is recorded with verdict error
/// and the remaining tasks are skipped.
Report run_scenario(const Scenario& s, bool timings = false);

enum class ReportFormat { json, csv, text };
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const Report& r, ReportFormat format);

/// 0 all pass, 1 at least one finding, 2 any fail or error.
int exit_code(const Report& r);

} // namespace ncstar

#endif
