#include "ncstar/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ncstar/fockspace.hpp"
#include "ncstar/polystar.hpp"
#include "ncstar/wavestar.hpp"

namespace ncstar {

const char* engine_version() { return NCSTAR_VERSION; }

namespace {

const std::pair<TaskKind, const char*> kind_names[] = {
    {TaskKind::eval, "eval"},
    {TaskKind::commutator, "commutator"},
    {TaskKind::tmap, "tmap"},
    {TaskKind::equivalence, "equivalence"},
    {TaskKind::position_roi, "position-roi"},
    {TaskKind::coherent_roi, "coherent-roi"},
    {TaskKind::fock_check, "fock-check"},
    {TaskKind::verify_all, "verify-all"},
};

const std::set<std::string>& allowed_keys(TaskKind k)
{
    static const std::map<TaskKind, std::set<std::string>> keys{
        {TaskKind::eval, {"expr", "expect", "tolerance"}},
        {TaskKind::commutator, {"f", "g", "expect", "tolerance"}},
        {TaskKind::tmap, {"expr", "expect", "tolerance"}},
        {TaskKind::equivalence, {"f", "g", "tolerance"}},
        {TaskKind::position_roi, {"range", "points", "at", "radius", "tolerance"}},
        {TaskKind::coherent_roi, {"range", "points", "at", "radius", "tolerance"}},
        {TaskKind::fock_check, {"points", "at", "N", "tolerance"}},
        {TaskKind::verify_all, {"suite"}},
    };
    return keys.at(k);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, const char* what, int line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ScenarioError(std::string(what) + ": expected a finite number, got '" + text + "'", line);
    return v;
}

long parse_int(const std::string& text, const char* what, int line, long lo, long hi)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v < lo || v > hi)
        throw ScenarioError(std::string(what) + ": expected an integer in [" + std::to_string(lo) + ", "
                                + std::to_string(hi) + "], got '" + text + "'",
                            line);
    return v;
}

// "a,b; c,d" -> rows of `width` numbers
std::vector<std::vector<double>> parse_rows(const std::string& text, std::size_t width, int line)
{
    std::vector<std::vector<double>> rows;
    std::stringstream all(text);
    std::string row;
    while (std::getline(all, row, ';')) {
        if (trim(row).empty())
            continue;
        std::vector<double> values;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ','))
            values.push_back(parse_real(trim(cell), "at", line));
        if (values.size() != width)
            throw ScenarioError("at: each point needs " + std::to_string(width) + " comma-separated numbers", line);
        rows.push_back(std::move(values));
    }
    if (rows.empty())
        throw ScenarioError("at: empty point list", line);
    return rows;
}

Expression parse_at(const std::string& text, const std::string& key, int line)
{
    try {
        return parse_expression(text);
    } catch (const ParseError& e) {
        throw ScenarioError(key + ": " + e.what(), line);
    }
}

bool contains_exp(const Expr& e)
{
    if (e.kind == Expr::Kind::exp)
        return true;
    return std::any_of(e.args.begin(), e.args.end(), contains_exp);
}

bool has_variables(const Expr& e)
{
    if (e.kind == Expr::Kind::variable)
        return true;
    return std::any_of(e.args.begin(), e.args.end(), has_variables);
}

// Constant-only expressions take the frame of the variable-bearing ones.
void unify_frames(Task& t)
{
    std::optional<Frame> frame;
    for (auto* e : {&t.f, &t.g, &t.expect}) {
        if (!*e || !has_variables((*e)->root))
            continue;
        if (frame && *frame != (*e)->frame)
            throw ScenarioError("expressions in one task mix x1/x2 with z/zbar", t.line);
        frame = (*e)->frame;
    }
    for (auto* e : {&t.f, &t.g, &t.expect})
        if (*e && frame)
            (*e)->frame = *frame;
}

struct RawTask {
    Task task;
    std::map<std::string, std::pair<std::string, int>> values; // key -> (value, line)

    const std::pair<std::string, int>* get(const std::string& key) const
    {
        const auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    }
};

void validate(RawTask& raw, std::size_t index, const Scenario& s)
{
    Task& t = raw.task;
    const double theta = s.params.theta();
    auto expression = [&](const char* key, bool required) -> std::optional<Expression> {
        const auto* v = raw.get(key);
        if (!v) {
            if (required)
                throw ScenarioError(std::string("task [") + to_string(t.kind) + "] needs '" + key + "'", t.line);
            return std::nullopt;
        }
        auto e = parse_at(v->first, key, v->second);
        if (e.frame == Frame::complex && theta == 0.0)
            throw ScenarioError(std::string(key) + ": z/zbar expressions need theta != 0", v->second);
        return e;
    };
    auto tolerance = [&](double fallback) {
        const auto* v = raw.get("tolerance");
        if (!v)
            return fallback;
        const double tol = parse_real(v->first, "tolerance", v->second);
        if (tol <= 0.0)
            throw ScenarioError("tolerance must be positive", v->second);
        return tol;
    };
    auto require_cartesian = [&](const std::optional<Expression>& e, const char* key) {
        if (e && e->frame != Frame::cartesian)
            throw ScenarioError(std::string(key) + ": this task needs x1/x2 expressions", raw.get(key)->second);
    };

    switch (t.kind) {
    case TaskKind::eval:
    case TaskKind::tmap:
        t.f = expression("expr", true);
        t.expect = expression("expect", false);
        unify_frames(t);
        if (t.kind == TaskKind::tmap)
            require_cartesian(t.f, "expr");
        t.tolerance = tolerance(1e-12);
        break;
    case TaskKind::commutator:
    case TaskKind::equivalence:
        t.f = expression("f", true);
        t.g = expression("g", true);
        if (t.kind == TaskKind::commutator)
            t.expect = expression("expect", false);
        unify_frames(t);
        if (t.kind == TaskKind::equivalence) {
            require_cartesian(t.f, "f");
            require_cartesian(t.g, "g");
            const bool waves = contains_exp(t.f->root) || contains_exp(t.g->root);
            t.tolerance = tolerance(waves ? 1e-12 : 1e-10);
        } else {
            t.tolerance = tolerance(1e-12);
        }
        break;
    case TaskKind::position_roi:
    case TaskKind::coherent_roi: {
        if (t.kind == TaskKind::coherent_roi && theta <= 0.0)
            throw ScenarioError("coherent-roi needs theta > 0", t.line);
        t.tolerance = tolerance(1e-12);
        if (const auto* at = raw.get("at")) {
            if (raw.get("range") || raw.get("points"))
                throw ScenarioError("at: give either an explicit point list or range/points", at->second);
            for (const auto& row : parse_rows(at->first, 2, at->second))
                t.grid.push_back({row[0], row[1]});
        } else {
            const auto* r = raw.get("range");
            const double range = r ? parse_real(r->first, "range", r->second) : 2.0;
            if (range <= 0.0)
                throw ScenarioError("range must be positive", r->second);
            const auto* p = raw.get("points");
            const long n = p ? parse_int(p->first, "points", p->second, 1, 1000) : 20;
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    auto coord = [&](long k) { return n == 1 ? 0.0 : -range + 2.0 * range * k / (n - 1); };
                    t.grid.push_back({coord(i), coord(j)});
                }
        }
        if (const auto* r = raw.get("radius")) {
            const double radius = parse_real(r->first, "radius", r->second);
            std::erase_if(t.grid, [&](const auto& p) { return std::hypot(p[0], p[1]) > radius; });
            if (t.grid.empty())
                throw ScenarioError("radius leaves no grid points", r->second);
        }
        break;
    }
    case TaskKind::fock_check: {
        if (theta <= 0.0)
            throw ScenarioError("fock-check needs theta > 0", t.line);
        t.tolerance = tolerance(1e-6);
        if (const auto* v = raw.get("N"))
            t.n = static_cast<int>(parse_int(v->first, "N", v->second, 2, 512));
        if (const auto* at = raw.get("at")) {
            if (raw.get("points"))
                throw ScenarioError("at: give either an explicit point list or a point count", at->second);
            for (const auto& row : parse_rows(at->first, 4, at->second)) {
                t.zs.emplace_back(row[0], row[1]);
                t.grid.push_back({row[2], row[3]});
            }
        } else {
            const auto* p = raw.get("points");
            const long n = p ? parse_int(p->first, "points", p->second, 1, 10000) : 20;
            std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                              static_cast<std::uint32_t>(index)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            auto disk = [&](double r) {
                const double rad = r * std::sqrt(u(rng));
                return std::polar(rad, 2.0 * std::numbers::pi * u(rng));
            };
            for (long k = 0; k < n; ++k) {
                t.zs.push_back(disk(1.0));
                const cplx q = disk(2.0);
                t.grid.push_back({q.real(), q.imag()});
            }
        }
        break;
    }
    case TaskKind::verify_all:
        if (const auto* v = raw.get("suite")) {
            try {
                t.suite = parse_suite(v->first);
            } catch (const ValidationError& e) {
                throw ScenarioError(e.what(), v->second);
            }
        }
        break;
    }
}

} // namespace

TaskKind parse_task_kind(std::string_view name)
{
    for (const auto& [k, n] : kind_names)
        if (name == n)
            return k;
    throw ValidationError("unknown task kind '" + std::string(name) + "'");
}

std::string to_string(TaskKind k)
{
    for (const auto& [kind, n] : kind_names)
        if (kind == k)
            return n;
    return "?";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::finding: return "finding";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
    }
    return "?";
}

ScenarioError::ScenarioError(const std::string& message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

Scenario parse_scenario(std::string_view text)
{
    Scenario s;
    std::map<std::string, std::pair<std::string, int>> top;
    std::vector<RawTask> raws;

    std::stringstream in{std::string(text)};
    std::string line_text;
    int line = 0;
    while (std::getline(in, line_text)) {
        ++line;
        if (const auto hash = line_text.find('#'); hash != std::string::npos)
            line_text.erase(hash);
        const std::string l = trim(line_text);
        if (l.empty())
            continue;
        if (l.front() == '[') {
            if (l.back() != ']')
                throw ScenarioError("expected ']' to close the task header", line);
            RawTask raw;
            try {
                raw.task.kind = parse_task_kind(trim(std::string_view(l).substr(1, l.size() - 2)));
            } catch (const ValidationError& e) {
                throw ScenarioError(e.what(), line);
            }
            raw.task.line = line;
            raws.push_back(std::move(raw));
            continue;
        }
        const auto eq = l.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("expected 'key = value' or '[task]'", line);
        const std::string key = trim(std::string_view(l).substr(0, eq));
        const std::string value = trim(std::string_view(l).substr(eq + 1));
        if (key.empty() || value.empty())
            throw ScenarioError("expected 'key = value'", line);
        if (raws.empty()) {
            static const std::set<std::string> known{"name", "preset", "theta", "phi11", "phi12", "phi22", "seed", "trials"};
            if (!known.contains(key))
                throw ScenarioError("unknown setting '" + key + "'", line);
            if (!top.emplace(key, std::pair{value, line}).second)
                throw ScenarioError("duplicate setting '" + key + "'", line);
        } else {
            RawTask& raw = raws.back();
            if (!allowed_keys(raw.task.kind).contains(key))
                throw ScenarioError("key '" + key + "' is not valid for [" + to_string(raw.task.kind) + "]", line);
            if (!raw.values.emplace(key, std::pair{value, line}).second)
                throw ScenarioError("duplicate key '" + key + "'", line);
            raw.task.inputs.emplace_back(key, value);
        }
    }

    auto get = [&](const char* key) -> const std::pair<std::string, int>* {
        const auto it = top.find(key);
        return it == top.end() ? nullptr : &it->second;
    };
    auto constant = [&](const char* key) -> cplx {
        const auto* v = get(key);
        if (!v)
            return 0.0;
        try {
            return evaluate_constant(v->first);
        } catch (const std::exception& e) {
            throw ScenarioError(std::string(key) + ": " + e.what(), v->second);
        }
    };

    if (const auto* v = get("name"))
        s.name = v->first;
    if (const auto* v = get("seed"))
        s.seed = static_cast<std::uint64_t>(parse_int(v->first, "seed", v->second, 0, std::numeric_limits<long>::max()));
    if (const auto* v = get("trials"))
        s.trials = static_cast<int>(parse_int(v->first, "trials", v->second, 1, 1000000));

    double theta = 1.0;
    if (const auto* v = get("theta")) {
        const cplx t = constant("theta");
        if (t.imag() != 0.0)
            throw ScenarioError("theta must be real", v->second);
        theta = t.real();
    }
    try {
        if (const auto* v = get("preset")) {
            for (const char* phi : {"phi11", "phi12", "phi22"})
                if (const auto* p = get(phi))
                    throw ScenarioError(std::string(phi) + " cannot be combined with a preset", p->second);
            try {
                s.params = preset_params(parse_preset(v->first), theta);
            } catch (const ValidationError& e) {
                throw ScenarioError(e.what(), v->second);
            }
        } else {
            s.params = make_params(theta, constant("phi11"), constant("phi12"), constant("phi22"));
        }
    } catch (const ValidationError& e) {
        throw ScenarioError(e.what(), get("theta") ? get("theta")->second : 1);
    }

    for (std::size_t k = 0; k < raws.size(); ++k)
        validate(raws[k], k, s);
    for (auto& raw : raws)
        s.tasks.push_back(std::move(raw.task));
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

WaveSum to_wave(const Value& v, Frame frame)
{
    if (const auto* w = std::get_if<WaveSum>(&v))
        return *w;
    const auto& p = std::get<Polynomial2>(v);
    if (p.degree() > 0)
        throw EvalError("cannot combine a non-constant polynomial with exponential terms");
    WaveSum w(frame);
    if (!p.is_zero())
        w.add_term(p.coefficient({0, 0}), {0.0, 0.0});
    return w;
}

bool is_poly(const Value& v) { return std::holds_alternative<Polynomial2>(v); }

Frame frame_of(const Value& v)
{
    return is_poly(v) ? std::get<Polynomial2>(v).frame() : std::get<WaveSum>(v).frame();
}

double distance(const Value& a, const Value& b)
{
    if (is_poly(a) && is_poly(b))
        return std::get<Polynomial2>(a).max_abs_diff(std::get<Polynomial2>(b));
    const Frame f = frame_of(is_poly(a) ? b : a);
    const WaveSum diff = to_wave(a, f) + cplx(-1.0) * to_wave(b, f);
    double worst = 0.0;
    for (const auto& t : diff.terms())
        worst = std::max(worst, std::abs(t.amplitude));
    return worst;
}

Value star(const Value& a, const Value& b, const DeformationParams& params)
{
    if (is_poly(a) && is_poly(b))
        return star_poly(std::get<Polynomial2>(a), std::get<Polynomial2>(b), params);
    const Frame f = frame_of(is_poly(a) ? b : a);
    return star_wave(to_wave(a, f), to_wave(b, f), params);
}

Value difference(const Value& a, const Value& b)
{
    if (is_poly(a) && is_poly(b))
        return std::get<Polynomial2>(a) - std::get<Polynomial2>(b);
    const Frame f = frame_of(is_poly(a) ? b : a);
    return to_wave(a, f) + cplx(-1.0) * to_wave(b, f);
}

Value tmap(const Value& v, const DeformationParams& params)
{
    if (const auto* p = std::get_if<Polynomial2>(&v))
        return tmap_poly(*p, params);
    return tmap_wave(std::get<WaveSum>(v), params);
}

void check_expect(TaskResult& r, const Task& t, const Value& value, const DeformationParams& params)
{
    r.value = format_value(value);
    if (!t.expect)
        return;
    r.max_error = distance(value, evaluate(*t.expect, params));
    r.verdict = r.max_error <= t.tolerance ? Verdict::pass : Verdict::fail;
    if (r.verdict == Verdict::fail)
        r.message = "result differs from expect";
}

// Resolution verdict: identity within tolerance is a pass; matching the
// predicted non-resolution form is a finding; anything else is a failure.
template <class Amp, class Pred>
void resolution(TaskResult& r, const Task& t, Amp amplitude, Pred predicted)
{
    double dev_identity = 0.0, dev_predicted = 0.0;
    std::vector<double> pred_err;
    for (const auto& p : t.grid) {
        GridPoint g;
        g.x = {p[0], p[1], p[0], p[1]};
        g.value = amplitude(p);
        g.error = std::abs(g.value - 1.0);
        pred_err.push_back(std::abs(g.value - predicted(p)));
        if (!std::isfinite(g.error) || !std::isfinite(pred_err.back()))
            throw std::domain_error("non-finite kernel amplitude");
        dev_identity = std::max(dev_identity, g.error);
        dev_predicted = std::max(dev_predicted, pred_err.back());
        r.points.push_back(g);
    }
    if (dev_identity <= t.tolerance) {
        r.verdict = Verdict::pass;
        r.max_error = dev_identity;
        r.message = "resolves the identity";
        return;
    }
    for (std::size_t k = 0; k < r.points.size(); ++k)
        r.points[k].error = pred_err[k];
    r.max_error = dev_predicted;
    if (dev_predicted <= t.tolerance) {
        r.verdict = Verdict::finding;
        r.message = "does not resolve the identity; amplitudes match the predicted form";
    } else {
        r.verdict = Verdict::fail;
        r.message = "amplitudes match neither the identity nor the predicted form";
    }
}

void run_task(TaskResult& r, const Task& t, const Scenario& s)
{
    const auto& params = s.params;
    switch (t.kind) {
    case TaskKind::eval:
        check_expect(r, t, evaluate(*t.f, params), params);
        break;
    case TaskKind::commutator: {
        const Value f = evaluate(*t.f, params), g = evaluate(*t.g, params);
        check_expect(r, t, difference(star(f, g, params), star(g, f, params)), params);
        break;
    }
    case TaskKind::tmap:
        check_expect(r, t, tmap(evaluate(*t.f, params), params), params);
        break;
    case TaskKind::equivalence: {
        const Value f = evaluate(*t.f, params), g = evaluate(*t.g, params);
        const auto moyal = make_params(params.theta(), 0.0, 0.0, 0.0);
        const Value lhs = tmap(star(f, g, moyal), params);
        const Value rhs = star(tmap(f, params), tmap(g, params), params);
        r.value = format_value(lhs);
        r.max_error = distance(lhs, rhs);
        r.verdict = r.max_error <= t.tolerance ? Verdict::pass : Verdict::fail;
        break;
    }
    case TaskKind::position_roi:
        resolution(
            r, t, [&](const auto& p) { return position_roi_amplitude(params, p, p); },
            [&](const auto& p) { return predicted_position_diagonal(params, p); });
        break;
    case TaskKind::coherent_roi:
        resolution(
            r, t,
            [&](const auto& p) {
                const cplx q{p[0], p[1]};
                return coherent_roi_amplitude(params, q, q);
            },
            [&](const auto& p) { return predicted_coherent_diagonal(params, {p[0], p[1]}); });
        break;
    case TaskKind::fock_check:
        for (std::size_t k = 0; k < t.grid.size(); ++k) {
            const cplx p{t.grid[k][0], t.grid[k][1]};
            const auto check = overlap_vs_closedform(t.zs[k], p, params.theta(), t.n);
            GridPoint g;
            g.x = {t.zs[k].real(), t.zs[k].imag(), p.real(), p.imag()};
            g.value = check.numeric;
            g.error = check.abs_error;
            r.max_error = std::max(r.max_error, g.error);
            r.points.push_back(g);
        }
        r.verdict = r.max_error <= t.tolerance ? Verdict::pass : Verdict::fail;
        break;
    case TaskKind::verify_all: {
        r.checks = run_verify(t.suite, s.seed, s.trials, params);
        bool ok = true;
        for (const auto& c : r.checks) {
            ok = ok && c.passed;
            r.max_error = std::max(r.max_error, c.max_error);
        }
        r.verdict = ok ? Verdict::pass : Verdict::fail;
        break;
    }
    }
}

} // namespace

Report run_scenario(const Scenario& s, bool timings)
{
    Report report;
    report.scenario = &s;
    for (const Task& t : s.tasks) {
        TaskResult r;
        r.task = &t;
        const auto start = std::chrono::steady_clock::now();
        try {
            run_task(r, t, s);
        } catch (const std::exception& e) {
            r.verdict = Verdict::error;
            r.message = e.what();
            r.points.clear();
            r.checks.clear();
        }
        if (timings)
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.results.push_back(std::move(r));
        if (report.results.back().verdict == Verdict::error) {
            report.aborted = true;
            break;
        }
    }
    return report;
}

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "json")
        return ReportFormat::json;
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "text")
        return ReportFormat::text;
    throw ValidationError("unknown format '" + std::string(name) + "' (expected json, csv, text)");
}

int exit_code(const Report& r)
{
    int code = r.aborted ? 2 : 0;
    for (const auto& t : r.results) {
        if (t.verdict == Verdict::fail || t.verdict == Verdict::error)
            code = 2;
        else if (t.verdict == Verdict::finding)
            code = std::max(code, 1);
    }
    return code;
}

namespace {

using json = nlohmann::ordered_json;

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json kernel_json(const KernelAmplitude& k)
{
    json q = json::array();
    for (const auto& row : k.quad()) {
        json r = json::array();
        for (const cplx c : row)
            r.push_back(complex_json(c));
        q.push_back(std::move(r));
    }
    return {{"Q", std::move(q)}, {"constant", complex_json(k.constant())}, {"diagonal_only", k.diagonal_only()}};
}

json to_json(const Report& r)
{
    const Scenario& s = *r.scenario;
    const auto& p = s.params;
    json out;
    out["scenario"] = {
        {"name", s.name},
        {"params",
         {{"theta", p.theta()},
          {"phi11", complex_json(p.phi11())},
          {"phi12", complex_json(p.phi12())},
          {"phi22", complex_json(p.phi22())}}},
        {"seed", s.seed},
        {"trials", s.trials},
    };
    out["engine_version"] = engine_version();
    out["status"] = r.aborted ? "aborted" : "complete";
    json tasks = json::array();
    for (const auto& t : r.results) {
        json inputs = json::object();
        for (const auto& [k, v] : t.task->inputs)
            inputs[k] = v;
        json outputs = json::object();
        if (!t.value.empty())
            outputs["value"] = t.value;
        if (!t.message.empty())
            outputs[t.verdict == Verdict::error ? "error" : "message"] = t.message;
        if (t.verdict != Verdict::error) {
            switch (t.task->kind) {
            case TaskKind::position_roi:
            case TaskKind::coherent_roi: {
                json pts = json::array();
                for (const auto& g : t.points)
                    pts.push_back({{"p", {g.x[0], g.x[1]}}, {"amplitude", complex_json(g.value)}, {"error", g.error}});
                outputs["points"] = std::move(pts);
                outputs["kernel"] = kernel_json(t.task->kind == TaskKind::position_roi ? position_roi_kernel(p)
                                                                                      : coherent_roi_kernel(p));
                break;
            }
            case TaskKind::fock_check: {
                outputs["N"] = t.task->n;
                json pts = json::array();
                for (const auto& g : t.points)
                    pts.push_back({{"z", {g.x[0], g.x[1]}},
                                   {"p", {g.x[2], g.x[3]}},
                                   {"numeric", complex_json(g.value)},
                                   {"error", g.error}});
                outputs["points"] = std::move(pts);
                break;
            }
            case TaskKind::verify_all: {
                outputs["suite"] = to_string(t.task->suite);
                json checks = json::array();
                for (const auto& c : t.checks)
                    checks.push_back({{"suite", c.suite},
                                      {"name", c.name},
                                      {"trials", c.trials},
                                      {"max_error", c.max_error},
                                      {"tolerance", c.tolerance},
                                      {"verdict", c.passed ? "pass" : "fail"}});
                outputs["checks"] = std::move(checks);
                break;
            }
            default: break;
            }
        }
        json task;
        task["kind"] = to_string(t.task->kind);
        task["inputs"] = std::move(inputs);
        task["outputs"] = std::move(outputs);
        task["verdict"] = to_string(t.verdict);
        task["max_error"] = t.max_error;
        task["seconds"] = t.seconds ? json(*t.seconds) : json(nullptr);
        tasks.push_back(std::move(task));
    }
    out["tasks"] = std::move(tasks);
    return out;
}

std::string to_csv(const Report& r)
{
    std::string out = "task,kind,x1,x2,x3,x4,re,im,error\n";
    for (std::size_t k = 0; k < r.results.size(); ++k) {
        const auto& t = r.results[k];
        for (const auto& g : t.points) {
            out += std::to_string(k + 1) + "," + to_string(t.task->kind);
            for (const double x : g.x)
                out += "," + format_double(x);
            out += "," + format_double(g.value.real()) + "," + format_double(g.value.imag()) + ","
                   + format_double(g.error) + "\n";
        }
    }
    return out;
}

std::string to_text(const Report& r)
{
    std::ostringstream os;
    os << "scenario " << r.scenario->name << " (engine " << engine_version() << ")\n";
    for (std::size_t k = 0; k < r.results.size(); ++k) {
        const auto& t = r.results[k];
        os << "[" << k + 1 << "] " << to_string(t.task->kind) << ": " << to_string(t.verdict)
           << "  max_error=" << format_double(t.max_error);
        if (!t.points.empty())
            os << "  points=" << t.points.size();
        if (t.seconds)
            os << "  seconds=" << format_double(*t.seconds);
        os << "\n";
        if (!t.value.empty())
            os << "    value: " << t.value << "\n";
        if (!t.message.empty())
            os << "    " << t.message << "\n";
        for (const auto& c : t.checks)
            os << "    " << c.suite << "/" << c.name << ": " << (c.passed ? "pass" : "fail")
               << "  max_error=" << format_double(c.max_error) << "  tolerance=" << format_double(c.tolerance)
               << "\n";
    }
    if (r.aborted)
        os << "aborted after task " << r.results.size() << " of " << r.scenario->tasks.size() << "\n";
    os << "exit " << exit_code(r) << "\n";
    return os.str();
}

} // namespace

std::string emit_report(const Report& r, ReportFormat format)
{
    switch (format) {
    case ReportFormat::json: return to_json(r).dump(2) + "\n";
    case ReportFormat::csv: return to_csv(r);
    case ReportFormat::text: return to_text(r);
    }
    throw ValidationError("unknown report format");
}

} // namespace ncstar
