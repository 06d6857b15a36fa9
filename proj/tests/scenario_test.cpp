#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ncstar/scenario.hpp"

using namespace ncstar;
using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string golden(const char* name) { return std::string(NCSTAR_SCENARIO_DIR) + "/" + name; }

int error_line(const char* text)
{
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("empty scenario gives a valid JSON report with no tasks")
{
    const auto s = parse_scenario("");
    const auto r = run_scenario(s);
    const auto j = json::parse(emit_report(r, ReportFormat::json));
    CHECK(j["tasks"].is_array());
    CHECK(j["tasks"].empty());
    CHECK(j["engine_version"] == engine_version());
    CHECK(j["scenario"]["params"]["theta"] == 1.0);
    CHECK(exit_code(r) == 0);
}

TEST_CASE("settings and params")
{
    const auto s = parse_scenario("name = x\ntheta = 2\nphi11 = 1+2i\nphi22 = -0.5i # comment\nseed = 7\ntrials = 3\n");
    CHECK(s.name == "x");
    CHECK(s.params == make_params(2.0, cplx(1, 2), 0.0, cplx(0, -0.5)));
    CHECK(s.seed == 7);
    CHECK(s.trials == 3);
    CHECK(parse_scenario("preset = voros\ntheta = 0.5").params == preset_params(Preset::voros, 0.5));
}

TEST_CASE("validation errors carry the offending line")
{
    CHECK(error_line("theta = 1\nbogus = 2") == 2);
    CHECK(error_line("theta = 1i") == 1);
    CHECK(error_line("preset = weyl") == 1);
    CHECK(error_line("preset = moyal\nphi11 = 1") == 2);
    CHECK(error_line("[eval]\nexpr = x1 +") == 2);
    CHECK(error_line("[eval]\n\nexpect = 1") == 1);
    CHECK(error_line("[eval]\nexpr = x1\nrange = 2") == 3);
    CHECK(error_line("[nope]") == 1);
    CHECK(error_line("[tmap]\nexpr = z") == 2);
    CHECK(error_line("[commutator]\nf = x1\ng = z") == 1);
    CHECK(error_line("theta = 0\n[coherent-roi]") == 2);
    CHECK(error_line("theta = 0\n[fock-check]") == 2);
    CHECK(error_line("[position-roi]\npoints = 0") == 2);
    CHECK(error_line("[position-roi]\nat = 1,2,3") == 2);
    CHECK(error_line("[position-roi]\nradius = -1") == 2);
    CHECK(error_line("[verify-all]\nsuite = everything") == 2);
    CHECK(error_line("[eval]\nexpr = 1\nexpr = 2") == 3);
    CHECK(error_line("just text") == 1);
}

TEST_CASE("all tasks validate before any runs")
{
    // the first task would run fine; the third is invalid, so nothing is returned
    CHECK_THROWS_AS(parse_scenario("[eval]\nexpr = x1\n[eval]\nexpr = x2\n[eval]\nexpr = exp(x1*x2)"), ScenarioError);
}

TEST_CASE("identical scenario and seed give byte-identical reports")
{
    const auto text = read_file(golden("moyal-pass.scn"));
    const auto a = parse_scenario(text), b = parse_scenario(text);
    const auto ja = emit_report(run_scenario(a), ReportFormat::json);
    const auto jb = emit_report(run_scenario(b), ReportFormat::json);
    CHECK(ja == jb);
    CHECK(emit_report(run_scenario(a), ReportFormat::csv) == emit_report(run_scenario(b), ReportFormat::csv));
    CHECK(json::parse(ja)["tasks"][0]["seconds"].is_null());

    const auto timed = json::parse(emit_report(run_scenario(a, true), ReportFormat::json));
    CHECK(timed["tasks"][0]["seconds"].is_number());
}

TEST_CASE("csv of a 3-point grid has 3 data rows and a header")
{
    const auto s = parse_scenario("[position-roi]\nat = 0,0; 1,1; -1,2\n");
    const auto csv = emit_report(run_scenario(s), ReportFormat::csv);
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);)
        lines.push_back(l);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "task,kind,x1,x2,x3,x4,re,im,error");
    CHECK(lines[2].rfind("1,position-roi,1,1,1,1,", 0) == 0);
}

TEST_CASE("verify-all under moyal passes every check")
{
    const auto s = parse_scenario("preset = moyal\ntrials = 30\n[verify-all]\n");
    const auto j = json::parse(emit_report(run_scenario(s), ReportFormat::json));
    REQUIRE(j["tasks"].size() == 1);
    CHECK(j["tasks"][0]["verdict"] == "pass");
    CHECK(j["tasks"][0]["outputs"]["checks"].size() >= 10);
    for (const auto& c : j["tasks"][0]["outputs"]["checks"])
        CHECK(c["verdict"] == "pass");
}

TEST_CASE("resolution verdicts")
{
    auto verdict = [](const char* text) { return run_scenario(parse_scenario(text)).results.at(0).verdict; };
    CHECK(verdict("preset = moyal\n[position-roi]\npoints = 5") == Verdict::pass);
    CHECK(verdict("preset = voros\n[coherent-roi]\nradius = 2") == Verdict::pass);
    CHECK(verdict("phi11 = 0.2\nphi22 = 0.2\n[position-roi]") == Verdict::finding);
    CHECK(verdict("preset = voros\n[position-roi]") == Verdict::finding);
    CHECK(verdict("preset = moyal\n[coherent-roi]") == Verdict::finding);

    const auto s = parse_scenario("phi11 = 0.2\nphi22 = 0.2\n[position-roi]\nat = 1,1");
    const auto r = run_scenario(s);
    CHECK(std::abs(r.results[0].points[0].value - std::exp(cplx(0, 0.2))) < 1e-15);
    CHECK(exit_code(r) == 1);

    const auto j = json::parse(emit_report(r, ReportFormat::json));
    const auto& kernel = j["tasks"][0]["outputs"]["kernel"];
    CHECK(kernel["Q"].size() == 4);
    CHECK(kernel["diagonal_only"] == true);
}

TEST_CASE("tolerance failures and runtime errors")
{
    const auto wrong = run_scenario(parse_scenario("[eval]\nexpr = x1 ** x2\nexpect = x1*x2"));
    CHECK(wrong.results[0].verdict == Verdict::fail);
    CHECK(exit_code(wrong) == 2);

    const auto s = parse_scenario("[eval]\nexpr = x1\n[eval]\nexpr = x1 * exp(i*x1)\n[eval]\nexpr = x2");
    const auto r = run_scenario(s);
    REQUIRE(r.results.size() == 2);
    CHECK(r.aborted);
    CHECK(r.results[0].verdict == Verdict::pass);
    CHECK(r.results[1].verdict == Verdict::error);
    CHECK(exit_code(r) == 2);
    const auto j = json::parse(emit_report(r, ReportFormat::json));
    CHECK(j["status"] == "aborted");
    CHECK(j["tasks"].size() == 2);
    CHECK(j["tasks"][1]["outputs"]["error"].is_string());
}

TEST_CASE("task kinds produce the expected values")
{
    const auto r = run_scenario(parse_scenario(R"(theta = 1
phi11 = 2
[tmap]
expr = x1^2
expect = x1^2 + i
[commutator]
f = x1^2
g = x2
[equivalence]
f = x1^2 + x2
g = x1*x2
[fock-check]
at = 0.3,0.2,0.5,-0.7
N = 64
)"));
    REQUIRE(r.results.size() == 4);
    for (const auto& t : r.results)
        CHECK(t.verdict == Verdict::pass);
    CHECK(r.results[1].value == "2i*x1");
    CHECK(r.results[3].points.size() == 1);
    CHECK(r.results[3].max_error < 1e-6);
}

TEST_CASE("text report and format names")
{
    const auto r = run_scenario(parse_scenario("name = t\n[eval]\nexpr = 1+1"));
    const auto text = emit_report(r, ReportFormat::text);
    CHECK(text.find("scenario t") != std::string::npos);
    CHECK(text.find("value: 2") != std::string::npos);
    CHECK_THROWS_AS(parse_report_format("xml"), ValidationError);
}
