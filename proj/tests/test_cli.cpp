#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "barnes_cli");
    std::ostringstream out, err;
    int code = barnes::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// value from plain text output
double plain_value(const std::string& s) {
    auto pos = s.find("value: ");
    REQUIRE(pos != std::string::npos);
    return std::stod(s.substr(pos + 7));
}

std::vector<std::vector<std::string>> csv_rows(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}
}  // namespace

TEST_CASE("eval examples") {
    auto r = run({"eval", "--alpha", "5", "--a", "1", "--w", "1,1", "--method", "direct"});
    CHECK(r.code == 0);
    CHECK(plain_value(r.out) == doctest::Approx(1.0823232337).epsilon(1e-10));
    // d = 1 has its only pole at alpha = 1
    r = run({"eval", "--alpha", "1", "--a", "1", "--w", "1", "--method", "series"});
    CHECK(r.code == 4);
    CHECK(r.err.find("hint: residue at alpha = 1 is 1") != std::string::npos);
    r = run({"eval", "--alpha", "2", "--a", "1", "--w", "1", "--method", "series"});
    CHECK(r.code == 0);
    CHECK(plain_value(r.out) == doctest::Approx(1.6449340668482264).epsilon(1e-11));
    r = run({"eval", "--alpha", "2", "--a", "1", "--w", "1,1", "--method", "series"});
    CHECK(r.code == 4);
    r = run({"eval", "--alpha", "0.5", "--a", "1", "--w", "1,1", "--method", "integral", "--json"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["value"][0].get<double>() == doctest::Approx(-0.2078862).epsilon(1e-7));
    CHECK(j["method"] == "integral");
    CHECK(j.contains("est_error"));
    CHECK(j["diagnostics"].contains("quadrature_evaluations"));
}

TEST_CASE("eval routes agree, including reductions and complex inputs") {
    for (std::string w : {"1", "1,2", "1.5,1.5,1.5", "0.5,1.5"}) {
        auto s = run({"eval", "--alpha", "0.3,0.4", "--a", "0.8", "--w", w, "--method", "series", "--json"});
        auto i = run({"eval", "--alpha", "0.3,0.4", "--a", "0.8", "--w", w, "--method", "integral", "--json"});
        auto d = run({"eval", "--alpha", "0.3,0.4", "--a", "0.8", "--w", w, "--method", "reduction", "--json"});
        REQUIRE(s.code == 0);
        REQUIRE(i.code == 0);
        REQUIRE(d.code == 0);
        auto js = json::parse(s.out), ji = json::parse(i.out), jd = json::parse(d.out);
        for (int k = 0; k < 2; ++k) {
            CHECK(js["value"][k].get<double>() == doctest::Approx(ji["value"][k].get<double>()).epsilon(1e-9));
            CHECK(js["value"][k].get<double>() == doctest::Approx(jd["value"][k].get<double>()).epsilon(1e-9));
        }
    }
    auto h1 = run({"eval", "--alpha", "3.5", "--w", "1,2", "--homogeneous", "--method", "reduction", "--json"});
    auto h2 = run({"eval", "--alpha", "3.5", "--w", "1,2", "--homogeneous", "--method", "direct", "--json"});
    REQUIRE(h1.code == 0);
    REQUIRE(h2.code == 0);
    CHECK(json::parse(h1.out)["value"][0].get<double>() ==
          doctest::Approx(json::parse(h2.out)["value"][0].get<double>()).epsilon(1e-10));
    auto cw = run({"eval", "--alpha", "0.5", "--a", "1,0.2", "--w", "1+0.3i,0.8-0.1i", "--json"});
    CHECK(cw.code == 0);
    CHECK(run({"eval", "--alpha", "0.5", "--w", "1,1.3", "--method", "reduction"}).code == 2);
}

TEST_CASE("fp, deriv0 and gamma examples") {
    auto r = run({"fp", "--q", "1", "--a", "1", "--w", "1", "--method", "series"});
    CHECK(r.code == 0);
    CHECK(plain_value(r.out) == doctest::Approx(0.5772156649015329).epsilon(1e-10));
    r = run({"deriv0", "--a", "1", "--w", "1", "--method", "limit"});
    CHECK(r.code == 0);
    CHECK(std::abs(plain_value(r.out) + 0.9189385) < 1e-7);
    r = run({"gamma", "--fn", "gammadq", "--q", "1", "--w", "1"});
    CHECK(r.code == 0);
    CHECK(std::abs(plain_value(r.out) - 0.5772157) < 1e-7);
    r = run({"gamma", "--fn", "multigamma", "--a", "3", "--d", "1", "--json"});
    CHECK(json::parse(r.out)["value"][0].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    r = run({"gamma", "--fn", "psiB", "--q", "1", "--a", "0.5", "--w", "1", "--method", "integral"});
    CHECK(plain_value(r.out) == doctest::Approx(-0.5772156649015329 - 2 * std::log(2.0)).epsilon(1e-10));
    r = run({"gamma", "--fn", "logrho", "--w", "1", "--method", "limit"});
    CHECK(plain_value(r.out) == doctest::Approx(0.9189385332046727).epsilon(1e-8));
    r = run({"gamma", "--fn", "loggammaB", "--a", "3", "--w", "1"});
    CHECK(plain_value(r.out) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(run({"fp", "--q", "1", "--w", "1", "--homogeneous", "--method", "integral"}).code == 0);
    CHECK(run({"fp", "--q", "3", "--w", "1,1"}).code == 2);
    CHECK(run({"gamma", "--fn", "nope", "--w", "1"}).code == 2);
}

TEST_CASE("exit codes by error class") {
    CHECK(run({}).code == 2);
    CHECK(run({"eval", "--alpha", "1"}).code == 2);                       // missing --w
    CHECK(run({"eval", "--alpha", "1", "--w", "1", "--bogus"}).code == 2);
    CHECK(run({"eval", "--alpha", "0.5", "--w", "1", "--method", "limit"}).code == 2);
    CHECK(run({"eval", "--alpha", "0.5", "--w", "0"}).code == 2);
    setenv("BARNES_ZETA_TOL", "1e-10", 1);
    CHECK(run({"eval", "--alpha", "3.5", "--a", "1", "--w", "1,1", "--json"}).code == 0);
    setenv("BARNES_ZETA_TOL", "abc", 1);
    CHECK(run({"eval", "--alpha", "3.5", "--a", "1", "--w", "1,1"}).code == 2);
    // flags override the environment
    CHECK(run({"eval", "--alpha", "3.5", "--a", "1", "--w", "1,1", "--tol", "1e-9"}).code == 0);
    unsetenv("BARNES_ZETA_TOL");
    CHECK(run({"eval", "--alpha", "3.5", "--a", "1", "--w", "1,1", "--tol", "1e-9"}).code == 0);
    CHECK(run({"eval", "--alpha", "2.5", "--a", "1", "--w", "1,1", "--method", "direct", "--tol", "1e-300"}).code == 3);
}

TEST_CASE("JSON output round-trips byte-identically") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"eval", "--alpha", "0.5", "--a", "1", "--w", "1,1", "--method", "integral", "--json"},
             {"eval", "--alpha", "0.3,1.1", "--a", "0.7,-0.2", "--w", "1,1.41421356", "--json"},
             {"gamma", "--fn", "psiB", "--q", "2", "--a", "0.7", "--w", "1,1.41421356", "--json"}}) {
        auto r = run(args);
        REQUIRE(r.code == 0);
        std::string line = r.out.substr(0, r.out.size() - 1);
        CHECK(json::parse(line).dump() == line);
    }
    auto c = run({"compare", "--a", "1", "--w", "1"});
    REQUIRE(c.code == 0);
    auto j = json::parse(c.out);
    CHECK(j.dump(2) + "\n" == c.out);
}

TEST_CASE("compare examples") {
    auto r = run({"compare", "--a", "0.7", "--w", "1,1.41421356", "--tol", "1e-5"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["agreement_matrix"].size() == 6);
    // d = 1 canonical case with the reduction oracle, 10x tighter than the default
    r = run({"compare", "--a", "1", "--w", "1", "--tol", "1e-6"});
    CHECK(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["pass"] == true);
    int reductions = 0;
    for (const auto& q : j["quantities"]) reductions += q["route"] == "reduction";
    CHECK(reductions == 4);
    r = run({"compare", "--a", "0.9", "--w", "1,1.41421356,0.78539816", "--tol", "1e-4", "--csv"});
    CHECK(r.code == 0);
    auto rows = csv_rows(r.out);
    CHECK(rows[0][0] == "quantity");
    CHECK(rows.size() == 1 + 8 * 3);
    // an impossible tolerance fails with exit 1 and still writes the report
    std::string path = "compare_fail_report.json";
    r = run({"compare", "--a", "0.7", "--w", "1,1.41421356", "--tol", "1e-14", "--out", path});
    CHECK(r.code == 1);
    std::ifstream f(path), fc(path + ".csv");
    REQUIRE(f.good());
    REQUIRE(fc.good());
    CHECK(json::parse(f)["pass"] == false);
    CHECK(run({"compare", "--a", "0.7", "--w", "1", "--routes", "series,bogus"}).code == 2);
}

TEST_CASE("table") {
    auto d = run({"table", "--alpha-grid", "3:5:5", "--a", "1", "--w", "1,1.41421356", "--method", "direct"});
    REQUIRE(d.code == 0);
    auto rd = csv_rows(d.out);
    REQUIRE(rd.size() == 6);
    CHECK(d.out.substr(0, d.out.find('\n')) == "alpha_re,alpha_im,value_re,value_im,est_error,method");
    auto s = run({"table", "--alpha-grid", "3:5:5", "--a", "1", "--w", "1,1.41421356", "--method", "series"});
    REQUIRE(s.code == 0);
    auto rs = csv_rows(s.out);
    for (int i = 1; i <= 5; ++i) {
        CHECK(std::stod(rs[i][0]) == std::stod(rd[i][0]));
        CHECK(std::abs(std::stod(rs[i][2]) - std::stod(rd[i][2])) <= 1e-10 * std::abs(std::stod(rd[i][2])));
    }
    CHECK(rd[2][0] == "3.5");
    // 17 significant digits
    CHECK(rs[1][2].size() >= 17);
    auto p = run({"table", "--alpha-grid", "1.5:2.5:3", "--a", "1", "--w", "1,1", "--method", "series"});
    CHECK(p.code != 0);
    auto rp = csv_rows(p.out);
    REQUIRE(rp.size() == 4);
    CHECK(rp[2][2] == "nan");
    CHECK(rp[1][2] != "nan");
    CHECK(rp[3][2] != "nan");
    CHECK(run({"table", "--alpha-grid", "1:2", "--w", "1"}).code == 2);
}
